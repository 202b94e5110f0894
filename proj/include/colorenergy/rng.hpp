#ifndef COLORENERGY_RNG_HPP
#define COLORENERGY_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace colorenergy
{
    inline constexpr auto splitmix64(std::uint64_t x) -> std::uint64_t
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    inline constexpr auto fnv1a64(std::string_view bytes) -> std::uint64_t
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    /// Named stream splitter: one independent seed per (master seed, stream name).
    inline constexpr auto derive_seed(std::uint64_t master, std::string_view stream) -> std::uint64_t
    {
        return splitmix64(master ^ splitmix64(fnv1a64(stream)));
    }

    inline auto make_rng(std::uint64_t master, std::string_view stream) -> std::mt19937_64
    {
        return std::mt19937_64{derive_seed(master, stream)};
    }
}

#endif
