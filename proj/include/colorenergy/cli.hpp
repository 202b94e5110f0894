#ifndef COLORENERGY_CLI_HPP
#define COLORENERGY_CLI_HPP

#include <colorenergy/io.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace colorenergy
{
    inline constexpr const char * version_tag = "colorenergy 0.1.0";

    /// Runs one command line (without the program name). Output goes to `out`,
    /// errors as a JSON object to `err`. Returns the process exit code.
    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

    /// Flattens JSON for CSV: an array of objects becomes one row each, an
    /// object becomes a single row. Nested values are embedded as JSON text.
    auto json_to_csv(const Json & j) -> std::string;

    /// 16 hex digits of a 64-bit FNV-1a hash.
    auto digest_hex(const std::string & bytes) -> std::string;
}

#endif
