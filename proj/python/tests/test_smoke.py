import json
import os
import subprocess

import pytest

import colorenergy as ce


def mono(n):
    return ce.ColoredGraph(n, [0] * (n * (n - 1) // 2))


def test_coloring_basics():
    g = ce.generate_coloring(4, "roundrobin")
    assert g.num_colors == 3
    assert ce.is_proper(g)
    assert ce.max_color_degree(g) == 1
    assert ce.repetitions_of_subset(g, [0, 1, 2, 3]) == (3, 3)
    assert ce.coloring_from_json(g.to_json()) == g


def test_canonical_labels():
    g = ce.ColoredGraph(3, [7, -1, 7])
    assert g.num_colors == 2
    assert g.color(0, 1) == g.color(1, 2)


def test_pq_verdicts():
    holds, violator = ce.is_pq_coloring(ce.generate_coloring(5, "roundrobin"), 3, 3)
    assert holds and violator is None
    holds, violator = ce.is_pq_coloring(mono(4), 4, 2)
    assert not holds and violator == [0, 1, 2, 3]


def test_energy_and_bound():
    g = ce.generate_coloring(4, "roundrobin")
    assert ce.color_energy(g) == 4 * 12
    b = ce.holder_lower_bound(g, 2)
    assert b["power_sum"] == 12
    assert b["certificate_ok"] and b["equality"]
    assert b["bound"] == pytest.approx(3.0)


def test_pruned_graph_and_pipelines():
    g = ce.generate_coloring(12, "random", colors=3, seed=4)
    pg = ce.build_pruned(g, 2, seed=1)
    assert pg.verify()
    for a, b in pg.edges[:20]:
        x, y = pg.tuple(a), pg.tuple(b)
        assert g.color(x[0], y[0]) == g.color(x[1], y[1])
    out = ce.greedy_low_color_clique(mono(6), 3, 1)
    assert out["status"] == "found"
    assert out["report"]["distinct_colors"] == 1


def test_exact_and_exponents():
    assert ce.exact_f(5, 3, 3)["f_value"] == 5
    row = ce.exponent_entry("theta", r=2, a=3, b=2)
    assert (row["p"], row["q"], row["upper_exponent"]) == (12, 61, "5/3")


def test_errors_carry_their_kind():
    with pytest.raises(ce.Error, match="CapExceeded"):
        ce.exact_f(9, 3, 3)
    with pytest.raises(ce.Error, match="InvalidParams"):
        ce.is_pq_coloring(mono(4), 5, 1)


def test_cli_in_process_and_binary():
    code, out, err = ce.run_cli(["exact", "--n", "4", "--p", "3", "--q", "3"])
    assert code == 0 and json.loads(out)["f_value"] == 3
    code, _, err = ce.run_cli(["nope"])
    assert code == 2 and "error" in json.loads(err)

    binary = os.environ.get("COLORENERGY_CLI")
    if not binary:
        pytest.skip("COLORENERGY_CLI not set")
    proc = subprocess.run([binary, "exact", "--n", "4", "--p", "3", "--q", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == out_of(["exact", "--n", "4", "--p", "3", "--q", "3"])


def out_of(args):
    return ce.run_cli(args)[1]
