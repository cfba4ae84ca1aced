"""Smoke test for the oriented_turan extension module.

Build and install first, e.g. `pip install -e crates/py --no-build-isolation`.
"""

import oriented_turan as ot


def main() -> None:
    p4 = ot.OrientedGraph.directed_path(4)
    assert p4.n == 4 and p4.arc_count() == 3
    assert ot.OrientedGraph.from_og(p4.to_og()) == p4

    z, witness = ot.compressibility(p4)
    assert z == 4 and witness.is_tournament() and witness.n == 3
    assert ot.compressibility(ot.OrientedGraph.directed_cycle(3)) == (None, None)
    assert ot.compressibility(ot.OrientedGraph.matching(1))[0] == 2

    relabelled = ot.OrientedGraph(4, [(3, 2), (2, 1), (1, 0)])
    assert relabelled.canonical_code() == p4.canonical_code()
    assert relabelled.is_isomorphic(p4)

    assert [len(ot.enumerate_tournaments(k)) for k in range(1, 6)] == [1, 1, 2, 4, 12]
    holds, counterexample = ot.all_tournaments_contain(3, ot.OrientedGraph.directed_cycle(3))
    assert not holds and counterexample.is_tournament()
    assert ot.all_tournaments_contain(4, ot.OrientedGraph.pattern("oc4")) == (True, None)

    record = ot.exo(5, "adpath4")
    assert record.value == 7 and record.formula_value == 7 and record.matches_formula
    assert ot.is_free(record.witness, ot.OrientedGraph.antidirected_path(4))
    assert ot.exo(4, ot.OrientedGraph.star(0, 2)).value == 4
    try:
        ot.exo(11, "dpath3")
    except OverflowError:
        pass
    else:
        raise AssertionError("order cap not enforced")

    g = ot.build_construction("thm32", 6)
    assert g.arc_count() == 12
    assert ot.formula_value("thm32", 6)[0] == 12
    assert ot.contains_copy(g, ot.OrientedGraph.pattern("thm32")) is None
    assert ot.contains_copy(g, ot.OrientedGraph.matching(1)) is not None

    host = ot.random_host(1400, 0.9, seed=7)
    arc_lines = set(host.splitlines()[1:])
    report = ot.embed(host, ot.OrientedGraph.matching(1), r=1, seed=5, t=2)
    (a, x), (b, y) = sorted(report["embedding"])
    assert (a, b) == (0, 1) and "%d %d" % (x, y) in arc_lines
    assert report == ot.embed(host, ot.OrientedGraph.matching(1), r=1, seed=5, t=2)
    sparse = ot.embed("3\n0 1\n1 2\n2 0\n", ot.OrientedGraph.matching(1), r=1, seed=5, t=2)
    assert sparse["embedding"] is None and sparse["failed_stage"]

    print("smoke test passed")


if __name__ == "__main__":
    main()
