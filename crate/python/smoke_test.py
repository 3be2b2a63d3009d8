"""Smoke test for the distk Python extension.

Build and run from the repository root:

    cargo build --release -p distk-py --features extension-module
    cp target/release/libdistk.so python/distk.so
    python3 python/smoke_test.py
"""

import os
import sys
import tempfile
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import distk  # noqa: E402


def main():
    p4 = distk.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert p4.distance_k(3).edges() == [(0, 3)]
    assert p4.distances()[0] == [0, 1, 2, 3]
    assert distk.Graph(2).distances()[0][1] is None

    c5 = distk.Graph.from_graph6("Dhc")
    assert c5.distance_k(2).is_isomorphic(c5)
    assert c5.graph6() == "Dhc"
    assert not c5.is_bipartite() and c5.is_triangle_free()
    assert distk.Graph.from_graph6(c5.canonical_form()).is_isomorphic(c5)

    broom = distk.double_broom(9, 3, 3, 4)
    spider = distk.spider(9, 4, [1, 1, 1, 1])
    b3, s3 = broom.distance_k(3), spider.distance_k(3)
    assert b3.edge_count() == s3.edge_count() == 12
    assert not b3.is_isomorphic(s3)
    assert distk.construct('{"variant": "Turan", "n": 6, "r": 3}').edge_count() == 12

    assert [distk.ex2_bound(n) for n in range(5, 10)] == [5, 7, 10, 13, 17]
    assert distk.ex3_bound(20) == (81, True)
    assert distk.tu_bound(8, 3) == Fraction(9)
    assert distk.kp_nonbipartite_bound(7) == 10

    assert len(distk.enumerate(5)) == 34
    out = distk.solve(6, 2, 2)
    assert out["optimum"] == 7 and out["enumerated"] == 156
    g = distk.Graph.from_graph6(out["witnesses"][0])
    assert g.distance_k(2).edge_count() == 7

    nb = distk.solve_nonbipartite_triangle_free(5)
    assert nb["witnesses"] == [c5.canonical_form()]

    report = distk.characterize(7)
    assert report["equal"] and report["optimum"] == report["formula_value"] == 10

    with tempfile.TemporaryDirectory() as tmp:
        rep = distk.verify("ex2-formula", [5, 6], tmp)
        assert rep["overall"] == "pass"
        assert all(os.path.exists(r["witnesses_path"]) for r in rep["rows"])

    try:
        distk.double_broom(9, 3, 3, 3)
    except ValueError as e:
        assert "a + b + k - 1 = n" in str(e)
    else:
        raise AssertionError("invalid construction accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
