#!/usr/bin/env python3
"""Smoke test for the posetric_py extension module.

Build the extension first:

    cargo build -p posetric-py --release

then run this script from anywhere inside the repository:

    python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path


def load_module():
    repo = Path(__file__).resolve().parent.parent
    candidates = [
        repo / "target" / "release" / "libposetric_py.so",
        repo / "target" / "debug" / "libposetric_py.so",
        repo / "target" / "release" / "libposetric_py.dylib",
        repo / "target" / "debug" / "libposetric_py.dylib",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("no built extension found; run `cargo build -p posetric-py --release` first")
    newest = max(built, key=lambda p: p.stat().st_mtime)
    stage = Path(tempfile.mkdtemp(prefix="posetric-py-"))
    shutil.copy2(newest, stage / "posetric_py.so")
    sys.path.insert(0, str(stage))
    import posetric_py

    return posetric_py


def main():
    m = load_module()
    print(f"posetric_py {m.__version__} loaded")

    # cube: f-vector, curvature values, Gauss-Bonnet
    cube = m.cube()
    assert cube.f_vector() == (8, 12, 6)
    assert cube.euler_characteristic() == 2
    poset = cube.face_poset()
    assert poset.rank() == 2
    assert poset.f_vector() == [8, 12, 6]
    assert poset.r0("v0") == Fraction(-7, 2)
    assert poset.r2("f0") == 9
    assert poset.stone("v0") == Fraction(1, 2)
    gb = poset.verify_gauss_bonnet()
    assert gb["holds"] and gb["lhs"] == 2

    # the counterexample poset: R1 = 5/2 but Ric = 2, chi_gr = -1
    fig = m.fixture("fig-counterexample")
    assert fig.r1("e1") == Fraction(5, 2)
    assert fig.ric("e1") == 2
    assert fig.ranked_euler_char() == -1
    assert fig.order_complex_euler() == 1
    covered, lhs = fig.is_sufficiently_covered()
    assert not covered and lhs == Fraction(-9, 2)
    ap = fig.is_almost_polyhedral()
    assert not ap["verdict"]

    # duality: cube <-> octahedron, double dual isomorphic
    octa = cube.dual()
    assert octa.f_vector() == (6, 12, 8)
    assert cube.is_isomorphic(octa.dual())
    assert cube.orientable()

    # the genus-3 heptagonal map: everywhere negative, Stone sum -8
    klein = m.fixture("klein-dual")
    assert klein.f_vector() == (56, 84, 24)
    assert klein.min_face_size() == 7
    neg = klein.negativity()
    assert neg["all_negative"] and neg["iff_holds"]
    stone = klein.verify_stone_gauss_bonnet()
    assert stone["holds"] and stone["lhs"] == -8

    # infinite-pattern window: designated interior values
    window = m.fixture("fig-infinite:4")
    wposet = window.poset
    d = window.designated
    assert wposet.r0(d["v"]) == Fraction(3, 2)
    assert wposet.r1(d["e"]) == 4
    assert wposet.r2(d["x"]) == 9
    assert wposet.ric(d["e"]) == 2
    assert wposet.stone_general(d["v"]) == 3
    assert d["v"] in window.interior

    # random ensembles stay on the theorems
    for seed in range(10):
        p = m.random_poset(seed, 4, 6, 3)
        assert p.verify_gauss_bonnet()["holds"]
        for i in range(3):
            assert p.counting_identities(i)["holds"]
        s = m.random_surface_map(seed, surface="torus", divisions=3, flips=9)
        assert s.euler_characteristic() == 0
        assert s.face_poset().is_almost_polyhedral()["verdict"]

    # report JSON round-trips through the same schema as the CLI
    import json

    report = json.loads(poset.curvature_report_json(["r1", "ric"]))
    assert report["reports"][0]["kind"] == "r1"
    assert report["averages"]["b1"] == {"num": 2, "den": 1}

    print("smoke test passed")


if __name__ == "__main__":
    main()
