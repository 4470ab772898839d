#!/usr/bin/env python3
"""Smoke test for the koszul_py extension module.

Builds nothing itself: it expects `cargo build -p koszul-py` (or a release
build) to have produced the cdylib, copies it next to a temp dir under the
importable name and exercises the main entry points.
"""

import shutil
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def locate_cdylib() -> Path:
    names = ["libkoszul_py.so", "libkoszul_py.dylib", "koszul_py.dll"]
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in names
    ]
    for path in candidates:
        if path.exists():
            return path
    sys.exit("cdylib not found; run `cargo build -p koszul-py` first")


def main() -> None:
    cdylib = locate_cdylib()
    tmp = Path(tempfile.mkdtemp(prefix="koszul_py_"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(cdylib, tmp / f"koszul_py{suffix}")
    sys.path.insert(0, str(tmp))

    import koszul_py as k

    # spheres: two cohomology classes, top and bottom
    s3 = k.sphere(3)
    assert s3.check_d_squared()
    assert s3.cohomology() == {0: 1, 1: 0, 2: 0, 3: 1}, s3.cohomology()

    # the doubly infinite complexes are acyclic on trusted degrees
    assert k.sphere_infinite("both", (-8, 8)).is_acyclic()
    assert k.koszul("janus", (-8, 8)).is_acyclic()

    # weight-0 quotient: one class, in degree -1, the singular monomial
    q = k.chiral("quotient", 0, zero_window=6)
    assert q.cohomology() == {-1: 1, -2: 0, -3: 0, -4: 0}, q.cohomology()
    reps = q.representatives()
    assert reps[-1] == [[("1", "x[0]^-1*xi[0]")]], reps

    # glued complexes are acyclic, in one and two variables
    assert k.chiral_janus(0, zero_window=6).is_acyclic()
    assert k.chiral_janus(2, zero_window=4).is_acyclic()
    assert k.chiral_janus(0, zero_window=3, vars=2).is_acyclic()

    # dimension oracle
    series = k.dimension_series(1, 4)
    assert series[:3] == [1, 4, 12], series
    vn = k.chiral("vn-only", 2)
    assert sum(vn.dims().values()) == 12

    # homotopy identity and the tensor factorization
    ok, dim, failure = k.homotopy_certificate("vn-only", 3)
    assert ok and failure is None, failure
    assert k.tensor_decomposition(2, 3)

    # local cohomology concentration with matching dual count
    ok, top, dual = k.local_cohomology(2, 2, zero_window=2)
    assert ok and top == dual == 16, (ok, top, dual)
    # and the non-regular control really fails
    control = k.power_koszul_zero_control(1, zero_window=3)
    assert control.cohomology()[0] > 0

    # JSON round trip is byte identical
    js = q.to_json()
    assert k.Complex.from_json(js).to_json() == js

    # a quick named suite
    results = k.run_suite("spheres", max_n=4)
    assert results and all(passed for _, passed, _ in results), results

    print("smoke test passed:", len(results), "suite checks and all assertions")


if __name__ == "__main__":
    main()
