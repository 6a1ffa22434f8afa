#!/usr/bin/env python3
"""Smoke test for the kextremal_py extension module.

Builds nothing itself: run `cargo build -p kextremal-py` first, then this
script stages the cdylib under an importable name and exercises the API.
"""

import math
import shutil
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def stage_module() -> None:
    """Copy the built cdylib into a temp dir as an importable module."""
    candidates = [
        REPO_ROOT / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libkextremal_py.so", "libkextremal_py.dylib", "kextremal_py.dll")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("cdylib not found; run `cargo build -p kextremal-py` first")
    stage = Path(tempfile.mkdtemp(prefix="kextremal_py_"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(built, stage / f"kextremal_py{suffix}")
    sys.path.insert(0, str(stage))


def main() -> None:
    stage_module()
    import kextremal_py as kx

    # Exact scalar arithmetic in a quadratic extension.
    a = kx.Scalar("1/2+1/3*sqrt(5)")
    b = kx.Scalar("2")
    prod = a * b
    assert str(prod) == "1+2/3*sqrt(5)", str(prod)
    assert prod.is_exact()
    assert math.isclose(float(prod), 1 + 2 / 3 * math.sqrt(5))
    root = kx.Scalar("8").sqrt()
    assert str(root) == "2*sqrt(2)", str(root)
    try:
        a / kx.Scalar("0")
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("division by zero must raise")

    # Product-torus enumeration: n=10, k=1 admits m in 3..7.
    tori = kx.enumerate_tori(10, "1")
    ms = sorted(t["m"] for t in tori)
    assert ms == [3, 4, 5, 6, 7], ms

    # g = 6 classification: lambda_1 = 2 + sqrt(3), exact.
    g6 = kx.classify(6, [1], "1")
    assert g6["Unique"]["lambda1"]["repr"] == "2+1*sqrt(3)"

    # A (1, 1, -1, -1) spectrum is extremal for every k.
    res = kx.residual([("1", 2), ("-1", 2)], "3/2")
    assert res.is_zero()

    # Bounds at (n, p, H, rho, k) = (4, 1, 1, 0, 2) are exact integers.
    bnds = kx.bounds(4, 1, "1", "0", "2")
    assert bnds["c1"]["repr"] == "1" and bnds["c1"]["exact"]
    assert bnds["c2"]["repr"] == "5"

    # The Veronese surface saturates the scalar-curvature bound.
    ver = kx.model_check("veronese", "1")
    assert ver["extremal"]
    assert ver["report"]["scal_verdict"] == "saturated"
    assert ver["report"]["c3"]["repr"] == "4/3"

    # Worked Ricci threshold: n=4, k=1, H0=0, delta0=1 gives t = 1/24.
    eps = kx.epsilon("ricci", 4, 1, "1", 0.0, 1.0)
    assert math.isclose(eps["t"], 1 / 24, rel_tol=0, abs_tol=1e-15)
    assert eps["value"] > 0

    sob = kx.sobolev(4, 1 / 24)
    assert math.isclose(sob["a"], eps["sobolev"]["a"])

    # Randomized verification suites: deterministic under a fixed seed.
    first = kx.verify_lemmas(trials=120, seed=7)
    second = kx.verify_lemmas(trials=120, seed=7)
    assert first == second
    assert len(first) == 13
    assert all(r["pass"] for r in first)

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
