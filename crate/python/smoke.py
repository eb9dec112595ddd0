"""Smoke test for the kite_cc extension.

Builds the extension with cargo (or uses an importable kite_cc if one is
already installed, e.g. via maturin) and exercises the main entry points.

    python3 python/smoke.py
"""

import importlib
import math
import shutil
import subprocess
import sys
import sysconfig
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("kite_cc")
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "kite-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release"
    built = next(p for p in (lib / "libkite_cc.so", lib / "libkite_cc.dylib", lib / "kite_cc.dll") if p.exists())
    dest = ROOT / "target" / "python"
    dest.mkdir(parents=True, exist_ok=True)
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(built, dest / f"kite_cc{suffix}")
    sys.path.insert(0, str(dest))
    return importlib.import_module("kite_cc")


def main():
    kc = load()
    sqrt3 = math.sqrt(3.0)

    m_star = kc.degenerate_gon_mass()
    assert abs(m_star - (207 - 16 * sqrt3) / 338) < 1e-12, m_star

    sols = kc.solve_convex(kc.MassTriple(0.25, 0.25))
    assert len(sols) == 1 and sols[0].shape.distance(kc.Shape(1.0, 1.0)) < 1e-12, sols

    shape = kc.Shape(2.0, -1.0)
    masses = kc.mass_map(shape)
    assert kc.classify_region(shape) == "cv1"
    assert abs(masses.m1 - 0.18442) < 1e-4, masses
    assert kc.cc_residual(shape, masses) < 1e-12
    back = kc.solve_concave(masses)
    assert len(back) == 2 and min(s.shape.distance(shape) for s in back) < 1e-8, back

    corner = kc.Shape(1 / sqrt3, 1 / sqrt3)
    assert abs(kc.f_value(corner) - 342.71) < 0.5
    assert kc.index_sign(kc.Shape(1.2, 0.9), kc.mass_map(kc.Shape(1.2, 0.9))) == 1

    spec = kc.stability(kc.Shape(1.0, 1.0))
    assert not spec.stable and len(spec.eigenvalues) == 8, spec

    assert kc.solve_concave(kc.MassTriple(0.25, 0.4, 0.35)) == []

    lm = kc.limit_masses_13gon(-1.0)
    assert abs(lm.m3 - (1 - 3 * lm.m1)) < 1e-12

    rows = kc.scan_region("cv2", 10, "index")
    assert len(rows) == 100 and any(r["index"] == -1 for r in rows)

    try:
        kc.MassTriple(0.7, 0.6)
    except ValueError:
        pass
    else:
        raise AssertionError("invalid masses accepted")

    print(f"kite_cc smoke test passed (m* = {m_star:.10f}, square spectrum class {spec.klass})")


if __name__ == "__main__":
    main()
