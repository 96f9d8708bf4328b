"""Compare the compiled kernels with the pure-Python fallback on real workloads.

Run:  python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

from bezknot import _kernels_py
from bezknot.bezier import scale_for_subdivision, subdivide_levels
from bezknot.data import K0, K1
from bezknot.hulls import _candidate_normals, _reduced_lattice, convex_hull
from bezknot.kernel import lattice
from bezknot.topology import GaussCode, planar_diagram

try:
    from bezknot import _kernels as _compiled
except ImportError:
    _compiled = None


def workloads(level: int) -> dict[str, tuple]:
    scaled, _ = scale_for_subdivision(K1, level)
    forest = subdivide_levels(scaled, level)
    pts3, _ = lattice(forest.refinement())
    pts2 = [(p[0], p[1]) for p in pts3]
    a, b = forest.pieces[3].points, forest.pieces[7].points
    ha, hb = convex_hull(a), convex_hull(b)
    normals = [n for batch in _candidate_normals(ha, hb, _reduced_lattice(a), _reduced_lattice(b)) for n in batch]
    pa, pb = _reduced_lattice(list(a) + list(b))[:len(a)], _reduced_lattice(list(a) + list(b))[len(a):]
    granny = planar_diagram(GaussCode.parse(
        "O1+ U2+ O3+ U1+ O2+ U3+ O4+ U5+ O6+ U4+ O5+ U6+ O7+ U8+ O9+ U7+ O8+ U9+"))
    return {
        "seg3_candidate_pairs": ("seg3_candidate_pairs", (pts3, True)),
        "seg2_contact_pairs": ("seg2_contact_pairs", (pts2, True)),
        "separating_axis": ("separating_axis", (normals, pa, pb, 0, True)),
        "bracket_state_counts (9 crossings)": ("bracket_state_counts", (granny,)),
    }


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--level", type=int, default=5, help="subdivision level of the K1 workload")
    args = parser.parse_args(argv)
    if _compiled is None:
        print("compiled extension not built; run: python3 setup.py build_ext --inplace", file=sys.stderr)
        return 1
    print(f"{'kernel':38} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, (fn, call_args) in workloads(args.level).items():
        py_fn, c_fn = getattr(_kernels_py, fn), getattr(_compiled, fn)
        if py_fn(*call_args) != c_fn(*call_args):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_py = min(timeit.repeat(lambda: py_fn(*call_args), number=1, repeat=args.repeat)) * 1e3
        t_c = min(timeit.repeat(lambda: c_fn(*call_args), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:38} {t_py:12.3f} {t_c:12.3f} {t_py / t_c:7.1f}x")
    t_py, t_c = (_end_to_end(pure) for pure in ("1", "0"))
    print(f"{'certify_isotopy(K1, 4) end to end':38} {t_py:12.1f} {t_c:12.1f} {t_py / t_c:7.1f}x")
    return 0


_E2E = """
import time
from bezknot.certify import certify_isotopy
from bezknot.data import K1
t0 = time.perf_counter()
certify_isotopy(K1, 4)
print((time.perf_counter() - t0) * 1e3)
"""


def _end_to_end(pure: str) -> float:
    env = dict(os.environ, BEZKNOT_PURE_PYTHON=pure)
    out = subprocess.run([sys.executable, "-c", _E2E], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


if __name__ == "__main__":
    sys.exit(main())
