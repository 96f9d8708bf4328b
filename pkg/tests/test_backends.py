import importlib
import os
import random
import subprocess
import sys

import pytest

from bezknot import _kernels_py as py
from bezknot.topology import GaussCode, planar_diagram

compiled = pytest.importorskip("bezknot._kernels", reason="compiled extension not built")


def _poly(rng, n, dim, bound):
    return [tuple(rng.randint(-bound, bound) for _ in range(dim)) for _ in range(n)]


@pytest.mark.parametrize("bound", [3, 10 ** 6, 2 ** 70])
def test_segment_sweeps_agree(bound):
    rng = random.Random(bound)
    for _ in range(100):
        pts3 = _poly(rng, rng.randint(3, 12), 3, bound)
        pts2 = [p[:2] for p in pts3]
        for closed in (True, False):
            assert compiled.seg3_candidate_pairs(pts3, closed) == py.seg3_candidate_pairs(pts3, closed)
            assert compiled.seg2_contact_pairs(pts2, closed) == py.seg2_contact_pairs(pts2, closed)


@pytest.mark.parametrize("bound", [4, 2 ** 40, 2 ** 61, 2 ** 100])
def test_separating_axis_agrees(bound):
    # covers the 128-bit fast path and the arbitrary-precision path
    rng = random.Random(bound)
    for _ in range(200):
        pa, pb = _poly(rng, 4, 3, bound), _poly(rng, 4, 3, bound)
        normals = _poly(rng, 6, 3, 2 ** rng.randint(1, 70))
        for strict in (True, False):
            assert compiled.separating_axis(normals, pa, pb, 0, strict) == py.separating_axis(normals, pa, pb, 0, strict)
            assert compiled.separating_axis(normals, pa, pb, 3, strict) == py.separating_axis(normals, pa, pb, 3, strict)


def test_bracket_counts_agree():
    for text in ("O1+ U2+ O3+ U1+ O2+ U3+", "O1- U2+ O3- U1- O2+ U3-", "O1+ U1+", "O1+ O2- U1+ U2-"):
        pd = planar_diagram(GaussCode.parse(text))
        assert compiled.bracket_state_counts(pd) == py.bracket_state_counts(pd)


def test_environment_forces_fallback():
    code = "import bezknot; print(bezknot.BACKEND, bezknot.COMPILED)"
    out = subprocess.run([sys.executable, "-c", code], env={"BEZKNOT_PURE_PYTHON": "1", "PATH": ""},
                         capture_output=True, text=True, check=True).stdout.split()
    assert out == ["python", "False"]
    assert importlib.import_module("bezknot").COMPILED == (os.environ.get("BEZKNOT_PURE_PYTHON") != "1")
