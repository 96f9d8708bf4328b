"""Pure-Python hot loops over integer lattice coordinates.

Reference implementation of the functions compiled in ``_kernels.pyx``; both
modules must return identical results.  Inputs are plain ``int`` tuples (see
:func:`bezknot.kernel.lattice`), so no rational normalisation happens here.
"""

from __future__ import annotations

BACKEND = "python"


def _edge_count(n: int, closed: bool) -> int:
    return n if closed else n - 1


def _adjacent(i: int, j: int, m: int, closed: bool) -> bool:
    # i < j
    return j == i + 1 or (closed and i == 0 and j == m - 1)


def seg3_candidate_pairs(pts, closed=True):
    """Non-adjacent edge pairs of a 3D polyline that may touch.

    Pairs that are certainly disjoint (separated bounding boxes, or lying on
    skew lines) are dropped; everything returned needs an exact test.
    """
    n = len(pts)
    m = _edge_count(n, closed)
    boxes = []
    for i in range(m):
        p, q = pts[i], pts[(i + 1) % n]
        boxes.append((min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]),
                      min(p[2], q[2]), max(p[2], q[2])))
    out = []
    for i in range(m):
        bi = boxes[i]
        px, py, pz = pts[i]
        qx, qy, qz = pts[(i + 1) % n]
        ux, uy, uz = qx - px, qy - py, qz - pz
        for j in range(i + 2, m):
            if closed and i == 0 and j == m - 1:
                continue
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2] \
                    or bi[5] < bj[4] or bj[5] < bi[4]:
                continue
            rx, ry, rz = pts[j]
            sx, sy, sz = pts[(j + 1) % n]
            vx, vy, vz = sx - rx, sy - ry, sz - rz
            wx, wy, wz = rx - px, ry - py, rz - pz
            det = (wx * (uy * vz - uz * vy) - wy * (ux * vz - uz * vx)
                   + wz * (ux * vy - uy * vx))
            if det:
                continue
            out.append((i, j))
    return out


def _orient(ax, ay, bx, by, cx, cy):
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def seg2_contact_pairs(pts, closed=True):
    """Non-adjacent edge pairs of a planar polyline whose closed segments meet."""
    n = len(pts)
    m = _edge_count(n, closed)
    out = []
    for i in range(m):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % n]
        ilox, ihix = (ax, bx) if ax <= bx else (bx, ax)
        iloy, ihiy = (ay, by) if ay <= by else (by, ay)
        for j in range(i + 2, m):
            if closed and i == 0 and j == m - 1:
                continue
            cx, cy = pts[j]
            dx, dy = pts[(j + 1) % n]
            if (cx < ilox and dx < ilox) or (cx > ihix and dx > ihix) \
                    or (cy < iloy and dy < iloy) or (cy > ihiy and dy > ihiy):
                continue
            o1 = _orient(ax, ay, bx, by, cx, cy)
            o2 = _orient(ax, ay, bx, by, dx, dy)
            if o1 * o2 > 0:
                continue
            o3 = _orient(cx, cy, dx, dy, ax, ay)
            o4 = _orient(cx, cy, dx, dy, bx, by)
            if o3 * o4 > 0:
                continue
            out.append((i, j))
    return out


def separating_axis(normals, pa, pb, start=0, strict=True):
    """First candidate normal whose projections of ``pa`` and ``pb`` do not overlap.

    Returns ``(index, side)`` where ``side`` is +1 when ``pa`` lies below ``pb``
    along the normal and -1 for the reverse; ``(-1, 0)`` if none qualifies.
    With ``strict=False`` touching projection intervals also qualify.
    """
    for k in range(start, len(normals)):
        nx, ny, nz = normals[k]
        lo_a = hi_a = None
        for x, y, z in pa:
            v = nx * x + ny * y + nz * z
            if lo_a is None:
                lo_a = hi_a = v
            elif v < lo_a:
                lo_a = v
            elif v > hi_a:
                hi_a = v
        lo_b = hi_b = None
        for x, y, z in pb:
            v = nx * x + ny * y + nz * z
            if lo_b is None:
                lo_b = hi_b = v
            elif v < lo_b:
                lo_b = v
            elif v > hi_b:
                hi_b = v
        if strict:
            if hi_a < lo_b:
                return k, 1
            if hi_b < lo_a:
                return k, -1
        else:
            if hi_a <= lo_b:
                return k, 1
            if hi_b <= lo_a:
                return k, -1
    return -1, 0


def bracket_state_counts(pd):
    """Tally Kauffman states of a planar diagram.

    ``pd`` lists crossings ``(a, b, c, d)`` of arc labels ``0 .. 2n-1``.  The
    A-smoothing joins arcs (a, b) and (c, d); the B-smoothing joins (a, d) and
    (b, c).  Returns ``{(number_of_A_smoothings, loop_count): states}``.
    """
    n = len(pd)
    arcs = 2 * n
    counts: dict[tuple[int, int], int] = {}
    for state in range(1 << n):
        parent = list(range(arcs))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        n_a = 0
        for k in range(n):
            a, b, c, d = pd[k]
            if state >> k & 1:
                pairs = ((a, d), (b, c))
            else:
                n_a += 1
                pairs = ((a, b), (c, d))
            for x, y in pairs:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        loops = sum(1 for x in range(arcs) if find(x) == x)
        key = (n_a, loops)
        counts[key] = counts.get(key, 0) + 1
    return counts
