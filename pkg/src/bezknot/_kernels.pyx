# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; mirrors ``_kernels_py`` exactly.

Lattice coordinates below 2**40 in magnitude run on 128-bit machine integers:
products of three coordinate differences stay under 2**126.  Larger inputs
fall back to generic Python-int arithmetic inside the same compiled loops.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    ctypedef long long i128 "__int128"

BACKEND = "cython"

cdef object _LIMIT = 1 << 40


cdef bint _small(pts, Py_ssize_t dim):
    cdef Py_ssize_t i, k
    for p in pts:
        for k in range(dim):
            v = p[k]
            if v >= _LIMIT or v <= -_LIMIT:
                return False
    return True


cdef inline int _sgn128(i128 v):
    return (v > 0) - (v < 0)


def seg3_candidate_pairs(pts, bint closed=True):
    cdef Py_ssize_t n = len(pts)
    cdef Py_ssize_t m = n if closed else n - 1
    if m <= 0:
        return []
    if not _small(pts, 3):
        return _seg3_generic(pts, closed, n, m)
    cdef long long *c = <long long *> malloc(3 * n * sizeof(long long))
    if c == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, ip, jp
    cdef long long ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz
    cdef i128 ux, uy, uz, vx, vy, vz, wx, wy, wz, det
    out = []
    try:
        for i in range(n):
            p = pts[i]
            c[3 * i] = p[0]
            c[3 * i + 1] = p[1]
            c[3 * i + 2] = p[2]
        for i in range(m):
            ip = (i + 1) % n
            ax = c[3 * i]; ay = c[3 * i + 1]; az = c[3 * i + 2]
            bx = c[3 * ip]; by = c[3 * ip + 1]; bz = c[3 * ip + 2]
            ux = bx - ax; uy = by - ay; uz = bz - az
            for j in range(i + 2, m):
                if closed and i == 0 and j == m - 1:
                    continue
                jp = (j + 1) % n
                cx = c[3 * j]; cy = c[3 * j + 1]; cz = c[3 * j + 2]
                dx = c[3 * jp]; dy = c[3 * jp + 1]; dz = c[3 * jp + 2]
                if (cx < ax and cx < bx and dx < ax and dx < bx) or \
                        (cx > ax and cx > bx and dx > ax and dx > bx) or \
                        (cy < ay and cy < by and dy < ay and dy < by) or \
                        (cy > ay and cy > by and dy > ay and dy > by) or \
                        (cz < az and cz < bz and dz < az and dz < bz) or \
                        (cz > az and cz > bz and dz > az and dz > bz):
                    continue
                vx = dx - cx; vy = dy - cy; vz = dz - cz
                wx = cx - ax; wy = cy - ay; wz = cz - az
                det = (wx * (uy * vz - uz * vy) - wy * (ux * vz - uz * vx)
                       + wz * (ux * vy - uy * vx))
                if det != 0:
                    continue
                out.append((i, j))
    finally:
        free(c)
    return out


cdef list _seg3_generic(pts, bint closed, Py_ssize_t n, Py_ssize_t m):
    cdef Py_ssize_t i, j
    out = []
    for i in range(m):
        px, py, pz = pts[i]
        qx, qy, qz = pts[(i + 1) % n]
        ux = qx - px; uy = qy - py; uz = qz - pz
        for j in range(i + 2, m):
            if closed and i == 0 and j == m - 1:
                continue
            rx, ry, rz = pts[j]
            sx, sy, sz = pts[(j + 1) % n]
            if max(px, qx) < min(rx, sx) or max(rx, sx) < min(px, qx) or \
                    max(py, qy) < min(ry, sy) or max(ry, sy) < min(py, qy) or \
                    max(pz, qz) < min(rz, sz) or max(rz, sz) < min(pz, qz):
                continue
            vx = sx - rx; vy = sy - ry; vz = sz - rz
            wx = rx - px; wy = ry - py; wz = rz - pz
            det = (wx * (uy * vz - uz * vy) - wy * (ux * vz - uz * vx)
                   + wz * (ux * vy - uy * vx))
            if det:
                continue
            out.append((i, j))
    return out


cdef inline int _orient128(i128 ax, i128 ay, i128 bx, i128 by, i128 cx, i128 cy):
    return _sgn128((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


cdef inline int _orient_obj(ax, ay, bx, by, cx, cy):
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def seg2_contact_pairs(pts, bint closed=True):
    cdef Py_ssize_t n = len(pts)
    cdef Py_ssize_t m = n if closed else n - 1
    if m <= 0:
        return []
    if not _small(pts, 2):
        return _seg2_generic(pts, closed, n, m)
    cdef long long *c = <long long *> malloc(2 * n * sizeof(long long))
    if c == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, ip, jp
    cdef long long ax, ay, bx, by, cx, cy, dx, dy
    cdef long long ilox, ihix, iloy, ihiy
    cdef int o1, o2, o3, o4
    out = []
    try:
        for i in range(n):
            p = pts[i]
            c[2 * i] = p[0]
            c[2 * i + 1] = p[1]
        for i in range(m):
            ip = (i + 1) % n
            ax = c[2 * i]; ay = c[2 * i + 1]
            bx = c[2 * ip]; by = c[2 * ip + 1]
            ilox = ax if ax <= bx else bx
            ihix = bx if ax <= bx else ax
            iloy = ay if ay <= by else by
            ihiy = by if ay <= by else ay
            for j in range(i + 2, m):
                if closed and i == 0 and j == m - 1:
                    continue
                jp = (j + 1) % n
                cx = c[2 * j]; cy = c[2 * j + 1]
                dx = c[2 * jp]; dy = c[2 * jp + 1]
                if (cx < ilox and dx < ilox) or (cx > ihix and dx > ihix) or \
                        (cy < iloy and dy < iloy) or (cy > ihiy and dy > ihiy):
                    continue
                o1 = _orient128(ax, ay, bx, by, cx, cy)
                o2 = _orient128(ax, ay, bx, by, dx, dy)
                if o1 * o2 > 0:
                    continue
                o3 = _orient128(cx, cy, dx, dy, ax, ay)
                o4 = _orient128(cx, cy, dx, dy, bx, by)
                if o3 * o4 > 0:
                    continue
                out.append((i, j))
    finally:
        free(c)
    return out


cdef list _seg2_generic(pts, bint closed, Py_ssize_t n, Py_ssize_t m):
    cdef Py_ssize_t i, j
    cdef int o1, o2, o3, o4
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
            if (cx < ilox and dx < ilox) or (cx > ihix and dx > ihix) or \
                    (cy < iloy and dy < iloy) or (cy > ihiy and dy > ihiy):
                continue
            o1 = _orient_obj(ax, ay, bx, by, cx, cy)
            o2 = _orient_obj(ax, ay, bx, by, dx, dy)
            if o1 * o2 > 0:
                continue
            o3 = _orient_obj(cx, cy, dx, dy, ax, ay)
            o4 = _orient_obj(cx, cy, dx, dy, bx, by)
            if o3 * o4 > 0:
                continue
            out.append((i, j))
    return out


def separating_axis(normals, pa, pb, Py_ssize_t start=0, bint strict=True):
    cdef Py_ssize_t k, i
    cdef Py_ssize_t na = len(pa), nb = len(pb), nn = len(normals)
    # points must fit a machine word; each normal is then checked so that
    # |n| * |p| * 3 stays below 2**126
    cdef Py_ssize_t pbits = _max_bits(pa, pb)
    cdef bint fast = pbits <= 62
    cdef i128 fx, fy, fz, v, lo_a, hi_a, lo_b, hi_b
    cdef long long *ca = NULL
    cdef long long *cb = NULL
    if fast:
        ca = <long long *> malloc(3 * (na + 1) * sizeof(long long))
        cb = <long long *> malloc(3 * (nb + 1) * sizeof(long long))
        if ca == NULL or cb == NULL:
            free(ca); free(cb)
            raise MemoryError()
        for i in range(na):
            p = pa[i]
            ca[3 * i] = p[0]; ca[3 * i + 1] = p[1]; ca[3 * i + 2] = p[2]
        for i in range(nb):
            p = pb[i]
            cb[3 * i] = p[0]; cb[3 * i + 1] = p[1]; cb[3 * i + 2] = p[2]
    try:
        for k in range(start, nn):
            nx, ny, nz = normals[k]
            if fast and max(abs(nx), abs(ny), abs(nz)).bit_length() + pbits <= 124:
                fx = _to128(nx); fy = _to128(ny); fz = _to128(nz)
                lo_a = hi_a = fx * ca[0] + fy * ca[1] + fz * ca[2]
                for i in range(1, na):
                    v = fx * ca[3 * i] + fy * ca[3 * i + 1] + fz * ca[3 * i + 2]
                    if v < lo_a:
                        lo_a = v
                    elif v > hi_a:
                        hi_a = v
                lo_b = hi_b = fx * cb[0] + fy * cb[1] + fz * cb[2]
                for i in range(1, nb):
                    v = fx * cb[3 * i] + fy * cb[3 * i + 1] + fz * cb[3 * i + 2]
                    if v < lo_b:
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
            else:
                side = _axis_generic(nx, ny, nz, pa, pb, strict)
                if side:
                    return k, side
    finally:
        free(ca)
        free(cb)
    return -1, 0


cdef Py_ssize_t _max_bits(pa, pb):
    cdef Py_ssize_t best = 0, b
    for pts in (pa, pb):
        for p in pts:
            for v in p:
                b = abs(v).bit_length()
                if b > best:
                    best = b
    return best


cdef i128 _to128(object v):
    # |v| < 2**124: split into two 64-bit halves
    cdef bint neg = v < 0
    if neg:
        v = -v
    cdef unsigned long long lo = v & 0xFFFFFFFFFFFFFFFF
    cdef long long hi = v >> 64
    cdef i128 r = ((<i128> hi) << 64) | (<i128> lo)
    return -r if neg else r


cdef int _axis_generic(nx, ny, nz, pa, pb, bint strict):
    vals_a = [nx * x + ny * y + nz * z for x, y, z in pa]
    vals_b = [nx * x + ny * y + nz * z for x, y, z in pb]
    lo_a, hi_a = min(vals_a), max(vals_a)
    lo_b, hi_b = min(vals_b), max(vals_b)
    if strict:
        if hi_a < lo_b:
            return 1
        if hi_b < lo_a:
            return -1
    else:
        if hi_a <= lo_b:
            return 1
        if hi_b <= lo_a:
            return -1
    return 0


cdef inline int _find(int *parent, int x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def bracket_state_counts(pd):
    cdef int n = len(pd)
    cdef int arcs = 2 * n
    cdef int k, x, rx, ry, n_a, loops
    cdef long long state, total
    cdef int *code = <int *> malloc((4 * n + 1) * sizeof(int))
    cdef int *parent = <int *> malloc((arcs + 1) * sizeof(int))
    cdef long long *tally = <long long *> malloc((n + 1) * (arcs + 2) * sizeof(long long))
    if code == NULL or parent == NULL or tally == NULL:
        free(code); free(parent); free(tally)
        raise MemoryError()
    cdef int p0, p1, p2, p3
    try:
        for k in range(n):
            a, b, c, d = pd[k]
            code[4 * k] = a; code[4 * k + 1] = b; code[4 * k + 2] = c; code[4 * k + 3] = d
        for k in range((n + 1) * (arcs + 2)):
            tally[k] = 0
        total = (<long long> 1) << n
        for state in range(total):
            for x in range(arcs):
                parent[x] = x
            n_a = 0
            for k in range(n):
                if (state >> k) & 1:
                    p0 = code[4 * k]; p1 = code[4 * k + 3]
                    p2 = code[4 * k + 1]; p3 = code[4 * k + 2]
                else:
                    n_a += 1
                    p0 = code[4 * k]; p1 = code[4 * k + 1]
                    p2 = code[4 * k + 2]; p3 = code[4 * k + 3]
                rx = _find(parent, p0); ry = _find(parent, p1)
                if rx != ry:
                    parent[rx] = ry
                rx = _find(parent, p2); ry = _find(parent, p3)
                if rx != ry:
                    parent[rx] = ry
            loops = 0
            for x in range(arcs):
                if _find(parent, x) == x:
                    loops += 1
            tally[n_a * (arcs + 2) + loops] += 1
        out = {}
        for n_a in range(n + 1):
            for loops in range(arcs + 2):
                if tally[n_a * (arcs + 2) + loops]:
                    out[(n_a, loops)] = tally[n_a * (arcs + 2) + loops]
        return out
    finally:
        free(code); free(parent); free(tally)
