"""Hot numeric kernels with a numba fast path and a numpy fallback.

All kernels work on int64 coordinate arrays and are *exact* as long as
|coordinate| < 2**25 (cross products then fit in int64 with room for the
one subtraction they need).  Callers with non-integer or oversized
coordinates must use the pure-Fraction code paths instead.

Set TOPOFACE_NO_NUMBA=1 to force the numpy implementations; the module
falls back automatically when numba is not importable.  See
benchmarks/bench_kernels.py for a comparison of the two paths.
"""

import os

import numpy as np

COORD_LIMIT = 1 << 25

# pair classification codes
CODE_NONE = 0
CODE_PROPER = 1
CODE_SHARED_ENDPOINT = 2
CODE_TOUCH = 3  # endpoint in the other segment's interior
CODE_OVERLAP = 4

_WANT_NUMBA = os.environ.get("TOPOFACE_NO_NUMBA", "") not in ("1", "true", "yes")

if _WANT_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _WANT_NUMBA = False

USING_NUMBA = _WANT_NUMBA


def _make_classify(decorate):
    def classify(ax, ay, bx, by, cx, cy, dx, dy):
        # returns (code, t_num, t_den, u_num); for CODE_PROPER the crossing
        # sits at parameter t_num/t_den on segment 1 and u_num/t_den on 2
        rX = bx - ax
        rY = by - ay
        sX = dx - cx
        sY = dy - cy
        d1 = sX * (ay - cy) - sY * (ax - cx)  # orient(c,d,a)
        d2 = sX * (by - cy) - sY * (bx - cx)  # orient(c,d,b)
        d3 = rX * (cy - ay) - rY * (cx - ax)  # orient(a,b,c)
        d4 = rX * (dy - ay) - rY * (dx - ax)  # orient(a,b,d)
        if d1 == 0 and d2 == 0:
            # collinear: project on the dominant axis
            if rX != 0 or sX != 0:
                lo1 = min(ax, bx)
                hi1 = max(ax, bx)
                lo2 = min(cx, dx)
                hi2 = max(cx, dx)
            else:
                lo1 = min(ay, by)
                hi1 = max(ay, by)
                lo2 = min(cy, dy)
                hi2 = max(cy, dy)
            lo = max(lo1, lo2)
            hi = min(hi1, hi2)
            if lo > hi:
                return CODE_NONE, 0, 0, 0
            if lo == hi:
                return CODE_SHARED_ENDPOINT, 0, 0, 0
            return CODE_OVERLAP, 0, 0, 0
        if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
            (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
        ):
            den = rX * sY - rY * sX
            tn = (cx - ax) * sY - (cy - ay) * sX
            un = (cx - ax) * rY - (cy - ay) * rX
            if den < 0:
                den = -den
                tn = -tn
                un = -un
            return CODE_PROPER, tn, den, un
        # endpoint contacts
        code = CODE_NONE
        if d1 == 0 and min(cx, dx) <= ax <= max(cx, dx) and min(cy, dy) <= ay <= max(cy, dy):
            if (ax == cx and ay == cy) or (ax == dx and ay == dy):
                code = max(code, CODE_SHARED_ENDPOINT)
            else:
                code = CODE_TOUCH
        if d2 == 0 and min(cx, dx) <= bx <= max(cx, dx) and min(cy, dy) <= by <= max(cy, dy):
            if (bx == cx and by == cy) or (bx == dx and by == dy):
                code = max(code, CODE_SHARED_ENDPOINT)
            else:
                code = CODE_TOUCH
        if d3 == 0 and min(ax, bx) <= cx <= max(ax, bx) and min(ay, by) <= cy <= max(ay, by):
            if (cx == ax and cy == ay) or (cx == bx and cy == by):
                code = max(code, CODE_SHARED_ENDPOINT)
            else:
                code = CODE_TOUCH
        if d4 == 0 and min(ax, bx) <= dx <= max(ax, bx) and min(ay, by) <= dy <= max(ay, by):
            if (dx == ax and dy == ay) or (dx == bx and dy == by):
                code = max(code, CODE_SHARED_ENDPOINT)
            else:
                code = CODE_TOUCH
        return code, 0, 0, 0

    return decorate(classify)


_classify_scalar = _make_classify(lambda f: f)


def _crossings_python(ax, ay, bx, by):
    """Plain-python reference loop (used for tiny inputs and as oracle)."""
    recs = []
    S = len(ax)
    minx = np.minimum(ax, bx)
    maxx = np.maximum(ax, bx)
    miny = np.minimum(ay, by)
    maxy = np.maximum(ay, by)
    for i in range(S):
        for j in range(i + 1, S):
            if (
                maxx[i] < minx[j]
                or maxx[j] < minx[i]
                or maxy[i] < miny[j]
                or maxy[j] < miny[i]
            ):
                continue
            code, tn, td, un = _classify_scalar(
                int(ax[i]), int(ay[i]), int(bx[i]), int(by[i]),
                int(ax[j]), int(ay[j]), int(bx[j]), int(by[j]),
            )
            if code != CODE_NONE:
                recs.append((i, j, code, tn, td, un))
    return _pack(recs)


def _pack(recs):
    if not recs:
        z = np.zeros(0, dtype=np.int64)
        return z, z.copy(), z.copy(), z.copy(), z.copy(), z.copy()
    arr = np.asarray(recs, dtype=np.int64)
    return arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], arr[:, 4], arr[:, 5]


if USING_NUMBA:
    _classify_nb = _make_classify(njit(cache=True, inline="always"))

    @njit(cache=True)
    def _crossings_numba_pass(ax, ay, bx, by, order, minx, maxx, miny, maxy,
                              out, cap):
        S = ax.shape[0]
        count = 0
        for oi in range(S):
            i = order[oi]
            xi = maxx[i]
            for oj in range(oi + 1, S):
                j = order[oj]
                if minx[j] > xi:
                    break
                if (
                    maxx[j] < minx[i]
                    or maxy[i] < miny[j]
                    or maxy[j] < miny[i]
                ):
                    continue
                code, tn, td, un = _classify_nb(
                    ax[i], ay[i], bx[i], by[i], ax[j], ay[j], bx[j], by[j]
                )
                if code != CODE_NONE:
                    if count < cap:
                        a, b = (i, j) if i < j else (j, i)
                        out[count, 0] = a
                        out[count, 1] = b
                        out[count, 2] = code
                        if a != i:
                            # normalize params to the lower-index segment
                            tn, un = un, tn
                        out[count, 3] = tn
                        out[count, 4] = td
                        out[count, 5] = un
                    count += 1
        return count

    def _crossings_numba(ax, ay, bx, by):
        minx = np.minimum(ax, bx)
        maxx = np.maximum(ax, bx)
        miny = np.minimum(ay, by)
        maxy = np.maximum(ay, by)
        order = np.argsort(minx, kind="stable").astype(np.int64)
        cap = max(1024, 4 * len(ax))
        while True:
            out = np.empty((cap, 6), dtype=np.int64)
            count = _crossings_numba_pass(
                ax, ay, bx, by, order, minx, maxx, miny, maxy, out, cap
            )
            if count <= cap:
                out = out[:count]
                break
            cap = count + 1024
        return (out[:, 0], out[:, 1], out[:, 2], out[:, 3], out[:, 4], out[:, 5])


def _crossings_numpy(ax, ay, bx, by, block=512):
    """Chunked vectorized pair classification.

    Proper crossings and contact codes are computed with exact int64
    arithmetic on bbox-overlapping pairs only.
    """
    S = len(ax)
    minx = np.minimum(ax, bx)
    maxx = np.maximum(ax, bx)
    miny = np.minimum(ay, by)
    maxy = np.maximum(ay, by)
    order = np.argsort(minx, kind="stable")
    sminx = minx[order]
    recs = []
    for s in range(0, S, block):
        I = order[s:s + block]
        # candidates j later in x-order whose interval can still overlap
        hi_x = maxx[I].max()
        e = np.searchsorted(sminx, hi_x, side="right")
        J = order[s:e]
        if len(J) == 0:
            continue
        ii = np.repeat(I, len(J))
        jj = np.tile(J, len(I))
        keep = ii < jj
        m = keep & ~(
            (maxx[ii] < minx[jj]) | (maxx[jj] < minx[ii])
            | (maxy[ii] < miny[jj]) | (maxy[jj] < miny[ii])
        )
        ii = ii[m]
        jj = jj[m]
        if len(ii) == 0:
            continue
        Ax, Ay, Bx, By = ax[ii], ay[ii], bx[ii], by[ii]
        Cx, Cy, Dx, Dy = ax[jj], ay[jj], bx[jj], by[jj]
        rX, rY = Bx - Ax, By - Ay
        sX, sY = Dx - Cx, Dy - Cy
        d1 = sX * (Ay - Cy) - sY * (Ax - Cx)
        d2 = sX * (By - Cy) - sY * (Bx - Cx)
        d3 = rX * (Cy - Ay) - rY * (Cx - Ax)
        d4 = rX * (Dy - Ay) - rY * (Dx - Ax)
        proper = (
            (((d1 > 0) & (d2 < 0)) | ((d1 < 0) & (d2 > 0)))
            & (((d3 > 0) & (d4 < 0)) | ((d3 < 0) & (d4 > 0)))
        )
        if proper.any():
            pi, pj = ii[proper], jj[proper]
            den = (rX * sY - rY * sX)[proper]
            tn = ((Cx - Ax) * sY - (Cy - Ay) * sX)[proper]
            un = ((Cx - Ax) * rY - (Cy - Ay) * rX)[proper]
            neg = den < 0
            den = np.where(neg, -den, den)
            tn = np.where(neg, -tn, tn)
            un = np.where(neg, -un, un)
            for k in range(len(pi)):
                recs.append((pi[k], pj[k], CODE_PROPER, tn[k], den[k], un[k]))
        # anything with a zero orientation needs the scalar classifier
        suspect = ~proper & ((d1 == 0) | (d2 == 0) | (d3 == 0) | (d4 == 0))
        si, sj = ii[suspect], jj[suspect]
        for k in range(len(si)):
            i, j = int(si[k]), int(sj[k])
            code, tn, td, un = _classify_scalar(
                int(ax[i]), int(ay[i]), int(bx[i]), int(by[i]),
                int(ax[j]), int(ay[j]), int(bx[j]), int(by[j]),
            )
            if code != CODE_NONE:
                recs.append((i, j, code, tn, td, un))
    out = _pack(recs)
    # sort by (i, j) for determinism
    key = np.lexsort((out[1], out[0]))
    return tuple(a[key] for a in out)


def segment_crossings(ax, ay, bx, by):
    """Classify all segment pairs.

    Input: int64 arrays of endpoints, |coords| < 2**25.  Returns arrays
    (i, j, code, t_num, t_den, u_num) with i < j; for CODE_PROPER the
    crossing parameter on segment i is t_num/t_den and on j u_num/t_den.
    """
    ax = np.ascontiguousarray(ax, dtype=np.int64)
    ay = np.ascontiguousarray(ay, dtype=np.int64)
    bx = np.ascontiguousarray(bx, dtype=np.int64)
    by = np.ascontiguousarray(by, dtype=np.int64)
    for arr in (ax, ay, bx, by):
        if len(arr) and np.abs(arr).max() >= COORD_LIMIT:
            raise ValueError("coordinates exceed the exact-int64 kernel range")
    if USING_NUMBA:
        out = _crossings_numba(ax, ay, bx, by)
        key = np.lexsort((out[1], out[0]))
        return tuple(a[key] for a in out)
    return _crossings_numpy(ax, ay, bx, by)


if USING_NUMBA:

    @njit(cache=True)
    def _ray_counts_numba(px, py, dx, dy, ax, ay, bx, by):
        P = px.shape[0]
        S = ax.shape[0]
        counts = np.zeros(P, dtype=np.int64)
        degen = np.zeros(P, dtype=np.uint8)
        for p in range(P):
            x0 = px[p]
            y0 = py[p]
            c = 0
            for s in range(S):
                sa = dx * (ay[s] - y0) - dy * (ax[s] - x0)
                sb = dx * (by[s] - y0) - dy * (bx[s] - x0)
                if sa == 0 or sb == 0:
                    if sa == 0 and (ax[s] - x0) * dx + (ay[s] - y0) * dy >= 0:
                        degen[p] = 1
                        break
                    if sb == 0 and (bx[s] - x0) * dx + (by[s] - y0) * dy >= 0:
                        degen[p] = 1
                        break
                    continue
                if (sa > 0) == (sb > 0):
                    continue
                rX = bx[s] - ax[s]
                rY = by[s] - ay[s]
                den = dx * rY - dy * rX
                tn = (ax[s] - x0) * rY - (ay[s] - y0) * rX
                if den < 0:
                    tn = -tn
                    den = -den
                if tn > 0:
                    c += 1
                elif tn == 0:
                    degen[p] = 1
                    break
            counts[p] = c
        return counts, degen


def _ray_counts_numpy(px, py, dx, dy, ax, ay, bx, by, block=256):
    P = len(px)
    counts = np.zeros(P, dtype=np.int64)
    degen = np.zeros(P, dtype=bool)
    for s in range(0, P, block):
        X = px[s:s + block, None]
        Y = py[s:s + block, None]
        sa = dx * (ay[None, :] - Y) - dy * (ax[None, :] - X)
        sb = dx * (by[None, :] - Y) - dy * (bx[None, :] - X)
        fwd_a = (ax[None, :] - X) * dx + (ay[None, :] - Y) * dy >= 0
        fwd_b = (bx[None, :] - X) * dx + (by[None, :] - Y) * dy >= 0
        dg = ((sa == 0) & fwd_a) | ((sb == 0) & fwd_b)
        straddle = ((sa > 0) != (sb > 0)) & (sa != 0) & (sb != 0)
        rX = (bx - ax)[None, :]
        rY = (by - ay)[None, :]
        den = dx * rY - dy * rX
        tn = (ax[None, :] - X) * rY - (ay[None, :] - Y) * rX
        sign = np.where(den < 0, -1, 1)
        tn = tn * sign
        dg |= straddle & (tn == 0)
        hit = straddle & (tn > 0)
        counts[s:s + block] = hit.sum(axis=1)
        degen[s:s + block] = dg.any(axis=1)
    return counts, degen


def ray_crossing_counts(px, py, direction, ax, ay, bx, by):
    """Count proper ray/segment crossings for a batch of ray origins.

    Exact in int64 (|coords| < 2**25, small integer direction).  Returns
    (counts, degenerate) where degenerate marks origins whose ray hits a
    segment endpoint or passes through an origin-on-segment situation;
    those counts are unusable and the caller retries another direction.
    """
    px = np.ascontiguousarray(px, dtype=np.int64)
    py = np.ascontiguousarray(py, dtype=np.int64)
    ax = np.ascontiguousarray(ax, dtype=np.int64)
    ay = np.ascontiguousarray(ay, dtype=np.int64)
    bx = np.ascontiguousarray(bx, dtype=np.int64)
    by = np.ascontiguousarray(by, dtype=np.int64)
    dx, dy = int(direction[0]), int(direction[1])
    if USING_NUMBA:
        counts, degen = _ray_counts_numba(px, py, dx, dy, ax, ay, bx, by)
        return counts, degen.astype(bool)
    return _ray_counts_numpy(px, py, dx, dy, ax, ay, bx, by)


def _orbits_python(nxt):
    face = np.full(len(nxt), -1, dtype=np.int64)
    nfaces = 0
    for h0 in range(len(nxt)):
        if face[h0] >= 0:
            continue
        h = h0
        while face[h] < 0:
            face[h] = nfaces
            h = nxt[h]
        nfaces += 1
    return face, nfaces


if USING_NUMBA:
    _orbits_numba = njit(cache=True)(_orbits_python)


def orbit_labels(nxt):
    """Label the orbits of the permutation ``nxt`` (half-edge face walks)."""
    nxt = np.ascontiguousarray(nxt, dtype=np.int64)
    if USING_NUMBA:
        return _orbits_numba(nxt)
    return _orbits_python(nxt)
