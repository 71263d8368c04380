"""Exact rational planar primitives.

All predicates run on ``fractions.Fraction`` coordinates and are exact.
Points are ``(x, y)`` tuples of Fractions (plain ints are accepted and
treated as exact integers).  Degenerate configurations are rejected with
:class:`DegeneracyError` rather than resolved; callers that sample ray
directions retry with the next direction from :func:`ray_directions`.
"""

from fractions import Fraction

from .errors import DegeneracyError, NotSimpleError

Scalar = Fraction

# intersection kinds returned by seg_intersect
NONE = "none"
PROPER = "proper"
TOUCH = "touch"
OVERLAP = "overlap"


def parse_scalar(text):
    """Parse an exact rational from a "p/q" or "p" string."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_scalar(value):
    """Render an exact rational in lowest terms as "p/q" or "p"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def orient(a, b, c):
    """Sign of the cross product (b-a) x (c-a): +1 ccw, -1 cw, 0 collinear."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _bbox_disjoint(a, b, c, d):
    return (
        max(a[0], b[0]) < min(c[0], d[0])
        or max(c[0], d[0]) < min(a[0], b[0])
        or max(a[1], b[1]) < min(c[1], d[1])
        or max(c[1], d[1]) < min(a[1], b[1])
    )


def _on_segment(a, b, p):
    """True if p lies on the closed segment ab (assumes collinear)."""
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def point_on_segment(a, b, p):
    """True if p lies on the closed segment ab."""
    return orient(a, b, p) == 0 and _on_segment(a, b, p)


def line_intersection(a, b, c, d):
    """Exact intersection point of lines ab and cd (must not be parallel)."""
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    denom = r[0] * s[1] - r[1] * s[0]
    t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0])
    t = Fraction(t, denom)
    return (a[0] + t * r[0], a[1] + t * r[1]), t


def seg_intersect(s1, s2):
    """Classify the intersection of two closed segments.

    Returns (kind, point) with kind in {none, proper, touch, overlap};
    point is None unless kind is proper or touch.  Symmetric in its
    arguments and total.
    """
    a, b = s1
    c, d = s2
    if _bbox_disjoint(a, b, c, d):
        return NONE, None
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if d1 == d2 == 0:  # collinear
        hits = [p for p in (a, b) if _on_segment(c, d, p)]
        hits += [p for p in (c, d) if _on_segment(a, b, p)]
        uniq = set(hits)
        if not uniq:
            return NONE, None
        if len(uniq) == 1:
            return TOUCH, uniq.pop()
        return OVERLAP, None
    if d1 != d2 and d3 != d4:
        if d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
            p, _ = line_intersection(a, b, c, d)
            return PROPER, p
        # an endpoint of one segment lies on the other
        for p, dd in ((a, d1), (b, d2)):
            if dd == 0 and _on_segment(c, d, p):
                return TOUCH, p
        for p, dd in ((c, d3), (d, d4)):
            if dd == 0 and _on_segment(a, b, p):
                return TOUCH, p
        return NONE, None
    # one endpoint may still sit on the other segment's line but off it
    for p, dd in ((a, d1), (b, d2)):
        if dd == 0 and _on_segment(c, d, p):
            return TOUCH, p
    for p, dd in ((c, d3), (d, d4)):
        if dd == 0 and _on_segment(a, b, p):
            return TOUCH, p
    return NONE, None


def _seg_param(a, b, p):
    """Exact parameter t in [0,1] of point p on segment ab."""
    if b[0] != a[0]:
        return Fraction(p[0] - a[0], b[0] - a[0])
    return Fraction(p[1] - a[1], b[1] - a[1])


def polyline_crossings(pa, pb):
    """All proper crossings between two polylines, sorted along pa.

    Returns a list of (point, t_a, t_b) where t is a global parameter
    (segment index plus fractional position, exact).  Shared endpoints of
    the polylines themselves are ignored (graph vertices).  Raises
    DegeneracyError if segments overlap or a crossing sits at a bend or
    polyline endpoint.
    """
    ends_a = {pa[0], pa[-1]}
    ends_b = {pb[0], pb[-1]}
    out = []
    for i in range(len(pa) - 1):
        sa = (pa[i], pa[i + 1])
        for j in range(len(pb) - 1):
            sb = (pb[j], pb[j + 1])
            kind, pt = seg_intersect(sa, sb)
            if kind == NONE:
                continue
            if kind == OVERLAP:
                raise DegeneracyError("overlapping segments between polylines")
            if kind == TOUCH:
                if pt in ends_a and pt in ends_b:
                    continue  # shared graph vertex
                raise DegeneracyError(
                    f"non-proper contact at {pt} (bend or endpoint hit)"
                )
            ta = i + _seg_param(sa[0], sa[1], pt)
            tb = j + _seg_param(sb[0], sb[1], pt)
            out.append((pt, ta, tb))
    out.sort(key=lambda rec: rec[1])
    return out


def ray_directions():
    """Deterministic sequence of primitive rational ray directions."""
    yield (1, 0)
    yield (0, 1)
    yield (-1, 0)
    yield (0, -1)
    k = 1
    while True:
        for p, q in ((1, k), (k, 1), (1, -k), (k, -1), (-1, k), (-k, 1),
                     (-1, -k), (-k, -1)):
            yield (p, q)
        # odd coprime-ish slopes; exact predicates only need distinct rays
        yield (2 * k + 1, 2)
        yield (2, 2 * k + 1)
        yield (-(2 * k + 1), 2)
        yield (2, -(2 * k + 1))
        k += 1


def _ray_segment_crossing(p, d, a, b):
    """Classify ray (p, direction d) against segment ab.

    Returns 1 for a proper crossing, 0 for a miss, raises DegeneracyError
    when the ray hits an endpoint of ab or runs collinear with it.
    """
    q = (p[0] + d[0], p[1] + d[1])
    sa = orient(p, q, a)
    sb = orient(p, q, b)
    if sa == 0 or sb == 0:
        # endpoint on the ray line: degenerate only if it is on the ray itself
        for pt, s in ((a, sa), (b, sb)):
            if s == 0:
                dot = (pt[0] - p[0]) * d[0] + (pt[1] - p[1]) * d[1]
                if dot >= 0:
                    raise DegeneracyError("ray through segment endpoint")
        return 0
    if sa == sb:
        return 0
    # segment straddles the ray line; crossing counts iff it lies forward of p
    pt, t = line_intersection(p, q, a, b)
    # t is the parameter along the ray direction
    if t > 0:
        return 1
    if t == 0:
        raise DegeneracyError("ray origin on segment")
    return 0


def ray_parity(p, direction, curves):
    """Parity of proper crossings between the ray from p and the curves.

    ``curves`` is an iterable of polylines.  Raises DegeneracyError if the
    ray hits a polyline vertex or runs collinear with a segment; callers
    retry with the next direction from :func:`ray_directions`.
    """
    count = 0
    for poly in curves:
        for i in range(len(poly) - 1):
            count += _ray_segment_crossing(p, direction, poly[i], poly[i + 1])
    return count & 1


def robust_ray_parity(p, curves, directions=None):
    """ray_parity with automatic retry over the deterministic directions."""
    it = iter(directions) if directions is not None else ray_directions()
    for _ in range(64):
        d = next(it)
        try:
            return ray_parity(p, d, curves)
        except DegeneracyError:
            continue
    raise DegeneracyError("no generic ray direction found in 64 attempts")


def signed_area(points):
    """Exact signed shoelace area of a closed polyline (last->first implied)."""
    total = Fraction(0)
    m = len(points)
    for i in range(m):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % m]
        total += x0 * y1 - x1 * y0
    return total / 2


def polyline_is_simple(points, closed=False):
    """True if the polyline has no self-intersections.

    Consecutive segments may share their common endpoint; for a closed
    polyline the last and first segment may share the start point.
    """
    n = len(points) - 1
    segs = [(points[i], points[i + 1]) for i in range(n)]
    if closed:
        segs.append((points[-1], points[0]))
    m = len(segs)
    for i in range(m):
        for j in range(i + 1, m):
            kind, pt = seg_intersect(segs[i], segs[j])
            if kind == NONE:
                continue
            adjacent = j == i + 1 or (closed and i == 0 and j == m - 1)
            if adjacent and kind == TOUCH:
                continue
            return False
    return True


def polygon_area(points):
    """Exact area of a simple closed polygon given by its vertices.

    Returns 0 for a degenerate (zero-area) boundary.  Raises NotSimpleError
    if the closed boundary properly self-intersects.
    """
    if len(points) >= 2 and points[0] == points[-1]:
        points = points[:-1]
    if len(points) < 3:
        return Fraction(0)
    area = abs(signed_area(points))
    if area == 0:
        collinear = all(
            orient(points[0], points[1], p) == 0 for p in points[2:]
        )
        if collinear:
            return Fraction(0)  # degenerate, flagged by zero area
        raise NotSimpleError("zero-area polygon with non-collinear boundary")
    if not polyline_is_simple(list(points), closed=True):
        raise NotSimpleError("polygon boundary self-intersects")
    return area
