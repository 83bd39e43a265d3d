"""Convex clipping primitives for polygons and segments in the plane."""
import numpy as np


def polygon_area(vertices):
    """Shoelace area, positive for counter-clockwise order"""
    if len(vertices) < 3:
        return 0.0
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def clip_polygon(subject, clip, tol=0.0):
    """Intersect two convex counter-clockwise polygons.

    Each edge of `clip` is applied to `subject` as a half-plane; vertices on the
    left of (or within `tol` of) an edge survive.
    """
    output = [np.asarray(v, dtype=float) for v in subject]
    for a, b in zip(clip, np.roll(clip, -1, axis=0)):
        if not output:
            break
        edge = b - a
        length = np.linalg.norm(edge)

        def side(point):
            return (edge[0] * (point[1] - a[1]) - edge[1] * (point[0] - a[0])) / length

        candidates, output = output, []
        for current, following in zip(candidates, candidates[1:] + candidates[:1]):
            s_cur, s_next = side(current), side(following)
            if s_cur >= -tol:
                output.append(current)
                if s_next < -tol:
                    output.append(current + (following - current) * s_cur / (s_cur - s_next))
            elif s_next >= -tol:
                output.append(current + (following - current) * s_cur / (s_cur - s_next))
    return dedupe(np.array(output).reshape(-1, 2), tol)


def dedupe(vertices, tol):
    """Drop consecutive vertices closer than `tol` (wrap-around included)"""
    kept = []
    for v in vertices:
        if not kept or np.linalg.norm(v - kept[-1]) > tol:
            kept.append(v)
    while len(kept) > 1 and np.linalg.norm(kept[0] - kept[-1]) <= tol:
        kept.pop()
    return np.array(kept).reshape(-1, 2)


def clip_segment(start, end, normals, offsets, tol=0.0):
    """Parameter range [t0, t1] of start + t (end - start) inside normals . y >= offsets.

    Returns None when the segment misses the region.
    """
    direction = end - start
    t0, t1 = 0.0, 1.0
    for normal, offset in zip(normals, offsets):
        slack = float(normal @ start - offset) + tol
        rate = float(normal @ direction)
        if rate == 0.0:
            if slack < 0.0:
                return None
            continue
        t = -slack / rate
        if rate > 0.0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 > t1:
            return None
    return t0, t1
