from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .exceptions import InvalidShape


def as_points(values, dim):
    """Coerce user coordinates to an array whose last axis has length `dim`.

    In one dimension plain scalars and arrays are accepted and a trailing axis
    is appended, so `0.5` and `[0.1, 0.2]` are one point and two points.
    """
    arr = np.asarray(values, dtype=float)
    if dim == 1:
        return arr[..., np.newaxis]
    if arr.shape[-1:] != (dim,):
        raise ValueError(f"expected points with trailing axis {dim}, got shape {arr.shape}")
    return arr


# ========================================
# BILLIARD SHAPES
# ========================================

@dataclass(frozen=True, eq=False)
class BilliardShape:
    """Convex billiard stored as inward half-planes normals . x >= offsets"""
    KIND_CHOICES = ('interval', 'box', 'polygon')

    kind: str
    lo: np.ndarray
    hi: np.ndarray
    vertices: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray

    @classmethod
    def interval(cls, a, b):
        a, b = float(a), float(b)
        if not a < b:
            raise InvalidShape(f"interval needs a < b, got ({a}, {b})")
        lo, hi = np.array([a]), np.array([b])
        return cls('interval', lo, hi, np.empty((0, 1)), *_box_planes(lo, hi))

    @classmethod
    def box(cls, lo, hi):
        lo = np.atleast_1d(np.asarray(lo, dtype=float))
        hi = np.atleast_1d(np.asarray(hi, dtype=float))
        if lo.shape != hi.shape or lo.ndim != 1:
            raise InvalidShape("box corners must be vectors of equal length")
        if not np.all(lo < hi):
            raise InvalidShape(f"box needs lo < hi on every axis, got {lo} and {hi}")
        return cls('box', lo, hi, np.empty((0, lo.size)), *_box_planes(lo, hi))

    @classmethod
    def reference(cls, dim=1):
        """The box [-1, 1]^dim every closed-form box formula is written for"""
        if dim == 1:
            return cls.interval(-1.0, 1.0)
        return cls.box(-np.ones(dim), np.ones(dim))

    @classmethod
    def polygon(cls, vertices):
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
            raise InvalidShape("polygon needs at least three 2D vertices")
        for i, j in combinations(range(len(verts)), 2):
            if np.allclose(verts[i], verts[j], rtol=0.0, atol=1e-14):
                raise InvalidShape(f"polygon repeats vertex {verts[i].tolist()}")
        edges = np.roll(verts, -1, axis=0) - verts
        turns = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if not np.all(turns > 0):
            raise InvalidShape("polygon vertices must be strictly convex and counter-clockwise")
        lengths = np.linalg.norm(edges, axis=1)
        normals = np.column_stack([-edges[:, 1], edges[:, 0]]) / lengths[:, np.newaxis]
        offsets = np.einsum('ij,ij->i', normals, verts)
        return cls('polygon', verts.min(axis=0), verts.max(axis=0), verts, normals, offsets)

    def __str__(self):
        if self.kind == 'polygon':
            return f"polygon({len(self.vertices)} vertices)"
        return f"{self.kind}({self.lo.tolist()}, {self.hi.tolist()})"

    @property
    def dim(self):
        return self.lo.size

    @property
    def center(self):
        if self.kind == 'polygon':
            return self.vertices.mean(axis=0)
        return 0.5 * (self.lo + self.hi)

    @property
    def diameter(self):
        if self.kind == 'polygon':
            return max(np.linalg.norm(a - b) for a, b in combinations(self.vertices, 2))
        return float(np.linalg.norm(self.hi - self.lo))

    @property
    def is_reference_box(self):
        return (
            self.kind in ('interval', 'box')
            and np.allclose(self.lo, -1.0, rtol=0.0, atol=1e-14)
            and np.allclose(self.hi, 1.0, rtol=0.0, atol=1e-14)
        )

    @property
    def tolerance(self):
        """Distance below which a point counts as lying on the surface"""
        return 1e-12 * self.diameter

    def polygon_vertices(self):
        """Counter-clockwise vertices of a two-dimensional shape"""
        if self.dim != 2:
            raise InvalidShape(f"{self} has no polygon form")
        if self.kind == 'polygon':
            return self.vertices
        (x0, y0), (x1, y1) = self.lo, self.hi
        return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])

    def depth(self, points):
        """Signed distance to the nearest face, positive inside (points: array (..., dim))"""
        return np.min(points @ self.normals.T - self.offsets, axis=-1)

    def contains(self, points):
        """Closed-set membership; surface points belong to the billiard"""
        return self.depth(points) >= -self.tolerance


def _box_planes(lo, hi):
    eye = np.eye(lo.size)
    normals = np.concatenate([eye, -eye])
    offsets = np.concatenate([lo, -hi])
    return normals, offsets


# ========================================
# BOUNDARY QUADRATURE
# ========================================

@dataclass(frozen=True, eq=False)
class BoundaryContour:
    """Quadrature nodes on a surface in y-space with inward unit normals"""
    y: np.ndarray
    normal: np.ndarray
    weight: np.ndarray

    @classmethod
    def empty(cls, dim):
        return cls(np.empty((0, dim)), np.empty((0, dim)), np.empty(0))

    @classmethod
    def concat(cls, parts, dim):
        parts = [part for part in parts if len(part)]
        if not parts:
            return cls.empty(dim)
        return cls(
            np.concatenate([part.y for part in parts]),
            np.concatenate([part.normal for part in parts]),
            np.concatenate([part.weight for part in parts]),
        )

    def __len__(self):
        return len(self.weight)

    def __str__(self):
        return f"BoundaryContour({len(self)} nodes, measure {self.measure:.6g})"

    @property
    def dim(self):
        return self.y.shape[1]

    @property
    def measure(self):
        return float(self.weight.sum())

    def is_empty(self):
        return len(self) == 0
