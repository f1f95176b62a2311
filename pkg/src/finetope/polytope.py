"""V- and H-representations of rational polytopes in small dimension.

A polytope is stored by its vertex set together with an inequality system.
Lower-dimensional polytopes keep the equations of their affine hull and
facet inequalities in a coordinate projection that is injective on that
hull, so membership and lattice-point tests work uniformly.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from . import lattice as lt
from ._dd import cone_rays, integer_row

__all__ = [
    "EmptyPolytopeError",
    "HalfSpace",
    "LatticePolytope",
    "RationalPolytope",
    "UnboundedError",
    "dilate",
    "dual_polytope",
    "empty_polytope",
    "hull",
    "integral_dual_hull",
    "is_reflexive",
    "lattice_width",
    "vertices_from_halfspaces",
]


class UnboundedError(ValueError):
    """A halfspace intersection is nonempty but not bounded."""


class EmptyPolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class HalfSpace:
    """{x : <x, normal> >= offset} with a primitive integral normal."""

    normal: tuple
    offset: object

    def slack(self, x):
        return lt.pairing(x, self.normal) - self.offset

    def contains(self, x, strict=False):
        s = self.slack(x)
        return s > 0 if strict else s >= 0

    @classmethod
    def from_rational(cls, normal, offset):
        """Rescale an arbitrary rational inequality to a primitive normal."""
        u, k = lt.primitive_direction(normal)
        return cls(u, lt.as_number(Fraction(offset) / k))


def _facets_from_points(points, n):
    """Facet halfspaces of the full-dimensional hull of points in Q^n."""
    rows = [list(p) + [-1] for p in points]
    rays, lineality = cone_rays(rows, n + 1)
    assert not lineality, "point set is not full-dimensional"
    facets = []
    for r in rays:
        normal, c = r[:n], r[n]
        if not any(normal):
            continue
        facets.append(HalfSpace.from_rational(normal, c))
    return tuple(sorted(set(facets), key=lambda h: (h.normal, h.offset)))


class RationalPolytope:
    """Convex hull of finitely many rational points (possibly empty)."""

    def __init__(self, points, ambient_dim=None):
        points = [lt.as_vector(p) for p in points]
        if ambient_dim is None:
            if not points:
                raise ValueError("cannot infer the dimension of an empty point set")
            ambient_dim = len(points[0])
        if any(len(p) != ambient_dim for p in points):
            raise ValueError("points have inconsistent dimensions")
        self.ambient_dim = ambient_dim
        points = sorted(set(points))
        if not points:
            self._set(-1, (), (), (), ())
            return
        p0 = points[0]
        diffs = [lt.sub(p, p0) for p in points[1:]]
        _, coords = lt._rref(diffs) if diffs else ([], [])
        k = len(coords)
        normals = lt.integer_kernel([lt.clear_denominators(d) for d in diffs], ncols=ambient_dim) if diffs else \
            lt.integer_kernel([], ncols=ambient_dim)
        equations = tuple(HalfSpace(lt.primitive(nv), lt.pairing(p0, lt.primitive(nv))) for nv in normals)
        if k == 0:
            self._set(0, (p0,), equations, (), ())
            return
        local = [tuple(p[i] for i in coords) for p in points]
        facets = _facets_from_points(local, k)
        verts = []
        for p, q in zip(points, local):
            tight = [h.normal for h in facets if h.slack(q) == 0]
            if lt.rank(tight) == k:
                verts.append(p)
        self._set(k, tuple(verts), equations, tuple(coords), facets)

    def _set(self, dim, vertices, equations, coords, local_facets):
        self.dim = dim
        self.vertices = tuple(sorted(vertices))
        self.equations = equations
        self._coords = coords
        self._local_facets = local_facets

    @classmethod
    def _from_parts(cls, ambient_dim, dim, vertices, equations, coords, local_facets):
        obj = cls.__new__(cls)
        obj.ambient_dim = ambient_dim
        obj._set(dim, vertices, equations, coords, local_facets)
        return obj

    # -- basic queries ---------------------------------------------------

    @property
    def is_empty(self):
        return self.dim < 0

    @property
    def is_full_dimensional(self):
        return self.dim == self.ambient_dim

    @property
    def is_lattice(self):
        return all(lt.is_integral(v) for v in self.vertices)

    @property
    def facets(self):
        if not self.is_full_dimensional:
            raise ValueError(f"facets need a full-dimensional polytope (dim {self.dim} in {self.ambient_dim})")
        return self._local_facets

    def _local(self, x):
        return tuple(x[i] for i in self._coords)

    def contains(self, x, strict=False):
        """Membership; ``strict`` tests the relative interior."""
        if self.is_empty:
            return False
        if any(h.slack(x) != 0 for h in self.equations):
            return False
        if self.dim == 0:
            return True
        q = self._local(x)
        return all(h.contains(q, strict) for h in self._local_facets)

    def __contains__(self, x):
        return self.contains(x)

    def __eq__(self, other):
        return (isinstance(other, RationalPolytope) and self.ambient_dim == other.ambient_dim
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        verts = ", ".join("(" + ",".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"{type(self).__name__}(dim={self.dim}, vertices=[{verts}])"

    def issubset(self, other):
        return all(other.contains(v) for v in self.vertices)

    def vertex_facets(self, v):
        return [i for i, h in enumerate(self.facets) if h.slack(v) == 0]

    def facet_vertices(self, h):
        return [v for v in self.vertices if h.slack(v) == 0]

    def edges(self):
        """Pairs of vertices spanning an edge (full-dimensional polytopes)."""
        fs = self.facets
        tight = {v: {i for i, h in enumerate(fs) if h.slack(v) == 0} for v in self.vertices}
        out = []
        for u, w in itertools.combinations(self.vertices, 2):
            common = tight[u] & tight[w]
            if len(common) >= self.dim - 1 and lt.rank([fs[i].normal for i in common]) == self.dim - 1:
                out.append((u, w))
        return out

    def centroid(self):
        n = len(self.vertices)
        return tuple(lt.as_number(Fraction(sum(v[i] for v in self.vertices), n)) for i in range(self.ambient_dim))

    # -- lattice points --------------------------------------------------

    def _box(self):
        lo = [ceil(min(v[i] for v in self.vertices)) for i in range(self.ambient_dim)]
        hi = [floor(max(v[i] for v in self.vertices)) for i in range(self.ambient_dim)]
        return lo, hi

    def lattice_points(self, strict=False):
        """All lattice points (relative-interior ones if ``strict``), in lex order."""
        if self.is_empty:
            return []
        lo, hi = self._box()
        if any(a > b for a, b in zip(lo, hi)):
            return []
        if not self.is_full_dimensional:
            ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
            return [p for p in itertools.product(*ranges) if self.contains(p, strict)]
        return self._fiber_points(lo, hi, strict)

    def _fiber_points(self, lo, hi, strict):
        # solve the last coordinate as an interval for each prefix
        d = self.ambient_dim
        fs = [(h.normal[:-1], h.normal[-1], Fraction(h.offset)) for h in self.facets]
        out = []
        for prefix in itertools.product(*[range(a, b + 1) for a, b in zip(lo[:-1], hi[:-1])]):
            zlo, zhi = lo[-1], hi[-1]
            ok = True
            for head, last, off in fs:
                rhs = off - sum(a * b for a, b in zip(head, prefix))
                if last == 0:
                    if (rhs >= 0) if strict else (rhs > 0):
                        ok = False
                        break
                    continue
                bound = rhs / last
                if last > 0:
                    zlo = max(zlo, floor(bound) + 1 if strict else ceil(bound))
                else:
                    zhi = min(zhi, ceil(bound) - 1 if strict else floor(bound))
                if zlo > zhi:
                    ok = False
                    break
            if ok:
                out.extend(prefix + (z,) for z in range(zlo, zhi + 1))
        assert all(len(p) == d for p in out)
        return out

    def interior_lattice_points(self):
        return self.lattice_points(strict=True)

    # -- transformations --------------------------------------------------

    def translate(self, t):
        t = lt.as_vector(t)
        verts = tuple(lt.add(v, t) for v in self.vertices)
        eqs = tuple(HalfSpace(h.normal, lt.as_number(h.offset + lt.pairing(t, h.normal))) for h in self.equations)
        tl = self._local(t) if self.dim > 0 else ()
        facets = tuple(HalfSpace(h.normal, lt.as_number(h.offset + lt.pairing(tl, h.normal)))
                       for h in self._local_facets)
        return _make(self.ambient_dim, self.dim, verts, eqs, self._coords, facets)

    def scaled(self, k):
        verts = tuple(lt.scale(k, v) for v in self.vertices)
        eqs = tuple(HalfSpace(h.normal, lt.as_number(k * h.offset)) for h in self.equations)
        facets = tuple(HalfSpace(h.normal, lt.as_number(k * h.offset)) for h in self._local_facets)
        return _make(self.ambient_dim, self.dim, verts, eqs, self._coords, facets)

    def transform(self, matrix):
        """Image under an invertible linear map given as rows (x -> matrix x)."""
        return hull([lt.matvec(matrix, v) for v in self.vertices], self.ambient_dim)


class LatticePolytope(RationalPolytope):
    """A polytope whose vertices are lattice points."""

    def __init__(self, points, ambient_dim=None):
        super().__init__(points, ambient_dim)
        if not self.is_lattice:
            raise ValueError("vertices are not all lattice points")

    def ord(self, n):
        """min over the polytope of <x, n>."""
        return min(lt.pairing(v, n) for v in self.vertices)


def _make(ambient_dim, dim, verts, eqs, coords, facets):
    cls = LatticePolytope if all(lt.is_integral(v) for v in verts) else RationalPolytope
    return cls._from_parts(ambient_dim, dim, verts, eqs, coords, facets)


def empty_polytope(ambient_dim):
    return RationalPolytope([], ambient_dim)


def hull(points, ambient_dim=None):
    """Convex hull with a minimal vertex set."""
    points = list(points)
    if not points:
        raise ValueError("hull of an empty point list")
    p = RationalPolytope(points, ambient_dim)
    return _make(p.ambient_dim, p.dim, p.vertices, p.equations, p._coords, p._local_facets)


def dilate(p, k):
    if k <= 0:
        raise ValueError("dilation factor must be positive")
    return p.scaled(k)


def vertices_from_halfspaces(halfspaces, ambient_dim=None):
    """Intersection of halfspaces ``{x : <x, n> >= b}`` in vertex form.

    Accepts HalfSpace objects or ``(normal, offset)`` pairs. Returns an empty
    polytope for an infeasible system and raises UnboundedError when the
    intersection is nonempty and unbounded.
    """
    hs = [h if isinstance(h, HalfSpace) else HalfSpace(tuple(h[0]), h[1]) for h in halfspaces]
    if not hs:
        raise ValueError("no halfspaces given")
    n = ambient_dim or len(hs[0].normal)
    rows = [list(h.normal) + [-Fraction(h.offset)] for h in hs]
    rows.append([0] * n + [1])
    rays, lineality = cone_rays(rows, n + 1)
    points = [tuple(Fraction(c, r[n]) for c in r[:n]) for r in rays if r[n] > 0]
    if points and (lineality or any(r[n] == 0 for r in rays)):
        raise UnboundedError("halfspace intersection is unbounded")
    if not points:
        return empty_polytope(n)
    return hull(points, n)


def _require_origin_interior(p):
    if not p.is_full_dimensional or not p.contains((0,) * p.ambient_dim, strict=True):
        raise ValueError("the origin is not an interior point")


def dual_polytope(p):
    """{y : <x, y> >= -1 for all x in p}; needs the origin in the interior."""
    _require_origin_interior(p)
    return hull([lt.scale(Fraction(-1) / h.offset, h.normal) for h in p.facets], p.ambient_dim)


def integral_dual_hull(p):
    """conv of the lattice points of the dual polytope."""
    return hull(dual_polytope(p).lattice_points(), p.ambient_dim)


def is_reflexive(p):
    _require_origin_interior(p)
    return p.is_lattice and all(h.offset == -1 for h in p.facets)


# ---------------------------------------------------------------------------
# lattice width


def _width_along(vertices, u):
    vals = [lt.pairing(v, u) for v in vertices]
    return max(vals) - min(vals)


def _sign_normalize(u):
    k = next(i for i, c in enumerate(u) if c)
    return u if u[k] > 0 else lt.neg(u)


def _extend_functional(basis, values):
    """Integer u with <b_i, u> = values_i for a saturated basis b_i."""
    s, u, v = lt.smith_normal_form([list(b) for b in basis])
    k, d = len(basis), len(basis[0])
    # u B v = [I 0] because the sublattice is saturated
    t = lt.matvec(u, values)
    y = list(t) + [0] * (d - k)
    return _sign_normalize(tuple(lt.matvec(v, y)))


def lattice_width(p):
    """Lattice width and a primitive witness direction.

    For a polytope that is not full-dimensional the width is taken inside
    the lattice of its affine hull, and the witness is an ambient functional
    realizing it.
    """
    if p.is_empty:
        raise EmptyPolytopeError("empty polytope has no lattice width")
    verts = p.vertices
    if p.dim == 0:
        return 0, None
    if not p.is_full_dimensional:
        diffs = [lt.clear_denominators(lt.sub(v, verts[0])) for v in verts[1:]]
        normals = lt.integer_kernel(diffs)
        basis = lt.integer_kernel(normals, ncols=p.ambient_dim)
        lmap = lt.AffineLatticeMap(verts[0], tuple(basis))
        w, u_local = lattice_width(hull([lmap.to_local(v) for v in verts]))
        return w, _extend_functional(basis, u_local)
    d = p.ambient_dim
    axis = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    best_w, best_u = min((_width_along(verts, u), u) for u in axis)
    # three (d) independent difference vectors bound every competitive u
    diffs = [lt.sub(v, verts[0]) for v in verts[1:]]
    w_rows = [diffs[i] for i in lt.independent_rows(diffs)]
    w_inv = lt.rational_inverse(w_rows)
    bound = floor(best_w)
    found = []
    for c in itertools.product(range(-bound, bound + 1), repeat=d):
        u = lt.matvec(w_inv, c)
        if not any(u) or not lt.is_integral(u):
            continue
        u = tuple(int(x) for x in u)
        if lt.primitive(u) != u:
            continue
        found.append((_width_along(verts, u), _sign_normalize(u)))
    if found:
        best_w, best_u = min(found + [(best_w, best_u)])
    return lt.as_number(best_w), best_u
