"""Rational polyhedral cones, normal fans and Hilbert bases.

Cones are handled in the saturated lattice of their linear span, where they
are full-dimensional. Hilbert bases come from triangulating into simplicial
cones, listing the lattice points of each fundamental parallelepiped, and
discarding the reducible candidates.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from . import lattice as lt
from ._dd import cone_rays

__all__ = ["Cone", "Fan", "NonPointedConeError", "fan_hilbert_union", "hilbert_basis", "normal_fan"]


class NonPointedConeError(ValueError):
    pass


def _span_basis(vectors, d):
    """Basis of the saturated lattice (span of vectors) ∩ Z^d."""
    if not vectors:
        return ()
    normals = lt.integer_kernel([list(v) for v in vectors], ncols=d)
    if not normals:
        return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    basis, _ = lt.hermite_normal_form(lt.integer_kernel(normals, ncols=d))
    return tuple(tuple(r) for r in basis if any(r))


@dataclass(frozen=True, eq=False)
class Cone:
    """The cone generated by a finite set of lattice vectors.

    ``rays`` are the primitive extreme rays, sorted; ``basis`` spans the
    saturated lattice of the linear hull and ``facets`` are the inward facet
    normals in the coordinates of that basis.
    """

    rays: tuple
    dim: int
    basis: tuple
    facets: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_generators(cls, generators, ambient_dim=None):
        gens = [tuple(int(c) for c in lt.clear_denominators(g)) for g in generators if any(g)]
        if ambient_dim is None:
            if not generators:
                raise ValueError("cannot infer the dimension of an empty generator set")
            ambient_dim = len(generators[0])
        basis = _span_basis(gens, ambient_dim)
        k = len(basis)
        if k == 0:
            return cls((), 0, (), ())
        lmap = lt.AffineLatticeMap((0,) * ambient_dim, basis)
        local = [lmap.to_local(g) for g in gens]
        normals, lin = cone_rays(local, k)
        if lin:
            raise AssertionError("cone is not full-dimensional in its span")
        rays_local, lineality = cone_rays(normals, k)
        if lineality:
            raise NonPointedConeError("cone contains a line")
        rays = sorted(lt.primitive(lmap.to_ambient(r)) for r in rays_local)
        return cls(tuple(rays), k, basis, tuple(sorted(normals)))

    def __eq__(self, other):
        return isinstance(other, Cone) and self.rays == other.rays

    def __hash__(self):
        return hash(self.rays)

    @property
    def ambient_dim(self):
        return len(self.rays[0]) if self.rays else 0

    @property
    def is_simplicial(self):
        return len(self.rays) == self.dim

    def _map(self):
        return lt.AffineLatticeMap((0,) * len(self.basis[0]), self.basis)

    def to_local(self, x):
        return self._map().to_local(x)

    def contains(self, x):
        if self.dim == 0:
            return not any(x)
        try:
            q = self.to_local(x)
        except ValueError:
            return False
        return all(lt.pairing(q, f) >= 0 for f in self.facets)

    def __contains__(self, x):
        return self.contains(x)

    def adjacent_rays(self):
        """Pairs of rays spanning a two-dimensional face."""
        m = self._map()
        loc = {r: m.to_local(r) for r in self.rays}
        tight = {r: {f for f in self.facets if lt.pairing(loc[r], f) == 0} for r in self.rays}
        out = []
        for a, b in itertools.combinations(self.rays, 2):
            common = tight[a] & tight[b]
            if common and lt.rank(list(common)) == self.dim - 2:
                out.append((a, b))
        return out

    def triangulation(self, apex=None):
        """Simplicial cones (as ray tuples) covering the cone, all using ``apex``."""
        if self.is_simplicial:
            return [self.rays]
        if self.dim != 3:
            raise NotImplementedError("triangulation is implemented for cones of dimension <= 3")
        apex = min(self.rays) if apex is None else tuple(apex)
        if apex not in self.rays:
            raise ValueError(f"{apex} is not a ray of the cone")
        cycle = _cyclic_order(self.rays, self.adjacent_rays())
        i = cycle.index(apex)
        cycle = cycle[i:] + cycle[:i]
        return [(apex, cycle[j], cycle[j + 1]) for j in range(1, len(cycle) - 1)]

    def hilbert_basis(self, apex=None):
        if apex is None and "hb" in self._cache:
            return self._cache["hb"]
        hb = hilbert_basis(self, apex)
        if apex is None:
            self._cache["hb"] = hb
        return hb


def _cyclic_order(rays, edges):
    nbrs = {r: [] for r in rays}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    start = min(rays)
    order, prev = [start], None
    cur = start
    while True:
        nxt = [r for r in nbrs[cur] if r != prev]
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, min(nxt) if prev is None else nxt[0]
        order.append(cur)
    if len(order) != len(rays):
        raise AssertionError("rays of a 3-dimensional cone do not form a cycle")
    return order


def parallelepiped_points(rays_local):
    """Lattice points of the half-open fundamental parallelepiped of a simplicial cone.

    ``rays_local`` are k linearly independent integer vectors in Z^k; returns
    every x = sum t_i r_i in Z^k with 0 <= t_i < 1, including 0.
    """
    k = len(rays_local)
    r = [list(v) for v in rays_local]
    s, u, v = lt.smith_normal_form(r)
    # u r v = s, so Z^k / (row span of r) is enumerated by b v^-1 with 0 <= b_i < s_ii
    v_inv = lt.integer_inverse(v)
    r_inv = lt.rational_inverse(r)
    diag = [s[i][i] for i in range(k)]
    out = []
    for b in itertools.product(*[range(d) for d in diag]):
        x = [sum(b[i] * v_inv[i][j] for i in range(k)) for j in range(k)]
        t = [sum(Fraction(x[i]) * r_inv[i][j] for i in range(k)) for j in range(k)]
        shift = [floor(c) for c in t]
        x = tuple(x[j] - sum(shift[i] * r[i][j] for i in range(k)) for j in range(k))
        out.append(x)
    return out


def hilbert_basis(cone, apex=None):
    """Minimal generating set of the monoid cone ∩ Z^d, sorted.

    ``apex`` selects the ray used to fan-triangulate a non-simplicial
    3-dimensional cone; the result does not depend on it.
    """
    if cone.dim == 0:
        return ()
    m = cone._map()
    candidates = set()
    for simplex in cone.triangulation(apex):
        loc = [m.to_local(r) for r in simplex]
        candidates.update(tuple(p) for p in loc)
        candidates.update(p for p in parallelepiped_points(loc) if any(p))
    cand = sorted(candidates)
    facets = cone.facets

    def inside(x):
        return all(lt.pairing(x, f) >= 0 for f in facets)

    basis = [x for x in cand if not any(y != x and inside(lt.sub(x, y)) for y in cand)]
    return tuple(sorted(m.to_ambient(x) for x in basis))


@dataclass(frozen=True, eq=False)
class Fan:
    """Normal fan of a full-dimensional lattice polytope.

    ``vertex_cones`` maps each vertex to its maximal cone, ``edge_cones``
    maps each edge (a vertex pair) to its codimension-one cone, and ``rays``
    are the facet normals.
    """

    vertex_cones: dict
    edge_cones: dict
    rays: tuple

    def maximal_cones(self):
        return list(self.vertex_cones.values())

    def cones_containing(self, n):
        return [v for v, c in self.vertex_cones.items() if c.contains(n)]


def normal_fan(polytope):
    facets = polytope.facets
    d = polytope.ambient_dim
    vcones = {}
    for v in polytope.vertices:
        vcones[v] = Cone.from_generators([facets[i].normal for i in polytope.vertex_facets(v)], d)
    econes = {}
    for a, b in polytope.edges():
        common = set(polytope.vertex_facets(a)) & set(polytope.vertex_facets(b))
        econes[(a, b)] = Cone.from_generators([facets[i].normal for i in sorted(common)], d)
    return Fan(vcones, econes, tuple(sorted(h.normal for h in facets)))


def fan_hilbert_union(fan, include_edges=False):
    """Union of the Hilbert bases of the maximal cones (optionally also edge cones)."""
    out = set()
    cones = fan.maximal_cones() + (list(fan.edge_cones.values()) if include_edges else [])
    for c in cones:
        out.update(c.hilbert_basis())
    out.discard((0,) * len(fan.rays[0]))
    return tuple(sorted(out))
