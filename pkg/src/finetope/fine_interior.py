"""Fine interior, its support, canonical and reflexive hulls, and the τ operator."""

from dataclasses import dataclass

from . import lattice as lt
from .cone import fan_hilbert_union, normal_fan
from .polytope import (
    HalfSpace,
    RationalPolytope,
    dilate,
    dual_polytope,
    empty_polytope,
    hull,
    integral_dual_hull,
    is_reflexive,
    vertices_from_halfspaces,
)

__all__ = [
    "FineInteriorResult",
    "NotCanonicalFanoError",
    "analyze",
    "canonical_hull",
    "constraint_set",
    "fine_interior",
    "is_almost_reflexive",
    "normalize_canonical_fano",
    "ord",
    "reflexive_hull",
    "support",
    "tau",
    "tau_chain",
]

TAU_CAP = 10


class NotCanonicalFanoError(ValueError):
    pass


def ord(polytope, n):  # noqa: A001 - the established name of this function
    """min over the polytope of <x, n>."""
    return min(lt.pairing(v, n) for v in polytope.vertices)


def constraint_set(polytope, include_edges=False):
    """Normals whose shifted halfspaces cut out the Fine interior."""
    return fan_hilbert_union(normal_fan(polytope), include_edges)


def fine_interior(polytope, constraints=None):
    """Intersection of {x : <x, n> >= ord(n) + 1} over the constraint normals.

    ``constraints`` defaults to the Hilbert bases of the maximal normal-fan
    cones; passing a larger set must give the same polytope.
    """
    if not polytope.is_full_dimensional:
        raise ValueError("the Fine interior needs a full-dimensional polytope")
    if constraints is None:
        constraints = constraint_set(polytope)
    hs = [HalfSpace(tuple(n), ord(polytope, n) + 1) for n in constraints]
    return vertices_from_halfspaces(hs, polytope.ambient_dim)


def support(polytope, fi, constraints=None):
    """The normals in the constraint set that are tight on the Fine interior."""
    if fi.is_empty:
        raise ValueError("the support of an empty Fine interior is undefined")
    if constraints is None:
        constraints = constraint_set(polytope)
    return tuple(sorted(n for n in constraints if ord(fi, n) == ord(polytope, n) + 1))


def canonical_hull(polytope, supp):
    """Intersection of {x : <x, n> >= ord(n)} over the support."""
    if not supp:
        raise ValueError("empty support")
    hs = [HalfSpace(tuple(n), ord(polytope, n)) for n in supp]
    return vertices_from_halfspaces(hs, polytope.ambient_dim)


def reflexive_hull(polytope):
    """[Δ*]* for a polytope whose integral dual hull is reflexive."""
    inner = integral_dual_hull(polytope)
    origin = (0,) * polytope.ambient_dim
    if not inner.is_full_dimensional or not inner.contains(origin, strict=True) or not is_reflexive(inner):
        raise ValueError("the integral hull of the dual is not reflexive")
    return dual_polytope(inner)


def tau(polytope):
    """conv of the interior lattice points of twice the polytope."""
    pts = dilate(polytope, 2).interior_lattice_points()
    if not pts:
        raise ValueError("twice the polytope has no interior lattice points")
    return hull(pts, polytope.ambient_dim)


def tau_chain(polytope, cap=TAU_CAP):
    """Iterates Δ, τ(Δ), τ²(Δ), ... up to the first repetition."""
    chain = [polytope]
    for _ in range(cap):
        nxt = tau(chain[-1])
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)
    raise RuntimeError(f"τ iteration did not stabilize within {cap} steps")


def normalize_canonical_fano(polytope):
    """Translate so that the unique interior lattice point is the origin.

    Returns ``(translated polytope, translation)``.
    """
    if not polytope.is_full_dimensional:
        raise NotCanonicalFanoError("not full-dimensional")
    inner = polytope.interior_lattice_points()
    if len(inner) != 1:
        raise NotCanonicalFanoError(f"{len(inner)} interior lattice points, need exactly 1")
    t = lt.neg(inner[0])
    if not any(t):
        return polytope, t
    return polytope.translate(t), t


def is_almost_reflexive(polytope):
    """Whether the dual's integral hull is reflexive, by three equivalent tests.

    Returns ``(verdict, checks)`` where ``checks`` maps each test to its value;
    raises AssertionError if the tests disagree.
    """
    p, _ = normalize_canonical_fano(polytope)
    origin = (0,) * p.ambient_dim
    fi = fine_interior(p)
    inner = integral_dual_hull(p)
    twice_inner = dilate(p, 2).interior_lattice_points()
    t = hull(twice_inner, p.ambient_dim)
    checks = {
        "fi_is_origin": fi.dim == 0 and fi.vertices == (origin,),
        "origin_interior_in_dual_hull": inner.is_full_dimensional and inner.contains(origin, strict=True),
        "tau_has_one_interior_point": t.is_full_dimensional and len(t.interior_lattice_points()) == 1,
    }
    values = set(checks.values())
    if len(values) != 1:
        raise AssertionError(f"almost-reflexivity tests disagree: {checks}")
    return values.pop(), checks


@dataclass(frozen=True)
class FineInteriorResult:
    polytope: RationalPolytope
    fi: RationalPolytope
    support: tuple
    canonical_hull: RationalPolytope | None
    constraints: tuple

    @property
    def canonical_hull_integral(self):
        return self.canonical_hull is not None and self.canonical_hull.is_lattice

    @property
    def equals_canonical_hull(self):
        return self.canonical_hull is not None and self.canonical_hull == self.polytope


def analyze(polytope, constraints=None):
    """Fine interior, support and canonical hull in one pass."""
    if constraints is None:
        constraints = constraint_set(polytope)
    constraints = tuple(constraints)
    fi = fine_interior(polytope, constraints)
    if fi.is_empty:
        return FineInteriorResult(polytope, fi, (), None, constraints)
    supp = support(polytope, fi, constraints)
    return FineInteriorResult(polytope, fi, supp, canonical_hull(polytope, supp), constraints)


def empty_fine_interior(ambient_dim):
    return empty_polytope(ambient_dim)
