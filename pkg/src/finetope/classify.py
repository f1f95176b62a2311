"""Classification of canonical Fano 3-topes by their Fine interior.

The Fine interior of a canonical Fano 3-tope is a point, a segment or a
3-dimensional polytope. Segments come in two kinds: the origin is either an
endpoint (asymmetric) or the midpoint (symmetric). For segments we recover
the axis v_Δ and its scale, type the reflexive facets through ±v_Δ and the
projection along v_Δ, and for every regime the order of the fundamental
group of the associated surface.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import lattice as lt
from .cone import normal_fan
from .ehrhart import ehrhart_profile
from .fine_interior import analyze, integral_dual_hull, normalize_canonical_fano, reflexive_hull, tau
from .polytope import dual_polytope, hull, is_reflexive, lattice_width

__all__ = [
    "ClassificationRecord",
    "FACET_TYPES",
    "HollowRecord",
    "PROJECTION_TYPES",
    "analyze_hollow",
    "classify",
    "dual_facet_through_origin",
    "facet_normal_relation",
    "fi_axis_data",
    "is_hollow",
    "pi1_order",
    "polygon_type",
    "project_along",
    "reflexive_facet",
    "vertex_weight_relation",
]

FACET_TYPES = {
    "a": ((1, 0), (0, 1), (-1, -1)),
    "b": ((1, 0), (-1, 1), (-1, -1)),
    "c": ((1, 0), (-1, 0), (0, 1), (0, -1)),
}

PROJECTION_TYPES = {
    "a": ((-1, 2), (-1, -1), (2, -1)),
    "b": ((-2, -1), (0, 1), (2, -1)),
    "c": ((1, 1), (1, -1), (-1, 1), (-1, -1)),
}

_FACET_FORMS = {k: lt.polygon_normal_form(v) for k, v in FACET_TYPES.items()}
_PROJECTION_FORMS = {k: lt.polygon_normal_form(v) for k, v in PROJECTION_TYPES.items()}

STANDARD_SCALES = (Fraction(1, 2), Fraction(2, 3))
KODAIRA = {"K3": 0, "elliptic_asymmetric": 1, "elliptic_symmetric": 1, "general_type": 2}


def polygon_type(points, kind="facet"):
    """Letter of the reference polygon equivalent to ``points``, or None."""
    forms = _FACET_FORMS if kind == "facet" else _PROJECTION_FORMS
    nf = lt.polygon_normal_form(points)
    return next((k for k, f in forms.items() if f == nf), None)


def polar_polygon(points):
    """Vertices of the dual of a lattice polygon with the origin inside."""
    return dual_polytope(hull(points)).vertices


# ---------------------------------------------------------------------------
# axis data for one-dimensional Fine interiors


def fi_axis_data(fi):
    """(v_Δ, λ, symmetric) for a segment Fine interior through the origin.

    Asymmetric: fi = conv(0, λ v_Δ). Symmetric: fi = conv(-λ v_Δ, λ v_Δ) with
    v_Δ chosen so its first nonzero coordinate is positive.
    """
    if fi.dim != 1:
        raise ValueError("the Fine interior is not a segment")
    origin = (0,) * fi.ambient_dim
    a, b = fi.vertices
    if origin in (a, b):
        end = b if a == origin else a
        v, lam = lt.primitive_direction(end)
        return v, lt.as_number(lam), False
    if lt.add(a, b) == origin:
        v, lam = lt.primitive_direction(a)
        if v[next(i for i, c in enumerate(v) if c)] < 0:
            v = lt.neg(v)
        return v, lt.as_number(lam), True
    raise ValueError("the origin is neither an endpoint nor the midpoint of the Fine interior")


def _facet_lattice_map(h, anchor):
    basis = lt.integer_kernel([list(h.normal)])
    return lt.AffineLatticeMap(anchor, tuple(basis))


def reflexive_facet(polytope, v):
    """The facet with ``v`` in its relative interior and its type letter.

    Returns ``(facet vertices, letter)``; the letter is None when the facet
    polygon matches none of the three reference facets.
    """
    for h in polytope.facets:
        if h.slack(v) != 0:
            continue
        verts = polytope.facet_vertices(h)
        others = [g for g in polytope.facets if g != h]
        if all(g.slack(v) > 0 for g in others):
            m = _facet_lattice_map(h, v)
            local = [m.to_local(x) for x in verts]
            return tuple(sorted(verts)), polygon_type(local, "facet")
    raise ValueError(f"{v} is not in the relative interior of a facet")


def project_along(polytope, v):
    """Image polygon in M / Z v and its projection type letter (or None)."""
    q = lt.quotient_map(v)
    image = lt.polygon_hull([tuple(lt.matvec(q, x)) for x in polytope.vertices])
    if len(image) < 3:
        raise ValueError("the projection is not 2-dimensional")
    return tuple(image), polygon_type(image, "projection")


# ---------------------------------------------------------------------------
# lattice invariants


def pi1_order(polytope):
    """Index in N of the sublattice generated by the codimension-one cones."""
    fan = normal_fan(polytope)
    gens = sorted({x for c in fan.edge_cones.values() for x in c.hilbert_basis()})
    d = polytope.ambient_dim
    s, _, _ = lt.smith_normal_form([list(g) for g in gens])
    diag = [s[i][i] for i in range(min(len(s), d))]
    if len(diag) < d or 0 in diag:
        raise ValueError("the codimension-one cones do not generate a full-rank sublattice")
    out = 1
    for x in diag:
        out *= x
    return out


def _positive_relation(vectors):
    cols = [[v[i] for v in vectors] for i in range(len(vectors[0]))]
    ker = lt.integer_kernel(cols, ncols=len(vectors))
    if len(ker) != 1:
        raise ValueError("expected a unique linear relation")
    q = ker[0]
    if all(c < 0 for c in q):
        q = lt.neg(q)
    if not all(c > 0 for c in q):
        raise ValueError(f"relation {q} is not sign-definite")
    return q


def vertex_weight_relation(polytope):
    """Positive integers q_i with sum q_i v_i = 0, sorted (a multiset)."""
    if len(polytope.vertices) != polytope.ambient_dim + 1:
        raise ValueError("not a simplex")
    return tuple(sorted(_positive_relation(polytope.vertices)))


def facet_normal_relation(polytope):
    """Positive integer relation among the facet normals of a simplex, sorted."""
    if len(polytope.vertices) != polytope.ambient_dim + 1:
        raise ValueError("not a simplex")
    return tuple(sorted(_positive_relation([h.normal for h in polytope.facets])))


def is_hollow(polytope):
    return not polytope.interior_lattice_points()


def dual_facet_through_origin(polytope):
    """The facet of [Δ*] with the origin in its relative interior, as vertices."""
    inner = integral_dual_hull(polytope)
    if not inner.is_full_dimensional:
        return None
    origin = (0,) * polytope.ambient_dim
    for h in inner.facets:
        if h.offset == 0:
            return tuple(sorted(inner.facet_vertices(h)))
    return None


# ---------------------------------------------------------------------------
# records


@dataclass
class ClassificationRecord:
    id: str | None
    fi_dim: int
    regime: str
    fi_vertices: tuple
    supp: tuple
    canonical_hull_vertices: tuple | None
    canonical_hull_integral: bool
    equals_canonical_hull: bool
    pi1_order: int | None
    psi: tuple
    translation: tuple
    v_delta: tuple | None = None
    lam: object = None
    facet_type: str | None = None
    facet_type_minus: str | None = None
    theta_plus: tuple | None = None
    theta_minus: tuple | None = None
    projection_type: str | None = None
    projection: tuple | None = None
    reflexive_hull_vertices: tuple | None = None
    tau_reflexive: bool | None = None
    notes: tuple = ()

    @property
    def kodaira(self):
        return KODAIRA.get(self.regime)


@dataclass
class HollowRecord:
    id: str | None
    width: object
    width_direction: tuple | None
    fi_dim: int
    fi_vertices: tuple
    supp: tuple
    canonical_hull_vertices: tuple | None
    canonical_hull_integral: bool
    equals_canonical_hull: bool
    pi1_order: int | None


def _regime_for_segment(fi, notes):
    try:
        v, lam, sym = fi_axis_data(fi)
    except ValueError as exc:
        notes.append(str(exc))
        return "nonstandard", None, None, None
    if lam not in STANDARD_SCALES:
        notes.append(f"scale {lam} outside {{1/2, 2/3}}")
        return "nonstandard", v, lam, sym
    return ("elliptic_symmetric" if sym else "elliptic_asymmetric"), v, lam, sym


def classify(polytope, id=None):
    """Full classification record for a canonical Fano 3-tope."""
    p, t = normalize_canonical_fano(polytope)
    res = analyze(p)
    fi = res.fi
    notes = []
    extra = {}
    if fi.dim == 0 and fi.vertices == ((0,) * p.ambient_dim,):
        regime = "K3"
        extra["reflexive_hull_vertices"] = reflexive_hull(p).vertices
        extra["tau_reflexive"] = is_reflexive(tau(p))
    elif fi.dim == 1:
        regime, v, lam, sym = _regime_for_segment(fi, notes)
        if v is not None:
            extra.update(v_delta=v, lam=lam)
            try:
                extra["theta_plus"], extra["facet_type"] = reflexive_facet(p, v)
                if sym:
                    extra["theta_minus"], extra["facet_type_minus"] = reflexive_facet(p, lt.neg(v))
                extra["projection"], extra["projection_type"] = project_along(p, v)
            except ValueError as exc:
                notes.append(str(exc))
            for key in ("facet_type", "projection_type"):
                if extra.get(key) is None:
                    notes.append(f"{key} matches no reference polygon")
    elif fi.dim == 3:
        regime = "general_type"
    elif fi.dim < 0:
        regime = "empty"
    else:
        regime = "nonstandard"
        notes.append(f"Fine interior of dimension {fi.dim}")
    can = res.canonical_hull
    return ClassificationRecord(
        id=id,
        fi_dim=fi.dim,
        regime=regime,
        fi_vertices=fi.vertices,
        supp=res.support,
        canonical_hull_vertices=can.vertices if can is not None else None,
        canonical_hull_integral=res.canonical_hull_integral,
        equals_canonical_hull=res.equals_canonical_hull,
        pi1_order=pi1_order(p),
        psi=ehrhart_profile(p).psi,
        translation=t,
        notes=tuple(notes),
        **extra,
    )


def analyze_hollow(polytope, id=None):
    """Width, Fine interior, support, canonical hull and π₁ of a hollow 3-tope."""
    if not is_hollow(polytope):
        raise ValueError("polytope has interior lattice points")
    w, u = lattice_width(polytope)
    res = analyze(polytope)
    can = res.canonical_hull
    return HollowRecord(
        id=id,
        width=w,
        width_direction=u,
        fi_dim=res.fi.dim,
        fi_vertices=res.fi.vertices,
        supp=res.support,
        canonical_hull_vertices=can.vertices if can is not None else None,
        canonical_hull_integral=res.canonical_hull_integral,
        equals_canonical_hull=res.equals_canonical_hull,
        pi1_order=pi1_order(polytope),
    )
