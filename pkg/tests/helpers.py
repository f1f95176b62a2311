"""Generators and brute-force oracles shared by the test modules."""

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from hypothesis import strategies as st

from finetope import fixtures
from finetope import lattice as lt
from finetope.polytope import hull

UNIT = [tuple(int(i == j) for j in range(3)) for i in range(3)]


# ---------------------------------------------------------------------------
# unimodular maps


def random_unimodular(rng, d=3, steps=6, spread=2):
    m = lt.identity(d)
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        k = rng.randint(-spread, spread)
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    perm = list(range(d))
    rng.shuffle(perm)
    m = [m[p] for p in perm]
    if rng.random() < 0.5:
        m[0] = [-a for a in m[0]]
    return m


@st.composite
def unimodular_matrices(draw, d=3):
    return random_unimodular(random.Random(draw(st.integers(0, 10**9))), d)


def apply(matrix, points, shift=None):
    out = [tuple(lt.matvec(matrix, p)) for p in points]
    if shift is not None:
        out = [lt.add(p, shift) for p in out]
    return out


# ---------------------------------------------------------------------------
# polytopes


def lattice_polytopes(d=3, box=3, min_size=None, max_size=8):
    min_size = d + 1 if min_size is None else min_size
    coord = st.integers(-box, box)
    pts = st.lists(st.tuples(*[coord] * d), min_size=min_size, max_size=max_size, unique=True)
    return pts.map(lambda p: hull(p, d)).filter(lambda p: p.is_full_dimensional)


def origin_interior_polytopes(d=3, box=3):
    """Lattice polytopes with the origin in the interior (the ±k e_i are forced in)."""
    coord = st.integers(-box, box)
    extra = st.lists(st.tuples(*[coord] * d), max_size=5)
    scales = st.lists(st.integers(1, 2), min_size=2 * d, max_size=2 * d)

    def build(args):
        pts, ks = args
        axes = [tuple(s * k * int(i == j) for j in range(d)) for i in range(d) for s, k in zip((1, -1), ks[2 * i:])]
        return hull(axes + pts, d)

    return st.tuples(extra, scales).map(build)


def random_canonical_fano(rng, box=2, max_tries=10000):
    """A random lattice 3-tope with exactly one interior lattice point, moved to the origin."""
    for _ in range(max_tries):
        k = rng.randint(4, 7)
        pts = {tuple(rng.randint(-box, box) for _ in range(3)) for _ in range(k)}
        p = hull(pts, 3)
        if not p.is_full_dimensional:
            continue
        inner = p.interior_lattice_points()
        if len(inner) == 1:
            return p.translate(lt.neg(inner[0]))
    raise RuntimeError("no canonical Fano polytope found")


@lru_cache(maxsize=None)
def canonical_fano_sample(n, seed=0):
    rng = random.Random(seed)
    return tuple(random_canonical_fano(rng) for _ in range(n))


@lru_cache(maxsize=None)
def corpus_polytopes(sections=("asymmetric", "symmetric", "dim3")):
    return tuple((rid, hull(verts, 3)) for rid, verts in fixtures.fixture_inputs(sections))


@lru_cache(maxsize=None)
def hollow_polytopes():
    return tuple((r["index"], hull([tuple(v) for v in r["vertices"]], 3)) for r in fixtures.corpus()["hollow"])


# ---------------------------------------------------------------------------
# oracles


def box_vectors(radius, d=3):
    return [v for v in itertools.product(range(-radius, radius + 1), repeat=d) if any(v)]


def primitive_box_vectors(radius, d=3):
    return [v for v in box_vectors(radius, d) if lt.primitive(v) == v]


def brute_lattice_points(p, strict=False):
    lo = [min(v[i] for v in p.vertices) for i in range(p.ambient_dim)]
    hi = [max(v[i] for v in p.vertices) for i in range(p.ambient_dim)]
    ranges = [range(int(-((-a) // 1)), int(b // 1) + 1) for a, b in zip(lo, hi)]
    return sorted(x for x in itertools.product(*ranges) if p.contains(x, strict=strict))


def facet_polygon_order(p, h):
    """Facet vertices of a 3-tope in cyclic order."""
    verts = p.facet_vertices(h)
    k = next(i for i, c in enumerate(h.normal) if c)
    keep = [i for i in range(3) if i != k]
    proj = {tuple(v[i] for i in keep): v for v in verts}
    return [proj[q] for q in lt.polygon_hull(list(proj))]


def normalized_volume(p):
    """6 * volume of a 3-tope from signed tetrahedra over a facet triangulation."""
    c = p.centroid()
    total = Fraction(0)
    for h in p.facets:
        ring = facet_polygon_order(p, h)
        for a, b in zip(ring[1:], ring[2:]):
            total += abs(lt.determinant([lt.sub(ring[0], c), lt.sub(a, c), lt.sub(b, c)]))
    return total


def three_subset_vertices(halfspaces, d=3):
    """Vertices of {<x,n> >= b} by intersecting every d-subset of boundary planes."""
    out = set()
    for combo in itertools.combinations(halfspaces, d):
        a = [list(n) for n, _ in combo]
        if lt.rank(a) < d:
            continue
        x = lt.solve(a, [b for _, b in combo])
        if all(lt.pairing(x, n) >= b for n, b in halfspaces):
            out.add(tuple(x))
    return sorted(out)


def three_subset_facets(points):
    """Primitive inward facet normals of a full-dimensional 3-tope from vertex triples."""
    out = set()
    pts = sorted(set(points))
    for a, b, c in itertools.combinations(pts, 3):
        u, v = lt.sub(b, a), lt.sub(c, a)
        n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if not any(n):
            continue
        n = lt.primitive(lt.clear_denominators(n))
        vals = [lt.pairing(x, n) - lt.pairing(a, n) for x in pts]
        if all(t >= 0 for t in vals):
            out.add((n, lt.pairing(a, n)))
        elif all(t <= 0 for t in vals):
            out.add((lt.neg(n), -lt.pairing(a, n)))
    return sorted(out)




@lru_cache(maxsize=None)
def all_reference_polytopes():
    """(label, polytope) for the tabulated canonical Fano and hollow 3-topes."""
    return tuple(corpus_polytopes()) + tuple((f"hollow-{i}", p) for i, p in hollow_polytopes())


@lru_cache(maxsize=None)
def analysis(label):
    from finetope.fine_interior import analyze

    return analyze(dict(all_reference_polytopes())[label])


@lru_cache(maxsize=None)
def timed_classification(label):
    """(record, seconds) for a reference polytope; hollow ones use hollow mode."""
    import time

    from finetope.classify import analyze_hollow, classify

    p = dict(all_reference_polytopes())[label]
    start = time.perf_counter()
    rec = analyze_hollow(p, label) if str(label).startswith("hollow-") else classify(p, label)
    return rec, time.perf_counter() - start


def classified(label):
    return timed_classification(label)[0]
