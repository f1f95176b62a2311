"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Table values come from the embedded corpus; every comparison is exact.
"""

import os
import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from finetope import lattice as lt
from finetope.classify import (
    classify,
    dual_facet_through_origin,
    facet_normal_relation,
    pi1_order,
    vertex_weight_relation,
)
from finetope.cone import normal_fan
from finetope.ehrhart import ehrhart_polynomial, ehrhart_profile, evaluate, psi_palindrome, reflexive_by_count
from finetope.fine_interior import analyze, fine_interior, ord as ord_, reflexive_hull, tau
from finetope.fixtures import (
    AFFINE_EXAMPLES,
    ALMOST_REFLEXIVE_EXAMPLE,
    FOUR_DIM_EXAMPLE,
    REFLEXIVE_EXAMPLE,
    corpus,
    expected_canonical_hull,
    fixture_inputs,
    to_vectors,
)
from finetope.io import PolytopeInput, emit_report, grdb_dump_import, run_batch
from finetope.polytope import dilate, dual_polytope, hull, is_reflexive, lattice_width, vertices_from_halfspaces
from helpers import (
    all_reference_polytopes,
    analysis,
    canonical_fano_sample,
    normalized_volume,
    primitive_box_vectors,
    random_unimodular,
    timed_classification,
)

F = Fraction
POLYTOPES = dict(all_reference_polytopes())
TIME_LIMIT = 1.0


class Problems(list):
    def check(self, rid, name, got, want):
        if got != want:
            self.append(f"{rid} {name}: got {got}, table {want}")


def _canonical_hull_matches(problems, rid, rec, record):
    # the table lists generators; one of them may be a non-vertex point on an edge
    gens = expected_canonical_hull(record)
    problems.check(rid, "canonical hull", hull(rec.canonical_hull_vertices), hull(gens))
    extra = set(rec.canonical_hull_vertices) - set(gens)
    if extra:
        problems.append(f"{rid} canonical hull vertices not among the listed points: {sorted(extra)}")


def _timing(problems, rid, secs):
    if secs >= TIME_LIMIT:
        problems.append(f"{rid} took {secs:.2f} s")


def test_criterion_1_asymmetric(acceptance_line):
    problems = Problems()
    times = []
    for r in corpus()["asymmetric"]:
        rid = r["id"]
        rec, secs = timed_classification(rid)
        times.append(secs)
        p = POLYTOPES[rid]
        lam, v = F(r["lam"]), tuple(r["v_delta"])
        problems.check(rid, "translation", rec.translation, (0, 0, 0))
        problems.check(rid, "fi vertices", rec.fi_vertices, tuple(sorted([(0, 0, 0), lt.scale(lam, v)])))
        problems.check(rid, "v_delta", rec.v_delta, v)
        problems.check(rid, "lambda", rec.lam, lam)
        problems.check(rid, "facet normals", sorted(h.normal for h in p.facets), sorted(to_vectors(r["facet_normals"])))
        problems.check(rid, "theta_plus", rec.theta_plus, to_vectors(r["theta_plus"]))
        normal = [h.normal for h in p.facets if all(h.slack(x) == 0 for x in rec.theta_plus)]
        problems.check(rid, "theta_plus normal", normal, [tuple(r["theta_plus_normal"])])
        problems.check(rid, "supp", set(rec.supp), set(to_vectors(r["supp"])))
        _canonical_hull_matches(problems, rid, rec, r)
        problems.check(rid, "weights", vertex_weight_relation(p), tuple(sorted(r["weights"])))
        problems.check(rid, "dual facet", dual_facet_through_origin(p), to_vectors(r["dual_facet"]))
        _timing(problems, rid, secs)
    acceptance_line(1, not problems, f"{len(times)} records, max {max(times):.2f} s" + "; ".join([""] + problems))
    assert not problems


def test_criterion_2_symmetric(acceptance_line):
    problems = Problems()
    times = []
    for r in corpus()["symmetric"]:
        rid = r["id"]
        rec, secs = timed_classification(rid)
        times.append(secs)
        lam, v = F(r["lam"]), tuple(r["v_delta"])
        end = lt.scale(lam, v)
        problems.check(rid, "fi vertices", rec.fi_vertices, tuple(sorted([lt.neg(end), end])))
        problems.check(rid, "v_delta", rec.v_delta, v)
        problems.check(rid, "lambda", rec.lam, lam)
        problems.check(rid, "supp", set(rec.supp), set(to_vectors(r["supp"])))
        problems.check(rid, "canonical hull = polytope", rec.equals_canonical_hull, True)
        problems.check(rid, "pi1 scale law", rec.pi1_order, {F(1, 2): 2, F(2, 3): 3}.get(lam))
        problems.check(rid, "theta pair", {rec.theta_plus, rec.theta_minus},
                       {to_vectors(f) for f in r["theta_pair"]})
        _timing(problems, rid, secs)
    acceptance_line(2, not problems, f"{len(times)} records, max {max(times):.2f} s" + "; ".join([""] + problems))
    assert not problems


def test_criterion_3_three_dimensional(acceptance_line):
    problems = Problems()
    pi1 = Counter()
    times = []
    for r in corpus()["dim3"]:
        rid = r["id"]
        rec, secs = timed_classification(rid)
        times.append(secs)
        problems.check(rid, "fi dim", rec.fi_dim, 3)
        problems.check(rid, "fi vertices", rec.fi_vertices, to_vectors(r["fi_vertices"]))
        problems.check(rid, "supp", set(rec.supp), set(to_vectors(r["supp"])))
        _canonical_hull_matches(problems, rid, rec, r)
        problems.check(rid, "pi1", rec.pi1_order, r["pi1_order"])
        pi1[rec.pi1_order] += 1
        _timing(problems, rid, secs)
    if pi1 != Counter({1: 46, 2: 3}):
        problems.append(f"pi1 distribution {dict(pi1)}")
    acceptance_line(3, not problems, f"{len(times)} records, pi1 {dict(sorted(pi1.items()))}, "
                    f"max {max(times):.2f} s" + "; ".join([""] + problems))
    assert not problems


def _hollow_problems():
    problems = Problems()
    dims, orders = Counter(), []
    for r in corpus()["hollow"]:
        label = f"hollow-{r['index']}"
        rec = timed_classification(label)[0]
        p = POLYTOPES[label]
        problems.check(label, "width", rec.width, r["width"])
        problems.check(label, "width oracle", lattice_width(p)[0], r["width"])
        problems.check(label, "fi dim", rec.fi_dim, r["fi_dim"])
        problems.check(label, "fi vertices", rec.fi_vertices, to_vectors(r["fi_vertices"]))
        problems.check(label, "pi1", rec.pi1_order, r["pi1_order"])
        if "supp" in r:
            problems.check(label, "supp", set(rec.supp), set(to_vectors(r["supp"])))
        if "fan_rays" in r:
            problems.check(label, "fan rays", sorted(normal_fan(p).rays), sorted(to_vectors(r["fan_rays"])))
        if rec.fi_dim >= 0:
            problems.check(label, "canonical hull = polytope", rec.equals_canonical_hull, True)
            orders.append(rec.pi1_order)
        dims[rec.fi_dim] += 1
    if dims != Counter({-1: 3, 0: 5, 1: 3, 3: 1}):
        problems.append(f"fi dimension split {dict(dims)}")
    if sorted(orders) != [2, 2, 2, 2, 2, 3, 3, 3, 5]:
        problems.append(f"pi1 orders {sorted(orders)}")
    return problems


# the tabulated Fine interior of the fourth hollow polytope, (5/2, 1/2, 1), violates
# <x, (0, 1, 0)> >= ord + 1 = 1; the exact computation gives (5/2, 1, 1)
DELTA4_ERRATUM = "hollow-4 fi vertices: got ((Fraction(5, 2), 1, 1),), table ((Fraction(5, 2), Fraction(1, 2), 1),)"


def test_criterion_4_hollow(acceptance_line):
    problems = _hollow_problems()
    unexpected = [m for m in problems if m != DELTA4_ERRATUM]
    detail = "12 polytopes"
    if DELTA4_ERRATUM in problems:
        detail += "; hollow-4 Fine interior is (5/2,1,1), table lists (5/2,1/2,1) (see ledger)"
    acceptance_line(4, not problems, "; ".join([detail] + unexpected))
    assert not unexpected


@pytest.mark.xfail(strict=True, reason="table entry for the fourth hollow polytope's Fine interior is inconsistent")
def test_criterion_4_hollow_delta4_as_tabulated():
    rec = timed_classification("hollow-4")[0]
    r = next(r for r in corpus()["hollow"] if r["index"] == 4)
    assert rec.fi_vertices == to_vectors(r["fi_vertices"])


def _affine_example(name):
    ex = AFFINE_EXAMPLES[name]
    local, lmap = lt.normalize_affine_lattice(ex.spec, ex.points)
    p = hull(local, 3)
    fi = fine_interior(p)
    return ex, p, lmap, fi


def _invariants(rec):
    return rec.regime, rec.fi_dim, len(rec.fi_vertices), len(rec.supp), rec.pi1_order, rec.psi


def test_criterion_5_worked_examples(acceptance_line):
    problems = Problems()
    for name in ("reid", "kanev", "todorov"):
        ex, p, lmap, fi = _affine_example(name)
        problems.check(name, "fi vertices", tuple(sorted(lmap.to_ambient(v) for v in fi.vertices)),
                       tuple(sorted(ex.fi_vertices)))
        problems.check(name, "fi lattice points", tuple(sorted(lmap.to_ambient(v) for v in fi.lattice_points())),
                       tuple(sorted(ex.fi_lattice_points)))
        if ex.normal_relation:
            problems.check(name, "normal relation", facet_normal_relation(p), ex.normal_relation)
        if ex.pi1_order:
            problems.check(name, "pi1", pi1_order(p), ex.pi1_order)
        if ex.equivalent_id:
            problems.check(name, f"invariants vs {ex.equivalent_id}", _invariants(classify(p)),
                           _invariants(timed_classification(ex.equivalent_id)[0]))
    p = vertices_from_halfspaces(FOUR_DIM_EXAMPLE["halfspaces"], 4)
    target = vertices_from_halfspaces(FOUR_DIM_EXAMPLE["reflexive_hull_halfspaces"], 4)
    problems.check("4d", "reflexive hull", reflexive_hull(p), target)
    once = tau(p)
    if once == target:
        problems.append("4d: tau equals the reflexive hull after one step")
    problems.check("4d", "tau^2", tau(once), target)
    acceptance_line(5, not problems, "reid, kanev, todorov, 4d tau" + "; ".join([""] + problems))
    assert not problems


def test_criterion_6_hull_examples(acceptance_line):
    problems = Problems()
    for ex in (REFLEXIVE_EXAMPLE, ALMOST_REFLEXIVE_EXAMPLE):
        p = hull(ex["vertices"])
        want = hull(ex["hull_vertices"])
        problems.check(ex["id"], "reflexive hull", reflexive_hull(p), want)
        problems.check(ex["id"], "canonical hull", analyze(p).canonical_hull, want)
    acceptance_line(6, not problems, "547386, 547385" + "; ".join([""] + problems))
    assert not problems


# ---------------------------------------------------------------------------
# criterion 7: property suites, each on at least 50 deterministic cases


def _random_polytope(rng, box=2):
    while True:
        pts = {tuple(rng.randint(-box, box) for _ in range(3)) for _ in range(rng.randint(4, 8))}
        p = hull(pts, 3)
        if p.is_full_dimensional:
            return p


def _suite_duality(rng):
    for _ in range(60):
        axes = [tuple(s * rng.randint(1, 2) * int(i == j) for j in range(3)) for i in range(3) for s in (1, -1)]
        p = hull(axes + [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(3)])
        assert dual_polytope(dual_polytope(p)) == p
    return 60


def _fi_cases():
    return [label for label, _ in all_reference_polytopes() if not analysis(label).fi.is_empty]


def _suite_fi_enlargement(rng):
    box = primitive_box_vectors(6)
    labels = _fi_cases()
    for label in labels:
        res = analysis(label)
        for n in box:
            assert ord_(res.fi, n) >= ord_(res.polytope, n) + 1, (label, n)
    return len(labels)


def _suite_supp(rng):
    box = primitive_box_vectors(6)
    labels = _fi_cases()
    for label in labels:
        res = analysis(label)
        tight = {n for n in box if ord_(res.fi, n) == ord_(res.polytope, n) + 1}
        assert tight == {s for s in res.support if max(map(abs, s)) <= 6}, label
    return len(labels)


def _suite_psi(rng):
    for _ in range(60):
        p = _random_polytope(rng)
        prof = ehrhart_profile(p)
        n1, i1 = len(p.lattice_points()), len(p.interior_lattice_points())
        i2 = len(dilate(p, 2).interior_lattice_points())
        assert prof.psi == (1, n1 - 4, i2 - 4 * i1, i1)
        assert prof.volume == normalized_volume(p)
    return 60


def _suite_reciprocity(rng):
    for _ in range(60):
        prof = ehrhart_profile(_random_polytope(rng))
        coeffs = ehrhart_polynomial(prof)
        assert [-evaluate(coeffs, -k) for k in (1, 2)] == list(prof.interior_counts)
    return 60


def _suite_reflexivity(rng):
    polys = [p for label, p in all_reference_polytopes() if not str(label).startswith("hollow")]
    polys += list(canonical_fano_sample(40))
    for p in polys:
        assert is_reflexive(p) == psi_palindrome(ehrhart_profile(p)) == reflexive_by_count(p)
    return len(polys)


def _suite_polygon_forms(rng):
    polys = [((0, 0), (1, 0), (0, 1)), ((0, 0), (3, 0), (1, 2)), ((0, 0), (4, 1), (2, 3), (-1, 2)),
             ((1, 0), (-1, 1), (-1, -1)), ((-2, -1), (0, 1), (2, -1)), ((0, 0), (2, 0), (3, 1), (2, 3), (0, 1))]
    for k in range(100):
        poly = polys[k % len(polys)]
        m = random_unimodular(rng, 2, steps=5, spread=3)
        t = (rng.randint(-9, 9), rng.randint(-9, 9))
        assert lt.polygon_normal_form([lt.add(lt.matvec(m, x), t) for x in poly]) == lt.polygon_normal_form(poly)
    return 100


def _suite_batch_determinism(rng):
    inputs = [PolytopeInput(rid, tuple(map(tuple, v))) for rid, v in fixture_inputs()]
    one = emit_report(run_batch(inputs, jobs=1))
    many = emit_report(run_batch(inputs, jobs=3))
    assert one == many
    return len(inputs)


SUITES = {
    "duality involution": _suite_duality,
    "FI constraint enlargement": _suite_fi_enlargement,
    "supp brute force": _suite_supp,
    "psi three ways": _suite_psi,
    "reciprocity": _suite_reciprocity,
    "reflexivity three ways": _suite_reflexivity,
    "polygon normal form": _suite_polygon_forms,
    "batch determinism": _suite_batch_determinism,
}


def test_criterion_7_property_suites(acceptance_line):
    rng = random.Random(2024)
    counts, failures = {}, []
    start = time.perf_counter()
    for name, suite in SUITES.items():
        try:
            counts[name] = suite(rng)
        except AssertionError as exc:
            failures.append(f"{name}: {exc}")
    elapsed = time.perf_counter() - start
    small = [n for n, c in counts.items() if c < 50]
    ok = not failures and not small and elapsed < 60
    detail = f"{len(SUITES)} suites, min {min(counts.values(), default=0)} cases, {elapsed:.1f} s"
    acceptance_line(7, ok, "; ".join([detail] + failures + [f"{n}: too few cases" for n in small]))
    assert ok


# ---------------------------------------------------------------------------
# criterion 8: only with a user-supplied database dump

DUMP_ENV = "FINETOPE_GRDB_DUMP"


def test_criterion_8_full_database(acceptance_line):
    path = os.environ.get(DUMP_ENV)
    if not path:
        acceptance_line(8, True, f"no dump supplied (set {DUMP_ENV})", status="SKIP")
        pytest.skip(f"set {DUMP_ENV} to a canonical 3-tope dump to run the full-database check")
    report = run_batch(grdb_dump_import(path), jobs=os.cpu_count() or 1)
    recs = [r for r, e in zip(report.records, report.errors) if e is None]
    facets = {
        regime: Counter(r.facet_type for r in recs if r.regime == regime)
        for regime in ("elliptic_asymmetric", "elliptic_symmetric")
    }
    tau_reflexive = sum(1 for r in recs if r.regime == "K3" and r.tau_reflexive)
    want_hist = {"K3": 665599, "elliptic_asymmetric": 9020, "elliptic_symmetric": 20, "general_type": 49}
    checks = {
        "records": (len(report.records), 674688),
        "failures": (sum(1 for e in report.errors if e is not None), 0),
        "histogram": (report.histogram, want_hist),
        "asymmetric facets": (dict(facets["elliptic_asymmetric"]), {"a": 3038, "b": 4663, "c": 1319}),
        "symmetric facets": (dict(facets["elliptic_symmetric"]), {"a": 7, "b": 9, "c": 4}),
        "tau reflexive": (tau_reflexive, 211941),
    }
    bad = [f"{k}: got {g}, want {w}" for k, (g, w) in checks.items() if g != w]
    acceptance_line(8, not bad, "; ".join(bad) or "full database matches")
    assert not bad
