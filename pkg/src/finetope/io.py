"""Input parsing, the batch driver and report emission.

Vertex-list format: an optional ``id <token>`` line, then one vertex per line
as whitespace-separated integers; a blank line ends a record. Inputs living
in an affine lattice of Z^4 add two lines before the vertices::

    level 1 1 1 1 = 5
    congruence 1 2 3 4 mod 5

Dump format: ``<id>: x,y,z; x,y,z; ...``, one record per line.
"""

import csv
import io as _io
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import analyze_hollow, classify
from .ehrhart import ehrhart_profile
from .lattice import AffineLatticeSpec, normalize_affine_lattice
from .polytope import hull

__all__ = [
    "CSV_FIELDS",
    "BatchReport",
    "ParseError",
    "PolytopeInput",
    "REPORT_VERSION",
    "emit_report",
    "grdb_dump_import",
    "parse_dump_lines",
    "parse_polytope_file",
    "parse_report",
    "record_to_dict",
    "report_to_dict",
    "run_batch",
]

REPORT_VERSION = 1

REPORT_FIELDS = (
    "id", "fi_dim", "regime", "fi_vertices", "v_delta", "lambda", "facet_type", "projection_type",
    "pi1_order", "supp", "canonical_hull_vertices", "canonical_hull_integral", "equals_canonical_hull",
    "psi", "width",
)
CSV_FIELDS = REPORT_FIELDS + ("error",)


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = f"line {line}" + (f", column {column}" if column else "") if line else ""
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class PolytopeInput:
    id: str | None
    vertices: tuple
    lattice: AffineLatticeSpec | None = None

    @property
    def ambient_dim(self):
        return len(self.vertices[0]) if self.vertices else 0


# ---------------------------------------------------------------------------
# parsing


def _ints(tokens, lineno, line):
    out = []
    for tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"malformed integer {tok!r}", lineno, line.find(tok) + 1) from None
    return out


def _lattice_line(kind, rest, lineno, line):
    sep = "=" if kind == "level" else "mod"
    if sep not in rest:
        raise ParseError(f"expected '{sep}' in {kind} line", lineno)
    i = rest.index(sep)
    coeffs = _ints(rest[:i], lineno, line)
    rhs = _ints(rest[i + 1:], lineno, line)
    if len(rhs) != 1:
        raise ParseError(f"expected one value after '{sep}'", lineno)
    return tuple(coeffs), rhs[0]


def parse_polytope_file(text):
    """Parse vertex-list records; errors carry line and column numbers."""
    records, seen = [], set()
    cur = {"id": None, "rows": [], "level": None, "congruence": None, "start": None}

    def flush():
        if cur["rows"] or cur["id"] is not None:
            if not cur["rows"]:
                raise ParseError(f"record {cur['id']!r} has no vertices", cur["start"])
            spec = None
            if cur["level"] or cur["congruence"]:
                if not (cur["level"] and cur["congruence"]):
                    raise ParseError("lattice needs both level and congruence lines", cur["start"])
                (lv, lr), (cv, cm) = cur["level"], cur["congruence"]
                spec = AffineLatticeSpec(lv, lr, cv, cm)
            records.append(PolytopeInput(cur["id"], tuple(cur["rows"]), spec))
        cur.update(id=None, rows=[], level=None, congruence=None, start=None)

    width = None
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            if not tokens:
                flush()
                width = None
            continue
        if cur["start"] is None:
            cur["start"] = lineno
        head = tokens[0]
        if head == "id":
            if cur["rows"]:
                raise ParseError("id line inside a vertex block", lineno, 1)
            if len(tokens) != 2:
                raise ParseError("id line needs exactly one token", lineno, 1)
            if tokens[1] in seen:
                raise ParseError(f"duplicate id {tokens[1]!r}", lineno, line.find(tokens[1]) + 1)
            seen.add(tokens[1])
            cur["id"] = tokens[1]
        elif head in ("level", "congruence"):
            cur[head] = _lattice_line(head, tokens[1:], lineno, line)
        else:
            row = _ints(tokens, lineno, line)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ParseError(f"ragged row: {len(row)} entries, expected {width}", lineno, 1)
            cur["rows"].append(tuple(row))
    flush()
    return records


def parse_dump_lines(lines):
    """Yield PolytopeInput records from dump lines, streaming."""
    seen = set()
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError("missing ':' after the id", lineno)
        rid, body = (s.strip() for s in line.split(":", 1))
        if rid in seen:
            raise ParseError(f"duplicate id {rid!r}", lineno)
        seen.add(rid)
        verts = []
        for chunk in body.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                verts.append(tuple(int(c) for c in chunk.split(",")))
            except ValueError:
                raise ParseError(f"record {rid}: malformed vertex {chunk!r}", lineno) from None
        if not verts or len({len(v) for v in verts}) != 1:
            raise ParseError(f"record {rid}: empty or ragged vertex list", lineno)
        yield PolytopeInput(rid, tuple(verts))


def grdb_dump_import(path):
    """Read a local dump of the canonical 3-tope database."""
    with open(path, encoding="utf-8") as fh:
        return list(parse_dump_lines(fh))


# ---------------------------------------------------------------------------
# batch driver


@dataclass
class BatchReport:
    mode: str
    records: list
    errors: list
    elapsed: float = 0.0
    histogram: dict = field(default_factory=dict)

    @property
    def failed(self):
        return any(e is not None for e in self.errors)


def _prepare(inp):
    verts = inp.vertices
    if inp.lattice is not None:
        verts, _ = normalize_affine_lattice(inp.lattice, verts)
    return hull(verts)


def _run_one(args):
    mode, inp = args
    try:
        p = _prepare(inp)
        if mode == "classify":
            return classify(p, inp.id), None
        if mode == "hollow":
            return analyze_hollow(p, inp.id), None
        if mode == "ehrhart":
            return (inp.id, ehrhart_profile(p)), None
        raise ValueError(f"unknown mode {mode!r}")
    except Exception as exc:  # a failing record must not abort the batch
        return None, f"{type(exc).__name__}: {exc}"


def _histogram(mode, records):
    if mode == "classify":
        return dict(sorted(Counter(r.regime for r in records if r is not None).items()))
    if mode == "hollow":
        return dict(sorted(Counter(str(r.fi_dim) for r in records if r is not None).items()))
    return {}


def run_batch(inputs, jobs=1, mode="classify"):
    """Process inputs in order; results keep input order for any ``jobs``."""
    start = time.perf_counter()
    work = [(mode, inp) for inp in inputs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = [_run_one(w) for w in work]
    records = [r for r, _ in results]
    errors = [e for _, e in results]
    for i, (inp, e) in enumerate(zip(inputs, errors)):
        if e is not None and records[i] is None:
            records[i] = _ErrorRecord(inp.id, e)
    ok = [r for r in records if not isinstance(r, _ErrorRecord)]
    return BatchReport(mode, records, errors, time.perf_counter() - start, _histogram(mode, ok))


@dataclass(frozen=True)
class _ErrorRecord:
    id: str | None
    error: str


# ---------------------------------------------------------------------------
# serialization


def _scalar(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


def _vec(v):
    return None if v is None else [_scalar(c) for c in v]


def _vecs(vs):
    return None if vs is None else [_vec(v) for v in vs]


def record_to_dict(rec, mode="classify"):
    """Plain-JSON view of a record; rationals become "p/q" strings."""
    if isinstance(rec, _ErrorRecord):
        return {"id": rec.id, "error": rec.error}
    if mode == "ehrhart":
        rid, prof = rec
        return {"id": rid, "psi": list(prof.psi), "counts": list(prof.counts),
                "interior_counts": list(prof.interior_counts), "volume": prof.volume}
    if mode == "hollow":
        return {
            "id": rec.id, "fi_dim": rec.fi_dim, "regime": "hollow", "fi_vertices": _vecs(rec.fi_vertices),
            "pi1_order": rec.pi1_order, "supp": _vecs(rec.supp),
            "canonical_hull_vertices": _vecs(rec.canonical_hull_vertices),
            "canonical_hull_integral": rec.canonical_hull_integral,
            "equals_canonical_hull": rec.equals_canonical_hull,
            "width": _scalar(rec.width), "width_direction": _vec(rec.width_direction),
        }
    return {
        "id": rec.id,
        "fi_dim": rec.fi_dim,
        "regime": rec.regime,
        "fi_vertices": _vecs(rec.fi_vertices),
        "v_delta": _vec(rec.v_delta),
        "lambda": _scalar(rec.lam),
        "facet_type": rec.facet_type,
        "facet_type_minus": rec.facet_type_minus,
        "projection_type": rec.projection_type,
        "pi1_order": rec.pi1_order,
        "supp": _vecs(rec.supp),
        "canonical_hull_vertices": _vecs(rec.canonical_hull_vertices),
        "canonical_hull_integral": rec.canonical_hull_integral,
        "equals_canonical_hull": rec.equals_canonical_hull,
        "psi": list(rec.psi),
        "kodaira": rec.kodaira,
        "theta_plus": _vecs(rec.theta_plus),
        "theta_minus": _vecs(rec.theta_minus),
        "translation": _vec(rec.translation),
        "tau_reflexive": rec.tau_reflexive,
        "notes": list(rec.notes),
    }


def report_to_dict(report, include_timing=False):
    out = {
        "version": REPORT_VERSION,
        "mode": report.mode,
        "count": len(report.records),
        "histogram": report.histogram,
        "failures": sum(1 for e in report.errors if e is not None),
        "records": [record_to_dict(r, report.mode) for r in report.records],
    }
    if include_timing:
        out["elapsed_seconds"] = round(report.elapsed, 3)
    return out


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return ";".join(" ".join(str(c) for c in v) for v in value)
        return " ".join(str(c) for c in value)
    return str(value)


def emit_report(report, fmt="json", include_timing=False):
    """Serialize a BatchReport (or its parsed JSON form) as json or csv text."""
    data = report if isinstance(report, dict) else report_to_dict(report, include_timing)
    if fmt == "json":
        return json.dumps(data, indent=1) + "\n"
    if fmt == "csv":
        buf = _io.StringIO()
        buf.write(f"# finetope report v{data['version']}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for rec in data["records"]:
            writer.writerow([_csv_cell(rec.get(k)) for k in CSV_FIELDS])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text):
    return json.loads(text)
