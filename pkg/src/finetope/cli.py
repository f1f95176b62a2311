"""Command line entry point: ``finetope <subcommand> ...``.

Exit codes: 0 success, 1 some record failed (or differs from --expect),
2 input unreadable.
"""

import argparse
import json
import sys

from . import fixtures
from .io import (
    ParseError,
    PolytopeInput,
    emit_report,
    parse_dump_lines,
    parse_polytope_file,
    parse_report,
    record_to_dict,
    report_to_dict,
    run_batch,
)

EXIT_OK, EXIT_RECORD_FAILURE, EXIT_UNREADABLE = 0, 1, 2


class InputError(Exception):
    pass


def _read_text(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _looks_like_dump(text):
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return ":" in line
    return False


def load_inputs(path, dump=False):
    text = _read_text(path)
    try:
        if dump or _looks_like_dump(text):
            return list(parse_dump_lines(text.splitlines()))
        return parse_polytope_file(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _compare_golden(data, golden_path):
    """Messages for records that differ from a golden json report."""
    golden = parse_report(_read_text(golden_path))
    got, want = data["records"], golden.get("records", [])
    msgs = []
    if len(got) != len(want):
        msgs.append(f"record count {len(got)} != expected {len(want)}")
    for i, (a, b) in enumerate(zip(got, want)):
        fields = sorted(k for k in set(a) | set(b) if a.get(k) != b.get(k))
        if fields:
            msgs.append(f"record {i} ({a.get('id')}): {', '.join(fields)} differ")
    return msgs


def _report_failures(report):
    for rec, err in zip(report.records, report.errors):
        if err is not None:
            print(f"error: record {rec.id}: {err}", file=sys.stderr)


def _cmd_batch(args, mode):
    inputs = load_inputs(args.input, getattr(args, "dump", False))
    report = run_batch(inputs, jobs=args.jobs, mode=mode)
    data = report_to_dict(report, include_timing=args.timing)
    _write(emit_report(data, args.format), args.output)
    _report_failures(report)
    status = EXIT_RECORD_FAILURE if report.failed else EXIT_OK
    if args.expect:
        msgs = _compare_golden(data, args.expect)
        for m in msgs:
            print(f"mismatch: {m}", file=sys.stderr)
        if msgs:
            status = EXIT_RECORD_FAILURE
    return status


def _fmt(x):
    if isinstance(x, list):
        return "(" + ", ".join(_fmt(c) for c in x) + ")"
    return str(x)


def _describe(d):
    if "error" in d:
        return [f"id: {d['id']}", f"  error: {d['error']}"]
    lines = [f"id: {d['id']}"]
    for key, value in d.items():
        if key == "id" or value is None or value == [] or value == ():
            continue
        if isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"  {key}:")
            lines.extend(f"    {_fmt(v)}" for v in value)
        else:
            lines.append(f"  {key}: {_fmt(value)}")
    return lines


def cmd_analyze(args):
    inputs = load_inputs(args.input)
    report = run_batch(inputs, jobs=1, mode="classify")
    if args.format == "json":
        _write(emit_report(report, "json"), None)
    else:
        for rec in report.records:
            print("\n".join(_describe(record_to_dict(rec))))
    return EXIT_RECORD_FAILURE if report.failed else EXIT_OK


def cmd_ehrhart(args):
    inputs = load_inputs(args.input)
    report = run_batch(inputs, jobs=args.jobs, mode="ehrhart")
    if args.format == "text":
        for rec in report.records:
            print("\n".join(_describe(record_to_dict(rec, "ehrhart"))))
    else:
        _write(emit_report(report, args.format), None)
    return EXIT_RECORD_FAILURE if report.failed else EXIT_OK


def cmd_fixtures(args):
    fixtures.verify_checksum()
    data = fixtures.corpus()
    status = EXIT_OK
    results = []
    for section in ("asymmetric", "symmetric", "dim3", "hollow"):
        recs = data[section]
        ids = [str(r.get("id", r.get("index"))) for r in recs]
        inputs = [PolytopeInput(i, tuple(tuple(v) for v in r["vertices"])) for i, r in zip(ids, recs)]
        report = run_batch(inputs, jobs=args.jobs, mode="hollow" if section == "hollow" else "classify")
        for rid, exp, rec, err in zip(ids, recs, report.records, report.errors):
            if err is not None:
                results.append((section, rid, "ERROR", err))
                status = EXIT_RECORD_FAILURE
                continue
            bad = fixtures.diff_record(section, exp, rec)
            known = set(fixtures.KNOWN_ERRATA.get((section, rid), ()))
            if not bad:
                results.append((section, rid, "ok", ""))
            elif set(bad) <= known:
                results.append((section, rid, "erratum", ", ".join(bad)))
            else:
                results.append((section, rid, "MISMATCH", ", ".join(bad)))
                status = EXIT_RECORD_FAILURE
    if args.format == "json":
        out = [dict(section=s, id=i, status=st, detail=d) for s, i, st, d in results]
        print(json.dumps(out, indent=1))
    else:
        for s, i, st, d in results:
            print(f"{s:10} {i:>8}  {st}" + (f"  [{d}]" if d else ""))
        n_ok = sum(1 for r in results if r[2] == "ok")
        print(f"{n_ok}/{len(results)} records match; "
              f"{sum(1 for r in results if r[2] == 'erratum')} known table errata")
    return status


def build_parser():
    parser = argparse.ArgumentParser(prog="finetope", description="Fine interiors of lattice 3-topes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify polytopes and print a readable summary")
    p.add_argument("input", help="vertex-list or dump file, '-' for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    for name, mode, help_ in (
        ("batch", "classify", "classify every record and emit a report"),
        ("hollow", "hollow", "analyze hollow polytopes"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="vertex-list or dump file, '-' for stdin")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--expect", metavar="GOLDEN", help="golden json report to diff against")
        p.add_argument("--output", "-o", help="write the report here instead of stdout")
        p.add_argument("--timing", action="store_true", help="include elapsed time in json output")
        if name == "batch":
            p.add_argument("--dump", action="store_true", help="force the one-record-per-line dump format")
        p.set_defaults(func=lambda a, m=mode: _cmd_batch(a, m))

    p = sub.add_parser("ehrhart", help="Ehrhart counts and the psi-vector")
    p.add_argument("input")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("fixtures", help="run the embedded reference corpus and diff against it")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNREADABLE


if __name__ == "__main__":
    sys.exit(main())
