"""Run the batch driver over the embedded corpus and print the regime histogram."""

import sys

from finetope import PolytopeInput, emit_report, run_batch
from finetope.fixtures import fixture_inputs


def main(jobs=1):
    inputs = [PolytopeInput(rid, tuple(map(tuple, v))) for rid, v in fixture_inputs()]
    report = run_batch(inputs, jobs=jobs)
    for regime, n in sorted(report.histogram.items()):
        print(f"{regime:22s} {n}")
    print(f"{len(report.records)} records in {report.elapsed:.1f} s")
    # the CSV form is identical for any number of workers
    sys.stdout.write(emit_report(report, "csv").split("\n", 3)[2] + "\n")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
