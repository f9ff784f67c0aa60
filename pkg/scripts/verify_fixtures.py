#!/usr/bin/env python3
"""Run the cohomology/Chow comparison report over every shipped fan file.

One summary line per fan: structural flags, the comparison-map status
per degree, and any nonzero below-diagonal cohomology.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from tropfan.cli import load_fan_file
from tropfan.criteria import verification_report

FANS = sorted((pathlib.Path(__file__).resolve().parent.parent / "fans").glob("*.json"))


def main():
    failures = 0
    for path in FANS:
        fan, _, _ = load_fan_file(str(path))
        report = verification_report(fan)
        status = ", ".join(f"A^{p}->{v}" for p, v in sorted(report.psi_status.items()))
        print(f"{fan.name:8s} unimodular={report.unimodular!s:5s} saturated={report.saturated!s:5s} {status}")
        for p, q, g, kind in report.vanishing_observations:
            print(f"         note: H^{p},{q} = {g} ({kind})")
        if not report.ok:
            failures += 1
            print("         VERDICT: FAIL")
    print(f"{len(FANS)} fans checked, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
