#!/usr/bin/env python3
"""Print both cohomology tables of the fan over the one-skeleton of a cube.

The fan lives in the lattice generated by its own rays (where it is
unimodular and saturated); the left table is the compactly supported
cohomology of the open fan, the right one the cohomology of its
canonical compactification.  The compactly supported side carries a
2-torsion class in bidegree (1,2).
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from tropfan.cli import load_fan_file, render_table
from tropfan.homology import ComplexGroups, build_complex, compactification

FAN_FILE = pathlib.Path(__file__).resolve().parent.parent / "fans" / "cube.json"


def main():
    fan, _, _ = load_fan_file(str(FAN_FILE))
    comp = compactification(fan)
    d = fan.dim
    left = {}
    right = {}
    for p in range(d + 1):
        cs = ComplexGroups(build_complex(fan, p, "compact_support"))
        coh = ComplexGroups(build_complex(comp, p, "cohomology"))
        for q in range(d + 1):
            left[(p, q)] = str(cs.group(q))
            right[(p, q)] = str(coh.group(q))
    print(render_table("H_c^(p,q)(Sigma; Z)", d, left))
    print()
    print(render_table("H^(p,q)(comp Sigma; Z)", d, right))


if __name__ == "__main__":
    main()
