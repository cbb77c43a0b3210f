"""Compare two choices of nondegeneracy index for the reflection directions.

``shape`` picks, for each interchange law, the degeneracy condition whose
term matches the left-hand side of that law.  ``ceil-half`` uses the index
ceil(k / 2).  For each law the script counts the (X, Q) pairs on which each
rule licenses a reflection, and whether any licensed reflection fails.
"""
from __future__ import annotations

import math

from convalg.correspond import Instance, enumerate_bimagmas, enumerate_biquantales
from convalg.laws import SIDE_CONDITION


def main() -> int:
    qs = [q for n in (1, 2) for q in enumerate_biquantales(n)]
    rules = {"shape": SIDE_CONDITION, "ceil-half": {k: math.ceil(k / 2) for k in range(1, 8)}}
    stats = {(r, k, d): [0, 0] for r in rules for k in range(1, 8) for d in ("X", "Q")}
    for n in (1, 2):
        for x in enumerate_bimagmas(n):
            memo: dict = {}
            for q in qs:
                inst = Instance(x, q, strategy="delta-complete", x_memo=memo)
                for k in range(1, 8):
                    if not inst.lifted_i(k).holds:
                        continue
                    for rule, idx in rules.items():
                        j = idx[k]
                        if inst.d(j):
                            stats[(rule, k, "X")][0] += 1
                            stats[(rule, k, "X")][1] += not inst.ri(k).holds
                        if inst.rd(j):
                            stats[(rule, k, "Q")][0] += 1
                            stats[(rule, k, "Q")][1] += not inst.i(k).holds
    print("law  rule       index  reflect-to-X (licensed/alarms)  reflect-to-Q (licensed/alarms)")
    bad = 0
    for k in range(1, 8):
        for rule, idx in rules.items():
            lx, ax = stats[(rule, k, "X")]
            lq, aq = stats[(rule, k, "Q")]
            bad += ax + aq
            print(f"I{k}   {rule:<10} {idx[k]:>5}  {lx:>8}/{ax:<6}                 {lq:>8}/{aq:<6}")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
