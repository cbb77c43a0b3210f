"""Run the three-direction correspondence suite and print a summary."""
from __future__ import annotations

import argparse
import time

from convalg.correspond import correspondence_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-x", type=int, default=2)
    ap.add_argument("--max-q", type=int, default=2)
    ap.add_argument("--rule", choices=["shape", "ceil-half"], default="shape")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    t0 = time.time()
    res = correspondence_suite(args.max_x, args.max_q, jobs=args.jobs, rule=args.rule)
    print(f"rule={args.rule} pairs={res.pairs} alarms={len(res.alarms)} ({time.time() - t0:.0f}s)")
    for direction, n in res.verified.items():
        print(f"  verified {direction}: {n}")
    for alarm in res.alarms[:10]:
        print("  " + " ; ".join(alarm))
    return 0 if res.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
