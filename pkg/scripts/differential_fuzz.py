#!/usr/bin/env python3
"""Differential fuzzing: backward proof search against forward saturation.

Draws random sequents, keeps those whose closure fits the universe bound,
and compares the two independently implemented deciders.

Usage: python3 scripts/differential_fuzz.py [--seed N] [--count N]
       [--logic SPEC | --all-grid] [--max-universe N]
"""

from __future__ import annotations

import argparse
import random
import sys

from necseq import closure, decide, parse_logic, print_sequent, saturate_forward
from necseq.gen import grid_logics, random_sequent


def run(logic, rng, count, max_universe) -> tuple[int, int]:
    checked = 0
    mismatches = 0
    while checked < count:
        s = random_sequent(rng, atoms=("p", "q"), max_depth=2, max_side=2)
        uni = closure(s)
        if len(uni) > max_universe:
            continue
        backward = decide(s, logic) is not None
        forward = saturate_forward(uni, logic).is_provable(s)
        if backward != forward:
            mismatches += 1
            print(f"MISMATCH {logic}: {print_sequent(s)} "
                  f"(backward={backward}, forward={forward})")
        checked += 1
    return checked, mismatches


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=300)
    parser.add_argument("--logic", default=None, help='e.g. "N+A(0,2)"')
    parser.add_argument("--all-grid", action="store_true")
    parser.add_argument("--max-universe", type=int, default=12)
    args = parser.parse_args()

    logics = (
        grid_logics(2)
        if args.all_grid or args.logic is None
        else [parse_logic(args.logic)]
    )
    total = bad = 0
    for logic in logics:
        rng = random.Random(args.seed)
        checked, mismatches = run(logic, rng, args.count, args.max_universe)
        total += checked
        bad += mismatches
        print(f"{logic}: {checked} sequents, {mismatches} mismatches")
    print(f"total: {total} sequents, {bad} mismatches")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
