"""Seeded random formula / sequent generators for tests and experiments."""

from __future__ import annotations

import random
from typing import Sequence

from .calculus import LogicId, Sequent
from .formula import BOT, And, Box, Formula, Imp, Or, var


def grid_logics(max_mn: int = 2) -> list[LogicId]:
    """The test grid: all three variants crossed with m, n up to max_mn."""
    return [
        LogicId(variant, m, n)
        for variant in ("plain", "plus", "R")
        for m in range(max_mn + 1)
        for n in range(max_mn + 1)
    ]


def random_formula(
    rng: random.Random,
    atoms: Sequence[str] = ("p", "q", "r"),
    max_depth: int = 3,
    allow_box: bool = True,
    bot_weight: int = 1,
) -> Formula:
    """Random formula over the given base atoms."""
    if max_depth == 0 or rng.random() < 0.3:
        names = list(atoms)
        k = rng.randrange(len(names) + bot_weight)
        if k >= len(names):
            return BOT
        return var(names[k])
    kinds = ["and", "or", "imp", "not"]
    if allow_box:
        kinds += ["box", "box"]
    kind = rng.choice(kinds)
    if kind == "box":
        return Box(random_formula(rng, atoms, max_depth - 1, allow_box, bot_weight))
    if kind == "not":
        return Imp(random_formula(rng, atoms, max_depth - 1, allow_box, bot_weight), BOT)
    left = random_formula(rng, atoms, max_depth - 1, allow_box, bot_weight)
    right = random_formula(rng, atoms, max_depth - 1, allow_box, bot_weight)
    return {"and": And, "or": Or, "imp": Imp}[kind](left, right)


def random_sequent(
    rng: random.Random,
    atoms: Sequence[str] = ("p", "q"),
    max_depth: int = 2,
    max_side: int = 2,
    allow_box: bool = True,
) -> Sequent:
    """Random sequent with up to max_side formulas per side."""
    ante = [
        random_formula(rng, atoms, max_depth, allow_box)
        for _ in range(rng.randrange(max_side + 1))
    ]
    succ = [
        random_formula(rng, atoms, max_depth, allow_box)
        for _ in range(rng.randrange(max_side + 1))
    ]
    return Sequent.make(ante, succ)
