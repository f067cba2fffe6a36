"""Backward search vs the forward-saturation oracle, truth tables, closure."""

from __future__ import annotations

import random

import pytest

from necseq.calculus import LogicId, Sequent, check_proof, parse_sequent
from necseq.formula import BOT, Box, Imp, boxes, parse_formula, quote, var
from necseq.gen import grid_logics, random_sequent
from necseq.prover import (
    NotClassicalError,
    Prover,
    SearchBudgetExceeded,
    closure,
    decide,
    decide_classical,
    saturate_forward,
)

p, q = var("p"), var("q")

NA21 = LogicId("plain", 2, 1)
NA02 = LogicId("plain", 0, 2)
NPA02 = LogicId("plus", 0, 2)
NA11 = LogicId("plain", 1, 1)
NRA11 = LogicId("R", 1, 1)


# -- closure -------------------------------------------------------------------

def test_closure_examples():
    assert closure(parse_sequent("=> box box p")).formulas == {
        boxes(2, p), Box(p), p,
    }
    assert closure(parse_sequent("box box box false =>")).formulas == {
        boxes(3, BOT), boxes(2, BOT), Box(BOT), BOT,
    }
    assert closure(parse_sequent("=> box (p -> q)")).formulas == {
        Box(Imp(p, q)), Imp(p, q), p, q,
    }


# -- decide: named cases ---------------------------------------------------------

def test_axiom_provable_in_na21():
    proof = decide(parse_sequent("=> box p -> box box p"), NA21)
    assert proof is not None
    assert check_proof(proof, NA21).ok
    assert not proof.has_cut()


def test_bare_atom_unprovable():
    for logic in (NA21, NA11, NPA02, NRA11):
        assert decide(parse_sequent("=> p"), logic) is None


def test_separation_witness_box3_bot():
    s = parse_sequent("box box box false =>")
    assert decide(s, NPA02) is not None
    assert decide(s, NA02) is None


def test_empty_sequent_unprovable_everywhere():
    for logic in grid_logics():
        assert decide(Sequent.make([], []), logic) is None


def test_proofs_pass_checker_and_conclusion_matches():
    rng = random.Random(7)
    for logic in (NA21, NPA02, NRA11, NA11):
        found = 0
        for _ in range(120):
            s = random_sequent(rng)
            proof = decide(s, logic)
            if proof is not None:
                found += 1
                assert proof.conclusion == s
                assert check_proof(proof, logic).ok
                assert not proof.has_cut()
        assert found > 5


def test_budget_error():
    prover = Prover(NA21, budget=1)
    with pytest.raises(SearchBudgetExceeded):
        prover.decide(parse_sequent("p & q => q & p"))


# -- forward saturation -----------------------------------------------------------

def test_saturate_single_atom_universe():
    sat = saturate_forward(frozenset({p}), NA11)
    assert list(sat.sequents()) == [Sequent.make([p], [p])]


def test_saturate_bot_universe():
    sat = saturate_forward(frozenset({BOT}), NA11)
    got = set(sat.sequents())
    assert Sequent.make([BOT], []) in got
    assert Sequent.make([BOT], [BOT]) in got
    assert Sequent.make([], [BOT]) not in got


def test_saturate_ros_derives_boxed_bot_left():
    universe = closure(parse_sequent("box box box false =>"))
    sat = saturate_forward(universe, NRA11)
    assert Sequent.make([Box(BOT)], []) in sat
    assert Sequent.make([boxes(2, BOT)], []) in sat


def test_saturate_includes_weakenings():
    sat = saturate_forward(closure(parse_sequent("p, q => p")), NA11)
    assert parse_sequent("p, q => p") in sat
    assert parse_sequent("p => p, q") in sat
    assert parse_sequent("q => p") not in sat


# -- differential: backward vs forward -----------------------------------------

def test_differential_small_corpus():
    rng = random.Random(2024)
    logics = [NA21, NA02, NPA02, NRA11, LogicId("R", 2, 1), LogicId("plus", 1, 2)]
    for logic in logics:
        checked = 0
        for _ in range(60):
            s = random_sequent(rng, atoms=("p", "q"), max_depth=2, max_side=2)
            uni = closure(s)
            if len(uni) > 12:
                continue
            sat = saturate_forward(uni, logic)
            backward = decide(s, logic) is not None
            assert backward == sat.is_provable(s), f"{logic}: {s}"
            checked += 1
        assert checked >= 40


def test_monotonicity_across_variants():
    rng = random.Random(5)
    for m, n in ((0, 2), (1, 2), (2, 0)):
        plain = LogicId("plain", m, n)
        plus = LogicId("plus", m, n)
        rvar = LogicId("R", m, n)
        for _ in range(80):
            s = random_sequent(rng)
            if decide(s, plain) is not None:
                assert decide(s, plus) is not None
                assert decide(s, rvar) is not None


def test_classical_agreement_on_box_free():
    rng = random.Random(11)
    for _ in range(150):
        s = random_sequent(rng, allow_box=False)
        want = decide_classical(s)
        for logic in (NA21, NRA11):
            assert (decide(s, logic) is not None) == want


# -- decide_classical -------------------------------------------------------------

def test_decide_classical_examples():
    assert decide_classical(parse_sequent("p & q => p"))
    assert decide_classical(parse_sequent("=> p | ~p"))
    s = Sequent.make([parse_formula("q{box p} & p")], [quote(Box(p))])
    assert decide_classical(s)
    assert not decide_classical(parse_sequent("p => q"))


def test_decide_classical_rejects_boxes():
    with pytest.raises(NotClassicalError):
        decide_classical(parse_sequent("box p => box p"))
