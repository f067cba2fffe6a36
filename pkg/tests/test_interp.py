"""Maehara interpolation: named cases plus mechanical (a)-(d) verification."""

from __future__ import annotations

import random

import pytest

from necseq.calculus import (
    INIT,
    NEC,
    LogicId,
    Partition,
    ProofNode,
    Sequent,
    enumerate_partitions,
    parse_sequent,
)
from necseq.formula import (
    BOT,
    TRUE,
    And,
    Box,
    Or,
    negate,
    parse_formula,
    var,
)
from necseq.gen import random_sequent
from necseq.interp import (
    NotProvableError,
    lyndon_interpolant,
    maehara,
    verify_interpolant,
    verify_partition_interpolant,
)
from necseq.prover import decide, decide_classical

p, q, r = var("p"), var("q"), var("r")
NA11 = LogicId("plain", 1, 1)
NA21 = LogicId("plain", 2, 1)


def test_nec_partition_right_gives_true():
    top = decide(Sequent.make([], [TRUE]), NA11)
    proof = ProofNode(
        Sequent.make([], [Box(TRUE)]), NEC, principal=Box(TRUE), premises=(top,)
    )
    part = Partition.make(
        Sequent.make([], []), Sequent.make([], [Box(TRUE)]), proof.conclusion
    )
    assert maehara(proof, part, NA11) == TRUE


def test_nec_partition_left_gives_false():
    top = decide(Sequent.make([], [TRUE]), NA11)
    proof = ProofNode(
        Sequent.make([], [Box(TRUE)]), NEC, principal=Box(TRUE), premises=(top,)
    )
    part = Partition.make(
        Sequent.make([], [Box(TRUE)]), Sequent.make([], []), proof.conclusion
    )
    assert maehara(proof, part, NA11) == BOT


def test_init_partition_cases():
    proof = ProofNode(Sequent.make([p], [p]), INIT, principal=p)
    s = proof.conclusion

    def chi(left_ante, left_succ):
        part = Partition.make(
            Sequent.make(left_ante, left_succ),
            Sequent(s.ante - frozenset(left_ante), s.succ - frozenset(left_succ)),
            s,
        )
        return maehara(part=part, proof=proof, logic=NA11)

    assert chi([p], []) == p
    assert chi([], [p]) == negate(p)
    assert chi([p], [p]) == BOT
    assert chi([], []) == TRUE


def test_conjunction_interpolant_equivalent_to_p():
    s = parse_sequent("p & q => p | r")
    proof = decide(s, NA11)
    part = Partition.make(
        Sequent.make([parse_formula("p & q")], []),
        Sequent.make([], [parse_formula("p | r")]),
        s,
    )
    chi = maehara(proof, part, NA11)
    # chi is classically equivalent to p
    assert decide_classical(Sequent.make([chi], [p]))
    assert decide_classical(Sequent.make([p], [chi]))
    assert verify_partition_interpolant(proof, part, chi, NA11).ok


def test_lyndon_interpolant_box_example():
    chi = lyndon_interpolant(parse_formula("box p & box q"), parse_formula("box p | r"), NA11)
    assert decide(Sequent.make([chi], [Box(p)]), NA11) is not None
    assert decide(Sequent.make([Box(p)], [chi]), NA11) is not None
    rep = verify_interpolant(
        parse_formula("box p & box q"), parse_formula("box p | r"), chi, NA11
    )
    assert rep.ok


def test_lyndon_interpolant_same_formula():
    chi = lyndon_interpolant(p, p, NA11)
    assert verify_interpolant(p, p, chi, NA11).ok


def test_lyndon_interpolant_bot_side():
    chi = lyndon_interpolant(BOT, q, NA11)
    assert verify_interpolant(BOT, q, chi, NA11).ok
    assert chi == BOT


def test_lyndon_interpolant_axiom_grid_case():
    # box p -> box box p holds in NA(2,1); its interpolant passes all checks
    phi, psi = Box(p), Box(Box(p))
    chi = lyndon_interpolant(phi, psi, NA21)
    assert verify_interpolant(phi, psi, chi, NA21, mode="lyndon").ok
    assert verify_interpolant(phi, psi, Box(p), NA21, mode="lyndon").ok


def test_verify_interpolant_reports_failures():
    rep = verify_interpolant(p, q, TRUE, NA11, mode="lyndon")
    assert not rep.ok
    labels = [item.label for item in rep.failures()]
    assert any("chi -> psi" in label for label in labels)


def test_verify_interpolant_named_triples():
    rep = verify_interpolant(And(p, q), Or(p, r), p, NA11, mode="lyndon")
    assert rep.ok
    rep = verify_interpolant(Box(p), Box(Box(p)), Box(p), NA21, mode="lyndon")
    assert rep.ok


def test_interpolants_never_contain_quote_atoms():
    from necseq.formula import has_quote_atoms

    rng = random.Random(101)
    seen = 0
    for _ in range(120):
        if seen >= 30:
            break
        s = random_sequent(rng)
        proof = decide(s, NA11)
        if proof is None:
            continue
        for i, part in enumerate(enumerate_partitions(s)):
            if i >= 4:
                break
            assert not has_quote_atoms(maehara(proof, part, NA11))
        seen += 1
    assert seen >= 15


def test_not_provable_error():
    with pytest.raises(NotProvableError):
        lyndon_interpolant(p, q, NA11)


def test_maehara_rejects_cut_and_bad_partition():
    proof = ProofNode(Sequent.make([p], [p]), INIT, principal=p)
    other = Sequent.make([q], [q])
    with pytest.raises(ValueError):
        maehara(
            proof,
            Partition.make(Sequent.make([q], []), Sequent.make([], [q]), other),
            NA11,
        )


@pytest.mark.parametrize(
    "logic",
    [
        LogicId("plain", 1, 1),
        LogicId("plain", 0, 2),
        LogicId("plus", 0, 2),
        LogicId("R", 1, 2),
        LogicId("plain", 2, 0),
        LogicId("R", 2, 1),
    ],
)
def test_random_partitions_satisfy_conditions(logic):
    rng = random.Random(hash(str(logic)) & 0xFFFF)
    verified = 0
    for _ in range(160):
        if verified >= 25:
            break
        s = random_sequent(rng, atoms=("p", "q"), max_depth=2, max_side=2)
        proof = decide(s, logic)
        if proof is None:
            continue
        for i, part in enumerate(enumerate_partitions(s)):
            if i >= 8:
                break
            chi = maehara(proof, part, logic)
            rep = verify_partition_interpolant(proof, part, chi, logic)
            assert rep.ok, f"{logic} {s} {part.left} : {rep.render()}"
        verified += 1
    assert verified >= 10
