"""Craig/Lyndon interpolation by induction over cut-free proofs.

Given a cut-free proof and a partition of its conclusion, the recursion
produces a formula chi with:

  (a) left-part antecedent => left-part succedent, chi   provable;
  (b) chi, right-part antecedent => right-part succedent provable;
  (c) positive atoms of chi within pos(A1) + neg(S1), and within
      neg(A2) + pos(S2);
  (d) dually for negative atoms.

Case table: initial sequents give false / true / the formula / its negation
depending on which sides hold the two copies; one-premise rules pass the
premise interpolant through unchanged (the acc rules re-partition keeping
both box stacks on the principal's side); nec / ros / rosbox give false when
the principal sits on the left part and true otherwise; two-premise rules
join the premise interpolants with | when the principal is on the left part
and & when it is on the right.

Premise partitions keep every retained formula on its side; formulas new in
a premise follow the principal's side unless the same formula already sits
in the other side's context.
"""

from __future__ import annotations

from .calculus import (
    ACC_L,
    ACC_R,
    AND_L1,
    AND_L2,
    AND_R,
    CUT,
    IMP_L,
    IMP_R,
    INIT,
    INIT_BOT,
    NEC,
    OR_L,
    OR_R1,
    OR_R2,
    ROS,
    ROSBOX,
    W_L,
    W_R,
    LogicId,
    Partition,
    ProofNode,
    Sequent,
    check_proof,
)
from .formula import (
    BOT,
    TRUE,
    And,
    Formula,
    Or,
    negate,
    signed_vars,
    signed_vars_of_set,
)
from .prover import decide
from .report import CheckItem, Report


class NotProvableError(ValueError):
    """Interpolation was requested for an unprovable implication."""


_ANTE_PRINCIPAL = {AND_L1, AND_L2, OR_L, IMP_L, ACC_L, W_L, ROS, ROSBOX}


def maehara(proof: ProofNode, part: Partition, logic: LogicId) -> Formula:
    """Interpolant for a partition of a cut-free proof's conclusion."""
    if proof.has_cut():
        raise ValueError("maehara requires a cut-free proof")
    result = check_proof(proof, logic)
    if not result.ok:
        raise ValueError(f"invalid proof at {result.path}: {result.reason}")
    part.validate()
    if part.of != proof.conclusion:
        raise ValueError("partition does not match the proof's conclusion")
    return _chi(proof, part.left.ante, part.left.succ)


def _chi(node: ProofNode, la: frozenset, ls: frozenset) -> Formula:
    rule = node.rule
    f = node.principal

    if rule == INIT:
        in_ante_left = f in la
        in_succ_left = f in ls
        if in_ante_left and in_succ_left:
            return BOT
        if not in_ante_left and not in_succ_left:
            return TRUE
        if in_ante_left:
            return f
        return negate(f)

    if rule == INIT_BOT:
        return BOT if BOT in la else TRUE

    if rule == NEC:
        return BOT if f in ls else TRUE

    if rule in (ROS, ROSBOX):
        return BOT if f in la else TRUE

    if rule == CUT:
        raise ValueError("maehara requires a cut-free proof")

    side = 1 if (f in la if rule in _ANTE_PRINCIPAL else f in ls) else 2

    sub = []
    for prem in node.premises:
        pa, ps = _premise_partition(prem.conclusion, node.conclusion, la, ls, side)
        sub.append(_chi(prem, pa, ps))

    if len(sub) == 1:
        return sub[0]
    return Or(sub[0], sub[1]) if side == 1 else And(sub[0], sub[1])


def _premise_partition(
    prem: Sequent, concl: Sequent, la: frozenset, ls: frozenset, side: int
) -> tuple[frozenset, frozenset]:
    pa = frozenset(
        x
        for x in prem.ante
        if x in la or (x not in concl.ante and side == 1)
    )
    ps = frozenset(
        x
        for x in prem.succ
        if x in ls or (x not in concl.succ and side == 1)
    )
    return pa, ps


def lyndon_interpolant(phi: Formula, psi: Formula, logic: LogicId) -> Formula:
    """Interpolant chi of a provable implication phi -> psi, computed from
    the partition (phi => ; => psi) of a cut-free proof of phi => psi."""
    s = Sequent.make([phi], [psi])
    proof = decide(s, logic)
    if proof is None:
        raise NotProvableError(f"{logic}: {phi} -> {psi} is not a theorem")
    part = Partition.make(Sequent.make([phi], []), Sequent.make([], [psi]), s)
    return maehara(proof, part, logic)


def verify_interpolant(
    phi: Formula, psi: Formula, chi: Formula, logic: LogicId, mode: str = "lyndon"
) -> Report:
    """Check both provability conditions and the (per-polarity or union)
    variable conditions; failures are reported, not raised."""
    if mode not in ("craig", "lyndon"):
        raise ValueError("mode must be 'craig' or 'lyndon'")
    sp, ss, sc = signed_vars(phi), signed_vars(psi), signed_vars(chi)
    items = [
        CheckItem(
            "phi -> chi provable",
            decide(Sequent.make([phi], [chi]), logic) is not None,
        ),
        CheckItem(
            "chi -> psi provable",
            decide(Sequent.make([chi], [psi]), logic) is not None,
        ),
    ]
    if mode == "lyndon":
        items.append(
            CheckItem("pos(chi) within pos(phi) & pos(psi)", sc.pos <= sp.pos & ss.pos)
        )
        items.append(
            CheckItem("neg(chi) within neg(phi) & neg(psi)", sc.neg <= sp.neg & ss.neg)
        )
    else:
        items.append(
            CheckItem("vars(chi) within vars(phi) & vars(psi)", sc.all <= sp.all & ss.all)
        )
    return Report(f"interpolant check [{mode}] in {logic}", tuple(items))


def verify_partition_interpolant(
    proof: ProofNode, part: Partition, chi: Formula, logic: LogicId
) -> Report:
    """Mechanical check of conditions (a)-(d) for a partition interpolant."""
    a1, s1 = part.left.ante, part.left.succ
    a2, s2 = part.right.ante, part.right.succ
    sv1a, sv1s = signed_vars_of_set(a1), signed_vars_of_set(s1)
    sv2a, sv2s = signed_vars_of_set(a2), signed_vars_of_set(s2)
    svc = signed_vars(chi)
    cond_a = decide(Sequent(a1, s1 | {chi}), logic) is not None
    cond_b = decide(Sequent(a2 | {chi}, s2), logic) is not None
    cond_c = svc.pos <= (sv1a.pos | sv1s.neg) & (sv2a.neg | sv2s.pos)
    cond_d = svc.neg <= (sv1a.neg | sv1s.pos) & (sv2a.pos | sv2s.neg)
    return Report(
        f"partition interpolant check in {logic}",
        (
            CheckItem("(a) left part proves chi", cond_a),
            CheckItem("(b) chi proves right part", cond_b),
            CheckItem("(c) positive atoms shared", cond_c),
            CheckItem("(d) negative atoms shared", cond_d),
        ),
    )
