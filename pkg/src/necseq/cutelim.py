"""Cut elimination: rewrite a valid proof into a cut-free proof of the same
end-sequent.

Each uppermost cut (both subproofs already cut-free) is reduced by case
analysis, recursing along the lexicographic measure (cut-formula size,
combined subproof length):

* an initial sequent on either side discharges the cut outright;
* a weakening last rule shrinks one side (or removes the cut formula);
* when the cut formula is not principal on one side, the cut permutes above
  that side's last rule, re-applying the rule with the enlarged context;
* principal/principal on the propositional connectives are the usual
  reductions to cuts on the immediate subformulas (with pre-cuts cleaning
  residual copies of the cut formula out of the premises, which set-based
  sequents permit);
* nec against accL: cut the accL premise against the boxed conclusion
  (shorter proof), strip nec layers off the boxed proof down to the
  companion depth, then cut on the strictly smaller companion formula;
  accR against ros is the mirror image;
* nec against ros/rosbox would prove the empty sequent and cannot occur in
  a valid proof; reaching it raises CutEliminationError.

Sequents are sets, so contraction is implicit and reductions may re-supply
an active formula by weakening before re-applying a rule.
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
    ProofNode,
    Sequent,
    acc_companion,
    check_proof,
)
from .formula import Formula, box_decompose, formula_key
from .prover import weaken_to


class CutEliminationError(RuntimeError):
    """Internal inconsistency: a reduction reached a state only possible for
    invalid input proofs (e.g. a cut concluding the empty sequent)."""


_SUCC_PRINCIPAL = {AND_R, OR_R1, OR_R2, IMP_R, NEC, ACC_R}
_ANTE_PRINCIPAL = {AND_L1, AND_L2, OR_L, IMP_L, ROS, ROSBOX, ACC_L}


def eliminate_cuts(proof: ProofNode, logic: LogicId) -> ProofNode:
    """Cut-free proof with the same conclusion; input must pass check_proof."""
    result = check_proof(proof, logic)
    if not result.ok:
        raise ValueError(
            f"input proof invalid at {result.path}: {result.reason}"
        )
    return _Eliminator(logic).transform(proof)


def lower_box(proof: ProofNode, logic: LogicId) -> ProofNode:
    """From a cut-free proof of => box^n f, obtain one of => box^m f by
    peeling nec layers; requires n > m and a conclusion of box depth >= n."""
    if logic.n <= logic.m:
        raise ValueError("lower_box requires n > m")
    if proof.has_cut():
        raise ValueError("lower_box requires a cut-free proof")
    concl = proof.conclusion
    if concl.ante or len(concl.succ) != 1:
        raise ValueError("lower_box conclusion must be => box^n f")
    (target,) = concl.succ
    depth, _core = box_decompose(target)
    if depth < logic.n:
        raise ValueError("conclusion is shallower than box^n f")
    return _peel_nec(proof, logic.n - logic.m)


def _peel_nec(proof: ProofNode, count: int) -> ProofNode:
    """Strip `count` nec layers, skipping no-op weakenings."""
    while count > 0:
        if proof.rule == NEC:
            proof = proof.premises[0]
            count -= 1
        elif (
            proof.rule in (W_R, W_L)
            and proof.premises[0].conclusion == proof.conclusion
        ):
            proof = proof.premises[0]
        else:
            raise CutEliminationError(
                f"expected nec above {proof.conclusion}, found {proof.rule}"
            )
    return proof


def _peel_ros(proof: ProofNode, count: int) -> ProofNode:
    """Strip `count` ros layers, skipping no-op weakenings."""
    while count > 0:
        if proof.rule == ROS:
            proof = proof.premises[0]
            count -= 1
        elif (
            proof.rule in (W_R, W_L)
            and proof.premises[0].conclusion == proof.conclusion
        ):
            proof = proof.premises[0]
        else:
            raise CutEliminationError(
                f"expected ros above {proof.conclusion}, found {proof.rule}"
            )
    return proof


def _cut_formula(node: ProofNode) -> Formula:
    if node.principal is not None:
        return node.principal
    p1, p2 = (pr.conclusion for pr in node.premises)
    shared = sorted(p1.succ & p2.ante, key=formula_key)
    if not shared:
        raise CutEliminationError("cut node without a cut formula")
    return shared[0]


class _Eliminator:
    def __init__(self, logic: LogicId):
        self.logic = logic
        self._transformed: dict[int, ProofNode] = {}

    # -- outer loop ----------------------------------------------------------

    def transform(self, node: ProofNode) -> ProofNode:
        """Eliminate cuts bottom-up: children first, so every cut handled is
        uppermost (its subproofs are already cut-free)."""
        cached = self._transformed.get(id(node))
        if cached is not None:
            return cached
        premises = tuple(self.transform(p) for p in node.premises)
        if node.rule == CUT:
            phi = _cut_formula(node)
            reduced = self.reduce(premises[0], premises[1], phi)
            out = weaken_to(reduced, node.conclusion)
        elif premises == node.premises:
            out = node
        else:
            out = ProofNode(node.conclusion, node.rule, node.principal, node.aux, premises)
        self._transformed[id(node)] = out
        return out

    # -- single cut reduction --------------------------------------------------

    def reduce(self, left: ProofNode, right: ProofNode, phi: Formula) -> ProofNode:
        """Cut-free proof of (left.ante | right.ante - phi) =>
        (left.succ - phi | right.succ) from cut-free subproofs."""
        lc, rc = left.conclusion, right.conclusion
        target = Sequent(lc.ante | (rc.ante - {phi}), (lc.succ - {phi}) | rc.succ)

        # degenerate instances: one side does not actually use the formula
        if phi not in lc.succ:
            return weaken_to(left, target)
        if phi not in rc.ante:
            return weaken_to(right, target)

        # initial sequents; an initBot right premise (phi = false) resolves
        # through the left permutation below
        if left.rule == INIT:
            return weaken_to(right, target)
        if right.rule == INIT:
            return weaken_to(left, target)

        # weakening last rules
        if left.rule in (W_R, W_L):
            prem = left.premises[0]
            if phi not in prem.conclusion.succ:
                return weaken_to(prem, target)
            return weaken_to(self.reduce(prem, right, phi), target)
        if right.rule in (W_R, W_L):
            prem = right.premises[0]
            if phi not in prem.conclusion.ante:
                return weaken_to(prem, target)
            return weaken_to(self.reduce(left, prem, phi), target)

        left_principal = left.rule in _SUCC_PRINCIPAL and left.principal == phi
        if not left_principal:
            return self._permute_left(left, right, phi, target)

        right_principal = right.rule in _ANTE_PRINCIPAL and right.principal == phi
        if not right_principal:
            return self._permute_right(left, right, phi, target)

        return self._principal_pair(left, right, phi, target)

    # -- permutations ------------------------------------------------------------

    def _permute_left(
        self, left: ProofNode, right: ProofNode, phi: Formula, target: Sequent
    ) -> ProofNode:
        reqs, aux = self._required_premises(left.rule, left.principal, target)
        if reqs is None:
            raise CutEliminationError(
                f"cut formula in succedent cannot be non-principal for {left.rule}"
            )
        premises = []
        for sub, req in zip(left.premises, reqs):
            if phi in sub.conclusion.succ:
                sub = self.reduce(sub, right, phi)
            premises.append(weaken_to(sub, req))
        return ProofNode(target, left.rule, left.principal, aux, tuple(premises))

    def _permute_right(
        self, left: ProofNode, right: ProofNode, phi: Formula, target: Sequent
    ) -> ProofNode:
        reqs, aux = self._required_premises(right.rule, right.principal, target)
        if reqs is None:
            raise CutEliminationError(
                f"cut formula in antecedent cannot be non-principal for {right.rule}"
            )
        premises = []
        for sub, req in zip(right.premises, reqs):
            if phi in sub.conclusion.ante:
                sub = self.reduce(left, sub, phi)
            premises.append(weaken_to(sub, req))
        return ProofNode(target, right.rule, right.principal, aux, tuple(premises))

    def _required_premises(self, rule: str, c: Formula, target: Sequent):
        """Premise sequents for re-applying `rule` with conclusion `target`
        (principal kept in the context, which set sequents permit)."""
        ante, succ = target.ante, target.succ
        if rule == AND_L1:
            return [Sequent(ante | {c.left}, succ)], None
        if rule == AND_L2:
            return [Sequent(ante | {c.right}, succ)], None
        if rule == AND_R:
            return [Sequent(ante, succ | {c.left}), Sequent(ante, succ | {c.right})], None
        if rule == OR_L:
            return [Sequent(ante | {c.left}, succ), Sequent(ante | {c.right}, succ)], None
        if rule == OR_R1:
            return [Sequent(ante, succ | {c.left})], None
        if rule == OR_R2:
            return [Sequent(ante, succ | {c.right})], None
        if rule == IMP_R:
            return [Sequent(ante | {c.left}, succ | {c.right})], None
        if rule == IMP_L:
            reqs = [Sequent(ante, succ | {c.left}), Sequent(ante | {c.right}, succ)]
            return reqs, Sequent(ante, succ)
        if rule == ACC_L:
            beta = acc_companion(c, self.logic, left=True)
            if beta is None:
                raise CutEliminationError("accL principal too shallow")
            return [Sequent(ante | {beta}, succ)], None
        if rule == ACC_R:
            beta = acc_companion(c, self.logic, left=False)
            if beta is None:
                raise CutEliminationError("accR principal too shallow")
            return [Sequent(ante, succ | {beta})], None
        return None, None

    # -- principal/principal -------------------------------------------------------

    def _principal_pair(
        self, left: ProofNode, right: ProofNode, phi: Formula, target: Sequent
    ) -> ProofNode:
        lrule, rrule = left.rule, right.rule

        if lrule == NEC:
            if rrule == ACC_L:
                return self._nec_vs_accl(left, right, phi, target)
            if rrule in (ROS, ROSBOX):
                raise CutEliminationError(
                    "cut of nec against ros/rosbox proves the empty sequent; "
                    "the input proof cannot be valid"
                )
            raise CutEliminationError(f"nec principal cut against {rrule}")

        if lrule == ACC_R:
            if rrule == ROS:
                return self._accr_vs_ros(left, right, phi, target)
            raise CutEliminationError(f"accR principal cut against {rrule}")

        if lrule == AND_R and rrule in (AND_L1, AND_L2):
            i = 0 if rrule == AND_L1 else 1
            x = phi.left if i == 0 else phi.right
            lx = left.premises[i]
            r1 = right.premises[0]
            if phi in lx.conclusion.succ:
                lx = self.reduce(lx, right, phi)
            if phi in r1.conclusion.ante:
                r1 = self.reduce(left, r1, phi)
            return weaken_to(self.reduce(lx, r1, x), target)

        if lrule in (OR_R1, OR_R2) and rrule == OR_L:
            i = 0 if lrule == OR_R1 else 1
            x = phi.left if i == 0 else phi.right
            l1 = left.premises[0]
            rx = right.premises[i]
            if phi in l1.conclusion.succ:
                l1 = self.reduce(l1, right, phi)
            if phi in rx.conclusion.ante:
                rx = self.reduce(left, rx, phi)
            return weaken_to(self.reduce(l1, rx, x), target)

        if lrule == IMP_R and rrule == IMP_L:
            x, y = phi.left, phi.right
            l1 = left.premises[0]
            r1, r2 = right.premises
            if phi in l1.conclusion.succ:
                l1 = self.reduce(l1, right, phi)
            if phi in r1.conclusion.ante:
                r1 = self.reduce(left, r1, phi)
            if phi in r2.conclusion.ante:
                r2 = self.reduce(left, r2, phi)
            mid = self.reduce(l1, r2, y)
            return weaken_to(self.reduce(r1, mid, x), target)

        raise CutEliminationError(f"principal cut of {lrule} against {rrule}")

    def _nec_vs_accl(
        self, left: ProofNode, right: ProofNode, phi: Formula, target: Sequent
    ) -> ProofNode:
        beta = acc_companion(phi, self.logic, left=True)
        if beta is None:
            raise CutEliminationError("accL principal too shallow")
        prem = right.premises[0]
        cleaned = self.reduce(left, prem, phi)
        lowered = _peel_nec(left, self.logic.n - self.logic.m)
        return weaken_to(self.reduce(lowered, cleaned, beta), target)

    def _accr_vs_ros(
        self, left: ProofNode, right: ProofNode, phi: Formula, target: Sequent
    ) -> ProofNode:
        beta = acc_companion(phi, self.logic, left=False)
        if beta is None:
            raise CutEliminationError("accR principal too shallow")
        prem = left.premises[0]
        cleaned = self.reduce(prem, right, phi)
        lowered = _peel_ros(right, self.logic.m - self.logic.n)
        return weaken_to(self.reduce(cleaned, lowered, beta), target)
