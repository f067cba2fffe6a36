"""Propositionalization into classical logic: sharp/flat translations,
standard substitution, and cut-free proof emulation in LK.

The translations rewrite a modal formula into a classical one over base
atoms plus quote atoms.  Both are homomorphic on bottom, atoms, conjunction
and disjunction; an implication translates its antecedent with the opposite
translation.  For a maximal box stack box^k f (k >= 1, f not boxed):

  sharp(box^k f) = true                          if box^{k-1} f is a theorem
                 = q{box^k f} | sharp(box^{k-m+n} f)   else if k >= m > n
                 = q{box^k f}                    otherwise

  flat(box^k f)  = false                         if C(k, f)
                 = q{box^k f} & flat(box^{k-n+m} f)    else if k >= n > m
                 = q{box^k f}                    otherwise

where C(k, f) holds iff box^{k-1} f is refutable and the logic has the
rosbox rule with k >= 2 (plus variant, m = 0, n >= 2) or the ros rule
(R variant).  The provability side conditions are decided by the prover and
memoized per logic.

`emulate` maps a cut-free proof of G => D to an LK proof (cut allowed) of
flat(G) => sharp(D): initial sequents become LK proofs of flat(f) =>
sharp(f) found by classical proof search; LK rules map to themselves with
translated principals; nec becomes a proof of => true, ros/rosbox become
the false-axiom; the acc rules unfold the translated principal with one cut
against a projection/injection of its conjunction/disjunction shape.
"""

from __future__ import annotations

from .calculus import (
    ACC_L,
    ACC_R,
    AND_L1,
    AND_L2,
    CUT,
    IMP_L,
    IMP_R,
    INIT,
    INIT_BOT,
    NEC,
    OR_L,
    OR_R2,
    ROS,
    ROSBOX,
    W_L,
    W_R,
    LogicId,
    ProofNode,
    Sequent,
    check_proof,
)
from .formula import (
    BOT,
    TRUE,
    And,
    Bot,
    Box,
    Formula,
    Imp,
    Or,
    QuoteAtom,
    Var,
    box_decompose,
    boxes,
    has_quote_atoms,
    quote,
    signed_vars,
)
from .prover import decide, decide_classical, get_prover, weaken_to
from .report import CheckItem, Report


class EmulationError(RuntimeError):
    """A translation shape required by the emulation theorem did not hold;
    signals an invalid input proof or an internal bug."""


class Translator:
    """Sharp/flat translation engine for one logic, with memo tables for
    the translations and for the provability side conditions."""

    def __init__(self, logic: LogicId):
        self.logic = logic
        self._sharp: dict[Formula, Formula] = {}
        self._flat: dict[Formula, Formula] = {}
        self._theorem: dict[Formula, bool] = {}
        self._refutable: dict[Formula, bool] = {}

    def sharp(self, phi: Formula) -> Formula:
        if has_quote_atoms(phi):
            raise ValueError("sharp input must not contain quote atoms")
        return self._do_sharp(phi)

    def flat(self, phi: Formula) -> Formula:
        if has_quote_atoms(phi):
            raise ValueError("flat input must not contain quote atoms")
        return self._do_flat(phi)

    # -- side conditions ------------------------------------------------------

    def is_theorem(self, f: Formula) -> bool:
        hit = self._theorem.get(f)
        if hit is None:
            hit = decide(Sequent.make([], [f]), self.logic) is not None
            self._theorem[f] = hit
        return hit

    def is_refutable(self, f: Formula) -> bool:
        hit = self._refutable.get(f)
        if hit is None:
            hit = decide(Sequent.make([f], []), self.logic) is not None
            self._refutable[f] = hit
        return hit

    def _condition_c(self, k: int, core: Formula) -> bool:
        logic = self.logic
        if logic.variant == "plus" and logic.m == 0 and logic.n >= 2 and k >= 2:
            return self.is_refutable(boxes(k - 1, core))
        if logic.variant == "R":
            return self.is_refutable(boxes(k - 1, core))
        return False

    # -- recursions --------------------------------------------------------------

    def _do_sharp(self, phi: Formula) -> Formula:
        out = self._sharp.get(phi)
        if out is not None:
            return out
        m, n = self.logic.m, self.logic.n
        if isinstance(phi, (Bot, Var)):
            out = phi
        elif isinstance(phi, And):
            out = And(self._do_sharp(phi.left), self._do_sharp(phi.right))
        elif isinstance(phi, Or):
            out = Or(self._do_sharp(phi.left), self._do_sharp(phi.right))
        elif isinstance(phi, Imp):
            out = Imp(self._do_flat(phi.left), self._do_sharp(phi.right))
        else:
            k, core = box_decompose(phi)
            if self.is_theorem(boxes(k - 1, core)):
                out = TRUE
            elif k >= m > n:
                out = Or(quote(phi), self._do_sharp(boxes(k - m + n, core)))
            else:
                out = quote(phi)
        self._sharp[phi] = out
        return out

    def _do_flat(self, phi: Formula) -> Formula:
        out = self._flat.get(phi)
        if out is not None:
            return out
        m, n = self.logic.m, self.logic.n
        if isinstance(phi, (Bot, Var)):
            out = phi
        elif isinstance(phi, And):
            out = And(self._do_flat(phi.left), self._do_flat(phi.right))
        elif isinstance(phi, Or):
            out = Or(self._do_flat(phi.left), self._do_flat(phi.right))
        elif isinstance(phi, Imp):
            out = Imp(self._do_sharp(phi.left), self._do_flat(phi.right))
        else:
            k, core = box_decompose(phi)
            if self._condition_c(k, core):
                out = BOT
            elif k >= n > m:
                out = And(quote(phi), self._do_flat(boxes(k - n + m, core)))
            else:
                out = quote(phi)
        self._flat[phi] = out
        return out

    def sequent(self, s: Sequent) -> Sequent:
        """Memberwise translation: flat on the antecedent, sharp on the
        succedent."""
        return Sequent(
            frozenset(self._do_flat(f) for f in s.ante),
            frozenset(self._do_sharp(f) for f in s.succ),
        )


_translators: dict[LogicId, Translator] = {}


def get_translator(logic: LogicId) -> Translator:
    tr = _translators.get(logic)
    if tr is None:
        tr = _translators[logic] = Translator(logic)
    return tr


def sharp(phi: Formula, logic: LogicId) -> Formula:
    """Classical upper translation of a quote-free modal formula."""
    return get_translator(logic).sharp(phi)


def flat(phi: Formula, logic: LogicId) -> Formula:
    """Classical lower translation of a quote-free modal formula."""
    return get_translator(logic).flat(phi)


def std_subst(phi: Formula) -> Formula:
    """Replace every quote atom by its payload; identity on base atoms."""
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, Var):
        if isinstance(phi.atom, QuoteAtom):
            return phi.atom.payload
        return phi
    if isinstance(phi, Box):
        return Box(std_subst(phi.body))
    ctor = type(phi)
    return ctor(std_subst(phi.left), std_subst(phi.right))


# ---------------------------------------------------------------------------
# Emulation
# ---------------------------------------------------------------------------

def emulate(proof: ProofNode, logic: LogicId) -> ProofNode:
    """LK proof (cut allowed) of flat(ante) => sharp(succ) obtained from a
    valid cut-free proof."""
    if proof.has_cut():
        raise ValueError("emulate requires a cut-free proof")
    result = check_proof(proof, logic)
    if not result.ok:
        raise ValueError(f"invalid proof at {result.path}: {result.reason}")
    return _Emulator(get_translator(logic)).emulate(proof)


def _truth_proof() -> ProofNode:
    bot_init = ProofNode(Sequent.make([BOT], [BOT]), INIT, principal=BOT)
    return ProofNode(Sequent.make([], [TRUE]), IMP_R, principal=TRUE, premises=(bot_init,))


class _Emulator:
    def __init__(self, translator: Translator):
        self.tr = translator
        self.logic = translator.logic
        self._memo: dict[int, ProofNode] = {}

    def emulate(self, node: ProofNode) -> ProofNode:
        cached = self._memo.get(id(node))
        if cached is None:
            cached = self._emulate(node)
            self._memo[id(node)] = cached
        return cached

    def _emulate(self, node: ProofNode) -> ProofNode:
        rule = node.rule
        target = self.tr.sequent(node.conclusion)
        f = node.principal

        if rule == INIT:
            found = decide(target, self.logic)
            if found is None:
                raise EmulationError(f"flat does not dominate sharp on {f}")
            return found

        if rule == INIT_BOT:
            return ProofNode(Sequent.make([BOT], []), INIT_BOT)

        if rule == NEC:
            if self.tr.sharp(f) != TRUE:
                raise EmulationError(f"nec principal {f} does not sharpen to true")
            return _truth_proof()

        if rule in (ROS, ROSBOX):
            if self.tr.flat(f) != BOT:
                raise EmulationError(f"{rule} principal {f} does not flatten to false")
            return ProofNode(Sequent.make([BOT], []), INIT_BOT)

        if rule == ACC_L:
            return self._acc_left(node, target)

        if rule == ACC_R:
            return self._acc_right(node, target)

        if rule == CUT:
            raise ValueError("emulate requires a cut-free proof")

        sub = tuple(self.emulate(p) for p in node.premises)
        principal = None
        aux = None
        if f is not None:
            principal = (
                self.tr._do_flat(f) if rule in _ANTE_SIDE else self.tr._do_sharp(f)
            )
        if rule == IMP_L:
            x = principal.left  # sharp of the original antecedent part
            aux = Sequent(sub[0].conclusion.ante, sub[0].conclusion.succ - {x})
        return ProofNode(target, rule, principal, aux, sub)

    def _acc_left(self, node: ProofNode, target: Sequent) -> ProofNode:
        af = self.tr._do_flat(node.principal)
        if af == BOT:
            core = ProofNode(Sequent.make([BOT], []), INIT_BOT)
            return weaken_to(core, target)
        if not isinstance(af, And):
            raise EmulationError(f"accL principal flattens to unexpected {af}")
        bf = af.right
        sub = self.emulate(node.premises[0])
        binit = ProofNode(Sequent.make([bf], [bf]), INIT, principal=bf)
        proj = ProofNode(Sequent.make([af], [bf]), AND_L2, principal=af, premises=(binit,))
        concl = Sequent({af} | (sub.conclusion.ante - {bf}), sub.conclusion.succ)
        cut = ProofNode(
            concl,
            CUT,
            principal=bf,
            aux=Sequent.make([af], []),
            premises=(proj, sub),
        )
        return weaken_to(cut, target)

    def _acc_right(self, node: ProofNode, target: Sequent) -> ProofNode:
        asharp = self.tr._do_sharp(node.principal)
        if asharp == TRUE:
            return weaken_to(_truth_proof(), target)
        if not isinstance(asharp, Or):
            raise EmulationError(f"accR principal sharpens to unexpected {asharp}")
        bs = asharp.right
        sub = self.emulate(node.premises[0])
        binit = ProofNode(Sequent.make([bs], [bs]), INIT, principal=bs)
        inj = ProofNode(Sequent.make([bs], [asharp]), OR_R2, principal=asharp, premises=(binit,))
        concl = Sequent(sub.conclusion.ante, (sub.conclusion.succ - {bs}) | {asharp})
        cut = ProofNode(
            concl,
            CUT,
            principal=bs,
            aux=Sequent(sub.conclusion.ante, sub.conclusion.succ - {bs}),
            premises=(sub, inj),
        )
        return weaken_to(cut, target)


_ANTE_SIDE = {W_L, AND_L1, AND_L2, OR_L, IMP_L}


# ---------------------------------------------------------------------------
# Propositionalization conditions
# ---------------------------------------------------------------------------

def verify_propositionalization(pairs, logic: LogicId) -> Report:
    """Check the translation contract on a corpus of formula pairs.

    Per formula: round-trip provability (the substituted sharp implies the
    formula, the formula implies the substituted flat) and the signed-
    variable conditions for base atoms (3a) and quote atoms (3b), for both
    translations.  Per provable pair: the classical embedding
    flat(phi) => sharp(psi).  Only failures are itemized.
    """
    tr = get_translator(logic)
    failures: list[CheckItem] = []
    checked = 0

    formulas = []
    seen = set()
    for phi, psi in pairs:
        for f in (phi, psi):
            if f not in seen:
                seen.add(f)
                formulas.append(f)

    for f in formulas:
        fs, ff = tr.sharp(f), tr.flat(f)
        checked += 1
        if decide(Sequent.make([std_subst(fs)], [f]), logic) is None:
            failures.append(CheckItem(f"(1) subst sharp implies: {f}", False))
        checked += 1
        if decide(Sequent.make([f], [std_subst(ff)]), logic) is None:
            failures.append(CheckItem(f"(1) implies subst flat: {f}", False))
        for tag, t in (("sharp", fs), ("flat", ff)):
            checked += 1
            if not _variable_conditions(f, t):
                failures.append(CheckItem(f"(3) {tag} variables: {f}", False))

    for phi, psi in pairs:
        if decide(Sequent.make([phi], [psi]), logic) is None:
            continue
        checked += 1
        if not decide_classical(Sequent.make([tr.flat(phi)], [tr.sharp(psi)])):
            failures.append(CheckItem(f"(2) embedding: {phi} => {psi}", False))

    items = tuple(failures) + (
        CheckItem("summary", not failures, f"{checked} checks, {len(failures)} failures"),
    )
    return Report(f"propositionalization conditions in {logic}", items)


def _variable_conditions(f: Formula, translated: Formula) -> bool:
    sv_f = signed_vars(f)
    sv_t = signed_vars(translated)
    for positive, occurring in ((True, sv_t.pos), (False, sv_t.neg)):
        for atom in occurring:
            if isinstance(atom, QuoteAtom):
                sv_p = signed_vars(atom.payload)
                straight = sv_p.pos if positive else sv_p.neg
                swapped = sv_p.neg if positive else sv_p.pos
                if not (straight <= sv_f.pos and swapped <= sv_f.neg):
                    return False
            elif atom not in (sv_f.pos if positive else sv_f.neg):
                return False
    return True
