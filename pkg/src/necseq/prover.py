"""Decision procedures: backward proof search, forward saturation, truth tables.

`decide` runs backward, cut-free search: from the goal it applies rules
bottom-up, memoizing results per sequent.  Every premise of every backward
step consists of subformulas of the goal (the acc rules only add a
strictly shallower box stack over the same core), so the search lives in
the finite closure space and terminates; a branch-local visited set cuts
cycles, and failures observed under an active cycle are not memoized since
they are context-dependent.

`saturate_forward` is an independent oracle: it computes the least fixpoint
of all forward rule applications (including cut and weakening) over a fixed
finite universe of formulas.  The provable sequents over a universe are
upward closed under weakening, so the set is represented by its antichain of
subset-minimal elements; membership is domination by a minimal element.

`decide_classical` evaluates box-free sequents by truth tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .calculus import (
    ACC_L,
    ACC_R,
    AND_L1,
    AND_L2,
    AND_R,
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
    rule_set,
)
from .formula import (
    BOT,
    And,
    Atom,
    Bot,
    Box,
    Formula,
    Imp,
    Or,
    Var,
    atom_key,
    formula_key,
    signed_vars_of_set,
    subformulas,
)

DEFAULT_BUDGET = 2_000_000


class SearchBudgetExceeded(RuntimeError):
    """The configurable backward-search node budget ran out (diagnostic;
    the search space itself is finite)."""


@dataclass(frozen=True)
class ClosureSet:
    """Finite, subformula-closed formula universe for search/saturation.
    Box prefixes are downward closed: box^k f brings every box^j f, j <= k."""

    formulas: frozenset[Formula]

    def __len__(self) -> int:
        return len(self.formulas)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.formulas)

    def __contains__(self, f: Formula) -> bool:
        return f in self.formulas


def closure(s: Sequent) -> ClosureSet:
    """Smallest subformula-closed set containing all formulas of s."""
    out: frozenset[Formula] = frozenset()
    for f in s.ante | s.succ:
        out |= subformulas(f)
    return ClosureSet(out)


# ---------------------------------------------------------------------------
# Backward search
# ---------------------------------------------------------------------------

def weaken_to(proof: ProofNode, target: Sequent) -> ProofNode:
    """Pad a proof with wL/wR nodes (canonical order) up to a superset
    sequent."""
    concl = proof.conclusion
    if not concl.issubset(target):
        raise ValueError("weaken_to needs a superset target")
    for f in sorted(target.ante - concl.ante, key=formula_key):
        concl = Sequent(concl.ante | {f}, concl.succ)
        proof = ProofNode(concl, W_L, principal=f, premises=(proof,))
    for f in sorted(target.succ - concl.succ, key=formula_key):
        concl = Sequent(concl.ante, concl.succ | {f})
        proof = ProofNode(concl, W_R, principal=f, premises=(proof,))
    return proof


_UNPROVABLE = object()


class Prover:
    """Backward cut-free proof search for one logic, with a persistent memo
    table shared across queries.  Reentrant for independent instances; a
    single instance assumes one caller at a time."""

    def __init__(self, logic: LogicId, budget: int = DEFAULT_BUDGET):
        self.logic = logic
        self.budget = budget
        self.rules = rule_set(logic)
        self._memo: dict[Sequent, object] = {}
        self._expanded = 0

    def decide(self, s: Sequent) -> ProofNode | None:
        """Proof object (cut-free, checker-valid, concluding s) or None."""
        self._expanded = 0
        proof, _tainted = self._prove(s, set())
        return proof

    # -- search core --------------------------------------------------------

    def _prove(self, s: Sequent, path: set[Sequent]) -> tuple[ProofNode | None, bool]:
        hit = self._memo.get(s)
        if hit is not None:
            if hit is _UNPROVABLE:
                return None, False
            return hit, False
        if s in path:
            return None, True

        self._expanded += 1
        if self._expanded > self.budget:
            raise SearchBudgetExceeded(
                f"exceeded {self.budget} backward expansions deciding {s}"
            )

        path.add(s)
        tainted = False
        try:
            for premises, build in self._expansions(s):
                subproofs = []
                ok = True
                for prem in premises:
                    sub, sub_tainted = self._prove(prem, path)
                    if sub is None:
                        tainted |= sub_tainted
                        ok = False
                        break
                    subproofs.append(sub)
                if ok:
                    node = build(subproofs)
                    self._memo[s] = node
                    return node, False
        finally:
            path.discard(s)

        if not tainted:
            self._memo[s] = _UNPROVABLE
        return None, tainted

    def _expansions(
        self, s: Sequent
    ) -> Iterator[tuple[tuple[Sequent, ...], Callable[[list], ProofNode]]]:
        """Backward steps in the documented order: initial detection,
        bottom-left, propositional rules by principal position (antecedent
        then succedent, canonically sorted), accL/accR, rosbox/ros, nec."""
        ante, succ = s.ante, s.succ
        logic = self.logic

        shared = sorted(ante & succ, key=formula_key)
        if shared:
            f = shared[0]
            core = ProofNode(Sequent.make([f], [f]), INIT, principal=f)
            yield (), lambda subs, c=core: weaken_to(c, s)

        if BOT in ante:
            core = ProofNode(Sequent.make([BOT], []), INIT_BOT)
            yield (), lambda subs, c=core: weaken_to(c, s)

        for c in s.sorted_ante():
            if isinstance(c, And):
                prem = Sequent((ante - {c}) | {c.left, c.right}, succ)
                yield (prem,), self._build_and_left(s, c)
            elif isinstance(c, Or):
                p1 = Sequent((ante - {c}) | {c.left}, succ)
                p2 = Sequent((ante - {c}) | {c.right}, succ)
                yield (p1, p2), (
                    lambda subs, cc=c: ProofNode(
                        s, OR_L, principal=cc, premises=(subs[0], subs[1])
                    )
                )
            elif isinstance(c, Imp):
                p1 = Sequent(ante - {c}, succ | {c.left})
                p2 = Sequent((ante - {c}) | {c.right}, succ)
                aux = Sequent(ante - {c}, succ)
                yield (p1, p2), (
                    lambda subs, cc=c, ax=aux: ProofNode(
                        s, IMP_L, principal=cc, aux=ax, premises=(subs[0], subs[1])
                    )
                )

        for c in s.sorted_succ():
            if isinstance(c, And):
                p1 = Sequent(ante, (succ - {c}) | {c.left})
                p2 = Sequent(ante, (succ - {c}) | {c.right})
                yield (p1, p2), (
                    lambda subs, cc=c: ProofNode(
                        s, AND_R, principal=cc, premises=(subs[0], subs[1])
                    )
                )
            elif isinstance(c, Or):
                prem = Sequent(ante, (succ - {c}) | {c.left, c.right})
                yield (prem,), self._build_or_right(s, c)
            elif isinstance(c, Imp):
                prem = Sequent(ante | {c.left}, (succ - {c}) | {c.right})
                yield (prem,), (
                    lambda subs, cc=c: ProofNode(s, IMP_R, principal=cc, premises=(subs[0],))
                )

        if ACC_L in self.rules:
            for alpha in s.sorted_ante():
                beta = acc_companion(alpha, logic, left=True)
                if beta is None or beta in ante:
                    continue
                prem = Sequent(ante | {beta}, succ)
                yield (prem,), (
                    lambda subs, a=alpha: ProofNode(s, ACC_L, principal=a, premises=(subs[0],))
                )

        if ACC_R in self.rules:
            for alpha in s.sorted_succ():
                beta = acc_companion(alpha, logic, left=False)
                if beta is None or beta in succ:
                    continue
                prem = Sequent(ante, succ | {beta})
                yield (prem,), (
                    lambda subs, a=alpha: ProofNode(s, ACC_R, principal=a, premises=(subs[0],))
                )

        if ROSBOX in self.rules:
            for alpha in s.sorted_ante():
                if isinstance(alpha, Box) and isinstance(alpha.body, Box):
                    prem = Sequent.make([alpha.body], [])
                    core_concl = Sequent.make([alpha], [])
                    yield (prem,), (
                        lambda subs, a=alpha, cc=core_concl: weaken_to(
                            ProofNode(cc, ROSBOX, principal=a, premises=(subs[0],)), s
                        )
                    )

        if ROS in self.rules:
            for alpha in s.sorted_ante():
                if isinstance(alpha, Box):
                    prem = Sequent.make([alpha.body], [])
                    core_concl = Sequent.make([alpha], [])
                    yield (prem,), (
                        lambda subs, a=alpha, cc=core_concl: weaken_to(
                            ProofNode(cc, ROS, principal=a, premises=(subs[0],)), s
                        )
                    )

        for alpha in s.sorted_succ():
            if isinstance(alpha, Box):
                prem = Sequent.make([], [alpha.body])
                core_concl = Sequent.make([], [alpha])
                yield (prem,), (
                    lambda subs, a=alpha, cc=core_concl: weaken_to(
                        ProofNode(cc, NEC, principal=a, premises=(subs[0],)), s
                    )
                )

    @staticmethod
    def _build_and_left(s: Sequent, c: And) -> Callable[[list], ProofNode]:
        def build(subs):
            mid_concl = Sequent((s.ante - {c}) | {c.left, c}, s.succ)
            mid = ProofNode(mid_concl, AND_L2, principal=c, premises=(subs[0],))
            return ProofNode(s, AND_L1, principal=c, premises=(mid,))

        return build

    @staticmethod
    def _build_or_right(s: Sequent, c: Or) -> Callable[[list], ProofNode]:
        def build(subs):
            mid_concl = Sequent(s.ante, (s.succ - {c}) | {c.left, c})
            mid = ProofNode(mid_concl, OR_R2, principal=c, premises=(subs[0],))
            return ProofNode(s, OR_R1, principal=c, premises=(mid,))

        return build


_provers: dict[LogicId, Prover] = {}


def get_prover(logic: LogicId) -> Prover:
    """Shared per-logic prover (persistent memo across queries)."""
    prover = _provers.get(logic)
    if prover is None:
        prover = _provers[logic] = Prover(logic)
    return prover


def decide(s: Sequent, logic: LogicId, budget: int | None = None) -> ProofNode | None:
    """Cut-free proof of s in the logic's calculus, or None if unprovable."""
    if budget is not None:
        return Prover(logic, budget).decide(s)
    return get_prover(logic).decide(s)


# ---------------------------------------------------------------------------
# Forward saturation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProvableSet:
    """The set of provable sequents over a finite universe, represented by
    the antichain of subset-minimal provable sequents (the full set is its
    upward closure under weakening, within the universe)."""

    universe: frozenset[Formula]
    logic: LogicId
    minimal: frozenset[Sequent]

    def is_provable(self, s: Sequent) -> bool:
        if not (s.ante <= self.universe and s.succ <= self.universe):
            return False
        return any(m.issubset(s) for m in self.minimal)

    def __contains__(self, s: Sequent) -> bool:
        return self.is_provable(s)

    def sequents(self) -> Iterator[Sequent]:
        """Materialize every provable sequent; only sensible for tiny
        universes (guarded at 8 formulas = 65536 candidate sequents)."""
        if len(self.universe) > 8:
            raise ValueError("universe too large to materialize")
        members = sorted(self.universe, key=formula_key)
        k = len(members)
        for amask in range(1 << k):
            ante = frozenset(f for i, f in enumerate(members) if amask >> i & 1)
            for smask in range(1 << k):
                succ = frozenset(f for i, f in enumerate(members) if smask >> i & 1)
                s = Sequent(ante, succ)
                if self.is_provable(s):
                    yield s


def saturate_forward(universe, logic: LogicId) -> ProvableSet:
    """Least fixpoint of forward rule application over the universe.

    Seeds all initial sequents, then closes under every active rule
    (including cut, with cut formulas drawn from the universe) applied
    modulo weakening: each step combines minimal provable sequents into the
    strongest derivable conclusion, and the antichain absorbs the rest.
    """
    formulas = frozenset(universe.formulas if isinstance(universe, ClosureSet) else universe)
    rules = rule_set(logic)
    minimal: list[Sequent] = []

    def dominated(s: Sequent) -> bool:
        return any(m.issubset(s) for m in minimal)

    pending_change = [False]

    def add(s: Sequent) -> None:
        if dominated(s):
            return
        minimal[:] = [m for m in minimal if not s.issubset(m)]
        minimal.append(s)
        pending_change[0] = True

    for f in formulas:
        add(Sequent.make([f], [f]))
    if BOT in formulas:
        add(Sequent.make([BOT], []))

    conjs = [f for f in formulas if isinstance(f, And)]
    disjs = [f for f in formulas if isinstance(f, Or)]
    imps = [f for f in formulas if isinstance(f, Imp)]
    boxed = [f for f in formulas if isinstance(f, Box)]

    acc_l_pairs = []
    acc_r_pairs = []
    if ACC_L in rules:
        for alpha in boxed:
            beta = acc_companion(alpha, logic, left=True)
            if beta is not None:
                acc_l_pairs.append((alpha, beta))
    if ACC_R in rules:
        for alpha in boxed:
            beta = acc_companion(alpha, logic, left=False)
            if beta is not None:
                acc_r_pairs.append((alpha, beta))

    while True:
        pending_change[0] = False
        snapshot = list(minimal)

        for m in snapshot:
            for c in conjs:
                for x in (c.left, c.right):
                    if x in m.ante:
                        add(Sequent((m.ante - {x}) | {c}, m.succ))
            for c in disjs:
                for x in (c.left, c.right):
                    if x in m.succ:
                        add(Sequent(m.ante, (m.succ - {x}) | {c}))
            for c in imps:
                if c.left in m.ante or c.right in m.succ:
                    add(Sequent(m.ante - {c.left}, (m.succ - {c.right}) | {c}))
            for alpha, beta in acc_l_pairs:
                if beta in m.ante:
                    add(Sequent((m.ante - {beta}) | {alpha}, m.succ))
            for alpha, beta in acc_r_pairs:
                if beta in m.succ:
                    add(Sequent(m.ante, (m.succ - {beta}) | {alpha}))

        provable_now = lambda s: any(m.issubset(s) for m in minimal)
        for c in boxed:
            if provable_now(Sequent.make([], [c.body])):
                add(Sequent.make([], [c]))
            if ROS in rules and provable_now(Sequent.make([c.body], [])):
                add(Sequent.make([c], []))
            if (
                ROSBOX in rules
                and isinstance(c.body, Box)
                and provable_now(Sequent.make([c.body], []))
            ):
                add(Sequent.make([c], []))

        snapshot = list(minimal)
        for m1 in snapshot:
            for m2 in snapshot:
                for c in conjs:
                    if c.left in m1.succ and c.right in m2.succ:
                        add(
                            Sequent(
                                m1.ante | m2.ante,
                                (m1.succ - {c.left}) | (m2.succ - {c.right}) | {c},
                            )
                        )
                for c in disjs:
                    if c.left in m1.ante and c.right in m2.ante:
                        add(
                            Sequent(
                                (m1.ante - {c.left}) | (m2.ante - {c.right}) | {c},
                                m1.succ | m2.succ,
                            )
                        )
                for c in imps:
                    if c.left in m1.succ and c.right in m2.ante:
                        add(
                            Sequent(
                                m1.ante | (m2.ante - {c.right}) | {c},
                                (m1.succ - {c.left}) | m2.succ,
                            )
                        )
                for x in m1.succ & m2.ante:
                    add(Sequent(m1.ante | (m2.ante - {x}), (m1.succ - {x}) | m2.succ))

        if not pending_change[0]:
            break

    return ProvableSet(formulas, logic, frozenset(minimal))


# ---------------------------------------------------------------------------
# Classical validity
# ---------------------------------------------------------------------------

class NotClassicalError(ValueError):
    """A box node appeared where only classical formulas are allowed."""


def _eval(f: Formula, env: dict[Atom, bool]) -> bool:
    if isinstance(f, Bot):
        return False
    if isinstance(f, Var):
        return env[f.atom]
    if isinstance(f, And):
        return _eval(f.left, env) and _eval(f.right, env)
    if isinstance(f, Or):
        return _eval(f.left, env) or _eval(f.right, env)
    if isinstance(f, Imp):
        return (not _eval(f.left, env)) or _eval(f.right, env)
    raise NotClassicalError(f"box node in classical evaluation: {f}")


def eval_formula(f: Formula, env: dict[Atom, bool]) -> bool:
    """Evaluate a classical formula under an atom assignment."""
    return _eval(f, env)


def decide_classical(s: Sequent) -> bool:
    """Truth-table validity of a box-free sequent: the conjunction of the
    antecedent entails the disjunction of the succedent.  Quote atoms are
    opaque atoms.  Raises NotClassicalError on box nodes."""
    for f in s.ante | s.succ:
        _require_classical(f)
    atoms = sorted(signed_vars_of_set(s.ante | s.succ).all, key=atom_key)
    k = len(atoms)
    for mask in range(1 << k):
        env = {a: bool(mask >> i & 1) for i, a in enumerate(atoms)}
        if all(_eval(f, env) for f in s.ante) and not any(
            _eval(f, env) for f in s.succ
        ):
            return False
    return True


def _require_classical(f: Formula) -> None:
    if isinstance(f, Box):
        raise NotClassicalError(f"box node in classical sequent: {f}")
    if isinstance(f, (And, Or, Imp)):
        _require_classical(f.left)
        _require_classical(f.right)
