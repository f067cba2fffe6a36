"""Uniform Lyndon interpolation: classical post-interpolants by polarity-
restricted clause enumeration, and the modal pipeline through the flat
translation.

The classical engine computes, for a formula phi and forbidden atom sets
(P+, P-), the strongest consequence of phi whose positive atoms avoid P+
and negative atoms avoid P-: it enumerates all non-tautological clauses
with positive literals from pos(phi) - P+ and negative literals from
neg(phi) - P-, keeps the subset-minimal ones entailed by phi (truth
tables), and conjoins them in a canonical order.  Dropping literals over
atoms outside the formula's vocabulary loses nothing: such literals can
always be removed from an entailed clause.

The modal pipeline flattens phi, extends the forbidden sets with every
quote atom whose payload fails the corresponding safety check, runs the
classical engine, and substitutes payloads back in.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .calculus import LogicId, Sequent
from .formula import (
    BOT,
    TRUE,
    Atom,
    BaseAtom,
    Formula,
    Imp,
    Or,
    And,
    QuoteAtom,
    Var,
    atom_key,
    has_quote_atoms,
    is_classical,
    signed_vars,
)
from .prop18n import flat, std_subst
from .prover import NotClassicalError, decide, eval_formula
from .report import CheckItem, Report

DEFAULT_ATOM_LIMIT = 14


class AllowedAtomLimitError(RuntimeError):
    """Too many allowed atoms for clause enumeration (configurable bound)."""


@dataclass(frozen=True)
class ForbiddenSets:
    """Forbidden positive / negative atom sets.  The modal pipeline requires
    base atoms only; the classical engine also accepts quote atoms."""

    ppos: frozenset[Atom]
    pneg: frozenset[Atom]

    @staticmethod
    def make(ppos=(), pneg=()) -> "ForbiddenSets":
        return ForbiddenSets(frozenset(ppos), frozenset(pneg))

    def base_only(self) -> bool:
        return all(isinstance(a, BaseAtom) for a in self.ppos | self.pneg)


def safety(psi: Formula, forbidden: ForbiddenSets) -> tuple[bool, bool]:
    """(plus_safe, minus_safe): the straight and swapped pairings of the
    formula's signed variables against the forbidden sets are empty."""
    sv = signed_vars(psi)
    plus_safe = not (forbidden.ppos & sv.pos) and not (forbidden.pneg & sv.neg)
    minus_safe = not (forbidden.ppos & sv.neg) and not (forbidden.pneg & sv.pos)
    return plus_safe, minus_safe


# ---------------------------------------------------------------------------
# Classical engine
# ---------------------------------------------------------------------------

def _literal_key(lit: tuple[Atom, bool]):
    atom, positive = lit
    return (atom_key(atom), 0 if positive else 1)


def _clause_formula(clause: tuple[tuple[Atom, bool], ...]) -> Formula:
    if not clause:
        return BOT
    lits = [Var(a) if positive else Imp(Var(a), BOT) for a, positive in clause]
    out = lits[-1]
    for lit in reversed(lits[:-1]):
        out = Or(lit, out)
    return out


def classical_post_interpolant(
    phi: Formula,
    forbidden: ForbiddenSets,
    max_allowed_atoms: int = DEFAULT_ATOM_LIMIT,
) -> Formula:
    """Strongest polarity-respecting consequence of a classical formula.

    Output is canonical: the subset-minimal entailed clauses sorted by
    (length, literal keys), literals within a clause sorted by (atom,
    polarity), both disjunction and conjunction folded to the right.
    Returns true when no allowed clause is entailed and false when the
    empty clause is (phi unsatisfiable).
    """
    if not is_classical(phi):
        raise NotClassicalError(f"post-interpolant input must be box-free: {phi}")
    sv = signed_vars(phi)
    allowed_pos = sv.pos - forbidden.ppos
    allowed_neg = sv.neg - forbidden.pneg
    if len(allowed_pos) + len(allowed_neg) > max_allowed_atoms:
        raise AllowedAtomLimitError(
            f"{len(allowed_pos)} + {len(allowed_neg)} allowed atoms exceed "
            f"the bound {max_allowed_atoms}"
        )

    atoms = sorted(sv.all, key=atom_key)
    models: list[frozenset[Atom]] = []
    for mask in range(1 << len(atoms)):
        env = {a: bool(mask >> i & 1) for i, a in enumerate(atoms)}
        if eval_formula(phi, env):
            models.append(frozenset(a for a in atoms if env[a]))

    literals = sorted(
        [(a, True) for a in allowed_pos] + [(a, False) for a in allowed_neg],
        key=_literal_key,
    )

    kept: list[tuple[tuple[Atom, bool], ...]] = []
    kept_sets: list[frozenset[tuple[Atom, bool]]] = []
    for size in range(len(literals) + 1):
        for clause in combinations(literals, size):
            atoms_pos = {a for a, positive in clause if positive}
            atoms_neg = {a for a, positive in clause if not positive}
            if atoms_pos & atoms_neg:
                continue  # tautological
            clause_set = frozenset(clause)
            if any(k <= clause_set for k in kept_sets):
                continue  # subsumed by a smaller kept clause
            if all(
                atoms_pos & m or (atoms_neg - m) for m in models
            ):
                kept.append(clause)
                kept_sets.append(clause_set)

    if not kept:
        return TRUE
    if kept[0] == ():
        return BOT
    kept.sort(key=lambda cl: (len(cl), tuple(_literal_key(l) for l in cl)))
    conj = [_clause_formula(cl) for cl in kept]
    out = conj[-1]
    for part in reversed(conj[:-1]):
        out = And(part, out)
    return out


# ---------------------------------------------------------------------------
# Modal pipeline
# ---------------------------------------------------------------------------

def modal_post_interpolant(
    phi: Formula, forbidden: ForbiddenSets, logic: LogicId
) -> Formula:
    """Post-interpolant of (phi, P+, P-) in the given logic.

    Flattens phi, adds to the forbidden sets every quote atom of the
    flattening whose payload is not +-safe (resp. not --safe), applies the
    classical engine, and maps quote atoms back to their payloads.
    """
    if has_quote_atoms(phi):
        raise ValueError("modal post-interpolation input must be quote-free")
    if not forbidden.base_only():
        raise ValueError("forbidden sets must contain base atoms only")
    fb = flat(phi, logic)
    quotes = {a for a in signed_vars(fb).all if isinstance(a, QuoteAtom)}
    qpos = set(forbidden.ppos)
    qneg = set(forbidden.pneg)
    for a in quotes:
        plus_safe, minus_safe = safety(a.payload, forbidden)
        if not plus_safe:
            qpos.add(a)
        if not minus_safe:
            qneg.add(a)
    chi_prime = classical_post_interpolant(fb, ForbiddenSets.make(qpos, qneg))
    return std_subst(chi_prime)


def verify_post_interpolant(
    phi: Formula,
    chi: Formula,
    forbidden: ForbiddenSets,
    psi_pool,
    logic: LogicId,
) -> Report:
    """Check the three post-interpolant conditions.

    (1) signed variables of chi within those of phi minus the forbidden
    sets; (2) phi -> chi provable; (3) for every pool member psi that
    avoids the forbidden sets and is a provable consequence of phi, chi ->
    psi is provable.  Condition (3) is sampled over the supplied pool, not
    universally quantified.
    """
    sv_phi, sv_chi = signed_vars(phi), signed_vars(chi)
    items = [
        CheckItem(
            "(1) positive vars allowed", sv_chi.pos <= sv_phi.pos - forbidden.ppos
        ),
        CheckItem(
            "(1) negative vars allowed", sv_chi.neg <= sv_phi.neg - forbidden.pneg
        ),
        CheckItem(
            "(2) phi -> chi provable",
            decide(Sequent.make([phi], [chi]), logic) is not None,
        ),
    ]
    applicable = 0
    failures = 0
    for psi in psi_pool:
        sv_psi = signed_vars(psi)
        if forbidden.ppos & sv_psi.pos or forbidden.pneg & sv_psi.neg:
            continue
        if decide(Sequent.make([phi], [psi]), logic) is None:
            continue
        applicable += 1
        if decide(Sequent.make([chi], [psi]), logic) is None:
            failures += 1
            items.append(CheckItem(f"(3) chi -> {psi}", False))
    items.append(
        CheckItem(
            "(3) sampled pool consequences",
            failures == 0,
            f"{applicable} applicable, {failures} failures",
        )
    )
    return Report(
        f"post-interpolant check in {logic} (condition 3 sampled over the pool)",
        tuple(items),
    )
