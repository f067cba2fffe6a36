#!/usr/bin/env python3
"""End-to-end tour: decision, interpolation, translation, uniform
interpolation, and cut elimination on a few named instances.

Usage: python3 scripts/showcase.py
"""

from __future__ import annotations

from necseq import (
    ForbiddenSets,
    ProofNode,
    Sequent,
    check_proof,
    decide,
    eliminate_cuts,
    flat,
    lyndon_interpolant,
    modal_post_interpolant,
    parse_formula,
    parse_logic,
    parse_sequent,
    print_formula,
    print_sequent,
    sharp,
    verify_interpolant,
    verify_post_interpolant,
)
from necseq.calculus import CUT
from necseq.formula import BaseAtom


def banner(text: str) -> None:
    print()
    print(text)
    print("-" * len(text))


def main() -> None:
    banner("Decision procedure")
    for spec, text in [
        ("NA(2,1)", "=> box p -> box box p"),
        ("NA(1,1)", "=> box p -> box box p"),
        ("NA(0,2)", "box box box false =>"),
        ("N+A(0,2)", "box box box false =>"),
        ("NRA(1,1)", "box false =>"),
    ]:
        logic = parse_logic(spec)
        s = parse_sequent(text)
        verdict = "provable" if decide(s, logic) is not None else "unprovable"
        print(f"{spec:>9}  {print_sequent(s):<34} {verdict}")

    banner("Lyndon interpolation")
    logic = parse_logic("NA(1,1)")
    phi = parse_formula("box p & box q")
    psi = parse_formula("box p | r")
    chi = lyndon_interpolant(phi, psi, logic)
    print(f"{print_formula(phi)}  ->  {print_formula(psi)}")
    print(f"interpolant: {print_formula(chi)}")
    print(verify_interpolant(phi, psi, chi, logic).render())

    banner("Sharp / flat translations")
    for spec, text in [("NA(2,1)", "box box p"), ("NA(1,2)", "box box p")]:
        logic = parse_logic(spec)
        f = parse_formula(text)
        print(f"{spec:>9}  sharp({text}) = {print_formula(sharp(f, logic))}")
        print(f"{spec:>9}  flat({text})  = {print_formula(flat(f, logic))}")

    banner("Uniform post-interpolant")
    logic = parse_logic("NA(1,1)")
    phi = parse_formula("box p & box q")
    forbidden = ForbiddenSets.make([BaseAtom("q")])
    chi = modal_post_interpolant(phi, forbidden, logic)
    print(f"phi = {print_formula(phi)}, forbidden positive q")
    print(f"post-interpolant: {print_formula(chi)}")
    pool = [parse_formula("box p"), parse_formula("box p | r")]
    print(verify_post_interpolant(phi, chi, forbidden, pool, logic).render())

    banner("Cut elimination")
    logic = parse_logic("NA(2,1)")
    s1 = parse_sequent("p & q => q & p")
    left = decide(s1, logic)
    mid = parse_formula("q & p")
    right = decide(Sequent.make([mid], [mid]), logic)
    cut = ProofNode(
        Sequent(left.conclusion.ante, right.conclusion.succ),
        CUT,
        principal=mid,
        aux=Sequent(left.conclusion.ante, left.conclusion.succ - {mid}),
        premises=(left, right),
    )
    print(f"proof of {print_sequent(cut.conclusion)} with one cut "
          f"({cut.count_nodes()} nodes)")
    free = eliminate_cuts(cut, logic)
    print(f"cut-free: {not free.has_cut()}, checker: "
          f"{check_proof(free, logic).ok}, nodes: {free.count_nodes()}")


if __name__ == "__main__":
    main()
