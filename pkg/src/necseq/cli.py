"""Command-line interface.

Subcommands:

  prove        decide a sequent (exit 0 provable, 1 unprovable)
  interpolate  interpolant of phi -> psi with a verification report
  uniform     post-interpolant for (phi, P+, P-) with a verification report
  translate    sharp or flat translation of a formula
  check-proof  validate a proof JSON file
  elim-cut     rewrite a proof JSON file cut-free
  emulate      translate a cut-free proof into classical LK

Exit codes: 0 success/provable, 1 unprovable, 2 parse/usage/internal error.
--format json emits machine-readable results on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .calculus import (
    LogicId,
    Partition,
    Sequent,
    check_proof,
    parse_logic,
    parse_sequent,
    print_sequent,
    proof_from_json_text,
    proof_to_json,
    proof_to_json_text,
)
from .cutelim import CutEliminationError, eliminate_cuts
from .formula import ParseError, parse_formula, print_formula, BaseAtom
from .interp import maehara, verify_interpolant
from .prop18n import emulate as emulate_proof
from .prop18n import flat, sharp
from .prover import Prover, SearchBudgetExceeded, decide
from .ulip import ForbiddenSets, modal_post_interpolant, verify_post_interpolant

EXIT_OK = 0
EXIT_UNPROVABLE = 1
EXIT_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="necseq",
        description="Sequent calculi, interpolation, and classical "
        "translations for pure-necessitation modal logics.",
    )
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_logic(p):
        p.add_argument(
            "--logic",
            required=True,
            help='logic spec: "NA(m,n)", "N+A(m,n)", "NRA(m,n)", or "N"',
        )

    sp = sub.add_parser("prove", help="decide a sequent")
    add_logic(sp)
    sp.add_argument("sequent", help='sequent text, e.g. "box p => box box p"')
    sp.add_argument("--proof", metavar="FILE", help="write the found proof JSON here")
    sp.add_argument("--budget", type=int, default=None, help="search node budget")

    sp = sub.add_parser("interpolate", help="interpolant of phi -> psi")
    add_logic(sp)
    sp.add_argument("--mode", choices=("craig", "lyndon"), default="lyndon")
    sp.add_argument("phi")
    sp.add_argument("psi")

    sp = sub.add_parser("uniform", help="uniform post-interpolant of phi")
    add_logic(sp)
    sp.add_argument("phi")
    sp.add_argument("--ppos", default="", help="comma-separated forbidden positive atoms")
    sp.add_argument("--pneg", default="", help="comma-separated forbidden negative atoms")

    sp = sub.add_parser("translate", help="classical translation of a formula")
    add_logic(sp)
    sp.add_argument("--dir", choices=("sharp", "flat"), required=True)
    sp.add_argument("phi")

    sp = sub.add_parser("check-proof", help="validate a proof JSON file")
    add_logic(sp)
    sp.add_argument("file")

    sp = sub.add_parser("elim-cut", help="eliminate cuts in a proof JSON file")
    add_logic(sp)
    sp.add_argument("file")
    sp.add_argument("-o", "--output", metavar="FILE", help="output path (default stdout)")

    sp = sub.add_parser("emulate", help="emulate a cut-free proof in classical LK")
    add_logic(sp)
    sp.add_argument("file")
    sp.add_argument("-o", "--output", metavar="FILE", help="output path (default stdout)")

    return parser


def _atoms_arg(text: str) -> list[BaseAtom]:
    if not text.strip():
        return []
    return [BaseAtom(part.strip()) for part in text.split(",") if part.strip()]


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _write_proof(path: str | None, proof) -> None:
    text = proof_to_json_text(proof)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ParseError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (SearchBudgetExceeded, CutEliminationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def _dispatch(args) -> int:
    logic = parse_logic(args.logic)

    if args.command == "prove":
        s = parse_sequent(args.sequent)
        proof = decide(s, logic, budget=args.budget)
        if proof is None:
            _emit(args, {"provable": False, "sequent": print_sequent(s)},
                  [f"unprovable in {logic}: {print_sequent(s)}"])
            return EXIT_UNPROVABLE
        if args.proof:
            _write_proof(args.proof, proof)
        payload = {"provable": True, "sequent": print_sequent(s)}
        if args.format == "json" and not args.proof:
            payload["proof"] = proof_to_json(proof)
        _emit(args, payload, [f"provable in {logic}: {print_sequent(s)}"])
        return EXIT_OK

    if args.command == "interpolate":
        phi = parse_formula(args.phi)
        psi = parse_formula(args.psi)
        s = Sequent.make([phi], [psi])
        proof = decide(s, logic)
        if proof is None:
            _emit(args, {"provable": False},
                  [f"unprovable in {logic}: {print_formula(phi)} -> {print_formula(psi)}"])
            return EXIT_UNPROVABLE
        part = Partition.make(Sequent.make([phi], []), Sequent.make([], [psi]), s)
        chi = maehara(proof, part, logic)
        report = verify_interpolant(phi, psi, chi, logic, mode=args.mode)
        _emit(
            args,
            {"interpolant": print_formula(chi), "report": report.to_dict()},
            [f"interpolant: {print_formula(chi)}", report.render()],
        )
        return EXIT_OK if report.ok else EXIT_ERROR

    if args.command == "uniform":
        phi = parse_formula(args.phi)
        forbidden = ForbiddenSets.make(_atoms_arg(args.ppos), _atoms_arg(args.pneg))
        chi = modal_post_interpolant(phi, forbidden, logic)
        pool = [phi, chi]
        report = verify_post_interpolant(phi, chi, forbidden, pool, logic)
        _emit(
            args,
            {"post_interpolant": print_formula(chi), "report": report.to_dict()},
            [f"post-interpolant: {print_formula(chi)}", report.render()],
        )
        return EXIT_OK if report.ok else EXIT_ERROR

    if args.command == "translate":
        phi = parse_formula(args.phi)
        out = sharp(phi, logic) if args.dir == "sharp" else flat(phi, logic)
        _emit(args, {"translation": print_formula(out)}, [print_formula(out)])
        return EXIT_OK

    if args.command == "check-proof":
        with open(args.file) as fh:
            proof = proof_from_json_text(fh.read())
        result = check_proof(proof, logic)
        payload = {"valid": result.ok, "path": list(result.path), "reason": result.reason}
        if result.ok:
            _emit(args, payload, ["valid"])
            return EXIT_OK
        _emit(args, payload, [f"invalid at {list(result.path)}: {result.reason}"])
        return EXIT_UNPROVABLE

    if args.command == "elim-cut":
        with open(args.file) as fh:
            proof = proof_from_json_text(fh.read())
        out = eliminate_cuts(proof, logic)
        _write_proof(args.output, out)
        return EXIT_OK

    if args.command == "emulate":
        with open(args.file) as fh:
            proof = proof_from_json_text(fh.read())
        out = emulate_proof(proof, logic)
        _write_proof(args.output, out)
        return EXIT_OK

    raise ValueError(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
