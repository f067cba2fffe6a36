"""Logic configuration, sequents, partitions, proof objects, proof checking.

A logic is identified by a variant (plain / plus / R) and two naturals m, n.
The sequent calculus for it is LK (set-based sequents, strict initial
sequents, explicit weakening, cut) extended with:

  nec     always:                        => f        /  => box f
  accL    when n > m:    box^m f, box^n f, G => D    /  box^n f, G => D
  accR    when m > n:    G => D, box^m f, box^n f    /  G => D, box^m f
  rosbox  plus variant, m = 0, n >= 2:   box f =>    /  box box f =>
  ros     R variant:                     f =>        /  box f =>

Sequents are pairs of finite formula *sets*, so contraction and exchange are
absorbed; weakening an already-present formula is a legal (no-op) instance,
and two-premise rules admit context-sharing splits.

External text forms:
  sequent:      "phi1, phi2 => psi1, psi2"  (either side may be empty)
  logic spec:   "NA(m,n)" | "N+A(m,n)" | "NRA(m,n)" | "N" (= NA(0,0))
  proof JSON:   {"sequent": {"ante": [...], "succ": [...]}, "rule": ...,
                 "principal": ..., "aux": ..., "premises": [...]}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .formula import (
    BOT,
    Bot,
    Box,
    And,
    Or,
    Imp,
    Formula,
    ParseError,
    box_decompose,
    boxes,
    formula_key,
    parse_formula,
    print_formula,
)

# Rule tags.  andL/orR come in the two projection flavours.
INIT = "init"
INIT_BOT = "initBot"
AND_L1 = "andL1"
AND_L2 = "andL2"
AND_R = "andR"
OR_L = "orL"
OR_R1 = "orR1"
OR_R2 = "orR2"
IMP_L = "impL"
IMP_R = "impR"
W_L = "wL"
W_R = "wR"
CUT = "cut"
NEC = "nec"
ACC_L = "accL"
ACC_R = "accR"
ROSBOX = "rosbox"
ROS = "ros"

LK_RULES = frozenset(
    {
        INIT,
        INIT_BOT,
        AND_L1,
        AND_L2,
        AND_R,
        OR_L,
        OR_R1,
        OR_R2,
        IMP_L,
        IMP_R,
        W_L,
        W_R,
        CUT,
    }
)


@dataclass(frozen=True)
class LogicId:
    """A pure-necessitation logic: variant plain / plus / R with parameters
    m, n.  The active rule set is derived: nec always, accL iff n > m, accR
    iff m > n, rosbox iff plus with m = 0 and n >= 2, ros iff variant R."""

    variant: str
    m: int
    n: int

    def __post_init__(self):
        if self.variant not in ("plain", "plus", "R"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be naturals")

    @property
    def spec_string(self) -> str:
        head = {"plain": "NA", "plus": "N+A", "R": "NRA"}[self.variant]
        return f"{head}({self.m},{self.n})"

    def __str__(self) -> str:
        return self.spec_string


_LOGIC_RE = re.compile(r"^\s*(NRA|N\+A|NA)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def parse_logic(text: str) -> LogicId:
    """Parse a logic spec string: NA(m,n), N+A(m,n), NRA(m,n), or N."""
    if text.strip() == "N":
        return LogicId("plain", 0, 0)
    m = _LOGIC_RE.match(text)
    if m is None:
        raise ParseError(f"bad logic spec {text!r}", 0)
    variant = {"NA": "plain", "N+A": "plus", "NRA": "R"}[m.group(1)]
    return LogicId(variant, int(m.group(2)), int(m.group(3)))


def rule_set(logic: LogicId | None) -> frozenset[str]:
    """Active rule tags for a logic; None means plain LK.  Cut is always a
    rule of the calculus (cut-freeness is a property of proofs)."""
    if logic is None:
        return LK_RULES
    rules = set(LK_RULES)
    rules.add(NEC)
    if logic.n > logic.m:
        rules.add(ACC_L)
    if logic.m > logic.n:
        rules.add(ACC_R)
    if logic.variant == "plus" and logic.m == 0 and logic.n >= 2:
        rules.add(ROSBOX)
    if logic.variant == "R":
        rules.add(ROS)
    return frozenset(rules)


# ---------------------------------------------------------------------------
# Sequents and partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sequent:
    """A pair of finite formula sets (antecedent, succedent)."""

    ante: frozenset[Formula]
    succ: frozenset[Formula]

    @staticmethod
    def make(ante: Iterable[Formula] = (), succ: Iterable[Formula] = ()) -> "Sequent":
        return Sequent(frozenset(ante), frozenset(succ))

    def sorted_ante(self) -> list[Formula]:
        return sorted(self.ante, key=formula_key)

    def sorted_succ(self) -> list[Formula]:
        return sorted(self.succ, key=formula_key)

    def issubset(self, other: "Sequent") -> bool:
        return self.ante <= other.ante and self.succ <= other.succ

    def union(self, other: "Sequent") -> "Sequent":
        return Sequent(self.ante | other.ante, self.succ | other.succ)

    def __str__(self) -> str:
        return print_sequent(self)


def parse_sequent(text: str) -> Sequent:
    """Parse "phi1, phi2 => psi1, psi2"; either side may be empty."""
    parts = text.split("=>")
    if len(parts) != 2:
        raise ParseError("sequent needs exactly one '=>'", 0)

    def side(chunk: str) -> list[Formula]:
        chunk = chunk.strip()
        if not chunk:
            return []
        return [parse_formula(part) for part in chunk.split(",")]

    return Sequent.make(side(parts[0]), side(parts[1]))


def print_sequent(s: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in s.sorted_ante())
    right = ", ".join(print_formula(f) for f in s.sorted_succ())
    return f"{left} => {right}".strip()


@dataclass(frozen=True)
class Partition:
    """A disjoint two-way split of a sequent's antecedent and succedent."""

    left: Sequent
    right: Sequent
    of: Sequent

    @staticmethod
    def make(left: Sequent, right: Sequent, of: Sequent) -> "Partition":
        part = Partition(left, right, of)
        part.validate()
        return part

    def validate(self) -> None:
        if self.left.ante | self.right.ante != self.of.ante:
            raise ValueError("partition antecedents do not cover the sequent")
        if self.left.succ | self.right.succ != self.of.succ:
            raise ValueError("partition succedents do not cover the sequent")
        if self.left.ante & self.right.ante:
            raise ValueError("partition antecedents overlap")
        if self.left.succ & self.right.succ:
            raise ValueError("partition succedents overlap")


def enumerate_partitions(s: Sequent) -> Iterator[Partition]:
    """All 2^(|ante|+|succ|) partitions, exactly once each.

    Order: antecedent members sorted canonically, then succedent members;
    bit j of an ascending counter selects the left side for member j (bit 0
    is the first antecedent formula).  The all-zero mask (everything on the
    right) comes first.
    """
    ante = s.sorted_ante()
    succ = s.sorted_succ()
    total = len(ante) + len(succ)
    for mask in range(1 << total):
        left_ante = [f for j, f in enumerate(ante) if mask >> j & 1]
        left_succ = [f for j, f in enumerate(succ) if mask >> (len(ante) + j) & 1]
        left = Sequent.make(left_ante, left_succ)
        right = Sequent(s.ante - left.ante, s.succ - left.succ)
        yield Partition(left, right, s)


# ---------------------------------------------------------------------------
# Proof objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProofNode:
    """A rule-tagged proof tree node, checkable locally against its schema.

    aux carries rule-specific data: for impL/cut the left context split as a
    Sequent (premise one proves aux.ante => aux.succ + active formula); other
    rules need none.  For cut the cut formula is stored as the principal.
    """

    conclusion: Sequent
    rule: str
    principal: Formula | None = None
    aux: Sequent | None = None
    premises: tuple["ProofNode", ...] = ()

    def count_nodes(self) -> int:
        return 1 + sum(pr.count_nodes() for pr in self.premises)

    def rules_used(self) -> frozenset[str]:
        out = {self.rule}
        for pr in self.premises:
            out |= pr.rules_used()
        return frozenset(out)

    def has_cut(self) -> bool:
        if self.rule == CUT:
            return True
        return any(pr.has_cut() for pr in self.premises)


@dataclass(frozen=True)
class CheckResult:
    """Valid, or invalid with the path to the first offending node and a
    reason code: unknown-rule, inactive-rule, premise-count, schema-mismatch."""

    ok: bool
    path: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


_VALID = CheckResult(True)

_ALL_RULES = LK_RULES | {NEC, ACC_L, ACC_R, ROSBOX, ROS}

_PREMISE_COUNT = {
    INIT: 0,
    INIT_BOT: 0,
    AND_L1: 1,
    AND_L2: 1,
    AND_R: 2,
    OR_L: 2,
    OR_R1: 1,
    OR_R2: 1,
    IMP_L: 2,
    IMP_R: 1,
    W_L: 1,
    W_R: 1,
    CUT: 2,
    NEC: 1,
    ACC_L: 1,
    ACC_R: 1,
    ROSBOX: 1,
    ROS: 1,
}


def check_proof(proof: ProofNode, logic: LogicId | None) -> CheckResult:
    """Validate every node against its rule schema under the logic's active
    rules (logic None = plain LK).  Initial sequents are strict: exactly
    phi => phi or false =>, with side formulas requiring explicit weakening
    nodes.  Validity is local, so shared subtrees are checked once."""
    active = rule_set(logic)
    seen: dict[int, CheckResult] = {}

    def walk(node: ProofNode, path: tuple[int, ...]) -> CheckResult:
        cached = seen.get(id(node))
        if cached is not None and cached.ok:
            return cached
        if node.rule not in _ALL_RULES:
            return CheckResult(False, path, "unknown-rule")
        if node.rule not in active:
            return CheckResult(False, path, "inactive-rule")
        if len(node.premises) != _PREMISE_COUNT[node.rule]:
            return CheckResult(False, path, "premise-count")
        if not _node_matches_schema(node, logic):
            return CheckResult(False, path, "schema-mismatch")
        for i, pr in enumerate(node.premises):
            sub = walk(pr, path + (i,))
            if not sub.ok:
                return sub
        seen[id(node)] = _VALID
        return _VALID

    return walk(proof, ())


def _node_matches_schema(node: ProofNode, logic: LogicId | None) -> bool:
    c = node.conclusion
    rule = node.rule
    f = node.principal

    if rule == INIT:
        return f is not None and c == Sequent.make([f], [f])

    if rule == INIT_BOT:
        return c == Sequent.make([BOT], [])

    if rule in (AND_L1, AND_L2):
        if not isinstance(f, And) or f not in c.ante:
            return False
        prem = _only(node)
        x = f.left if rule == AND_L1 else f.right
        if x not in prem.ante or prem.succ != c.succ:
            return False
        return c.ante in (prem.ante - {x} | {f}, prem.ante | {f})

    if rule in (OR_R1, OR_R2):
        if not isinstance(f, Or) or f not in c.succ:
            return False
        prem = _only(node)
        x = f.left if rule == OR_R1 else f.right
        if x not in prem.succ or prem.ante != c.ante:
            return False
        return c.succ in (prem.succ - {x} | {f}, prem.succ | {f})

    if rule == AND_R:
        if not isinstance(f, And) or f not in c.succ:
            return False
        p1, p2 = (pr.conclusion for pr in node.premises)
        if p1.ante != p2.ante or p1.ante != c.ante:
            return False
        return _shared_context_ok(p1.succ, f.left, p2.succ, f.right, c.succ, f)

    if rule == OR_L:
        if not isinstance(f, Or) or f not in c.ante:
            return False
        p1, p2 = (pr.conclusion for pr in node.premises)
        if p1.succ != p2.succ or p1.succ != c.succ:
            return False
        return _shared_context_ok(p1.ante, f.left, p2.ante, f.right, c.ante, f)

    if rule == IMP_R:
        if not isinstance(f, Imp) or f not in c.succ:
            return False
        prem = _only(node)
        x, y = f.left, f.right
        if x not in prem.ante or y not in prem.succ:
            return False
        ante_ok = c.ante in (prem.ante - {x}, prem.ante)
        succ_ok = c.succ in (prem.succ - {y} | {f}, prem.succ | {f})
        return ante_ok and succ_ok

    if rule == IMP_L:
        if not isinstance(f, Imp) or f not in c.ante:
            return False
        p1, p2 = (pr.conclusion for pr in node.premises)
        x, y = f.left, f.right
        if x not in p1.succ or y not in p2.ante:
            return False
        if node.aux is not None and not (
            node.aux.ante == p1.ante and node.aux.succ in (p1.succ - {x}, p1.succ)
        ):
            return False
        antes = (p1.ante | (p2.ante - {y}) | {f}, p1.ante | p2.ante | {f})
        succs = ((p1.succ - {x}) | p2.succ, p1.succ | p2.succ)
        return c.ante in antes and c.succ in succs

    if rule == W_L:
        prem = _only(node)
        return f is not None and c == Sequent(prem.ante | {f}, prem.succ)

    if rule == W_R:
        prem = _only(node)
        return f is not None and c == Sequent(prem.ante, prem.succ | {f})

    if rule == CUT:
        p1, p2 = (pr.conclusion for pr in node.premises)
        candidates = [f] if f is not None else sorted(p1.succ & p2.ante, key=formula_key)
        for x in candidates:
            if x not in p1.succ or x not in p2.ante:
                continue
            if node.aux is not None and not (
                node.aux.ante == p1.ante
                and node.aux.succ in (p1.succ - {x}, p1.succ)
            ):
                continue
            antes = (p1.ante | (p2.ante - {x}), p1.ante | p2.ante)
            succs = ((p1.succ - {x}) | p2.succ, p1.succ | p2.succ)
            if c.ante in antes and c.succ in succs:
                return True
        return False

    if rule == NEC:
        if not isinstance(f, Box):
            return False
        prem = _only(node)
        return prem == Sequent.make([], [f.body]) and c == Sequent.make([], [f])

    if rule == ROS:
        if not isinstance(f, Box):
            return False
        prem = _only(node)
        return prem == Sequent.make([f.body], []) and c == Sequent.make([f], [])

    if rule == ROSBOX:
        if not (isinstance(f, Box) and isinstance(f.body, Box)):
            return False
        prem = _only(node)
        return prem == Sequent.make([f.body], []) and c == Sequent.make([f], [])

    if rule == ACC_L:
        return logic is not None and _acc_schema(node, logic, left=True)

    if rule == ACC_R:
        return logic is not None and _acc_schema(node, logic, left=False)

    return False


def _only(node: ProofNode) -> Sequent:
    return node.premises[0].conclusion


def _shared_context_ok(
    b1: frozenset, x1: Formula, b2: frozenset, x2: Formula, target: frozenset, f: Formula
) -> bool:
    """Two-premise shared-context check: some Delta with premise_i context
    Delta + x_i and conclusion Delta + f reproduces all three sets."""
    if x1 not in b1 or x2 not in b2:
        return False
    base = (b1 - {x1}) | (b2 - {x2})
    for extra in (frozenset(), {x1}, {x2}, {x1, x2}):
        delta = base | extra
        if delta | {x1} == b1 and delta | {x2} == b2 and delta | {f} == target:
            return True
    return False


def acc_companion(principal: Formula, logic: LogicId, left: bool) -> Formula | None:
    """The formula the acc rule adds to its premise, or None if the principal
    is too shallow.  accL: principal box^n g, companion box^m g; accR dual."""
    k, core = box_decompose(principal)
    need = logic.n if left else logic.m
    other = logic.m if left else logic.n
    if k < need:
        return None
    return boxes(k - need + other, core)


def _acc_schema(node: ProofNode, logic: LogicId, left: bool) -> bool:
    f = node.principal
    if f is None:
        return False
    prem = _only(node)
    c = node.conclusion
    beta = acc_companion(f, logic, left)
    if beta is None or beta == f:
        return False
    if left:
        if f not in prem.ante or beta not in prem.ante or f not in c.ante:
            return False
        return c.succ == prem.succ and c.ante in (prem.ante - {beta}, prem.ante)
    if f not in prem.succ or beta not in prem.succ or f not in c.succ:
        return False
    return c.ante == prem.ante and c.succ in (prem.succ - {beta}, prem.succ)


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

_JSON_RULE_OUT = {AND_L1: ("andL", 1), AND_L2: ("andL", 2), OR_R1: ("orR", 1), OR_R2: ("orR", 2)}
_JSON_RULE_IN = {("andL", 1): AND_L1, ("andL", 2): AND_L2, ("orR", 1): OR_R1, ("orR", 2): OR_R2}


def proof_to_json(proof: ProofNode) -> dict:
    """Serialize a proof to the documented JSON shape."""
    rule = proof.rule
    out: dict = {
        "sequent": {
            "ante": [print_formula(f) for f in proof.conclusion.sorted_ante()],
            "succ": [print_formula(f) for f in proof.conclusion.sorted_succ()],
        },
        "rule": rule,
    }
    if rule in _JSON_RULE_OUT:
        name, i = _JSON_RULE_OUT[rule]
        out["rule"] = name
        out["aux"] = {"i": i}
    if proof.principal is not None:
        out["principal"] = print_formula(proof.principal)
    if proof.aux is not None and rule in (IMP_L, CUT):
        out["aux"] = {
            "leftAnte": [print_formula(f) for f in proof.aux.sorted_ante()],
            "leftSucc": [print_formula(f) for f in proof.aux.sorted_succ()],
        }
    if proof.premises:
        out["premises"] = [proof_to_json(pr) for pr in proof.premises]
    else:
        out["premises"] = []
    return out


def proof_from_json(data: dict) -> ProofNode:
    """Parse the documented proof JSON; raises ParseError on malformed data."""
    try:
        seq = Sequent.make(
            [parse_formula(t) for t in data["sequent"]["ante"]],
            [parse_formula(t) for t in data["sequent"]["succ"]],
        )
        rule = data["rule"]
        aux_data = data.get("aux")
        if rule in ("andL", "orR"):
            if not isinstance(aux_data, dict) or aux_data.get("i") not in (1, 2):
                raise ParseError(f"rule {rule} needs aux i in {{1,2}}", 0)
            rule = _JSON_RULE_IN[(rule, aux_data["i"])]
            aux_data = None
        principal = None
        if data.get("principal") is not None:
            principal = parse_formula(data["principal"])
        aux = None
        if isinstance(aux_data, dict) and "leftAnte" in aux_data:
            aux = Sequent.make(
                [parse_formula(t) for t in aux_data["leftAnte"]],
                [parse_formula(t) for t in aux_data.get("leftSucc", [])],
            )
        premises = tuple(proof_from_json(p) for p in data.get("premises", []))
        return ProofNode(seq, rule, principal, aux, premises)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed proof JSON: {exc}", 0) from exc


def proof_to_json_text(proof: ProofNode, indent: int | None = 2) -> str:
    return json.dumps(proof_to_json(proof), indent=indent)


def proof_from_json_text(text: str) -> ProofNode:
    return proof_from_json(json.loads(text))
