"""Modal formulas over base and quote atoms: AST, parser, printer, analysis.

The connectives are &, |, ->, false and box; `true` and `~f` are sugar for
`false -> false` and `f -> false`, so algorithms only ever see five node
kinds.  Quote atoms `q{...}` are propositional atoms indexed by a formula
payload; two quote atoms are the same atom iff their payloads are
structurally equal.

Grammar (whitespace-insensitive)::

    formula := imp
    imp     := or ( "->" imp )?            right-associative
    or      := and ( "|" and )*            left-associative
    and     := unary ( "&" unary )*        left-associative
    unary   := ("box" | "[]") unary | "~" unary | atom
    atom    := "false" | "true" | IDENT | "q{" formula "}" | "(" formula ")"
    IDENT   := [a-z][A-Za-z0-9_]*

Precedence: box/~ bind tightest, then &, then |, then ->.

Canonical printed form (what print_formula emits): `false` for the bottom
constant, `true` for `false -> false`, `~f` for `f -> false`, `box f` for a
box, `q{<canonical payload>}` for quote atoms, and parentheses exactly where
the precedence above requires them.  parse_formula(print_formula(f)) == f.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


class ParseError(ValueError):
    """Raised on malformed formula or sequent text; carries a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# Atoms
# ---------------------------------------------------------------------------

class Atom:
    """Base class for propositional atoms."""

    __slots__ = ()


@dataclass(frozen=True)
class BaseAtom(Atom):
    """An ordinary propositional variable."""

    name: str


@dataclass(frozen=True)
class QuoteAtom(Atom):
    """A fresh atom indexed by a formula; identity is structural equality
    of the payload."""

    payload: "Formula"


def atom_key(atom: Atom) -> tuple:
    """Total order on atoms: base atoms by name, then quote atoms by payload."""
    if isinstance(atom, BaseAtom):
        return (0, atom.name)
    return (1, print_formula(atom.payload))


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

class Formula:
    """Immutable formula node with a cached structural hash.

    Hashes are precomputed bottom-up so formulas are cheap set members;
    equality short-circuits on identity and on hash mismatch.  The canonical
    printed text is cached on the node after the first rendering.
    """

    __slots__ = ("_hash", "_text", "_level")

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {print_formula(self)!r}>"

    def __str__(self) -> str:
        return print_formula(self)


class Bot(Formula):
    __slots__ = ()

    def __init__(self):
        object.__setattr__(self, "_hash", hash(("bot",)))

    def __eq__(self, other):
        return isinstance(other, Bot)

    __hash__ = Formula.__hash__

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Formula nodes are immutable")


class Var(Formula):
    __slots__ = ("atom",)

    def __init__(self, atom: Atom):
        object.__setattr__(self, "atom", atom)
        object.__setattr__(self, "_hash", hash(("var", atom)))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Var)
            and self._hash == other._hash
            and self.atom == other.atom
        )

    __hash__ = Formula.__hash__

    def __setattr__(self, *a):
        raise AttributeError("Formula nodes are immutable")


class _Binary(Formula):
    __slots__ = ("left", "right")
    _tag = ""

    def __init__(self, left: Formula, right: Formula):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "_hash", hash((self._tag, left._hash, right._hash)))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(self) is type(other)
            and self._hash == other._hash
            and self.left == other.left
            and self.right == other.right
        )

    __hash__ = Formula.__hash__

    def __setattr__(self, *a):
        raise AttributeError("Formula nodes are immutable")


class And(_Binary):
    __slots__ = ()
    _tag = "and"


class Or(_Binary):
    __slots__ = ()
    _tag = "or"


class Imp(_Binary):
    __slots__ = ()
    _tag = "imp"


class Box(Formula):
    __slots__ = ("body",)

    def __init__(self, body: Formula):
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "_hash", hash(("box", body._hash)))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Box)
            and self._hash == other._hash
            and self.body == other.body
        )

    __hash__ = Formula.__hash__

    def __setattr__(self, *a):
        raise AttributeError("Formula nodes are immutable")


BOT = Bot()
TRUE = Imp(BOT, BOT)


def negate(f: Formula) -> Formula:
    """~f as the abbreviation f -> false."""
    return Imp(f, BOT)


def var(name: str) -> Var:
    """Base variable by name."""
    return Var(BaseAtom(name))


def quote(payload: Formula) -> Var:
    """Quote atom indexed by a payload formula."""
    return Var(QuoteAtom(payload))


def boxes(k: int, f: Formula) -> Formula:
    """Prefix f with k boxes."""
    for _ in range(k):
        f = Box(f)
    return f


def box_decompose(f: Formula) -> tuple[int, Formula]:
    """Maximal box prefix: returns (k, core) with f == box^k core and core
    not itself a box; k may be 0."""
    k = 0
    while isinstance(f, Box):
        k += 1
        f = f.body
    return k, f


def is_classical(f: Formula) -> bool:
    """True iff f contains no box node (quote atoms allowed)."""
    if isinstance(f, (Bot, Var)):
        return True
    if isinstance(f, Box):
        return False
    return is_classical(f.left) and is_classical(f.right)


def has_quote_atoms(f: Formula) -> bool:
    if isinstance(f, Var):
        return isinstance(f.atom, QuoteAtom)
    if isinstance(f, Bot):
        return False
    if isinstance(f, Box):
        return has_quote_atoms(f.body)
    return has_quote_atoms(f.left) or has_quote_atoms(f.right)


@lru_cache(maxsize=None)
def subformulas(f: Formula) -> frozenset[Formula]:
    """All subformulas of f, including f itself.  Quote atoms are atoms:
    their payloads are not descended into."""
    if isinstance(f, (Bot, Var)):
        return frozenset((f,))
    if isinstance(f, Box):
        return subformulas(f.body) | {f}
    return subformulas(f.left) | subformulas(f.right) | {f}


def formula_size(f: Formula) -> int:
    """Number of AST nodes."""
    if isinstance(f, (Bot, Var)):
        return 1
    if isinstance(f, Box):
        return 1 + formula_size(f.body)
    return 1 + formula_size(f.left) + formula_size(f.right)


def formula_key(f: Formula) -> str:
    """Deterministic total order on formulas (canonical printed text)."""
    return print_formula(f)


# ---------------------------------------------------------------------------
# Signed variables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignedVarSet:
    """Positive and negative occurrence sets of atoms."""

    pos: frozenset[Atom]
    neg: frozenset[Atom]

    @property
    def all(self) -> frozenset[Atom]:
        return self.pos | self.neg


@lru_cache(maxsize=None)
def signed_vars(f: Formula) -> SignedVarSet:
    """Positive/negative atom occurrences.

    Clauses: an atom is positive in itself; bottom has no variables; the
    antecedent of an implication swaps polarity; conjunction and disjunction
    take componentwise unions; box is transparent.  Quote atoms count as
    atoms.
    """
    if isinstance(f, Bot):
        return SignedVarSet(frozenset(), frozenset())
    if isinstance(f, Var):
        return SignedVarSet(frozenset((f.atom,)), frozenset())
    if isinstance(f, Box):
        return signed_vars(f.body)
    if isinstance(f, Imp):
        sl, sr = signed_vars(f.left), signed_vars(f.right)
        return SignedVarSet(sl.neg | sr.pos, sl.pos | sr.neg)
    sl, sr = signed_vars(f.left), signed_vars(f.right)
    return SignedVarSet(sl.pos | sr.pos, sl.neg | sr.neg)


def signed_vars_of_set(fs) -> SignedVarSet:
    """Union of signed_vars over a collection of formulas."""
    pos: frozenset[Atom] = frozenset()
    neg: frozenset[Atom] = frozenset()
    for f in fs:
        sv = signed_vars(f)
        pos |= sv.pos
        neg |= sv.neg
    return SignedVarSet(pos, neg)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_LEVEL_IMP = 0
_LEVEL_OR = 1
_LEVEL_AND = 2
_LEVEL_UNARY = 3


def print_formula(f: Formula) -> str:
    """Canonical text; parse_formula round-trips it."""
    return _print(f, _LEVEL_IMP)


def _print(f: Formula, level: int) -> str:
    try:
        text = f._text
    except AttributeError:
        text, own = _render(f)
        object.__setattr__(f, "_text", text)
        object.__setattr__(f, "_level", own)
    if f._level < level:
        return "(" + text + ")"
    return text


def _render(f: Formula) -> tuple[str, int]:
    if isinstance(f, Bot):
        return "false", 4
    if isinstance(f, Var):
        if isinstance(f.atom, BaseAtom):
            return f.atom.name, 4
        return "q{" + _print(f.atom.payload, _LEVEL_IMP) + "}", 4
    if isinstance(f, Box):
        return "box " + _print(f.body, _LEVEL_UNARY), _LEVEL_UNARY
    if isinstance(f, And):
        return (
            _print(f.left, _LEVEL_AND) + " & " + _print(f.right, _LEVEL_AND + 1),
            _LEVEL_AND,
        )
    if isinstance(f, Or):
        return (
            _print(f.left, _LEVEL_OR) + " | " + _print(f.right, _LEVEL_OR + 1),
            _LEVEL_OR,
        )
    # implications: true / ~f sugar first
    if f == TRUE:
        return "true", 4
    if isinstance(f.right, Bot):
        return "~" + _print(f.left, _LEVEL_UNARY), _LEVEL_UNARY
    return (
        _print(f.left, _LEVEL_IMP + 1) + " -> " + _print(f.right, _LEVEL_IMP),
        _LEVEL_IMP,
    )


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<boxsym>\[\])
  | (?P<quoteopen>q\{)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<punct>[&|~()}])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"box", "false", "true"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            if kind == "ident" and value in _KEYWORDS:
                kind = value
            tokens.append((kind, value, pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect(self, kind: str, value: str) -> None:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {value!r}", len(self.text))
        if tok[0] != kind or tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2])
        self.pos += 1

    def parse_formula(self) -> Formula:
        left = self.parse_or()
        tok = self.peek()
        if tok is not None and tok[0] == "arrow":
            self.next()
            return Imp(left, self.parse_formula())
        return left

    def parse_or(self) -> Formula:
        f = self.parse_and()
        while True:
            tok = self.peek()
            if tok is not None and tok[1] == "|":
                self.next()
                f = Or(f, self.parse_and())
            else:
                return f

    def parse_and(self) -> Formula:
        f = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is not None and tok[1] == "&":
                self.next()
                f = And(f, self.parse_unary())
            else:
                return f

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        kind, value, at = tok
        if kind == "box" or kind == "boxsym":
            self.next()
            return Box(self.parse_unary())
        if value == "~":
            self.next()
            return Imp(self.parse_unary(), BOT)
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        kind, value, at = self.next()
        if kind == "false":
            return BOT
        if kind == "true":
            return TRUE
        if kind == "ident":
            return Var(BaseAtom(value))
        if kind == "quoteopen":
            payload = self.parse_formula()
            tok = self.peek()
            if tok is None or tok[1] != "}":
                raise ParseError(
                    "unbalanced quote-atom braces", at if tok is None else tok[2]
                )
            self.next()
            return Var(QuoteAtom(payload))
        if value == "(":
            f = self.parse_formula()
            self.expect("punct", ")")
            return f
        raise ParseError(f"unexpected token {value!r}", at)


def parse_formula(text: str) -> Formula:
    """Parse a formula; raises ParseError with a position on bad input."""
    parser = _Parser(text)
    f = parser.parse_formula()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return f


def atoms_of(f: Formula) -> frozenset[Atom]:
    """All atoms occurring in f (equals pos | neg of signed_vars)."""
    return signed_vars(f).all


def iter_vars(f: Formula) -> Iterator[Var]:
    """Yield Var nodes in a fixed left-to-right traversal."""
    if isinstance(f, Var):
        yield f
    elif isinstance(f, Box):
        yield from iter_vars(f.body)
    elif isinstance(f, (And, Or, Imp)):
        yield from iter_vars(f.left)
        yield from iter_vars(f.right)
