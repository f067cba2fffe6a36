"""Formula AST, parser/printer round-trips, signed variables, box prefixes."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from necseq.formula import (
    BOT,
    TRUE,
    And,
    BaseAtom,
    Bot,
    Box,
    Formula,
    Imp,
    Or,
    ParseError,
    QuoteAtom,
    Var,
    box_decompose,
    boxes,
    is_classical,
    negate,
    parse_formula,
    print_formula,
    quote,
    signed_vars,
    subformulas,
    var,
)

p, q, r = var("p"), var("q"), var("r")


# -- parsing ----------------------------------------------------------------

def test_parse_box_implication():
    assert parse_formula("box p -> box box p") == Imp(Box(p), Box(Box(p)))


def test_parse_negation_desugars():
    assert parse_formula("~p") == Imp(p, BOT)


def test_parse_true_desugars():
    assert parse_formula("true") == Imp(BOT, BOT)


def test_parse_quote_atom():
    assert parse_formula("q{box p} & r") == And(quote(Box(p)), r)


def test_parse_precedence():
    assert parse_formula("p & q | r -> p") == Imp(Or(And(p, q), r), p)
    assert parse_formula("~p & q") == And(negate(p), q)
    assert parse_formula("box p & q") == And(Box(p), q)
    assert parse_formula("p -> q -> r") == Imp(p, Imp(q, r))


def test_parse_box_symbol_alias():
    assert parse_formula("[] p") == Box(p)
    assert parse_formula("[][]p") == Box(Box(p))


def test_parse_ident_q_is_a_variable():
    assert parse_formula("q") == q
    assert parse_formula("quux") == var("quux")


def test_parse_errors_have_positions():
    with pytest.raises(ParseError):
        parse_formula("p ->")
    with pytest.raises(ParseError):
        parse_formula("(p & q")
    with pytest.raises(ParseError):
        parse_formula("p q")
    with pytest.raises(ParseError):
        parse_formula("P")  # uppercase identifiers are not in the grammar
    with pytest.raises(ParseError) as excinfo:
        parse_formula("q{box p & r")
    assert "brace" in str(excinfo.value)


# -- printing ---------------------------------------------------------------

def test_print_examples():
    assert print_formula(Box(Box(p))) == "box box p"
    assert print_formula(Imp(p, BOT)) == "~p"
    assert print_formula(quote(Box(p))) == "q{box p}"
    assert print_formula(TRUE) == "true"
    assert print_formula(Box(And(Box(p), q))) == "box (box p & q)"


def test_print_associativity_parens():
    assert print_formula(And(And(p, q), r)) == "p & q & r"
    assert print_formula(And(p, And(q, r))) == "p & (q & r)"
    assert print_formula(Imp(Imp(p, q), r)) == "(p -> q) -> r"
    assert print_formula(Imp(p, Imp(q, r))) == "p -> q -> r"


def _formulas(max_leaves=12, quotes=True):
    leaf_pool = [BOT, p, q, r, var("s1")]
    leaves = st.sampled_from(leaf_pool)

    def extend(children):
        return st.one_of(
            children.map(Box),
            st.tuples(children, children).map(lambda t: And(*t)),
            st.tuples(children, children).map(lambda t: Or(*t)),
            st.tuples(children, children).map(lambda t: Imp(*t)),
            children.map(lambda f: quote(f) if quotes else f),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@settings(max_examples=300, deadline=None)
@given(_formulas())
def test_round_trip(f: Formula):
    assert parse_formula(print_formula(f)) == f


# -- signed variables --------------------------------------------------------

def _signed_vars_reference(f):
    """Second, independent implementation: iterative polarity traversal."""
    pos, neg = set(), set()
    stack = [(f, True)]
    while stack:
        g, polarity = stack.pop()
        if isinstance(g, Bot):
            continue
        if isinstance(g, Var):
            (pos if polarity else neg).add(g.atom)
        elif isinstance(g, Box):
            stack.append((g.body, polarity))
        elif isinstance(g, Imp):
            stack.append((g.left, not polarity))
            stack.append((g.right, polarity))
        else:
            stack.append((g.left, polarity))
            stack.append((g.right, polarity))
    return frozenset(pos), frozenset(neg)


def test_signed_vars_examples():
    sv = signed_vars(Imp(p, q))
    assert sv.pos == frozenset({BaseAtom("q")})
    assert sv.neg == frozenset({BaseAtom("p")})

    sv = signed_vars(Box(p))
    assert sv.pos == frozenset({BaseAtom("p")})
    assert sv.neg == frozenset()

    sv = signed_vars(negate(p))
    assert sv.pos == frozenset()
    assert sv.neg == frozenset({BaseAtom("p")})


def test_signed_vars_quote_atoms_are_atoms():
    f = And(quote(Box(p)), negate(quote(q)))
    sv = signed_vars(f)
    assert sv.pos == frozenset({QuoteAtom(Box(p))})
    assert sv.neg == frozenset({QuoteAtom(q)})


@settings(max_examples=300, deadline=None)
@given(_formulas())
def test_signed_vars_matches_reference(f):
    sv = signed_vars(f)
    ref_pos, ref_neg = _signed_vars_reference(f)
    assert sv.pos == ref_pos
    assert sv.neg == ref_neg


@settings(max_examples=200, deadline=None)
@given(_formulas())
def test_signed_vars_cover_all_atoms(f):
    atoms = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            atoms.add(g.atom)
        elif isinstance(g, Box):
            stack.append(g.body)
        elif not isinstance(g, Bot):
            stack.extend((g.left, g.right))
    assert signed_vars(f).all == frozenset(atoms)


# -- box prefixes -------------------------------------------------------------

def test_box_decompose_examples():
    assert box_decompose(Box(Box(p))) == (2, p)
    assert box_decompose(p) == (0, p)
    inner = And(Box(p), q)
    assert box_decompose(Box(inner)) == (1, inner)


@settings(max_examples=150, deadline=None)
@given(_formulas(), st.integers(min_value=0, max_value=4))
def test_box_decompose_round_trip(f, k):
    depth, core = box_decompose(boxes(k, f))
    assert not isinstance(core, Box)
    assert boxes(depth, core) == boxes(k, f)


# -- structural helpers -------------------------------------------------------

def test_quote_atom_identity_is_structural():
    assert quote(Box(p)) == quote(Box(var("p")))
    assert quote(Box(p)) != quote(Box(q))


def test_subformulas_box_downward_closed():
    f = Box(Box(Imp(p, q)))
    subs = subformulas(f)
    assert Box(Imp(p, q)) in subs
    assert Imp(p, q) in subs
    assert p in subs and q in subs


def test_is_classical():
    assert is_classical(And(p, quote(Box(q))))
    assert not is_classical(Box(p))
    assert not is_classical(Imp(p, Box(q)))
