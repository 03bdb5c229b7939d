"""Textual query language: tokenizer, parser, printer, scheme inference, evaluation.

Grammar (keywords are upper-case and reserved)::

    expr   := union
    union  := inter ("UNION" inter)*
    inter  := joinE (("INTERSECT" | "MINUS") joinE)*
    joinE  := unary ("JOIN" unary)*
    unary  := "NOT" unary
            | "PROJECT" "[" ident ("," ident)* "]" "(" expr ")"
            | "SELECT" "[" formula "]" "(" expr ")"
            | "SPLIT" "(" expr ")" | "COMBINE" "(" expr ")"
            | ident | "(" expr ")"
    formula := conj ("OR" conj)*
    conj    := atomF ("AND" atomF)*
    atomF   := "NOT" atomF | ident "=" (ident | "'" literal "'") | "(" formula ")"

``NOT`` on relations is the complement; inside ``SELECT[...]`` it is logical
negation.  Quoted strings are domain values, bare identifiers are attributes.
"""

from __future__ import annotations

import re
import typing
from dataclasses import dataclass
from typing import Iterable, List, Mapping, NamedTuple, Optional, Tuple

from . import algebra
from .core import NeutrosophicRelation, Scheme
from .errors import ProjectionNotSubset, QuerySyntaxError, SchemeMismatch, UnknownRelation
from .formula import (
    And,
    AttrEqAttr,
    AttrEqConst,
    Formula,
    Not,
    Or,
    attributes,
    compile_formula,
    format_formula,
)

KEYWORDS = frozenset(
    "UNION INTERSECT MINUS JOIN NOT PROJECT SELECT SPLIT COMBINE AND OR".split()
)
IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")


def is_identifier(text: str) -> bool:
    return IDENT.fullmatch(text) is not None and text not in KEYWORDS


# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class RelationRef:
    name: str


@dataclass(frozen=True)
class Union:
    left: "QueryExpr"
    right: "QueryExpr"


@dataclass(frozen=True)
class Intersect:
    left: "QueryExpr"
    right: "QueryExpr"


@dataclass(frozen=True)
class Minus:
    left: "QueryExpr"
    right: "QueryExpr"


@dataclass(frozen=True)
class Join:
    left: "QueryExpr"
    right: "QueryExpr"


@dataclass(frozen=True)
class Complement:
    operand: "QueryExpr"


@dataclass(frozen=True)
class Project:
    attrs: Tuple[str, ...]
    operand: "QueryExpr"

    def __post_init__(self):
        attrs = tuple(self.attrs)
        if not attrs:
            raise ValueError("projection list is empty")
        if len(set(attrs)) != len(attrs):
            raise ValueError("projection list repeats an attribute")
        object.__setattr__(self, "attrs", attrs)


@dataclass(frozen=True)
class Select:
    formula: Formula
    operand: "QueryExpr"


@dataclass(frozen=True)
class Split:
    operand: "QueryExpr"


@dataclass(frozen=True)
class Combine:
    operand: "QueryExpr"


QueryExpr = typing.Union[
    RelationRef, Union, Intersect, Minus, Join, Complement, Project, Select, Split, Combine
]

_BINARY = {Union: "UNION", Intersect: "INTERSECT", Minus: "MINUS", Join: "JOIN"}
_PREC = {Union: 1, Intersect: 2, Minus: 2, Join: 3}


# -- tokenizer -----------------------------------------------------------------


class Token(NamedTuple):
    kind: str  # "kw", "ident", "literal", "punct" or "end"
    text: str
    line: int
    column: int


_PUNCT = "()[],="


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            col, i = col + 1, i + 1
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, line, col))
            col, i = col + 1, i + 1
            continue
        if ch == "'":
            start_line, start_col = line, col
            j = i + 1
            chars = []
            while True:
                if j >= n:
                    raise QuerySyntaxError("unterminated string literal", start_line, start_col)
                if text[j] == "'":
                    if j + 1 < n and text[j + 1] == "'":
                        chars.append("'")
                        j += 2
                        continue
                    break
                if text[j] == "\n":
                    raise QuerySyntaxError("newline inside string literal", start_line, start_col)
                chars.append(text[j])
                j += 1
            tokens.append(Token("literal", "".join(chars), start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        m = IDENT.match(text, i)
        if m is None:
            raise QuerySyntaxError("unexpected character {0!r}".format(ch), line, col)
        word = m.group()
        tokens.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
        col += len(word)
        i = m.end()
    tokens.append(Token("end", "", line, col))
    return tokens


# -- parser --------------------------------------------------------------------

_UNARY_START = ("NOT", "PROJECT", "SELECT", "SPLIT", "COMBINE", "identifier", "(")


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected: Iterable[str]):
        tok = self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise QuerySyntaxError("unexpected " + found, tok.line, tok.column, expected)

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.tok
        return tok.kind == kind and (text is None or tok.text == text)

    def at_kw(self, *words: str) -> bool:
        return self.tok.kind == "kw" and self.tok.text in words

    def advance(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        if not self.at(kind, text):
            self.fail([text if text is not None else _describe(kind)])
        return self.advance()

    def ident(self) -> str:
        return self.expect("ident").text

    # expressions

    def parse(self) -> QueryExpr:
        e = self.expr()
        if not self.at("end"):
            self.fail(["UNION", "INTERSECT", "MINUS", "JOIN", "end of input"])
        return e

    def expr(self) -> QueryExpr:
        left = self.inter()
        while self.at_kw("UNION"):
            self.advance()
            left = Union(left, self.inter())
        return left

    def inter(self) -> QueryExpr:
        left = self.join()
        while self.at_kw("INTERSECT", "MINUS"):
            node = Intersect if self.advance().text == "INTERSECT" else Minus
            left = node(left, self.join())
        return left

    def join(self) -> QueryExpr:
        left = self.unary()
        while self.at_kw("JOIN"):
            self.advance()
            left = Join(left, self.unary())
        return left

    def unary(self) -> QueryExpr:
        tok = self.tok
        if tok.kind == "ident":
            self.advance()
            return RelationRef(tok.text)
        if self.at("punct", "("):
            self.advance()
            e = self.expr()
            self.expect("punct", ")")
            return e
        if tok.kind != "kw":
            self.fail(_UNARY_START)
        if tok.text == "NOT":
            self.advance()
            return Complement(self.unary())
        if tok.text == "PROJECT":
            self.advance()
            self.expect("punct", "[")
            names = [self.ident()]
            while self.at("punct", ","):
                self.advance()
                names.append(self.ident())
            close = self.expect("punct", "]")
            if len(set(names)) != len(names):
                raise QuerySyntaxError(
                    "projection list repeats an attribute", close.line, close.column
                )
            return Project(tuple(names), self.parenthesized())
        if tok.text == "SELECT":
            self.advance()
            self.expect("punct", "[")
            f = self.formula()
            self.expect("punct", "]")
            return Select(f, self.parenthesized())
        if tok.text == "SPLIT":
            self.advance()
            return Split(self.parenthesized())
        if tok.text == "COMBINE":
            self.advance()
            return Combine(self.parenthesized())
        self.fail(_UNARY_START)

    def parenthesized(self) -> QueryExpr:
        self.expect("punct", "(")
        e = self.expr()
        self.expect("punct", ")")
        return e

    # formulas

    def formula(self) -> Formula:
        left = self.conj()
        while self.at_kw("OR"):
            self.advance()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.atom()
        while self.at_kw("AND"):
            self.advance()
            left = And(left, self.atom())
        return left

    def atom(self) -> Formula:
        if self.at_kw("NOT"):
            self.advance()
            return Not(self.atom())
        if self.at("punct", "("):
            self.advance()
            f = self.formula()
            self.expect("punct", ")")
            return f
        if not self.at("ident"):
            self.fail(["NOT", "(", "identifier"])
        attr = self.advance().text
        self.expect("punct", "=")
        if self.at("ident"):
            return AttrEqAttr(attr, self.advance().text)
        if self.at("literal"):
            return AttrEqConst(attr, self.advance().text)
        self.fail(["identifier", "string literal"])


def _describe(kind: str) -> str:
    return {"ident": "identifier", "literal": "string literal", "end": "end of input"}.get(kind, kind)


def parse(text: str) -> QueryExpr:
    return _Parser(text).parse()


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if not p.at("end"):
        p.fail(["AND", "OR", "end of input"])
    return f


# -- printer -------------------------------------------------------------------


def format_query(e: QueryExpr, context: int = 0) -> str:
    """Canonical text with minimal parentheses; ``parse(format_query(e)) == e``."""
    if isinstance(e, RelationRef):
        return e.name
    if isinstance(e, Complement):
        return "NOT " + format_query(e.operand, 4)
    if isinstance(e, Project):
        return "PROJECT[{0}]({1})".format(", ".join(e.attrs), format_query(e.operand))
    if isinstance(e, Select):
        return "SELECT[{0}]({1})".format(format_formula(e.formula), format_query(e.operand))
    if isinstance(e, Split):
        return "SPLIT({0})".format(format_query(e.operand))
    if isinstance(e, Combine):
        return "COMBINE({0})".format(format_query(e.operand))
    prec = _PREC[type(e)]
    text = "{0} {1} {2}".format(
        format_query(e.left, prec), _BINARY[type(e)], format_query(e.right, prec + 1)
    )
    return "(" + text + ")" if prec < context else text


# -- schemes and evaluation ------------------------------------------------------

Catalog = Mapping[str, NeutrosophicRelation]


def _lookup(catalog: Catalog, name: str) -> NeutrosophicRelation:
    try:
        return catalog[name]
    except KeyError:
        raise UnknownRelation("no relation named {0!r}".format(name)) from None


def infer_scheme(e: QueryExpr, catalog: Catalog) -> Scheme:
    if isinstance(e, RelationRef):
        return _lookup(catalog, e.name).scheme
    if isinstance(e, (Union, Intersect, Minus)):
        left, right = infer_scheme(e.left, catalog), infer_scheme(e.right, catalog)
        if not left.same_attributes(right):
            raise SchemeMismatch(
                "{0} needs matching schemes, got {1} and {2}".format(_BINARY[type(e)], left, right)
            )
        return left
    if isinstance(e, Join):
        return infer_scheme(e.left, catalog).merge(infer_scheme(e.right, catalog))
    inner = infer_scheme(e.operand, catalog)
    if isinstance(e, Project):
        missing = [a for a in e.attrs if a not in inner]
        if missing:
            raise ProjectionNotSubset("{0} not in scheme {1}".format(missing, inner))
        return inner.sub(e.attrs)
    if isinstance(e, Select):
        compile_formula(e.formula, inner)
    return inner


_ROBUST_OPS = {
    Union: algebra.union,
    Intersect: algebra.intersection,
    Minus: algebra.difference,
    Join: algebra.join,
}


def evaluate(e: QueryExpr, catalog: Catalog, mode: str = "robust") -> NeutrosophicRelation:
    """Evaluate bottom-up.

    ``robust`` wraps every algebra node as split, apply, combine.  ``raw``
    applies the operators as defined and refuses multi-pair operands.
    Explicit SPLIT and COMBINE nodes are applied as written in both modes.
    """
    if mode not in ("robust", "raw"):
        raise ValueError("mode must be 'robust' or 'raw'")
    infer_scheme(e, catalog)
    return _eval(e, catalog, mode == "robust")


def _apply(robust: bool, op, operands, **params) -> NeutrosophicRelation:
    if robust:
        return algebra.robust_apply(op, *operands, **params)
    algebra.require_functional(*operands)
    return op(*operands, **params)


def _eval(e: QueryExpr, catalog: Catalog, robust: bool) -> NeutrosophicRelation:
    if isinstance(e, RelationRef):
        return _lookup(catalog, e.name)
    if isinstance(e, Split):
        return algebra.split(_eval(e.operand, catalog, robust))
    if isinstance(e, Combine):
        return algebra.combine(_eval(e.operand, catalog, robust))
    if isinstance(e, Complement):
        return _apply(robust, algebra.complement, [_eval(e.operand, catalog, robust)])
    if isinstance(e, Project):
        return _apply(robust, algebra.project, [_eval(e.operand, catalog, robust)], names=e.attrs)
    if isinstance(e, Select):
        return _apply(robust, algebra.select, [_eval(e.operand, catalog, robust)], formula=e.formula)
    left = _eval(e.left, catalog, robust)
    right = _eval(e.right, catalog, robust)
    return _apply(robust, _ROBUST_OPS[type(e)], [left, right])


def relations_used(e: QueryExpr) -> List[str]:
    """Relation names referenced by ``e``, first occurrence order."""
    out: List[str] = []

    def walk(node):
        if isinstance(node, RelationRef):
            if node.name not in out:
                out.append(node.name)
        elif isinstance(node, tuple(_BINARY)):
            walk(node.left)
            walk(node.right)
        else:
            walk(node.operand)

    walk(e)
    return out


__all__ = [
    "And",
    "AttrEqAttr",
    "AttrEqConst",
    "Combine",
    "Complement",
    "Intersect",
    "Join",
    "Minus",
    "Not",
    "Or",
    "Project",
    "QueryExpr",
    "RelationRef",
    "Select",
    "Split",
    "Union",
    "attributes",
    "evaluate",
    "format_formula",
    "format_query",
    "infer_scheme",
    "parse",
    "parse_formula",
    "tokenize",
]
