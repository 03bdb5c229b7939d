"""Selection formulas: equality atoms combined with NOT, AND and OR."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, FrozenSet, Union

from .core import Row, Scheme
from .errors import DomainViolation


@dataclass(frozen=True)
class AttrEqConst:
    attr: str
    literal: str


@dataclass(frozen=True)
class AttrEqAttr:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[AttrEqConst, AttrEqAttr, Not, And, Or]


def attributes(f: Formula) -> FrozenSet[str]:
    if isinstance(f, AttrEqConst):
        return frozenset([f.attr])
    if isinstance(f, AttrEqAttr):
        return frozenset([f.left, f.right])
    if isinstance(f, Not):
        return attributes(f.operand)
    return attributes(f.left) | attributes(f.right)


def compile_formula(f: Formula, scheme: Scheme) -> Callable[[Row], bool]:
    """Resolve attribute names against ``scheme`` and return a tuple predicate.

    Raises UnknownAttribute for names outside the scheme and DomainViolation
    for a literal that is not in its attribute's domain.
    """
    if isinstance(f, AttrEqConst):
        i = scheme.index(f.attr)
        if f.literal not in scheme.attributes[i].domain:
            raise DomainViolation("{0!r} is not a value of {1!r}".format(f.literal, f.attr))
        lit = f.literal
        return lambda t: t[i] == lit
    if isinstance(f, AttrEqAttr):
        i, j = scheme.index(f.left), scheme.index(f.right)
        return lambda t: t[i] == t[j]
    if isinstance(f, Not):
        inner = compile_formula(f.operand, scheme)
        return lambda t: not inner(t)
    left = compile_formula(f.left, scheme)
    right = compile_formula(f.right, scheme)
    if isinstance(f, And):
        return lambda t: left(t) and right(t)
    if isinstance(f, Or):
        return lambda t: left(t) or right(t)
    raise TypeError("not a formula: {0!r}".format(f))


def holds(f: Formula, scheme: Scheme, t: Row) -> bool:
    return compile_formula(f, scheme)(t)


_FORMULA_PREC = {Or: 1, And: 2}


def quote(literal: str) -> str:
    return "'" + literal.replace("'", "''") + "'"


def format_formula(f: Formula, context: int = 0) -> str:
    """Query-language text for ``f`` using as few parentheses as possible."""
    if isinstance(f, AttrEqConst):
        return "{0} = {1}".format(f.attr, quote(f.literal))
    if isinstance(f, AttrEqAttr):
        return "{0} = {1}".format(f.left, f.right)
    if isinstance(f, Not):
        return "NOT " + format_formula(f.operand, 3)
    prec = _FORMULA_PREC[type(f)]
    word = "OR" if isinstance(f, Or) else "AND"
    text = "{0} {1} {2}".format(format_formula(f.left, prec), word, format_formula(f.right, prec + 1))
    return "(" + text + ")" if prec < context else text
