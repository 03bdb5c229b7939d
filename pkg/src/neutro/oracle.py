"""Fuzzy reference algebra and brute-force generalization checks.

The fuzzy operators here walk the full tuple space on purpose: they are the
yardstick the neutrosophic operators are measured against and share no code
with them.  Completions of a consistent relation are enumerated on a finite
grade grid ``{0, 1/k, ..., 1}``; every operator only uses max, min and
``1 - x``, so grid inputs stay on the grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from . import algebra
from .core import (
    ONE,
    ZERO,
    ConfidencePair,
    FuzzyRelation,
    NeutrosophicRelation,
    Row,
    Scheme,
    classify,
    to_fuzzy,
    tuple_space,
)
from .errors import BudgetExceeded, NotConsistent, NotFunctional, OffGrid, SchemeMismatch
from .formula import And, AttrEqAttr, AttrEqConst, Formula, Not, Or, compile_formula, format_formula

FuzzyRelationSet = FrozenSet[FuzzyRelation]


@dataclass(frozen=True)
class GradeGrid:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("grid denominator must be positive")

    @property
    def points(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(i, self.k) for i in range(self.k + 1))

    def __contains__(self, g) -> bool:
        return ZERO <= g <= ONE and (g * self.k).denominator == 1

    def between(self, lo: Fraction, hi: Fraction) -> Tuple[Fraction, ...]:
        return tuple(g for g in self.points if lo <= g <= hi)


# -- fuzzy operators ---------------------------------------------------------


def _other_reader(r: FuzzyRelation, s: FuzzyRelation) -> Callable[[Row], Fraction]:
    if not r.scheme.same_attributes(s.scheme):
        raise SchemeMismatch("schemes {0} and {1} differ".format(r.scheme, s.scheme))
    if r.scheme.names == s.scheme.names:
        return s.grade
    perm = r.scheme.positions(s.scheme.names)
    return lambda t: s.grade(tuple(t[i] for i in perm))


def fuzzy_union(r: FuzzyRelation, s: FuzzyRelation) -> FuzzyRelation:
    sg = _other_reader(r, s)
    return FuzzyRelation._trusted(r.scheme, {t: max(r.grade(t), sg(t)) for t in tuple_space(r.scheme)})


def fuzzy_complement(r: FuzzyRelation) -> FuzzyRelation:
    return FuzzyRelation._trusted(r.scheme, {t: 1 - r.grade(t) for t in tuple_space(r.scheme)})


def fuzzy_intersection(r: FuzzyRelation, s: FuzzyRelation) -> FuzzyRelation:
    sg = _other_reader(r, s)
    return FuzzyRelation._trusted(r.scheme, {t: min(r.grade(t), sg(t)) for t in tuple_space(r.scheme)})


def fuzzy_difference(r: FuzzyRelation, s: FuzzyRelation) -> FuzzyRelation:
    sg = _other_reader(r, s)
    return FuzzyRelation._trusted(r.scheme, {t: min(r.grade(t), 1 - sg(t)) for t in tuple_space(r.scheme)})


def fuzzy_join(r: FuzzyRelation, s: FuzzyRelation) -> FuzzyRelation:
    scheme = r.scheme.merge(s.scheme)
    rp = scheme.positions(r.scheme.names)
    sp = scheme.positions(s.scheme.names)
    grades = {}
    for t in tuple_space(scheme):
        grades[t] = min(r.grade(tuple(t[i] for i in rp)), s.grade(tuple(t[i] for i in sp)))
    return FuzzyRelation._trusted(scheme, grades)


def fuzzy_project(r: FuzzyRelation, names: Sequence[str]) -> FuzzyRelation:
    target = r.scheme.sub(names)
    pos = r.scheme.positions(target.names)
    grades = {t: ZERO for t in tuple_space(target)}
    for u in tuple_space(r.scheme):
        t = tuple(u[i] for i in pos)
        grades[t] = max(grades[t], r.grade(u))
    return FuzzyRelation._trusted(target, grades)


def fuzzy_select(r: FuzzyRelation, formula: Formula) -> FuzzyRelation:
    test = compile_formula(formula, r.scheme)
    return FuzzyRelation._trusted(r.scheme, {t: r.grade(t) for t in tuple_space(r.scheme) if test(t)})


_SET_OPS = {
    "union": fuzzy_union,
    "complement": fuzzy_complement,
    "intersection": fuzzy_intersection,
    "difference": fuzzy_difference,
}
_REL_OPS = {"join": fuzzy_join, "project": fuzzy_project, "select": fuzzy_select}


def fuzzy_set_op(kind: str, r: FuzzyRelation, s: Optional[FuzzyRelation] = None) -> FuzzyRelation:
    op = _SET_OPS[kind]
    if kind == "complement":
        return op(r)
    if s is None:
        raise TypeError("{0} needs two operands".format(kind))
    return op(r, s)


def fuzzy_rel_op(kind: str, *args) -> FuzzyRelation:
    return _REL_OPS[kind](*args)


# -- completions and lifted images ---------------------------------------------


def _interval_points(relation: NeutrosophicRelation, grid: GradeGrid) -> List[Tuple[Fraction, ...]]:
    if not relation.functional:
        raise NotFunctional("completions need one pair per tuple")
    points = []
    for t in tuple_space(relation.scheme):
        p = relation.single(t)
        if p.weight > 1:
            raise NotConsistent("tuple {0} has {1}".format(t, p))
        lo, hi = p.belief, 1 - p.doubt
        if lo not in grid or hi not in grid:
            raise OffGrid("interval [{0}, {1}] at {2} is off the 1/{3} grid".format(lo, hi, t, grid.k))
        points.append(grid.between(lo, hi))
    return points


def reps(relation: NeutrosophicRelation, grid: GradeGrid) -> FuzzyRelationSet:
    """All grid fuzzy relations lying between belief and one minus doubt everywhere."""
    points = _interval_points(relation, grid)
    space = list(tuple_space(relation.scheme))
    return frozenset(
        FuzzyRelation(relation.scheme, dict(zip(space, choice))) for choice in itertools.product(*points)
    )


def reps_size(relation: NeutrosophicRelation, grid: GradeGrid) -> int:
    n = 1
    for pts in _interval_points(relation, grid):
        n *= len(pts)
    return n


def s_image(op: Callable[..., FuzzyRelation], *sets: FuzzyRelationSet) -> FuzzyRelationSet:
    """``{op(r1, ..., rn) : ri in sets[i]}``."""
    return frozenset(op(*combo) for combo in itertools.product(*sets))


# -- enumeration ---------------------------------------------------------------


def _relations(scheme: Scheme, per_tuple: Sequence[ConfidencePair]) -> Iterator[NeutrosophicRelation]:
    space = list(tuple_space(scheme))
    for choice in itertools.product(per_tuple, repeat=len(space)):
        yield NeutrosophicRelation(scheme, dict(zip(space, choice)))


def total_relations(scheme: Scheme, grid: GradeGrid) -> Iterator[NeutrosophicRelation]:
    return _relations(scheme, [ConfidencePair(g, 1 - g) for g in grid.points])


def consistent_relations(scheme: Scheme, grid: GradeGrid) -> Iterator[NeutrosophicRelation]:
    pairs = [ConfidencePair(b, d) for b in grid.points for d in grid.points if b + d <= 1]
    return _relations(scheme, pairs)


# -- checkers ------------------------------------------------------------------


@dataclass(frozen=True)
class Budget:
    """Upper bounds for exhaustive checks: tuple-space size and grid denominator."""

    max_tuples: int = 4
    max_grid: int = 4

    def admit(self, schemes: Sequence[Scheme], grid: GradeGrid) -> None:
        if grid.k > self.max_grid:
            raise BudgetExceeded("grid 1/{0} exceeds budget 1/{1}".format(grid.k, self.max_grid))
        for s in schemes:
            if s.size > self.max_tuples:
                raise BudgetExceeded(
                    "scheme {0} has {1} tuples, budget is {2}".format(s, s.size, self.max_tuples)
                )


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    instances: int
    counterexample: Optional[Tuple[NeutrosophicRelation, ...]] = None
    reason: str = ""


def _result_schemes(neutro_op, schemes: Sequence[Scheme]) -> List[Scheme]:
    # run once on empty relations to learn the output scheme for the budget check
    probe = neutro_op(*(NeutrosophicRelation.empty(s) for s in schemes))
    return list(schemes) + [probe.scheme]


def check_weak(
    neutro_op,
    fuzzy_op,
    schemes: Sequence[Scheme],
    grid: GradeGrid,
    budget: Budget = Budget(),
    name: str = "",
) -> Verdict:
    """Compare the operators on every combination of total grid relations."""
    budget.admit(_result_schemes(neutro_op, schemes), grid)
    pools = [list(total_relations(s, grid)) for s in schemes]
    lifted = [[to_fuzzy(r) for r in pool] for pool in pools]
    count = 0
    for idx in itertools.product(*(range(len(p)) for p in pools)):
        operands = tuple(pool[i] for pool, i in zip(pools, idx))
        count += 1
        out = neutro_op(*operands)
        if not classify(out).total:
            return Verdict(name, False, count, operands, "result is not total")
        expected = fuzzy_op(*(lift[i] for lift, i in zip(lifted, idx)))
        if to_fuzzy(out) != expected:
            return Verdict(name, False, count, operands, "belief grades differ from the fuzzy result")
    return Verdict(name, True, count)


def check_strong(
    neutro_op,
    fuzzy_op,
    schemes: Sequence[Scheme],
    grid: GradeGrid,
    budget: Budget = Budget(),
    name: str = "",
) -> Verdict:
    """Compare completions of the result with the lifted image of the operands' completions."""
    budget.admit(_result_schemes(neutro_op, schemes), grid)
    pools = [[(r, reps(r, grid)) for r in consistent_relations(s, grid)] for s in schemes]
    count = 0
    for combo in itertools.product(*pools):
        operands = tuple(r for r, _ in combo)
        count += 1
        out = neutro_op(*operands)
        shape = classify(out)
        if not (shape.consistent and shape.functional):
            return Verdict(name, False, count, operands, "result is not consistent")
        try:
            lhs = reps(out, grid)
        except OffGrid as exc:
            return Verdict(name, False, count, operands, str(exc))
        if lhs != s_image(fuzzy_op, *(m for _, m in combo)):
            return Verdict(name, False, count, operands, "completion sets differ")
    return Verdict(name, True, count)


def check_singleton_completions(scheme: Scheme, grid: GradeGrid, budget: Budget = Budget()) -> Verdict:
    """A consistent relation has exactly one completion iff it is total."""
    budget.admit([scheme], grid)
    count = 0
    for r in consistent_relations(scheme, grid):
        count += 1
        completions = reps(r, grid)
        total = classify(r).total
        if (len(completions) == 1) != total:
            return Verdict("singleton-completions", False, count, (r,), "singleton/total disagree")
        if total and completions != {to_fuzzy(r)}:
            return Verdict("singleton-completions", False, count, (r,), "completion is not the belief map")
    return Verdict("singleton-completions", True, count)


# -- bundled operator instances ----------------------------------------------


@dataclass(frozen=True)
class OperatorCase:
    name: str
    neutro_op: Callable[..., NeutrosophicRelation]
    fuzzy_op: Callable[..., FuzzyRelation]
    schemes: Tuple[Scheme, ...] = field(default_factory=tuple)


def _x(values: str) -> Scheme:
    return Scheme.of(("X", values))


FORMULA_SUITE: Tuple[Tuple[Formula, Scheme], ...] = (
    (AttrEqConst("X", "a"), _x("abc")),
    (Not(AttrEqConst("X", "a")), _x("abc")),
    (Or(AttrEqConst("X", "a"), AttrEqConst("X", "c")), _x("abc")),
    (AttrEqAttr("X", "Y"), Scheme.of(("X", "ab"), ("Y", "a"))),
    (And(AttrEqAttr("X", "Y"), AttrEqConst("X", "a")), Scheme.of(("X", "ab"), ("Y", "a"))),
    (Or(Not(AttrEqAttr("X", "Y")), AttrEqConst("Y", "a")), Scheme.of(("X", "a"), ("Y", "abc"))),
)


def standard_cases() -> List[OperatorCase]:
    """The operator instances exercised by ``verify`` and the acceptance suite."""
    three = _x("abc")
    cases = [
        OperatorCase("union", algebra.union, fuzzy_union, (three, three)),
        OperatorCase("complement", algebra.complement, fuzzy_complement, (three,)),
        OperatorCase("intersection", algebra.intersection, fuzzy_intersection, (three, three)),
        OperatorCase("difference", algebra.difference, fuzzy_difference, (three, three)),
        OperatorCase("join shared", algebra.join, fuzzy_join, (_x("ab"), _x("ab"))),
        OperatorCase(
            "join disjoint", algebra.join, fuzzy_join, (_x("ab"), Scheme.of(("Y", "ab")))
        ),
        OperatorCase(
            "join overlap",
            algebra.join,
            fuzzy_join,
            (Scheme.of(("X", "ab"), ("Y", "a")), Scheme.of(("Y", "a"), ("Z", "ab"))),
        ),
    ]
    for names, scheme in (
        (("X",), Scheme.of(("X", "a"), ("Y", "abc"))),
        (("Y",), Scheme.of(("X", "ab"), ("Y", "a"))),
        (("X",), three),
    ):
        cases.append(
            OperatorCase(
                "project {0}->{1}".format(scheme, "<" + ",".join(names) + ">"),
                lambda r, names=names: algebra.project(r, names),
                lambda r, names=names: fuzzy_project(r, names),
                (scheme,),
            )
        )
    for formula, scheme in FORMULA_SUITE:
        cases.append(
            OperatorCase(
                "select {0}".format(format_formula(formula)),
                lambda r, f=formula: algebra.select(r, f),
                lambda r, f=formula: fuzzy_select(r, f),
                (scheme,),
            )
        )
    return cases
