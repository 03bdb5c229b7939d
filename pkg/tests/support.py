"""Generators and a dense brute-force reference algebra shared by the tests.

The reference operators below walk the whole tuple space and read every
tuple through ``value_of``, so they share no code path with the sparse
implementations in ``neutro.algebra``.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from hypothesis import strategies as st

from neutro import query as q
from neutro import ConfidencePair, NeutrosophicRelation, Scheme, tuple_space, value_of
from neutro.formula import And, AttrEqAttr, AttrEqConst, Not, Or, holds

NAMES = ("X", "Y", "Z")
VALUES = "abc"


def grid(k: int) -> List[Fraction]:
    return [Fraction(i, k) for i in range(k + 1)]


# -- seeded generators (acceptance suite) --------------------------------------


class RelationFactory:
    """Deterministic random relations on schemes of at most 2 attributes x 3 values."""

    def __init__(self, seed: int, k: int = 20):
        self.rng = random.Random(seed)
        self.k = k

    def grade(self) -> Fraction:
        return Fraction(self.rng.randint(0, self.k), self.k)

    def domains(self) -> Dict[str, str]:
        return {n: VALUES[: self.rng.randint(1, 3)] for n in NAMES}

    def scheme(self, domains=None, names=None) -> Scheme:
        domains = domains or self.domains()
        if names is None:
            names = self.rng.sample(NAMES, self.rng.randint(1, 2))
        return Scheme.of(*((n, domains[n]) for n in names))

    def pair(self, kind: str) -> ConfidencePair:
        if kind == "total":
            b = self.grade()
            return ConfidencePair(b, 1 - b)
        if kind == "consistent":
            b = self.grade()
            return ConfidencePair(b, Fraction(self.rng.randint(0, int((1 - b) * self.k)), self.k))
        return ConfidencePair(self.grade(), self.grade())

    def functional(self, scheme: Scheme, kind: str = "any") -> NeutrosophicRelation:
        """``kind`` is "any" (inconsistent allowed), "consistent" or "total"."""
        rows = {}
        for t in tuple_space(scheme):
            if kind == "total" or self.rng.random() < 0.7:
                rows[t] = {self.pair(kind)}
        return NeutrosophicRelation(scheme, rows)

    def formula(self, scheme: Scheme):
        names = scheme.names
        atom_kind = self.rng.random()
        a = self.rng.choice(names)
        if atom_kind < 0.5:
            f = AttrEqConst(a, self.rng.choice(scheme.domain(a)))
        else:
            f = AttrEqAttr(a, self.rng.choice(names))
        roll = self.rng.random()
        if roll < 0.25:
            return Not(f)
        if roll < 0.5:
            return And(f, self.formula(scheme)) if self.rng.random() < 0.5 else Or(f, Not(f))
        return f


# -- hypothesis strategies -------------------------------------------------------

grades = st.integers(0, 20).map(lambda n: Fraction(n, 20))
pairs = st.builds(ConfidencePair, grades, grades)


@st.composite
def schemes(draw, max_attrs: int = 2, names: Sequence[str] = NAMES):
    chosen = draw(st.lists(st.sampled_from(names), min_size=1, max_size=max_attrs, unique=True))
    return Scheme.of(*((n, VALUES[: draw(st.integers(1, 3))]) for n in chosen))


@st.composite
def relations(draw, scheme: Scheme, multi: bool = False, pair_strategy=pairs):
    rows = {}
    for t in tuple_space(scheme):
        if draw(st.booleans()):
            size = draw(st.integers(1, 3)) if multi else 1
            rows[t] = set(draw(st.lists(pair_strategy, min_size=size, max_size=size)))
    return NeutrosophicRelation(scheme, rows)


@st.composite
def relation_on_any_scheme(draw, multi: bool = False):
    return draw(relations(draw(schemes()), multi=multi))


@st.composite
def relation_pair(draw, multi: bool = False):
    s = draw(schemes())
    return draw(relations(s, multi=multi)), draw(relations(s, multi=multi))


@st.composite
def joinable_pair(draw, multi: bool = False):
    sizes = {n: draw(st.integers(1, 3)) for n in NAMES}
    left = draw(st.lists(st.sampled_from(NAMES), min_size=1, max_size=2, unique=True))
    right = draw(st.lists(st.sampled_from(NAMES), min_size=1, max_size=2, unique=True))
    ls = Scheme.of(*((n, VALUES[: sizes[n]]) for n in left))
    rs = Scheme.of(*((n, VALUES[: sizes[n]]) for n in right))
    return draw(relations(ls, multi=multi)), draw(relations(rs, multi=multi))


# -- dense reference algebra -----------------------------------------------------


def dense(r: NeutrosophicRelation) -> Dict[Tuple[str, ...], frozenset]:
    return {t: value_of(r, t) for t in tuple_space(r.scheme)}


def _rebuild(scheme: Scheme, table) -> NeutrosophicRelation:
    return NeutrosophicRelation(scheme, {t: set(ps) for t, ps in table.items()})


def _lift(left, right, fn):
    return {fn(p, q) for p in left for q in right}


def ref_union(r, s):
    return _rebuild(r.scheme, {
        t: _lift(value_of(r, t), value_of(s, t),
                 lambda p, q: ConfidencePair(max(p.belief, q.belief), min(p.doubt, q.doubt)))
        for t in tuple_space(r.scheme)
    })


def ref_intersection(r, s):
    return _rebuild(r.scheme, {
        t: _lift(value_of(r, t), value_of(s, t),
                 lambda p, q: ConfidencePair(min(p.belief, q.belief), max(p.doubt, q.doubt)))
        for t in tuple_space(r.scheme)
    })


def ref_difference(r, s):
    return _rebuild(r.scheme, {
        t: _lift(value_of(r, t), value_of(s, t),
                 lambda p, q: ConfidencePair(min(p.belief, q.doubt), max(p.doubt, q.belief)))
        for t in tuple_space(r.scheme)
    })


def ref_complement(r):
    return _rebuild(r.scheme, {
        t: {ConfidencePair(p.doubt, p.belief) for p in value_of(r, t)} for t in tuple_space(r.scheme)
    })


def ref_join(r, s):
    names = list(r.scheme.names) + [n for n in s.scheme.names if n not in r.scheme.names]
    doms = {a.name: a.domain for a in r.scheme.attributes + s.scheme.attributes}
    target = Scheme.of(*((n, doms[n]) for n in names))
    table = {}
    for t in tuple_space(target):
        binding = dict(zip(names, t))
        tr = tuple(binding[n] for n in r.scheme.names)
        ts = tuple(binding[n] for n in s.scheme.names)
        table[t] = _lift(value_of(r, tr), value_of(s, ts),
                         lambda p, q: ConfidencePair(min(p.belief, q.belief), max(p.doubt, q.doubt)))
    return _rebuild(target, table)


def _extension_values(r, names):
    target = r.scheme.sub(names)
    groups = {t: [] for t in tuple_space(target)}
    for u in tuple_space(r.scheme):
        binding = dict(zip(r.scheme.names, u))
        groups[tuple(binding[n] for n in names)].append(value_of(r, u))
    return target, groups


def ref_project(r, names):
    """Projection of a functional relation by extrema over extensions, defaults included."""
    target, groups = _extension_values(r, names)
    table = {}
    for t, values in groups.items():
        ps = [next(iter(v)) for v in values]
        table[t] = {ConfidencePair(max(p.belief for p in ps), min(p.doubt for p in ps))}
    return _rebuild(target, table)


def ref_project_choices(r, names):
    """Pick one pair per extension in every possible way, then collapse by max/max."""
    target, groups = _extension_values(r, names)
    table = {}
    for t, values in groups.items():
        outcomes = [
            ConfidencePair(max(p.belief for p in choice), min(p.doubt for p in choice))
            for choice in itertools.product(*values)
        ]
        table[t] = {ConfidencePair(max(p.belief for p in outcomes), max(p.doubt for p in outcomes))}
    return _rebuild(target, table)


def ref_select(r, formula):
    table = {}
    for t in tuple_space(r.scheme):
        table[t] = value_of(r, t) if holds(formula, r.scheme, t) else {ConfidencePair(0, 1)}
    return _rebuild(r.scheme, table)


def ref_split(r):
    table = {}
    for t in tuple_space(r.scheme):
        out = set()
        for p in value_of(r, t):
            if p.belief + p.doubt <= 1:
                out.add(p)
            else:
                out.add(ConfidencePair(p.belief, 1 - p.belief))
                out.add(ConfidencePair(1 - p.doubt, p.doubt))
        table[t] = out
    return _rebuild(r.scheme, table)


def ref_combine(r):
    return _rebuild(r.scheme, {
        t: {ConfidencePair(max(p.belief for p in ps), max(p.doubt for p in ps))}
        for t, ps in dense(r).items()
    })


# -- random queries ------------------------------------------------------------------

IDENTS = ("R", "S", "T1", "Radar_Data", "Object-id", "x.y", "_tmp", "A2")
LITERALS = ("a", "T-72", "it's", "", "two words", "UNION", "0.5")


class QueryFactory:
    """Deterministic random well-formed query trees."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def formula(self, depth: int = 3):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.35:
            if rng.random() < 0.5:
                return AttrEqAttr(rng.choice(IDENTS), rng.choice(IDENTS))
            return AttrEqConst(rng.choice(IDENTS), rng.choice(LITERALS))
        kind = rng.choice(("not", "and", "or"))
        if kind == "not":
            return Not(self.formula(depth - 1))
        node = And if kind == "and" else Or
        return node(self.formula(depth - 1), self.formula(depth - 1))

    def query(self, depth: int = 4):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.25:
            return q.RelationRef(rng.choice(IDENTS))
        kind = rng.choice(("union", "intersect", "minus", "join", "not", "project", "select", "split", "combine"))
        if kind in ("union", "intersect", "minus", "join"):
            node = {"union": q.Union, "intersect": q.Intersect, "minus": q.Minus, "join": q.Join}[kind]
            return node(self.query(depth - 1), self.query(depth - 1))
        if kind == "not":
            return q.Complement(self.query(depth - 1))
        if kind == "project":
            return q.Project(tuple(rng.sample(IDENTS, rng.randint(1, 3))), self.query(depth - 1))
        if kind == "select":
            return q.Select(self.formula(), self.query(depth - 1))
        return (q.Split if kind == "split" else q.Combine)(self.query(depth - 1))
