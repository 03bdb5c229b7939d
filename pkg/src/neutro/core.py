"""Schemes, tuples, exact grades and the neutrosophic relation value type.

Grades are ``fractions.Fraction`` values in ``[0, 1]``; floats are refused so
that every table reproduces exactly.  A tuple is a plain Python tuple of
domain values laid out in the order of its scheme's attributes.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import (
    DomainViolation,
    GradeOutOfRange,
    NotFunctional,
    NotTotal,
    SchemeMismatch,
    UnknownAttribute,
)

GradeLike = Union[Fraction, int, str, Decimal]
Row = Tuple[str, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_grade(value: GradeLike) -> Fraction:
    """Convert ``value`` to an exact grade, checking it lies in [0, 1].

    Strings may be decimals (``"0.85"``) or fractions (``"17/20"``).
    """
    if type(value) is Fraction:
        if 0 <= value.numerator <= value.denominator:
            return value
        raise GradeOutOfRange("grade {0} outside [0, 1]".format(value))
    if isinstance(value, (bool, float)):
        raise TypeError("grades must be exact; got {0!r}".format(value))
    if isinstance(value, Fraction):
        g = value
    elif isinstance(value, (int, Decimal)):
        g = Fraction(value)
    elif isinstance(value, str):
        text = value.strip()
        try:
            g = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise GradeOutOfRange("not a grade: {0!r}".format(value)) from None
    else:
        raise TypeError("cannot interpret {0!r} as a grade".format(value))
    if not ZERO <= g <= ONE:
        raise GradeOutOfRange("grade {0} outside [0, 1]".format(value))
    return g


@dataclass(frozen=True, order=True)
class ConfidencePair:
    """A ``<belief, doubt>`` pair.  The two components are not tied together."""

    belief: Fraction
    doubt: Fraction

    def __post_init__(self):
        object.__setattr__(self, "belief", to_grade(self.belief))
        object.__setattr__(self, "doubt", to_grade(self.doubt))

    @property
    def weight(self) -> Fraction:
        return self.belief + self.doubt

    def swapped(self) -> "ConfidencePair":
        return ConfidencePair(self.doubt, self.belief)

    def __iter__(self):
        yield self.belief
        yield self.doubt

    def __repr__(self):
        return "<{0},{1}>".format(self.belief, self.doubt)


DEFAULT_PAIR = ConfidencePair(ZERO, ZERO)
DEFAULT_PAIRS = frozenset([DEFAULT_PAIR])


def pair(belief: GradeLike, doubt: GradeLike) -> ConfidencePair:
    return ConfidencePair(belief, doubt)


@dataclass(frozen=True)
class Attribute:
    name: str
    domain: Tuple[str, ...]

    def __post_init__(self):
        domain = tuple(self.domain)
        if not self.name:
            raise SchemeMismatch("attribute names must be non-empty")
        if not domain:
            raise SchemeMismatch("attribute {0!r} has an empty domain".format(self.name))
        if len(set(domain)) != len(domain):
            raise SchemeMismatch("attribute {0!r} repeats a domain value".format(self.name))
        object.__setattr__(self, "domain", domain)


@dataclass(frozen=True)
class Scheme:
    """An ordered list of attributes, each with a finite declared domain."""

    attributes: Tuple[Attribute, ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _members: Tuple[frozenset, ...] = field(init=False, repr=False, compare=False, hash=False)
    names: Tuple[str, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        attrs = tuple(self.attributes)
        object.__setattr__(self, "attributes", attrs)
        index = {}
        for i, a in enumerate(attrs):
            if a.name in index:
                raise SchemeMismatch("duplicate attribute {0!r}".format(a.name))
            index[a.name] = i
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_members", tuple(frozenset(a.domain) for a in attrs))
        object.__setattr__(self, "names", tuple(a.name for a in attrs))

    @classmethod
    def of(cls, *spec: Tuple[str, Sequence[str]]) -> "Scheme":
        """``Scheme.of(("X", "abc"), ("Y", ["a", "b"]))``."""
        return cls(tuple(Attribute(name, tuple(dom)) for name, dom in spec))

    def __len__(self):
        return len(self.attributes)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownAttribute("no attribute {0!r} in scheme {1}".format(name, self)) from None

    def attribute(self, name: str) -> Attribute:
        return self.attributes[self.index(name)]

    def domain(self, name: str) -> Tuple[str, ...]:
        return self.attribute(name).domain

    @property
    def size(self) -> int:
        """Number of tuples in the tuple space."""
        n = 1
        for a in self.attributes:
            n *= len(a.domain)
        return n

    def same_attributes(self, other: "Scheme") -> bool:
        """True when both schemes bind the same names to the same domains, in any order."""
        return len(self) == len(other) and all(
            a.name in other and other.attribute(a.name) == a for a in self.attributes
        )

    def sub(self, names: Sequence[str]) -> "Scheme":
        """The scheme restricted to ``names``, in the order given."""
        return Scheme(tuple(self.attribute(n) for n in names))

    def merge(self, other: "Scheme") -> "Scheme":
        """Attribute union for a join: ``self``'s attributes, then ``other``'s new ones."""
        attrs = list(self.attributes)
        for a in other.attributes:
            if a.name in self:
                if self.attribute(a.name) != a:
                    raise SchemeMismatch(
                        "attribute {0!r} is bound to different domains".format(a.name)
                    )
            else:
                attrs.append(a)
        return Scheme(tuple(attrs))

    def positions(self, names: Sequence[str]) -> Tuple[int, ...]:
        return tuple(self.index(n) for n in names)

    def check(self, t: Row) -> Row:
        t = tuple(t)
        if len(t) != len(self.attributes):
            raise SchemeMismatch("tuple {0} does not fit scheme {1}".format(t, self))
        for v, members, a in zip(t, self._members, self.attributes):
            if v not in members:
                raise DomainViolation("value {0!r} not in domain of {1!r}".format(v, a.name))
        return t

    def tuple_from(self, bindings: Mapping[str, str]) -> Row:
        if set(bindings) != set(self.names):
            raise SchemeMismatch("bindings {0} do not match scheme {1}".format(sorted(bindings), self))
        return self.check(tuple(bindings[n] for n in self.names))

    def header(self) -> str:
        return " ".join("{0}{{{1}}}".format(a.name, ",".join(a.domain)) for a in self.attributes)

    def digest(self) -> str:
        return hashlib.sha256(self.header().encode("utf-8")).hexdigest()[:16]

    def __str__(self):
        return "<" + ",".join(self.names) + ">"


def tuple_space(scheme: Scheme) -> Iterator[Row]:
    """Every tuple on ``scheme``, in lexicographic attribute/value order."""
    return itertools.product(*(a.domain for a in scheme.attributes))


def extensions(t: Row, source: Scheme, target: Scheme) -> Iterator[Row]:
    """All tuples of ``target`` agreeing with ``t`` (a tuple on ``source``) on shared attributes."""
    for a in source.attributes:
        if a.name not in target or target.attribute(a.name) != a:
            raise SchemeMismatch("{0} is not contained in {1}".format(source, target))
    t = source.check(t)
    fixed = {a.name: v for a, v in zip(source.attributes, t)}
    choices = [(fixed[a.name],) if a.name in fixed else a.domain for a in target.attributes]
    return itertools.product(*choices)


def _freeze_pairs(pairs) -> frozenset:
    if isinstance(pairs, ConfidencePair):
        return frozenset([pairs])
    out = frozenset(p if isinstance(p, ConfidencePair) else ConfidencePair(*p) for p in pairs)
    if not out:
        raise ValueError("a stored tuple needs at least one confidence pair")
    return out


@dataclass(frozen=True)
class NeutrosophicRelation:
    """A finite map from tuples to non-empty sets of confidence pairs.

    Tuples that are not stored read as ``{<0,0>}``.  Construction always
    yields the canonical form: pair sets deduplicated and default entries
    dropped, so structural equality is semantic equality.
    """

    scheme: Scheme
    rows: Mapping[Row, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        rows = {}
        for t, pairs in dict(self.rows).items():
            t = self.scheme.check(t)
            ps = _freeze_pairs(pairs)
            if ps == DEFAULT_PAIRS:
                continue
            rows[t] = ps
        object.__setattr__(self, "rows", rows)

    def __hash__(self):
        return hash((self.scheme, frozenset(self.rows.items())))

    @classmethod
    def from_table(cls, scheme: Scheme, table: Iterable[Tuple[Sequence[str], GradeLike, GradeLike]]):
        """Build from ``(tuple, belief, doubt)`` rows; a repeated tuple collects several pairs."""
        rows: dict = {}
        for t, b, d in table:
            rows.setdefault(tuple(t), set()).add(ConfidencePair(b, d))
        return cls(scheme, rows)

    @classmethod
    def empty(cls, scheme: Scheme) -> "NeutrosophicRelation":
        return cls(scheme, {})

    def value(self, t: Row) -> frozenset:
        return self.rows.get(tuple(t), DEFAULT_PAIRS)

    def single(self, t: Row) -> ConfidencePair:
        """The only pair at ``t``; the relation must be functional there."""
        ps = self.rows.get(t)
        if ps is None:
            return DEFAULT_PAIR
        if len(ps) != 1:
            raise NotFunctional("tuple {0} carries {1} pairs".format(t, len(ps)))
        return next(iter(ps))

    @property
    def functional(self) -> bool:
        return all(len(ps) == 1 for ps in self.rows.values())

    def __len__(self):
        return len(self.rows)

    def items(self) -> Iterator[Tuple[Row, frozenset]]:
        """Stored rows in tuple-space order."""
        return iter(sorted(self.rows.items(), key=lambda kv: self._sort_key(kv[0])))

    def _sort_key(self, t: Row):
        return tuple(a.domain.index(v) for a, v in zip(self.scheme.attributes, t))

    def __repr__(self):
        body = ", ".join(
            "{0}: {1}".format(t, "{" + ", ".join(map(repr, sorted(ps))) + "}") for t, ps in self.items()
        )
        return "NeutrosophicRelation({0}, {{{1}}})".format(self.scheme, body)


def value_of(relation: NeutrosophicRelation, t: Row) -> frozenset:
    return relation.value(relation.scheme.check(t))


def canonicalize(relation: NeutrosophicRelation) -> NeutrosophicRelation:
    # construction canonicalizes; rebuilding is enough
    return NeutrosophicRelation(relation.scheme, relation.rows)


@dataclass(frozen=True)
class RelationClassification:
    consistent: bool
    complete: bool
    total: bool
    pseudo_consistent: bool
    functional: bool


def _pseudo_consistent_at(ps: frozenset) -> bool:
    top_b = max(p.belief for p in ps)
    top_d = max(p.doubt for p in ps)
    if top_b + top_d <= 1:
        return False
    return all(p.weight == 1 for p in ps if p.belief == top_b or p.doubt == top_d)


def classify(relation: NeutrosophicRelation) -> RelationClassification:
    rows = relation.rows
    functional = relation.functional
    consistent = all(p.weight <= 1 for ps in rows.values() for p in ps)
    fully_stored = len(rows) == relation.scheme.size
    complete = fully_stored and all(any(p.weight >= 1 for p in ps) for ps in rows.values())
    total = functional and fully_stored and all(p.weight == 1 for ps in rows.values() for p in ps)
    pseudo = any(_pseudo_consistent_at(ps) for ps in rows.values())
    return RelationClassification(consistent, complete, total, pseudo, functional)


@dataclass(frozen=True)
class FuzzyRelation:
    """A map from tuples to grades; unstored tuples have grade 0."""

    scheme: Scheme
    grades: Mapping[Row, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        grades = {}
        for t, g in dict(self.grades).items():
            g = to_grade(g)
            if g:
                grades[self.scheme.check(t)] = g
        object.__setattr__(self, "grades", grades)

    def __hash__(self):
        # numerator/denominator pairs hash much faster than Fraction.__hash__
        return hash(
            (self.scheme, frozenset((t, g.numerator, g.denominator) for t, g in self.grades.items()))
        )

    @classmethod
    def _trusted(cls, scheme: Scheme, grades: dict) -> "FuzzyRelation":
        # for operator results: tuples come from the tuple space and grades are
        # max/min/1-x of valid grades, so only the zero entries need dropping
        obj = object.__new__(cls)
        object.__setattr__(obj, "scheme", scheme)
        object.__setattr__(obj, "grades", {t: g for t, g in grades.items() if g})
        return obj

    def grade(self, t: Row) -> Fraction:
        return self.grades.get(tuple(t), ZERO)

    def __repr__(self):
        body = ", ".join("{0}: {1}".format(t, g) for t, g in sorted(self.grades.items()))
        return "FuzzyRelation({0}, {{{1}}})".format(self.scheme, body)


def to_fuzzy(relation: NeutrosophicRelation) -> FuzzyRelation:
    """The fuzzy relation carried by a total relation: its belief grades."""
    if not classify(relation).total:
        raise NotTotal("relation on {0} is not total".format(relation.scheme))
    return FuzzyRelation(relation.scheme, {t: next(iter(ps)).belief for t, ps in relation.rows.items()})


def from_fuzzy(relation: FuzzyRelation) -> NeutrosophicRelation:
    """Embed a fuzzy relation as the total relation ``<g, 1-g>``."""
    rows = {}
    for t in tuple_space(relation.scheme):
        g = relation.grade(t)
        rows[t] = frozenset([ConfidencePair(g, 1 - g)])
    return NeutrosophicRelation(relation.scheme, rows)
