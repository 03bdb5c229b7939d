"""Operators on neutrosophic relations.

Every operator is pointwise over the whole tuple space, with unstored tuples
read as ``<0,0>``.  Only tuples that can end up non-default are visited, so
the cost follows the stored rows rather than the tuple space, except for
selection, which has to write ``<0,1>`` into every failing tuple.

When a tuple carries several pairs, a binary operator is applied to every
combination of the two operands' pairs and a unary one to each pair.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence

from .core import (
    DEFAULT_PAIR,
    ONE,
    ZERO,
    ConfidencePair,
    NeutrosophicRelation,
    Row,
    Scheme,
    extensions,
    tuple_space,
)
from .errors import MaterializationLimit, NotFunctional, ProjectionNotSubset, SchemeMismatch
from .formula import Formula, compile_formula

DEFAULT_MATERIALIZE_CAP = 10**6
CAP_ENV = "NEUTRO_MATERIALIZE_CAP"

PairFn = Callable[[ConfidencePair, ConfidencePair], ConfidencePair]


def materialize_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_MATERIALIZE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError("{0} must be an integer, got {1!r}".format(CAP_ENV, raw)) from None
    if cap < 0:
        raise ValueError("{0} must be non-negative".format(CAP_ENV))
    return cap


def _union_pair(r, s):
    return ConfidencePair(max(r.belief, s.belief), min(r.doubt, s.doubt))


def _intersection_pair(r, s):
    return ConfidencePair(min(r.belief, s.belief), max(r.doubt, s.doubt))


def _difference_pair(r, s):
    return ConfidencePair(min(r.belief, s.doubt), max(r.doubt, s.belief))


def _combine_pairs(left: frozenset, right: frozenset, fn: PairFn) -> frozenset:
    return frozenset(fn(r, s) for r in left for s in right)


def _aligned(r: NeutrosophicRelation, s: NeutrosophicRelation) -> Dict[Row, frozenset]:
    """``s``'s rows rewritten into ``r``'s attribute order."""
    if not r.scheme.same_attributes(s.scheme):
        raise SchemeMismatch("schemes {0} and {1} differ".format(r.scheme, s.scheme))
    if r.scheme.names == s.scheme.names:
        return s.rows
    perm = s.scheme.positions(r.scheme.names)
    return {tuple(t[i] for i in perm): ps for t, ps in s.rows.items()}


def _set_op(r: NeutrosophicRelation, s: NeutrosophicRelation, fn: PairFn) -> NeutrosophicRelation:
    # fn maps <0,0>,<0,0> to <0,0>, so tuples unstored on both sides stay default
    s_rows = _aligned(r, s)
    default = frozenset([DEFAULT_PAIR])
    rows = {}
    for t in r.rows.keys() | s_rows.keys():
        rows[t] = _combine_pairs(r.rows.get(t, default), s_rows.get(t, default), fn)
    return NeutrosophicRelation(r.scheme, rows)


def union(r: NeutrosophicRelation, s: NeutrosophicRelation) -> NeutrosophicRelation:
    """Belief is the larger of the two, doubt the smaller."""
    return _set_op(r, s, _union_pair)


def intersection(r: NeutrosophicRelation, s: NeutrosophicRelation) -> NeutrosophicRelation:
    return _set_op(r, s, _intersection_pair)


def difference(r: NeutrosophicRelation, s: NeutrosophicRelation) -> NeutrosophicRelation:
    """Belief in ``r`` and doubt in ``s``; doubt in ``r`` or belief in ``s``."""
    return _set_op(r, s, _difference_pair)


def complement(r: NeutrosophicRelation) -> NeutrosophicRelation:
    return NeutrosophicRelation(
        r.scheme, {t: frozenset(p.swapped() for p in ps) for t, ps in r.rows.items()}
    )


def join(r: NeutrosophicRelation, s: NeutrosophicRelation) -> NeutrosophicRelation:
    """Natural join on the attribute union; shared names must share domains."""
    scheme = r.scheme.merge(s.scheme)
    r_pos = scheme.positions(r.scheme.names)
    s_pos = scheme.positions(s.scheme.names)
    candidates = set()
    for t in r.rows:
        candidates.update(extensions(t, r.scheme, scheme))
    for t in s.rows:
        candidates.update(extensions(t, s.scheme, scheme))
    rows = {}
    for t in candidates:
        left = r.value(tuple(t[i] for i in r_pos))
        right = s.value(tuple(t[i] for i in s_pos))
        rows[t] = _combine_pairs(left, right, _intersection_pair)
    return NeutrosophicRelation(scheme, rows)


def _target_scheme(r: NeutrosophicRelation, names: Sequence[str]) -> Scheme:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise ProjectionNotSubset("projection list {0} repeats an attribute".format(list(names)))
    missing = [n for n in names if n not in r.scheme]
    if missing:
        raise ProjectionNotSubset("{0} not in scheme {1}".format(missing, r.scheme))
    return r.scheme.sub(names)


def _project_extrema(r: NeutrosophicRelation, names: Sequence[str], reduce_pairs) -> NeutrosophicRelation:
    # reduce_pairs turns one stored pair set into the <belief, doubt> it contributes
    target = _target_scheme(r, names)
    pos = r.scheme.positions(target.names)
    per_target = r.scheme.size // target.size
    best_b: Dict[Row, Fraction] = {}
    least_d: Dict[Row, Fraction] = {}
    seen: Dict[Row, int] = {}
    for u, ps in r.rows.items():
        t = tuple(u[i] for i in pos)
        b, d = reduce_pairs(ps)
        if t in seen:
            seen[t] += 1
            best_b[t] = max(best_b[t], b)
            least_d[t] = min(least_d[t], d)
        else:
            seen[t] = 1
            best_b[t], least_d[t] = b, d
    rows = {}
    for t, count in seen.items():
        # an unstored extension contributes <0,0>: belief unaffected, doubt floored at 0
        d = least_d[t] if count == per_target else ZERO
        rows[t] = ConfidencePair(best_b[t], d)
    return NeutrosophicRelation(target, rows)


def _only_pair(ps: frozenset):
    if len(ps) != 1:
        raise NotFunctional("projection needs one pair per tuple; found {0}".format(len(ps)))
    (p,) = ps
    return p.belief, p.doubt


def _pair_maxima(ps: frozenset):
    return max(p.belief for p in ps), max(p.doubt for p in ps)


def project(r: NeutrosophicRelation, names: Sequence[str]) -> NeutrosophicRelation:
    """Project a functional relation onto ``names``.

    Belief is the largest belief over a tuple's extensions, doubt the
    smallest doubt.  Multi-pair input is refused; use ``robust_apply``.
    """
    return _project_extrema(r, names, _only_pair)


def _project_choice(r: NeutrosophicRelation, names: Sequence[str]) -> NeutrosophicRelation:
    """Projection of a multi-pair relation, already collapsed by ``combine``.

    Picking one pair per extension and combining over all picks gives
    belief = max over extensions of the largest belief, and doubt = min over
    extensions of the largest doubt.
    """
    return _project_extrema(r, names, _pair_maxima)


def select(
    r: NeutrosophicRelation, formula: Formula, cap: Optional[int] = None
) -> NeutrosophicRelation:
    """Keep tuples satisfying ``formula``; every other tuple becomes ``<0,1>``."""
    test = compile_formula(formula, r.scheme)
    cap = materialize_cap() if cap is None else cap
    if r.scheme.size > cap:
        raise MaterializationLimit(
            "selection over {0} would materialize {1} tuples (cap {2})".format(
                r.scheme, r.scheme.size, cap
            )
        )
    rejected = frozenset([ConfidencePair(ZERO, ONE)])
    rows = {}
    for t in tuple_space(r.scheme):
        if not test(t):
            rows[t] = rejected
        elif t in r.rows:
            rows[t] = r.rows[t]
    return NeutrosophicRelation(r.scheme, rows)


def split(r: NeutrosophicRelation) -> NeutrosophicRelation:
    """Replace each pair with ``b + d > 1`` by ``<b, 1-b>`` and ``<1-d, d>``."""
    rows = {}
    for t, ps in r.rows.items():
        out = set()
        for p in ps:
            if p.weight <= 1:
                out.add(p)
            else:
                out.add(ConfidencePair(p.belief, ONE - p.belief))
                out.add(ConfidencePair(ONE - p.doubt, p.doubt))
        rows[t] = out
    return NeutrosophicRelation(r.scheme, rows)


def combine(r: NeutrosophicRelation) -> NeutrosophicRelation:
    """Collapse every pair set to ``<max belief, max doubt>``."""
    return NeutrosophicRelation(
        r.scheme, {t: ConfidencePair(*_pair_maxima(ps)) for t, ps in r.rows.items()}
    )


def robust_apply(op, *operands: NeutrosophicRelation, **params) -> NeutrosophicRelation:
    """``combine(op(split(a), split(b), ...))``.

    ``op`` is one of this module's operators; extra keyword arguments
    (``names`` for projection, ``formula`` for selection) are passed through.
    """
    parts = [split(x) for x in operands]
    if op is project:
        result = _project_choice(*parts, **params)
    else:
        result = op(*parts, **params)
    return combine(result)


def require_functional(*relations: NeutrosophicRelation) -> None:
    for rel in relations:
        if not rel.functional:
            bad = next(t for t, ps in rel.items() if len(ps) > 1)
            raise NotFunctional("tuple {0} on {1} carries several pairs".format(bad, rel.scheme))


OPERATORS = {
    "union": union,
    "intersection": intersection,
    "difference": difference,
    "complement": complement,
    "join": join,
    "project": project,
    "select": select,
}

