"""Relational algebra over neutrosophic relations.

Tuples carry ``<belief, doubt>`` pairs that need not sum to one, so a
relation can hold incomplete and inconsistent information side by side.
"""

from .algebra import (
    combine,
    complement,
    difference,
    intersection,
    join,
    project,
    robust_apply,
    select,
    split,
    union,
)
from .core import (
    Attribute,
    ConfidencePair,
    FuzzyRelation,
    NeutrosophicRelation,
    RelationClassification,
    Scheme,
    canonicalize,
    classify,
    extensions,
    from_fuzzy,
    pair,
    to_fuzzy,
    to_grade,
    tuple_space,
    value_of,
)
from .document import dumps_relation, load_relation, loads_relation, save_relation
from .query import evaluate, format_query, infer_scheme, parse

__version__ = "0.1.0"

__all__ = [
    "Attribute",
    "ConfidencePair",
    "FuzzyRelation",
    "NeutrosophicRelation",
    "RelationClassification",
    "Scheme",
    "canonicalize",
    "classify",
    "combine",
    "complement",
    "difference",
    "dumps_relation",
    "evaluate",
    "extensions",
    "format_query",
    "from_fuzzy",
    "infer_scheme",
    "intersection",
    "join",
    "load_relation",
    "loads_relation",
    "pair",
    "parse",
    "project",
    "robust_apply",
    "save_relation",
    "select",
    "split",
    "to_fuzzy",
    "to_grade",
    "tuple_space",
    "union",
    "value_of",
]
