"""Line-oriented relation documents.

::

    # comment
    scheme: X{a,b,c} Y{a,b,c}
    row: a,b | 0 , 1
    row: c,b | 0.85 , 1/10

Domains are declared explicitly and never inferred from the rows.  A tuple
may appear on several rows to give it several confidence pairs; tuples that
never appear read as ``<0,0>``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import List, Union

from .core import Attribute, ConfidencePair, NeutrosophicRelation, Scheme, to_grade
from .errors import DocumentError

PathLike = Union[str, Path]

_ATTR = re.compile(r"([^\s{}]+)\{([^{}]*)\}")
_FORBIDDEN = set(",{}|#")


def format_grade(g: Fraction) -> str:
    """Shortest exact decimal, or ``p/q`` when the decimal does not terminate."""
    g = Fraction(g)
    den = g.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return "{0}/{1}".format(g.numerator, g.denominator)
    if g.denominator == 1:
        return str(g.numerator)
    places = max(twos, fives)
    digits = str(g.numerator * 10**places // g.denominator).rjust(places + 1, "0")
    return "{0}.{1}".format(digits[:-places], digits[-places:].rstrip("0"))


def _check_token(value: str, what: str, line=None) -> str:
    if not value or any(c in _FORBIDDEN or c.isspace() for c in value):
        raise DocumentError("{0} {1!r} cannot be written in a document".format(what, value), line)
    return value


def parse_scheme(text: str, line=None) -> Scheme:
    pos = 0
    attrs: List[Attribute] = []
    text = text.strip()
    while pos < len(text):
        m = _ATTR.match(text, pos)
        if m is None:
            raise DocumentError("malformed scheme declaration near {0!r}".format(text[pos:]), line)
        name = m.group(1)
        values = [v.strip() for v in m.group(2).split(",")]
        for v in values:
            _check_token(v, "domain value", line)
        try:
            attrs.append(Attribute(name, tuple(values)))
        except Exception as exc:
            raise DocumentError(str(exc), line) from None
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not attrs:
        raise DocumentError("scheme declares no attributes", line)
    try:
        return Scheme(tuple(attrs))
    except Exception as exc:
        raise DocumentError(str(exc), line) from None


def loads_relation(text: str) -> NeutrosophicRelation:
    scheme = None
    rows: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, rest = body.partition(":")
        key = key.strip()
        if not sep or key not in ("scheme", "row"):
            raise DocumentError("expected 'scheme:' or 'row:'", lineno)
        if key == "scheme":
            if scheme is not None:
                raise DocumentError("scheme declared twice", lineno)
            scheme = parse_scheme(rest, lineno)
            continue
        if scheme is None:
            raise DocumentError("row before the scheme declaration", lineno)
        values, bar, grades = rest.partition("|")
        if not bar:
            raise DocumentError("row needs 'values | belief , doubt'", lineno)
        t = tuple(v.strip() for v in values.split(","))
        parts = [g.strip() for g in grades.split(",")]
        if len(parts) != 2:
            raise DocumentError("row needs exactly two grades", lineno)
        # DomainViolation and GradeOutOfRange propagate unchanged
        t = scheme.check(t)
        rows.setdefault(t, set()).add(ConfidencePair(to_grade(parts[0]), to_grade(parts[1])))
    if scheme is None:
        raise DocumentError("missing scheme declaration")
    return NeutrosophicRelation(scheme, rows)


def dumps_relation(relation: NeutrosophicRelation) -> str:
    scheme = relation.scheme
    for a in scheme.attributes:
        _check_token(a.name, "attribute name")
        for v in a.domain:
            _check_token(v, "domain value")
    lines = ["scheme: " + scheme.header()]
    for t, ps in relation.items():
        for p in sorted(ps):
            lines.append(
                "row: {0} | {1} , {2}".format(",".join(t), format_grade(p.belief), format_grade(p.doubt))
            )
    return "\n".join(lines) + "\n"


def load_relation(path: PathLike) -> NeutrosophicRelation:
    return loads_relation(Path(path).read_text(encoding="utf-8"))


def save_relation(relation: NeutrosophicRelation, path: PathLike) -> None:
    Path(path).write_text(dumps_relation(relation), encoding="utf-8")


def format_pair(p: ConfidencePair) -> str:
    return "<{0}, {1}>".format(format_grade(p.belief), format_grade(p.doubt))


def format_table(relation: NeutrosophicRelation) -> str:
    """Aligned text table of the stored rows, one line per pair."""
    header = list(relation.scheme.names) + ["<belief, doubt>"]
    body = [list(t) + [format_pair(p)] for t, ps in relation.items() for p in sorted(ps)]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    out = ["  ".join(c.ljust(w) for c, w in zip(header, widths)).rstrip()]
    out.append("  ".join("-" * w for w in widths))
    for r in body:
        out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    if not body:
        out.append("(no rows)")
    return "\n".join(out)
