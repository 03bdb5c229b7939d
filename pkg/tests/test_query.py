import pytest
from hypothesis import given, strategies as st

from neutro import NeutrosophicRelation, Scheme, classify, pair
from neutro.demos import TANK_QUERY, example2_catalog, fixture, tank_catalog
from neutro.errors import (
    NotFunctional,
    ProjectionNotSubset,
    QuerySyntaxError,
    SchemeMismatch,
    UnknownAttribute,
    UnknownRelation,
)
from neutro.formula import And, AttrEqAttr, AttrEqConst, Not, Or
from neutro.query import (
    Combine,
    Complement,
    Intersect,
    Join,
    Minus,
    Project,
    RelationRef,
    Select,
    Split,
    Union,
    evaluate,
    format_query,
    infer_scheme,
    parse,
    parse_formula,
    relations_used,
    tokenize,
)

import support

A, B, C, D = (RelationRef(n) for n in "ABCD")
R, S = RelationRef("R"), RelationRef("S")


# -- parsing ---------------------------------------------------------------------------


def test_parse_examples():
    assert parse("COMBINE(SPLIT(R) JOIN SPLIT(S))") == Combine(Join(Split(R), Split(S)))
    assert parse("SELECT[NOT(X = Z)](T2)") == Select(Not(AttrEqAttr("X", "Z")), RelationRef("T2"))
    assert parse("A UNION B INTERSECT C") == Union(A, Intersect(B, C))


@pytest.mark.parametrize(
    "text, tree",
    [
        ("A UNION B UNION C", Union(Union(A, B), C)),
        ("A MINUS B INTERSECT C", Intersect(Minus(A, B), C)),
        ("A JOIN B MINUS C JOIN D", Minus(Join(A, B), Join(C, D))),
        ("NOT A JOIN B", Join(Complement(A), B)),
        ("NOT (A JOIN B)", Complement(Join(A, B))),
        ("A UNION (B UNION C)", Union(A, Union(B, C))),
        ("NOT NOT A", Complement(Complement(A))),
        ("((A))", A),
        ("PROJECT[X, Z](A JOIN B)", Project(("X", "Z"), Join(A, B))),
    ],
)
def test_precedence_and_associativity(text, tree):
    assert parse(text) == tree


def test_formula_precedence():
    assert parse_formula("X = 'a' OR Y = Z AND NOT X = Y") == Or(
        AttrEqConst("X", "a"), And(AttrEqAttr("Y", "Z"), Not(AttrEqAttr("X", "Y")))
    )
    assert parse_formula("(X = 'a' OR Y = 'b') AND Z = 'c'") == And(
        Or(AttrEqConst("X", "a"), AttrEqConst("Y", "b")), AttrEqConst("Z", "c")
    )
    assert parse_formula("X = 'it''s'") == AttrEqConst("X", "it's")


def test_identifiers_with_dashes_and_dots():
    assert parse("PROJECT[Object-id, Object](Radar.Data)") == Project(
        ("Object-id", "Object"), RelationRef("Radar.Data")
    )


@pytest.mark.parametrize(
    "text, line, column, expected",
    [
        ("A UNION", 1, 8, {"identifier", "NOT", "PROJECT", "SELECT", "SPLIT", "COMBINE", "("}),
        ("A B", 1, 3, {"UNION", "INTERSECT", "MINUS", "JOIN", "end of input"}),
        ("PROJECT[X](A", 1, 13, {")"}),
        ("SELECT[X = ](A)", 1, 12, {"identifier", "string literal"}),
        ("A\n  UNION ]", 2, 9, {"identifier", "NOT", "PROJECT", "SELECT", "SPLIT", "COMBINE", "("}),
        ("PROJECT[](A)", 1, 9, {"identifier"}),
    ],
)
def test_syntax_errors_report_position(text, line, column, expected):
    with pytest.raises(QuerySyntaxError) as info:
        parse(text)
    err = info.value
    assert (err.line, err.column) == (line, column)
    assert set(err.expected) == expected
    assert str(err).startswith("{0}:{1}:".format(line, column))


def test_lexical_errors():
    with pytest.raises(QuerySyntaxError) as info:
        parse("SELECT[X = 'a](R)")
    assert info.value.column == 12
    with pytest.raises(QuerySyntaxError):
        parse("A & B")
    with pytest.raises(QuerySyntaxError):
        parse("PROJECT[X, X](A)")


def test_keywords_are_case_sensitive():
    assert parse("union") == RelationRef("union")
    assert [t.kind for t in tokenize("UNION union")] == ["kw", "ident", "end"]


# -- printing ------------------------------------------------------------------------------


def test_format_examples():
    assert format_query(Union(A, B)) == "A UNION B"
    assert format_query(Union(Union(A, B), C)) == "A UNION B UNION C"
    assert format_query(Union(A, Union(B, C))) == "A UNION (B UNION C)"
    assert format_query(Join(Union(A, B), C)) == "(A UNION B) JOIN C"
    assert format_query(Complement(Join(A, B))) == "NOT (A JOIN B)"
    assert format_query(Select(Not(AttrEqAttr("X", "Z")), R)) == "SELECT[NOT X = Z](R)"
    assert format_query(Select(AttrEqConst("X", "it's"), R)) == "SELECT[X = 'it''s'](R)"


@pytest.mark.parametrize("seed", range(200))
def test_round_trip_random_queries(seed):
    e = support.QueryFactory(seed).query()
    text = format_query(e)
    assert parse(text) == e
    assert format_query(parse(text)) == text


@given(st.integers(0, 2**32))
def test_round_trip_property(seed):
    e = support.QueryFactory(seed).query(depth=5)
    assert parse(format_query(e)) == e


def test_relations_used():
    assert relations_used(parse(TANK_QUERY)) == [
        "RadarData", "RadarRules", "GunData", "GunRules", "SpeedData", "SpeedRules"
    ]


# -- scheme inference ---------------------------------------------------------------------


def test_infer_scheme_examples():
    cat = example2_catalog()
    assert infer_scheme(parse("R JOIN S"), cat).names == ("X", "Y", "Z")
    assert infer_scheme(parse("PROJECT[X, Z](R JOIN S)"), cat).names == ("X", "Z")
    assert infer_scheme(parse("SPLIT(NOT R)"), cat) == cat["R"].scheme
    cat = {"P": NeutrosophicRelation.empty(Scheme.of(("X", "a"))),
           "Q": NeutrosophicRelation.empty(Scheme.of(("Y", "a")))}
    with pytest.raises(SchemeMismatch):
        infer_scheme(parse("P UNION Q"), cat)


def test_infer_scheme_errors():
    cat = example2_catalog()
    with pytest.raises(UnknownRelation):
        infer_scheme(parse("BOGUS UNION R"), cat)
    with pytest.raises(ProjectionNotSubset):
        infer_scheme(parse("PROJECT[W](R)"), cat)
    with pytest.raises(UnknownAttribute):
        infer_scheme(parse("SELECT[W = 'a'](R)"), cat)
    with pytest.raises(UnknownAttribute):
        # a bare identifier is an attribute name, never a constant
        infer_scheme(parse("SELECT[X = a](R)"), cat)


# -- evaluation ------------------------------------------------------------------------------


def test_evaluate_example2():
    cat = example2_catalog()
    assert evaluate(parse("R JOIN S"), cat) == fixture("example2", "T1.nrel")
    t3 = evaluate(parse("SELECT[NOT(X=Z)](PROJECT[X,Z](R JOIN S))"), cat)
    assert t3 == fixture("example2", "T3.nrel")


def test_evaluate_tank_expression():
    out = evaluate(parse(TANK_QUERY), tank_catalog())
    assert out.rows == {
        ("o1", "T-72"): {pair("0.05", 0)},
        ("o2", "T-80"): {pair(0, "0.05")},
        ("o3", "T-80"): {pair("0.05", 0)},
    }


def test_raw_mode_rejects_multi_pair_operands():
    cat = {"E": fixture("example2", "example1.nrel")}
    with pytest.raises(NotFunctional):
        evaluate(parse("PROJECT[A](E)"), cat, mode="raw")
    with pytest.raises(NotFunctional):
        evaluate(parse("E UNION E"), cat, mode="raw")
    # explicit SPLIT and COMBINE are honored in raw mode
    out = evaluate(parse("PROJECT[A](COMBINE(E))"), cat, mode="raw")
    assert out.rows[("a",)] == {pair("0.4", "0.7")}
    assert evaluate(parse("SPLIT(E)"), cat, mode="raw").rows[("a",)] == cat["E"].rows[("a",)]


def test_robust_mode_accepts_multi_pair_operands():
    cat = {"E": fixture("example2", "example1.nrel")}
    out = evaluate(parse("E UNION E"), cat)
    assert out.rows[("a",)] == {pair("0.4", "0.7")}
    assert out.functional


def test_robust_collapse_on_inconsistent_join():
    cat = example2_catalog()
    assert evaluate(parse("R JOIN S"), cat).rows[("b", "b", "a")] == {pair(1, 1)}


@given(support.relation_pair(), support.joinable_pair())
def test_robust_equals_raw_on_functional_operands(rs, jp):
    # every operator is a per-component max/min, and the maximum over split
    # choices of a min (or max) is the min (or max) of the maxima
    r, s = rs
    cat = {"P": r, "Q": s, "J": jp[0], "K": jp[1]}
    names = ",".join(r.scheme.names[:1])
    for text in ("P UNION Q", "P INTERSECT Q", "P MINUS Q", "NOT P", "J JOIN K",
                 "PROJECT[{0}](P)".format(names)):
        e = parse(text)
        assert evaluate(e, cat) == evaluate(e, cat, mode="raw")


def test_evaluate_rejects_unknown_mode():
    with pytest.raises(ValueError):
        evaluate(parse("R"), example2_catalog(), mode="fast")


CONSISTENT_QUERIES = (
    "P UNION Q", "P INTERSECT Q", "P MINUS Q", "NOT P", "P JOIN W",
    "PROJECT[X](P JOIN W)", "SELECT[X = 'a' OR NOT X = Y](P)",
    "PROJECT[Y](SELECT[X = Y](P) UNION NOT Q) JOIN W",
)


@st.composite
def _consistent_catalog(draw):
    pairs = st.sampled_from([pair(b, d) for b in support.grid(4) for d in support.grid(4) if b + d <= 1])
    xy = Scheme.of(("X", "ab"), ("Y", "abc"))
    yz = Scheme.of(("Y", "abc"), ("Z", "ab"))
    return {
        "P": draw(support.relations(xy, pair_strategy=pairs)),
        "Q": draw(support.relations(xy, pair_strategy=pairs)),
        "W": draw(support.relations(yz, pair_strategy=pairs)),
    }


@given(_consistent_catalog())
def test_raw_and_robust_agree_on_consistent_data(cat):
    for text in CONSISTENT_QUERIES:
        e = parse(text)
        robust = evaluate(e, cat)
        assert robust == evaluate(e, cat, mode="raw")
        assert robust.scheme == infer_scheme(e, cat)
        assert classify(robust).consistent


@given(st.integers(0, 2**32))
def test_result_scheme_matches_inference(seed):
    cat = example2_catalog()
    factory = support.RelationFactory(seed)
    text = factory.rng.choice((
        "R JOIN S", "NOT R UNION R", "PROJECT[Z, X](R JOIN S)", "SELECT[Y = 'a'](S) MINUS S",
        "COMBINE(SPLIT(R) JOIN SPLIT(S))", "PROJECT[Y](R) JOIN PROJECT[Y](S)",
    ))
    e = parse(text)
    assert evaluate(e, cat).scheme == infer_scheme(e, cat)
