"""Bundled worked examples and their expected results."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Tuple

from .core import NeutrosophicRelation
from .document import dumps_relation, loads_relation
from .query import evaluate, parse

EXAMPLE2_FILES = {"R": "R.nrel", "S": "S.nrel"}
EXAMPLE2_STEPS = (
    ("T1", "R JOIN S"),
    ("T2", "PROJECT[X, Z](R JOIN S)"),
    ("T3", "SELECT[NOT X = Z](PROJECT[X, Z](R JOIN S))"),
)

TANK_FILES = {
    "RadarRules": "radar_rules.nrel",
    "GunRules": "gun_rules.nrel",
    "SpeedRules": "speed_rules.nrel",
    "RadarData": "radar_data.nrel",
    "GunData": "gun_data.nrel",
    "SpeedData": "speed_data.nrel",
}
TANK_QUERY = (
    "PROJECT[Object-id, Object](RadarData JOIN RadarRules)"
    " INTERSECT PROJECT[Object-id, Object](GunData JOIN GunRules)"
    " INTERSECT PROJECT[Object-id, Object](SpeedData JOIN SpeedRules)"
)


def fixture_text(group: str, filename: str) -> str:
    return resources.files("neutro").joinpath("data").joinpath(group).joinpath(filename).read_text(encoding="utf-8")


def fixture(group: str, filename: str) -> NeutrosophicRelation:
    return loads_relation(fixture_text(group, filename))


def fixture_names() -> List[Tuple[str, str]]:
    root = resources.files("neutro").joinpath("data")
    out = []
    for group in sorted(p.name for p in root.iterdir() if p.is_dir()):
        for f in sorted(p.name for p in root.joinpath(group).iterdir() if p.name.endswith(".nrel")):
            out.append((group, f))
    return out


def example2_catalog() -> Dict[str, NeutrosophicRelation]:
    return {name: fixture("example2", f) for name, f in EXAMPLE2_FILES.items()}


def tank_catalog() -> Dict[str, NeutrosophicRelation]:
    return {name: fixture("tanks", f) for name, f in TANK_FILES.items()}


@dataclass(frozen=True)
class Step:
    name: str
    query: str
    result: NeutrosophicRelation
    expected: NeutrosophicRelation

    @property
    def matches(self) -> bool:
        # compared on the canonical document text, which is byte-stable
        return dumps_relation(self.result) == dumps_relation(self.expected)


def run_example2() -> List[Step]:
    catalog = example2_catalog()
    return [
        Step(name, q, evaluate(parse(q), catalog), fixture("example2", name + ".nrel"))
        for name, q in EXAMPLE2_STEPS
    ]


def run_tanks() -> Step:
    result = evaluate(parse(TANK_QUERY), tank_catalog())
    return Step("result", TANK_QUERY, result, fixture("tanks", "result.nrel"))


def undecided(relation: NeutrosophicRelation, limit: Fraction = Fraction(1, 2)) -> List[Tuple[str, ...]]:
    """Stored tuples whose belief and doubt both stay below ``limit``."""
    return [t for t, ps in relation.items() if all(p.belief < limit and p.doubt < limit for p in ps)]
