import json

from hypothesis import given, strategies as st

from cfa import make_virasoro
from cfa.algebra import ConformalSuperalgebra
from cfa.report import algebra_json, canonical, emit_json, scalar_json
from cfa.scalars import I, ONE, DPoly, as_scalar


def test_scalar_encoding():
    assert scalar_json(ONE / 2 - I) == {"re": "1/2", "im": "-1/1"}
    assert canonical(DPoly([1, 0, 3])) == [scalar_json(1), scalar_json(0), scalar_json(3)]


def test_virasoro_table_json():
    doc = json.loads(emit_json(algebra_json(make_virasoro())))
    assert len(doc["products"]) == 2
    assert doc["products"][0] == {"lhs": "L", "arg": "L", "n": 0, "rhs": [["1/1", "0/1", 1, "L"]]}


def test_zero_algebra_json():
    doc = json.loads(emit_json(algebra_json(ConformalSuperalgebra([], {}))))
    assert doc["products"] == []


def test_sorted_compact_output():
    out = emit_json({"b": 1, "a": [ONE / 3]})
    assert out == b'{"a":[{"im":"0/1","re":"1/3"}],"b":1}'


values = st.recursive(
    st.one_of(st.integers(-5, 5), st.text(max_size=5), st.booleans(),
              st.fractions(max_denominator=7).map(as_scalar)),
    lambda inner: st.one_of(st.lists(inner, max_size=3),
                            st.dictionaries(st.text(max_size=3), inner, max_size=3)),
    max_leaves=10,
)


@given(values)
def test_round_trip_stable(obj):
    once = emit_json(obj)
    assert emit_json(json.loads(once)) == once
