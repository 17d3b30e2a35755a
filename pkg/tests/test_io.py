import json
from fractions import Fraction

import pytest

from ainfty import io
from ainfty.category import compare_categories, suspended
from ainfty.dg import Complex
from ainfty.functors import compare_functors
from ainfty.shifts import SumObject, enlarge, single_objects
from ainfty.twisted import Tw


def round_trip(doc, reader):
    text = io.dumps(doc)
    obj = reader(io.loads(text))
    return text, obj


def test_complex_round_trip():
    X = Complex("X", {-1: 1, 0: 2}, {-1: [[1], [2]]})
    text, back = round_trip(io.complex_out(X), io.complex_in)
    assert back == X
    assert io.dumps(io.complex_out(back)) == text
    assert '"1"' in text and '"2"' in text


def test_category_round_trip_with_sum_objects(xyz):
    E = enlarge(xyz, 1, single_objects(xyz, (0, -1)) + [SumObject((("X", 0), ("Y", 2)))])
    for C in (xyz, suspended(xyz), E):
        text, back = round_trip(io.category_out(C), io.category_in)
        assert compare_categories(back, C) == []
        assert back.units == C.units and back.convention == C.convention
        assert io.dumps(io.category_out(back)) == text


def test_fractional_coefficients_survive(corpus):
    frac = [inst for inst in corpus
            if any(c.denominator != 1 for m in inst.model.products.values()
                   for v in m.table.values() for c in map(Fraction, v.values()))]
    assert frac
    text, back = round_trip(io.category_out(frac[0].model), io.category_in)
    assert "/" in text
    assert compare_categories(back, frac[0].model) == []


def test_functor_and_sdr_round_trip(xyz_transfer):
    s, D, F = xyz_transfer
    text, G = round_trip(io.functor_out(F), io.functor_in)
    assert compare_functors(G, F) == []
    assert io.dumps(io.functor_out(G)) == text
    text, t = round_trip(io.sdr_out(s), io.sdr_in)
    assert io.dumps(io.sdr_out(t)) == text
    for p in s.pairs():
        assert t.maps(*p) == s.maps(*p)


def test_instance_round_trip(corpus):
    for inst in corpus[:5]:
        text, back = round_trip(io.instance_out(inst), io.instance_in)
        assert io.dumps(io.instance_out(back)) == text
        assert back.has_m3 == inst.has_m3


def test_twisted_round_trip(xyz):
    tw = Tw(xyz, 2)
    P, Q = tw.plain("Z"), tw.plain("Y")
    phi = tw.closed_morphisms(P, Q)[0]
    cone = tw.mapping_cone(phi)
    doc = io.twisted_out(tw, [P, Q, cone], [(0, 1, phi.value)])
    text = io.dumps(doc)
    tw2, cxs, morphs = io.twisted_in(io.loads(text))
    assert [t.name for t in cxs] == [P.name, Q.name, cone.name]
    assert cxs[2].phi == cone.phi
    assert io.dumps(io.twisted_out(tw2, cxs, [(0, 1, morphs[0][2])])) == text


def test_read_dispatches_on_type(xyz):
    kind, obj = io.read(io.dumps(io.category_out(xyz)))
    assert kind == "category" and obj.objects == xyz.objects


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"type": "category", "format_version": 99}',
    '{"type": "nonsense", "format_version": 1}',
    '{"type": "complex", "format_version": 1, "name": "X", "dims": {"0": 1, "1": 1}, "diff": {"0": [["x"]]}}',
    '{"type": "complex", "format_version": 1, "name": "X", "dims": {"0": 1, "1": 1, "2": 1}, "diff": {"0": [["1"]], "1": [["1"]]}}',
    '{"type": "complex", "format_version": 1, "dims": {}}',
])
def test_parse_errors(text):
    with pytest.raises(io.ParseError):
        io.read(text)


def test_bad_basis_reference_is_a_parse_error(xyz):
    doc = io.category_out(xyz)
    doc["products"][0]["entries"][0][0][0] = [0, 0, 999]
    with pytest.raises(io.ParseError):
        io.category_in(json.loads(json.dumps(doc)))
