import random

import pytest
from hypothesis import given, settings, strategies as st

from ainfty.category import check_relations, check_units, compare_categories, suspended
from ainfty.functors import check_functor
from ainfty.hpt import check_sdr, hodge_sdr
from ainfty.shifts import (
    SumObject, enlarge, enlarged_hom, eval_enlarged, hpt_square_check, induce_functor,
    induce_sdr, shift_single, single_objects, to_base,
)
from ainfty.signs import single_shift_sign


def test_sum_object_basics():
    S = SumObject((("X", 0), ("Y", 1)))
    assert str(S) == "X[0] + Y[1]"
    assert S.shifted(2) == SumObject((("X", 2), ("Y", 3)))
    assert S.direct_sum(SumObject.single("Z")) == SumObject((("X", 0), ("Y", 1), ("Z", 0)))
    assert hash(S) == hash(SumObject((("X", 0), ("Y", 1))))
    with pytest.raises(ValueError):
        SumObject(())


def test_enlarged_hom_degrees(xyz):
    B = suspended(xyz)
    S, T = SumObject.single("X", 1), SumObject.single("Y", -1)
    sp = enlarged_hom(B, S, T)
    base = B.hom("X", "Y")
    for (i, j, lab), d in sp.items():
        assert d == base.degree(lab) + 1 - (-1)


@pytest.mark.parametrize("a", (1, 2))
def test_enlargement_of_dg_category(xyz, a):
    objs = single_objects(xyz, (0, 1)) + [SumObject((("X", 0), ("Z", 1)))]
    E = enlarge(xyz, a, objs)
    assert E.presentation == xyz.presentation
    assert check_relations(E, 5).ok
    assert check_units(E) == []
    assert compare_categories(to_base(E, xyz), xyz) == []


@pytest.mark.parametrize("a", (1, 2))
def test_enlargement_of_minimal_model(m3_instance, a):
    D = m3_instance.model
    objs = single_objects(D, (0, 1)) + [SumObject(tuple((x, r) for r, x in enumerate(D.objects)))]
    E = enlarge(D, a, objs)
    assert check_relations(E, 4).ok
    assert E.product(3).table


@pytest.mark.parametrize("a", (1, 2))
def test_single_shift_matches_sign_rule(xyz, a):
    E = shift_single(suspended(xyz), "X", a)
    B = suspended(xyz)
    for k in (1, 2):
        for chain, vec in E.product(k).table.items():
            base_chain = tuple((c[0].base(0), c[1].base(0), c[2][2]) for c in chain)
            objs = [c[0].base(0) for c in chain] + [chain[-1][1].base(0)]
            sign = single_shift_sign(a, objs, "X")
            want = {(chain[0][0], chain[-1][1], (0, 0, o[2])): sign * c
                    for o, c in B.product(k).table[base_chain].items()}
            assert vec == want


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from((1, 2)), st.integers(1, 3))
def test_lazy_evaluation_matches_lifted_tables(m3_seed, a, k):
    from conftest import xyz_complexes
    from ainfty.dg import build_dg_category
    from ainfty.hpt import transfer

    rng = random.Random(m3_seed)
    C = build_dg_category(xyz_complexes())
    D, _ = transfer(hodge_sdr(C), 3)
    objs = [SumObject((("X", 0), ("Z", 1))), SumObject.single("Z", -1), SumObject.single("Y", 1)]
    E = enlarge(D, a, objs)
    chain_objs = [rng.choice(objs) for _ in range(k + 1)]
    vecs = []
    for p in range(k):
        S, T = chain_objs[p], chain_objs[p + 1]
        labs = E.hom(S, T).labels
        vecs.append({(S, T, lab): rng.randint(-2, 2) for lab in labs if rng.random() < 0.6})
    assert eval_enlarged(D, a, k, vecs) == E.product(k)(*vecs)


def test_induced_functors_in_both_enlargements(xyz_transfer):
    _, D, F = xyz_transfer
    for a in (1, 2):
        Fi = induce_functor(F, a)
        assert check_functor(Fi, 4).ok


def test_sign_free_lift_fails_only_for_convention_two(corpus):
    broken = 0
    for inst in corpus[:10]:
        F = inst.functor
        assert check_functor(induce_functor(F, 1, sign_free=True), 3).ok
        if not check_functor(induce_functor(F, 2, sign_free=True), 3).ok:
            broken += 1
    assert broken


@pytest.mark.parametrize("a", (1, 2))
def test_induced_sdr_is_valid(xyz, a):
    s = induce_sdr(hodge_sdr(xyz), a, single_objects(xyz, (0, 1, -1)))
    assert check_sdr(s).ok


@pytest.mark.parametrize("a", (1, 2))
def test_square_commutes(xyz, a):
    s = hodge_sdr(xyz)
    rep = hpt_square_check(xyz, s, a, 4)
    assert rep.ok and rep.first() is None


def test_cross_pairing_fails_with_sign_difference(m3_instance):
    inst = m3_instance
    rep = hpt_square_check(inst.category, inst.sdr, 1, 4, cross=True)
    assert not rep.ok
    what, kind, (arity, chain, p1, p2) = rep.first()
    assert (what, kind) == ("category", "product")
    assert p1 and p1 == {k: -c for k, c in p2.items()}
