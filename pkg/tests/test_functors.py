import random

import pytest

from ainfty.category import suspended
from ainfty.functors import (
    GENERAL, ISOMORPHISM, QUASI_ISOMORPHISM, AInftyFunctor, FunctorError, check_functor,
    classify, compare_functors, compose, identity_functor, linear_functor, truncate_functor,
)

from mutations import flip_functor_sign


def test_identity_functor_is_an_isomorphism(xyz):
    F = identity_functor(xyz)
    assert check_functor(F, 5).ok
    assert classify(F) == ISOMORPHISM


def test_transfer_functor_is_a_quasi_isomorphism(xyz_transfer):
    _, D, F = xyz_transfer
    assert check_functor(F, 5).ok
    assert classify(F) == QUASI_ISOMORPHISM


def test_zero_functor_is_general(xyz):
    F = linear_functor(xyz, xyz, {x: x for x in xyz.objects}, {}, arity_bound=2)
    assert check_functor(F, 3).ok
    assert classify(F) == GENERAL


def test_composition_with_identity(xyz_transfer, xyz):
    _, D, F = xyz_transfer
    G = compose(F, identity_functor(suspended(xyz), arity_bound=F.arity_bound))
    assert compare_functors(G, F) == []
    assert check_functor(G, 5).ok


def test_missing_object_image_is_rejected(xyz):
    with pytest.raises(FunctorError):
        AInftyFunctor(xyz, xyz, {"X": "X"}, {})


def test_check_functor_respects_truncation(xyz_transfer):
    _, D, F = xyz_transfer
    T = truncate_functor(F, 2)
    with pytest.raises(FunctorError):
        check_functor(T, 4)
    assert check_functor(T, 3).ok


def test_sign_mutations_of_transferred_functors_fail(corpus):
    rng = random.Random(5)
    hit = 0
    for inst in corpus:
        F = inst.functor
        if not F.component(2).table:
            continue
        bad, chain = flip_functor_sign(F, 2, rng)
        assert not check_functor(bad, 3).ok
        hit += 1
    assert hit >= 5
