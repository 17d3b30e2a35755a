"""Exhaustive coherence of the sign rules over small arities and parities."""

import itertools

import pytest

from ainfty.signs import (
    convention_sign, convention_sign_unsuspended, functor_lift_sign, parity_sign,
    shift_functor_sign, sign_suspended, sign_unsuspended, single_shift_sign, suspension_sign,
)


def eps(sdegs):
    return suspension_sign(len(sdegs), list(sdegs))


@pytest.mark.parametrize("n", range(1, 7))
def test_unsuspended_and_suspended_relations_agree_up_to_a_global_sign(n):
    # every term of the n-th relation, translated through suspension, must
    # differ from its suspended counterpart by one sign depending on the chain only
    for sdegs in itertools.product((0, 1), repeat=n):
        udegs = [d + 1 for d in sdegs]
        ratios = set()
        for l in range(1, n + 1):
            k = n + 1 - l
            for j in range(0, n - l + 1):
                inner = sdegs[j:j + l]
                outer = list(sdegs[:j]) + [sum(inner) + 1] + list(sdegs[j + l:])
                susp = sign_suspended(sdegs[:j]) * eps(inner) * eps(outer)
                ratios.add(susp * sign_unsuspended(j, l, udegs[:j]))
        assert len(ratios) == 1, (n, sdegs)


@pytest.mark.parametrize("a", (1, 2))
@pytest.mark.parametrize("k", range(1, 6))
def test_convention_signs_match_across_presentations(a, k):
    # m~_k carries the b~_k sign corrected by suspension on base and enlarged degrees
    for shifts in itertools.product((0, 1), repeat=k + 1):
        for sdegs in itertools.product((0, 1), repeat=k):
            enlarged = [d + shifts[i] - shifts[i + 1] for i, d in enumerate(sdegs)]
            lhs = convention_sign(a, shifts[:k]) * eps(sdegs) * eps(enlarged)
            assert lhs == convention_sign_unsuspended(a, shifts[:k])


@pytest.mark.parametrize("a", (1, 2))
def test_single_shift_is_the_special_case_of_the_convention_sign(a):
    for k in range(1, 5):
        for chain in itertools.product("XY", repeat=k + 1):
            shifts = [1 if x == "X" else 0 for x in chain]
            assert single_shift_sign(a, chain, "X") == convention_sign(a, shifts[:k])


def test_fixed_values():
    assert convention_sign(1, (1, 1, 1)) == -1
    assert convention_sign(2, (1, 1, 0)) == 1
    assert shift_functor_sign(1) == -1 and shift_functor_sign(2) == 1
    assert functor_lift_sign(1, (1, 1)) == 1
    assert functor_lift_sign(2, (0, 1)) == -1
    assert functor_lift_sign(2, (1, 0)) == 1
    assert sign_unsuspended(0, 1, []) == 1
    assert parity_sign(-3) == -1


def test_bad_inputs():
    with pytest.raises(ValueError):
        convention_sign(3, (0,))
    with pytest.raises(ValueError):
        sign_unsuspended(2, 1, [0])
