import random

import pytest

from ainfty.category import check_relations
from ainfty.shifts import SumObject
from ainfty.twisted import Tw, TwistedComplex, TwistedError, TwMorphism


@pytest.fixture(scope="module", params=(1, 2))
def tw(request, xyz):
    return Tw(xyz, request.param)


def closed_pairs(tw, objects):
    return [m for P in objects for Q in objects for m in tw.closed_morphisms(P, Q)]


def test_phi_must_be_strictly_upper_triangular(tw):
    S = SumObject((("Y", 0), ("Y", 0)))
    lab = tw.base.hom("Y", "Y").labels[0]
    with pytest.raises(TwistedError):
        TwistedComplex("bad", S, {(S, S, (1, 0, lab)): 1})
    with pytest.raises(TwistedError):
        TwistedComplex("bad", S, {(S, S, (0, 0, lab)): 1})


def test_phi_must_solve_maurer_cartan(tw):
    # Y[0] + X[0] with a non-closed degree-0 block: d(phi) != 0
    S = SumObject((("Y", 0), ("X", 0)))
    sp = tw.hom(tw.plain("Y"), tw.plain("X"))
    labs = [lab for lab in sp.basis(-1)]
    P, Q = tw.plain("Y"), tw.plain("X")
    bad = [lab for lab in labs if tw.b1(P, Q, {(P.obj, Q.obj, lab): 1})]
    assert bad
    (_, _, base) = bad[0]
    with pytest.raises(TwistedError):
        tw.twisted("bad", S, {(S, S, (0, 1, base)): 1})


def test_plain_objects_have_zero_phi(tw):
    P = tw.plain("Z", 2)
    assert P.obj == SumObject.single("Z", 2)
    assert tw.check_mc(P).ok


def test_cones_are_twisted_complexes_with_exact_triangles(tw):
    objs = [tw.plain(x) for x in ("X", "Y", "Z")]
    morphs = closed_pairs(tw, objs)
    assert len(morphs) >= 3
    for phi in morphs:
        cone = tw.mapping_cone(phi)
        assert tw.check_mc(cone).ok
        assert not tw.check_b1_squared(cone, cone)
        rep = tw.triangle_check(phi, cone)
        assert rep.ok, rep.closed


def test_cone_of_non_closed_morphism_is_rejected(tw):
    P, Q = tw.plain("Y"), tw.plain("X")
    sp = tw.hom(P, Q)
    lab = next(l for l in sp.basis(-1) if tw.b1(P, Q, {(P.obj, Q.obj, l): 1}))
    with pytest.raises(TwistedError):
        tw.mapping_cone(TwMorphism(P, Q, {(P.obj, Q.obj, lab): 1}))


def test_cone_block_signs(tw):
    P, Q = tw.plain("Z"), tw.plain("Y")
    phi = tw.closed_morphisms(P, Q)[0]
    cone = tw.mapping_cone(phi)
    TX = tw.shift(P)
    n = len(P.obj)
    expected = 1 if tw.a == 2 else -1
    for (_, _, (i, j, lab)), c in phi.value.items():
        assert cone.phi[(cone.obj, cone.obj, (i, n + j, lab))] == expected * c
    assert cone.obj == TX.obj.direct_sum(Q.obj)


def test_iterated_cone(tw):
    P, Q = tw.plain("Z"), tw.plain("Y")
    cone = tw.mapping_cone(tw.closed_morphisms(P, Q)[0])
    morphs = tw.closed_morphisms(cone, tw.plain("Y"))
    for m in morphs[:2]:
        c2 = tw.mapping_cone(m)
        assert tw.check_mc(c2).ok
        assert tw.triangle_check(m, c2).ok


def test_shift_relation_on_random_chains(tw):
    rng = random.Random(11)
    objs = [SumObject.single("X", 0), SumObject((("Y", 0), ("Z", 1))), SumObject.single("Z", -1)]
    for k in (1, 2, 3):
        for _ in range(15):
            chain = [rng.choice(objs) for _ in range(k + 1)]
            vecs = []
            for p in range(k):
                S, T = chain[p], chain[p + 1]
                labs = tw.hom(TwistedComplex("s", S), TwistedComplex("t", T)).labels
                vecs.append({(S, T, lab): rng.randint(-2, 2) for lab in labs if rng.random() < 0.5})
            assert not tw.check_shift_relation(vecs)


def test_shift_preserves_maurer_cartan_and_twisted_products(tw):
    objs = [tw.plain(x) for x in ("X", "Y", "Z")]
    for phi in closed_pairs(tw, objs)[:4]:
        cone = tw.mapping_cone(phi)
        assert tw.check_mc(tw.shift(cone)).ok
        Y = phi.target
        for m in tw.closed_morphisms(Y, cone)[:2]:
            assert not tw.check_tw_shift_relation([Y, cone], [m.value])


def test_h0_category_and_shift_compatibility(tw):
    objs = [tw.plain(x) for x in ("X", "Y", "Z")]
    H = tw.h0_category(objs)
    # X and Z are contractible; Y = Q has H^0(Y, Y) = Q spanned by the identity
    assert set(H.spaces) == {("Y[0]", "Y[0]")}
    assert H.spaces[("Y[0]", "Y[0]")].dims == {0: 1}
    assert H.composition.table
    shifted = [tw.shift(t) for t in objs]
    HT = tw.h0_category(shifted)
    for (p, q), sp in H.spaces.items():
        assert HT.spaces[(f"T({p})", f"T({q})")].dims == sp.dims
    by = {t.name: t for t in objs}
    tby = {t.name: t for t in shifted}
    for (ka, kb), val in H.composition.table.items():
        P, Q, R = by[ka[0]], by[ka[1]], by[kb[1]]
        u, v = H.representatives[ka], H.representatives[kb]
        Tu, Tv = tw.shift_vec(u), tw.shift_vec(v)
        TP, TQ, TR = tby[f"T({P.name})"], tby[f"T({Q.name})"], tby[f"T({R.name})"]
        # class of T(m_2(u, v)) equals the class of m_2(T u, T v)
        lhs = HT.class_of(TP, TR, tw.shift_vec({k: -c for k, c in tw.b2(P, Q, R, u, v).items()}))
        rhs = HT.class_of(TP, TR, {k: -c for k, c in tw.b2(TP, TQ, TR, Tu, Tv).items()})
        assert lhs == rhs
        assert lhs or not val


def test_materialized_category_satisfies_relations(tw):
    P, Q = tw.plain("Z"), tw.plain("Y")
    cone = tw.mapping_cone(tw.closed_morphisms(P, Q)[0])
    M = tw.materialize([P, Q, cone])
    assert check_relations(M, 3).ok
