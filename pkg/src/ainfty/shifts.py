"""Shifted objects under the two sign conventions.

An enlargement is built over a finite list of :class:`SumObject`.  A basis
key of the hom from S = X_1[r_1] + ... to T = Y_1[s_1] + ... is
``(S, T, (i, j, label))``: the base basis element ``label`` of C(X_i, Y_j)
placed in block (i, j).  Its suspended degree is the base suspended degree
plus r_i - s_j.  Products act block chain by block chain with the scalar
sign of the convention; everything is computed in the suspended presentation
and converted back when the input was unsuspended.
"""

from dataclasses import dataclass, field
from itertools import product as cartesian

from .category import (
    SUSPENDED, AInftyCategory, compare_categories, convert_presentation, suspended,
    truncate,
)
from .functors import AInftyFunctor, compare_functors, truncate_functor
from .graded import ONE, GradedMap, GradedVectorSpace, MultilinearMap, add_into
from .hpt import SDRData, transfer
from .signs import convention_sign, functor_lift_sign, parity_sign

CONVENTIONS = (1, 2)


def check_convention(a):
    if a not in CONVENTIONS:
        raise ValueError(f"convention must be 1 or 2, got {a!r}")
    return a


@dataclass(frozen=True, eq=False)
class SumObject:
    """Formal sum X_1[r_1] + ... + X_l[r_l]; summand order is significant."""

    summands: tuple

    def __post_init__(self):
        s = tuple((x, int(r)) for x, r in self.summands)
        if not s:
            raise ValueError("a sum object needs at least one summand")
        object.__setattr__(self, "summands", s)
        object.__setattr__(self, "_hash", hash(s))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (isinstance(other, SumObject) and self.summands == other.summands)

    @classmethod
    def single(cls, x, r=0):
        return cls(((x, r),))

    def __len__(self):
        return len(self.summands)

    def __str__(self):
        return " + ".join(f"{x}[{r}]" for x, r in self.summands)

    def __repr__(self):
        return f"SumObject({self})"

    def shifted(self, n=1):
        return SumObject(tuple((x, r + n) for x, r in self.summands))

    def direct_sum(self, other):
        return SumObject(self.summands + other.summands)

    def shift(self, i):
        return self.summands[i][1]

    def base(self, i):
        return self.summands[i][0]

    def map_objects(self, f):
        return SumObject(tuple((f(x), r) for x, r in self.summands))


def single_objects(C, shifts=(0, 1)):
    return [SumObject.single(x, r) for r in shifts for x in C.objects]


# ---------------------------------------------------------------------------
# block lifting


def enlarged_hom(C, S, T):
    """Hom space between two sum objects over the suspended category C."""
    basis = []
    for i, (x, r) in enumerate(S.summands):
        for j, (y, s) in enumerate(T.summands):
            space = C.hom(x, y)
            for lab, d in space.items():
                basis.append(((i, j, lab), d + r - s))
    return GradedVectorSpace(basis)


def _slots(objects):
    idx = {}
    for S in objects:
        for i, (x, r) in enumerate(S.summands):
            idx.setdefault(x, []).append((S, i, r))
    return idx


def lift_table(table, objects, sign=None, target_slot=None):
    """Lift a base chain table to all block chains through ``objects``.

    ``sign(source_shifts)`` gives the scalar for one block chain (default +1).
    ``target_slot(S, i)`` sends an input slot to the output object slot (used
    by functors, whose target objects are images of the source ones).
    """
    slots = _slots(objects)
    out = {}
    for chain, vec in table.items():
        objs = [chain[0][0]] + [k[1] for k in chain]
        choices = [slots.get(x, ()) for x in objs]
        if not all(choices):
            continue
        for path in cartesian(*choices):
            shifts = [r for _, _, r in path[:-1]]
            s = ONE if sign is None else sign(shifts)
            keys = tuple((path[p][0], path[p + 1][0], (path[p][1], path[p + 1][1], key[2]))
                         for p, key in enumerate(chain))
            S0, i0 = path[0][0], path[0][1]
            S1, i1 = path[-1][0], path[-1][1]
            if target_slot is not None:
                S0, i0 = target_slot(S0, i0)
                S1, i1 = target_slot(S1, i1)
            out[keys] = {(S0, S1, (i0, i1, o[2])): s * c for o, c in vec.items()}
    return out


def enlarged_unit(C, a, S, target=None, offset=0):
    """Strict unit of S (sum of summand units; (-1)^r on X[r] for a=1).

    With ``target`` and ``offset`` the same blocks are placed as the inclusion
    of S into ``target`` starting at summand ``offset``.  Empty when C has no
    units.
    """
    T = S if target is None else target
    u = {}
    for i, (x, r) in enumerate(S.summands):
        coeff = parity_sign(r) if a == 1 else 1
        for key, c in C.units.get(x, {}).items():
            u[(S, T, (i, i + offset, key[2]))] = coeff * c
    return u


def enlarge(C, a, objects=None, shifts=(0, 1)):
    """The enlargement of C under convention ``a`` over ``objects``.

    Suspended products carry (-1)^{r_1} (a=1) or (-1)^{r_1+...+r_k} (a=2),
    r_p being the shift of the source summand of the p-th input.  The result
    has the presentation of C.
    """
    check_convention(a)
    B = suspended(C)
    objects = list(objects) if objects is not None else single_objects(B, shifts)
    for S in objects:
        for x, _ in S.summands:
            if x not in B.objects:
                raise KeyError(f"{x!r} is not an object of the base category")
    homs = {(S, T): enlarged_hom(B, S, T) for S in objects for T in objects}
    prods = {}
    for k, m in B.products.items():
        prods[k] = MultilinearMap(
            k, 1, lift_table(m.table, objects, lambda sh: convention_sign(a, sh)))
    units = {}
    for S in objects:
        u = enlarged_unit(B, a, S)
        if u:
            units[S] = u
    E = AInftyCategory(objects, homs, prods, presentation=SUSPENDED,
                       arity_bound=B.arity_bound, units=units, convention=a,
                       validate=False)
    return E if C.presentation == SUSPENDED else convert_presentation(E)


def shift_single(C, X, a):
    """C with the object X replaced by X[1] (all other objects unshifted)."""
    if X not in C.objects:
        raise KeyError(f"unknown object {X!r}")
    objs = [SumObject.single(y, 1 if y == X else 0) for y in C.objects]
    return enlarge(C, a, objs)


def to_base(E, C):
    """Rename the zero-shift single objects of E back to C's objects.

    Returns a category over C's objects (only objects x[0] are kept), so that
    restriction to zero shifts can be compared with C directly.
    """
    keep = {S: S.base(0) for S in E.objects if len(S) == 1 and S.shift(0) == 0}

    def key(k):
        return (keep[k[0]], keep[k[1]], k[2][2])

    homs = {(keep[S], keep[T]): GradedVectorSpace(
        [(lab[2], d) for lab, d in sp.items()]) for (S, T), sp in E.homs.items()
        if S in keep and T in keep}
    prods = {}
    for k, m in E.products.items():
        table = {}
        for chain, vec in m.table.items():
            if all(c[0] in keep and c[1] in keep for c in chain):
                table[tuple(key(c) for c in chain)] = {key(o): x for o, x in vec.items()}
        prods[k] = MultilinearMap(k, m.degree, table)
    units = {keep[S]: {key(k): c for k, c in u.items()} for S, u in E.units.items() if S in keep}
    order = [x for x in C.objects if x in keep.values()]
    return AInftyCategory(order, homs, prods, presentation=E.presentation,
                          arity_bound=E.arity_bound, units=units, validate=False)


# ---------------------------------------------------------------------------
# lazy evaluation of enlarged products on vectors


def eval_enlarged(C, a, k, vecs):
    """b~_k on vectors of enlarged keys, C the suspended base (no table lift).

    A state tracks the trie node, the coefficient, the first source slot and
    the current summand index, so only block chains that actually compose are
    followed.
    """
    m = C.product(k)
    if not m.table or len(vecs) != k:
        return {}
    states = [(m.trie, ONE, None, None)]
    for pos, vec in enumerate(vecs):
        nxt = {}
        for node, c, first, cur in states:
            for (S, T, (i, j, lab)), x in vec.items():
                if cur is not None and (cur[0] != S or cur[1] != i):
                    continue
                base = (S.base(i), T.base(j), lab)
                child = node.get(base)
                if child is None:
                    continue
                r = S.shift(i)
                s = parity_sign(r) if (a == 2 or pos == 0) else 1
                f = first if first is not None else (S, i)
                tag = (id(child), f, (T, j))
                slot = nxt.get(tag)
                if slot is None:
                    nxt[tag] = [child, c * x * s, f, (T, j)]
                else:
                    slot[1] += c * x * s
        states = [tuple(v) for v in nxt.values() if v[1]]
        if not states:
            return {}
    out = {}
    for leaf, c, (S, i), (T, j) in states:
        add_into(out, {(S, T, (i, j, o[2])): v for o, v in leaf.items()}, c)
    return out


# ---------------------------------------------------------------------------
# induced functors and SDRs


def _target_objects(F, objects):
    return [S.map_objects(lambda x: F.object_map[x]) for S in objects]


def induce_functor(F, a, objects=None, shifts=(0, 1), source=None, target=None,
                   sign_free=False):
    """f~_k(alpha'_1, ...) = +-(f_k(alpha_1, ...))'.

    Convention 1 lifts without sign.  Convention 2 lifts with
    (-1)^{r_2+...+r_k}; ``sign_free=True`` drops it, which in general breaks
    the functor relation for a=2 (kept to exhibit that).  Returns a functor
    between the suspended enlargements of F's source and target over
    ``objects`` and their images.
    """
    check_convention(a)
    A = suspended(F.source)
    objects = list(objects) if objects is not None else single_objects(A, shifts)
    tobjs = _target_objects(F, objects)
    image = dict(zip(objects, tobjs))
    source = source or enlarge(A, a, objects)
    if target is None:
        seen = list(dict.fromkeys(tobjs))
        target = enlarge(suspended(F.target), a, seen)
    sign = None if sign_free else (lambda sh: functor_lift_sign(a, sh))
    comps = {k: lift_table(m.table, objects, sign, target_slot=lambda S, i: (image[S], i))
             for k, m in F.components.items()}
    return AInftyFunctor(source, target, image, comps, arity_bound=F.arity_bound)


def induce_sdr(s, a, objects=None, shifts=(0, 1), big=None):
    """SDR on the enlargement: iota, pi unchanged, h gets (-1)^{r_i} from the
    source summand (the enlarged d carries the same sign by construction)."""
    check_convention(a)
    objects = list(objects) if objects is not None else single_objects(s.big, shifts)
    big = big or enlarge(s.big, a, objects)
    if big.presentation != s.big.presentation:
        raise ValueError("enlarged big category must keep the SDR's presentation")
    base_small = s.small_homs

    def small_space(S, T):
        basis = []
        for i, (x, r) in enumerate(S.summands):
            for j, (y, t) in enumerate(T.summands):
                sp = base_small.get((x, y))
                if sp:
                    basis.extend(((i, j, lab), d + r - t) for lab, d in sp.items())
        return GradedVectorSpace(basis)

    small, iota, pi, h = {}, {}, {}, {}
    for S in objects:
        for T in objects:
            bsp = big.hom(S, T)
            ssp = small_space(S, T)
            if not len(bsp) and not len(ssp):
                continue
            small[(S, T)] = ssp

            def part(which, x, y):
                return s.maps(x, y)[which]

            def lift(which, src, tgt, degree, sgn):
                cols = {}
                for (i, j, lab) in src.labels:
                    g = part(which, S.base(i), T.base(j))
                    col = g.columns.get(lab)
                    if col:
                        f = sgn(i)
                        cols[(i, j, lab)] = {(i, j, t): f * c for t, c in col.items()}
                return GradedMap(src, tgt, degree, cols)

            iota[(S, T)] = lift(0, ssp, bsp, 0, lambda i: 1)
            pi[(S, T)] = lift(1, bsp, ssp, 0, lambda i: 1)
            h[(S, T)] = lift(2, bsp, bsp, -1, lambda i: parity_sign(S.shift(i)))
    return SDRData(big, small, iota, pi, h)


# ---------------------------------------------------------------------------
# the square: transfer then enlarge versus enlarge then transfer


@dataclass
class SquareReport:
    convention: tuple
    category_diffs: list = field(default_factory=list)
    functor_diffs: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.category_diffs and not self.functor_diffs

    def __bool__(self):
        return self.ok

    def first(self):
        if self.category_diffs:
            return ("category",) + tuple(self.category_diffs[0])
        if self.functor_diffs:
            return ("functor",) + tuple(self.functor_diffs[0])
        return None


def hpt_square_check(C, s, a, K_out, objects=None, shifts=(0, 1), cross=False,
                     transferred=None, sign_free=False):
    """Compare path 1 (transfer, then enlarge and induce the functor) with
    path 2 (induce the SDR, then transfer).

    ``cross=True`` runs path 1 with a=1 and path 2 with a=2 regardless of
    ``a``; it exists to show that the comparison is not vacuous.
    ``transferred`` may carry a precomputed ``transfer(s, K_out)``.
    """
    if s.big is not C and s.big.objects != C.objects:
        raise ValueError("SDR does not belong to C")
    a1, a2 = (1, 2) if cross else (check_convention(a), a)
    objects = list(objects) if objects is not None else single_objects(C, shifts)

    if transferred is not None:
        D, F = transferred
        if D.arity_bound > K_out:
            D = truncate(D, K_out)
            F = truncate_functor(F, K_out, source=D)
    else:
        D, F = transfer(s, K_out)
    E1 = enlarge(D, a1, objects)
    F1 = induce_functor(F, a1, objects, source=E1,
                        target=enlarge(suspended(C), a1, objects), sign_free=sign_free)

    s2 = induce_sdr(s, a2, objects)
    E2, F2 = transfer(s2, K_out)

    report = SquareReport((a1, a2))
    report.category_diffs = compare_categories(E1, E2, K_out)
    if not report.category_diffs:
        report.functor_diffs = compare_functors(F1, F2, K_out)
    return report
