"""A-infinity functors in the suspended presentation."""

from dataclasses import dataclass

from .category import (
    RelationReport, differential_blocks, hom_hodge, suspended, violations_from,
)
from .graded import ONE, MultilinearMap, clean_table, table_diff
from .linalg import rank
from .signs import sign_suspended
from .tensor import compose_sum, insert_sum


class FunctorError(ValueError):
    pass


class AInftyFunctor:
    """Object map plus degree-0 components f_k on suspended homs.

    ``components[k]`` is a MultilinearMap (or a raw table) sending chains of
    source keys to vectors of target keys.  Keys are presentation independent,
    so the same tables serve whichever presentation the categories carry.
    """

    def __init__(self, source, target, object_map, components, arity_bound=None):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        for x in source.objects:
            if x not in self.object_map:
                raise FunctorError(f"object {x!r} has no image")
            if self.object_map[x] not in target.objects:
                raise FunctorError(f"{self.object_map[x]!r} is not an object of the target")
        comps = {}
        for k, m in components.items():
            if not isinstance(m, MultilinearMap):
                m = MultilinearMap(int(k), 0, m)
            if m.degree != 0:
                raise FunctorError("functor components have degree 0")
            if m.table:
                comps[int(k)] = m
        if arity_bound is None:
            arity_bound = max(comps, default=1)
        if any(k > arity_bound for k in comps):
            raise FunctorError("components above the arity bound must vanish")
        self.arity_bound = int(arity_bound)
        self.components = comps

    def __repr__(self):
        sizes = {k: len(m.table) for k, m in sorted(self.components.items())}
        return f"AInftyFunctor(K={self.arity_bound}, entries={sizes})"

    def component(self, k):
        return self.components.get(k) or MultilinearMap(k, 0)

    def tables(self):
        return {k: m.table for k, m in self.components.items()}


def identity_functor(C, arity_bound=None):
    table = {(key,): {key: ONE} for key in C.all_keys()}
    return AInftyFunctor(C, C, {x: x for x in C.objects}, {1: table},
                         arity_bound=arity_bound or C.arity_bound)


def linear_functor(source, target, object_map, f1, arity_bound=None):
    """Functor with only an arity-one component ``f1: key -> vector``."""
    table = {(key,): vec for key, vec in f1.items()}
    return AInftyFunctor(source, target, object_map, {1: table}, arity_bound)


def truncate_functor(F, K, source=None):
    """Drop components above arity K; ``source`` replaces the source category."""
    comps = {k: m for k, m in F.components.items() if k <= K}
    return AInftyFunctor(source or F.source, F.target, F.object_map, comps,
                         arity_bound=min(K, F.arity_bound))


def functor_residual(F, n):
    """LHS - RHS of the functor relation on chains of length n."""
    A = suspended(F.source)
    B = suspended(F.target)
    tables = {k: m.table for k, m in F.components.items() if k <= n}
    outer = {i: B.product(i) for i in range(1, min(n, B.arity_bound) + 1)}
    lhs = compose_sum(outer, tables, n)
    rhs = {}
    for k in range(1, n + 1):
        l = n + 1 - k
        if l > A.arity_bound:
            continue
        fk = F.components.get(k)
        if fk is None:
            continue

        def sign(j, prefix):
            return sign_suspended([A.degree(p) for p in prefix])

        insert_sum(fk, A.product(l), sign, rhs)
    return table_diff(clean_table(lhs), clean_table(rhs))


def check_functor(F, n_max):
    """Check the A-infinity functor equations on every chain up to n_max."""
    if n_max > 2 * F.arity_bound - 1:
        raise FunctorError(
            f"n_max={n_max} exceeds 2K-1 for a functor truncated at K={F.arity_bound}")
    report = RelationReport(n_max)
    for n in range(1, n_max + 1):
        res = functor_residual(F, n)
        report.violations += violations_from(res, n, F.source.chain_order, "functor")
    return report


def compose(F, G):
    """G after F, for F: A -> B and G: B -> C."""
    if F.target is not G.source and (
        set(F.target.objects) != set(G.source.objects)
    ):
        raise FunctorError("F.target and G.source differ")
    K = min(F.arity_bound, G.arity_bound)
    inner = {k: m.table for k, m in F.components.items()}
    comps = {}
    for n in range(1, K + 1):
        comps[n] = clean_table(compose_sum(G.components, inner, n))
    omap = {x: G.object_map[F.object_map[x]] for x in F.source.objects}
    return AInftyFunctor(F.source, G.target, omap, comps, arity_bound=K)


def compare_functors(F, G, max_arity=None):
    diffs = []
    if F.object_map != G.object_map:
        diffs.append(("object_map", (F.object_map, G.object_map)))
        return diffs
    top = max([*F.components, *G.components, 0])
    if max_arity is not None:
        top = min(top, max_arity)
    for k in range(1, top + 1):
        d = table_diff(F.component(k).table, G.component(k).table)
        for chain in sorted(d, key=F.source.chain_order):
            diffs.append(("component", (k, chain)))
    return diffs


# ---------------------------------------------------------------------------
# classification

GENERAL = "general"
QUASI_ISOMORPHISM = "quasi-isomorphism"
ISOMORPHISM = "isomorphism"


def _f1_block(F, x, y, degree):
    src = F.source.hom(x, y)
    fx, fy = F.object_map[x], F.object_map[y]
    tgt = F.target.hom(fx, fy)
    f1 = F.component(1).table
    cols = src.basis(degree)
    rows = tgt.basis(degree)
    ridx = {lab: i for i, lab in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, lab in enumerate(cols):
        for out, c in f1.get(((x, y, lab),), {}).items():
            mat[ridx[out[2]]][j] = c
    return mat, len(rows), len(cols)


def _bijective_objects(F):
    images = [F.object_map[x] for x in F.source.objects]
    return len(set(images)) == len(images) and set(images) == set(F.target.objects)


def classify(F):
    """'isomorphism', 'quasi-isomorphism' or 'general'."""
    if not _bijective_objects(F):
        return GENERAL
    A, B = F.source, F.target
    iso = True
    for x in A.objects:
        for y in A.objects:
            sa = A.hom(x, y)
            sb = B.hom(F.object_map[x], F.object_map[y])
            for d in sorted(set(sa.degrees()) | set(sb.degrees())):
                mat, m, n = _f1_block(F, x, y, d)
                if m != n or (n and rank(mat, n) != n):
                    iso = False
                    break
            if not iso:
                break
        if not iso:
            break
    if iso:
        return ISOMORPHISM
    return QUASI_ISOMORPHISM if induces_cohomology_iso(F) else GENERAL


def induced_cohomology_maps(F):
    """Matrices of H(f_1) per hom pair and degree: ``(x, y, d) -> matrix``."""
    A, B = F.source, F.target
    da, db = differential_blocks(A), differential_blocks(B)
    f1 = F.component(1).table
    out = {}
    for x in A.objects:
        for y in A.objects:
            fx, fy = F.object_map[x], F.object_map[y]
            ha = hom_hodge(A.hom(x, y), da.get((x, y), {}), x, y)
            hb = hom_hodge(B.hom(fx, fy), db.get((fx, fy), {}), fx, fy)
            for d in sorted(set(ha.small.degrees()) | set(hb.small.degrees())):
                cols = ha.small.basis(d)
                rows = hb.small.basis(d)
                ridx = {lab: i for i, lab in enumerate(rows)}
                mat = [[0] * len(cols) for _ in rows]
                for j, lab in enumerate(cols):
                    img = {}
                    for s, c in ha.iota.columns.get(lab, {}).items():
                        for o, v in f1.get(((x, y, s),), {}).items():
                            img[o[2]] = img.get(o[2], 0) + c * v
                    proj = hb.pi(img)
                    for t, c in proj.items():
                        mat[ridx[t]][j] = c
                out[(x, y, d)] = (mat, len(rows), len(cols))
    return out


def induces_cohomology_iso(F):
    for (x, y, d), (mat, m, n) in induced_cohomology_maps(F).items():
        if m != n:
            return False
        if n and rank(mat, n) != n:
            return False
    return True
