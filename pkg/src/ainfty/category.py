"""Finite, arity-truncated A-infinity categories.

An :class:`AInftyCategory` stores its products either in the unsuspended
presentation (m_k of degree 2-k) or the suspended one (b_k of degree 1).
Products above ``arity_bound`` are absent and taken to vanish.
"""

from dataclasses import dataclass, field

from .graded import (
    EMPTY_SPACE, ONE, GradedMap, GradedVectorSpace, MultilinearMap, add_into,
    clean, table_diff,
)
from .linalg import hodge_decomposition
from .signs import sign_suspended, sign_unsuspended, suspension_sign
from .tensor import insert_sum

UNSUSPENDED = "unsuspended"
SUSPENDED = "suspended"


class RelationError(ValueError):
    """Input fails a relation that an operation requires as precondition."""


def product_degree(k, presentation):
    return 1 if presentation == SUSPENDED else 2 - k


class AInftyCategory:
    """Objects with graded hom spaces, plus sparse product tables.

    ``homs`` maps ``(X, Y)`` to a :class:`GradedVectorSpace`; a basis element
    is the key ``(X, Y, label)``.  ``products`` maps arity to a
    :class:`MultilinearMap` or a raw ``chain -> vector`` table.  ``units``
    optionally maps an object to its strict identity, written as a vector in
    the unsuspended presentation (the same coefficients serve suspended).
    ``convention`` records the shift convention for enlargements.
    """

    def __init__(self, objects, homs, products, presentation=UNSUSPENDED,
                 arity_bound=None, units=None, convention=None, validate=True):
        if presentation not in (UNSUSPENDED, SUSPENDED):
            raise ValueError(f"unknown presentation {presentation!r}")
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate objects")
        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self.homs = {
            pair: space for pair, space in homs.items() if len(space)
        }
        self.presentation = presentation
        prods = {}
        for k, m in products.items():
            k = int(k)
            if not isinstance(m, MultilinearMap):
                m = MultilinearMap(k, product_degree(k, presentation), m)
            elif m.degree != product_degree(k, presentation):
                raise ValueError(f"arity {k} product has degree {m.degree}")
            if m.table:
                prods[k] = m
        if arity_bound is None:
            arity_bound = max(prods, default=1)
        self.arity_bound = int(arity_bound)
        if any(k > self.arity_bound for k in prods):
            raise ValueError("products above the arity bound must vanish")
        self.products = prods
        self.units = {x: clean(u) for x, u in (units or {}).items()}
        self.convention = convention
        if validate:
            self.validate()

    # -- access ------------------------------------------------------------

    def __repr__(self):
        arities = {k: len(m.table) for k, m in sorted(self.products.items())}
        return (f"AInftyCategory({len(self.objects)} objects, {self.presentation}, "
                f"K={self.arity_bound}, entries={arities})")

    def hom(self, x, y):
        return self.homs.get((x, y), EMPTY_SPACE)

    def degree(self, key):
        return self.homs[(key[0], key[1])].degree(key[2])

    def product(self, k):
        m = self.products.get(k)
        if m is None:
            m = MultilinearMap(k, product_degree(k, self.presentation))
        return m

    def keys(self, x, y, degree=None):
        space = self.hom(x, y)
        labels = space.labels if degree is None else space.basis(degree)
        return [(x, y, lab) for lab in labels]

    def all_keys(self):
        return [(x, y, lab) for x in self.objects for y in self.objects
                for lab in self.hom(x, y).labels]

    def key_order(self, key):
        x, y, lab = key
        return (self._obj_index[x], self._obj_index[y], self.hom(x, y).index(lab))

    def chain_order(self, chain):
        return tuple(self.key_order(k) for k in chain)

    def object_index(self, x):
        return self._obj_index[x]

    def replace(self, **changes):
        kw = dict(objects=self.objects, homs=self.homs, products=self.products,
                  presentation=self.presentation, arity_bound=self.arity_bound,
                  units=self.units, convention=self.convention, validate=False)
        kw.update(changes)
        return AInftyCategory(**kw)

    # -- validation --------------------------------------------------------

    def validate(self):
        """Check that every entry is composable and lands in the right degree."""
        for (x, y) in self.homs:
            if x not in self._obj_index or y not in self._obj_index:
                raise ValueError(f"hom between unknown objects {(x, y)!r}")
        for k, m in self.products.items():
            for chain, vec in m.table.items():
                total = 0
                for i, key in enumerate(chain):
                    if key[2] not in self.hom(key[0], key[1]):
                        raise ValueError(f"unknown basis key {key!r}")
                    if i and chain[i - 1][1] != key[0]:
                        raise ValueError(f"chain {chain!r} is not composable")
                    total += self.degree(key)
                want = total + m.degree
                src, tgt = chain[0][0], chain[-1][1]
                space = self.hom(src, tgt)
                for out in vec:
                    if (out[0], out[1]) != (src, tgt) or out[2] not in space:
                        raise ValueError(f"m_{k}{chain!r} lands outside hom({src!r}, {tgt!r})")
                    if space.degree(out[2]) != want:
                        raise ValueError(
                            f"m_{k}{chain!r} has output of degree {space.degree(out[2])}, "
                            f"expected {want} (outside the degree window?)")
        for x, u in self.units.items():
            for key in u:
                if (key[0], key[1]) != (x, x) or key[2] not in self.hom(x, x):
                    raise ValueError(f"unit of {x!r} is not an endomorphism")


# ---------------------------------------------------------------------------
# relation checking


@dataclass
class Violation:
    arity: int
    objects: tuple
    chain: tuple
    residual: dict
    kind: str = "relation"


@dataclass
class RelationReport:
    checked_arity: int
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def first(self, arity=None):
        for v in self.violations:
            if arity is None or v.arity == arity:
                return v
        return None

    def arities(self):
        return sorted({v.arity for v in self.violations})


def _chain_objects(chain):
    return (chain[0][0],) + tuple(k[1] for k in chain)


def violations_from(table, arity, order=None, kind="relation"):
    items = [(c, v) for c, v in table.items() if v]
    if order is not None:
        items.sort(key=lambda cv: order(cv[0]))
    return [Violation(arity, _chain_objects(c), c, v, kind) for c, v in items]


def relation_table(C, n):
    """Residual table of the n-th A-infinity relation (all chains)."""
    acc = {}
    K = C.arity_bound
    for k in range(1, n + 1):
        l = n + 1 - k
        if k > K or l > K:
            continue
        outer, inner = C.product(k), C.product(l)
        if not outer.table or not inner.table:
            continue
        if C.presentation == SUSPENDED:
            def sign(j, prefix):
                return sign_suspended([C.degree(p) for p in prefix])
        else:
            def sign(j, prefix, l=l):
                return sign_unsuspended(j, l, [C.degree(p) for p in prefix])
        insert_sum(outer, inner, sign, acc)
    return {c: v for c, v in acc.items() if v}


def check_relations(C, n_max):
    """Evaluate the A-infinity relations up to ``n_max`` on every chain."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if n_max > 2 * C.arity_bound - 1:
        raise ValueError(
            f"n_max={n_max} exceeds 2K-1={2 * C.arity_bound - 1}: those relations "
            "involve products beyond the arity bound")
    report = RelationReport(n_max)
    for n in range(1, n_max + 1):
        report.violations += violations_from(relation_table(C, n), n, C.chain_order)
    return report


def is_dg(C):
    return all(not m.table for k, m in C.products.items() if k >= 3)


# ---------------------------------------------------------------------------
# suspension


def convert_presentation(C):
    """Toggle between the unsuspended and suspended presentations."""
    to_susp = C.presentation == UNSUSPENDED
    offset = -1 if to_susp else 0
    new_pres = SUSPENDED if to_susp else UNSUSPENDED
    prods = {}
    for k, m in C.products.items():
        table = {}
        for chain, vec in m.table.items():
            sdeg = [C.degree(key) + offset for key in chain]
            s = suspension_sign(k, sdeg)
            table[chain] = vec if s == 1 else {o: -x for o, x in vec.items()}
        prods[k] = MultilinearMap(k, product_degree(k, new_pres), table)
    homs = {p: sp.shifted(-1 if to_susp else 1) for p, sp in C.homs.items()}
    return C.replace(homs=homs, products=prods, presentation=new_pres)


def suspended(C):
    return C if C.presentation == SUSPENDED else convert_presentation(C)


def unsuspended(C):
    return C if C.presentation == UNSUSPENDED else convert_presentation(C)


def compare_categories(A, B, max_arity=None):
    """Differences between two categories: objects, homs, then product tables.

    Returns a list of ``(what, detail)``; empty means coefficient-identical.
    """
    diffs = []
    if set(A.objects) != set(B.objects):
        diffs.append(("objects", (A.objects, B.objects)))
        return diffs
    if A.presentation != B.presentation:
        diffs.append(("presentation", (A.presentation, B.presentation)))
        return diffs
    for pair in sorted(set(A.homs) | set(B.homs), key=repr):
        if A.hom(*pair) != B.hom(*pair):
            diffs.append(("hom", pair))
    if diffs:
        return diffs
    top = max([*A.products, *B.products, 0])
    if max_arity is not None:
        top = min(top, max_arity)
    for k in range(1, top + 1):
        d = table_diff(A.product(k).table, B.product(k).table)
        for chain in sorted(d, key=A.chain_order):
            diffs.append(("product", (k, chain, A.product(k).table.get(chain, {}),
                                      B.product(k).table.get(chain, {}))))
    return diffs


# ---------------------------------------------------------------------------
# hom complexes and cohomology


def differential_blocks(C):
    """b_1 (= m_1 as a matrix) split by hom pair: ``pair -> {key: vec}``."""
    out = {}
    for (key,), vec in C.product(1).table.items():
        out.setdefault((key[0], key[1]), {})[key] = vec
    return out


def _dense_differential(space, cols, x, y):
    dims = space.dims
    diff = {}
    for d in dims:
        src = space.basis(d)
        tgt = space.basis(d + 1)
        if not tgt:
            continue
        rows = {lab: i for i, lab in enumerate(tgt)}
        mat = [[0] * len(src) for _ in tgt]
        for j, lab in enumerate(src):
            for out, c in cols.get((x, y, lab), {}).items():
                if out[2] not in rows:
                    raise RelationError(f"differential on {lab!r} has wrong degree")
                mat[rows[out[2]]][j] = c
        diff[d] = mat
    return dims, diff


@dataclass
class HomHodge:
    """Hodge data for one hom complex, in local labels."""

    small: GradedVectorSpace
    iota: GradedMap
    pi: GradedMap
    h: GradedMap


def hom_hodge(space, diff_cols, x, y, label_prefix="h"):
    """Hodge SDR of the complex (space, d) with ``d`` given as key -> vector."""
    dims, diff = _dense_differential(space, diff_cols, x, y)
    blocks = hodge_decomposition(dims, diff)
    small_basis = []
    for d in sorted(blocks):
        for i in range(len(blocks[d].reps)):
            small_basis.append(((label_prefix, d, i), d))
    small = GradedVectorSpace(small_basis, window=space.window if len(space) else None)
    iota, pi, h = {}, {}, {}
    for d, blk in sorted(blocks.items()):
        src = space.basis(d)
        for i, rep in enumerate(blk.reps):
            iota[(label_prefix, d, i)] = {src[t]: c for t, c in enumerate(rep) if c}
        for j, lab in enumerate(src):
            col = {(label_prefix, d, i): blk.proj[i][j] for i in range(len(blk.reps))
                   if blk.proj[i][j]}
            if col:
                pi[lab] = col
            prev = space.basis(d - 1)
            hcol = {prev[t]: blk.homotopy[t][j] for t in range(len(prev))
                    if blk.homotopy[t][j]}
            if hcol:
                h[lab] = hcol
    return HomHodge(
        small=small,
        iota=GradedMap(small, space, 0, iota),
        pi=GradedMap(space, small, 0, pi),
        h=GradedMap(space, space, -1, h),
    )


def _require_closed_differential(C):
    rep = RelationReport(1, violations_from(relation_table(C, 1), 1, C.chain_order))
    if not rep.ok:
        raise RelationError("m_1 does not square to zero")


@dataclass
class CohomologyCategory:
    """H(C) or H^0(C): cohomology spaces with representative cocycles.

    The composition induced by m_2 is a bilinear table on class keys."""

    objects: tuple
    spaces: dict
    representatives: dict
    composition: MultilinearMap
    only_degree: object = None

    def dims(self, x, y):
        return self.spaces.get((x, y), EMPTY_SPACE).dims


def cohomology(C, degree=None):
    """Cohomology category of C; ``degree=0`` gives H^0(C)."""
    U = unsuspended(C)
    _require_closed_differential(U)
    diff = differential_blocks(U)
    spaces, reps, projs = {}, {}, {}
    for x in U.objects:
        for y in U.objects:
            space = U.hom(x, y)
            if not len(space):
                continue
            hh = hom_hodge(space, diff.get((x, y), {}), x, y)
            labels = [lab for lab in hh.small.labels
                      if degree is None or hh.small.degree(lab) == degree]
            if not labels:
                continue
            spaces[(x, y)] = GradedVectorSpace([(lab, hh.small.degree(lab)) for lab in labels])
            for lab in labels:
                reps[(x, y, lab)] = {(x, y, s): c for s, c in hh.iota.columns[lab].items()}
            projs[(x, y)] = hh.pi
    m2 = U.product(2)
    table = {}
    keys = list(reps)
    by_src = {}
    for k in keys:
        by_src.setdefault(k[0], []).append(k)
    for a in keys:
        for b in by_src.get(a[1], ()):
            val = m2(reps[a], reps[b])
            pair = (a[0], b[1])
            if pair not in projs:
                continue
            local = {k[2]: c for k, c in val.items()}
            img = projs[pair](local)
            img = {(pair[0], pair[1], lab): c for lab, c in img.items()
                   if lab in spaces[pair]}
            if img:
                table[(a, b)] = img
    return CohomologyCategory(
        objects=U.objects, spaces=spaces, representatives=reps,
        composition=MultilinearMap(2, 0, table), only_degree=degree,
    )


def h0(C):
    return cohomology(C, degree=0)


# ---------------------------------------------------------------------------
# strict units


def check_units(C):
    """Strict unitality of the flagged units; returns a list of problems."""
    U = unsuspended(C)
    problems = []
    m1, m2 = U.product(1), U.product(2)
    for x, u in U.units.items():
        if any(U.degree(k) != 0 for k in u):
            problems.append((x, "unit not of degree 0"))
        if m1(u):
            problems.append((x, "unit not closed"))
        for y in U.objects:
            for key in U.keys(x, y):
                if m2(u, {key: ONE}) != {key: ONE}:
                    problems.append((x, f"m2(1, {key!r}) != {key!r}"))
            for key in U.keys(y, x):
                if m2({key: ONE}, u) != {key: ONE}:
                    problems.append((x, f"m2({key!r}, 1) != {key!r}"))
        for k, m in U.products.items():
            if k < 3:
                continue
            for chain, vec in m.table.items():
                hit = any(key in u for key in chain)
                if hit:
                    # a strict unit kills every higher product it enters
                    for pos, key in enumerate(chain):
                        if key in u:
                            args = [{c: ONE} for c in chain]
                            args[pos] = u
                            if m(*args):
                                problems.append((x, f"m{k} with unit is nonzero"))
                                break
    return problems


def restrict(C, objects):
    """Full subcategory on ``objects``."""
    keep = set(objects)
    homs = {p: s for p, s in C.homs.items() if p[0] in keep and p[1] in keep}
    prods = {}
    for k, m in C.products.items():
        table = {}
        for chain, vec in m.table.items():
            if all(key[0] in keep and key[1] in keep for key in chain):
                table[chain] = vec
        prods[k] = MultilinearMap(k, m.degree, table)
    units = {x: u for x, u in C.units.items() if x in keep}
    return C.replace(objects=[x for x in C.objects if x in keep], homs=homs,
                     products=prods, units=units)


def truncate(C, K):
    """Drop products above arity K (the new arity bound)."""
    if K >= C.arity_bound:
        return C
    prods = {k: m for k, m in C.products.items() if k <= K}
    return C.replace(products=prods, arity_bound=K)


def basis_vector(key):
    return {key: ONE}


def apply_local(gmap, x, y, vec, tx=None, ty=None):
    """Apply a per-hom GradedMap to a key-indexed vector of hom(x, y)."""
    tx = x if tx is None else tx
    ty = y if ty is None else ty
    out = {}
    for key, c in vec.items():
        col = gmap.columns.get(key[2])
        if col:
            add_into(out, {(tx, ty, lab): v for lab, v in col.items()}, c)
    return out
