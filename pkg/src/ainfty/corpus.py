"""Seeded random complexes and the DG -> Hodge SDR -> transfer pipeline.

A random complex is a direct sum of cohomology pieces (Q in one degree) and
contractible pieces (Q --1--> Q), conjugated by a random invertible change of
basis in every degree.  This guarantees d^2 = 0 while producing dense,
non-diagonal differentials.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .dg import Complex, build_dg_category
from .hpt import conjugate_sdr, hodge_sdr, random_gauge, transfer
from .linalg import inverse, matmul, rank

DEGREES = (-2, -1, 0, 1, 2)


def _random_invertible(rng, n):
    while True:
        m = [[Fraction(rng.choice((-1, 0, 0, 1, 1, 2))) for _ in range(n)] for _ in range(n)]
        if rank(m, n) == n:
            return m


def random_complex(rng, name, max_dim=4, degrees=DEGREES):
    """Random bounded complex with total dimension between 1 and ``max_dim``."""
    lo, hi = min(degrees), max(degrees)
    pieces = []
    total = 0
    target = rng.randint(1, max_dim)
    while total < target:
        if target - total >= 2 and rng.random() < 0.5:
            d = rng.randint(lo, hi - 1)
            pieces.append(("pair", d))
            total += 2
        else:
            pieces.append(("point", rng.randint(lo, hi)))
            total += 1
    dims = {}
    pos = []
    for kind, d in pieces:
        if kind == "point":
            dims[d] = dims.get(d, 0) + 1
        else:
            a, b = dims.get(d, 0), dims.get(d + 1, 0)
            dims[d], dims[d + 1] = a + 1, b + 1
            pos.append((d, a, b))
    diff = {}
    for d, a, b in pos:
        m = diff.setdefault(d, [[Fraction(0)] * dims[d] for _ in range(dims[d + 1])])
        m[b][a] = Fraction(1)
    for d in list(diff):
        # pad rows added after this block was created
        m = diff[d]
        rows, cols = dims.get(d + 1, 0), dims[d]
        diff[d] = [row + [Fraction(0)] * (cols - len(row)) for row in m] + \
            [[Fraction(0)] * cols for _ in range(rows - len(m))]
    # conjugate: d'^d = g_{d+1} d^d g_d^{-1}
    g = {d: _random_invertible(rng, n) for d, n in dims.items()}
    ginv = {d: inverse(m) for d, m in g.items()}
    new = {}
    for d, m in diff.items():
        new[d] = matmul(matmul(g[d + 1], m, dims[d + 1]), ginv[d], dims[d])
    return Complex(name, dims, new)


@dataclass
class Instance:
    """One corpus entry: complexes, their DG category, Hodge SDR and model."""

    name: str
    complexes: list
    category: object
    sdr: object = None
    model: object = None
    functor: object = None

    @property
    def total_dim(self):
        return sum(X.total_dim for X in self.complexes)

    @property
    def has_m3(self):
        return self.model is not None and bool(self.model.product(3).table)


def random_dg_instance(rng, name, n_complexes=None, max_total=8, max_complex_dim=4):
    n = n_complexes or rng.randint(1, 3)
    budget = max_total
    cxs = []
    for i in range(n):
        left = n - i - 1
        cap = min(max_complex_dim, budget - left)
        X = random_complex(rng, f"X{i}", max_dim=max(1, cap))
        cxs.append(X)
        budget -= X.total_dim
    return Instance(name, cxs, build_dg_category(cxs))


def make_instance(rng, name, K_out=5, gauge=True, max_total=8, max_complex_dim=4):
    """Sample complexes and run them through the transfer pipeline."""
    inst = random_dg_instance(rng, name, max_total=max_total, max_complex_dim=max_complex_dim)
    s = hodge_sdr(inst.category)
    if gauge:
        s = conjugate_sdr(s, random_gauge(s, rng))
    inst.sdr = s
    inst.model, inst.functor = transfer(s, K_out)
    return inst


def generate(seed, size, K_out=5, gauge=True, ensure_m3=True, max_tries=500,
             max_total=8, max_complex_dim=4):
    """Deterministic corpus of ``size`` instances from ``seed``.

    SDRs are Hodge SDRs conjugated by a random chain automorphism (``gauge``);
    plain Hodge SDRs on these categories give vanishing m_3.  With
    ``ensure_m3`` the last instance is redrawn (at most ``max_tries`` times)
    until its model has m_3 != 0 unless an earlier one already does; callers
    inspect ``has_m3`` when the dimensions are too small for that to succeed.
    """
    rng = random.Random(seed)
    out = []
    for t in range(size):
        name = f"inst{t:03d}"
        inst = make_instance(rng, name, K_out, gauge, max_total, max_complex_dim)
        last = t == size - 1
        tries = 0
        while ensure_m3 and last and not any(i.has_m3 for i in out) and not inst.has_m3:
            tries += 1
            if tries > max_tries:
                break
            inst = make_instance(rng, name, K_out, gauge, max_total, max_complex_dim)
        out.append(inst)
    return out
