"""The DG category of bounded complexes of finite-dimensional Q-vector spaces.

Maps compose diagrammatically: ``compose(phi, psi)`` applies phi first.  A
matrix acting on column vectors therefore composes as ``Psi @ Phi``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .category import UNSUSPENDED, AInftyCategory, unsuspended
from .graded import ONE, GradedVectorSpace, MultilinearMap, normalize
from .linalg import as_matrix, is_zero, matmul, zeros


@dataclass(frozen=True)
class Complex:
    """Bounded complex: ``dims[i]`` = dim X^i, ``diff[i]`` the matrix of
    d^i: X^i -> X^{i+1} (shape dims[i+1] x dims[i])."""

    name: str
    dims: dict
    diff: dict = field(default_factory=dict)

    def __post_init__(self):
        dims = {int(i): int(n) for i, n in self.dims.items() if n}
        object.__setattr__(self, "dims", dict(sorted(dims.items())))
        diff = {}
        for i, mat in self.diff.items():
            i = int(i)
            m = as_matrix(mat)
            rows, cols = self.dim(i + 1), self.dim(i)
            if rows and cols:
                if len(m) != rows or any(len(r) != cols for r in m):
                    raise ValueError(f"{self.name}: d^{i} has wrong shape")
                if not is_zero(m):
                    diff[i] = m
            elif not is_zero(m) if m else False:
                raise ValueError(f"{self.name}: d^{i} maps between zero spaces")
        object.__setattr__(self, "diff", dict(sorted(diff.items())))
        for i in self.diff:
            nxt = self.diff.get(i + 1)
            if nxt is not None and not is_zero(matmul(nxt, self.diff[i])):
                raise ValueError(f"{self.name}: d^{i + 1} d^{i} != 0")

    def __hash__(self):
        return hash(self.name)

    def dim(self, i):
        return self.dims.get(i, 0)

    def d(self, i):
        m = self.diff.get(i)
        return m if m is not None else zeros(self.dim(i + 1), self.dim(i))

    def degrees(self):
        return list(self.dims)

    @property
    def total_dim(self):
        return sum(self.dims.values())


def shift_complex(X, n=1, name=None):
    """X[n]: X[n]^i = X^{i+n}, d_{X[n]}^i = (-1)^n d_X^{i+n}."""
    sign = -1 if n % 2 else 1
    dims = {i - n: k for i, k in X.dims.items()}
    diff = {i - n: [[sign * x for x in row] for row in m] for i, m in X.diff.items()}
    return Complex(name or f"{X.name}[{n}]", dims, diff)


# ---------------------------------------------------------------------------
# morphisms as collections of matrices


@dataclass
class DGHom:
    """phi in DG^r(X, Y): ``components[i]`` is the dim Y^{i+r} x dim X^i matrix."""

    source: Complex
    target: Complex
    degree: int
    components: dict = field(default_factory=dict)

    def component(self, i):
        m = self.components.get(i)
        if m is None:
            return zeros(self.target.dim(i + self.degree), self.source.dim(i))
        return m

    def is_zero(self):
        return all(is_zero(m) for m in self.components.values())


def _add(a, b, sb=1):
    return [[x + sb * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def dg_differential(phi):
    """(d phi)^i = d_X^i then phi^{i+1}, minus (-1)^r phi^i then d_Y^{i+r}."""
    X, Y, r = phi.source, phi.target, phi.degree
    comps = {}
    for i in sorted(set(X.dims) | {i - 1 for i in X.dims}):
        if not X.dim(i) or not Y.dim(i + r + 1):
            continue
        first = matmul(phi.component(i + 1), X.d(i), X.dim(i + 1), X.dim(i))
        second = matmul(Y.d(i + r), phi.component(i), Y.dim(i + r), X.dim(i))
        comps[i] = _add(first, second, 1 if r % 2 else -1)
    return DGHom(X, Y, r + 1, comps)


def dg_compose(phi, psi):
    """phi then psi (degrees add)."""
    if phi.target.name != psi.source.name:
        raise ValueError("not composable")
    comps = {}
    for i in phi.source.dims:
        mid = i + phi.degree
        out = i + phi.degree + psi.degree
        if not phi.target.dim(mid) or not psi.target.dim(out):
            continue
        comps[i] = matmul(psi.component(mid), phi.component(i), phi.target.dim(mid),
                          phi.source.dim(i))
    return DGHom(phi.source, psi.target, phi.degree + psi.degree, comps)


def is_chain_map(phi):
    """Componentwise d_X then phi == phi then d_Y (degree 0)."""
    if phi.degree != 0:
        return False
    X, Y = phi.source, phi.target
    for i in set(X.dims) | {i - 1 for i in X.dims}:
        lhs = matmul(phi.component(i + 1), X.d(i), X.dim(i + 1), X.dim(i))
        rhs = matmul(Y.d(i), phi.component(i), Y.dim(i), X.dim(i))
        if lhs != rhs:
            return False
    return True


def identity_hom(X):
    return DGHom(X, X, 0, {i: [[ONE if a == b else Fraction(0) for b in range(n)]
                               for a in range(n)] for i, n in X.dims.items()})


# ---------------------------------------------------------------------------
# the DG category on a list of complexes


def _basis(X, Y):
    """Matrix units (i, a, j, b): basis vector a of X^i to basis vector b of Y^j."""
    out = []
    for i, n in X.dims.items():
        for j, m in Y.dims.items():
            for a in range(n):
                for b in range(m):
                    out.append(((i, a, j, b), j - i))
    out.sort(key=lambda t: (t[1], t[0]))
    return out


def build_dg_category(complexes, arity_bound=3):
    """DG(A) on ``complexes``: m_1 = d, m_2 = composition, m_k = 0 for k >= 3.

    The arity bound only declares how far the (zero) higher products are
    asserted; it must be >= 2.
    """
    if arity_bound < 2:
        raise ValueError("a DG category needs arity bound >= 2")
    cx = {X.name: X for X in complexes}
    if len(cx) != len(complexes):
        raise ValueError("complex names must be unique")
    names = [X.name for X in complexes]
    homs = {(x, y): GradedVectorSpace(_basis(cx[x], cx[y])) for x in names for y in names}
    homs = {p: s for p, s in homs.items() if len(s)}

    m1 = {}
    for (x, y), space in homs.items():
        X, Y = cx[x], cx[y]
        for lab in space.labels:
            i, a, j, b = lab
            r = j - i
            out = {}
            # d_X^{i-1} then E: coefficient of a in d(a') for a' in X^{i-1}
            dprev = X.diff.get(i - 1)
            if dprev is not None:
                for ap in range(X.dim(i - 1)):
                    c = dprev[a][ap]
                    if c:
                        k = (x, y, (i - 1, ap, j, b))
                        out[k] = out.get(k, 0) + c
            # -(-1)^r E then d_Y^j
            dnext = Y.diff.get(j)
            if dnext is not None:
                sgn = 1 if r % 2 else -1
                for bp in range(Y.dim(j + 1)):
                    c = dnext[bp][b]
                    if c:
                        k = (x, y, (i, a, j + 1, bp))
                        out[k] = out.get(k, 0) + sgn * c
            out = {k: normalize(v) for k, v in out.items() if v}
            if out:
                m1[((x, y, lab),)] = out

    m2 = {}
    by_src_vec = {}
    for (y, z), space in homs.items():
        for lab in space.labels:
            i, a, _, _ = lab
            by_src_vec.setdefault((y, i, a), []).append((z, lab))
    for (x, y), space in homs.items():
        for lab in space.labels:
            i, a, j, b = lab
            for z, lab2 in by_src_vec.get((y, j, b), ()):
                _, _, k, c = lab2
                m2[((x, y, lab), (y, z, lab2))] = {(x, z, (i, a, k, c)): ONE}

    units = {}
    for x in names:
        u = {(x, x, (i, a, i, a)): ONE for i, n in cx[x].dims.items() for a in range(n)}
        if u:
            units[x] = u
    C = AInftyCategory(
        objects=names, homs=homs,
        products={1: MultilinearMap(1, 1, m1), 2: MultilinearMap(2, 0, m2)},
        presentation=UNSUSPENDED, arity_bound=arity_bound, units=units,
    )
    C.complexes = cx
    return C


def hom_to_vector(phi, x=None, y=None):
    """DGHom -> key-indexed vector in DG(A)(X, Y)."""
    x = phi.source.name if x is None else x
    y = phi.target.name if y is None else y
    out = {}
    for i, mat in phi.components.items():
        j = i + phi.degree
        for b, row in enumerate(mat):
            for a, c in enumerate(row):
                if c:
                    out[(x, y, (i, a, j, b))] = normalize(c)
    return out


def vector_to_hom(vec, X, Y, degree):
    comps = {}
    for (_, _, (i, a, j, b)), c in vec.items():
        if j - i != degree:
            raise ValueError("vector is not homogeneous of the given degree")
        m = comps.setdefault(i, zeros(Y.dim(j), X.dim(i)))
        m[b][a] = Fraction(c)
    return DGHom(X, Y, degree, comps)


# ---------------------------------------------------------------------------
# shift identifications


def identify(phi, r1, r2, X_shift=None, Y_shift=None):
    """phi in DG^r(X, Y) as phi' in DG^{r + r1 - r2}(X[r1], Y[r2]):
    (phi')^{i - r1} = phi^i."""
    Xs = X_shift or shift_complex(phi.source, r1)
    Ys = Y_shift or shift_complex(phi.target, r2)
    comps = {i - r1: m for i, m in phi.components.items()}
    return DGHom(Xs, Ys, phi.degree + r1 - r2, comps)


@dataclass
class IdentificationReport:
    mu: DGHom
    nu: DGHom
    d_mu_sign_ok: bool
    d_nu_sign_ok: bool
    composition_ok: bool

    @property
    def ok(self):
        return self.d_mu_sign_ok and self.d_nu_sign_ok and self.composition_ok


def _scaled_hom(phi, s):
    return DGHom(phi.source, phi.target, phi.degree,
                 {i: [[s * x for x in row] for row in m] for i, m in phi.components.items()})


def _same(a, b):
    keys = set(a.components) | set(b.components)
    return a.degree == b.degree and all(a.component(i) == b.component(i) for i in keys)


def shift_identifications(phi, psi=None):
    """mu in DG^{r-1}(X, Y[1]) with mu^i = phi^i and nu in DG^{r+1}(X[1], Y)
    with nu^{i-1} = phi^i.  Checks d(mu) ~ +d(phi), d(nu) ~ -d(phi), and
    (when ``psi: Y -> Z`` is given) that composition carries no sign under
    both identifications."""
    mu = identify(phi, 0, 1)
    nu = identify(phi, 1, 0)
    dphi = dg_differential(phi)
    d_mu_ok = _same(dg_differential(mu), identify(dphi, 0, 1, mu.source, mu.target))
    d_nu_ok = _same(dg_differential(nu),
                    identify(_scaled_hom(dphi, -1), 1, 0, nu.source, nu.target))
    comp_ok = True
    if psi is not None:
        # phi: X -> Y, psi: Y -> Z seen as X -> Y[1] -> Z[1] and X[1] -> Y[1] -> Z
        Y1 = shift_complex(phi.target, 1)
        Z1 = shift_complex(psi.target, 1)
        X1 = shift_complex(phi.source, 1)
        prod = dg_compose(phi, psi)
        a = dg_compose(identify(phi, 0, 1, phi.source, Y1), identify(psi, 1, 1, Y1, Z1))
        comp_ok &= _same(a, identify(prod, 0, 1, phi.source, Z1))
        b = dg_compose(identify(phi, 1, 1, X1, Y1), identify(psi, 1, 0, Y1, psi.target))
        comp_ok &= _same(b, identify(prod, 1, 0, X1, psi.target))
    return IdentificationReport(mu, nu, d_mu_ok, d_nu_ok, comp_ok)


# ---------------------------------------------------------------------------
# DG(A) versus the convention-2 enlargement


@dataclass
class TildeComparison:
    convention: int
    equal: bool
    mismatches: list
    checked: dict

    def first(self):
        return self.mismatches[0] if self.mismatches else None

    def summary(self):
        if self.equal:
            return f"a={self.convention}: EQUAL"
        arity, shifts = self.mismatches[0][0], self.mismatches[0][1]
        return (f"a={self.convention}: DIFFERS at arity {arity}, "
                f"shifts ({','.join(str(r) for r in shifts[:arity])})")


def _shift_order(r):
    return (abs(r), -r)


def check_dg_equals_tilde2(complexes, shifts=(-2, -1, 0, 1, 2), convention=2):
    """Compare m~_1, m~_2 (and vanishing m~_{>=3}) of the enlargement of the
    DG category on ``complexes`` with DG(A)'s own d and composition on the
    shifted complexes X[r], for every r in ``shifts``.

    Mismatches are listed arity first, then by source shifts (0, 1, -1, 2, ...).
    """
    from .shifts import SumObject, enlarge

    C = build_dg_category(complexes)
    shifts = sorted(set(shifts), key=_shift_order)
    objs = [SumObject.single(X.name, r) for X in complexes for r in shifts]
    Ct = unsuspended(enlarge(C, convention, objs))
    shifted = {(X.name, r): shift_complex(X, r) for X in complexes for r in shifts}
    G = build_dg_category(list(shifted.values()))

    def to_g(key):
        S, T, (_, _, (i, a, j, b)) = key
        (x, r), = S.summands
        (y, s), = T.summands
        return (shifted[(x, r)].name, shifted[(y, s)].name, (i - r, a, j - s, b))

    mismatches = []
    checked = {}
    top = max(Ct.arity_bound, G.arity_bound)
    for k in range(1, top + 1):
        mt = Ct.product(k).table
        mg = G.product(k).table
        mapped = {tuple(to_g(key) for key in chain): {to_g(o): c for o, c in vec.items()}
                  for chain, vec in mt.items()}
        checked[k] = len(mapped)
        bad = [c for c in set(mapped) | set(mg) if mapped.get(c) != mg.get(c)]
        back = {}
        for chain in mt:
            back[tuple(to_g(key) for key in chain)] = chain
        rows = []
        for c in bad:
            orig = back.get(c)
            if orig is not None:
                sh = [key[0].summands[0][1] for key in orig] + [orig[-1][1].summands[0][1]]
            else:
                sh = [_parse_shift(key[0]) for key in c] + [_parse_shift(c[-1][1])]
            rows.append((k, tuple(sh), c, mapped.get(c), mg.get(c)))
        rows.sort(key=lambda t: (t[0], tuple(_shift_order(r) for r in t[1]), repr(t[2])))
        mismatches += rows
    return TildeComparison(convention, not mismatches, mismatches, checked)


def _parse_shift(name):
    return int(name[name.rindex("[") + 1:-1])


def demo_complexes():
    """Two small complexes used by the demo: X = (Q --1--> Q) in degrees 0, 1
    and Y = Q in degree 0."""
    X = Complex("X", {0: 1, 1: 1}, {0: [[1]]})
    Y = Complex("Y", {0: 1})
    return [X, Y]
