"""Strong deformation retracts and homotopy transfer of A-infinity structures."""

from fractions import Fraction

from .category import (
    SUSPENDED, AInftyCategory, RelationError, RelationReport, Violation,
    differential_blocks, hom_hodge, suspended, _require_closed_differential,
)
from .functors import AInftyFunctor
from .graded import ONE, GradedMap, GradedVectorSpace, MultilinearMap, add_into, clean_table
from .linalg import inverse, rank
from .tensor import compose_sum


class SDRData:
    """Per hom pair (iota, pi, h) retracting big(x, y) onto small(x, y).

    ``iota`` and ``pi`` have degree 0, ``h`` degree -1, all as GradedMaps in
    local labels.  Small spaces carry degrees in the big category's
    presentation.  Pairs missing from a dict are zero maps.
    """

    def __init__(self, big, small_homs, iota, pi, h):
        self.big = big
        self.small_homs = {p: sp for p, sp in small_homs.items() if len(sp)}
        self.iota = dict(iota)
        self.pi = dict(pi)
        self.h = dict(h)

    def __repr__(self):
        dims = sum(len(sp) for sp in self.small_homs.values())
        return f"SDRData(big={self.big!r}, small_total_dim={dims})"

    def pairs(self):
        return sorted(set(self.big.homs) | set(self.small_homs),
                      key=lambda p: (self.big.object_index(p[0]), self.big.object_index(p[1])))

    def small(self, x, y):
        return self.small_homs.get((x, y), GradedVectorSpace())

    def maps(self, x, y):
        """(iota, pi, h) for one pair, zero maps filled in."""
        big = self.big.hom(x, y)
        small = self.small(x, y)
        iota = self.iota.get((x, y)) or GradedMap.zero(small, big, 0)
        pi = self.pi.get((x, y)) or GradedMap.zero(big, small, 0)
        h = self.h.get((x, y)) or GradedMap.zero(big, big, -1)
        return iota, pi, h

    def differential(self, x, y):
        big = self.big.hom(x, y)
        cols = differential_blocks(self.big).get((x, y), {})
        return GradedMap(big, big, 1, {k[2]: {o[2]: c for o, c in v.items()}
                                       for k, v in cols.items()})

    def small_differential(self, x, y):
        iota, pi, _ = self.maps(x, y)
        return iota.then(self.differential(x, y)).then(pi)

    def with_big(self, big):
        """Same maps over a re-presented big category (degrees follow it)."""
        shift = 0
        if big.presentation != self.big.presentation:
            shift = -1 if big.presentation == SUSPENDED else 1
        small = {p: sp.shifted(shift) for p, sp in self.small_homs.items()}
        iota, pi, h = {}, {}, {}
        for (x, y) in self.pairs():
            i0, p0, h0 = self.maps(x, y)
            bsp, ssp = big.hom(x, y), small.get((x, y), GradedVectorSpace())
            iota[(x, y)] = GradedMap(ssp, bsp, 0, i0.columns)
            pi[(x, y)] = GradedMap(bsp, ssp, 0, p0.columns)
            h[(x, y)] = GradedMap(bsp, bsp, -1, h0.columns)
        return SDRData(big, small, iota, pi, h)


def _map_residual(report, x, y, lhs, rhs, kind):
    labels = list(lhs.source.labels)
    for lab in labels:
        d = add_into(dict(lhs.columns.get(lab, {})), rhs.columns.get(lab, {}), -ONE)
        if d:
            report.violations.append(Violation(
                1, (x, y), ((x, y, lab),), {(x, y, t): c for t, c in d.items()}, kind))


def check_sdr(s):
    """Verify pi iota = Id, chain-map conditions, d h + h d = Id - P, and the
    consequences P^2 = P, P d = d P, block by block and exactly."""
    report = RelationReport(1)
    for (x, y) in s.pairs():
        iota, pi, h = s.maps(x, y)
        big, small = s.big.hom(x, y), s.small(x, y)
        d = s.differential(x, y)
        dB = iota.then(d).then(pi)
        idB, idA = GradedMap.identity(small), GradedMap.identity(big)
        P = pi.then(iota)
        _map_residual(report, x, y, iota.then(pi), idB, "pi*iota = Id")
        _map_residual(report, x, y, iota.then(d), dB.then(iota), "iota chain map")
        _map_residual(report, x, y, d.then(pi), pi.then(dB), "pi chain map")
        _map_residual(report, x, y, h.then(d) + d.then(h), idA - P, "d h + h d = Id - P")
        _map_residual(report, x, y, P.then(P), P, "P idempotent")
        _map_residual(report, x, y, P.then(d), d.then(P), "P d = d P")
    return report


def side_conditions(s):
    """Informational: whether h h = 0, h iota = 0 and pi h = 0 hold."""
    hh = hi = ph = True
    for (x, y) in s.pairs():
        iota, pi, h = s.maps(x, y)
        hh &= h.then(h).is_zero()
        hi &= iota.then(h).is_zero()
        ph &= h.then(pi).is_zero()
    return {"h h = 0": hh, "h iota = 0": hi, "pi h = 0": ph}


def hodge_sdr(C):
    """SDR of every hom complex onto its cohomology (echelon representatives)."""
    _require_closed_differential(C)
    diff = differential_blocks(C)
    small, iota, pi, h = {}, {}, {}, {}
    for x in C.objects:
        for y in C.objects:
            space = C.hom(x, y)
            if not len(space):
                continue
            hh = hom_hodge(space, diff.get((x, y), {}), x, y)
            small[(x, y)] = hh.small
            iota[(x, y)], pi[(x, y)], h[(x, y)] = hh.iota, hh.pi, hh.h
    return SDRData(C, small, iota, pi, h)


def trivial_sdr(C):
    """small = big, iota = pi = Id, h = 0."""
    small, iota, pi, h = {}, {}, {}, {}
    for pair, space in C.homs.items():
        small[pair] = space
        iota[pair] = GradedMap.identity(space)
        pi[pair] = GradedMap.identity(space)
        h[pair] = GradedMap.zero(space, space, -1)
    return SDRData(C, small, iota, pi, h)


def conjugate_sdr(s, gauges):
    """(g iota, pi g^-1, g h g^-1) for chain automorphisms g of the big homs.

    ``gauges`` maps a pair to ``(g, g_inverse)`` as degree-0 GradedMaps
    (diagrammatic: iota then g).  Pairs left out keep their maps.  The result
    is again an SDR onto the same small spaces, with the same side conditions.
    """
    iota, pi, h = {}, {}, {}
    for pair in s.pairs():
        i0, p0, h0 = s.maps(*pair)
        if pair in gauges:
            g, ginv = gauges[pair]
            i0, p0, h0 = i0.then(g), ginv.then(p0), ginv.then(h0).then(g)
        iota[pair], pi[pair], h[pair] = i0, p0, h0
    return SDRData(s.big, s.small_homs, iota, pi, h)


def random_gauge(s, rng, weights=(-1, 0, 0, 1)):
    """Random chain automorphisms g = Id + d t + t d (t of degree -1, entries
    drawn from ``weights``), redrawn until invertible in every degree."""
    gauges = {}
    for pair in s.pairs():
        big = s.big.hom(*pair)
        d = s.differential(*pair)
        while True:
            cols = {}
            for lab in big.labels:
                below = big.basis(big.degree(lab) - 1)
                cols[lab] = {t: Fraction(rng.choice(weights)) for t in below}
            t = GradedMap(big, big, -1, cols)
            g = GradedMap.identity(big) + d.then(t) + t.then(d)
            blocks = {}
            for deg in big.degrees():
                blk = g.block(deg)
                if rank(blk, len(blk)) != len(blk):
                    break
                blocks[deg] = inverse(blk)
            else:
                gauges[pair] = (g, GradedMap.from_blocks(big, big, 0, blocks))
                break
    return gauges


def _apply_pairwise(maps, vec):
    out = {}
    for key, c in vec.items():
        g = maps.get((key[0], key[1]))
        if g is None:
            continue
        col = g.columns.get(key[2])
        if col:
            add_into(out, {(key[0], key[1], lab): v for lab, v in col.items()}, c)
    return out


def _apply_table(maps, table, scale=ONE):
    out = {}
    for chain, vec in table.items():
        v = _apply_pairwise(maps, vec)
        if v:
            out[chain] = {k: scale * c for k, c in v.items()} if scale != ONE else v
    return out


def transfer(s, K_out):
    """Homotopy transfer across ``s``.

    Returns the transferred category D (suspended presentation, arity bound
    K_out) and the functor F: D -> big with f_1 = iota and
    f_{n+1} = -h sum_{j>=2} b_j(f ... f), b^D_{n+1} = pi sum_{j>=2} b_j(f ... f).
    """
    C = suspended(s.big)
    if C is not s.big:
        s = s.with_big(C)
    K = C.arity_bound
    if K_out < 1:
        raise ValueError("K_out must be positive")
    if K_out > 2 * K - 1:
        raise ValueError(f"K_out={K_out} exceeds the soundness bound 2K-1={2 * K - 1}")

    iota = {p: s.maps(*p)[0] for p in s.small_homs}
    pi = {p: s.maps(*p)[1] for p in s.pairs()}
    h = {p: s.maps(*p)[2] for p in s.pairs()}

    f = {1: {}}
    for (x, y), space in s.small_homs.items():
        for lab in space.labels:
            v = _apply_pairwise(iota, {(x, y, lab): ONE})
            if v:
                f[1][((x, y, lab),)] = v
    b1 = C.product(1)
    bD = {1: clean_table(_apply_table(pi, {c: b1(v) for c, v in f[1].items()}))}
    outer = {j: C.product(j) for j in range(2, K + 1)}
    for n in range(1, K_out):
        S = clean_table(compose_sum(outer, f, n + 1, min_arity=2))
        f[n + 1] = clean_table(_apply_table(h, S, -ONE))
        bD[n + 1] = clean_table(_apply_table(pi, S))

    D = AInftyCategory(
        objects=C.objects, homs=s.small_homs, products=bD,
        presentation=SUSPENDED, arity_bound=K_out, convention=C.convention,
    )
    F = AInftyFunctor(D, C, {x: x for x in C.objects}, f, arity_bound=K_out)
    return D, F


def minimal_model(C, K_out):
    """Transfer over the Hodge SDR: a minimal model with its quasi-isomorphism."""
    s = hodge_sdr(C)
    D, F = transfer(s, K_out)
    if D.product(1).table:
        raise RelationError("transferred differential is not zero")
    return D, F
