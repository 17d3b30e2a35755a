"""One-sided twisted complexes over an enlargement, evaluated lazily.

Everything is in the suspended presentation.  A twisted complex is a sum
object S with a degree-0 endomorphism Phi whose blocks phi_ij vanish unless
i < j.  A morphism of suspended degree -1 is a degree-0 morphism in the
unsuspended sense, so H^0 is computed in suspended degree -1.
"""

from dataclasses import dataclass, field

from .category import (
    SUSPENDED, AInftyCategory, CohomologyCategory, RelationReport, Violation,
    hom_hodge, suspended,
)
from .graded import ONE, GradedVectorSpace, MultilinearMap, add_into, clean, normalize
from .linalg import nullspace, solve
from .shifts import SumObject, check_convention, enlarged_hom, enlarged_unit, eval_enlarged
from .signs import parity_sign, shift_functor_sign


class TwistedError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TwistedComplex:
    """(S, Phi): ``phi`` maps enlarged keys (S, S, (i, j, label)) to scalars."""

    name: str
    obj: SumObject
    phi: dict = field(default_factory=dict)

    def __post_init__(self):
        phi = clean(self.phi)
        for key in phi:
            S, T, (i, j, _) = key
            if S != self.obj or T != self.obj:
                raise TwistedError(f"{key!r} is not an endomorphism of {self.obj}")
            if i >= j:
                raise TwistedError(f"Phi is not strictly upper triangular at block {(i, j)}")
        object.__setattr__(self, "phi", phi)

    def __repr__(self):
        return f"TwistedComplex({self.name!r}, {self.obj}, {len(self.phi)} entries)"


@dataclass
class TwMorphism:
    source: TwistedComplex
    target: TwistedComplex
    value: dict


class Tw:
    """Twisted complexes over the convention-``a`` enlargement of C."""

    def __init__(self, C, a):
        self.base = suspended(C)
        self.a = check_convention(a)
        self._homs = {}

    @property
    def K(self):
        return self.base.arity_bound

    def hom(self, P, Q):
        """Graded hom space of enlarged labels between two twisted complexes."""
        pair = (P.obj, Q.obj)
        if pair not in self._homs:
            self._homs[pair] = enlarged_hom(self.base, P.obj, Q.obj)
        return self._homs[pair]

    def twisted(self, name, obj, phi=None, check=True):
        t = TwistedComplex(name, obj, phi or {})
        sp = self.hom(t, t)
        for key in t.phi:
            if key[2] not in sp:
                raise TwistedError(f"{key!r} is not a basis key")
            if sp.degree(key[2]) != 0:
                raise TwistedError("Phi must have suspended degree 0")
        if check:
            rep = self.check_mc(t)
            if not rep.ok:
                raise TwistedError(f"{name!r} does not solve the Maurer-Cartan equation")
        return t

    def plain(self, x, r=0, name=None):
        """(x[r], 0)."""
        return self.twisted(name or f"{x}[{r}]", SumObject.single(x, r), check=False)

    # -- products ----------------------------------------------------------

    def b(self, k, vecs):
        """b~_k on enlarged vectors."""
        return eval_enlarged(self.base, self.a, k, vecs)

    def mc_residual(self, t):
        out = {}
        top = min(self.K, len(t.obj) - 1)
        for k in range(1, top + 1):
            add_into(out, self.b(k, [t.phi] * k))
        return out

    def check_mc(self, t):
        res = self.mc_residual(t)
        rep = RelationReport(0)
        if res:
            rep.violations.append(Violation(0, (t.obj,), (t.name,), res, "Maurer-Cartan"))
        return rep

    def product(self, objects, vecs):
        """b^Tw_n(vecs) for a chain through n+1 twisted complexes.

        Sums b~ over every way of inserting copies of Phi_p around the inputs;
        each insertion raises the summand index, so a twisted complex with l
        summands takes at most l-1 of them, and the arity stays <= K.
        """
        n = len(vecs)
        if len(objects) != n + 1:
            raise TwistedError("need n+1 twisted complexes for n morphisms")
        for p, v in enumerate(vecs):
            for key in v:
                if key[0] != objects[p].obj or key[1] != objects[p + 1].obj:
                    raise TwistedError("morphism does not match the chain")
        caps = [len(t.obj) - 1 if t.phi else 0 for t in objects]
        out = {}

        def rec(p, args, used):
            if p == n + 1:
                if args:
                    add_into(out, self.b(len(args), args))
                return
            room = self.K - used - (n - p)
            for k in range(0, min(caps[p], room) + 1):
                seq = args + [objects[p].phi] * k
                if p < n:
                    rec(p + 1, seq + [vecs[p]], used + k + 1)
                else:
                    rec(p + 1, seq, used + k)

        rec(0, [], 0)
        return out

    def b1(self, P, Q, vec):
        return self.product([P, Q], [vec])

    def b2(self, P, Q, R, u, v):
        return self.product([P, Q, R], [u, v])

    # -- local differentials, cohomology -------------------------------------

    def differential_columns(self, P, Q):
        """b^Tw_1 on every basis element of hom(P, Q), as label -> {label: c}."""
        sp = self.hom(P, Q)
        cols = {}
        for lab in sp.labels:
            v = self.b1(P, Q, {(P.obj, Q.obj, lab): ONE})
            if v:
                cols[lab] = {k[2]: c for k, c in v.items()}
        return cols

    def check_b1_squared(self, P, Q):
        """b^Tw_1 b^Tw_1 = 0 on hom(P, Q); returns the offending residuals."""
        bad = {}
        for lab in self.hom(P, Q).labels:
            v = self.b1(P, Q, self.b1(P, Q, {(P.obj, Q.obj, lab): ONE}))
            if v:
                bad[lab] = v
        return bad

    def hom_hodge(self, P, Q):
        sp = self.hom(P, Q)
        cols = {(P.name, Q.name, lab): {(P.name, Q.name, t): c for t, c in col.items()}
                for lab, col in self.differential_columns(P, Q).items()}
        return hom_hodge(sp, cols, P.name, Q.name)

    def is_boundary(self, P, Q, vec):
        """A preimage z with b^Tw_1(z) = vec, or None."""
        if not vec:
            return {}
        sp = self.hom(P, Q)
        degs = {sp.degree(k[2]) for k in vec}
        if len(degs) != 1:
            raise TwistedError("inhomogeneous vector")
        d = degs.pop()
        src = sp.basis(d - 1)
        tgt = sp.basis(d)
        row = {lab: i for i, lab in enumerate(tgt)}
        cols = self.differential_columns(P, Q)
        mat = [[0] * len(src) for _ in tgt]
        for j, lab in enumerate(src):
            for t, c in cols.get(lab, {}).items():
                mat[row[t]][j] = c
        rhs = [0] * len(tgt)
        for k, c in vec.items():
            rhs[row[k[2]]] = c
        x = solve(mat, rhs, len(src))
        if x is None:
            return None
        return {(P.obj, Q.obj, src[j]): c for j, c in enumerate(x) if c}

    def closed_morphisms(self, P, Q):
        """Basis of the closed degree-0 morphisms P -> Q (suspended degree -1),
        one vector per free column of b^Tw_1 in canonical order."""
        sp = self.hom(P, Q)
        src, tgt = sp.basis(-1), sp.basis(0)
        row = {lab: i for i, lab in enumerate(tgt)}
        cols = self.differential_columns(P, Q)
        mat = [[0] * len(src) for _ in tgt]
        for j, lab in enumerate(src):
            for t, c in cols.get(lab, {}).items():
                mat[row[t]][j] = c
        return [TwMorphism(P, Q, {(P.obj, Q.obj, src[j]): normalize(c)
                                  for j, c in enumerate(v) if c})
                for v in nullspace(mat, len(src))]

    # -- shift functor ----------------------------------------------------------

    def shift_vec(self, vec):
        """T(alpha') = -alpha'' (a=1) or +alpha'' (a=2), on enlarged vectors."""
        s = shift_functor_sign(self.a)
        return {(S.shifted(1), T.shifted(1), lab): s * c for (S, T, lab), c in vec.items()}

    def shift(self, x):
        """T on sum objects, enlarged vectors, twisted complexes and morphisms."""
        if isinstance(x, SumObject):
            return x.shifted(1)
        if isinstance(x, TwistedComplex):
            phi = {k: -c for k, c in self.shift_vec(x.phi).items()}
            return TwistedComplex(f"T({x.name})", x.obj.shifted(1), phi)
        if isinstance(x, TwMorphism):
            return TwMorphism(self.shift(x.source), self.shift(x.target), self.shift_vec(x.value))
        if isinstance(x, dict):
            return self.shift_vec(x)
        raise TypeError(f"cannot shift {type(x).__name__}")

    def check_shift_relation(self, vecs):
        """T b~_k(a_1..a_k) - (-1)^k b~_k(T a_1, ..., T a_k)."""
        k = len(vecs)
        lhs = self.shift_vec(self.b(k, vecs))
        rhs = self.b(k, [self.shift_vec(v) for v in vecs])
        return add_into(lhs, rhs, -parity_sign(k))

    def check_tw_shift_relation(self, objects, vecs):
        """Same identity for b^Tw over twisted complexes and their T images."""
        k = len(vecs)
        lhs = self.shift_vec(self.product(objects, vecs))
        rhs = self.product([self.shift(t) for t in objects], [self.shift_vec(v) for v in vecs])
        return add_into(lhs, rhs, -parity_sign(k))

    # -- units, cones, triangles ----------------------------------------------

    def unit(self, P):
        return enlarged_unit(self.base, self.a, P.obj)

    def mapping_cone(self, phi, name=None):
        """C(phi) = (T X + Y, [[-T Phi_X, phi'], [0, Phi_Y]]).

        ``phi`` is a closed TwMorphism of suspended degree -1.  phi' carries
        the same coefficients on the shifted source blocks, with the sign of T
        applied once.
        """
        X, Y = phi.source, phi.target
        sp = self.hom(X, Y)
        for k in phi.value:
            if sp.degree(k[2]) != -1:
                raise TwistedError("cone needs a morphism of (unsuspended) degree 0")
        if self.b1(X, Y, phi.value):
            raise TwistedError("cone needs a closed morphism")
        TX = self.shift(X)
        obj = TX.obj.direct_sum(Y.obj)
        n = len(X.obj)
        s = shift_functor_sign(self.a)
        entries = {}
        for (_, _, (i, j, lab)), c in TX.phi.items():
            entries[(obj, obj, (i, j, lab))] = c
        for (_, _, (i, j, lab)), c in phi.value.items():
            entries[(obj, obj, (i, n + j, lab))] = s * c
        for (_, _, (i, j, lab)), c in Y.phi.items():
            entries[(obj, obj, (n + i, n + j, lab))] = c
        return self.twisted(name or f"C({X.name}->{Y.name})", obj, entries)

    def cone_maps(self, phi, cone):
        """The canonical inclusion Y -> C(phi) and projection C(phi) -> T X."""
        X, Y = phi.source, phi.target
        TX = self.shift(X)
        n = len(X.obj)
        incl = enlarged_unit(self.base, self.a, Y.obj, target=cone.obj, offset=n)
        unit_tx = enlarged_unit(self.base, self.a, TX.obj)
        proj = {(cone.obj, TX.obj, (i, j, lab)): c for (_, _, (i, j, lab)), c in unit_tx.items()}
        if not incl or not proj:
            raise TwistedError("cone maps need strict units on the base category")
        return TwMorphism(Y, cone, incl), TwMorphism(cone, TX, proj), TX

    def triangle_check(self, phi, cone=None):
        """Both composites X -> Y -> C(phi) and Y -> C(phi) -> T X must be
        b^Tw_1-boundaries (zero classes in H^0)."""
        cone = cone or self.mapping_cone(phi)
        incl, proj, TX = self.cone_maps(phi, cone)
        X, Y = phi.source, phi.target
        report = TriangleReport(cone=cone)
        report.closed = {
            "phi": not self.b1(X, Y, phi.value),
            "inclusion": not self.b1(Y, cone, incl.value),
            "projection": not self.b1(cone, TX, proj.value),
        }
        first = self.b2(X, Y, cone, phi.value, incl.value)
        second = self.b2(Y, cone, TX, incl.value, proj.value)
        report.composites = {"X->Y->C": first, "Y->C->TX": second}
        report.homotopies = {
            "X->Y->C": self.is_boundary(X, cone, first),
            "Y->C->TX": self.is_boundary(Y, TX, second),
        }
        return report

    # -- H^0 and materialization -------------------------------------------

    def h0_category(self, objects):
        """Degree-0 cohomology (suspended degree -1) with m_2-induced composition.

        On suspended degree -1 inputs m_2 = -b_2, which fixes the sign of the
        composition table.
        """
        spaces, reps, projs = {}, {}, {}
        for P in objects:
            for Q in objects:
                hh = self.hom_hodge(P, Q)
                labels = [lab for lab in hh.small.labels if hh.small.degree(lab) == -1]
                if not labels:
                    continue
                spaces[(P.name, Q.name)] = GradedVectorSpace([(lab, 0) for lab in labels])
                for lab in labels:
                    reps[(P.name, Q.name, lab)] = {
                        (P.obj, Q.obj, t): c for t, c in hh.iota.columns[lab].items()}
                projs[(P.name, Q.name)] = hh.pi
        by_name = {t.name: t for t in objects}
        table = {}
        for ka, va in reps.items():
            for kb, vb in reps.items():
                if ka[1] != kb[0]:
                    continue
                P, Q, R = by_name[ka[0]], by_name[ka[1]], by_name[kb[1]]
                val = self.b2(P, Q, R, va, vb)
                pair = (P.name, R.name)
                if pair not in projs:
                    continue
                img = projs[pair]({k[2]: -c for k, c in val.items()})
                img = {(P.name, R.name, lab): c for lab, c in img.items()
                       if lab in spaces[pair]}
                if img:
                    table[(ka, kb)] = img
        return H0Category(
            objects=tuple(t.name for t in objects), spaces=spaces, representatives=reps,
            composition=MultilinearMap(2, 0, table), only_degree=0, projections=projs,
        )

    def materialize(self, objects, max_arity=None):
        """A finite A-infinity category on the given twisted complexes.

        Keys are renamed to ``(P.name, Q.name, label)`` so that distinct
        twisted complexes on the same sum object stay distinct.
        """
        K = max_arity or self.K
        names = [t.name for t in objects]
        if len(set(names)) != len(names):
            raise TwistedError("twisted complex names must be unique")
        homs = {(P.name, Q.name): self.hom(P, Q) for P in objects for Q in objects}
        keys = {}
        for P in objects:
            for Q in objects:
                for lab in self.hom(P, Q).labels:
                    keys.setdefault(P.name, []).append((Q, lab))
        prods = {}
        for k in range(1, K + 1):
            table = {}

            def rec(chain_objs, chain_labels):
                if len(chain_labels) == k:
                    vecs = [{(chain_objs[p].obj, chain_objs[p + 1].obj, lab): ONE}
                            for p, lab in enumerate(chain_labels)]
                    val = self.product(chain_objs, vecs)
                    if val:
                        P, R = chain_objs[0], chain_objs[-1]
                        chain = tuple((chain_objs[p].name, chain_objs[p + 1].name, lab)
                                      for p, lab in enumerate(chain_labels))
                        table[chain] = {(P.name, R.name, o[2]): c for o, c in val.items()}
                    return
                for Q, lab in keys.get(chain_objs[-1].name, ()):
                    rec(chain_objs + [Q], chain_labels + [lab])

            for P in objects:
                rec([P], [])
            prods[k] = MultilinearMap(k, 1, table)
        units = {}
        for P in objects:
            u = self.unit(P)
            if u:
                units[P.name] = {(P.name, P.name, key[2]): c for key, c in u.items()}
        return AInftyCategory(names, homs, prods, presentation=SUSPENDED,
                              arity_bound=K, units=units, convention=self.a)


@dataclass
class H0Category(CohomologyCategory):
    projections: dict = field(default_factory=dict)

    def class_of(self, P, Q, vec):
        """Class in H^0(P, Q) of a closed vector of enlarged keys."""
        pi = self.projections.get((P.name, Q.name))
        if pi is None:
            return {}
        img = pi({k[2]: c for k, c in vec.items()})
        space = self.spaces[(P.name, Q.name)]
        return {(P.name, Q.name, lab): c for lab, c in img.items() if lab in space}


@dataclass
class TriangleReport:
    cone: TwistedComplex
    closed: dict = field(default_factory=dict)
    composites: dict = field(default_factory=dict)
    homotopies: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.closed.values()) and all(
            h is not None for h in self.homotopies.values())

    def split(self):
        """Both composites literally zero."""
        return not any(self.composites.values())
