"""Exact scalars, sparse vectors, graded spaces and (multi)linear maps.

Coefficients are exact rationals.  Stored coefficients are normalized by
:func:`normalize`: integral values are kept as ``int`` (much faster than
``Fraction`` and still exact), the rest as ``Fraction``.  A basis element of a
hom space in a category is addressed by a *key* ``(source, target, label)``;
vectors are plain dicts ``{key: scalar}`` holding only nonzero entries.
"""

from fractions import Fraction

Scalar = Fraction
ZERO = 0
ONE = 1


def normalize(x):
    """Exact scalar as ``int`` when integral, otherwise as ``Fraction``."""
    if type(x) is int:
        return x
    if isinstance(x, float):
        raise TypeError("floating-point coefficient in exact data")
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def parse_scalar(text):
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_scalar(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# sparse vectors


def add_into(acc, vec, scale=ONE):
    """acc += scale * vec, in place; zero entries are removed."""
    if not scale:
        return acc
    for k, x in vec.items():
        y = acc.get(k, ZERO) + scale * x
        if y:
            if type(y) is Fraction and y.denominator == 1:
                y = y.numerator
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def scaled(vec, scale):
    if not scale:
        return {}
    return {k: scale * x for k, x in vec.items()}


def vec_sum(*vecs):
    out = {}
    for v in vecs:
        add_into(out, v)
    return out


def vec_sub(a, b):
    return add_into(dict(a), b, -ONE)


def clean(vec):
    return {k: normalize(x) for k, x in vec.items() if x}


def clean_table(table):
    """Drop zero coefficients and empty entries from a chain -> vector table."""
    out = {}
    for chain, vec in table.items():
        v = clean(vec)
        if v:
            out[chain] = v
    return out


# ---------------------------------------------------------------------------
# graded vector spaces


class GradedVectorSpace:
    """Finite-dimensional Z-graded space with an ordered, labelled basis.

    ``basis`` is a sequence of ``(label, degree)`` pairs.  Labels must be
    hashable and unique.  The basis is kept grouped by degree (stable within a
    degree), so ``{degree: [labels]}`` describes it completely.  The degree
    window defaults to the hull of the degrees present.
    """

    __slots__ = ("labels", "_deg", "_pos", "window")

    def __init__(self, basis=(), window=None):
        basis = sorted(((lab, int(d)) for lab, d in basis), key=lambda t: t[1])
        self.labels = tuple(lab for lab, _ in basis)
        self._deg = dict(basis)
        if len(self._deg) != len(self.labels):
            raise ValueError("duplicate basis labels")
        self._pos = {lab: i for i, lab in enumerate(self.labels)}
        degs = [d for _, d in basis]
        if window is None:
            window = (min(degs), max(degs)) if degs else (0, 0)
        lo, hi = window
        if any(d < lo or d > hi for d in degs):
            raise ValueError(f"basis degree outside window {window}")
        self.window = (int(lo), int(hi))

    @classmethod
    def from_dims(cls, dims, prefix="e"):
        """Space with ``dims[d]`` basis vectors labelled ``(prefix, d, i)``."""
        return cls([((prefix, d, i), d) for d in sorted(dims) for i in range(dims[d])])

    def __len__(self):
        return len(self.labels)

    @property
    def dim(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self._deg

    def __iter__(self):
        return iter(self.labels)

    def __eq__(self, other):
        return (
            isinstance(other, GradedVectorSpace)
            and self.labels == other.labels
            and self._deg == other._deg
        )

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"GradedVectorSpace(dims={self.dims})"

    def degree(self, label):
        return self._deg[label]

    def index(self, label):
        return self._pos[label]

    @property
    def dims(self):
        out = {}
        for d in self._deg.values():
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def basis(self, degree):
        return tuple(lab for lab in self.labels if self._deg[lab] == degree)

    def degrees(self):
        return sorted(set(self._deg.values()))

    def items(self):
        return ((lab, self._deg[lab]) for lab in self.labels)

    def shifted(self, n):
        """Same basis with every degree moved by ``n``."""
        lo, hi = self.window
        return GradedVectorSpace(
            [(lab, d + n) for lab, d in self.items()], window=(lo + n, hi + n)
        )


EMPTY_SPACE = GradedVectorSpace()


# ---------------------------------------------------------------------------
# homogeneous linear maps


class GradedMap:
    """Homogeneous linear map between two graded spaces, stored by columns.

    ``columns[src_label] = {tgt_label: coeff}``.  :meth:`block` gives the dense
    matrix from one source degree.
    """

    def __init__(self, source, target, degree, columns=None):
        self.source = source
        self.target = target
        self.degree = int(degree)
        cols = {}
        for s, col in (columns or {}).items():
            c = clean(col)
            if not c:
                continue
            if s not in source:
                raise KeyError(f"unknown source label {s!r}")
            for t in c:
                if t not in target:
                    raise KeyError(f"unknown target label {t!r}")
                if target.degree(t) != source.degree(s) + self.degree:
                    raise ValueError(
                        f"map of degree {self.degree} sends {s!r} to wrong degree"
                    )
            cols[s] = c
        self.columns = cols

    @classmethod
    def identity(cls, space):
        return cls(space, space, 0, {lab: {lab: ONE} for lab in space})

    @classmethod
    def zero(cls, source, target, degree):
        return cls(source, target, degree, {})

    @classmethod
    def from_blocks(cls, source, target, degree, blocks):
        """Build from dense matrices ``blocks[d]`` of shape dim_t(d+deg) x dim_s(d)."""
        cols = {}
        for d, mat in blocks.items():
            src = source.basis(d)
            tgt = target.basis(d + degree)
            for j, s in enumerate(src):
                col = {t: normalize(mat[i][j]) for i, t in enumerate(tgt) if mat[i][j]}
                if col:
                    cols[s] = col
        return cls(source, target, degree, cols)

    def __call__(self, vec):
        out = {}
        for s, x in vec.items():
            col = self.columns.get(s)
            if col:
                add_into(out, col, x)
        return out

    def block(self, degree):
        src = self.source.basis(degree)
        tgt = self.target.basis(degree + self.degree)
        rows = {t: i for i, t in enumerate(tgt)}
        mat = [[ZERO] * len(src) for _ in tgt]
        for j, s in enumerate(src):
            for t, x in self.columns.get(s, {}).items():
                mat[rows[t]][j] = x
        return mat

    def then(self, other):
        """Diagrammatic composite: apply ``self`` first, then ``other``."""
        cols = {s: other(col) for s, col in self.columns.items()}
        return GradedMap(self.source, other.target, self.degree + other.degree, cols)

    def __add__(self, other):
        cols = {s: dict(c) for s, c in self.columns.items()}
        for s, c in other.columns.items():
            add_into(cols.setdefault(s, {}), c)
        return GradedMap(self.source, self.target, self.degree, cols)

    def __neg__(self):
        return self.scaled(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, x):
        return GradedMap(
            self.source, self.target, self.degree,
            {s: scaled(c, x) for s, c in self.columns.items()},
        )

    def is_zero(self):
        return not self.columns

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and self.degree == other.degree
            and self.source == other.source
            and self.target == other.target
            and self.columns == other.columns
        )

    def __repr__(self):
        return f"GradedMap(degree={self.degree}, nnz={sum(map(len, self.columns.values()))})"


# ---------------------------------------------------------------------------
# multilinear maps


class MultilinearMap:
    """Sparse multilinear map given on chains of basis keys.

    ``table[(k1, ..., kn)] = {out_key: coeff}``.  Evaluation on arbitrary
    vectors goes through a prefix trie so that chains absent from the table are
    pruned early.  Instances are treated as immutable.
    """

    def __init__(self, arity, degree, table=None):
        if arity < 1:
            raise ValueError("arity must be positive")
        self.arity = int(arity)
        self.degree = int(degree)
        table = clean_table(table or {})
        for chain in table:
            if len(chain) != self.arity:
                raise ValueError(f"chain {chain!r} has wrong length for arity {arity}")
        self.table = table
        self._trie = None
        self._by_position = None
        self._by_start = None

    def __repr__(self):
        return f"MultilinearMap(arity={self.arity}, degree={self.degree}, entries={len(self.table)})"

    def __bool__(self):
        return bool(self.table)

    def __eq__(self, other):
        return (
            isinstance(other, MultilinearMap)
            and self.arity == other.arity
            and self.degree == other.degree
            and self.table == other.table
        )

    # -- indices ---------------------------------------------------------

    @property
    def trie(self):
        if self._trie is None:
            root = {}
            for chain, vec in self.table.items():
                node = root
                for key in chain[:-1]:
                    node = node.setdefault(key, {})
                node[chain[-1]] = vec
            self._trie = root
        return self._trie

    def by_position(self):
        """Map ``(position, key) -> [(chain, vec), ...]``."""
        if self._by_position is None:
            idx = {}
            for chain, vec in self.table.items():
                for j, key in enumerate(chain):
                    idx.setdefault((j, key), []).append((chain, vec))
            self._by_position = idx
        return self._by_position

    def by_start(self):
        """Map ``start object -> [(chain, vec), ...]``."""
        if self._by_start is None:
            idx = {}
            for chain, vec in self.table.items():
                idx.setdefault(chain[0][0], []).append((chain, vec))
            self._by_start = idx
        return self._by_start

    # -- evaluation ------------------------------------------------------

    def start(self):
        return [(self.trie, ONE)]

    @staticmethod
    def step(states, vec):
        """Advance partial evaluations by one more input vector."""
        nxt = {}
        for node, c in states:
            for key, x in vec.items():
                child = node.get(key)
                if child is None:
                    continue
                slot = nxt.get(id(child))
                if slot is None:
                    nxt[id(child)] = [child, c * x]
                else:
                    slot[1] += c * x
        return [(n, c) for n, c in nxt.values() if c]

    @staticmethod
    def finish(states):
        out = {}
        for leaf, c in states:
            add_into(out, leaf, c)
        return out

    def __call__(self, *vecs):
        if len(vecs) != self.arity:
            raise ValueError(f"expected {self.arity} inputs, got {len(vecs)}")
        states = self.start()
        for v in vecs:
            states = self.step(states, v)
            if not states:
                return {}
        return self.finish(states)

    def scaled(self, x):
        return MultilinearMap(
            self.arity, self.degree, {c: scaled(v, x) for c, v in self.table.items()}
        )


def eval_multilinear(m, chain):
    """Evaluate ``m`` on a chain of vectors (each a ``{key: coeff}`` dict)."""
    return m(*chain)


def table_diff(a, b):
    """Entries where two chain tables differ, as ``chain -> a - b``."""
    out = {}
    for chain in set(a) | set(b):
        d = vec_sub(a.get(chain, {}), b.get(chain, {}))
        if d:
            out[chain] = d
    return out


