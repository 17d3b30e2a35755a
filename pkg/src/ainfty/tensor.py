"""Sparse tensor-composition kernels shared by relation checks and transfer.

Tables map chains of basis keys to vectors.  Only chains reachable from
nonzero table entries are ever visited, so a relation evaluated this way
covers every composable basis chain: chains that never appear have residual
zero.
"""

from .graded import add_into, clean_table


def insert_sum(outer, inner, sign, acc=None):
    """Accumulate  sum_j sign(j, prefix) * outer(prefix, inner(middle), suffix).

    ``outer`` and ``inner`` are MultilinearMaps whose keys live in the same
    category (or ``outer`` takes inner's outputs as inputs).  ``sign`` gets
    the insertion position j and the prefix chain a_1..a_j.
    """
    if acc is None:
        acc = {}
    if not outer.table or not inner.table:
        return acc
    index = outer.by_position()
    k = outer.arity
    for middle, ivec in inner.table.items():
        for j in range(k):
            for key, x in ivec.items():
                hits = index.get((j, key))
                if not hits:
                    continue
                for ochain, ovec in hits:
                    prefix = ochain[:j]
                    s = sign(j, prefix)
                    full = prefix + middle + ochain[j + 1:]
                    add_into(acc.setdefault(full, {}), ovec, s * x)
    return acc


def _entries_by_start(table):
    idx = {}
    for chain, vec in table.items():
        idx.setdefault(chain[0][0], []).append((chain, vec))
    return idx


def compose_sum(outer, inner, n, min_arity=1, acc=None):
    """Accumulate sum over j >= min_arity, k_1+..+k_j = n of
    outer_j(inner_{k_1} (x) ... (x) inner_{k_j}), keyed by the concatenated
    source chain of length n.

    ``outer`` maps arity -> MultilinearMap, ``inner`` maps arity -> table.
    No Koszul signs are introduced: the inner maps are taken to be of
    degree zero (suspended functor components).
    """
    if acc is None:
        acc = {}
    starts = {k: _entries_by_start(t) for k, t in inner.items() if 1 <= k <= n and t}
    everything = {k: [e for lst in idx.values() for e in lst] for k, idx in starts.items()}

    for j in range(min_arity, n + 1):
        m = outer.get(j)
        if m is None or not m.table:
            continue

        def rec(remaining, pieces, obj, states, chain):
            if pieces == 1:
                ks = (remaining,)
            else:
                ks = range(1, remaining - pieces + 2)
            for k in ks:
                if k not in starts:
                    continue
                entries = everything[k] if obj is None else starts[k].get(obj, ())
                for c, v in entries:
                    st = m.step(states, v)
                    if not st:
                        continue
                    if pieces == 1:
                        add_into(acc.setdefault(chain + c, {}), m.finish(st))
                    else:
                        rec(remaining - k, pieces - 1, c[-1][1], st, chain + c)

        rec(n, j, None, m.start(), ())
    return acc


def apply_linear(table, linear):
    """Apply a per-key linear map (key -> vector function) to every output."""
    out = {}
    for chain, vec in table.items():
        res = {}
        for key, x in vec.items():
            add_into(res, linear(key), x)
        if res:
            out[chain] = res
    return out


def finalize(table):
    return clean_table(table)
