"""Single-coefficient sign mutations used by several test modules."""

from ainfty.graded import MultilinearMap


def flip_product_sign(C, k, rng):
    """C with one randomly chosen entry of the arity-k table negated."""
    m = C.product(k)
    chains = sorted(m.table, key=C.chain_order)
    chain = rng.choice(chains)
    table = dict(m.table)
    table[chain] = {o: -c for o, c in table[chain].items()}
    prods = dict(C.products)
    prods[k] = MultilinearMap(k, m.degree, table)
    return C.replace(products=prods), chain


def flip_functor_sign(F, k, rng):
    from ainfty.functors import AInftyFunctor

    m = F.component(k)
    chain = rng.choice(sorted(m.table, key=F.source.chain_order))
    comps = {j: dict(c.table) for j, c in F.components.items()}
    comps[k][chain] = {o: -c for o, c in comps[k][chain].items()}
    return AInftyFunctor(F.source, F.target, F.object_map, comps, F.arity_bound), chain
