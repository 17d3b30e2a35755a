"""Transfer a random DG category to its cohomology and look at m_3.

Draws a seeded corpus, picks the first instance whose transferred model has a
nonzero m_3, and prints the model's products together with the checks that
make the result trustworthy: the A-infinity relations up to arity 5 and the
functor relations for the transferred quasi-isomorphism.
"""

from ainfty import check_functor, check_relations, generate
from ainfty.graded import format_scalar


def show(vec):
    return " + ".join(f"{format_scalar(c)}*{k[2]}" for k, c in sorted(vec.items(), key=repr)) or "0"


def main():
    corpus = generate(seed=2026, size=25)
    inst = next(i for i in corpus if i.has_m3)
    print(f"{inst.name}: complexes {[X.dims for X in inst.complexes]}")

    D = inst.model
    print(f"model: {D}")
    print(f"relations through arity 5: {check_relations(D, 5).ok}")
    print(f"transfer functor through arity 5: {check_functor(inst.functor, 5).ok}")
    print(f"m_1 vanishes: {not D.product(1).table}")

    m3 = D.product(3).table
    print(f"m_3 has {len(m3)} nonzero entries; the first few:")
    for chain, vec in sorted(m3.items(), key=repr)[:5]:
        print(f"  b_3{tuple(k[2] for k in chain)} = {show(vec)}")


if __name__ == "__main__":
    main()
