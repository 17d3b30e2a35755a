"""Transfer commutes with adding shifts, in both sign conventions.

For one corpus instance, compare two routes to an A-infinity category on
shifted objects: enlarge first and then transfer along the induced SDR, or
transfer first and then enlarge the model.  Matching conventions agree
exactly; crossing them (enlarging the model with the other convention) does
not.
"""

from ainfty import generate, hpt_square_check


def main():
    inst = next(i for i in generate(seed=2026, size=25) if i.has_m3)
    for a in (1, 2):
        rep = hpt_square_check(inst.category, inst.sdr, a, 4)
        print(f"a={a}: square commutes through arity 4: {rep.ok}")
    cross = hpt_square_check(inst.category, inst.sdr, 1, 4, cross=True)
    print(f"crossed conventions commute: {cross.ok}")
    if not cross.ok:
        _, _, (arity, chain, path1, path2) = cross.first()
        print(f"  first disagreement at arity {arity} on {[str(k[0]) for k in chain]}:")
        print(f"    transfer then enlarge, a=1: {path1}")
        print(f"    enlarge then transfer, a=2: {path2}")


if __name__ == "__main__":
    main()
