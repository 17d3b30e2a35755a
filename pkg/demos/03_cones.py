"""Mapping cones of closed morphisms in one-sided twisted complexes.

Every closed degree-0 morphism between plain objects of a small DG category
has a cone that satisfies the Maurer-Cartan equation, and the resulting
triangle X -> Y -> Cone -> T X has composites that are boundaries.
"""

from ainfty import Tw, TwMorphism, build_dg_category, demo_complexes


def main():
    C = build_dg_category(demo_complexes())
    for a in (1, 2):
        tw = Tw(C, a)
        plain = [tw.plain(x, r) for x in C.objects for r in (0, 1)]
        shown = 0
        for P in plain:
            for Q in plain:
                for phi in tw.closed_morphisms(P, Q):
                    if not phi.value or shown >= 3:
                        continue
                    cone = tw.mapping_cone(phi)
                    tri = tw.triangle_check(phi, cone)
                    print(f"a={a} {cone.name}: MC {tw.check_mc(cone).ok}, "
                          f"T(cone) MC {tw.check_mc(tw.shift(cone)).ok}, triangle {tri.ok}")
                    shown += 1


if __name__ == "__main__":
    main()
