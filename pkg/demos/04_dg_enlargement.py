"""The DG category of complexes already contains its own shifts.

Shifting complexes inside the DG category and enlarging the category by
formal shifts give the same A-infinity structure exactly when the enlargement
uses convention 2.  Convention 1 differs by a sign first visible on m_2.
"""

from ainfty import check_dg_equals_tilde2, demo_complexes


def main():
    cxs = demo_complexes()
    for a in (2, 1):
        cmp = check_dg_equals_tilde2(cxs, (-2, -1, 0, 1, 2), a)
        print(cmp.summary())
        if not cmp.equal:
            arity, shifts, chain, enlarged, dg = cmp.first()
            print(f"  enlarged {enlarged}")
            print(f"  DG       {dg}")


if __name__ == "__main__":
    main()
