"""Measure actual dimensions by exact rank over a large prime field.

Conditions at random points of GF(p)^n are as independent as they can
be, so the rank of the condition matrix computed exactly mod p gives
the true dimension with overwhelming probability, and errors can only
report a system as bigger than it is, never smaller.  The interesting
finding: L3(9,6,4^8) has four projective dimensions where counting
conditions predicts three, because every member contains the quadric
through the nine points.
"""

from __future__ import annotations

from fatpoints import effective_dim, fixed_component_test, parse_system, residual

SEED = 77


def main() -> None:
    print("system              monomials conditions rank  h0  vdim edim special")
    for literal in [
        "L2(12,3^2,4^8)",
        "L2(9,2^2,3^8)",
        "L2(6,1^2,2^8)",
        "L3(9,6,4^8)",
        "L3(7,5,3^8)",
        "L3(5,4,2^8)",
        "L3(3,3,1^8)",
        "L3(4,2^9)",
    ]:
        rep = effective_dim(parse_system(literal), seed=SEED)
        print(
            f"{literal:<18} {rep.monomials:>9} {rep.conditions:>10} {rep.rank:>4}"
            f" {rep.h0:>3} {rep.vdim:>5} {rep.edim_actual:>4}"
            f"  {'yes' if rep.special else 'no'}"
        )

    print()
    big = parse_system("L3(9,6,4^8)")
    quadric = parse_system("L3(2,1,1^8)")
    fixed = fixed_component_test(big, quadric, seed=SEED)
    print(f"quadric through the nine points fixed in L3(9,6,4^8): {fixed}")
    rep = effective_dim(residual(big, quadric), seed=SEED)
    print(f"after peeling it once: h0(L3(7,5,3^8)) = {rep.h0}")


if __name__ == "__main__":
    main()
