"""Count dimensions of linear systems with fat base points.

A system literal like L3(9,6,4^8) means: surfaces of degree 9 in
projective 3-space, vanishing to order 6 at one general point and to
order 4 at eight more.  Each order-m point imposes C(m+n-1, n) linear
conditions on the coefficients, so naive counting predicts the virtual
dimension and its clamp to -1, the expected dimension.
"""

from __future__ import annotations

from fatpoints import edim_expected, format_system, parse_system, residual, vdim

SYSTEMS = [
    "L3(9,6,4^8)",
    "L3(7,5,3^8)",
    "L3(5,4,2^8)",
    "L3(3,3,1^8)",
    "L3(4,2^9)",
    "L2(12,3^2,4^8)",
    "L2(9,2^2,3^8)",
    "L2(6,1^2,2^8)",
]


def main() -> None:
    print("system              vdim  edim")
    for literal in SYSTEMS:
        syst = parse_system(literal)
        print(f"{literal:<18} {vdim(syst):>5} {edim_expected(syst):>5}")

    print()
    big = parse_system("L3(9,6,4^8)")
    quadric = parse_system("L3(2,1,1^8)")
    peeled = residual(big, quadric)
    print(f"residual of {format_system(big)} minus {format_system(quadric)}:")
    print(f"  {format_system(peeled)}  (vdim {vdim(peeled)})")


if __name__ == "__main__":
    main()
