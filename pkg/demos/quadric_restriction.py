"""Restrict a spatial system to the quadric through its nine points.

A smooth quadric surface is a product of two projective lines, so
curves on it carry a bidegree (a,b).  Restriction sends degree-d
surfaces to bidegree (d,d) curves, the first point (cut out by its own
multiplicity) becomes a distinguished third coordinate, and projecting
from that point lands back in the plane.  The planar images decide
what the spatial systems cut on the quadric.
"""

from __future__ import annotations

from fatpoints import (
    effective_dim,
    format_quadric_system,
    format_system,
    parse_system,
    restrict_to_quadric,
    to_planar,
)

SEED = 77


def main() -> None:
    for literal in ["L3(9,6,4^8)", "L3(7,5,3^8)", "L3(5,4,2^8)"]:
        syst = parse_system(literal)
        on_quadric = restrict_to_quadric(syst)
        image = to_planar(on_quadric)
        h0 = effective_dim(image, seed=SEED).h0
        print(
            f"{literal:<14} -> {format_quadric_system(on_quadric):<14}"
            f" -> {format_system(image):<16} h0 = {h0}"
        )


if __name__ == "__main__":
    main()
