"""Tour of the vector-lattice layer: ordered elements on a weighted sample space.

An element is a finite coordinate vector over atoms that carry strictly
positive probability weights.  Order, join, meet, absolute value, and the
componentwise product all act coordinatewise, and the classical lattice
identities hold exactly in floating point (no tolerance needed) because
each side rounds the same real number the same way.
"""

import numpy as np

from rieszmart import (
    SampleSpace,
    Tolerance,
    leq_with_tolerance,
    multiply,
    power,
    sup_many,
)


def banner(text: str) -> None:
    print(f"\n--- {text} ---")


def main() -> None:
    banner("a weighted sample space and some elements")
    space = SampleSpace([0.1, 0.2, 0.3, 0.4])
    f = space.element([3.0, -1.0, 0.5, 2.0])
    g = space.element([1.0, 4.0, -0.5, 2.0])
    print(f"space weights : {space.weights}")
    print(f"f             : {f.coords}")
    print(f"g             : {g.coords}")
    print(f"f v g  (join) : {f.sup(g).coords}")
    print(f"f ^ g  (meet) : {f.inf(g).coords}")

    banner("exact lattice identities")
    lhs = f.sup(g) + f.inf(g)
    rhs = f + g
    print(f"(f v g) + (f ^ g) == f + g  exactly: {lhs.equals(rhs)}")
    decomposed = f.pos_part() - f.neg_part()
    print(f"f == f+ - f-                exactly: {decomposed.equals(f)}")
    print(f"|f| == f+ + f-              exactly: {(f.pos_part() + f.neg_part()).equals(f.abs())}")
    shift = space.element([0.25, 0.25, 0.25, 0.25])
    translated = (f + shift).sup(g + shift)
    print(f"(f+h) v (g+h) == (f v g)+h  exactly: {translated.equals(f.sup(g) + shift)}")

    banner("the componentwise product and fractional powers")
    prod = multiply(f.abs(), g.abs())
    print(f"|f| * |g|            : {prod.coords}")
    squares = space.element([4.0, 9.0, 16.0, 25.0])
    print(f"sqrt of {squares.coords}: {power(squares, 0.5).coords}")
    e = space.unit()
    print(f"unit is idempotent   : {multiply(e, e).equals(e)}")

    banner("order comparison with explicit margins")
    tol = Tolerance(abs=1e-12, rel=1e-9)
    check = leq_with_tolerance(f.inf(g), f, tol)
    print(f"f ^ g <= f : ok={check.ok}, worst margin={check.margin:.3e} at atom {check.atom}")
    check = leq_with_tolerance(f, f.inf(g), tol)
    print(f"f <= f ^ g : ok={check.ok}, worst margin={check.margin:.3e} at atom {check.atom}")

    banner("joins of whole families")
    family = [space.element(np.roll([5.0, 1.0, 1.0, 1.0], k)) for k in range(4)]
    print(f"sup of 4 rotations of (5,1,1,1): {sup_many(family).coords}")


if __name__ == "__main__":
    main()
