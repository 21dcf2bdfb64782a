"""Moyal products on a symplectic plane and the torus-twisted trace on the Weyl algebra.

Run with ``python demos/01_moyal_and_weyl.py``.
"""

# %% Moyal products of the generators
from fractions import Fraction

from shortstar import bridge
from shortstar.cones import GradedElement, symplectic_cone
from shortstar.scalars import render
from shortstar.weyl import WeylTrace, moyal_product


def show(M):
    return "[" + "; ".join(" ".join(render(v) for v in row) for row in M) + "]"

cone = symplectic_cone(1)
x, y = GradedElement.generator(cone, "x"), GradedElement.generator(cone, "y")
for B in ([[0, 0], [0, 0]], [[1, 0], [0, -1]]):
    print("B =", show(B))
    for a, b in ((x, y), (y, x), (x * x, y * y)):
        comps = moyal_product(a, b, B)
        print(f"  {a} * {b} =", " + ".join(f"[{c}]" for c in comps if c.terms))

# %% The B = 0 product is even, a generic B is not
for B in ([[0, 0], [0, 0]], [[Fraction(1, 3), 2], [Fraction(-1, 2), Fraction(-1, 3)]]):
    table = bridge.moyal_table(B, 4)
    print("B =", show(B), "short:", bool(bridge.check_short(table)), "even:", bool(bridge.check_even(table)))

# %% A trace on the Weyl algebra builds a quantization map
T = WeylTrace(-1, 4)
phi = bridge.build_quantization_map(T, bridge.WeylBackend(1), cap=2)
print("phi(xy) =", phi.images[(1, 1)].terms)

# %% The product it induces is a Moyal product, parameter from the Cayley transform
q = Fraction(1, 3)
phi = bridge.build_quantization_map(WeylTrace(q, 12), bridge.WeylBackend(1), cap=6)
table = bridge.star_table(phi)
B = bridge.moyal_parameter(q)
print("q =", q, "B =", show(B), "match:", bool(bridge.compare_tables(table, bridge.moyal_table(B, 6))))
