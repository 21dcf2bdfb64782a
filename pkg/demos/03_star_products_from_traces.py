"""From a twisted trace to a short star-product on the sl2 cone, and back.

Run with ``python demos/03_star_products_from_traces.py``.
"""

# %% Build the quantization map from the untwisted trace
from fractions import Fraction

from shortstar import bridge, traces
from shortstar.sl2quant import algebra, symbolic_algebra

alg = symbolic_algebra()
phi = bridge.build_quantization_map(traces.untwisted_functional(alg, 16), cap=8)
print("phi(z)  =", phi.images[(0, 0, 1)])
print("phi(xy) =", phi.images[(1, 1, 0)])

# %% The star-product table and its properties
table = bridge.star_table(phi)
x, y = (1, 0, 0), (0, 1, 0)
print("x * y components:", table.components(x, y))
print("short:", bool(bridge.check_short(table)), "even:", bool(bridge.check_even(table)),
      "bracket:", bool(bridge.check_bracket(table)))

# %% The trace is recovered as the constant term, the twist from the Gram matrices
print("CT recovery:", bool(bridge.ct_recovery(phi)), "twist recovery:", bool(bridge.recover_twist(phi)))

# %% A Verma trace gives a short product that is not even
num = algebra(Fraction(1, 3))
phi_v = bridge.build_quantization_map(traces.verma_functional(num, Fraction(1, 5), 12), cap=6)
odd = bridge.check_even(bridge.star_table(phi_v))
print("Verma product even:", odd.passed, "witness:", odd.witness)

# %% Degenerations of the even product: P_m(lambda)
for m in (1, 2, 3):
    print(f"P_{m} =", bridge.pm_factor(m), " zeros:", sorted(bridge.expected_pm_roots(m)))
