"""Reduced Verma characters with insertions: closed forms, recursion and the ODE.

Run with ``python demos/05_characters.py``.
"""

# %% Closed forms by reconstruction from the series
from shortstar import charlab, traces
from shortstar.scalars import render
from shortstar.sl2quant import symbolic_algebra

alg = symbolic_algebra()
for k in range(4):
    a = alg.h ** k
    print(f"Ch(h^{k}) =", render(charlab.character_rational(a)))

# %% The recursion gives the same functions
a = alg.f * alg.e * alg.h + alg.h ** 3
print("recursion agrees:", charlab.character_by_recursion(a) == charlab.character_rational(a))
print("ODE holds:", bool(charlab.ode_check(a)))

# %% At t = 1 the normalized character is the Verma trace
print("t=1:", render(charlab.specialize_t1(a)))
print("T  :", render(traces.verma_trace(a)))
