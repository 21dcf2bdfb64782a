"""Twisted traces on the central quotients D_lambda of U(sl2).

Run with ``python demos/02_sl2_traces.py``.
"""

# %% Closed-form values
from fractions import Fraction

from shortstar import traces
from shortstar.scalars import render
from shortstar.sl2quant import algebra, symbolic_algebra

alg = symbolic_algebra()
e, f, h = alg.e, alg.f, alg.h
print("Verma family   T(h)   =", render(traces.verma_trace(h)))
print("Verma family   T(h^2) =", render(traces.verma_trace(h * h)))
print("untwisted      T(h^2) =", render(traces.untwisted_trace(h * h)))
print("Jordan (c=1)   T(fe)  =", render(traces.jordan_trace(f * e, 1)))
print("at lambda=-1   T'(h)  =", render(traces.derivative_trace(algebra(-1).h)))

# %% Each family satisfies T(uv) = T(v g(u)) for its own twist g
for name, T in [
    ("verma", traces.verma_functional(alg, cap=8)),
    ("untwisted", traces.untwisted_functional(alg, 8)),
    ("jordan", traces.jordan_functional(alg, 1, 8)),
]:
    report = traces.verify_twisted_trace(T)
    print(f"{name:10} law holds: {report.passed} on {report.checked} pairs")

# %% The truncated space of g_w-twisted traces is two-dimensional
probe = traces.trace_space_probe(Fraction(1, 3), Fraction(1, 5), 8)
print("dimension:", probe.dimension, "spanned by the two Verma traces:", probe.spanned)
