"""Signatures of the Hermitian form CT(a * rho(b)) for the even sl2 product.

Run with ``python demos/04_unitarity.py``.
"""

# %% Leading principal minors per degree
from fractions import Fraction

from shortstar import bridge
from shortstar.scalars import render

for form in ("split", "compact"):
    for lam in (Fraction(-1, 2), Fraction(1, 2)):
        report = bridge.hermitian_report(form, lam, 6)
        chi = lam * (lam + 2) / 2
        print(f"{form:8} lambda={lam} chi={chi}: positive definite={report.positive_definite}"
              f" first failure={report.first_failure}")
        for deg in report.degrees[:3]:
            print(f"    degree {deg.degree}:", ", ".join(render(m) for m in deg.minors))

# %% Under the split form every weight vector is isotropic
report = bridge.hermitian_report("split", Fraction(-1, 2), 2)
print("split degree-2 diagonal minors start at", report.degrees[1].minors[0])
