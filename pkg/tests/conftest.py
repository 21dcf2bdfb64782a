import sympy as sp

from shortstar.scalars import RatFunc, render

l, w, q, t = sp.symbols("l w q t")


def to_sympy(x):
    """Independent view of an exact scalar for oracle comparisons."""
    if isinstance(x, RatFunc):
        return sp.sympify(render(x).replace("^", "**"), locals={"l": l, "w": w, "q": q, "t": t})
    return sp.Rational(x.numerator, x.denominator) if hasattr(x, "numerator") else sp.sympify(x)


def same(x, expr):
    return sp.simplify(to_sympy(x) - expr) == 0


def module_matrices(lam, size):
    """e, f, h on span(v_0..v_(size-1)) with h v_k = (lam - 2k) v_k, f v_k = v_(k+1), e v_k = k(lam - k + 1) v_(k-1)."""
    E, F, H = sp.zeros(size), sp.zeros(size), sp.zeros(size)
    for k in range(size):
        H[k, k] = lam - 2 * k
        if k + 1 < size:
            F[k + 1, k] = 1
        if k > 0:
            E[k - 1, k] = k * (lam - k + 1)
    return E, F, H


def represent(u, mats):
    E, F, H = mats
    size = E.shape[0]
    out = sp.zeros(size)
    for (a, b, c), v in u.terms.items():
        out += to_sympy(v) * F**a * H**b * E**c
    return out.applyfunc(sp.expand)
