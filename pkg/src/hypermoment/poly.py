"""Dense univariate polynomials as coefficient lists, lowest degree first."""

from .core import S0, Scalar


def trim(p):
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p or [S0]


def poly_add(p, q):
    n = max(len(p), len(q))
    return trim(
        (p[i] if i < len(p) else S0) + (q[i] if i < len(q) else S0) for i in range(n)
    )


def poly_scale(p, s):
    return trim(c * s for c in p)


def poly_mul(p, q):
    out = [S0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return trim(out)


def poly_derivative(p, k=1):
    """k-th derivative."""
    p = list(p)
    for _ in range(k):
        p = [p[i] * i for i in range(1, len(p))] or [S0]
    return trim(p)


def poly_eval(p, x):
    """Horner evaluation; ``x`` may be a Scalar or anything closed under * and +."""
    if isinstance(x, (int, str)) or hasattr(x, "denominator"):
        x = Scalar.coerce(x)
    acc = S0
    for c in reversed(p):
        acc = acc * x + c
    return acc
