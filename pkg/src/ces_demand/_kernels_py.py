"""Pure-Python norm kernels (fallback when the compiled extension is absent).

Operation-for-operation mirror of ``_kernels_cy``: identical summation order,
rescaling rules and saturation thresholds, so both backends return
bit-identical values for the same inputs.  Inputs are 1-D float64 arrays (or
plain sequences of floats); entries must be strictly positive and finite,
which the calling layer guarantees.
"""

import math

NAME = "python"

# exp() overflows IEEE doubles just above 709.78; saturate with a margin.
_EXP_MAX = 709.0
# beyond this |r * ln x| a plain power sum risks overflow; rescale first
_RESCALE_AT = 600.0


def _seq(x):
    return x.tolist() if hasattr(x, "tolist") else x


def norm_min(x):
    return min(_seq(x))


def norm_max(x):
    return max(_seq(x))


def dot(x, y):
    xs = _seq(x)
    ys = _seq(y)
    total = 0.0
    for i in range(len(xs)):
        total += xs[i] * ys[i]
    return total


def norm_finite(x, r):
    """(sum_i x_i^r)^(1/r), rescaled by the extremal entry when a plain
    power sum would leave the double range.  Saturates to inf rather than
    raising when the true value itself exceeds the range."""
    xs = _seq(x)
    n = len(xs)
    if n == 1:
        return xs[0]
    mn = min(xs)
    mx = max(xs)
    scale = max(abs(math.log(mx)), abs(math.log(mn)))
    if abs(r) * scale > _RESCALE_AT:
        m = mx if r > 0.0 else mn
        total = 0.0
        for v in xs:
            total += (v / m) ** r
        if math.log(m) + math.log(total) / r > _EXP_MAX:
            return math.inf
        return m * total ** (1.0 / r)
    total = 0.0
    for v in xs:
        total += v ** r
    if math.log(total) / r > _EXP_MAX:
        return math.inf
    return total ** (1.0 / r)


def norm_weighted_finite(x, theta, r):
    """(sum_i theta_i x_i^r)^(1/r); same rescaling policy as norm_finite."""
    xs = _seq(x)
    ts = _seq(theta)
    n = len(xs)
    if n == 1:
        return xs[0]
    mn = min(xs)
    mx = max(xs)
    scale = max(abs(math.log(mx)), abs(math.log(mn)))
    if abs(r) * scale > _RESCALE_AT:
        m = mx if r > 0.0 else mn
        total = 0.0
        for i in range(n):
            total += ts[i] * (xs[i] / m) ** r
        if math.log(m) + math.log(total) / r > _EXP_MAX:
            return math.inf
        return m * total ** (1.0 / r)
    total = 0.0
    for i in range(n):
        total += ts[i] * xs[i] ** r
    if math.log(total) / r > _EXP_MAX:
        return math.inf
    return total ** (1.0 / r)


def norm_cobb_douglas(x, theta):
    """prod_i x_i^theta_i, evaluated as exp(sum theta_i ln x_i)."""
    xs = _seq(x)
    ts = _seq(theta)
    n = len(xs)
    if n == 1:
        return xs[0]
    t = 0.0
    for i in range(n):
        t += ts[i] * math.log(xs[i])
    if t > _EXP_MAX:
        return math.inf
    return math.exp(t)


# Log-input variants: given ln(x) they return ln of the corresponding norm.
# They cannot overflow for any finite inputs, which the inequality gap
# functions rely on (a product of norms can be far outside the double range
# while the quantity it bounds is not).


def log_norm_finite(logx, r):
    xs = _seq(logx)
    n = len(xs)
    if n == 1:
        return xs[0]
    amax = r * xs[0]
    for i in range(1, n):
        a = r * xs[i]
        if a > amax:
            amax = a
    total = 0.0
    for v in xs:
        total += math.exp(r * v - amax)
    return (amax + math.log(total)) / r


def log_norm_weighted_finite(logx, theta, r):
    xs = _seq(logx)
    ts = _seq(theta)
    n = len(xs)
    if n == 1:
        return xs[0]
    amax = r * xs[0]
    for i in range(1, n):
        a = r * xs[i]
        if a > amax:
            amax = a
    total = 0.0
    for i in range(n):
        total += ts[i] * math.exp(r * xs[i] - amax)
    return (amax + math.log(total)) / r


def log_norm_cobb_douglas(logx, theta):
    xs = _seq(logx)
    ts = _seq(theta)
    n = len(xs)
    if n == 1:
        return xs[0]
    t = 0.0
    for i in range(n):
        t += ts[i] * xs[i]
    return t
