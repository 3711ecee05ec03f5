"""Exact counts of smooth numbers and the alpha summatory function.

psi_exact(x, y) counts n <= x whose prime factors are all <= y, in pure
integer arithmetic.  The algorithm folds small primes into an explicit
sorted array of smooth numbers until the array would outgrow a memory
cap, then walks the tree of products of the remaining "rough" primes
(multisets enumerated by non-increasing prime index), charging each
product d with the number of listed smooth values <= x/d via binary
search.  Everything is int64-vectorized; counts are exact.

alpha_values tabulates the coefficients alpha_y(n) of
exp(sum_{p^k <= y} p^(-ks)/k), the multiplicative weights that agree
with the smooth indicator whenever every prime-power component of n is
<= y.
"""

import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, RangeError, ResourceError
from .limits import env_limit
from .primes import PrimeTable

_SMOOTH_LIST_CAP = 8_000_000
_NODE_CHUNK = 1 << 21


def _fold_projection(smooth: np.ndarray, p: int, x: int) -> int:
    size = smooth.size
    m = p
    while m <= x:
        size += int(np.searchsorted(smooth, x // m, side="right"))
        m *= p
    return size


def _fold(smooth: np.ndarray, p: int, x: int) -> np.ndarray:
    parts = [smooth]
    m = p
    while m <= x:
        idx = int(np.searchsorted(smooth, x // m, side="right"))
        parts.append(smooth[:idx] * m)
        m *= p
    return np.sort(np.concatenate(parts))


def psi_exact(x: int, y: int, pt: PrimeTable) -> int:
    """Number of y-smooth integers in [1, x], exact."""
    x = int(x)
    y = int(y)
    max_x = env_limit("SMOOTHNUM_MAX_PSI_X")
    max_y = env_limit("SMOOTHNUM_MAX_PSI_Y")
    if x > max_x or y > max_y:
        raise ResourceError(
            f"psi_exact envelope is x <= {max_x:g}, y <= {max_y:g}; got ({x}, {y})"
        )
    if x < 1:
        return 0
    if y >= x:
        return x
    if y < 2:
        return 1
    if y > pt.limit:
        raise RangeError(f"prime table only covers [2, {pt.limit}], need y = {y}")

    top = int(np.searchsorted(pt.primes, y, side="right"))
    primes = pt.primes[:top]
    smooth = np.ones(1, dtype=np.int64)
    first_rough = top
    for i in range(top):
        p = int(primes[i])
        if _fold_projection(smooth, p, x) > _SMOOTH_LIST_CAP:
            first_rough = i
            break
        smooth = _fold(smooth, p, x)
    if first_rough == top:
        return int(smooth.size)

    rough = primes[first_rough:].astype(np.int64)
    total = 0
    level_d = np.ones(1, dtype=np.int64)
    level_j = np.array([rough.size], dtype=np.int64)  # children may use index < this
    while level_d.size:
        next_d, next_j = [], []
        for lo in range(0, level_d.size, _NODE_CHUNK):
            d = level_d[lo : lo + _NODE_CHUNK]
            j_cap = level_j[lo : lo + _NODE_CHUNK]
            budget = x // d
            total += int(np.sum(np.searchsorted(smooth, budget, side="right")))
            cnt = np.minimum(j_cap, np.searchsorted(rough, budget, side="right"))
            keep = cnt > 0
            d, cnt = d[keep], cnt[keep]
            if not d.size:
                continue
            parent = np.repeat(np.arange(d.size), cnt)
            child_j = np.arange(parent.size) - np.repeat(np.cumsum(cnt) - cnt, cnt)
            next_d.append(d[parent] * rough[child_j])
            next_j.append(child_j + 1)
        if next_d:
            level_d = np.concatenate(next_d)
            level_j = np.concatenate(next_j)
        else:
            break
    return total


def buchstab_residual_psi(x: int, y: int, z: int, pt: PrimeTable) -> int:
    """Psi(x,y) - [Psi(x,z) - sum_{y < p <= z} Psi(x/p, p)]; exactly 0."""
    x, y, z = int(x), int(y), int(z)
    if not (2 <= y <= z <= x):
        raise DomainError("buchstab residual requires 2 <= y <= z <= x")
    lo = int(np.searchsorted(pt.primes, y, side="right"))
    hi = int(np.searchsorted(pt.primes, z, side="right"))
    branch = sum(psi_exact(x // int(p), int(p), pt) for p in pt.primes[lo:hi])
    return psi_exact(x, y, pt) - psi_exact(x, z, pt) + branch


def _prime_power_weights(pt: PrimeTable, x: int, y: int):
    """(q, log p) for prime powers q = p^k <= min(x, y)."""
    bound = min(x, y)
    out = []
    for p in pt.primes[: np.searchsorted(pt.primes, bound, side="right")]:
        p = int(p)
        w = math.log(p)
        q = p
        while q <= bound:
            out.append((q, w))
            q *= p
    return out


def alpha_values(x: int, y: int, pt: PrimeTable) -> np.ndarray:
    """alpha_y(n) for n = 0..x (index 0 unused) from the recurrence

        alpha(n) log n = sum over prime powers q = p^k <= y dividing n
                         of log(p) * alpha(n/q),

    obtained by differentiating the defining identity
    sum alpha(n) n^-s = exp(sum_{p^k<=y} p^(-ks)/k).  Blocks [L, 2L)
    only consume values below L, so the whole recurrence vectorizes.
    """
    x = int(x)
    y = int(y)
    if x > env_limit("SMOOTHNUM_MAX_ALPHA_X"):
        raise ResourceError(f"alpha recurrence envelope exceeded at x = {x}")
    if x < 1:
        raise DomainError("alpha_values needs x >= 1")
    if y > pt.limit:
        raise RangeError(f"prime table only covers [2, {pt.limit}], need y = {y}")
    alpha = np.zeros(x + 1)
    alpha[1] = 1.0
    acc = np.zeros(x + 1)
    weights = _prime_power_weights(pt, x, y)
    lo = 2
    while lo <= x:
        hi = min(2 * lo, x + 1)
        for q, w in weights:
            m_lo = (lo + q - 1) // q
            m_hi = (hi + q - 1) // q
            if m_lo < m_hi:
                acc[q * m_lo : hi : q] += w * alpha[m_lo:m_hi]
        alpha[lo:hi] = acc[lo:hi] / np.log(np.arange(lo, hi))
        lo = hi
    return alpha


def _exact_component_series(max_k: int, degree: int) -> list:
    """Coefficients of exp(sum_{k=1}^{max_k} t^k / k) up to t^degree, exact."""
    poly = [Fraction(0)] * (degree + 1)
    for k in range(1, min(max_k, degree) + 1):
        poly[k] = Fraction(1, k)
    series = [Fraction(0)] * (degree + 1)
    series[0] = Fraction(1)
    # exp via the ODE: series' = poly' * series.
    for n in range(1, degree + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += k * poly[k] * series[n - k]
        series[n] = acc / n
    return series


def alpha_exact(n: int, y: int) -> Fraction:
    """alpha_y(n) as an exact rational, via multiplicativity: the value
    at p^e is the t^e coefficient of exp(sum_{k: p^k <= y} t^k/k)."""
    if n < 1:
        raise DomainError("alpha_exact needs n >= 1")
    n = int(n)
    y = int(y)
    result = Fraction(1)
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            max_k = 0
            q = p
            while q <= y:
                max_k += 1
                q *= p
            result *= _exact_component_series(max_k, e)[e]
        p += 1
    if n > 1:  # leftover prime
        result *= Fraction(1) if n <= y else Fraction(0)
    return result


def alpha_summatory(x: int, y: int, pt: PrimeTable) -> float:
    """sum_{n <= x} alpha_y(n).

    Exact rationals for small x (every alpha_y(n) is rational), the
    vectorized float recurrence beyond; both paths agree to float
    rounding on their overlap.
    """
    x = int(x)
    if x <= 4000:
        return float(sum(alpha_exact(n, y) for n in range(1, x + 1)))
    return float(np.sum(alpha_values(x, y, pt)[1:]))
