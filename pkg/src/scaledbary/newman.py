"""Newman's rational approximants to |x| and sqrt(x).

With ``p(x) = prod_{k<n} (x + xi**k)`` the approximant is

    r(x) = x (p(x) - p(-x)) / (p(x) + p(-x)).

Both products are never formed.  For ``x >= 0`` the ratio
``q = p(-x)/p(x) = prod (xi**k - x)/(xi**k + x)`` has factors of modulus at
most one, so it cannot overflow, and ``r = x (1 - q)/(1 + q)``.  ``r`` is even
in ``x``, so negative arguments use ``|x|``.
"""

import math
from dataclasses import dataclass

import numpy as np

ABS = "abs"
SQRT = "sqrt"


@dataclass(frozen=True)
class NewmanApprox:
    """Degree parameter, clustering ratio ``xi`` and variant tag."""

    N: int
    xi: float
    variant: str

    def __post_init__(self):
        if not 0 < self.xi < 1:
            raise ValueError("xi must lie in (0, 1)")

    @property
    def factors(self):
        return self.N if self.variant == ABS else 2 * self.N

    def __call__(self, x):
        if self.variant == ABS:
            return _newman_even(self.factors, self.xi, x)
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise ValueError("newman_sqrt is defined for x >= 0")
        return _newman_even(self.factors, self.xi, np.sqrt(x))


def _check_N(N):
    if int(N) != N or N < 1:
        raise ValueError(f"N must be an integer >= 1, got {N!r}")
    return int(N)


def newman_abs_approx(N):
    """Newman's approximant to |x| with ``N`` factors, ``xi = exp(-1/sqrt(N))``."""
    N = _check_N(N)
    return NewmanApprox(N, math.exp(-1.0 / math.sqrt(N)), ABS)


def newman_sqrt_approx(N):
    """Approximant to sqrt(x) on [0, 1]: the |x| construction with ``2N``
    factors and ``xi = exp(-1/sqrt(2N))`` evaluated at ``sqrt(x)``."""
    N = _check_N(N)
    return NewmanApprox(N, math.exp(-1.0 / math.sqrt(2 * N)), SQRT)


def _newman_even(n, xi, x):
    x = np.asarray(x, dtype=float)
    a = np.abs(x).ravel()
    nodes = xi ** np.arange(n)
    q = np.ones_like(a)
    # accumulate factor by factor: O(n) memory per point
    for c in nodes:
        q *= (c - a) / (c + a)
    r = a * (1 - q) / (1 + q)
    r = r.reshape(x.shape)
    return r[()] if r.ndim == 0 else r


def newman_abs(N, x):
    """Evaluate Newman's approximant to |x| on [-1, 1]."""
    return newman_abs_approx(N)(x)


def newman_sqrt(N, x):
    """Evaluate Newman's approximant to sqrt(x) on [0, 1]."""
    return newman_sqrt_approx(N)(x)
