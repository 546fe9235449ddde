"""Strictly increasing node-clustering maps.

Each map sends a reference interval onto a physical interval.  The power
maps cluster nodes at the origin; the log map clusters them geometrically on
``[x0, T]``; the polynomial, tan and sinh maps are the classical conformal
maps that cluster nodes at the centre of [-1, 1].
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .nodes import NodeSet, chebyshev_points


class SingularMap:
    """Common behaviour; subclasses provide ``_forward`` and the intervals."""

    name = "map"

    @property
    def reference_interval(self):
        return (-1.0, 1.0)

    @property
    def image_interval(self):
        raise NotImplementedError

    def _forward(self, y):
        raise NotImplementedError

    def apply(self, y):
        """Map reference coordinates ``y`` (scalar or array) to the image."""
        y = np.asarray(y, dtype=float)
        lo, hi = self.reference_interval
        if np.any(~((y >= lo) & (y <= hi))):
            raise ValueError(f"{self.name}: argument outside reference interval [{lo}, {hi}]")
        with np.errstate(divide="ignore", invalid="ignore"):
            x = np.asarray(self._forward(y), dtype=float)
        # endpoint images are exact by construction
        a, b = self.image_interval
        x = np.where(y == lo, a, np.where(y == hi, b, x))
        return x[()] if x.ndim == 0 else x

    __call__ = apply

    def extend(self, z):
        """Closed-form continuation to complex arguments (principal branches)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return self._forward(np.asarray(z, dtype=complex))

    def difference(self, y, w, delta):
        """``g(y) - g(w)`` for real ``y, w`` given ``delta = y - w`` exactly.

        Subclasses override this to avoid cancellation when ``w`` is close
        to ``y``; the default subtracts directly.
        """
        return self._forward(np.asarray(y, float)) - self._forward(np.asarray(w, float))

    def forward_mp(self, y):
        """The map applied to one ``mpmath`` number (extended precision)."""
        return self._forward(y)

    def inverse(self, x):
        raise NotImplementedError


def _power_difference(T, e, y, w, delta):
    # T*(u**e - v**e) with u = (y+1)/2, v = (w+1)/2, u - v = delta/2
    u = 0.5 * (np.asarray(y, float) + 1)
    du = 0.5 * np.asarray(delta, float)
    # near the clustered end u - du is exact where (w+1)/2 has lost w's rounding
    v = np.where(u < 0.5, u - du, 0.5 * (np.asarray(w, float) + 1))
    v = np.maximum(v, 0.0)
    close = np.abs(du) <= 0.5 * v
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        safe_v = np.where(close, v, 1.0)
        stable = T * safe_v**e * np.expm1(e * np.log1p(du / safe_v))
    return np.where(close, stable, T * (u**e - v**e))


@dataclass(frozen=True)
class PowerScaled(SingularMap):
    """``g(y) = T * ((y + 1)/2)**(s/alpha)`` on [-1, 1] -> [0, T]."""

    T: float = 1.0
    s: float = 1.0
    alpha: float = 1.0
    exponent: float = field(init=False, repr=False)
    name = "power"

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("T must be positive")
        if not self.s >= 1:
            raise ValueError("s must be >= 1")
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")
        object.__setattr__(self, "exponent", self.s / self.alpha)

    @property
    def image_interval(self):
        return (0.0, float(self.T))

    def _forward(self, y):
        return self.T * ((y + 1) / 2) ** self.exponent

    def difference(self, y, w, delta):
        return _power_difference(self.T, self.exponent, y, w, delta)

    def inverse(self, x):
        return 2 * (np.asarray(x, float) / self.T) ** (1 / self.exponent) - 1


@dataclass(frozen=True)
class PowerPlain(PowerScaled):
    """``g(y) = T * ((y + 1)/2)**s``: the power map with a bare exponent."""

    T: float = 1.0
    s: float = 2.0
    alpha: float = field(default=1.0, init=False, repr=False)
    name = "power-raw"


@dataclass(frozen=True)
class SymmetricPower(SingularMap):
    """``g(y) = sign(y) * T * |y|**(s/alpha)`` on [-1, 1] -> [-T, T].

    Applied to mirrored Chebyshev points of [0, 1] this reproduces the
    two-sided construction for ``|x|**alpha``; see ``symmetric_power_nodes``.
    """

    T: float = 1.0
    s: float = 1.0
    alpha: float = 1.0
    exponent: float = field(init=False, repr=False)
    name = "sym"

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("T must be positive")
        if not self.s >= 1:
            raise ValueError("s must be >= 1")
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")
        object.__setattr__(self, "exponent", self.s / self.alpha)

    @property
    def image_interval(self):
        return (-float(self.T), float(self.T))

    def _forward(self, y):
        if np.iscomplexobj(y):
            return self.T * y * (y * y) ** ((self.exponent - 1) / 2)
        return np.sign(y) * self.T * np.abs(y) ** self.exponent

    def forward_mp(self, y):
        return (1 if y >= 0 else -1) * self.T * abs(y) ** self.exponent

    def inverse(self, x):
        x = np.asarray(x, float)
        return np.sign(x) * (np.abs(x) / self.T) ** (1 / self.exponent)


@dataclass(frozen=True)
class LogMap(SingularMap):
    """``g(y) = exp(y)`` on ``[log x0, log T]`` -> ``[x0, T]``.

    Equivalently ``x = x0 * (T/x0)**((theta + 1)/2)`` for theta in [-1, 1];
    see ``apply_theta``.
    """

    x0: float = 1e-10
    T: float = 1.0
    name = "log"

    def __post_init__(self):
        if not 0 < self.x0 < self.T:
            raise ValueError("LogMap requires 0 < x0 < T")

    @property
    def reference_interval(self):
        return (math.log(self.x0), math.log(self.T))

    @property
    def image_interval(self):
        return (float(self.x0), float(self.T))

    def _forward(self, y):
        return np.exp(y)

    def forward_mp(self, y):
        import mpmath

        return mpmath.exp(y)

    def apply_theta(self, theta):
        lo, hi = self.reference_interval
        theta = np.asarray(theta, float)
        return self.apply(lo + (hi - lo) * (theta + 1) / 2)

    def difference(self, y, w, delta):
        return np.exp(np.asarray(w, float)) * np.expm1(np.asarray(delta, float))

    def inverse(self, x):
        return np.log(np.asarray(x, float))


@dataclass(frozen=True)
class PolyMap(SingularMap):
    """``x = (a*y + y**(2p+1)) / (1 + a)`` on [-1, 1]."""

    a: float = 1.0
    p: int = 1
    name = "poly"

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("a must be positive")
        if int(self.p) != self.p or self.p < 1:
            raise ValueError("p must be a positive integer")

    @property
    def image_interval(self):
        return (-1.0, 1.0)

    def _forward(self, y):
        return (self.a * y + y ** (2 * self.p + 1)) / (1 + self.a)

    def difference(self, y, w, delta):
        y, w = np.asarray(y, float), np.asarray(w, float)
        n = 2 * self.p + 1
        geom = sum(y**k * w ** (n - 1 - k) for k in range(n))
        return np.asarray(delta, float) * (self.a + geom) / (1 + self.a)

    def inverse(self, x):
        x = np.asarray(x, float)
        out = [brentq(lambda y, t=t: self._forward(y) - t, -1.0, 1.0, xtol=1e-15)
               for t in np.atleast_1d(x)]
        return np.array(out).reshape(x.shape)


@dataclass(frozen=True)
class TanMap(SingularMap):
    """``x = eps * tan(y * arctan(1/eps))`` on [-1, 1]."""

    eps: float = 0.1
    name = "tan"

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    @property
    def image_interval(self):
        return (-1.0, 1.0)

    def _forward(self, y):
        return self.eps * np.tan(y * math.atan(1 / self.eps))

    def forward_mp(self, y):
        import mpmath

        return self.eps * mpmath.tan(y * mpmath.atan(1 / mpmath.mpf(self.eps)))

    def difference(self, y, w, delta):
        c = math.atan(1 / self.eps)
        y, w = np.asarray(y, float), np.asarray(w, float)
        return self.eps * np.sin(c * np.asarray(delta, float)) / (np.cos(c * y) * np.cos(c * w))

    def inverse(self, x):
        return np.arctan(np.asarray(x, float) / self.eps) / math.atan(1 / self.eps)


@dataclass(frozen=True)
class SinhMap(SingularMap):
    """``x = eps * sinh(y * arcsinh(1/eps))`` on [-1, 1]."""

    eps: float = 0.1
    name = "sinh"

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    @property
    def image_interval(self):
        return (-1.0, 1.0)

    def _forward(self, y):
        return self.eps * np.sinh(y * math.asinh(1 / self.eps))

    def forward_mp(self, y):
        import mpmath

        return self.eps * mpmath.sinh(y * mpmath.asinh(1 / mpmath.mpf(self.eps)))

    def difference(self, y, w, delta):
        c = math.asinh(1 / self.eps)
        y, w = np.asarray(y, float), np.asarray(w, float)
        return 2 * self.eps * np.cosh(c * (y + w) / 2) * np.sinh(c * np.asarray(delta, float) / 2)

    def inverse(self, x):
        return np.arcsinh(np.asarray(x, float) / self.eps) / math.asinh(1 / self.eps)


def mapped_nodes(m, base):
    """Image of ``base`` under ``m`` as a new (still ascending) node set."""
    lo, hi = m.reference_interval
    b = np.asarray(base.points)
    if b[0] < lo or b[-1] > hi:
        raise ValueError(f"base nodes leave the reference interval of {m.name}")
    return NodeSet(m.apply(b), m.image_interval, f"{base.family}+{m.name}")


def symmetric_power_nodes(N, T, s_over_alpha):
    """Two-sided scaled nodes for functions like ``|x|**alpha`` on [-T, T].

    Takes the ``N + 1`` Chebyshev points ``c_j`` of [0, 1], drops ``c_0 = 0``
    and returns the ``2N`` nodes ``-g(c_N), ..., -g(c_1), g(c_1), ..., g(c_N)``
    with ``g(c) = T c**(s/alpha)``.  The weights alternate starting at -1 and
    are halved at the two extreme entries.
    """
    m = SymmetricPower(T=T, s=s_over_alpha, alpha=1.0)
    c = chebyshev_points(N, (0.0, 1.0)).points[1:]
    y = np.concatenate([-c[::-1], c])
    x = m.apply(y)
    w = (-1.0) ** np.arange(1, 2 * N + 1)
    w[0] /= 2
    w[-1] /= 2
    return NodeSet(x, m.image_interval, "symmetric-power"), w
