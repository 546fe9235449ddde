"""Collocation for weakly singular Volterra equations of the second kind

    y(x) = f(x) + int_0^x (x - t)**(-alpha) K(x, t) y(t) dt,   0 <= x <= T,

on scaled Chebyshev nodes.  The unknowns are ``y(x_1), ..., y(x_N)``; the
value at the origin is fixed to ``f(0)``.  Row ``k`` of ``B`` holds the
integrals of the weakly singular kernel against each barycentric cardinal
function over ``[0, x_k]``.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.linalg
from scipy.special import gamma, rgamma

from .barycentric import BarycentricInterpolant, cardinal_matrix
from .errors import AccuracyLossError, SolverError
from .maps import PowerScaled, SingularMap, mapped_nodes
from .nodes import chebyshev_points, chebyshev_weights, gauss_jacobi_rule

COMPOSITE = "composite"
GAUSS_JACOBI = "gauss-jacobi"

# default Gauss order per panel of the composite rule
PANEL_ORDER = 16


def constant_kernel(alpha):
    """``K = 1/(10 Gamma(1 - alpha))``, the kernel with a Mittag-Leffler solution."""
    c = 1.0 / (10.0 * gamma(1.0 - alpha))
    return lambda x, t: np.full(np.broadcast(x, t).shape, c)


def _unit_forcing(x):
    return np.ones_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class VolterraProblem:
    """Equation data plus discretization.

    ``map`` defaults to ``PowerScaled(T, s, alpha)``.  ``rule`` selects the
    quadrature for ``B``: ``"composite"`` (default) splits ``[0, x_k]`` at the
    nodes, refines each piece geometrically so no panel spans more than a
    factor two, and treats the last panel with a Gauss-Jacobi rule for the
    ``(x_k - t)**(-alpha)`` factor; ``"gauss-jacobi"`` applies one
    ``M``-point Gauss-Jacobi rule on the whole of ``[0, x_k]``.  ``M`` is the
    order per panel (default 16) or of the single rule (default ``N + 10``).
    """

    alpha: float
    N: int
    s: float = 5.0
    T: float = 1.0
    forcing: Callable = _unit_forcing
    kernel: Optional[Callable] = None
    map: Optional[SingularMap] = None
    M: Optional[int] = None
    rule: str = COMPOSITE

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("N must be an integer >= 1")
        if not self.T > 0:
            raise ValueError("T must be positive")
        if self.rule not in (COMPOSITE, GAUSS_JACOBI):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")
        if self.M is not None and (int(self.M) != self.M or self.M < 1):
            raise ValueError("quadrature order M must be an integer >= 1")
        if self.kernel is None:
            object.__setattr__(self, "kernel", constant_kernel(self.alpha))
        if self.map is None:
            object.__setattr__(self, "map", PowerScaled(T=self.T, s=self.s, alpha=self.alpha))

    @property
    def quad_order(self):
        if self.M is not None:
            return int(self.M)
        return PANEL_ORDER if self.rule == COMPOSITE else int(self.N) + 10

    def nodes(self):
        base = chebyshev_points(self.N, self.map.reference_interval)
        return mapped_nodes(self.map, base).points, chebyshev_weights(self.N)


@dataclass(frozen=True)
class VolterraSystem:
    """``(I - B) y = b`` on ``x_1..x_N`` together with the full node data."""

    B: np.ndarray
    b: np.ndarray
    anchor: float
    nodes: np.ndarray
    weights: np.ndarray
    B_origin: np.ndarray = field(repr=False)


def _geometric_breaks(a, b, ratio=2.0):
    # a = b/ratio**j ... b with every piece spanning at most `ratio`
    if a <= 0 or b / a <= ratio:
        return [a, b]
    n = int(np.ceil(np.log(b / a) / np.log(ratio)))
    return list(a * (b / a) ** (np.arange(n + 1) / n))


def composite_rule(x, k, alpha, M):
    """Points and weights for ``int_0^{x_k} (x_k - t)**(-alpha) g(t) dt``."""
    xk = x[k]
    smooth = gauss_jacobi_rule(M)
    singular = gauss_jacobi_rule(M, -alpha, 0.0)
    last = max(x[k - 1], 0.5 * xk)
    breaks = [0.0]
    for j in range(k):
        lo, hi = x[j], min(x[j + 1], last)
        if hi <= lo:
            break
        breaks.extend(_geometric_breaks(lo, hi)[1:])
    pts, wts = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        t, w = smooth.on_interval(lo, hi)
        pts.append(t)
        wts.append(w * (xk - t) ** (-alpha))
    t, w = singular.on_interval(last, xk)
    pts.append(t)
    wts.append(w)
    return np.concatenate(pts), np.concatenate(wts)


def single_rule(xk, alpha, M):
    """One Gauss-Jacobi rule in ``theta = t/x_k`` scaled back to ``[0, x_k]``."""
    theta, w = gauss_jacobi_rule(M, -alpha, 0.0).on_interval(0.0, 1.0)
    return xk * theta, w * xk ** (1 - alpha)


def assemble_volterra(p):
    """Build ``B`` and ``b``; cardinal values come from ``cardinal_matrix``."""
    x, w = p.nodes()
    N = int(p.N)
    M = p.quad_order
    full = np.zeros((N + 1, N + 1))
    for k in range(1, N + 1):
        if p.rule == COMPOSITE:
            t, q = composite_rule(x, k, p.alpha, M)
        else:
            t, q = single_rule(x[k], p.alpha, M)
        kern = np.asarray(p.kernel(np.full_like(t, x[k]), t), dtype=float)
        full[k] = (q * kern) @ cardinal_matrix(x, w, t)
    anchor = float(np.asarray(p.forcing(np.array([x[0]])))[0])
    fx = np.asarray(p.forcing(x[1:]), dtype=float)
    b = fx + full[1:, 0] * anchor
    return VolterraSystem(full[1:, 1:], b, anchor, x, w, full[1:, 0])


def solve_volterra(p, system=None):
    """Solve ``(I - B) y = b`` by LU; return the interpolant over all nodes."""
    sysm = assemble_volterra(p) if system is None else system
    A = np.eye(sysm.b.size) - sysm.B
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond * np.finfo(float).eps > 1e-2:
        raise SolverError("Volterra collocation matrix is numerically singular", cond)
    y = scipy.linalg.lu_solve(scipy.linalg.lu_factor(A), sysm.b)
    values = np.concatenate([[sysm.anchor], y])
    return BarycentricInterpolant(sysm.nodes, sysm.weights, values)


def mittag_leffler(mu, nu, z, rtol=1e-16, max_terms=500):
    """``E_{mu,nu}(z) = sum_p z**p / Gamma(mu p + nu)`` for real ``z``.

    Summation stops once the latest term is below ``rtol`` times the partial
    sum at every point.
    """
    if not mu > 0:
        raise ValueError("mu must be positive")
    z = np.asarray(z, dtype=float)
    total = np.zeros_like(z)
    zp = np.ones_like(z)
    term = zp * rgamma(nu)
    for p in range(max_terms):
        term = zp * rgamma(mu * p + nu)
        total = total + term
        if p > 0 and np.all(np.abs(term) <= rtol * np.abs(total)):
            return total[()] if total.ndim == 0 else total
        zp = zp * z
        if not np.all(np.isfinite(zp)):
            break
    est = float(np.max(np.abs(term) / np.maximum(np.abs(total), np.finfo(float).tiny)))
    raise AccuracyLossError("Mittag-Leffler series did not converge", est)


def mittag_leffler_solution(alpha):
    """Exact solution ``E_{1-alpha,1}(x**(1-alpha)/10)`` for unit forcing and
    the ``constant_kernel``."""
    return lambda x: mittag_leffler(1 - alpha, 1.0, np.asarray(x, float) ** (1 - alpha) / 10)
