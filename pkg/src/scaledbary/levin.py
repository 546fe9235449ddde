"""Levin collocation for oscillatory integrals with an algebraic endpoint factor

    I = int_0^a f(x) x**alpha exp(i omega h(x)) dx.

The non-oscillatory function ``p`` solving ``p' + i omega h' p = f x**alpha``
is collocated on power-mapped Jacobi-Gauss-Lobatto nodes with the
barycentric differentiation matrix, and ``I = p(a) e^{i omega h(a)} -
p(0) e^{i omega h(0)}``.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .barycentric import BarycentricInterpolant, differentiation_matrix
from .errors import AccuracyLossError, SolverError
from .maps import PowerPlain, mapped_nodes
from .nodes import gauss_jacobi_rule, jacobi_gauss_lobatto, jacobi_simplified_weights


def _linear_phase(x):
    return np.asarray(x, dtype=float)


def _unit_slope(x):
    return np.ones_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class LevinProblem:
    """Amplitude ``f``, phase ``h`` with derivative ``h_prime``, exponent
    ``alpha``, frequency ``omega`` on ``[0, a]``, discretized with ``N + 1``
    Jacobi-Gauss-Lobatto nodes for ``(beta, gamma)`` mapped by
    ``PowerPlain(T=a, s)``."""

    f: Callable
    alpha: float = 0.5
    omega: float = 5000.0
    a: float = 1.0
    N: int = 60
    beta: float = 0.0
    gamma: float = 10.0
    s: float = 10.0
    h: Callable = _linear_phase
    h_prime: Callable = _unit_slope

    def __post_init__(self):
        if not 0 <= self.alpha < 1:
            raise ValueError("alpha must lie in [0, 1)")
        if not self.omega >= 0:
            raise ValueError("omega must be non-negative")
        if not self.a > 0:
            raise ValueError("a must be positive")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("N must be an integer >= 1")

    def nodes(self):
        base, omega_q = jacobi_gauss_lobatto(self.N, self.beta, self.gamma)
        lam = jacobi_simplified_weights(self.N, self.beta, self.gamma, omega_q)
        x = mapped_nodes(PowerPlain(T=self.a, s=self.s), base).points
        return x, lam

    def source(self, x):
        """``f(x) x**alpha`` with ``0**alpha`` read as 0 (alpha > 0) or 1."""
        x = np.asarray(x, dtype=float)
        xa = np.ones_like(x) if self.alpha == 0 else np.where(x > 0, x, 0.0) ** self.alpha
        return np.asarray(self.f(x), dtype=complex) * xa


def phased_amplitude(omega, alpha):
    """``f(x) = e^{i omega} (1 - x)(2 - x)**alpha``."""
    phase = np.exp(1j * omega)
    return lambda x: phase * (1 - x) * (2 - x) ** alpha


@dataclass(frozen=True)
class LevinResult:
    integral: complex
    p_values: np.ndarray
    condition: float
    nodes: np.ndarray
    weights: np.ndarray
    endpoint_phases: tuple

    def p(self):
        """The collocated ``p`` as a barycentric interpolant."""
        return BarycentricInterpolant(self.nodes, self.weights, self.p_values)


def endpoint_integral(p_values, phases):
    """``p[-1] e^{i omega h(a)} - p[0] e^{i omega h(0)}``."""
    left, right = phases
    return complex(p_values[-1] * right - p_values[0] * left)


def solve_levin(prob):
    """Collocate ``(D + i omega diag(h'(x))) p = f x**alpha`` and integrate."""
    x, lam = prob.nodes()
    hp = np.asarray(prob.h_prime(x), dtype=float)
    if np.any(hp == 0):
        raise ValueError("h' vanishes at a collocation node")
    D = differentiation_matrix(BarycentricInterpolant(x, lam, np.zeros_like(x)))
    A = D + 1j * prob.omega * np.diag(hp)
    rhs = prob.source(x)
    cond = float(np.linalg.cond(A))
    # clustered nodes make cond(A) huge even when the solve is accurate; the
    # row-equilibrated matrix separates that from genuine rank deficiency
    scaled = A / np.max(np.abs(A), axis=1, keepdims=True)
    cond_rows = float(np.linalg.cond(scaled))
    if not np.isfinite(cond_rows) or cond_rows * np.finfo(float).eps > 1e-2:
        raise SolverError("Levin collocation matrix is numerically singular", cond_rows)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A)
    p = scipy.linalg.lu_solve((lu, piv), rhs)
    h0, ha = np.asarray(prob.h(np.array([0.0, prob.a])), dtype=float)
    phases = (np.exp(1j * prob.omega * h0), np.exp(1j * prob.omega * ha))
    p.setflags(write=False)
    return LevinResult(endpoint_integral(p, phases), p, cond, x, lam, phases)


def _panel_edges(a, omega, grading, levels, refine):
    width = a / 8 if omega == 0 else min(a / 8, math.pi / (4 * omega))
    width /= refine
    n = int(math.ceil(a / width))
    uniform = np.linspace(0.0, a, n + 1)
    # first uniform panel graded geometrically toward the origin
    first = uniform[1] * grading ** np.arange(levels, 0, -1)
    return np.concatenate([[0.0], first, uniform[1:]])


def _panel_sum(integrand, edges, m):
    rule = gauss_jacobi_rule(m)
    lo, hi = edges[:-1, None], edges[1:, None]
    h = 0.5 * (hi - lo)
    t = lo + h * (rule.nodes + 1)
    return np.sum(h * rule.weights * integrand(t))


def reference_oscillatory_integral(prob, tol=1e-12, grading=0.25, levels=30,
                                   max_panels=2_000_000, return_estimate=False):
    """Brute-force composite Gauss-Legendre value of the Levin integral.

    Panels are at most a quarter period wide (``pi/(4 omega)``) and the one
    touching the origin is split geometrically by ``grading`` over ``levels``
    levels to resolve ``x**alpha``.  The estimate is the difference between
    16- and 24-point rules on the same panels; the panel width is halved
    until it falls below ``tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")

    def integrand(t):
        phase = np.asarray(prob.h(t), dtype=float)
        return prob.source(t) * np.exp(1j * prob.omega * phase)

    refine = 1
    est = math.inf
    while True:
        edges = _panel_edges(prob.a, prob.omega, grading, levels, refine)
        if edges.size - 1 > max_panels:
            raise AccuracyLossError("oscillatory reference quadrature exceeded its panel budget", est)
        coarse = _panel_sum(integrand, edges, 16)
        fine = _panel_sum(integrand, edges, 24)
        est = abs(fine - coarse)
        if est <= tol:
            value = complex(fine)
            return (value, est) if return_estimate else value
        refine *= 2
