"""Logarithmic potentials of the arcsine density and convergence-rate fits.

All integrals are against ``phi(y) = 1/(pi sqrt(1 - y**2))`` over
``[sigma, 1]`` in unit reference coordinates (the map's reference interval
rescaled affinely to [-1, 1]).  After ``y = cos(theta)`` the density becomes
``dtheta/pi`` and the integrands only carry logarithmic singularities.  These
sit at panel ends by construction and are resolved by Gauss-Legendre panels
graded geometrically toward both ends.  Differences that vanish at the
singular point are formed from explicit ``theta`` offsets, never by
subtracting rounded cosines.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AccuracyLossError
from .maps import SingularMap

EPS = np.finfo(float).eps
ALGEBRAIC = "algebraic"
ROOT_EXPONENTIAL = "root-exponential"
FLOOR = "floor"


@dataclass(frozen=True)
class PotentialContext:
    """Map, restriction endpoint ``sigma`` in unit coordinates and the
    quadrature resolution (panel ratio, grading depth, points per panel).

    ``grid_size`` is the number of sample points in the maxima and minima
    over ``[sigma, 1]``.  With ``verify`` set every integral is recomputed
    at a higher order and ``AccuracyLossError`` is raised when the two
    disagree by more than ``tol``.
    """

    map: SingularMap
    sigma: float = -1.0
    ratio: float = 0.15
    depth: int = 60
    order: int = 20
    grid_size: int = 201
    verify: bool = False
    tol: float = 1e-9

    def __post_init__(self):
        if not -1.0 <= self.sigma < 1.0:
            raise ValueError("sigma must lie in [-1, 1)")
        if not 0 < self.ratio < 1:
            raise ValueError("grading ratio must lie in (0, 1)")
        if self.depth < 1 or self.order < 2:
            raise ValueError("resolution too small")

    @classmethod
    def from_delta(cls, m, delta, **kw):
        """Context restricted to the physical subinterval starting at ``delta``."""
        return cls(m, sigma=float(to_unit(m, m.inverse(delta))), **kw)

    @property
    def theta_sigma(self):
        return math.acos(self.sigma)

    @property
    def ctheta_sigma(self):
        # pi - arccos(sigma), accurate near sigma = -1
        return math.acos(-self.sigma)

    def refined(self):
        return PotentialContext(self.map, self.sigma, self.ratio, self.depth + 20,
                                self.order + 10, self.grid_size, False, self.tol)


def to_native(m, u):
    lo, hi = m.reference_interval
    u = np.asarray(u)
    return lo + (u + 1) * (0.5 * (hi - lo))


def to_unit(m, y):
    lo, hi = m.reference_interval
    return 2 * (np.asarray(y) - lo) / (hi - lo) - 1


@lru_cache(maxsize=32)
def _unit_offsets(ratio, depth, order):
    # offsets in (0, 1] graded toward 0 and their Gauss-Legendre weights
    t, w = np.polynomial.legendre.leggauss(order)
    edges = np.concatenate([[0.0], ratio ** np.arange(depth - 1, -1, -1.0)])
    a, b = edges[:-1, None], edges[1:, None]
    h = 0.5 * (b - a)
    d = (a + h * (t + 1)).ravel()
    wd = (h * w).ravel()
    d.setflags(write=False)
    wd.setflags(write=False)
    return d, wd


@dataclass(frozen=True)
class _ThetaPanel:
    """Nodes on ``[lo, hi]`` with accurate distances to both ends and to pi."""

    theta: np.ndarray
    ctheta: np.ndarray  # pi - theta
    d_lo: np.ndarray  # theta - lo
    d_hi: np.ndarray  # hi - theta
    weights: np.ndarray


def _theta_panel(ctx, lo, hi, clo, chi):
    L = 0.5 * (hi - lo)
    d, w = _unit_offsets(ctx.ratio, ctx.depth, ctx.order)
    d = d * L
    w = w * L
    theta = np.concatenate([lo + d, hi - d])
    ctheta = np.concatenate([clo - d, chi + d])
    d_lo = np.concatenate([d, 2 * L - d])
    d_hi = np.concatenate([2 * L - d, d])
    return _ThetaPanel(theta, ctheta, d_lo, d_hi, np.concatenate([w, w]))


def _half_sum_sin(a, ca, b, cb):
    """``sin((a + b)/2)`` accurately also when ``a + b`` is close to 2 pi."""
    s = 0.5 * (a + b)
    return np.where(s <= 0.5 * np.pi, np.sin(s), np.sin(0.5 * (ca + cb)))


def _cos_difference(a, ca, b, cb, b_minus_a):
    """``cos(a) - cos(b) = 2 sin((a+b)/2) sin((b-a)/2)``."""
    return 2 * _half_sum_sin(a, ca, b, cb) * np.sin(0.5 * b_minus_a)


def _integrate(ctx, lo, hi, clo, chi, kernel):
    """``(1/pi) int_lo^hi kernel(panel) dtheta``; optional self-check."""
    if hi <= lo:
        return 0.0
    p = _theta_panel(ctx, lo, hi, clo, chi)
    value = float(np.sum(p.weights * kernel(p)) / np.pi)
    if ctx.verify:
        q = _theta_panel(ctx.refined(), lo, hi, clo, chi)
        ref = float(np.sum(q.weights * kernel(q)) / np.pi)
        if not abs(ref - value) <= ctx.tol:
            raise AccuracyLossError("potential quadrature below tolerance", abs(ref - value))
    return value


def _check_unit(ctx, y):
    y = float(y)
    if not ctx.sigma <= y <= 1.0:
        raise ValueError(f"point {y} outside [{ctx.sigma}, 1]")
    return y


def node_potential_parts(ctx, y_k):
    """``(int_sigma^{y_k}, int_{y_k}^1)`` of ``log|y_k - y| phi(y) dy``."""
    y_k = _check_unit(ctx, y_k)
    tk, ctk = math.acos(y_k), math.acos(-y_k)
    ts, cts = ctx.theta_sigma, ctx.ctheta_sigma

    def lower(p):  # theta in [tk, ts]: singular end at lo = tk
        return np.log(np.abs(_cos_difference(tk, ctk, p.theta, p.ctheta, p.d_lo)))

    def upper(p):  # theta in [0, tk]: singular end at hi = tk
        return np.log(np.abs(_cos_difference(tk, ctk, p.theta, p.ctheta, -p.d_hi)))

    return (_integrate(ctx, tk, ts, ctk, cts, lower),
            _integrate(ctx, 0.0, tk, math.pi, ctk, upper))


def potential_U_node(ctx, y_k):
    """Split-weighted node potential

        (1 + y_k)/2 int_sigma^{y_k} log|y_k - y| phi dy
        + (1 - y_k)/2 int_{y_k}^1 log|y_k - y| phi dy.
    """
    lo, up = node_potential_parts(ctx, y_k)
    y_k = float(y_k)
    return 0.5 * (1 + y_k) * lo + 0.5 * (1 - y_k) * up


def equilibrium_integral(ctx, y_k):
    """``int_sigma^1 log|y_k - y| phi(y) dy``; ``-log 2`` when sigma = -1."""
    lo, up = node_potential_parts(ctx, y_k)
    return lo + up


def _field_parts(ctx, y):
    """Both halves of ``int log|g(y) - g(w)| phi(w) dw`` for real ``y``."""
    m = ctx.map
    scale = 0.5 * (m.reference_interval[1] - m.reference_interval[0])
    ty, cty = math.acos(y), math.acos(-y)
    ts, cts = ctx.theta_sigma, ctx.ctheta_sigma
    gy = to_native(m, y)

    def kern(p, offset):
        w = np.cos(p.theta)
        dy = _cos_difference(ty, cty, p.theta, p.ctheta, offset)  # y - w
        return np.log(np.abs(m.difference(gy, to_native(m, w), scale * dy)))

    lower = _integrate(ctx, ty, ts, cty, cts, lambda p: kern(p, p.d_lo))
    upper = _integrate(ctx, 0.0, ty, math.pi, cty, lambda p: kern(p, -p.d_hi))
    return lower, upper


def potential_U_field(ctx, z):
    """``int_sigma^1 log|g(z) - g(w)| phi(w) dw`` for complex ``z`` in unit
    reference coordinates; ``g`` is continued by its closed form."""
    z = complex(z)
    if z.imag == 0 and ctx.sigma <= z.real <= 1:
        lo, up = _field_parts(ctx, z.real)
        return lo + up
    m = ctx.map
    gz = complex(m.extend(to_native(m, z)))
    ts, cts = ctx.theta_sigma, ctx.ctheta_sigma

    def kern(p):
        gw = m.apply(np.clip(to_native(m, np.cos(p.theta)), *m.reference_interval))
        return np.log(np.abs(gz - gw))

    lo_img, hi_img = m.image_interval
    if lo_img <= gz.real <= hi_img:
        # the kernel is (nearly) singular where g(w) = Re g(z); this also
        # catches z off the interval that the continuation folds back onto it
        y_star = float(np.clip(to_unit(m, m.inverse(gz.real)), -1.0, 1.0))
        if gz.imag == 0 and ctx.sigma <= y_star:
            lo, up = _field_parts(ctx, y_star)
            return lo + up
        if ctx.sigma < y_star < 1:
            t0, ct0 = math.acos(y_star), math.acos(-y_star)
            return (_integrate(ctx, 0.0, t0, math.pi, ct0, kern)
                    + _integrate(ctx, t0, ts, ct0, cts, kern))
    return _integrate(ctx, 0.0, ts, math.pi, cts, kern)


def potential_U_split(ctx, y):
    """Split-weighted field potential at the on-interval point ``g(y)``."""
    y = _check_unit(ctx, y)
    lo, up = _field_parts(ctx, y)
    return 0.5 * (1 + y) * lo + 0.5 * (1 - y) * up


def sample_grid(ctx):
    """Cosine-spaced sample points on ``[sigma, 1]`` (endpoints included)."""
    return np.cos(np.linspace(ctx.theta_sigma, 0.0, ctx.grid_size))


@lru_cache(maxsize=64)
def node_potential_extremes(ctx):
    """``(min, max)`` of the node potential over ``sample_grid``."""
    u = np.array([potential_U_node(ctx, y) for y in sample_grid(ctx)])
    return float(u.min()), float(u.max())


def _on_interval(ctx, z):
    z = complex(z)
    return z.imag == 0 and ctx.sigma <= z.real <= 1


def potential_V(ctx, z):
    """Potential function ``V(g(z))``.

    Off ``[sigma, 1]`` it equals minus the smallest node potential; on the
    interval it is ``U_split(g(y)) - max node potential - U_field(g(y))``.
    """
    umin, umax = node_potential_extremes(ctx)
    if not _on_interval(ctx, z):
        return -umin
    y = complex(z).real
    lo, up = _field_parts(ctx, y)
    split = 0.5 * (1 + y) * lo + 0.5 * (1 - y) * up
    return split - umax - (lo + up)


@lru_cache(maxsize=64)
def interval_V_extremes(ctx):
    """``(min, max)`` of ``V`` over the interior of ``sample_grid``."""
    v = np.array([potential_V(ctx, y) for y in sample_grid(ctx)[1:-1]])
    return float(v.min()), float(v.max())


def rate_level_R(ctx, z):
    """``exp(V(g(z))) / min_y exp(V(g(y)))`` for ``z`` off the interval."""
    if _on_interval(ctx, z):
        raise ValueError("rate_level_R requires z off [sigma, 1]")
    vmin, _ = interval_V_extremes(ctx)
    return math.exp(potential_V(ctx, z) - vmin)


def predicted_prototype_log_rate(ctx, z):
    """``V(g(z)) - max_y V(g(y))``: predicted log of the per-node error ratio
    for the prototype function ``1/(z - x)``."""
    _, vmax = interval_V_extremes(ctx)
    return potential_V(ctx, z) - vmax


def prototype_error(m, N, z, xs, digits=60):
    """``|h - r[h]|`` at physical points ``xs`` for ``h(x) = 1/(z - x)``.

    The interpolant uses ``N + 1`` Chebyshev points mapped by ``m`` with the
    simplified Chebyshev weights.  Nodes and the error identity

        h(x) - r[h](x) = (1/(z - x)) sum_i w_i/(z - x_i) / sum_i w_i/(x - x_i)

    are evaluated with ``digits`` significant decimal digits.  Nodes rounded
    to double would stop the cancellation in the numerator near 1e-17, so
    they are generated at the working precision as well.  Points that hit a
    node have zero error.
    """
    import mpmath

    with mpmath.workdps(digits):
        lo, hi = (mpmath.mpf(v) for v in m.reference_interval)
        y = [lo + (hi - lo) * (mpmath.sin(mpmath.pi * (2 * i - N) / (2 * N)) + 1) / 2
             for i in range(N + 1)]
        x = [m.forward_mp(v) for v in y]
        w = [mpmath.mpf(-1) ** i for i in range(N + 1)]
        w[0] /= 2
        w[-1] /= 2
        zz = mpmath.mpmathify(complex(z)) if isinstance(z, complex) else mpmath.mpf(z)
        num = mpmath.fsum(wi / (zz - xi) for wi, xi in zip(w, x))
        out = []
        for t in xs:
            t = mpmath.mpf(float(t))
            d = [t - xi for xi in x]
            if any(di == 0 for di in d):
                out.append(0.0)
                continue
            den = mpmath.fsum(wi / di for wi, di in zip(w, d))
            out.append(float(abs(num / den / (zz - t))))
    return np.array(out)


def observed_prototype_log_rate(m, N, z, xs, digits=None):
    """``log(max |h - r[h]|) / (N + 1)`` using ``prototype_error``."""
    digits = digits or max(40, int(N) + 40)
    err = prototype_error(m, N, z, xs, digits)
    return math.log(err.max()) / (N + 1)


@dataclass(frozen=True)
class RateFit:
    """Least-squares fits of ``log err`` against ``log N`` and ``sqrt N``.

    ``slope`` is the algebraic exponent, ``C`` the root-exponential
    coefficient in ``err ~ A exp(-C sqrt(N))``.  Fit fields are ``nan`` for
    the ``"floor"`` regime.
    """

    slope: float
    r2_algebraic: float
    C: float
    r2_root: float
    regime: str
    used: int


def _linear_fit(t, y):
    A = np.vstack([t, np.ones_like(t)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    ss_tot = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - np.sum(resid**2) / ss_tot if ss_tot > 0 else 1.0
    return coef[0], float(min(max(r2, 0.0), 1.0))


def fit_convergence(records, floor=100 * EPS, min_points=5):
    """Classify a convergence history.

    ``records`` holds ``(N, max_error, ...)`` tuples or objects with ``N``
    and ``max_error``.  Errors at or below ``floor`` are dropped; with fewer
    than ``min_points`` remaining the regime is ``"floor"``.  Otherwise the
    fit with the larger coefficient of determination names the regime.
    """
    Ns, errs = [], []
    for rec in records:
        n, e = (rec.N, rec.max_error) if hasattr(rec, "N") else (rec[0], rec[1])
        if np.isfinite(e) and e > floor:
            Ns.append(float(n))
            errs.append(float(e))
    if len(Ns) < min_points:
        nan = float("nan")
        return RateFit(nan, nan, nan, nan, FLOOR, len(Ns))
    N = np.array(Ns)
    le = np.log(np.array(errs))
    slope, r2a = _linear_fit(np.log(N), le)
    c, r2r = _linear_fit(np.sqrt(N), le)
    regime = ROOT_EXPONENTIAL if r2r > r2a else ALGEBRAIC
    return RateFit(float(slope), r2a, float(-c), r2r, regime, len(Ns))
