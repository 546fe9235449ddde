"""Interpolation node families, simplified barycentric weights and
Gauss-Jacobi quadrature.

Orientation convention: every node set is stored in ascending order and the
weights are listed in the same order, so ``weights[0]`` belongs to the left
endpoint.  For Chebyshev points of the second kind this reverses the usual
index (``i = 0`` at ``cos(0) = +1``); the barycentric quotient is invariant
under a global sign change of the weights, so only the alternation matters.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import betaln, eval_jacobi, gammaln

CHEBYSHEV = "chebyshev2"
JACOBI_LOBATTO = "jacobi-lobatto"


def _readonly(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


def check_distinct(points):
    """Raise ``ValueError`` unless ``points`` increase by more than 4 ulp."""
    p = np.asarray(points, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("node set must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(p)):
        raise ValueError("nodes must be finite")
    gaps = np.diff(p)
    ulp = np.spacing(np.maximum(np.abs(p[:-1]), np.abs(p[1:])))
    bad = np.nonzero(gaps <= 4 * ulp)[0]
    if bad.size:
        i = int(bad[0])
        raise ValueError(
            f"nodes {i} and {i + 1} are not strictly increasing and separated "
            f"by more than 4 ulp ({p[i]!r}, {p[i + 1]!r})"
        )


@dataclass(frozen=True)
class NodeSet:
    """Ascending interpolation nodes on ``interval`` tagged with their family."""

    points: np.ndarray
    interval: tuple
    family: str

    def __post_init__(self):
        lo, hi = (float(v) for v in self.interval)
        if not lo < hi:
            raise ValueError(f"interval must satisfy lo < hi, got {self.interval}")
        check_distinct(self.points)
        object.__setattr__(self, "points", _readonly(self.points))
        object.__setattr__(self, "interval", (lo, hi))

    def __len__(self):
        return self.points.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.points, dtype=dtype)


def _check_count(N):
    if int(N) != N or N < 1:
        raise ValueError(f"N must be an integer >= 1, got {N!r}")
    return int(N)


def _check_exponent(name, v):
    if not v > -1:
        raise ValueError(f"{name} must exceed -1, got {v!r}")
    return float(v)


def chebyshev_points(N, interval=(-1.0, 1.0)):
    """The ``N + 1`` Chebyshev points of the second kind on ``interval``.

    The points are computed as ``sin(pi*(2i - N)/(2N))`` so the set is exactly
    symmetric and contains the endpoints exactly.
    """
    N = _check_count(N)
    lo, hi = (float(v) for v in interval)
    if not lo < hi:
        raise ValueError(f"interval must satisfy lo < hi, got {interval}")
    y = np.sin(np.pi * np.arange(-N, N + 1, 2) / (2 * N))
    if (lo, hi) != (-1.0, 1.0):
        y = (lo + hi) / 2 + (hi - lo) / 2 * y
    y[0], y[-1] = lo, hi
    return NodeSet(y, (lo, hi), CHEBYSHEV)


def chebyshev_weights(N):
    """Simplified Chebyshev weights ``(-1)**i * delta_i`` in ascending order.

    ``delta_i`` is 1/2 at both endpoints and 1 otherwise.
    """
    N = _check_count(N)
    w = (-1.0) ** np.arange(N + 1)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def _jacobi_recurrence(M, a, b):
    """Diagonal and off-diagonal of the symmetric Jacobi matrix for the
    weight ``(1 - x)**a * (1 + x)**b``."""
    n = np.arange(M, dtype=float)
    ab = a + b
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = (b * b - a * a) / ((2 * n + ab) * (2 * n + ab + 2))
    diag[0] = (b - a) / (ab + 2)
    k = np.arange(1, M, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        off2 = (
            4 * k * (k + a) * (k + b) * (k + ab)
            / ((2 * k + ab) ** 2 * (2 * k + ab + 1) * (2 * k + ab - 1))
        )
    if M > 1:
        # k = 1 carries a removable 0/0 when a + b = -1.
        off2[0] = 4 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab))
    return diag, np.sqrt(off2)


def _gauss_jacobi(M, a, b):
    """Golub-Welsch nodes, one Newton polish on ``P_M^(a,b)``, and weights
    from the closed form in terms of ``P_M'``."""
    if M == 1:
        x = np.array([(b - a) / (a + b + 2)])
    else:
        diag, off = _jacobi_recurrence(M, a, b)
        x = eigh_tridiagonal(diag, off, eigvals_only=True)
    dfac = 0.5 * (M + a + b + 1)
    for _ in range(2):
        p = eval_jacobi(M, a, b, x)
        dp = dfac * eval_jacobi(M - 1, a + 1, b + 1, x)
        x = x - p / dp
    dp = dfac * eval_jacobi(M - 1, a + 1, b + 1, x)
    logc = (
        (a + b + 1) * np.log(2.0)
        + gammaln(M + a + 1) + gammaln(M + b + 1)
        - gammaln(M + a + b + 1) - gammaln(M + 1)
    )
    w = np.exp(logc) / ((1 - x) * (1 + x) * dp * dp)
    return x, w


@dataclass(frozen=True)
class GaussJacobiRule:
    """``M``-point Gauss rule for the weight ``(1-t)**beta_q * (1+t)**gamma_q``
    on [-1, 1]; exact for polynomials of degree ``2M - 1``."""

    nodes: np.ndarray
    weights: np.ndarray
    exponents: tuple
    order: int

    def integrate(self, f):
        return np.sum(self.weights * f(self.nodes))

    def on_interval(self, a, b):
        """Nodes and weights for ``int_a^b (b-t)**beta_q (t-a)**gamma_q g(t) dt``."""
        bq, gq = self.exponents
        h = 0.5 * (b - a)
        t = a + h * (self.nodes + 1)
        return t, self.weights * h ** (1 + bq + gq)


def gauss_jacobi_rule(M, beta_q=0.0, gamma_q=0.0):
    """Gauss-Jacobi rule of order ``M`` for ``(1-t)**beta_q (1+t)**gamma_q``."""
    M = _check_count(M)
    bq = _check_exponent("beta_q", beta_q)
    gq = _check_exponent("gamma_q", gamma_q)
    x, w = _gauss_jacobi(M, bq, gq)
    return GaussJacobiRule(_readonly(x), _readonly(w), (bq, gq), M)


def jacobi_gauss_lobatto(N, beta, gamma):
    """Jacobi-Gauss-Lobatto points for ``(1-x)**beta (1+x)**gamma``.

    Returns the ``N + 1`` nodes -1, the zeros of ``P_{N-1}^(beta+1, gamma+1)``
    and +1, together with the Lobatto quadrature weights.  Interior weights
    are ``w_j / (1 - x_j**2)`` with ``w_j`` the Gauss weights of the shifted
    parameters; the endpoint weights use the closed forms

        omega_0 = 2^(b+g+1) (g+1) G(g+1)^2 G(N) G(N+b+1) / (G(N+g+1) G(N+b+g+2))
        omega_N = the same with beta and gamma exchanged.
    """
    N = _check_count(N)
    b = _check_exponent("beta", beta)
    g = _check_exponent("gamma", gamma)
    if N > 1:
        xi, wi = _gauss_jacobi(N - 1, b + 1, g + 1)
        wi = wi / ((1 - xi) * (1 + xi))
    else:
        xi, wi = np.empty(0), np.empty(0)

    def endpoint(p, q):
        # weight at the end where (1 -+ x)**p vanishes to order p
        return np.exp(
            (b + g + 1) * np.log(2.0) + np.log(p + 1) + 2 * gammaln(p + 1)
            + gammaln(N) + gammaln(N + q + 1)
            - gammaln(N + p + 1) - gammaln(N + b + g + 2)
        )

    x = np.concatenate([[-1.0], xi, [1.0]])
    omega = np.concatenate([[endpoint(g, b)], wi, [endpoint(b, g)]])
    return NodeSet(x, (-1.0, 1.0), JACOBI_LOBATTO), _readonly(omega)


def jacobi_simplified_weights(N, beta, gamma, omega):
    """Simplified weights ``(-1)**i * sqrt(delta_i * omega_i)`` for the
    Jacobi-Gauss-Lobatto points.

    In ascending order ``delta_0 = gamma + 1`` belongs to x = -1 and
    ``delta_N = beta + 1`` to x = +1; with this pairing the weights are
    proportional to the exact polynomial barycentric weights.
    """
    N = _check_count(N)
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (N + 1,):
        raise ValueError(f"expected {N + 1} quadrature weights, got {omega.shape}")
    if np.any(omega <= 0):
        raise ValueError("quadrature weights must be positive")
    delta = np.ones(N + 1)
    delta[0] = gamma + 1
    delta[-1] = beta + 1
    return (-1.0) ** np.arange(N + 1) * np.sqrt(delta * omega)


def jacobi_moment(beta, gamma):
    """``int_{-1}^{1} (1-x)**beta (1+x)**gamma dx``."""
    return np.exp((beta + gamma + 1) * np.log(2.0) + betaln(beta + 1, gamma + 1))
