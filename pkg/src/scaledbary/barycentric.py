"""Second-kind barycentric rational interpolation.

    r(x) = sum_i w_i f_i / (x - x_i)  /  sum_i w_i / (x - x_i)

Nodes and weights are real; values may be real or complex.  A point that is
bitwise equal to a node returns the stored value, and any other point whose
denominator vanishes exactly raises ``PoleError``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import PoleError
from .nodes import NodeSet, check_distinct

# rows of the (points x nodes) Cauchy matrix formed at once
_CHUNK = 4096


def _readonly(a, dtype=None):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class BarycentricInterpolant:
    """Immutable bundle of ascending nodes, nonzero weights and values."""

    nodes: np.ndarray
    weights: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.nodes, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        v = np.asarray(self.values)
        if x.ndim != 1 or x.size == 0:
            raise ValueError("an interpolant needs at least one node")
        if w.shape != x.shape or v.shape != x.shape:
            raise ValueError(
                f"nodes, weights and values must have equal length "
                f"({x.size}, {w.size}, {v.size})"
            )
        check_distinct(x)
        if np.any(w == 0) or not np.all(np.isfinite(w)):
            raise ValueError("barycentric weights must be finite and nonzero")
        vdtype = complex if np.iscomplexobj(v) else float
        object.__setattr__(self, "nodes", _readonly(x, float))
        object.__setattr__(self, "weights", _readonly(w, float))
        object.__setattr__(self, "values", _readonly(v, vdtype))

    def __len__(self):
        return self.nodes.size

    @property
    def degree(self):
        return self.nodes.size - 1

    def __call__(self, x):
        """Evaluate at a scalar or an array of points."""
        x = np.asarray(x, dtype=float)
        out = eval_many(self, x.ravel()).reshape(x.shape)
        return out[()] if out.ndim == 0 else out

    def derivative(self, xi):
        return eval_derivative(self, xi)

    def diff_matrix(self):
        return differentiation_matrix(self)

    def with_values(self, values):
        """Same nodes and weights carrying new nodal values."""
        return BarycentricInterpolant(self.nodes, self.weights, values)


def build_interpolant(nodes, weights, sample):
    """Construct an interpolant from nodes, weights and data.

    ``sample`` is either a callable (applied once to the whole node array) or
    the sequence of nodal values.
    """
    x = np.asarray(nodes.points if isinstance(nodes, NodeSet) else nodes, dtype=float)
    values = sample(x.copy()) if callable(sample) else sample
    values = np.asarray(values)
    if values.shape != x.shape:
        raise ValueError(f"sample produced shape {values.shape}, expected {x.shape}")
    return BarycentricInterpolant(x, weights, values)


def eval_many(r, xs):
    """Evaluate ``r`` at each entry of the 1-d array ``xs``.

    Costs O(len(xs) * N) in chunks of bounded memory.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1:
        raise ValueError("eval_many expects a 1-d array of points")
    x, w, f = r.nodes, r.weights, r.values
    out = np.empty(xs.size, dtype=f.dtype)
    poles = []
    for start in range(0, xs.size, _CHUNK):
        chunk = xs[start:start + _CHUNK]
        diff = chunk[:, None] - x[None, :]
        hit = diff == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            c = w / diff
            num = c @ f
            den = c.sum(axis=1)
            res = num / den
        if hit.any():
            rows, cols = np.nonzero(hit)
            res[rows] = f[cols]
        bad = (den == 0) & ~hit.any(axis=1)
        if bad.any():
            poles.extend(chunk[bad].tolist())
        out[start:start + _CHUNK] = res
    if poles:
        raise PoleError(poles)
    return out


def evaluate(r, x):
    """Scalar evaluation; bitwise node hits return the stored value."""
    return eval_many(r, np.array([float(x)]))[0]


def eval_derivative(r, xi):
    """First derivative of ``r`` at a scalar point.

    At a node ``x_j`` this is row ``j`` of the differentiation matrix applied
    to the values.  Elsewhere the first-order divided-difference form is used:
    with ``t_i = w_i/(xi - x_i)`` and ``r[xi, x_i] = (r(xi) - f_i)/(xi - x_i)``,

        r'(xi) = sum_i t_i r[xi, x_i] / sum_i t_i.
    """
    xi = float(xi)
    x, w, f = r.nodes, r.weights, r.values
    hit = np.nonzero(x == xi)[0]
    if hit.size:
        j = int(hit[0])
        mask = np.arange(x.size) != j
        row = (w[mask] / w[j]) / (xi - x[mask])
        return np.sum(row * (f[mask] - f[j]))
    rx = evaluate(r, xi)
    d = xi - x
    t = w / d
    return np.sum(t * (rx - f) / d) / np.sum(t)


def differentiation_matrix(r):
    """Dense first-derivative collocation matrix on the nodes of ``r``.

    ``D[i, j] = (w_j / w_i) / (x_i - x_j)`` off the diagonal and
    ``D[i, i] = -sum_{j != i} D[i, j]`` so that every row annihilates
    constants.
    """
    x, w = r.nodes, r.weights
    n = x.size
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    D = (w[None, :] / w[:, None]) / diff
    np.fill_diagonal(D, 0.0)
    D[np.diag_indices(n)] = -D.sum(axis=1)
    return D


def cardinal_matrix(nodes, weights, t):
    """Values of every cardinal function ``L_i`` at the points ``t``.

    Row ``m`` is the interpolant of the unit vectors evaluated at ``t[m]``,
    so ``cardinal_matrix(x, w, t) @ f`` equals ``eval_many`` on data ``f``.
    """
    x = np.asarray(nodes, dtype=float)
    w = np.asarray(weights, dtype=float)
    t = np.asarray(t, dtype=float)
    diff = t[:, None] - x[None, :]
    hit = diff == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        c = w / diff
        den = c.sum(axis=1, keepdims=True)
        c = c / den
    rows, cols = np.nonzero(hit)
    c[rows] = 0.0
    c[rows, cols] = 1.0
    bad = (den[:, 0] == 0) & ~hit.any(axis=1)
    if bad.any():
        raise PoleError(t[bad].tolist())
    return c
