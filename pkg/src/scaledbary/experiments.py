"""Reproducible convergence experiments: evaluation grids, node builders,
error sweeps and CSV output.

Every function here is deterministic.  Wall times are the only
run-dependent quantity and can be switched off.
"""

import csv
import io
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .barycentric import BarycentricInterpolant, eval_many
from .errors import PoleError
from .maps import (LogMap, PolyMap, PowerPlain, PowerScaled, SinhMap, TanMap,
                   mapped_nodes, symmetric_power_nodes)
from .newman import newman_abs_approx, newman_sqrt_approx
from .nodes import (chebyshev_points, chebyshev_weights, jacobi_gauss_lobatto,
                    jacobi_simplified_weights)

CSV_HEADER = ("N", "max_error", "wall_time_s")
GRID_TAGS = ("xx", "xx-sym", "xxx", "x0")
MAP_NAMES = ("power", "power-raw", "sym", "log", "poly", "tan", "sinh")
GRID_SIZE = 10000


@dataclass(frozen=True)
class EvalGrid:
    points: np.ndarray
    tag: str
    params: tuple = ()


def _logspace(lo, hi, n):
    pts = np.logspace(math.log10(lo), math.log10(hi), n)
    pts[0], pts[-1] = lo, hi
    return pts


def make_grid(tag, x0=1e-10, T=1.0, delta=1e-2, n=GRID_SIZE):
    """Evaluation grid by tag.

    ``xx`` is ``linspace(0, 1, n)**8``; ``xx-sym`` mirrors it onto [-1, 1]
    sharing the origin (``2n - 1`` points); ``xxx`` is ``n`` log-spaced
    points on ``[x0, T]``; ``x0`` is ``n`` log-spaced points on ``[delta, 1]``.
    """
    if tag == "xx":
        pts, params = np.linspace(0.0, 1.0, n) ** 8, (n,)
    elif tag == "xx-sym":
        xx = np.linspace(0.0, 1.0, n) ** 8
        pts, params = np.concatenate([-xx[:0:-1], xx]), (n,)
    elif tag == "xxx":
        if not 0 < x0 < T:
            raise ValueError("xxx grid needs 0 < x0 < T")
        pts, params = _logspace(x0, T, n), (x0, T, n)
    elif tag == "x0":
        if not 0 < delta < 1:
            raise ValueError("x0 grid needs 0 < delta < 1")
        pts, params = _logspace(delta, 1.0, n), (delta, n)
    else:
        raise ValueError(f"unknown grid tag {tag!r}; expected one of {GRID_TAGS}")
    pts.setflags(write=False)
    return EvalGrid(pts, tag, params)


def target_function(name, alpha=0.5):
    """Test functions addressed by name."""
    table = {
        "abs": np.abs,
        "pow": lambda x: np.abs(x) ** alpha,
        "sqrt": lambda x: np.sqrt(np.abs(x)),
        "log": np.log,
        "const": lambda x: np.full_like(np.asarray(x, float), 1.0),
    }
    if name not in table:
        raise ValueError(f"unknown target function {name!r}; expected one of {sorted(table)}")
    return table[name]


@dataclass(frozen=True)
class NodeSpec:
    """Which nodes and weights to build for a given ``N``.

    ``map`` is one of ``MAP_NAMES``.  For ``sym`` the count ``N`` is the
    total number of nodes and must be even.  For every other map ``N + 1``
    Chebyshev (or Jacobi-Gauss-Lobatto with ``weights="jacobi"``) points are
    mapped.
    """

    map: str = "power"
    s: float = 2.0
    alpha: float = 1.0
    T: float = 1.0
    x0: float = 1e-10
    a: float = 1.0
    p: int = 1
    eps: float = 0.1
    weights: str = "chebyshev"
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.map not in MAP_NAMES:
            raise ValueError(f"unknown map {self.map!r}; expected one of {MAP_NAMES}")
        if self.weights not in ("chebyshev", "jacobi"):
            raise ValueError(f"unknown weight family {self.weights!r}")

    def singular_map(self):
        if self.map == "power":
            return PowerScaled(T=self.T, s=self.s, alpha=self.alpha)
        if self.map == "power-raw":
            return PowerPlain(T=self.T, s=self.s)
        if self.map == "log":
            return LogMap(x0=self.x0, T=self.T)
        if self.map == "poly":
            return PolyMap(a=self.a, p=self.p)
        if self.map == "tan":
            return TanMap(eps=self.eps)
        if self.map == "sinh":
            return SinhMap(eps=self.eps)
        raise ValueError("the sym map builds its nodes directly")

    def build(self, N):
        if self.map == "sym":
            if N % 2 or N < 2:
                raise ValueError("sym nodes need an even total count N >= 2")
            nodes, w = symmetric_power_nodes(N // 2, self.T, self.s / self.alpha)
            return nodes.points, w
        m = self.singular_map()
        if self.weights == "jacobi":
            base, omega = jacobi_gauss_lobatto(N, self.beta, self.gamma)
            w = jacobi_simplified_weights(N, self.beta, self.gamma, omega)
            lo, hi = m.reference_interval
            pts = lo + (hi - lo) * (np.asarray(base.points) + 1) / 2
            pts[0], pts[-1] = lo, hi
            x = m.apply(pts)
        else:
            x = mapped_nodes(m, chebyshev_points(N, m.reference_interval)).points
            w = chebyshev_weights(N)
        return np.asarray(x), np.asarray(w)


@dataclass(frozen=True)
class ConvergenceRecord:
    """One row of an error sweep; ``status`` is ``"pole"`` when evaluation
    hit a pole of the interpolant (``max_error`` is then nan)."""

    N: int
    max_error: float
    wall_time: float = 0.0
    status: str = "ok"

    def __post_init__(self):
        if self.status == "ok" and not (math.isfinite(self.max_error) and self.max_error >= 0):
            raise ValueError(f"max_error must be finite and >= 0, got {self.max_error!r}")


def max_error(x, w, f, grid_points):
    """Build the interpolant of ``f`` and return its max error on the grid."""
    r = BarycentricInterpolant(x, w, f(np.array(x)))
    return float(np.max(np.abs(eval_many(r, grid_points) - f(np.asarray(grid_points)))))


def _timed(fn, timing):
    t0 = time.perf_counter()
    value = fn()
    return value, (time.perf_counter() - t0) if timing else 0.0


def run_converge(f, spec, Ns, grid, timing=True):
    """Max-norm errors over ``grid`` for each ``N``; rows ordered by ``N``.

    A pole of the interpolant on the grid flags the row instead of aborting.
    """
    rows = []
    for N in sorted(int(n) for n in Ns):
        t0 = time.perf_counter()
        try:
            x, w = spec.build(N)
            err = max_error(x, w, f, grid.points)
            status = "ok"
        except PoleError:
            err, status = float("nan"), "pole"
        dt = (time.perf_counter() - t0) if timing else 0.0
        rows.append(ConvergenceRecord(N, err, dt, status))
    return rows


def run_compare_newman(kind, Ns, s=None, timing=True):
    """Newman's approximant against scaled interpolation, per ``N``.

    ``abs``: |x| on the ``xx-sym`` grid; the scaled method uses symmetric
    power nodes (``N`` in total, ``s`` default 10).  ``sqrt``: sqrt(x) on
    ``xx`` against ``PowerPlain`` (``s`` default 20) with ``N + 1`` nodes.
    Returns ``(method, record)`` pairs.
    """
    if kind == "abs":
        grid = make_grid("xx-sym").points
        f = np.abs
        spec = NodeSpec(map="sym", s=10.0 if s is None else s)
        newman = newman_abs_approx
    elif kind == "sqrt":
        grid = make_grid("xx").points
        f = np.sqrt
        spec = NodeSpec(map="power-raw", s=20.0 if s is None else s)
        newman = newman_sqrt_approx
    else:
        raise ValueError("compare supports 'abs' and 'sqrt'")
    out = []
    for N in sorted(int(n) for n in Ns):
        e, dt = _timed(lambda: float(np.max(np.abs(newman(N)(grid) - f(grid)))), timing)
        out.append(("newman", ConvergenceRecord(N, e, dt)))
        if kind == "abs" and N % 2:
            continue
        e, dt = _timed(lambda: max_error(*spec.build(N), f, grid), timing)
        out.append(("scaled", ConvergenceRecord(N, e, dt)))
    return out


DEFAULT_COMPARE_PARAMS = {
    "poly": (("a", 0.1), ("a", 0.01), ("a", 0.001)),
    "tan": (("eps", 1e-1), ("eps", 1e-2), ("eps", 1e-3), ("eps", 1e-4)),
    "sinh": (("eps", 1e-1), ("eps", 1e-2), ("eps", 1e-3), ("eps", 1e-4)),
    "power": (("s", 2.0), ("s", 5.0), ("s", 10.0)),
}


@dataclass(frozen=True)
class CompareRow:
    map: str
    parameter: str
    value: float
    N: int
    max_error: float
    wall_time: float = 0.0


def run_compare_maps(alpha, N, params=None, p=1, timing=True):
    """Errors for ``|x|**alpha`` on [-1, 1] (grid ``xx-sym``) under the
    polynomial, tan and sinh maps of ``N + 1`` Chebyshev points and under
    symmetric power nodes (``N`` in total).  ``params`` maps a map name to
    ``(parameter name, value)`` pairs; callers may override any subset.
    """
    params = dict(DEFAULT_COMPARE_PARAMS, **(params or {}))
    grid = make_grid("xx-sym").points
    f = target_function("pow", alpha)
    rows = []
    for name in ("poly", "tan", "sinh", "power"):
        for pname, value in params[name]:
            if name == "power":
                spec = NodeSpec(map="sym", s=value)
            else:
                spec = NodeSpec(map=name, p=p, **{pname: value})
            t0 = time.perf_counter()
            try:
                err = max_error(*spec.build(N), f, grid)
            except PoleError:
                err = float("nan")
            dt = (time.perf_counter() - t0) if timing else 0.0
            rows.append(CompareRow(name, pname, float(value), int(N), err, dt))
    return rows


def best_by_map(rows):
    """Smallest error per map name (nan rows ignored)."""
    best = {}
    for r in rows:
        if math.isfinite(r.max_error) and r.max_error < best.get(r.map, math.inf):
            best[r.map] = r.max_error
    return best


def fmt(v):
    """Scientific notation with 17 significant digits (round-trip exact)."""
    v = float(v)
    return "nan" if math.isnan(v) else f"{v:.16e}"


def records_to_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([r.N, fmt(r.max_error), fmt(r.wall_time)])
    return buf.getvalue()


def read_records_csv(text):
    """Parse the ``N,max_error,wall_time_s`` schema back into records."""
    reader = csv.DictReader(io.StringIO(text))
    missing = [c for c in CSV_HEADER[:2] if c not in (reader.fieldnames or ())]
    if missing:
        raise ValueError(f"CSV lacks columns {missing}")
    out = []
    for row in reader:
        e = float(row["max_error"])
        status = "ok" if math.isfinite(e) else "pole"
        out.append(ConvergenceRecord(int(row["N"]), e, float(row.get("wall_time_s") or 0), status))
    return out


@dataclass
class Table:
    """Small CSV builder for the non-sweep outputs."""

    header: tuple
    rows: list = field(default_factory=list)

    def add(self, *values):
        self.rows.append([v if isinstance(v, (str, int)) else fmt(v) for v in values])

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        return buf.getvalue()
