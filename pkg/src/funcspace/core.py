"""Representations of measurable functions on the supported domains.

Supported domains: the one-dimensional torus [0, 2*pi], the unit interval
(0, 1), the unit square (0, 1)^2, R^d through radial profiles, and the
half-line (0, infinity).  Every function value object is immutable after
construction and all operations are pure, so everything here is safe to
evaluate concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import FuncspaceError

TWO_PI = 2.0 * math.pi


class DomainKind(Enum):
    TORUS_1D = "torus1d"
    INTERVAL_1D = "interval1d"
    SQUARE_2D = "square2d"
    RADIAL_RD = "radial_rd"
    HALF_LINE = "half_line"


@dataclass(frozen=True)
class Domain:
    """A supported base domain with its total Lebesgue measure."""

    kind: DomainKind
    dimension: int = 1
    total_measure: float = math.inf

    def __post_init__(self):
        if self.kind is DomainKind.RADIAL_RD and self.dimension < 1:
            raise FuncspaceError("radial domains need dimension >= 1")

    @staticmethod
    def torus() -> "Domain":
        return Domain(DomainKind.TORUS_1D, 1, TWO_PI)

    @staticmethod
    def interval() -> "Domain":
        # bounded domains are normalized to measure 1
        return Domain(DomainKind.INTERVAL_1D, 1, 1.0)

    @staticmethod
    def square() -> "Domain":
        return Domain(DomainKind.SQUARE_2D, 2, 1.0)

    @staticmethod
    def radial(d: int) -> "Domain":
        return Domain(DomainKind.RADIAL_RD, d, math.inf)

    @staticmethod
    def half_line() -> "Domain":
        return Domain(DomainKind.HALF_LINE, 1, math.inf)


def ball_volume(d: int, r: float = 1.0) -> float:
    """Volume of the d-dimensional ball of radius r."""
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0) * r ** d


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere S^{d-1} in R^d."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


# ---------------------------------------------------------------------------
# step functions
# ---------------------------------------------------------------------------


class StepFunction:
    """Exact piecewise-constant nonnegative function on (0, M) or (0, inf).

    Cell i is [edge_{i-1}, edge_i) with edge_0 := 0; beyond the last edge the
    function equals ``tail_value`` (which must be 0 on infinite domains).
    Summations over cells are done over the value-sorted multiset of
    (measure, value) pairs with math.fsum, so any two step functions carrying
    the same multiset (e.g. f and its rearrangement) produce bit-identical
    norms and distribution values.
    """

    __slots__ = ("edges", "values", "tail_value", "monotone")

    def __init__(self, edges: Sequence[float], values: Sequence[float],
                 tail_value: float = 0.0, monotone: Optional[bool] = None):
        edges = np.asarray(edges, dtype=float)
        values = np.asarray(values, dtype=float)
        if edges.ndim != 1 or values.ndim != 1 or len(edges) != len(values):
            raise FuncspaceError("edges and values must be 1-d of equal length")
        if len(edges) == 0:
            raise FuncspaceError("need at least one cell")
        if edges[0] <= 0 or np.any(np.diff(edges) <= 0):
            raise FuncspaceError("edges must be strictly increasing and positive")
        if np.any(values < 0) or tail_value < 0:
            raise FuncspaceError("step function values must be nonnegative")
        self.edges = edges
        self.values = values
        self.tail_value = float(tail_value)
        if monotone is None:
            monotone = bool(np.all(np.diff(values) <= 0) and
                            (tail_value <= values[-1]))
        else:
            if monotone and (np.any(np.diff(values) > 0) or tail_value > values[-1]):
                raise FuncspaceError("monotone flag contradicts the values")
        self.monotone = monotone

    # -- basic geometry ----------------------------------------------------

    @property
    def measures(self) -> np.ndarray:
        m = np.diff(self.edges, prepend=0.0)
        return m

    @property
    def support_bound(self) -> float:
        """Upper bound for the support (inf if the tail value is positive)."""
        if self.tail_value > 0:
            return math.inf
        nz = np.nonzero(self.values)[0]
        if len(nz) == 0:
            return 0.0
        return float(self.edges[nz[-1]])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.edges, t, side="right")
        out = np.where(idx < len(self.values),
                       self.values[np.minimum(idx, len(self.values) - 1)],
                       self.tail_value)
        return out if out.ndim else float(out)

    def _sorted_cells(self):
        """(measure, value) pairs sorted by decreasing value then measure.

        Summations over this canonical order are bit-identical for any two
        step functions carrying the same multiset of cells, which makes
        rearrangement invariants exact.
        """
        m = self.measures
        order = np.lexsort((m, -self.values))
        return m[order], self.values[order]

    # -- exact integrals ---------------------------------------------------

    def integral_power(self, p: float) -> float:
        """Integral of f^p over the whole domain (canonical summation order)."""
        if self.tail_value > 0:
            raise FuncspaceError("f^p has infinite integral with positive tail")
        m, v = self._sorted_cells()
        keep = v > 0
        return float(np.sum(m[keep] * v[keep] ** p))

    def log_integral_power(self, p: float) -> float:
        """log of the integral of f^p, computed stably for very large p."""
        m, v = self._sorted_cells()
        keep = v > 0
        if not np.any(keep):
            return -math.inf
        lg = np.log(m[keep]) + p * np.log(v[keep])
        top = float(np.max(lg))
        return top + math.log(float(np.sum(np.exp(lg - top))))

    def cumulative(self, t: float) -> float:
        """Exact integral of f over (0, t)."""
        if t <= 0:
            return 0.0
        total = 0.0
        prev = 0.0
        for e, v in zip(self.edges, self.values):
            hi = min(e, t)
            if hi > prev:
                total += (hi - prev) * v
            prev = e
            if e >= t:
                break
        if t > self.edges[-1]:
            total += (t - self.edges[-1]) * self.tail_value
        return total

    def to_records(self) -> dict:
        return {
            "kind": "step",
            "edges": [float(x) for x in self.edges],
            "values": [float(x) for x in self.values],
            "tail_value": self.tail_value,
        }


# ---------------------------------------------------------------------------
# sampled functions on uniform grids
# ---------------------------------------------------------------------------


class GridFunction:
    """Uniformly sampled function on the torus, interval or square."""

    __slots__ = ("domain", "samples", "resolution")

    def __init__(self, domain: Domain, samples: np.ndarray):
        samples = np.asarray(samples, dtype=float)
        if domain.kind is DomainKind.SQUARE_2D:
            if samples.ndim != 2 or samples.shape[0] != samples.shape[1]:
                raise FuncspaceError("square grid functions need an NxN array")
            self.resolution = samples.shape[0]
        elif domain.kind in (DomainKind.TORUS_1D, DomainKind.INTERVAL_1D):
            if samples.ndim != 1:
                raise FuncspaceError("1-d grid functions need a vector")
            self.resolution = samples.shape[0]
        else:
            raise FuncspaceError("grid functions only live on bounded domains")
        if not np.all(np.isfinite(samples)):
            raise FuncspaceError("grid samples must be finite")
        self.domain = domain
        self.samples = samples

    @property
    def cell_measure(self) -> float:
        n_cells = self.samples.size
        return self.domain.total_measure / n_cells

    def flat_abs(self) -> np.ndarray:
        return np.abs(self.samples).ravel()


# ---------------------------------------------------------------------------
# radial functions on R^d
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialFunction:
    """f(x) = profile(|x|) on R^d with closed-form radial derivatives.

    ``derivatives[k-1]`` is the k-th derivative of the profile.  The profile
    must be nonnegative wherever it feeds a rearrangement.  ``monotone`` means
    a nonincreasing profile;  ``unimodal_derivative`` certifies that
    |profile'| increases then decreases (single interior maximum), which the
    rearrangement machinery exploits for exact two-branch root-finding.
    """

    dimension: int
    profile: Callable[[np.ndarray], np.ndarray]
    derivatives: tuple = ()
    monotone: bool = True
    support_radius: float = math.inf
    unimodal_derivative: bool = True
    decay_scale: float = 1.0  # r-scale beyond which the profile is negligible
    name: str = "radial"

    def grad_magnitude(self, r):
        if not self.derivatives:
            raise FuncspaceError(f"{self.name}: no derivative available")
        return np.abs(self.derivatives[0](r))

    def lp_norm_radial(self, p: float, n_nodes: int = 2 ** 14,
                       r_min: float = 1e-8) -> float:
        """L_p(R^d) norm by geometric radial quadrature (sup for p=inf)."""
        r_max = self.support_radius
        if not math.isfinite(r_max):
            r_max = max(40.0 * self.decay_scale, 1e2)
        r = np.geomspace(r_min, r_max, n_nodes)
        vals = np.abs(self.profile(r))
        if math.isinf(p):
            return float(np.max(vals))
        mid = np.sqrt(r[1:] * r[:-1])
        edges = np.concatenate(([0.0], mid, [r_max]))
        w = np.diff(edges)
        integ = float(np.sum(vals ** p * r ** (self.dimension - 1) * w))
        return (sphere_area(self.dimension) * integ) ** (1.0 / p)


# ---------------------------------------------------------------------------
# one-dimensional closed-form profiles (corpus plumbing)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProfileFunction:
    """Closed-form function on (0, length) split into monotone pieces.

    ``pieces`` is a list of (a, b, increasing) intervals covering (0, length)
    on which the function is monotone; this makes the distribution function
    computable by root-finding on each branch.
    """

    func: Callable[[np.ndarray], np.ndarray]
    length: float
    pieces: tuple = ()
    sup_value: float = math.inf
    name: str = "profile"

    def __call__(self, t):
        return self.func(np.asarray(t, dtype=float))

    def monotone_nonincreasing(self) -> bool:
        return len(self.pieces) == 1 and not self.pieces[0][2]


# ---------------------------------------------------------------------------
# distribution function and L_p norms
# ---------------------------------------------------------------------------


def _radial_distribution(f: RadialFunction, lam: float) -> float:
    """|{ |f| > lam }| for a nonincreasing radial profile, by root-finding."""
    g = f.profile
    r_hi = f.support_radius if math.isfinite(f.support_radius) \
        else max(100.0 * f.decay_scale, 1.0)
    g0 = float(g(np.asarray(1e-12)))
    if lam >= g0:
        return 0.0
    # expand until g(r_hi) <= lam
    for _ in range(200):
        if float(g(np.asarray(r_hi))) <= lam:
            break
        r_hi *= 2.0
    else:
        return math.inf
    r = brentq(lambda x: float(g(np.asarray(x))) - lam, 1e-12, r_hi,
               xtol=1e-15, rtol=1e-14)
    return ball_volume(f.dimension, r)


def _profile_distribution(f: ProfileFunction, lam: float) -> float:
    """|{ |f| > lam }| for a piecewise-monotone 1-d profile."""
    total = 0.0
    for (a, b, increasing) in f.pieces:
        lo = max(a, 1e-300)
        fa = float(f.func(np.asarray(lo)))
        fb = float(f.func(np.asarray(b - 1e-15 * max(1.0, abs(b)))))
        v_left, v_right = fa, fb
        if increasing:
            if lam < v_left:
                total += b - a
            elif lam >= v_right:
                pass
            else:
                x = brentq(lambda x: float(f.func(np.asarray(x))) - lam,
                           lo, b, xtol=1e-15, rtol=1e-14)
                total += b - x
        else:
            if lam < v_right:
                total += b - a
            elif lam >= v_left:
                pass
            else:
                x = brentq(lambda x: float(f.func(np.asarray(x))) - lam,
                           lo, b, xtol=1e-15, rtol=1e-14)
                total += x - a
    return total


def distribution_function(f, lam: float) -> float:
    """Measure of {x : |f(x)| > lam}.

    Exact (up to root-finding tolerance) for step functions, monotone radial
    functions and piecewise-monotone profiles; by cell counting for sampled
    grid functions.  Nonincreasing and right-continuous in lam.
    """
    if lam < 0:
        raise FuncspaceError("level must be nonnegative")
    if isinstance(f, StepFunction):
        if f.tail_value > lam:
            return math.inf
        m, v = f._sorted_cells()
        return float(np.sum(m[v > lam]))
    if isinstance(f, GridFunction):
        count = int(np.count_nonzero(f.flat_abs() > lam))
        return count * f.cell_measure
    if isinstance(f, RadialFunction):
        if not f.monotone:
            raise FuncspaceError("distribution of a non-monotone radial "
                                 "profile needs the rearrangement fallback")
        return _radial_distribution(f, lam)
    if isinstance(f, ProfileFunction):
        return _profile_distribution(f, lam)
    raise FuncspaceError(f"unsupported function type {type(f)!r}")


def lp_norm(f, p: float, profile_nodes: int = 2 ** 12) -> float:
    """L_p norm for p in [1, inf].

    Exact for step functions; quadrature with recorded resolution for grid,
    radial and profile functions.
    """
    if p < 1:
        raise FuncspaceError("lp_norm requires p >= 1")
    if isinstance(f, StepFunction):
        if math.isinf(p):
            return float(max(np.max(f.values), f.tail_value))
        if p > 64:
            lg = f.log_integral_power(p)
            return math.exp(lg / p)
        return f.integral_power(p) ** (1.0 / p)
    if isinstance(f, GridFunction):
        a = f.flat_abs()
        if math.isinf(p):
            return float(np.max(a))
        if p > 64:
            pos = a[a > 0]
            if pos.size == 0:
                return 0.0
            lg = p * np.log(pos) + math.log(f.cell_measure)
            top = float(np.max(lg))
            return math.exp((top + math.log(float(np.sum(np.exp(lg - top))))) / p)
        return float((np.sum(a ** p) * f.cell_measure) ** (1.0 / p))
    if isinstance(f, RadialFunction):
        return f.lp_norm_radial(p)
    if isinstance(f, ProfileFunction):
        t = np.geomspace(max(1e-12, f.length * 1e-12), f.length, profile_nodes)
        vals = np.abs(f(t))
        if math.isinf(p):
            return float(np.max(vals))
        edges = np.concatenate(([0.0], np.sqrt(t[1:] * t[:-1]), [f.length]))
        w = np.diff(edges)
        return float(np.sum(vals ** p * w) ** (1.0 / p))
    raise FuncspaceError(f"unsupported function type {type(f)!r}")
