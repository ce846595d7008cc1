"""Finite and fractional differences and moduli of smoothness.

The modulus sup over |h| <= t is sampled on a global geometric magnitude
ladder.  Because the ladder is closed under doubling and sample sets nest,
the sampled moduli are exactly nondecreasing in t and satisfy the doubling
bound omega(2t) <= 2^k omega(t) without sampling slack.

Fractional differences use the series with offsets (s - j)h truncated at J;
J comes from the exact tail identity sum_{j>J} |binom(s,j)| = |binom(s-1,J)|
(evaluated through log-gamma), capped at a configurable maximum with the
achieved tail always reported.  Trigonometric fields bypass the series with
the exact per-frequency multiplier (1 - e^{-inh})^s e^{insh}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import gammaln

from .core import (Domain, DomainKind, GridFunction, RadialFunction,
                   StepFunction, sphere_area, TWO_PI)
from .errors import FuncspaceError

LADDER_RATIO = 2.0 ** -0.25  # magnitude ladder; closed under doubling
N_H_DEFAULT = 32
N_DIR_DEFAULT = 16


# ---------------------------------------------------------------------------
# fractional binomials and the truncation order
# ---------------------------------------------------------------------------


def fractional_binomial(s: float, j: int) -> float:
    """binom(s, j) by the stable product recurrence; binom(s, 0) = 1."""
    if j < 0:
        raise FuncspaceError("binomial index must be nonnegative")
    out = 1.0
    for k in range(1, j + 1):
        out *= (s - k + 1) / k
    return out


def binomial_tail(s: float, J: int) -> float:
    """sum_{j > J} |binom(s, j)|, exactly |binom(s-1, J)| for J >= s.

    Computed through log-gamma with the sine reflection, so it is stable for
    arbitrarily large J.  Zero for integer s (the sum is finite).
    """
    if s <= 0:
        raise FuncspaceError("order must be positive")
    if float(s).is_integer():
        return 0.0
    if J < s:
        # crude but safe: bound by the full sum from ceil(s)
        J = int(math.ceil(s))
    lg = (gammaln(s + 1) - math.log(math.pi) +
          math.log(abs(math.sin(math.pi * s))) +
          gammaln(J + 1 - s) - gammaln(J + 1))
    # |binom(s-1, J)| = Gamma(s) |sin(pi s)| Gamma(J+1-s) / (pi Gamma(J+1));
    # the gammaln(s+1) above is Gamma(s)*s, so divide s back out
    return math.exp(lg) / s


@dataclass(frozen=True)
class DifferenceOrder:
    """Order s > 0 with the truncation data for the fractional series."""

    s: float
    eps_trunc: float = 1e-10
    j_cap: int = 20000
    J: int = field(init=False, default=0)
    achieved_tail: float = field(init=False, default=0.0)

    def __post_init__(self):
        if self.s <= 0:
            raise FuncspaceError("difference order must be positive")
        if self.integer:
            object.__setattr__(self, "J", int(round(self.s)))
            object.__setattr__(self, "achieved_tail", 0.0)
            return
        lo, hi = max(2, int(math.ceil(self.s))), self.j_cap
        if binomial_tail(self.s, hi) > self.eps_trunc:
            J = hi
        else:
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if binomial_tail(self.s, mid) <= self.eps_trunc:
                    hi = mid
                else:
                    lo = mid
            J = hi
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "achieved_tail", binomial_tail(self.s, J))

    @property
    def integer(self) -> bool:
        return float(self.s).is_integer()

    def coefficients(self) -> np.ndarray:
        """(-1)^j binom(s, j) for j = 0..J."""
        J = self.J
        c = np.empty(J + 1)
        c[0] = 1.0
        for j in range(1, J + 1):
            c[j] = -c[j - 1] * (self.s - j + 1) / j
        return c

    def offsets(self, h: float) -> np.ndarray:
        """The displacement offsets (s - j) h, honored literally."""
        return (self.s - np.arange(self.J + 1)) * h


# ---------------------------------------------------------------------------
# field evaluators on the supported domains
# ---------------------------------------------------------------------------


class TorusFunction:
    """Closed-form function on the torus [0, 2*pi].

    Optionally carries complex Fourier coefficients {n: c_n}, in which case
    fractional differences use the exact multiplier, and optional analytic
    hooks for derivatives and difference norms.
    """

    def __init__(self, fn: Callable, coeffs: Optional[dict] = None,
                 derivatives: Sequence[Callable] = (),
                 analytic_difference_norm: Optional[Callable] = None,
                 sup_bound: Optional[float] = None, name: str = "torus_fn",
                 n_grid: int = 4096):
        self.fn = fn
        self.coeffs = coeffs
        self.derivatives = tuple(derivatives)
        self.analytic_difference_norm = analytic_difference_norm
        self.sup_bound = sup_bound
        self.name = name
        self.n_grid = n_grid
        self.domain = Domain.torus()

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def _grid(self) -> np.ndarray:
        return (np.arange(self.n_grid) + 0.5) * (TWO_PI / self.n_grid)

    def _pnorm_values(self, vals: np.ndarray, p: float) -> float:
        a = np.abs(vals)
        if math.isinf(p):
            return float(np.max(a))
        return float(((TWO_PI / a.size) * np.sum(a ** p)) ** (1.0 / p))

    def difference_norm(self, order: DifferenceOrder, h: float, p: float,
                        truncation_report: Optional[list] = None) -> float:
        if self.analytic_difference_norm is not None:
            v = self.analytic_difference_norm(order.s, p, h)
            if v is not None:
                return v
        x = self._grid()
        if self.coeffs is not None:
            vals = np.zeros_like(x, dtype=complex)
            for n, c in self.coeffs.items():
                if n == 0:
                    continue  # constants are annihilated for any s > 0
                mult = (1.0 - np.exp(-1j * n * h)) ** order.s \
                    * np.exp(1j * n * order.s * h)
                vals += c * mult * np.exp(1j * n * x)
            return self._pnorm_values(vals.real if _is_real(self.coeffs)
                                      else vals, p)
        c = order.coefficients()
        offs = order.offsets(h)
        vals = np.zeros_like(x)
        for cj, oj in zip(c, offs):
            vals += cj * self.fn(np.mod(x + oj, TWO_PI))
        if truncation_report is not None and not order.integer:
            sup = self.sup_bound if self.sup_bound is not None \
                else float(np.max(np.abs(self.fn(x))))
            truncation_report.append(order.achieved_tail * sup)
        return self._pnorm_values(vals, p)


def _is_real(coeffs: dict) -> bool:
    for n, c in coeffs.items():
        if n == 0:
            continue
        if abs(np.conj(coeffs.get(-n, 0.0)) - c) > 1e-14 * max(1.0, abs(c)):
            return False
    return True


class LineFunction:
    """Closed-form function on R with a finite evaluation window."""

    def __init__(self, fn: Callable, support: float = 10.0,
                 derivatives: Sequence[Callable] = (), name: str = "line_fn",
                 n_grid: int = 8192):
        self.fn = fn
        self.support = support  # |x| > support contributes negligibly
        self.derivatives = tuple(derivatives)
        self.name = name
        self.n_grid = n_grid
        self.domain = Domain.radial(1)

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def difference_norm(self, order: DifferenceOrder, h: float, p: float,
                        truncation_report: Optional[list] = None) -> float:
        pad = (order.s + 1.0) * abs(h)
        lo, hi = -self.support - pad, self.support + pad
        x = np.linspace(lo, hi, self.n_grid)
        dx = x[1] - x[0]
        c = order.coefficients()
        vals = np.zeros_like(x)
        for cj, oj in zip(c, order.offsets(h)):
            vals += cj * self.fn(x + oj)
        if truncation_report is not None and not order.integer:
            sup = float(np.max(np.abs(self.fn(x))))
            truncation_report.append(order.achieved_tail * sup)
        a = np.abs(vals)
        if math.isinf(p):
            return float(np.max(a))
        return float((np.sum(a ** p) * dx) ** (1.0 / p))


class IntervalFunction:
    """Closed-form function on (0, 1); differences live on the shrunken set."""

    def __init__(self, fn: Callable, derivatives: Sequence[Callable] = (),
                 name: str = "interval_fn", n_grid: int = 4096):
        self.fn = fn
        self.derivatives = tuple(derivatives)
        self.name = name
        self.n_grid = n_grid
        self.domain = Domain.interval()

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def admissible(self, k: float, h: float):
        lo = max(0.0, -k * h)
        hi = min(1.0, 1.0 - k * h)
        if hi <= lo:
            return None
        return lo, hi

    def difference_norm(self, order: DifferenceOrder, h: float, p: float,
                        truncation_report: Optional[list] = None) -> float:
        if not order.integer:
            raise FuncspaceError("fractional moduli are supported on the "
                                 "torus and the line only")
        k = int(order.s)
        rect = self.admissible(k, h)
        if rect is None:
            raise FuncspaceError(f"step {h} leaves an empty admissible set")
        lo, hi = rect
        x = lo + (np.arange(self.n_grid) + 0.5) * ((hi - lo) / self.n_grid)
        c = order.coefficients()
        vals = np.zeros_like(x)
        for cj, oj in zip(c, order.offsets(h)):
            vals += cj * self.fn(x + oj)
        a = np.abs(vals)
        if math.isinf(p):
            return float(np.max(a))
        return float((np.sum(a ** p) * (hi - lo) / self.n_grid) ** (1.0 / p))


class SquareFunction:
    """Closed-form function on the unit square (0, 1)^2."""

    def __init__(self, fn: Callable, gradient: Optional[Callable] = None,
                 name: str = "square_fn", n_quad: int = 48):
        self.fn = fn           # fn(X, Y) vectorized
        self.gradient = gradient  # |grad f|(X, Y), optional
        self.name = name
        self.n_quad = n_quad
        self.domain = Domain.square()
        nodes, weights = np.polynomial.legendre.leggauss(n_quad)
        self._gl = (nodes, weights)

    def __call__(self, x, y):
        return self.fn(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def admissible(self, k: float, h: np.ndarray):
        lo = np.maximum(0.0, -k * h)
        hi = np.minimum(1.0, 1.0 - k * h)
        if np.any(hi <= lo):
            return None
        return lo, hi

    def difference_norm(self, order: DifferenceOrder, h: np.ndarray, p: float,
                        truncation_report: Optional[list] = None) -> float:
        if not order.integer:
            raise FuncspaceError("fractional moduli on the square are out of "
                                 "scope")
        k = int(order.s)
        rect = self.admissible(k, h)
        if rect is None:
            raise FuncspaceError(f"step {h} leaves an empty admissible set")
        (x0, y0), (x1, y1) = (rect[0][0], rect[0][1]), (rect[1][0], rect[1][1])
        nodes, weights = self._gl
        xs = 0.5 * (x1 + x0) + 0.5 * (x1 - x0) * nodes
        ys = 0.5 * (y1 + y0) + 0.5 * (y1 - y0) * nodes
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        c = order.coefficients()
        vals = np.zeros_like(X)
        for j, cj in enumerate(c):
            off = (k - j) * h
            vals += cj * self.fn(X + off[0], Y + off[1])
        a = np.abs(vals)
        if math.isinf(p):
            return float(np.max(a))
        wx = weights * 0.5 * (x1 - x0)
        wy = weights * 0.5 * (y1 - y0)
        integral = float(wx @ (a ** p) @ wy)
        return integral ** (1.0 / p)


# ---------------------------------------------------------------------------
# difference() entry point (spec operation)
# ---------------------------------------------------------------------------


def difference(f, h, order: DifferenceOrder):
    """Return an evaluable x -> Delta^s_h f(x) on the admissible set.

    The integer case is the exact alternating-binomial sum; the fractional
    case truncates at order.J and the evaluator's ``truncation_bound``
    attribute carries eps * sup|f| for the achieved tail eps.
    """
    coeffs = order.coefficients()
    offs = order.offsets(h if np.isscalar(h) else float(np.linalg.norm(h)))

    if isinstance(f, TorusFunction):
        def ev(x):
            x = np.asarray(x, dtype=float)
            out = np.zeros_like(x)
            for cj, oj in zip(coeffs, offs):
                out += cj * f(np.mod(x + oj, TWO_PI))
            return out
    elif isinstance(f, (LineFunction,)):
        def ev(x):
            x = np.asarray(x, dtype=float)
            out = np.zeros_like(x)
            for cj, oj in zip(coeffs, offs):
                out += cj * f(x + oj)
            return out
    elif isinstance(f, IntervalFunction):
        if not order.integer:
            raise FuncspaceError("fractional differences on (0,1) are out of "
                                 "scope")
        if f.admissible(order.s, h) is None:
            raise FuncspaceError("step too large: empty admissible set")

        def ev(x):
            x = np.asarray(x, dtype=float)
            out = np.zeros_like(x)
            for cj, oj in zip(coeffs, offs):
                out += cj * f(x + oj)
            return out
    elif callable(f):
        def ev(x):
            x = np.asarray(x, dtype=float)
            out = np.zeros_like(x)
            for cj, oj in zip(coeffs, offs):
                out += cj * f(x + oj)
            return out
    else:
        raise FuncspaceError(f"unsupported field type {type(f)!r}")
    ev.truncation_bound = order.achieved_tail
    return ev


# ---------------------------------------------------------------------------
# sampled-sup moduli on the global magnitude ladder
# ---------------------------------------------------------------------------


def _directions(n_dir: int) -> np.ndarray:
    ang = (np.arange(n_dir) + 0.0) * (2.0 * math.pi / n_dir)
    return np.stack((np.cos(ang), np.sin(ang)), axis=1)


def magnitude_ladder(t_max: float, t_min: float, n_extra: int = N_H_DEFAULT,
                     ratio: float = LADDER_RATIO) -> np.ndarray:
    """Geometric magnitudes from t_max down past t_min, doubling-closed."""
    n = int(math.ceil(math.log(t_max / t_min) / -math.log(ratio))) + n_extra
    return t_max * ratio ** np.arange(n + 1)


class ModulusSampler:
    """Caches per-magnitude difference-norm sups D(mu).

    omega(t) = max{ D(mu) : mu <= t } over the ladder, which is exactly
    nondecreasing and respects omega(2t) <= 2^k omega(t) because the ladder
    is closed under doubling and D(2mu) <= 2^k D(mu) pointwise.
    """

    def __init__(self, f, order: DifferenceOrder, p: float,
                 n_dir: int = N_DIR_DEFAULT):
        self.f = f
        self.order = order
        self.p = p
        self.n_dir = n_dir
        self._cache: dict = {}
        self.truncation_bounds: list = []

    def D(self, mu: float) -> float:
        key = float(mu)
        if key in self._cache:
            return self._cache[key]
        f = self.f
        if isinstance(f, RadialFunction):
            val = _radial_difference_norm(f, self.order, mu, self.p)
        elif isinstance(f, SquareFunction):
            dirs = _directions(self.n_dir)
            val = max(f.difference_norm(self.order, mu * d, self.p)
                      for d in dirs)
        else:
            val = max(f.difference_norm(self.order, sgn * mu, self.p,
                                        self.truncation_bounds)
                      for sgn in (+1.0, -1.0))
        self._cache[key] = val
        return val

    def omega(self, t: float, ladder: np.ndarray) -> float:
        mus = ladder[ladder <= t * (1 + 1e-12)]
        if len(mus) == 0:
            mus = np.array([t])
        return max(self.D(mu) for mu in mus)


def modulus(f, t: float, p: float, order: DifferenceOrder,
            n_h: int = N_H_DEFAULT, n_dir: int = N_DIR_DEFAULT) -> float:
    """omega_s(f, t)_p: sampled sup over the magnitude ladder below t."""
    if p < 1:
        raise FuncspaceError("modulus needs p >= 1")
    if t <= 0:
        raise FuncspaceError("modulus needs t > 0")
    sampler = ModulusSampler(f, order, p, n_dir=n_dir)
    ladder = t * (LADDER_RATIO ** np.arange(n_h))
    return sampler.omega(t, ladder)


def _radial_difference_norm(f: RadialFunction, order: DifferenceOrder,
                            tau: float, p: float,
                            n_x: int = 360, n_rho: int = 180) -> float:
    """||Delta^k_{tau e1} f||_{L_p(R^d)} by cylindrical quadrature.

    By radial symmetry the norm depends only on |h| = tau; the integral is
    S_{d-2} * int int |Delta^k g(sqrt((x1)^2 + rho^2))|^p rho^{d-2} dx1 drho
    for d >= 2, and a line integral for d = 1.
    """
    if not order.integer:
        raise FuncspaceError("fractional radial moduli are out of scope for "
                             "d >= 2")
    k = int(order.s)
    if k > 3:
        raise FuncspaceError("radial moduli support k <= 3")
    d = f.dimension
    R = f.support_radius if math.isfinite(f.support_radius) \
        else 45.0 * f.decay_scale
    pad = k * tau
    coeffs = order.coefficients()
    if d == 1:
        x = np.linspace(-R - pad, R + pad, 8192)
        vals = np.zeros_like(x)
        for j, cj in enumerate(coeffs):
            vals += cj * f.profile(np.abs(x + (k - j) * tau))
        a = np.abs(vals)
        if math.isinf(p):
            return float(np.max(a))
        return float((np.sum(a ** p) * (x[1] - x[0])) ** (1.0 / p))
    x1 = np.linspace(-R - pad, R + pad, n_x)
    rho = (np.arange(n_rho) + 0.5) * (R / n_rho)
    X, P = np.meshgrid(x1, rho, indexing="ij")
    vals = np.zeros_like(X)
    for j, cj in enumerate(coeffs):
        vals += cj * f.profile(np.sqrt((X + (k - j) * tau) ** 2 + P ** 2))
    a = np.abs(vals)
    if math.isinf(p):
        return float(np.max(a))
    w = a ** p * P ** (d - 2)
    integral = float(np.sum(w)) * (x1[1] - x1[0]) * (R / n_rho)
    return (sphere_area(d - 1) * integral) ** (1.0 / p)


def modulus_radial(rf: RadialFunction, t: float, p: float,
                   order: DifferenceOrder, n_h: int = N_H_DEFAULT) -> float:
    """omega_k(f, t)_p for radial f on R^d, d >= 2, integer k <= 3."""
    if rf.dimension < 2:
        raise FuncspaceError("use modulus() for d = 1")
    if not order.integer:
        raise FuncspaceError("fractional radial moduli are out of scope")
    sampler = ModulusSampler(rf, order, p)
    ladder = t * (LADDER_RATIO ** np.arange(n_h))
    return sampler.omega(t, ladder)


# ---------------------------------------------------------------------------
# modulus property suite
# ---------------------------------------------------------------------------


@dataclass
class PropertyReport:
    member: str
    p: float
    k: int
    m: int
    monotone_ok: bool
    doubling_ok: bool
    order_comparison_ok: bool
    marchaud_constant: float
    marchaud_ok: bool
    derivative_ok: Optional[bool]
    details: dict = field(default_factory=dict)


def check_moduli_properties(f, p: float, k: int, m: int,
                            t_nodes: Optional[np.ndarray] = None,
                            derivative_norm: Optional[float] = None,
                            tol: float = 1e-3,
                            marchaud_budget: float = 64.0,
                            name: str = "member") -> PropertyReport:
    """Verify monotonicity, doubling, order comparison, Marchaud, and the
    derivative bound omega_k(f,t) <= t^k ||f^(k)||_p (1 + tol) in 1-d."""
    if not k < m:
        raise FuncspaceError("need k < m")
    if t_nodes is None:
        t_nodes = 2.0 ** -np.arange(10, -2, -1, dtype=float)
    t_nodes = np.sort(np.asarray(t_nodes, dtype=float))
    ord_k = DifferenceOrder(float(k))
    ord_m = DifferenceOrder(float(m))
    samp_k = ModulusSampler(f, ord_k, p)
    samp_m = ModulusSampler(f, ord_m, p)
    ladder = magnitude_ladder(float(t_nodes[-1]) * 2.0, float(t_nodes[0]))
    w_k = np.array([samp_k.omega(t, ladder) for t in t_nodes])
    w_k2 = np.array([samp_k.omega(2 * t, ladder) for t in t_nodes])
    w_m = np.array([samp_m.omega(t, ladder) for t in t_nodes])

    monotone_ok = bool(np.all(np.diff(w_k) >= -1e-9))
    doubling_ok = bool(np.all(w_k2 <= (2.0 ** k) * w_k * (1 + tol) + 1e-300))
    order_ok = bool(np.all(w_m <= (2.0 ** (m - k)) * w_k * (1 + tol) + 1e-300))

    # Marchaud: omega_k(f,t) <= C t^k int_t^inf omega_m(f,u) u^{-k} du/u
    marchaud_c = 0.0
    u_hi = float(ladder[0])
    for i, t in enumerate(t_nodes):
        us = np.geomspace(t, u_hi * 2.0, 60)
        wm = np.array([samp_m.omega(min(u, u_hi), ladder) for u in us])
        integrand = wm * us ** (-k)
        integral = float(np.trapz(integrand / us, us))
        # bounded tail beyond the plateau
        integral += samp_m.omega(u_hi, ladder) * (u_hi * 2.0) ** (-k) / k
        rhs = t ** k * integral
        if rhs > 0 and w_k[i] > 0:
            marchaud_c = max(marchaud_c, w_k[i] / rhs)
    marchaud_ok = marchaud_c <= marchaud_budget

    derivative_ok = None
    if derivative_norm is not None:
        lhs = w_k
        bound = t_nodes ** k * derivative_norm * (1 + tol)
        derivative_ok = bool(np.all(lhs <= bound + 1e-300))

    return PropertyReport(member=name, p=p, k=k, m=m,
                          monotone_ok=monotone_ok, doubling_ok=doubling_ok,
                          order_comparison_ok=order_ok,
                          marchaud_constant=marchaud_c,
                          marchaud_ok=marchaud_ok,
                          derivative_ok=derivative_ok,
                          details={"t_nodes": t_nodes.tolist(),
                                   "omega_k": w_k.tolist(),
                                   "omega_m": w_m.tolist()})


# ---------------------------------------------------------------------------
# modulus curves
# ---------------------------------------------------------------------------


@dataclass
class ModulusCurve:
    """Sampled modulus values on geometric t nodes with interpolation."""

    t_nodes: np.ndarray
    values: np.ndarray
    p: float
    s: float
    member: str = ""
    plateau_from: Optional[float] = None

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        lo, hi = self.t_nodes[0], self.t_nodes[-1]
        tv = np.clip(t, lo, hi)
        pos = self.values > 0
        if not np.any(pos):
            return np.zeros_like(t)
        logv = np.interp(np.log(tv), np.log(self.t_nodes),
                         np.log(np.maximum(self.values, 1e-300)))
        out = np.exp(logv)
        # below the first node: smooth continuation omega ~ t^gamma
        below = t < lo
        if np.any(below) and self.values[0] > 0:
            g = self._low_exponent()
            out[below] = self.values[0] * (t[below] / lo) ** g
        return out if out.size > 1 else float(out[0])

    def _low_exponent(self) -> float:
        v, tt = self.values, self.t_nodes
        if len(v) < 3 or v[0] <= 0 or v[2] <= 0:
            return 1.0
        return float((math.log(v[2]) - math.log(v[0])) /
                     (math.log(tt[2]) - math.log(tt[0])))

    def smallt_certificate(self):
        return (self._low_exponent(), 0.0)

    def to_csv(self) -> str:
        lines = ["t,value"]
        for t, v in zip(self.t_nodes, self.values):
            lines.append(f"{t!r},{v!r}")
        return "\n".join(lines) + "\n"


def build_modulus_curve(f, order: DifferenceOrder, p: float,
                        t_lo: float, t_hi: float,
                        ratio: float = LADDER_RATIO,
                        n_extra: int = N_H_DEFAULT,
                        n_dir: int = N_DIR_DEFAULT,
                        name: str = "") -> ModulusCurve:
    """Build omega_s(f, .)_p on a geometric grid using one shared ladder."""
    sampler = ModulusSampler(f, order, p, n_dir=n_dir)
    ladder = magnitude_ladder(t_hi, t_lo, n_extra=n_extra, ratio=ratio)
    t_nodes = np.sort(ladder[ladder >= t_lo * (1 - 1e-12)])
    vals = np.array([sampler.omega(t, ladder) for t in t_nodes])
    return ModulusCurve(t_nodes=t_nodes, values=vals, p=p, s=order.s,
                        member=name)
