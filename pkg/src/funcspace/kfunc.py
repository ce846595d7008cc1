"""Peetre K-functionals: brute-force oracles, closed two-piece formulas,
and the limiting/logarithmic interpolation functionals."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import StepFunction
from .errors import FuncspaceError, TrivialSpaceError
from .norms import lorentz_zygmund_norm
from .quadrature import (Curve, LogGrid, WeightedFunctional, as_curve,
                         eval_functional)
from .rearrange import DecreasingProfile

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


# ---------------------------------------------------------------------------
# truncation helpers
# ---------------------------------------------------------------------------


def _truncated_above(fstar, c: float):
    """(f* - c)_+ as a curve/step of the same kind."""
    if isinstance(fstar, StepFunction):
        v = np.maximum(fstar.values - c, 0.0)
        tail = max(fstar.tail_value - c, 0.0)
        return StepFunction(fstar.edges, v, tail_value=tail)
    base = as_curve(fstar)

    def fn(t):
        return np.maximum(np.asarray(base.value(t), dtype=float) - c, 0.0)

    return Curve(fn, smallt=base.smallt, support=base.support,
                 plateau=base.plateau, decay=base.decay,
                 name=base.name + "_trunc")


def _truncated_below(fstar, c: float):
    """min(f*, c) as a curve/step of the same kind."""
    if isinstance(fstar, StepFunction):
        v = np.minimum(fstar.values, c)
        tail = min(fstar.tail_value, c)
        return StepFunction(fstar.edges, v, tail_value=tail)
    base = as_curve(fstar)

    def fn(t):
        return np.minimum(np.asarray(base.value(t), dtype=float), c)

    return Curve(fn, smallt=(0.0, 0.0), support=base.support,
                 plateau=base.plateau, decay=base.decay,
                 name=base.name + "_cap")


def _lp_of_truncated(fstar, c: float, p: float) -> float:
    """||(f* - c)_+||_p; exact for step functions."""
    if isinstance(fstar, StepFunction):
        m = fstar.measures
        v = np.maximum(fstar.values - c, 0.0)
        if fstar.tail_value > c:
            return math.inf
        return float(np.sum(m * v ** p) ** (1.0 / p))
    curve = as_curve(fstar)
    hi = curve.support
    if not math.isfinite(hi):
        hi = 1e8  # decreasing profiles below level c have finite measure
    t = np.geomspace(1e-12, hi, 3000)
    vals = np.maximum(np.asarray(curve.value(t), dtype=float) - c, 0.0)
    edges = np.concatenate(([0.0], np.sqrt(t[1:] * t[:-1]), [hi]))
    return float(np.sum(vals ** p * np.diff(edges)) ** (1.0 / p))


def _sup_of(fstar) -> float:
    if isinstance(fstar, StepFunction):
        return float(max(np.max(fstar.values), fstar.tail_value))
    if isinstance(fstar, DecreasingProfile):
        return fstar.sup_value
    curve = as_curve(fstar)
    return float(np.max(curve.value(np.geomspace(1e-12, 1e4, 2000))))


def _golden_min(fn, lo: float, hi: float, rel_tol: float = 1e-10,
                coarse: int = 33):
    """Golden-section minimization with an empirical unimodality scan."""
    cs = np.linspace(lo, hi, coarse)
    vals = np.array([fn(c) for c in cs])
    j = int(np.argmin(vals))
    # empirical unimodality: no strict interior local minimum besides j
    drops = np.nonzero(np.diff(vals) < -1e-12 * np.maximum(1.0, vals[:-1]))[0]
    if len(drops) and drops[-1] > j:
        j = int(drops[-1]) + 1
    a = cs[max(j - 1, 0)]
    b = cs[min(j + 1, coarse - 1)]
    c1 = b - GOLDEN * (b - a)
    c2 = a + GOLDEN * (b - a)
    f1, f2 = fn(c1), fn(c2)
    scale = max(abs(hi), 1.0)
    while (b - a) > rel_tol * scale:
        if f1 <= f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - GOLDEN * (b - a)
            f1 = fn(c1)
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + GOLDEN * (b - a)
            f2 = fn(c2)
    return min(f1, f2)


# ---------------------------------------------------------------------------
# K-functionals
# ---------------------------------------------------------------------------


def k_bruteforce_lp_linf(fstar, t: float, p: float) -> float:
    """K(t, f; L_p, L_inf) by the optimal-truncation search.

    inf over levels c >= 0 of ||(|f| - c)_+||_p + t c, minimized by
    golden-section on c over [0, sup f*].
    """
    if math.isinf(p):
        raise FuncspaceError("the couple needs p < inf")
    sup = _sup_of(fstar)
    if sup == 0.0:
        return 0.0
    return _golden_min(lambda c: _lp_of_truncated(fstar, c, p) + t * c,
                       0.0, sup)


def k_holmstedt_lorentz(fstar, t: float, p0: float, q0: float,
                        p1: float, q1: float,
                        total_measure: float = math.inf,
                        grid: Optional[LogGrid] = None) -> float:
    """Two-piece closed formula for K(t, f; L_{p0,q0}, L_{p1,q1}), p0 < p1.

    Splitting point t^alpha with 1/alpha = 1/p0 - 1/p1.
    """
    if not (0 < p0 < p1 < math.inf):
        raise FuncspaceError("needs 0 < p0 < p1 < inf")
    alpha = 1.0 / (1.0 / p0 - 1.0 / p1)
    split = t ** alpha
    w0 = WeightedFunctional(a=1.0 / p0, b=0.0, q=q0, lo=0.0, hi=split)
    piece0 = eval_functional(w0, fstar, grid=grid)
    piece1 = 0.0
    if total_measure > split:
        w1 = WeightedFunctional(a=1.0 / p1, b=0.0, q=q1, lo=split,
                                hi=total_measure)
        piece1 = eval_functional(w1, fstar, grid=grid)
    return piece0 + t * piece1


def k_holmstedt_linf(fstar, t: float, p0: float, q0: float,
                     grid: Optional[LogGrid] = None) -> float:
    """K(t, f; L_{p0,q0}, L_inf) ~ (int_0^{t^{p0}} (u^{1/p0} f*)^{q0} du/u)^{1/q0}."""
    if not 0 < p0 < math.inf:
        raise FuncspaceError("needs 0 < p0 < inf")
    w = WeightedFunctional(a=1.0 / p0, b=0.0, q=q0, lo=0.0, hi=t ** p0)
    return eval_functional(w, fstar, grid=grid)


def k_truncation_lorentz(fstar, t: float, p0: float, q0: float,
                         p1: float, q1: float,
                         total_measure: float = math.inf,
                         grid: Optional[LogGrid] = None) -> float:
    """Direct two-space decomposition search over the truncation family.

    Independent oracle for the Holmstedt formula: inf over c of
    ||(f*-c)_+||_{p0,q0} + t ||min(f*,c)||_{p1,q1}.
    """
    sup = _sup_of(fstar)
    if sup == 0.0:
        return 0.0

    def cost(c):
        top = lorentz_zygmund_norm(_truncated_above(fstar, c), p0, q0, 0.0,
                                   total_measure=total_measure, grid=grid)
        bot = lorentz_zygmund_norm(_truncated_below(fstar, c), p1, q1, 0.0,
                                   total_measure=total_measure, grid=grid)
        return top + t * bot

    return _golden_min(cost, 0.0, sup, rel_tol=1e-6, coarse=17)


def k_modulus(omega_value: float, t: float, k: float, p: float,
              lp_value: Optional[float] = None,
              inhomogeneous: bool = False) -> float:
    """Modulus surrogate for Sobolev-couple K-functionals.

    Homogeneous couple: K(t^k; L_p, W^k_p-dot) ~ omega_k(f, t)_p.
    Inhomogeneous: min(1, t^k) ||f||_p + omega_k(f, t)_p.
    """
    if t <= 0:
        raise FuncspaceError("needs t > 0")
    if inhomogeneous:
        if lp_value is None:
            raise FuncspaceError("inhomogeneous surrogate needs ||f||_p")
        return min(1.0, t ** k) * lp_value + omega_value
    return omega_value


# ---------------------------------------------------------------------------
# K-curves and the interpolation functionals
# ---------------------------------------------------------------------------


@dataclass
class KCurve:
    """K(t) sampled on geometric nodes, with the couple descriptor."""

    t_nodes: np.ndarray
    values: np.ndarray
    couple: str = ""
    method: str = ""
    plateau_value: Optional[float] = None

    def __post_init__(self):
        self.t_nodes = np.asarray(self.t_nodes, dtype=float)
        self.values = np.asarray(self.values, dtype=float)

    def check_shape(self, slack: float = 1e-9) -> bool:
        """K nonnegative and nondecreasing; K(t)/t nonincreasing."""
        v, t = self.values, self.t_nodes
        ok = bool(np.all(v >= -slack))
        ok = ok and bool(np.all(np.diff(v) >= -slack * np.maximum(v[:-1], 1)))
        ratio = v / t
        ok = ok and bool(np.all(np.diff(ratio) <=
                                slack * np.maximum(ratio[:-1], 1e-300)))
        return ok

    def curve(self) -> Curve:
        t, v = self.t_nodes, self.values

        def fn(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            out = np.interp(np.log(np.clip(x, t[0], t[-1])), np.log(t),
                            np.log(np.maximum(v, 1e-300)))
            out = np.exp(out)
            below = x < t[0]
            if np.any(below):
                out[below] = v[0] * (x[below] / t[0])  # K(t) <= (K(t0)/t0) t
            return out

        plateau = None
        if self.plateau_value is not None:
            plateau = (float(t[-1]), float(self.plateau_value))
        return Curve(fn, smallt=(1.0, 0.0), plateau=plateau,
                     name=f"K[{self.couple}]")

    def to_csv(self) -> str:
        lines = ["t,K"]
        for t, v in zip(self.t_nodes, self.values):
            lines.append(f"{t!r},{v!r}")
        return "\n".join(lines) + "\n"


def limiting_interp_functional(K, b: float, q: float,
                               grid: Optional[LogGrid] = None) -> float:
    """(int_0^1 (t^{-1} (1+|log t|)^b K(t))^q dt/t)^{1/q}.

    Trivial (rejected) unless b < -1/q (b <= 0 when q = inf).
    """
    if math.isinf(q):
        if b > 0:
            raise TrivialSpaceError("limiting space with q=inf needs b <= 0")
    elif not b < -1.0 / q:
        raise TrivialSpaceError("limiting space needs b < -1/q")
    kc = K.curve() if isinstance(K, KCurve) else as_curve(K)
    w = WeightedFunctional(a=-1.0, b=b, q=q, lo=0.0, hi=1.0)
    return eval_functional(w, kc, grid=grid)


def log_interp_functional(K, theta: float, q: float, b: float,
                          grid: Optional[LogGrid] = None) -> float:
    """(int_0^inf (t^{-theta} (1+|log t|)^b K(t))^q dt/t)^{1/q}, theta in (0,1).

    For ordered couples the curve's plateau certificate K ~ ||f||_{A0}
    controls the tail.
    """
    if not (0 < theta < 1):
        raise FuncspaceError("theta must lie in (0, 1)")
    kc = K.curve() if isinstance(K, KCurve) else as_curve(K)
    w = WeightedFunctional(a=-theta, b=b, q=q, lo=0.0, hi=math.inf)
    return eval_functional(w, kc, grid=grid)


# ---------------------------------------------------------------------------
# the two lemma-level checks
# ---------------------------------------------------------------------------


@dataclass
class LemmaReport:
    lemma: str
    member: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    details: dict = field(default_factory=dict)


def check_lemma38(fstar, p: float, q: float, b: float,
                  member: str = "", budget: float = 16.0,
                  grid: Optional[LogGrid] = None,
                  n_nodes: int = 48) -> LemmaReport:
    """Limiting interpolation of (L_p, L_inf) against L_{inf,q}(log L)_b.

    Left side: the closed K-formula for (L_{p,p}, L_inf) fed through the
    (1, b), q limiting functional; right side: the Lorentz-Zygmund norm with
    p = inf.  Both sides are restricted to measure-1 domains.
    """
    if math.isinf(q):
        if b > 0:
            raise TrivialSpaceError("needs b <= 0 for q = inf")
    elif not b < -1.0 / q:
        raise TrivialSpaceError("needs b < -1/q")
    t_nodes = np.geomspace(1e-6, 1.0, n_nodes)
    kvals = np.array([k_holmstedt_linf(fstar, t, p, p, grid=grid)
                      for t in t_nodes])
    kc = KCurve(t_nodes, kvals, couple=f"(L_{p},L_inf)", method="holmstedt")
    lhs = limiting_interp_functional(kc, b, q, grid=grid)
    rhs = lorentz_zygmund_norm(fstar, math.inf, q, b, total_measure=1.0,
                               grid=grid)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
    ok = (rhs == 0 and lhs == 0) or (1.0 / budget <= ratio <= budget)
    return LemmaReport("limiting-interp-identity", member, lhs, rhs, ratio,
                       bool(ok))


def check_lemma39(f, fstar, b: float, d: int, member: str = "",
                  budget: float = 16.0, j_max: int = 12) -> LemmaReport:
    """sup_t (1-log t)^b f*(t)  vs  sup_{j>=0} 2^{jb} ||f||_{L_{2^j d}}, b < 0.

    The Lebesgue norms for huge exponents are evaluated in log space.
    """
    if not b < 0:
        raise FuncspaceError("needs b < 0")
    from .core import lp_norm  # local import to avoid cycles
    lhs = lorentz_zygmund_norm(fstar, math.inf, math.inf, b,
                               total_measure=1.0)
    terms = []
    for j in range(j_max + 1):
        pj = (2.0 ** j) * d
        if isinstance(f, StepFunction):
            nrm = lp_norm(f, pj)
        else:
            curve = as_curve(f)
            hi = curve.support if math.isfinite(curve.support) else 1.0
            w = WeightedFunctional(a=1.0 / pj, b=0.0, q=pj, lo=0.0, hi=hi)
            nrm = eval_functional(w, curve)
        terms.append((2.0 ** (j * b)) * nrm)
    rhs = max(terms)
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else math.inf)
    ok = (rhs == 0 and lhs == 0) or (1.0 / budget <= ratio <= budget)
    return LemmaReport("zygmund-extrapolation-identity", member, lhs, rhs,
                       ratio, bool(ok), details={"terms": terms})
