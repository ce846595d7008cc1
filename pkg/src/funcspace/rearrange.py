"""Decreasing rearrangement f*, maximal function f**, and radial shortcuts."""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .core import (Domain, DomainKind, GridFunction, ProfileFunction,
                   RadialFunction, StepFunction, ball_volume,
                   distribution_function)
from .errors import FuncspaceError


class DecreasingProfile:
    """Nonincreasing rearrangement profile on (0, inf) given in closed form.

    Used when the rearrangement of a continuous function admits an exact (or
    table-backed monotone) evaluator that a step function could not represent
    exactly.
    """

    __slots__ = ("eval_fn", "support_bound", "sup_value", "name", "log_eval")

    def __init__(self, eval_fn: Callable[[np.ndarray], np.ndarray],
                 support_bound: float, sup_value: float, name: str = "fstar",
                 log_eval: Optional[Callable[[np.ndarray], np.ndarray]] = None):
        self.eval_fn = eval_fn
        self.support_bound = float(support_bound)
        self.sup_value = float(sup_value)
        self.name = name
        self.log_eval = log_eval

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = self.eval_fn(t)
        return out if np.ndim(out) else float(out)


def _rearrange_step(f: StepFunction) -> StepFunction:
    m = f.measures
    v = f.values
    tail = f.tail_value
    keep = v > tail
    m, v = m[keep], v[keep]
    if len(v) == 0:
        return StepFunction([1.0], [tail], tail_value=tail, monotone=True)
    # stable sort by decreasing value; ties keep original cell order, which is
    # observationally irrelevant (rearrangement depends on the multiset only)
    order = np.argsort(-v, kind="stable")
    m, v = m[order], v[order]
    edges = np.cumsum(m)
    return StepFunction(edges, v, tail_value=tail, monotone=True)


def _rearrange_grid(f: GridFunction) -> StepFunction:
    a = np.sort(f.flat_abs())[::-1]
    cm = f.cell_measure
    # lossless merge of equal adjacent values keeps downstream quadrature exact
    change = np.nonzero(np.diff(a))[0]
    ends = np.concatenate((change + 1, [a.size]))
    values = a[ends - 1]
    edges = ends * cm
    return StepFunction(edges, values, tail_value=0.0, monotone=True)


def _lambda_table_profile(dist: Callable[[float], float], sup_value: float,
                          n: int = 700, lam_floor: float = 1e-14,
                          name: str = "fstar") -> DecreasingProfile:
    """Build f* from a distribution function by tabulating (mu(lam), lam)."""
    lams = np.geomspace(max(lam_floor, sup_value * 1e-14), sup_value * (1 - 1e-12), n)
    mus = np.array([dist(l) for l in lams])
    # mu is nonincreasing in lambda; keep strictly decreasing pairs
    order = np.argsort(mus)
    mus, lams = mus[order], lams[order]
    keep = np.concatenate(([True], np.diff(mus) > 0))
    mus, lams = mus[keep], lams[keep]
    support = float(dist(lam_floor)) if math.isfinite(dist(lam_floor)) else math.inf
    lo, hi = mus[0], mus[-1]

    def eval_fn(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        tc = np.clip(t, max(lo, 1e-300), hi)
        out = np.interp(np.log(tc), np.log(np.maximum(mus, 1e-300)),
                        np.log(np.maximum(lams, 1e-300)))
        out = np.exp(out)
        out[t <= lo] = lams[0]
        out[t >= hi] = 0.0
        return out if out.size > 1 else out[0]

    return DecreasingProfile(eval_fn, support_bound=hi, sup_value=float(lams[0]),
                             name=name)


def decreasing_rearrangement(f, allow_sampled_fallback: bool = False):
    """Decreasing rearrangement of |f|.

    Step and grid inputs give an exact monotone StepFunction; monotone radial
    profiles give the exact closed form f*(t) = g((t / v_d)^{1/d}).  Unimodal
    radial derivative profiles and piecewise-monotone 1-d profiles produce a
    table-backed monotone profile (root-finding on each branch), which callers
    must opt into with ``allow_sampled_fallback``.
    """
    if isinstance(f, StepFunction):
        return _rearrange_step(f)
    if isinstance(f, GridFunction):
        return _rearrange_grid(f)
    if isinstance(f, RadialFunction):
        if f.monotone:
            d, vd, g = f.dimension, ball_volume(f.dimension), f.profile
            support = ball_volume(f.dimension, f.support_radius) \
                if math.isfinite(f.support_radius) else math.inf
            sup = float(g(np.asarray(1e-300 if d == 1 else 0.0)))

            def eval_fn(t):
                t = np.asarray(t, dtype=float)
                return g((t / vd) ** (1.0 / d))

            return DecreasingProfile(eval_fn, support, sup, name=f.name + "*")
        if not allow_sampled_fallback:
            raise FuncspaceError("non-monotone radial profile: pass "
                                 "allow_sampled_fallback=True for a table")
        sup = _radial_sup(f)
        return _lambda_table_profile(lambda lam: distribution_function(f, lam)
                                     if f.monotone else _unimodal_radial_dist(f, lam),
                                     sup, name=f.name + "*")
    if isinstance(f, ProfileFunction):
        if f.monotone_nonincreasing():
            support = f.length

            def eval_fn(t):
                t = np.asarray(t, dtype=float)
                inside = np.clip(t, 1e-300, support)
                out = np.asarray(f(inside), dtype=float)
                out = np.where(t >= support, 0.0, out)
                return out

            return DecreasingProfile(eval_fn, support,
                                     f.sup_value, name=f.name + "*")
        sup = f.sup_value
        if not math.isfinite(sup):
            sup = float(np.max(np.abs(f(np.geomspace(1e-12, f.length, 4096)))))
        return _lambda_table_profile(lambda lam: distribution_function(f, lam),
                                     sup, name=f.name + "*")
    raise FuncspaceError(f"unsupported function type {type(f)!r}")


# -- unimodal |g'| support ---------------------------------------------------


def _radial_sup(f: RadialFunction) -> float:
    r_hi = f.support_radius if math.isfinite(f.support_radius) \
        else 50.0 * f.decay_scale
    r = np.geomspace(1e-10, r_hi, 4096)
    return float(np.max(np.abs(f.profile(r))))


def _unimodal_radial_dist(f: RadialFunction, lam: float) -> float:
    """|{|f| > lam}| for a profile rising to one interior peak then falling."""
    g = f.profile
    r_hi = f.support_radius if math.isfinite(f.support_radius) \
        else 50.0 * f.decay_scale
    grid = np.geomspace(1e-12, r_hi, 4096)
    vals = np.abs(g(grid))
    k = int(np.argmax(vals))
    peak_v = vals[k]
    if lam >= peak_v:
        return 0.0
    r_peak = grid[k]
    h = lambda x: float(np.abs(g(np.asarray(x)))) - lam
    lo_val = float(np.abs(g(np.asarray(1e-12))))
    if lo_val > lam:
        r1 = 0.0
    else:
        r1 = brentq(h, 1e-12, r_peak, xtol=1e-15, rtol=1e-14)
    hi_val = float(np.abs(g(np.asarray(r_hi))))
    if hi_val > lam:
        r2 = r_hi  # should not happen for decaying profiles
    else:
        r2 = brentq(h, r_peak, r_hi, xtol=1e-15, rtol=1e-14)
    d = f.dimension
    return ball_volume(d) * (r2 ** d - r1 ** d)


def derivative_rearrangement(f: RadialFunction) -> DecreasingProfile:
    """|grad f|* for a radial function: the rearranged |g'| profile.

    The gradient magnitude of f(x) = g(|x|) is |g'(|x|)|; for the corpus
    profiles |g'| is either monotone or unimodal, so the distribution function
    is exact (two-branch root-finding) and f* comes from a lambda-table.
    """
    if not f.derivatives:
        raise FuncspaceError(f"{f.name}: no derivative profile available")
    gp = f.derivatives[0]
    dgf = RadialFunction(dimension=f.dimension,
                         profile=lambda r: np.abs(gp(r)),
                         derivatives=(),
                         monotone=False,
                         support_radius=f.support_radius,
                         unimodal_derivative=True,
                         decay_scale=f.decay_scale,
                         name=f.name + "_grad")
    r_probe = np.geomspace(1e-10,
                           f.support_radius if math.isfinite(f.support_radius)
                           else 50.0 * f.decay_scale, 2048)
    vals = np.abs(gp(r_probe))
    if np.all(np.diff(vals) <= 1e-15 * np.max(vals)):
        dgf = RadialFunction(dimension=f.dimension,
                             profile=lambda r: np.abs(gp(r)),
                             derivatives=(), monotone=True,
                             support_radius=f.support_radius,
                             decay_scale=f.decay_scale, name=f.name + "_grad")
        return decreasing_rearrangement(dgf)
    sup = float(np.max(vals))
    return _lambda_table_profile(lambda lam: _unimodal_radial_dist(dgf, lam),
                                 sup, name=f.name + "_grad*")


# -- maximal function --------------------------------------------------------


class MaximalFunction:
    """f**(t) = (1/t) * integral_0^t f*(u) du for a monotone step f*.

    Evaluation is exact piecewise rational in t.
    """

    __slots__ = ("base", "_cum")

    def __init__(self, base: StepFunction):
        if not base.monotone:
            raise FuncspaceError("maximal function needs a nonincreasing input")
        self.base = base
        m = base.measures
        self._cum = np.concatenate(([0.0], np.cumsum(m * base.values)))

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        b = self.base
        idx = np.searchsorted(b.edges, t, side="right")
        idx_c = np.minimum(idx, len(b.values) - 1)
        prev_edge = np.where(idx_c > 0, b.edges[np.maximum(idx_c - 1, 0)], 0.0)
        inside = self._cum[idx_c] + (t - prev_edge) * b.values[idx_c]
        beyond = self._cum[-1] + (t - b.edges[-1]) * b.tail_value
        total = np.where(t <= b.edges[-1], inside, beyond)
        out = total / t
        return out if out.size > 1 else float(out[0])


class ProfileMaximal:
    """Table-backed f** for a continuous decreasing profile."""

    __slots__ = ("profile", "_t", "_cum", "_sup")

    def __init__(self, profile: DecreasingProfile, t_lo: float = 1e-12,
                 t_hi: float = 1e6, n: int = 4000):
        hi = profile.support_bound
        if not math.isfinite(hi):
            hi = t_hi
        else:
            hi = min(max(hi * 4.0, 10.0 * t_lo), t_hi)
        t = np.geomspace(t_lo, hi, n)
        v = np.asarray(profile(t), dtype=float)
        inc = np.concatenate(([t[0] * v[0]],
                              0.5 * (v[1:] + v[:-1]) * np.diff(t)))
        self._t = t
        self._cum = np.cumsum(inc)
        self.profile = profile
        self._sup = profile.sup_value

    def cumulative(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.interp(t, self._t, self._cum)
        out = np.where(t < self._t[0], t * self._sup, out)
        out = np.where(t > self._t[-1], self._cum[-1], out)
        return out

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = self.cumulative(t) / t
        out = np.where(t < self._t[0], self._sup, out)
        return out if out.size > 1 else float(out[0])


def maximal_function(fstar):
    """Dispatch to the exact step implementation or the profile table."""
    if isinstance(fstar, StepFunction):
        return MaximalFunction(fstar)
    if isinstance(fstar, DecreasingProfile):
        return ProfileMaximal(fstar)
    raise FuncspaceError("maximal_function needs f* (step or profile)")


def oscillation(fstar, t: float) -> float:
    """f**(t) - f*(t) >= 0."""
    if t <= 0:
        raise FuncspaceError("oscillation needs t > 0")
    mx = maximal_function(fstar)
    val = float(np.asarray(mx(t)).reshape(-1)[0]) - \
        float(np.asarray(fstar(t)).reshape(-1)[0])
    return max(val, 0.0)
