"""Parameter sweeps measuring extrapolation blow-up rates, plus sharpness
probes along parameterized corpus families.

Each sweep walks a dyadic parameter path toward a critical value, evaluates
both sides of the corresponding embedding, normalizes the ratio by the
predicted rate, and fits the residual log-log slope.  A sweep passes when
the normalized ratios are bounded (max/min <= 4 over the last six steps)
and the residual slope stays within +-0.15 of zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from .checks import DX_LEVEL, get_check, run_check
from .corpus import CorpusFunction, family, get_member
from .errors import (DegenerateFitError, DivergenceError, FuncspaceError,
                     UnknownIdError)
from .norms import besov_constant
from .quadrature import WeightedFunctional, eval_functional


def _eval(w: WeightedFunctional, F, level: int = 0) -> float:
    return eval_functional(w, F, _dx=DX_LEVEL[level])


def fit_blowup_rate(samples: Sequence) -> tuple:
    """Least-squares slope of log(ratio) vs log(parameter).

    Returns (slope, rms_residual); needs at least 4 positive samples.
    """
    pts = [(p, r) for (p, r) in samples if r > 0 and p > 0]
    if len(pts) < 4:
        raise DegenerateFitError("rate fit needs at least 4 positive samples")
    x = np.log([p for p, _ in pts])
    y = np.log([r for _, r in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return float(slope), float(np.sqrt(np.mean(resid ** 2)))


# ---------------------------------------------------------------------------
# sweep machinery
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    id: str
    description: str
    anchor: str
    params: Dict
    members: tuple
    param_path: Callable          # m -> parameter value
    rate: Callable                # parameter -> predicted rate
    lhs: Callable                 # (member, param, level) -> float
    rhs: Callable
    m_range: tuple = tuple(range(1, 13))
    bounded_window: int = 6
    bounded_budget: float = 4.0
    slope_tol: float = 0.15


@dataclass
class SweepReport:
    id: str
    member: str
    params: list
    lhs: list
    rhs: list
    ratios: list
    normalized: list
    slope: float
    residual: float
    bounded: bool
    passed: bool
    truncated_at: Optional[int] = None

    def to_dict(self) -> Dict:
        return {
            "id": self.id, "member": self.member,
            "params": [float(v) for v in self.params],
            "lhs": [float(v) for v in self.lhs],
            "rhs": [float(v) for v in self.rhs],
            "ratios": [float(v) for v in self.ratios],
            "normalized": [float(v) for v in self.normalized],
            "slope": self.slope, "residual": self.residual,
            "bounded": self.bounded, "passed": self.passed,
            "truncated_at": self.truncated_at,
        }


def run_sweep(spec: SweepSpec, member: CorpusFunction,
              level: int = 0) -> SweepReport:
    if member.skip_in_ratios:
        return SweepReport(spec.id, member.id, [], [], [], [], [], 0.0, 0.0,
                           True, True)
    params, lhs_vals, rhs_vals, ratios, normalized = [], [], [], [], []
    truncated = None
    for m in spec.m_range:
        lam = spec.param_path(m)
        try:
            lo = spec.lhs(member, lam, level)
            hi = spec.rhs(member, lam, level)
        except DivergenceError:
            truncated = m
            break
        if hi <= 0:
            truncated = m
            break
        params.append(lam)
        lhs_vals.append(lo)
        rhs_vals.append(hi)
        ratios.append(lo / hi)
        normalized.append(lo / hi / spec.rate(lam))
    window = normalized[-spec.bounded_window:]
    bounded = bool(window) and \
        max(window) / max(min(window), 1e-300) <= spec.bounded_budget
    slope, resid = fit_blowup_rate(list(zip(params, normalized))[-8:])
    passed = bounded and abs(slope) <= spec.slope_tol
    return SweepReport(spec.id, member.id, params, lhs_vals, rhs_vals,
                       ratios, normalized, slope, resid, bounded,
                       bool(passed), truncated)


def run_sweep_all(spec: SweepSpec) -> list:
    return [run_sweep(spec, get_member(mid)) for mid in spec.members]


# ---------------------------------------------------------------------------
# sweep catalog
# ---------------------------------------------------------------------------


def _sw01() -> SweepSpec:
    p = 2.0
    s_base = 0.5  # d = 1, order d/p

    def lhs(m, lam, lv):
        w = WeightedFunctional(a=lam, b=0.0, q=p, lo=0.0, hi=math.inf)
        return _eval(w, m.fstar_curve(), lv)

    def rhs(m, lam, lv):
        om = m.prescribed[("omega", 0.5, 2.0)]
        w = WeightedFunctional(a=-(s_base - lam), b=0.0, q=p, lo=0.0,
                               hi=math.inf)
        return _eval(w, om, lv)

    return SweepSpec(
        "SW-01",
        "Lorentz-norm blow-up against the homogeneous smoothness seminorm "
        "as the smoothness index approaches d/p (d=1 fractional instance, "
        "p=2); predicted rate lam^{1/p-1}",
        "besov-to-lorentz-critical",
        {"p": p, "d": 1},
        ("syn-sw01-a", "syn-sw01-b", "syn-sw01-c"),
        lambda m: 2.0 ** -(m + 1), lambda lam: lam ** (1.0 / p - 1.0),
        lhs, rhs)


def _sw02() -> SweepSpec:
    d, p, b = 2, 2.0, 1.0
    k = 1.0  # = d/p

    def lhs(m, lam, lv):
        w = WeightedFunctional(a=lam / d, b=-b, q=p, lo=0.0, hi=1.0)
        return _eval(w, m.fstar_curve(), lv)

    def rhs(m, lam, lv):
        s = d / p - lam
        om = m.omega_curve(k, p, 2.0 ** -24, 0.5, lv)
        w = WeightedFunctional(a=-s, b=0.0, q=p, lo=0.0, hi=1.0)
        tail = _eval(w, om, lv)
        return besov_constant(s, k, p) * m.lp(p) + tail

    return SweepSpec(
        "SW-02",
        "log-Lorentz target with uniformly normalized smoothness norm as "
        "the smoothness deficit lam -> 0 on the unit square; predicted "
        "rate lam^{1/p}",
        "critical-log-sobolev",
        {"d": d, "p": p, "b": b},
        ("sq-sinsin", "sq-bump", "sq-poly"),
        lambda m: 2.0 ** -m, lambda lam: lam ** (1.0 / p), lhs, rhs)


def _sw03() -> SweepSpec:
    p = 2.0

    def lhs(m, q, lv):
        w = WeightedFunctional(a=1.0 / q, b=0.0, q=p, lo=0.0, hi=math.inf)
        return _eval(w, m.fstar_curve(), lv)

    def rhs(m, q, lv):
        return m.prescribed[("wk", 1.0, 2.0)]

    return SweepSpec(
        "SW-03",
        "Lorentz norm growth ||f||_{L_{q,p}} <= C q ||f||_{W} as q -> inf "
        "on the critical-growth profile; predicted rate q",
        "lorentz-exponent-extrapolation",
        {"p": p},
        ("syn-sw03-a", "syn-sw03-b", "syn-sw03-c"),
        lambda m: 2.0 ** (m + 1), lambda q: q, lhs, rhs)


def _sw04() -> SweepSpec:
    alpha, p = 1.0, 2.0
    bexp = 0.5  # 1/p'

    def lhs(m, eps, lv):
        om = m.prescribed[("omega", alpha, math.inf)]
        w = WeightedFunctional(a=-(alpha - eps), b=0.0, q=math.inf,
                               lo=0.0, hi=1.0)
        return _eval(w, om, lv)

    def rhs(m, eps, lv):
        om = m.prescribed[("omega", alpha + 1.0 / p, p)]
        w = WeightedFunctional(a=-(alpha + 1.0 / p), b=0.0, q=math.inf,
                               lo=0.0, hi=math.inf)
        return _eval(w, om, lv)

    return SweepSpec(
        "SW-04",
        "Hoelder-scale blow-up of the sup-modulus seminorm as the target "
        "smoothness approaches the critical order; predicted rate "
        "(alpha - alpha0)^{-1/p'}",
        "supercritical-holder-extrapolation",
        {"alpha": alpha, "p": p, "b": bexp},
        ("syn-sw04-a", "syn-sw04-b", "syn-sw04-c"),
        lambda m: 2.0 ** -m, lambda eps: eps ** -bexp, lhs, rhs)


def _sw05() -> SweepSpec:
    alpha, p, q = 0.5, 2.0, 2.0
    order = alpha + 1.0 / p

    def lhs(m, lam, lv):
        om = m.prescribed[("omega", order, math.inf)]
        w = WeightedFunctional(a=-(alpha - lam), b=0.0, q=q, lo=0.0,
                               hi=math.inf)
        return _eval(w, om, lv)

    def rhs(m, lam, lv):
        om = m.prescribed[("omega", order, 2.0)]
        w = WeightedFunctional(a=-(order - lam), b=0.0, q=q, lo=0.0,
                               hi=math.inf)
        return _eval(w, om, lv)

    return SweepSpec(
        "SW-05",
        "smoothness-seminorm transfer between metrics as lam -> 0+; "
        "predicted rate lam^{1/q}",
        "metric-transfer-extrapolation",
        {"alpha": alpha, "p": p, "q": q},
        ("syn-sw05-a", "syn-sw05-b", "syn-sw05-c"),
        lambda m: 2.0 ** -(m + 1), lambda lam: lam ** (1.0 / q), lhs, rhs)


def _sw06() -> SweepSpec:
    d, k, q = 3, 1, 1.0

    def lhs(m, delta, lv):
        r = d / k + delta
        s = k - d / r
        om = m.omega_curve(float(k), math.inf, 2.0 ** -10, 64.0, lv)
        w = WeightedFunctional(a=-s, b=0.0, q=q, lo=0.0, hi=math.inf)
        return _eval(w, om, lv)

    def rhs(m, delta, lv):
        r = d / k + delta
        w = WeightedFunctional(a=1.0 / r, b=0.0, q=q, lo=0.0, hi=math.inf)
        return _eval(w, m.grad_fstar_curve(), lv)

    return SweepSpec(
        "SW-06",
        "smoothness-seminorm blow-up of the sup-metric embedding as the "
        "Lorentz exponent r -> (d/k)+; predicted rate (r - d/k)^{-1/q} "
        "(radial, d=3, k=1, q=1)",
        "supnorm-lorentz-extrapolation",
        {"d": d, "k": k, "q": q},
        ("rad-gauss3", "rad-exp3", "rad-bump3"),
        lambda m: 2.0 ** -m, lambda delta: delta ** (-1.0 / q), lhs, rhs)


def _sw07() -> SweepSpec:
    d, k, q = 3, 1, 1.0

    def lhs(m, rstar, lv):
        w = WeightedFunctional(a=1.0 / rstar, b=0.0, q=q, lo=0.0, hi=math.inf)
        return _eval(w, m.fstar_curve(), lv)

    def rhs(m, rstar, lv):
        r = d * rstar / (d + k * rstar)
        w = WeightedFunctional(a=1.0 / r, b=0.0, q=q, lo=0.0, hi=math.inf)
        return _eval(w, m.grad_fstar_curve(), lv)

    return SweepSpec(
        "SW-07",
        "Lorentz-target blow-up as r -> (d/k)- with r* = dr/(d-kr) -> inf; "
        "predicted rate (r*)^{1/q} (radial, d=3, k=1, q=1)",
        "talenti-scale-extrapolation",
        {"d": d, "k": k, "q": q},
        ("rad-gauss3", "rad-exp3", "rad-bump3"),
        lambda m: 3.0 * (3.0 - 2.0 ** -m) / (2.0 ** -m),
        lambda rstar: rstar ** (1.0 / q), lhs, rhs)


_SWEEP_BUILDERS = [_sw01, _sw02, _sw03, _sw04, _sw05, _sw06, _sw07]
_SWEEP_CACHE: Optional[list] = None


def sweep_catalog() -> list:
    global _SWEEP_CACHE
    if _SWEEP_CACHE is None:
        _SWEEP_CACHE = [b() for b in _SWEEP_BUILDERS]
    return _SWEEP_CACHE


def get_sweep(sweep_id: str) -> SweepSpec:
    for s in sweep_catalog():
        if s.id == sweep_id:
            return s
    raise UnknownIdError(f"unknown sweep id {sweep_id!r}")


# ---------------------------------------------------------------------------
# sharpness probes
# ---------------------------------------------------------------------------


@dataclass
class GrowthReport:
    id: str
    family: str
    member_ids: list
    constants: list
    growth_factor: float
    verdict: str

    def to_dict(self) -> Dict:
        return {"id": self.id, "family": self.family,
                "member_ids": self.member_ids,
                "constants": [float(c) for c in self.constants],
                "growth_factor": float(self.growth_factor),
                "verdict": self.verdict}


def _pw10_q_variant_constant(member: CorpusFunction, q: float,
                             t_nodes=None) -> float:
    """sup_t LHS/RHS for the critical-transfer inequality with outer
    exponent q in the right-hand integral (true statement needs q <= 1)."""
    alpha, p = 0.5, 2.0
    b = 0.5
    if t_nodes is None:
        t_nodes = 2.0 ** np.arange(-20, 0, dtype=float)
    om_inf = member.prescribed.get(("omega", alpha, math.inf))
    om_p = member.prescribed.get(("omega", alpha + 1.0 / p, p))
    if om_inf is None or om_p is None:
        raise FuncspaceError(f"{member.id}: probe needs prescribed curves")
    best = 0.0
    for t in t_nodes:
        T = t * (1.0 - math.log(t)) ** (b / alpha)
        lhs = float(np.asarray(om_inf.value(t)).reshape(-1)[0])
        w = WeightedFunctional(a=-1.0 / p, b=0.0, q=q, lo=0.0, hi=T)
        rhs = _eval(w, om_p)
        if rhs > 0:
            best = max(best, lhs / rhs)
    return best


def sharpness_probe(target_id: str, family_id: str = "probe-eps",
                    grid=None, growth_threshold: float = 10.0) -> GrowthReport:
    """Evaluate an empirical constant along a parameterized family.

    Verdict 'growth' when the constant increases by at least the threshold
    from the first to the last member; 'bounded' otherwise.
    """
    members = family(family_id, grid)
    if len(members) < 2:
        raise DegenerateFitError("sharpness probe needs a family of >= 2 "
                                 "members (>= 5 recommended)")
    constants = []
    for m in members:
        if target_id == "PW-10:q=2":
            constants.append(_pw10_q_variant_constant(m, q=2.0))
        elif target_id == "PW-10:q=1":
            constants.append(_pw10_q_variant_constant(m, q=1.0))
        else:
            spec = get_check(target_id)
            constants.append(run_check(spec, m).empirical_constant)
    growth = constants[-1] / max(constants[0], 1e-300)
    verdict = "growth" if growth >= growth_threshold else "bounded"
    return GrowthReport(target_id, family_id, [m.id for m in members],
                        constants, growth, verdict)
