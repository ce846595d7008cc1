"""Registry and runner for the pointwise rearrangement/modulus inequalities.

Every check computes LHS(t)/RHS(t) over a t-grid and its corpus members,
reports the empirical constant (the sup ratio), and passes when that
constant stays within budget and is stable under quadrature/sampling
refinement.  The implied inequality constants are treated as empirical
outputs throughout; nothing is asserted against book values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from .core import StepFunction
from .corpus import CorpusFunction, get_member
from .errors import (DivergenceError, FuncspaceError,
                     HypothesisViolationError, UnknownIdError)
from .kfunc import check_lemma39
from .norms import conjugate
from .quadrature import (Curve, TableCurve, WeightedFunctional, as_curve,
                         eval_functional)
from .rearrange import DecreasingProfile

DX_LEVEL = {0: math.log(2.0) / 4.0, 1: math.log(2.0) / 8.0}
STABILITY_TOL = 0.10
DEFAULT_BUDGET = 64.0


def _eval(w: WeightedFunctional, F, level: int) -> float:
    return eval_functional(w, F, _dx=DX_LEVEL[level])


# ---------------------------------------------------------------------------
# spec and report types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckSpec:
    id: str
    description: str
    anchor: str
    params: Dict
    members: tuple
    t_nodes: tuple
    lhs: Callable
    rhs: Callable
    budget: float = DEFAULT_BUDGET
    two_sided: bool = False
    probe: bool = False

    def validate(self):
        v = self.params.get("_validator")
        if v is not None and not self.probe:
            v(self.params)


@dataclass
class CheckReport:
    id: str
    member: str
    ratios: list
    t_nodes: list
    empirical_constant: float
    refinement_delta: float
    passed: bool
    skipped: bool = False
    reason: str = ""
    extra: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "id": self.id, "member": self.member,
            "empirical_constant": self.empirical_constant,
            "refinement_delta": self.refinement_delta,
            "passed": self.passed, "skipped": self.skipped,
            "reason": self.reason,
            "t_nodes": [float(t) for t in self.t_nodes],
            "ratios": [float(r) for r in self.ratios],
            "extra": self.extra,
        }


def run_check(spec: CheckSpec, member: CorpusFunction,
              stability_tol: float = STABILITY_TOL) -> CheckReport:
    """Evaluate one check on one member at base and refined resolution."""
    spec.validate()
    if member.skip_in_ratios:
        return CheckReport(spec.id, member.id, [], [], 0.0, 0.0, True,
                           skipped=True, reason="zero member")
    t_nodes = np.asarray(spec.t_nodes, dtype=float)

    def constant_at(level: int):
        ratios, used = [], []
        for t in t_nodes:
            try:
                lo = spec.lhs(member, float(t), level)
                hi = spec.rhs(member, float(t), level)
            except DivergenceError as exc:
                raise DivergenceError(f"{spec.id}/{member.id} at t={t}: {exc}")
            if math.isnan(lo) or math.isnan(hi):
                return None, [], []
            if hi <= 0.0:
                if lo > 1e-12:
                    return math.inf, [math.inf], [float(t)]
                continue
            ratios.append(lo / hi)
            used.append(float(t))
        if not ratios:
            return 0.0, [], []
        return max(ratios), ratios, used

    c0, ratios, used = constant_at(0)
    if c0 is None:
        return CheckReport(spec.id, member.id, [], [], math.nan, math.nan,
                           False, reason="NaN encountered")
    c1, _, _ = constant_at(1)
    drift = abs(c0 - c1) / max(abs(c1), 1e-300) if c0 > 0 else 0.0
    passed = (c0 <= spec.budget) and (drift <= stability_tol) \
        and math.isfinite(c0)
    return CheckReport(spec.id, member.id, ratios, used, c0, drift,
                       bool(passed))


def run_check_all(spec: CheckSpec,
                  stability_tol: float = STABILITY_TOL) -> list:
    return [run_check(spec, get_member(mid), stability_tol)
            for mid in spec.members]


# ---------------------------------------------------------------------------
# shared curve builders (cached on the member)
# ---------------------------------------------------------------------------


def _fstar_eff_support(member: CorpusFunction) -> float:
    key = "fstar_eff_support"
    if key not in member._cache:
        c = member.fstar_curve()
        if c.support is not None and math.isfinite(c.support):
            member._cache[key] = float(c.support)
        else:
            t = np.geomspace(1e-6, 1e9, 400)
            v = c.value(t)
            nz = np.nonzero(v > 1e-13 * max(float(v[0]), 1e-300))[0]
            member._cache[key] = float(t[nz[-1]]) if len(nz) else 1.0
    return member._cache[key]


def _kolyada_inner_curve(member: CorpusFunction, p: float,
                         level: int) -> Curve:
    """I(u)^{1/p} with I(u) = int_0^u (f*(v) - f*(u))^p dv, as a table."""
    key = ("kolyada_inner", p, level)
    if key not in member._cache:
        fs = member.fstar_curve()
        U = _fstar_eff_support(member)
        n_u, n_v = (160, 140) if level == 0 else (240, 200)
        u_nodes = np.geomspace(U * 1e-9, U * 4.0, n_u)
        rel = np.geomspace(1e-9, 1.0, n_v)
        xrel = np.log(rel)
        wrel = np.empty_like(rel)
        wrel[1:-1] = 0.5 * (xrel[2:] - xrel[:-2])
        wrel[0] = xrel[1] - xrel[0]
        wrel[-1] = xrel[-1] - xrel[-2]
        V = u_nodes[:, None] * rel[None, :]
        FV = fs.value(V.ravel()).reshape(V.shape)
        FU = fs.value(u_nodes)[:, None]
        integrand = np.maximum(FV - FU, 0.0) ** p * V  # dv = v dx
        I = integrand @ wrel
        vals = I ** (1.0 / p)
        plateau_val = float(vals[-1])
        member._cache[key] = TableCurve(u_nodes, vals,
                                        plateau=(float(u_nodes[-1]),
                                                 plateau_val),
                                        name=f"kolyadaI[{member.id}]")
    return member._cache[key]


def _cumulative_curve(member: CorpusFunction, a_pow: float,
                      level: int) -> Curve:
    """G(v) = int_0^v u^{a_pow} f*(u) du/u as a table with plateau."""
    key = ("cumcurve", a_pow, level)
    if key not in member._cache:
        fs = member.fstar_curve()
        U = _fstar_eff_support(member)
        n = 500 if level == 0 else 800
        nodes = np.geomspace(U * 1e-10, U * 4.0, n)
        x = np.log(nodes)
        vals = fs.value(nodes) * nodes ** a_pow
        inc = np.empty_like(vals)
        inc[0] = vals[0] / max(a_pow, 1e-9)  # tail below the first node
        inc[1:] = 0.5 * (vals[1:] + vals[:-1]) * np.diff(x)
        G = np.cumsum(inc)
        member._cache[key] = TableCurve(nodes, G,
                                        plateau=(float(nodes[-1]),
                                                 float(G[-1])),
                                        name=f"cum[{member.id},{a_pow}]")
    return member._cache[key]


def _truncated_lp(member: CorpusFunction, p: float, lo: float, hi: float,
                  level: int) -> float:
    """(int_lo^hi f*(u)^p du)^{1/p} with the step fast path."""
    fs = member.fstar()
    if isinstance(fs, StepFunction):
        key = ("cum_pow", p)
        if key not in member._cache:
            m = fs.measures
            member._cache[key] = np.concatenate(
                ([0.0], np.cumsum(m * fs.values ** p)))
        cum = member._cache[key]

        def at(T):
            if T <= 0:
                return 0.0
            i = int(np.searchsorted(fs.edges, T, side="right"))
            if i >= len(fs.values):
                return float(cum[-1] + max(T - fs.edges[-1], 0.0) *
                             fs.tail_value ** p)
            prev = fs.edges[i - 1] if i > 0 else 0.0
            return float(cum[i] + (T - prev) * fs.values[i] ** p)

        return max(at(hi) - at(lo), 0.0) ** (1.0 / p)
    w = WeightedFunctional(a=1.0 / p, b=0.0, q=p, lo=lo, hi=hi)
    return _eval(w, member.fstar_curve(), level)


# ---------------------------------------------------------------------------
# hypothesis validators
# ---------------------------------------------------------------------------


def _v_q_ge_p(params):
    if params["q"] < params["p"]:
        raise HypothesisViolationError(
            f"needs q >= p, got q={params['q']}, p={params['p']}")


def _v_q_le_p(params):
    if params["q"] > params["p"]:
        raise HypothesisViolationError("needs q <= p")


def _v_q_le_1(params):
    if params["q"] > 1.0:
        raise HypothesisViolationError("needs q <= 1")


def _v_q0_le_q1(params):
    if params["q0"] > params["q1"]:
        raise HypothesisViolationError("needs q0 <= q1")


def _v_subcritical(params):
    if not params["k"] < params["d"] / params["p"]:
        raise HypothesisViolationError("needs k < d/p")


def _v_b_ge_conj(params):
    if params["b"] < 1.0 / conjugate(params["p"]):
        raise HypothesisViolationError("needs b >= 1/p'")


def _v_b_ge_1(params):
    if params["b"] < 1.0:
        raise HypothesisViolationError("needs b >= 1")


def _chain(*validators):
    def v(params):
        for f in validators:
            f(params)
    return v


# ---------------------------------------------------------------------------
# t-grids
# ---------------------------------------------------------------------------

T_RADIAL = tuple(2.0 ** np.arange(-20, 4))
T_RADIAL_WIDE = tuple(2.0 ** np.arange(-20, 7))
T_TORUS = tuple(np.concatenate((2.0 ** np.arange(-20, 0), [0.9])))
T_SQUARE = tuple(np.concatenate((2.0 ** np.arange(-20, -1), [0.7])))


# ---------------------------------------------------------------------------
# the builtin catalog
# ---------------------------------------------------------------------------

_RADIAL3 = ("rad-gauss3", "rad-exp3", "rad-bump3")


def _pw01() -> CheckSpec:
    d, k, p = 3, 1, 2.0
    pstar = d * p / (d - k * p)
    qs = (2.0, 3.0)

    def lhs(m, t, lv):
        out = 0.0
        for q in qs:
            piece1 = _truncated_lp(m, p, 0.0, t ** d, lv)
            w2 = WeightedFunctional(a=1.0 / pstar, b=0.0, q=q, lo=t ** d,
                                    hi=math.inf)
            piece2 = t ** k * _eval(w2, m.fstar_curve(), lv)
            out = max(out, piece1 + piece2)
        return out

    def rhs(m, t, lv):
        return m.omega_at(k, p, t, lv)

    return CheckSpec(
        "PW-01",
        "subcritical rearrangement tail bound: "
        "(int_0^{t^d} f*^p)^{1/p} + t^k (int_{t^d}^inf u^{q/p*} f*^q du/u)^{1/q}"
        " <= C omega_k(f,t)_p",
        "sobolev-subcritical-homogeneous",
        {"d": d, "k": k, "p": p, "q": min(qs),
         "_validator": _chain(_v_q_ge_p, _v_subcritical)},
        _RADIAL3, T_RADIAL, lhs, rhs)


def _pw02() -> CheckSpec:
    p = 2.0

    def lhs(m, t, lv):
        d = m.domain.dimension
        g = _kolyada_inner_curve(m, p, lv)
        w = WeightedFunctional(a=-1.0 / d, b=0.0, q=p, lo=t ** d, hi=math.inf)
        return t * _eval(w, g, lv)

    def rhs(m, t, lv):
        return m.omega_at(1.0, p, t, lv)

    return CheckSpec(
        "PW-02",
        "oscillation-integral bound: t (int_{t^d}^inf u^{-p/d} "
        "int_0^u (f*(v)-f*(u))^p dv du/u)^{1/p} <= C omega_1(f,t)_p",
        "rearrangement-oscillation-first-order",
        {"p": p}, _RADIAL3, T_RADIAL, lhs, rhs)


def _pw03() -> CheckSpec:
    d = 3

    def lhs(m, t, lv):
        piece1 = _truncated_lp(m, 1.0, 0.0, t ** d, lv)
        w2 = WeightedFunctional(a=1.0 - 1.0 / d, b=0.0, q=1.0, lo=t ** d,
                                hi=math.inf)
        return piece1 + t * _eval(w2, m.fstar_curve(), lv)

    def rhs(m, t, lv):
        return m.omega_at(1.0, 1.0, t, lv)

    return CheckSpec(
        "PW-03",
        "endpoint p=1 tail bound: int_0^{t^d} f* du + "
        "t int_{t^d}^inf u^{-1/d} f* du <= C omega_1(f,t)_1",
        "rearrangement-endpoint-l1",
        {"d": d, "p": 1.0}, _RADIAL3, T_RADIAL, lhs, rhs)


def _pw04() -> CheckSpec:
    d, k, p = 3, 1, 2.0
    q0, q1 = 2.0, 3.0
    inv_alpha = 1.0 - k / d

    def lhs(m, t, lv):
        G = _cumulative_curve(m, inv_alpha, lv)
        a = 1.0 / p - k / d - inv_alpha
        w = WeightedFunctional(a=a, b=0.0, q=q1, lo=t, hi=math.inf)
        return _eval(w, G, lv)

    def rhs(m, t, lv):
        w = WeightedFunctional(a=1.0 / p, b=0.0, q=q0, lo=t, hi=math.inf)
        return _eval(w, m.grad_maximal_curve(), lv)

    return CheckSpec(
        "PW-04",
        "rearrangement-vs-derivative tail bound with Lorentz indices "
        "q0 <= q1 (full-strength form, radial k=1)",
        "lorentz-sobolev-full",
        {"d": d, "k": k, "p": p, "q0": q0, "q1": q1,
         "_validator": _v_q0_le_q1},
        _RADIAL3, T_RADIAL, lhs, rhs)


def _pw05() -> CheckSpec:
    d, k, p, q = 3, 1, 2.0, 2.0

    def lhs(m, t, lv):
        return m.omega_at(float(k), p, t, lv)

    def rhs(m, t, lv):
        g = m.grad_fstar_curve()
        w1 = WeightedFunctional(a=k / d + 1.0 / p, b=0.0, q=q, lo=0.0,
                                hi=t ** d)
        piece1 = _eval(w1, g, lv)
        w2 = WeightedFunctional(a=1.0 / p, b=0.0, q=p, lo=t ** d, hi=math.inf)
        piece2 = t ** k * _eval(w2, g, lv)
        return piece1 + piece2

    return CheckSpec(
        "PW-05",
        "omega_k(f,t)_p <= C [ (int_0^{t^d} (u^{k/d+1/p} |grad f|*)^q du/u)^{1/q}"
        " + t^k (int_{t^d}^inf |grad f|*^p du)^{1/p} ]",
        "modulus-by-derivative-rearrangement",
        {"d": d, "k": k, "p": p, "q": q, "_validator": _v_q_le_p},
        _RADIAL3, T_RADIAL, lhs, rhs)


def _pw06() -> CheckSpec:
    d, p = 2, 2.0
    b = 1.0 / conjugate(p)
    kk = int(d / p)

    def lhs(m, t, lv):
        piece1 = _truncated_lp(m, p, 0.0, t ** d, lv)
        w = WeightedFunctional(a=0.0, b=-b, q=math.inf, lo=t ** d, hi=1.0)
        sup = _eval(w, m.fstar_curve(), lv)
        return piece1 + t ** (d / p) * (1.0 - math.log(t)) ** b * sup

    def rhs(m, t, lv):
        lg = (1.0 - math.log(t)) ** b
        return t ** (d / p) * lg * m.lp(p) + lg * m.omega_at(kk, p, t, lv)

    return CheckSpec(
        "PW-06",
        "critical growth bound on the unit square: truncated L_p mass plus "
        "log-weighted sup of f* <= C log-weighted (norm + modulus)",
        "trudinger-critical-square",
        {"d": d, "p": p, "b": b, "k": kk, "_validator": _v_b_ge_conj},
        ("sq-sinsin", "sq-bump", "sq-cos2", "sq-poly"), T_SQUARE, lhs, rhs)


def _pw07() -> CheckSpec:
    d, p, b = 2, 2.0, 1.0
    kk = int(d / p)

    def lhs(m, t, lv):
        lg = 1.0 - math.log(t)
        piece1 = lg ** (1.0 / p) * _truncated_lp(m, p, 0.0, t ** d, lv)
        w = WeightedFunctional(a=0.0, b=-b, q=p, lo=t ** d, hi=1.0)
        piece2 = t ** (d / p) * lg ** b * _eval(w, m.fstar_curve(), lv)
        return piece1 + piece2

    def rhs(m, t, lv):
        lg = (1.0 - math.log(t)) ** b
        return t ** (d / p) * lg * m.lp(p) + lg * m.omega_at(kk, p, t, lv)

    return CheckSpec(
        "PW-07",
        "refined critical growth bound (log-integrated f* tail) on the "
        "unit square",
        "brezis-wainger-critical-square",
        {"d": d, "p": p, "b": b, "k": kk, "_validator": _v_b_ge_1},
        ("sq-sinsin", "sq-bump", "sq-cos2", "sq-poly"), T_SQUARE, lhs, rhs)


def _pw08() -> CheckSpec:
    k, q = 1, 1.0

    def lhs(m, t, lv):
        return m.omega_at(float(k), math.inf, t, lv)

    def rhs(m, t, lv):
        d = m.domain.dimension
        w = WeightedFunctional(a=k / d, b=0.0, q=q, lo=0.0, hi=t ** d)
        return _eval(w, m.grad_fstar_curve(), lv)

    return CheckSpec(
        "PW-08",
        "sup-norm modulus by derivative rearrangement: omega_k(f,t)_inf <= "
        "C (int_0^{t^d} (u^{k/d} |grad f|*)^q du/u)^{1/q}, q <= 1",
        "supnorm-modulus-derivative",
        {"k": k, "q": q, "p": math.inf, "_validator": _v_q_le_1},
        ("rad-gauss3", "rad-exp3", "rad-bump3", "rad-gauss2", "rad-bump2"),
        T_RADIAL, lhs, rhs)


def _pw09() -> CheckSpec:
    d, k, q = 3, 1, 1.0
    inv_alpha = 1.0 - k / d

    def lhs(m, t, lv):
        w = WeightedFunctional(a=inv_alpha, b=0.0, q=1.0, lo=0.0, hi=t)
        return t ** (-inv_alpha) * _eval(w, m.fstar_curve(), lv)

    def rhs(m, t, lv):
        w = WeightedFunctional(a=k / d, b=0.0, q=q, lo=t, hi=math.inf)
        return _eval(w, m.grad_maximal_curve(), lv)

    return CheckSpec(
        "PW-09",
        "averaged rearrangement bound: t^{k/d-1} int_0^t u^{1-k/d} f* du/u "
        "<= C (int_t^inf (u^{k/d} |grad f|**)^q du/u)^{1/q}",
        "averaged-rearrangement-derivative",
        {"d": d, "k": k, "q": q, "_validator": _v_q_le_1},
        _RADIAL3, T_RADIAL, lhs, rhs)


_TORUS_PW10 = ("torus-sin", "torus-lacunary", "torus-r69")


def _pw10() -> CheckSpec:
    alpha, p = 0.5, 2.0
    b = 1.0 / conjugate(p)

    def lhs(m, t, lv):
        return m.omega_at(alpha, math.inf, t, lv)

    def rhs(m, t, lv):
        T = t * (1.0 - math.log(t)) ** (b / alpha)
        kcurve = m.omega_curve(alpha + 1.0 / p, p, 2.0 ** -24, 4.0, lv)
        w = WeightedFunctional(a=-1.0 / p, b=0.0, q=1.0, lo=0.0, hi=T)
        return _eval(w, kcurve, lv)

    return CheckSpec(
        "PW-10",
        "critical-to-sup modulus transfer: omega_a(f,t)_inf <= C "
        "int_0^{t(1-log t)^{1/(a p')}} u^{-1/p} omega_{a+1/p}(f,u)_p du/u",
        "sharp-critical-transfer",
        {"alpha": alpha, "p": p, "b": b}, _TORUS_PW10, T_TORUS, lhs, rhs)


def _pw11() -> CheckSpec:
    alpha, p, q = 0.5, 2.0, 4.0
    theta = 1.0 / p - 1.0 / q

    def lhs(m, t, lv):
        return m.omega_at(alpha, q, t, lv)

    def rhs(m, t, lv):
        kcurve = m.omega_curve(alpha + theta, p, 2.0 ** -24, 4.0, lv)
        w = WeightedFunctional(a=-theta, b=0.0, q=q, lo=0.0, hi=t)
        return _eval(w, kcurve, lv)

    return CheckSpec(
        "PW-11",
        "sharp metric-upgrade inequality: omega_a(f,t)_q <= C "
        "(int_0^t (u^{-theta} omega_{a+theta}(f,u)_p)^q du/u)^{1/q}, "
        "theta = 1/p - 1/q",
        "sharp-ulyanov",
        {"alpha": alpha, "p": p, "q": q,
         "_validator": lambda pr: None if 1 < pr["p"] < pr["q"] < math.inf
         else (_ for _ in ()).throw(HypothesisViolationError("needs 1<p<q<inf"))},
        ("torus-sin", "torus-trig2", "torus-lacunary"), T_TORUS, lhs, rhs)


def _pw12() -> CheckSpec:
    alpha, gamma = 0.5, 0.5

    def lhs(m, t, lv):
        return m.omega_at(alpha, math.inf, t, lv)

    def rhs(m, t, lv):
        kcurve = m.omega_curve(alpha + gamma, math.inf, 2.0 ** -24, 4.0, lv)
        w = WeightedFunctional(a=-alpha, b=0.0, q=1.0, lo=t, hi=1.0)
        return t ** alpha * _eval(w, kcurve, lv)

    return CheckSpec(
        "PW-12",
        "fractional order-reduction bound: omega_a(f,t)_inf <= C t^a "
        "int_t^1 omega_{a+g}(f,u)_inf u^{-a} du/u on small t",
        "fractional-marchaud",
        {"alpha": alpha, "gamma": gamma},
        ("torus-sin", "torus-trig2", "torus-lacunary", "torus-r69"),
        tuple(2.0 ** np.arange(-20, -1)), lhs, rhs)


def _pw13() -> CheckSpec:
    alpha, p, b = 0.5, 2.0, 1.0

    def lhs(m, t, lv):
        om_inf = m.omega_curve(alpha, math.inf, 2.0 ** -24, 4.0, lv)
        term1 = float(np.asarray(om_inf.value(t)).reshape(-1)[0])
        w = WeightedFunctional(a=-alpha, b=-b, q=p, lo=t, hi=1.0)
        lg = (1.0 - math.log(t)) ** (b - 1.0 / p)
        term2 = t ** alpha * lg * _eval(w, om_inf, lv)
        return term1 + term2

    def rhs(m, t, lv):
        T = t * (1.0 - math.log(t)) ** ((b - 1.0 / p) / alpha)
        kcurve = m.omega_curve(alpha + 1.0 / p, p, 2.0 ** -24, 4.0, lv)
        w = WeightedFunctional(a=-1.0 / p, b=0.0, q=1.0, lo=0.0, hi=T)
        return _eval(w, kcurve, lv)

    return CheckSpec(
        "PW-13",
        "refined critical transfer with the integrated sup-modulus tail "
        "on the left",
        "sharp-critical-transfer-refined",
        {"alpha": alpha, "p": p, "b": b},
        ("torus-sin", "torus-lacunary", "torus-r69"), T_TORUS, lhs, rhs)


def _pw14() -> CheckSpec:
    alpha, p, q = 0.5, 2.0, 2.0
    order = alpha + 1.0 / p

    def lhs(m, t, lv):
        om_inf = m.omega_curve(order, math.inf, 2.0 ** -24, 4.0, lv)
        w = WeightedFunctional(a=-alpha, b=0.0, q=q, lo=t, hi=math.inf)
        return t ** alpha * _eval(w, om_inf, lv)

    def rhs(m, t, lv):
        om_p = m.omega_curve(order, p, 2.0 ** -24, 4.0, lv)
        w = WeightedFunctional(a=-1.0 / p, b=0.0, q=1.0, lo=0.0, hi=t)
        return _eval(w, om_p, lv)

    return CheckSpec(
        "PW-14",
        "metric-mixing tail bound: t^a (int_t^inf (u^{-a} "
        "omega_{a+1/p}(f,u)_inf)^q du/u)^{1/q} <= C int_0^t u^{-1/p} "
        "omega_{a+1/p}(f,u)_p du/u, q >= p",
        "smooth-metric-mixing",
        {"alpha": alpha, "p": p, "q": q, "_validator": _v_q_ge_p},
        ("torus-sin", "torus-trig2", "torus-lacunary"), T_TORUS, lhs, rhs)


def _pw15() -> CheckSpec:
    alpha, q = 0.5, 2.0
    qc = conjugate(q)
    b = 1.0 / q
    order = alpha + 1.0 / qc

    def lhs(m, t, lv):
        return m.omega_at(alpha, q, t, lv)

    def rhs(m, t, lv):
        T = t * (1.0 - math.log(t)) ** (b / alpha)
        om1 = m.omega_curve(order, 1.0, 2.0 ** -24, 4.0, lv)
        w = WeightedFunctional(a=-1.0 / qc, b=0.0, q=q, lo=0.0, hi=T)
        return _eval(w, om1, lv)

    return CheckSpec(
        "PW-15",
        "bounded-variation-scale transfer: omega_a(f,t)_q <= C "
        "(int_0^{t(1-log t)^{b/a}} (u^{-1/q'} omega_{a+1/q'}(f,u)_1)^q "
        "du/u)^{1/q}",
        "bv-scale-transfer",
        {"alpha": alpha, "q": q, "b": b},
        ("torus-sin", "torus-trig2", "torus-lacunary"), T_TORUS, lhs, rhs)


def _pw16() -> CheckSpec:
    d, p = 3, 2.0

    def lhs(m, t, lv):
        mx = m.maximal()
        fs = m.fstar()
        mv = float(np.asarray(mx(t)).reshape(-1)[0])
        fv = float(np.asarray(fs(t)).reshape(-1)[0])
        return max(mv - fv, 0.0)

    def rhs(m, t, lv):
        return t ** (-1.0 / p) * m.omega_at(1.0, p, t ** (1.0 / d), lv)

    return CheckSpec(
        "PW-16",
        "oscillation bound: f**(t) - f*(t) <= C t^{-1/p} "
        "omega_1(f, t^{1/d})_p",
        "maximal-oscillation",
        {"d": d, "p": p}, _RADIAL3, T_RADIAL_WIDE, lhs, rhs)


def _pw17() -> CheckSpec:
    d, p = 3, 2.0
    pstar = d * p / (d - p)

    def side_a(m, t, lv):
        g = _kolyada_inner_curve(m, p, lv)
        w = WeightedFunctional(a=-1.0 / d, b=0.0, q=p, lo=t ** d, hi=math.inf)
        return t * _eval(w, g, lv)

    def side_b(m, t, lv):
        piece1 = _truncated_lp(m, p, 0.0, t ** d, lv)
        w2 = WeightedFunctional(a=1.0 / pstar, b=0.0, q=p, lo=t ** d,
                                hi=math.inf)
        return piece1 + t * _eval(w2, m.fstar_curve(), lv)

    return CheckSpec(
        "PW-17",
        "two-sided equivalence of the oscillation integral and the "
        "rearrangement tail pair for 1 < p < d (both directions bounded)",
        "oscillation-tail-equivalence",
        {"d": d, "p": p}, _RADIAL3, T_RADIAL, side_a, side_b,
        two_sided=True)


def _pw18() -> CheckSpec:
    b, d = -0.5, 2

    def lhs(m, t, lv):
        rep = _lemma39_report(m, b, d)
        return rep.lhs

    def rhs(m, t, lv):
        rep = _lemma39_report(m, b, d)
        return rep.rhs

    return CheckSpec(
        "PW-18",
        "Zygmund-space extrapolation identity: sup_t (1-log t)^b f*(t) ~ "
        "sup_j 2^{jb} ||f||_{2^j d} (two-sided)",
        "zygmund-extrapolation",
        {"b": b, "d": d, "budget": 16.0},
        ("int-const", "int-indicator", "int-step3", "int-ramp"),
        (1.0,), lhs, rhs, budget=16.0, two_sided=True)


def _lemma39_report(m: CorpusFunction, b: float, d: int):
    key = ("lemma39", b, d)
    if key not in m._cache:
        fs = m.fstar()
        m._cache[key] = check_lemma39(fs, fs, b, d, member=m.id)
    return m._cache[key]


_CATALOG_BUILDERS = [
    _pw01, _pw02, _pw03, _pw04, _pw05, _pw06, _pw07, _pw08, _pw09,
    _pw10, _pw11, _pw12, _pw13, _pw14, _pw15, _pw16, _pw17, _pw18,
]

_CATALOG_CACHE: Optional[list] = None


def builtin_catalog() -> list:
    """The fixed catalog of pointwise checks (hypotheses pre-validated)."""
    global _CATALOG_CACHE
    if _CATALOG_CACHE is None:
        specs = [b() for b in _CATALOG_BUILDERS]
        for s in specs:
            s.validate()
        ids = [s.id for s in specs]
        if len(set(ids)) != len(ids):
            raise FuncspaceError("duplicate check ids in the catalog")
        _CATALOG_CACHE = specs
    return _CATALOG_CACHE


def get_check(check_id: str) -> CheckSpec:
    for s in builtin_catalog():
        if s.id == check_id:
            return s
    raise UnknownIdError(f"unknown check id {check_id!r}")


# ---------------------------------------------------------------------------
# Hardy-type average inequalities
# ---------------------------------------------------------------------------


@dataclass
class HardyReport:
    case: str
    description: str
    lhs: float
    rhs_with_constant: float
    ratio: float
    passed: bool
    extra: Dict = field(default_factory=dict)


def _hardy_numeric_average(fcurve: Curve, direction: str, n: int = 900,
                           lo: float = 1e-10, hi: float = 1.0):
    """Cumulative or tail average of a nonnegative curve as a TableCurve."""
    nodes = np.geomspace(lo, hi, n)
    x = np.log(nodes)
    vals = fcurve.value(nodes) * nodes   # integrand f(u) du = f e^x dx
    inc = np.concatenate(([vals[0]], 0.5 * (vals[1:] + vals[:-1]) * np.diff(x)))
    if direction == "from_zero":
        G = np.cumsum(inc)
        return TableCurve(nodes, G, plateau=(hi, float(G[-1])), name="cumint")
    G = np.cumsum(inc[::-1])[::-1]
    return TableCurve(nodes, np.maximum(G, 1e-300), name="tailint",
                      low_exponent=0.0)


def check_hardy(case: str, f=None, params: Optional[Dict] = None) -> HardyReport:
    """Average-vs-weight inequalities on (0, infinity) and (0, 1).

    L31_left / L31_right carry the exact constant p/alpha; L32, L33, L34 are
    empirical with a budget.
    """
    params = dict(params or {})
    budget = params.pop("budget", DEFAULT_BUDGET)
    if case in ("L31_left", "L31_right"):
        p = params.get("p", 2.0)
        alpha = params.get("alpha", 1.0)
        beta = params.get("beta", 1.0)
        if alpha <= 0 or p < 1:
            raise HypothesisViolationError("needs alpha > 0 and p >= 1")
        if beta * p <= alpha and case == "L31_left":
            raise HypothesisViolationError("family needs beta p > alpha")
        return _hardy_l31(case, p, alpha, beta)
    if case == "L32":
        p = params.get("p", 0.5)
        alpha = params.get("alpha", 0.2)
        b = params.get("b", 1.0)
        lam = params.get("lam", 0.5)
        # f(t) = t^{lam-1} g(t), g decreasing: required for 0 < p < 1
        fcurve = Curve(lambda t: np.asarray(t, float) ** (lam - 1.0) *
                       (1.0 - np.log(np.maximum(t, 1e-300))),
                       smallt=(lam - 1.0, 1.0), support=1.0, name="l32")
        G = _hardy_numeric_average(fcurve, "from_zero")
        wl = WeightedFunctional(a=-alpha / p, b=b / p, q=p, lo=1e-8, hi=1.0)
        lhs = _eval(wl, G, 0)
        wr = WeightedFunctional(a=(-alpha + p) / p, b=b / p, q=p, lo=1e-8,
                                hi=1.0)
        rhs = _eval(wr, fcurve, 0)
        ratio = lhs / rhs if rhs > 0 else math.inf
        return HardyReport(case, "average bound with log weight, 0<p<1, "
                           "f = t^{lam-1} g(t) with g decreasing",
                           lhs, budget * rhs, ratio, ratio <= budget)
    if case == "L33":
        p = params.get("p", 2.0)
        b = params.get("b", -1.0)
        if b + 1.0 / p >= 0:
            raise HypothesisViolationError("needs b + 1/p < 0")
        fcurve = Curve(lambda t: 1.0 / np.maximum(t, 1e-300) *
                       (1.0 - np.log(np.maximum(t, 1e-300))) ** -2.0,
                       smallt=(-1.0, -2.0), support=1.0, name="l33")
        G = _hardy_numeric_average(fcurve, "to_one")
        wl = WeightedFunctional(a=0.0, b=b, q=p, lo=1e-8, hi=1.0)
        lhs = _eval(wl, G, 0)
        wr = WeightedFunctional(a=1.0, b=b + 1.0, q=p, lo=1e-8, hi=1.0)
        rhs = _eval(wr, fcurve, 0)
        ratio = lhs / rhs if rhs > 0 else math.inf
        return HardyReport(case, "limiting log-weight tail-average bound",
                           lhs, budget * rhs, ratio, ratio <= budget)
    if case == "L34":
        q = params.get("q", 2.0)
        alpha = params.get("alpha", -0.5)
        beta = params.get("beta", 0.25)
        t = params.get("t", 0.1)
        if alpha >= 0 or t >= 0.5:
            raise HypothesisViolationError("needs alpha < 0 and t < 1/2")
        if f is None:
            f = Curve(lambda u: (1.0 - np.log(np.maximum(u, 1e-300))) ** 2.0,
                      smallt=(0.0, 2.0), support=1.0, name="l34-default")
        fcurve = as_curve(f)
        # both sides of the two-sided average identity
        G = _hardy_numeric_average(
            Curve(lambda u: fcurve.value(u) * np.asarray(u, float) ** beta,
                  smallt=(beta, fcurve.smallt[1]), support=1.0), "from_zero")
        wl = WeightedFunctional(a=alpha, b=0.0, q=q, lo=t, hi=1.0)
        lhs = _eval(wl, G, 0)
        w1 = WeightedFunctional(a=beta + 1.0, b=0.0, q=1.0, lo=0.0, hi=t)
        term1 = t ** alpha * _eval(w1, fcurve, 0)
        w2 = WeightedFunctional(a=alpha + beta + 1.0, b=0.0, q=q, lo=t, hi=1.0)
        term2 = _eval(w2, fcurve, 0)
        rhs = term1 + term2
        ratio = lhs / rhs if rhs > 0 else math.inf
        ok = (1.0 / budget) <= ratio <= budget
        return HardyReport(case, "two-sided split of the weighted average "
                           "(decreasing f, t < 1/2)",
                           lhs, rhs, ratio, ok,
                           extra={"term1": term1, "term2": term2})
    raise UnknownIdError(f"unknown Hardy case {case!r}")


def _hardy_l31(case: str, p: float, alpha: float, beta: float) -> HardyReport:
    """Sharp-constant averages on the closed-form family t^{beta-1} chi_(0,1)."""
    fine_dx = math.log(2.0) / 32.0  # the family is asserted at 1e-4 relative
    if case == "L31_left":
        G = Curve(lambda t: np.minimum(np.asarray(t, float), 1.0) ** beta / beta,
                  smallt=(beta, 0.0), plateau=(1.0, 1.0 / beta), name="cum")
        wl = WeightedFunctional(a=-alpha / p, b=0.0, q=p, lo=0.0, hi=math.inf)
        lhs = eval_functional(wl, G, _dx=fine_dx)
        analytic = (1.0 / beta) * (1.0 / (beta * p - alpha) +
                                   1.0 / alpha) ** (1.0 / p)
        rhs = (beta * p - alpha) ** (-1.0 / p)
    else:
        def tail(t):
            t = np.asarray(t, dtype=float)
            return np.where(t < 1.0, (1.0 - np.minimum(t, 1.0) ** beta) / beta,
                            0.0)
        G = Curve(tail, smallt=(0.0, 0.0), support=1.0, name="tail")
        wl = WeightedFunctional(a=alpha / p, b=0.0, q=p, lo=0.0, hi=1.0)
        lhs = eval_functional(wl, G, _dx=fine_dx)
        from scipy.special import beta as beta_fn
        analytic = ((1.0 / beta) ** p * beta_fn(alpha / beta, p + 1.0)
                    / beta) ** (1.0 / p)
        rhs = (beta * p + alpha) ** (-1.0 / p)
    bound = (p / alpha) * rhs
    return HardyReport(case, "sharp-constant average inequality on "
                       "t^{beta-1} chi_(0,1)",
                       lhs, bound, lhs / bound, lhs <= bound * (1 + 1e-9),
                       extra={"analytic_lhs": analytic, "rhs": rhs,
                              "p": p, "alpha": alpha, "beta": beta})
