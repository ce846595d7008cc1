"""Norm and seminorm functionals used by the inequality checks.

Everything here consumes either a rearrangement profile (for the
rearrangement-invariant norms) or a modulus curve (for the smoothness
seminorms).  Triviality gates reject exactly the parameter sets on which the
corresponding space collapses to {0}.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .core import StepFunction
from .errors import FuncspaceError, TrivialSpaceError
from .quadrature import (Curve, LogGrid, WeightedFunctional, as_curve,
                         eval_functional)
from .rearrange import DecreasingProfile

__all__ = [
    "conjugate", "lorentz_zygmund_trivial", "lorentz_zygmund_norm",
    "besov_constant", "besov_norm", "lipschitz_log_norm",
    "sobolev_seminorm_via_modulus", "gagliardo_seminorm",
]


def conjugate(p: float) -> float:
    """Hoelder conjugate p' with 1/p + 1/p' = 1."""
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


# ---------------------------------------------------------------------------
# Lorentz-Zygmund
# ---------------------------------------------------------------------------


def lorentz_zygmund_trivial(p: float, q: float, b: float) -> bool:
    """The space is {0} when p = inf, q < inf, b >= -1/q, or p = q = inf, b > 0."""
    if math.isinf(p) and not math.isinf(q) and b >= -1.0 / q:
        return True
    if math.isinf(p) and math.isinf(q) and b > 0:
        return True
    return False


def lorentz_zygmund_norm(fstar, p: float, q: float, b: float,
                         total_measure: float = math.inf,
                         grid: Optional[LogGrid] = None) -> float:
    """Quasi-norm (int_0^{|X|} (t^{1/p} (1+|log t|)^b f*(t))^q dt/t)^{1/q}.

    ``fstar`` must already be nonincreasing (a StepFunction, a
    DecreasingProfile, or a certified Curve); piecewise-exact when it is a
    StepFunction.
    """
    if lorentz_zygmund_trivial(p, q, b):
        raise TrivialSpaceError(f"L_({p},{q})(log L)_{b} is trivial")
    a = 0.0 if math.isinf(p) else 1.0 / p
    w = WeightedFunctional(a=a, b=b, q=q, lo=0.0, hi=total_measure)
    return eval_functional(w, fstar, grid=grid)


# ---------------------------------------------------------------------------
# Besov / Lipschitz / Sobolev-via-modulus
# ---------------------------------------------------------------------------


def besov_constant(s: float, k: float, q: float) -> float:
    """Normalization c_{s,k,q} = (k / ((k-s) s q))^{1/q}; 1 when q = inf."""
    if math.isinf(q):
        return 1.0
    return (k / ((k - s) * s * q)) ** (1.0 / q)


def besov_norm(omega, s: float, q: float, k: float,
               variant: str = "homogeneous",
               lp_value: Optional[float] = None,
               grid: Optional[LogGrid] = None) -> float:
    """Besov (quasi-)seminorms built from a modulus curve of order k.

    homogeneous: (int_0^inf (t^{-s} omega(t))^q dt/t)^{1/q}  (needs decay
    certificates on the curve); truncated: the same over (0, 1);
    inhomogeneous: c_{s,k,q} * ||f||_p + truncated.
    """
    if not (0 < s < k):
        raise FuncspaceError("Besov families need 0 < s < k")
    curve = as_curve(omega)
    if variant == "homogeneous":
        w = WeightedFunctional(a=-s, b=0.0, q=q, lo=0.0, hi=math.inf)
        return eval_functional(w, curve, grid=grid)
    if variant == "truncated":
        w = WeightedFunctional(a=-s, b=0.0, q=q, lo=0.0, hi=1.0)
        return eval_functional(w, curve, grid=grid)
    if variant == "inhomogeneous":
        if lp_value is None:
            raise FuncspaceError("inhomogeneous Besov norm needs ||f||_p")
        w = WeightedFunctional(a=-s, b=0.0, q=q, lo=0.0, hi=1.0)
        return besov_constant(s, k, q) * lp_value + \
            eval_functional(w, curve, grid=grid)
    raise FuncspaceError(f"unknown Besov variant {variant!r}")


def besov_log_norm(omega, s: float, b: float, q: float,
                   hi: float = 1.0, grid: Optional[LogGrid] = None) -> float:
    """Logarithmic-smoothness seminorm (int (t^{-s}(1+|log t|)^b omega)^q dt/t)^{1/q}."""
    w = WeightedFunctional(a=-s, b=b, q=q, lo=0.0, hi=hi)
    return eval_functional(w, as_curve(omega), grid=grid)


def lipschitz_log_norm(omega, s: float, b: float, q: float,
                       grid: Optional[LogGrid] = None) -> float:
    """(int_0^1 (t^{-s} (1-log t)^{-b} omega(t))^q dt/t)^{1/q}.

    Nontrivial only for b > 1/q (b >= 0 when q = inf).
    """
    if math.isinf(q):
        if b < 0:
            raise TrivialSpaceError("Lip space with q=inf needs b >= 0")
    elif not b > 1.0 / q:
        raise TrivialSpaceError("Lip space needs b > 1/q")
    w = WeightedFunctional(a=-s, b=-b, q=q, lo=0.0, hi=1.0)
    return eval_functional(w, as_curve(omega), grid=grid)


def sobolev_seminorm_via_modulus(omega, s: float, p: float,
                                 grid: Optional[LogGrid] = None) -> float:
    """sup_t t^{-s} omega_s(f, t)_p: the computable homogeneous Sobolev
    seminorm surrogate (valid sup-modulus characterization for 1 < p < inf)."""
    if not (1 < p < math.inf):
        raise FuncspaceError("the sup-modulus characterization needs 1<p<inf")
    w = WeightedFunctional(a=-s, b=0.0, q=math.inf, lo=0.0, hi=math.inf)
    return eval_functional(w, as_curve(omega), grid=grid)


# ---------------------------------------------------------------------------
# Gagliardo double-integral seminorm (1-d)
# ---------------------------------------------------------------------------


def gagliardo_seminorm(f, s: float, p: float, periodic: bool = True,
                       length: float = 2.0 * math.pi, n: int = 1024) -> float:
    """(int int |f(x)-f(y)|^p / |x-y|^{1+sp} dx dy)^{1/p} on a 1-d domain.

    Tensor midpoint quadrature; the diagonal band |x-y| < h/2 is skipped
    (its contribution vanishes as h^{1-sp} for s p < 1).  On the torus the
    geodesic distance is used.
    """
    if not (0 < s < 1):
        raise FuncspaceError("Gagliardo seminorm needs s in (0, 1)")
    if s * p >= 1 + 1e-12:
        pass  # allowed, but may diverge for rough f; caller's risk
    h = length / n
    x = (np.arange(n) + 0.5) * h
    vals = np.asarray(f(x), dtype=float)
    diff = np.abs(vals[:, None] - vals[None, :])
    dist = np.abs(x[:, None] - x[None, :])
    if periodic:
        dist = np.minimum(dist, length - dist)
    mask = dist > h / 2.0
    kern = np.zeros_like(dist)
    kern[mask] = dist[mask] ** (-(1.0 + s * p))
    total = float(np.sum(diff ** p * kern)) * h * h
    return total ** (1.0 / p)
