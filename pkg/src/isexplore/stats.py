"""Least-squares fits and significance tests for the benchmark harness.

The t-distribution CDF is evaluated through a continued-fraction regularized
incomplete beta so the package carries no statistics dependency; target
accuracy is 1e-8 over the df and t ranges the harness uses.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import TooFewPointsError, ZeroVarianceError


class FitModel(enum.Enum):
    LINEAR = "linear"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class FitResult:
    slope: float  # leading coefficient (x for linear, x^2 for quadratic)
    intercept: float  # constant term
    r_squared: float
    p_value: float  # two-sided t-test on the leading coefficient
    n: int


_BETACF_MAX_ITER = 300
_BETACF_EPS = 3e-16
_BETACF_TINY = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete-beta continued fraction
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _BETACF_TINY:
        d = _BETACF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETACF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETACF_TINY:
            d = _BETACF_TINY
        c = 1.0 + aa / c
        if abs(c) < _BETACF_TINY:
            c = _BETACF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETACF_TINY:
            d = _BETACF_TINY
        c = 1.0 + aa / c
        if abs(c) < _BETACF_TINY:
            c = _BETACF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETACF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta failed to converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise ValueError(f"a and b must be > 0, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_two_sided_p_value(t: float, df: int) -> float:
    """P(|T| >= |t|) for a Student t variable with ``df`` degrees of freedom."""
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    if math.isinf(t):
        return 0.0
    if t == 0.0:
        return 1.0
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))


def fit_quality_relation(x, y, model: FitModel = FitModel.LINEAR) -> FitResult:
    """Least-squares polynomial fit with a significance test on the leading
    coefficient.

    Degrees of freedom are n - 2 for the linear model and n - 3 for the
    quadratic one; a perfect fit reports p_value 0.0.
    """
    xv = np.asarray(x, dtype=np.float64)
    yv = np.asarray(y, dtype=np.float64)
    if xv.ndim != 1 or yv.ndim != 1:
        raise ValueError("x and y must be 1-D")
    if xv.size != yv.size:
        raise ValueError(f"length mismatch: {xv.size} vs {yv.size}")
    if not (np.isfinite(xv).all() and np.isfinite(yv).all()):
        raise ValueError("x and y must be finite")
    n = xv.size
    n_coef = 2 if model == FitModel.LINEAR else 3
    if n < n_coef + 1:
        raise TooFewPointsError(f"{model.value} fit needs at least {n_coef + 1} points, got {n}")

    ss_tot = float(((yv - yv.mean()) ** 2).sum())
    if ss_tot == 0.0:
        raise ZeroVarianceError("y has zero variance")

    if model == FitModel.LINEAR:
        design = np.column_stack([xv, np.ones(n)])
    else:
        design = np.column_stack([xv * xv, xv, np.ones(n)])
    coef, _, rank, _ = np.linalg.lstsq(design, yv, rcond=None)
    if rank < n_coef:
        raise ValueError("degenerate design matrix (constant x?)")

    residuals = yv - design @ coef
    ss_res = float((residuals**2).sum())
    df = n - n_coef
    sigma2 = ss_res / df
    cov_lead = sigma2 * float(np.linalg.inv(design.T @ design)[0, 0])
    se_lead = math.sqrt(max(cov_lead, 0.0))
    if se_lead == 0.0:
        p = 0.0
    else:
        p = t_two_sided_p_value(float(coef[0]) / se_lead, df)
    return FitResult(
        slope=float(coef[0]),
        intercept=float(coef[-1]),
        r_squared=1.0 - ss_res / ss_tot,
        p_value=p,
        n=n,
    )
