"""Cumulative residual extropy and related information measures.

All measures are nonpositive.  Each one is available through an exact
closed form (the default for the four built-in families) and through
adaptive quadrature; results carry which route produced them plus an
absolute error bound, so the two routes can be cross-checked.

Design-level measures treat a sample plan of size ``m``: the independent
draw plan (SRS) raises the single-observation integral to the m-th power,
while the unequal-minima plan (MinRSSU) multiplies the survival-power
integrals of the set minima for set sizes ``1..m``.  Products with many
factors are accumulated in log space to avoid intermediate under- and
overflow.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import _quadrature as nq
from .errors import DivergenceError, DomainError

__all__ = [
    "Method",
    "CrexValue",
    "extropy",
    "crex",
    "cumulative_extropy",
    "dynamic_crex",
    "crex_min_order_stat",
    "crex_minrssu_design",
    "crex_srs_design",
    "dynamic_crex_designs",
]

# switch products of this many factors to log-space accumulation
_LOG_SPACE_THRESHOLD = 20


class Method(enum.Enum):
    """How a measure value was produced."""

    CLOSED_FORM = "closed-form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class CrexValue:
    """A nonpositive measure value with provenance and error bound."""

    value: float
    method: Method
    abs_error_bound: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "abs_error_bound", float(self.abs_error_bound))
        if self.value > 0.0:
            raise ValueError(f"measure value must be <= 0, got {self.value}")

    def __float__(self):
        return self.value


def _coerce_method(method):
    if isinstance(method, Method):
        return method
    if method in ("closed", "closed-form"):
        return Method.CLOSED_FORM
    if method in ("quad", "quadrature"):
        return Method.QUADRATURE
    raise DomainError(f"unknown evaluation method {method!r}")


def _survival_power(dist, p, lower, method):
    """(value, error bound) for ``int_t S**p`` on the chosen route."""
    if method is Method.CLOSED_FORM:
        return dist.survival_power_integral(p, lower=lower), 0.0
    return nq.survival_power_quad(dist, p, lower=lower)


def extropy(dist, method="closed"):
    """``-(1/2) int f(x)**2 dx``; always <= 0."""
    method = _coerce_method(method)
    if method is Method.CLOSED_FORM:
        return -0.5 * dist.pdf_square_integral()
    value, _ = nq.pdf_square_quad(dist)
    return -0.5 * value


def cumulative_extropy(dist, method="closed"):
    """``-(1/2) int_0^sup F(x)**2 dx``; diverges on unbounded support."""
    method = _coerce_method(method)
    if method is Method.CLOSED_FORM:
        return -0.5 * dist.cdf_square_integral()
    value, _ = nq.cdf_square_quad(dist)
    return -0.5 * value


def crex(dist, method="closed"):
    """Cumulative residual extropy ``-(1/2) int_0^inf S(x)**2 dx``."""
    method = _coerce_method(method)
    integral, err = _survival_power(dist, 2.0, 0.0, method)
    return CrexValue(-0.5 * integral, method, 0.5 * err)


def dynamic_crex(dist, t, method="closed"):
    """Residual-lifetime measure ``-(1/2) int_t [S(x)/S(t)]**2 dx``.

    Requires ``S(t) > 0``.  Bounded below by ``-mrl(t) / (2 S(t))``.
    """
    method = _coerce_method(method)
    t = float(t)
    if t < 0:
        raise DomainError(f"age must be >= 0, got {t}")
    if dist.survival(t) <= 0.0:
        raise DomainError(f"residual measure undefined: survival({t}) = 0")
    s_t = dist.survival(t) if t > 0.0 else 1.0
    integral, err = _survival_power(dist, 2.0, t, method)
    scale = s_t**2
    return CrexValue(-0.5 * integral / scale, method, 0.5 * err / scale)


def crex_min_order_stat(dist, i, method="closed"):
    """Measure of the minimum of ``i`` draws: ``-(1/2) int S(x)**(2i) dx``."""
    if i < 1:
        raise DomainError(f"set size must be >= 1, got {i}")
    method = _coerce_method(method)
    integral, err = _survival_power(dist, 2.0 * i, 0.0, method)
    return CrexValue(-0.5 * integral, method, 0.5 * err)


def _design_product(factors):
    """-(1/2) * prod(factors) with log-space accumulation for long products."""
    if len(factors) <= _LOG_SPACE_THRESHOLD:
        prod = 1.0
        for c in factors:
            prod *= c
        if math.isinf(prod):
            raise DivergenceError("design product overflows")
        return -0.5 * prod
    if any(c <= 0.0 for c in factors):
        return 0.0
    log_sum = sum(math.log(c) for c in factors)
    try:
        prod = math.exp(log_sum)
    except OverflowError:
        raise DivergenceError("design product overflows") from None
    return -0.5 * prod


def _minrssu_value(dist, m, t, method):
    s_t = dist.survival(t) if t > 0.0 else 1.0
    if s_t <= 0.0:
        raise DomainError(f"design measure undefined: survival({t}) = 0")
    factors = []
    err_rel = 0.0
    for i in range(1, m + 1):
        integral, err = _survival_power(dist, 2.0 * i, t, method)
        c = integral / s_t ** (2.0 * i)
        factors.append(c)
        if c > 0.0:
            err_rel += err / s_t ** (2.0 * i) / c
    value = _design_product(factors)
    return value, abs(value) * err_rel


def crex_minrssu_design(dist, m, method="closed"):
    """Plan-level measure for unequal minima sets of sizes ``1..m``.

    ``-(1/2) prod_{i=1..m} int_0^inf S(x)**(2i) dx``
    """
    if m < 1:
        raise DomainError(f"design size must be >= 1, got {m}")
    method = _coerce_method(method)
    value, err = _minrssu_value(dist, m, 0.0, method)
    return CrexValue(value, method, err)


def crex_srs_design(dist, m, method="closed"):
    """Plan-level measure for ``m`` independent draws.

    ``-(1/2) [int_0^inf S(x)**2 dx]**m``
    """
    if m < 1:
        raise DomainError(f"design size must be >= 1, got {m}")
    method = _coerce_method(method)
    integral, err = _survival_power(dist, 2.0, 0.0, method)
    value = _design_product([integral] * m)
    err_bound = abs(value) * (m * err / integral if integral > 0.0 else 0.0)
    return CrexValue(value, method, err_bound)


def dynamic_crex_designs(dist, m, t, method="closed"):
    """Residual-lifetime design measures beyond age ``t``.

    Returns the pair ``(minrssu_value, srs_value)`` where::

        minrssu = -(1/2) prod_{i=1..m} int_t [S(x)/S(t)]**(2i) dx
        srs     = -(1/2) [int_t [S(x)/S(t)]**2 dx]**m
    """
    if m < 1:
        raise DomainError(f"design size must be >= 1, got {m}")
    t = float(t)
    if t < 0:
        raise DomainError(f"age must be >= 0, got {t}")
    method = _coerce_method(method)
    if dist.survival(t) <= 0.0:
        raise DomainError(f"design measure undefined: survival({t}) = 0")
    s_t = dist.survival(t) if t > 0.0 else 1.0
    min_value, min_err = _minrssu_value(dist, m, t, method)
    integral, err = _survival_power(dist, 2.0, t, method)
    c1 = integral / s_t**2
    srs_value = _design_product([c1] * m)
    srs_err = abs(srs_value) * (m * err / integral if integral > 0.0 else 0.0)
    return (
        CrexValue(min_value, method, min_err),
        CrexValue(srs_value, method, srs_err),
    )
