"""Survival-based discrimination between set minima and their parent law.

``d_min_vs_parent`` measures the disparity between the survival function of
the minimum of ``i`` draws, ``S(x)**i``, and the parent survival ``S``:

    ``-(1/2) int S**i (S**i - S) dx
      = -(1/2) [E(min of 2i draws) - E(min of i+1 draws)]``

``d_designs`` extends this to whole sampling plans of size ``m``,
comparing the unequal-minima plan with the independent-draw plan through
products of minimum means.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._quadrature import _quad, survival_power_quad, truncation_point
from .errors import DomainError
from .measures import Method, _coerce_method

__all__ = ["DiscriminationValue", "d_min_vs_parent", "d_designs"]


@dataclass(frozen=True)
class DiscriminationValue:
    """A discrimination value tagged with its set size (or plan size)."""

    value: float
    i_or_m: int
    method: Method

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))

    def __float__(self):
        return self.value


def d_min_vs_parent(dist, i, method="closed"):
    """Disparity between the minimum-of-``i`` law and the parent law.

    Zero at ``i = 1``.  The closed route uses exact minimum means; the
    quadrature route integrates the defining integrand
    ``S**i (S**i - S)`` directly, giving an independent cross-check.
    """
    if i < 1:
        raise DomainError(f"set size must be >= 1, got {i}")
    method = _coerce_method(method)
    if method is Method.CLOSED_FORM:
        value = -0.5 * (
            dist.min_order_stat_mean(2 * i) - dist.min_order_stat_mean(i + 1)
        )
    else:
        # integrand vanishes below the support (both survivals are 1 there)
        lo = max(0.0, dist.support[0])
        hi = truncation_point(dist)

        def integrand(x):
            s = dist.survival(x)
            return s**i * (s**i - s)

        raw, _ = _quad(integrand, lo, hi)
        value = -0.5 * raw
    return DiscriminationValue(value=value, i_or_m=int(i), method=method)


def d_designs(dist, m, method="closed"):
    """Plan-level disparity: unequal-minima plan versus independent draws.

    ``-(1/2) [prod_{i=1..m} E(min of 2i) - prod_{i=1..m} E(min of i+1)]``
    """
    if m < 1:
        raise DomainError(f"design size must be >= 1, got {m}")
    method = _coerce_method(method)
    prod_min = 1.0
    prod_srs = 1.0
    for i in range(1, m + 1):
        if method is Method.CLOSED_FORM:
            e_2i = dist.min_order_stat_mean(2 * i)
            e_i1 = dist.min_order_stat_mean(i + 1)
        else:
            e_2i, _ = survival_power_quad(dist, 2.0 * i)
            e_i1, _ = survival_power_quad(dist, i + 1.0)
        prod_min *= e_2i
        prod_srs *= e_i1
    return DiscriminationValue(
        value=-0.5 * (prod_min - prod_srs), i_or_m=int(m), method=method
    )
