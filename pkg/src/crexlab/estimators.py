"""Empirical estimators of the cumulative residual measure.

Two estimator families operate on a sorted sample ``Y_(1) <= ... <= Y_(n)``:

* spacing estimators: ``-(1/2) sum_k Z_{k+1} (1 - k/D)**2`` with spacings
  ``Z_{k+1} = Y_(k+1) - Y_(k)``; the plain version uses ``D = n`` and the
  adjusted version ``D = n + m + w`` for a tuning integer ``w``;
* order-statistic (L-statistic) estimators:
  ``-(1/n) sum_i (1 - i/D) Y_(i)`` with ``D = n`` plain and
  ``D = n + psi`` adjusted, where ``psi`` comes from a per-distribution
  weight-offset family.

Estimator specs parse from strings (used by the CLI and config files)::

    "vn" | "rn" | "rmn:w=-2" | "lstat" | "lstat_adj:family=exp,w=0"

The asymptotic variance functionals of the L-statistic route are evaluated
by tensor Gauss-Legendre quadrature split along the ``x == y`` kink.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._quadrature import DOUBLE_QUAD_NODES, double_quad_kinked, truncation_point
from .errors import DomainError, ParameterError, SizeError, SpecParseError
from .sampling import pooled_order_statistics

__all__ = [
    "PsiFamily",
    "EstimatorKind",
    "EstimatorSpec",
    "EmpiricalSurvival",
    "vn",
    "rn",
    "rmn",
    "lstat",
    "psi",
    "lstat_adjusted",
    "estimate",
    "asymptotic_variance_srs",
    "asymptotic_variance_minrssu",
]


class PsiFamily(enum.Enum):
    """Weight-offset family for the adjusted L-statistic estimator."""

    EXPONENTIAL = "exp"
    UNIFORM = "unif"
    BETA = "beta"


class EstimatorKind(enum.Enum):
    VN = "vn"
    RN = "rn"
    RMN = "rmn"
    LSTAT = "lstat"
    LSTAT_ADJUSTED = "lstat_adj"


_NEEDS_W = {EstimatorKind.RMN, EstimatorKind.LSTAT_ADJUSTED}


@dataclass(frozen=True)
class EstimatorSpec:
    """Which estimator to run, its tuning offset w, and its psi family."""

    kind: EstimatorKind
    w: int | None = None
    psi_family: PsiFamily | None = None

    def __post_init__(self):
        if (self.w is not None) != (self.kind in _NEEDS_W):
            need = "requires" if self.kind in _NEEDS_W else "does not take"
            raise SpecParseError(f"estimator {self.kind.value!r} {need} a w value")
        if (self.psi_family is not None) != (self.kind is EstimatorKind.LSTAT_ADJUSTED):
            need = (
                "requires"
                if self.kind is EstimatorKind.LSTAT_ADJUSTED
                else "does not take"
            )
            raise SpecParseError(f"estimator {self.kind.value!r} {need} a psi family")

    def text(self, with_w=True):
        parts = []
        if self.psi_family is not None:
            parts.append(f"family={self.psi_family.value}")
        if with_w and self.w is not None:
            parts.append(f"w={self.w}")
        if parts:
            return f"{self.kind.value}:{','.join(parts)}"
        return self.kind.value

    @classmethod
    def parse(cls, text):
        """Parse an estimator spec string; see the module docstring."""
        if not isinstance(text, str):
            raise SpecParseError(f"estimator spec must be a string, got {text!r}")
        head, _, tail = text.strip().partition(":")
        try:
            kind = EstimatorKind(head.strip().lower())
        except ValueError:
            known = ", ".join(k.value for k in EstimatorKind)
            raise SpecParseError(
                f"unknown estimator {head.strip()!r} (known: {known})"
            ) from None
        w = None
        family = None
        if tail.strip():
            for piece in tail.split(","):
                key, eq, val = piece.partition("=")
                key, val = key.strip(), val.strip()
                if not eq:
                    raise SpecParseError(f"bad estimator option {piece.strip()!r}")
                if key == "w":
                    try:
                        w = int(val)
                    except ValueError:
                        raise SpecParseError(f"w must be an integer, got {val!r}") from None
                elif key == "family":
                    try:
                        family = PsiFamily(val.lower())
                    except ValueError:
                        known = ", ".join(f.value for f in PsiFamily)
                        raise SpecParseError(
                            f"unknown psi family {val!r} (known: {known})"
                        ) from None
                else:
                    raise SpecParseError(f"unknown estimator option {key!r}")
        return cls(kind=kind, w=w, psi_family=family)


class EmpiricalSurvival:
    """Right-continuous complement of the empirical distribution function.

    Steps down by 1/n at each order statistic: 1 below ``X_(1)``, height
    ``1 - k/n`` on ``[X_(k), X_(k+1))``, and 0 above ``X_(n)``.
    """

    def __init__(self, values):
        arr = np.asarray(values, dtype=float).ravel()
        if arr.size == 0:
            raise SizeError("empirical survival needs at least one value")
        self.order_stats = np.sort(arr)
        self.n = arr.size

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        counts = np.searchsorted(self.order_stats, np.atleast_1d(x), side="right")
        out = 1.0 - counts / self.n
        if x.ndim == 0:
            return float(out[0])
        return out

    def cdf(self, x):
        s = self.survival(x)
        return 1.0 - s


def _sorted_sample(sample, minimum, label):
    arr = np.sort(np.asarray(sample, dtype=float).ravel())
    if arr.size < minimum:
        raise SizeError(f"{label} needs at least {minimum} values, got {arr.size}")
    return arr


def _spacing_sum(sorted_vals, denom):
    n = sorted_vals.size
    k = np.arange(1, n)
    weights = (1.0 - k / denom) ** 2
    return -0.5 * float(np.dot(np.diff(sorted_vals), weights))


def vn(sample):
    """Plain spacing estimator ``-(1/2) sum Z_{k+1} (1 - k/n)**2``.

    Equals ``-(1/2) int Shat(x)**2 dx`` for the empirical survival Shat.
    """
    arr = _sorted_sample(sample, 2, "spacing estimator")
    return _spacing_sum(arr, arr.size)


def rn(sample):
    """Spacing estimator on the pooled order statistics of a MinRSSU sample."""
    if sample.n < 2:
        raise SizeError(f"spacing estimator needs n >= 2, got n={sample.n}")
    return _spacing_sum(pooled_order_statistics(sample), sample.n)


def rmn(sample, w, m=None):
    """Adjusted spacing estimator with weight denominator ``n + m + w``.

    ``sample`` is a MinRSSU sample (m taken from it) or a plain value
    array with ``m`` passed explicitly.  Every weight
    ``1 - k/(n + m + w)`` for ``k <= n - 1`` must stay positive,
    i.e. ``n + m + w > n - 1``.
    """
    if hasattr(sample, "values"):
        pooled = pooled_order_statistics(sample)
        m = sample.m
    else:
        if m is None:
            raise ParameterError("rmn on a plain array needs an explicit m")
        pooled = _sorted_sample(sample, 2, "spacing estimator")
    n = pooled.size
    if n < 2:
        raise SizeError(f"spacing estimator needs n >= 2, got n={n}")
    denom = n + int(m) + int(w)
    if denom <= n - 1:
        raise ParameterError(
            f"w={w} gives denominator n+m+w={denom} <= n-1={n - 1}; "
            "weights would be nonpositive"
        )
    return _spacing_sum(pooled, denom)


def _order_stat_sum(sorted_vals, denom):
    n = sorted_vals.size
    i = np.arange(1, n + 1)
    weights = 1.0 - i / denom
    return -float(np.dot(weights, sorted_vals)) / n


def lstat(sample):
    """Order-statistic estimator ``-(1/n) sum (1 - i/n) X_(i)``.

    Plug-in of the identity ``-int x S(x) dF(x)``; nonnegative inputs only.
    """
    arr = _sorted_sample(sample, 1, "order-statistic estimator")
    if arr[0] < 0:
        raise DomainError("order-statistic estimator requires nonnegative values")
    return _order_stat_sum(arr, arr.size)


_K_EXPONENTIAL = {2: 3, 3: 2, 4: 1, 5: 0}
_K_UNIFORM = {2: -1, 3: 0, 4: 1, 5: 2}


def psi(family, m, w):
    """Weight offset for the adjusted L-statistic.

    exponential: ``5m - 4*k_m + w`` with k = (3, 2, 1, 0) for m = 2..5
    uniform:     ``3m - (2*k_m + 1) + w`` with k = (-1, 0, 1, 2)
    beta:        ``m - w``
    """
    if not isinstance(family, PsiFamily):
        family = PsiFamily(family)
    m, w = int(m), int(w)
    if family is PsiFamily.BETA:
        if m < 1:
            raise DomainError(f"need m >= 1, got {m}")
        return m - w
    if m not in _K_EXPONENTIAL:
        raise DomainError(f"psi family {family.value!r} is defined for m = 2..5, got {m}")
    if family is PsiFamily.EXPONENTIAL:
        return 5 * m - 4 * _K_EXPONENTIAL[m] + w
    return 3 * m - (2 * _K_UNIFORM[m] + 1) + w


def lstat_adjusted(sample, family, w):
    """Adjusted order-statistic estimator ``-(1/n) sum (1 - i/(n+psi)) Y_(i)``."""
    n = sample.n
    offset = psi(family, sample.m, w)
    denom = n + offset
    if denom <= 0:
        raise ParameterError(
            f"psi(m={sample.m}, w={w}) = {offset} gives denominator n+psi={denom} <= 0"
        )
    pooled = pooled_order_statistics(sample)
    if pooled[0] < 0:
        raise DomainError("order-statistic estimator requires nonnegative values")
    return _order_stat_sum(pooled, denom)


def estimate(spec, data):
    """Dispatch an EstimatorSpec on data (array for vn/lstat, sample otherwise)."""
    kind = spec.kind
    if kind is EstimatorKind.VN:
        return vn(data)
    if kind is EstimatorKind.RN:
        return rn(data)
    if kind is EstimatorKind.RMN:
        return rmn(data, spec.w)
    if kind is EstimatorKind.LSTAT:
        values = data if not hasattr(data, "values") else pooled_order_statistics(data)
        return lstat(values)
    return lstat_adjusted(data, spec.psi_family, spec.w)


def asymptotic_variance_srs(dist, nodes=DOUBLE_QUAD_NODES):
    """Limit variance of ``sqrt(n)`` times the plain L-statistic under SRS.

    ``int int S(x) S(y) [F(min(x,y)) - F(x) F(y)] dx dy`` over the
    nonnegative support.
    """
    lo = max(0.0, dist.support[0])
    hi = truncation_point(dist)

    def kernel(X, Y):
        return dist.cdf(np.minimum(X, Y)) - dist.cdf(X) * dist.cdf(Y)

    value, _ = double_quad_kinked(dist.survival, kernel, lo, hi, nodes=nodes)
    return max(value, 0.0)


def asymptotic_variance_minrssu(dist, m, nodes=DOUBLE_QUAD_NODES):
    """Limit variance of the pooled L-statistic under the unequal-minima plan.

    Uses the mixture cdf ``(1/m) sum_i [1 - S(x)**i]`` as weight argument
    and the averaged covariance kernel of the set minima.
    """
    if m < 1:
        raise DomainError(f"design size must be >= 1, got {m}")
    lo = max(0.0, dist.support[0])
    hi = truncation_point(dist)

    def mixture_survival(X):
        s = dist.survival(X)
        return sum(s**i for i in range(1, m + 1)) / m

    def kernel(X, Y):
        s_x = dist.survival(X)
        s_y = dist.survival(Y)
        s_max = np.maximum(s_x, s_y)
        total = np.zeros(np.broadcast(X, Y).shape)
        for i in range(1, m + 1):
            total += (1.0 - s_max**i) - (1.0 - s_x**i) * (1.0 - s_y**i)
        return total / m

    value, _ = double_quad_kinked(mixture_survival, kernel, lo, hi, nodes=nodes)
    return max(value, 0.0)
