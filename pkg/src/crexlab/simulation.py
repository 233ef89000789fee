"""Seeded Monte Carlo harness: bias and RMSE of the estimators on a grid.

Each grid cell is one (distribution, m, l, estimator, w) coordinate.  A
cell runs ``replications`` independent repetitions; repetition ``r`` owns
a counter-based random stream derived from

    (base seed, cell digest, r)

via ``numpy``'s Philox generator, so results are bit-identical across
reruns, across execution order, and across worker counts.  Sample sizes
follow ``n = m * l``; the spacing and order-statistic estimators run on a
fresh unequal-minima (MinRSSU) sample per repetition, while the ``vn``
estimator runs on a plain SRS sample of the same size.

Reported cells use the configured bias convention (default: truth minus
mean estimate); RMSE and |bias| do not depend on the convention.  Squared
deviations are accumulated in extended precision.

Rows serialize to CSV with the fixed header::

    distribution,params,estimator,m,l,w,reps,seed,true_value,bias,rmse,mc_se
"""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .distributions import Distribution, parse_distribution
from .errors import CellError, CrexlabError, DomainError, SpecParseError
from .estimators import EstimatorKind, EstimatorSpec, PsiFamily, estimate
from .measures import crex
from .sampling import draw_minrssu

__all__ = [
    "BiasConvention",
    "SimulationConfig",
    "SimulationRow",
    "GridResult",
    "CalibrationResult",
    "DEFAULT_SEED",
    "replication_rng",
    "run_cell",
    "run_grid",
    "rows_to_csv",
    "rows_from_csv",
    "protocol_config",
    "calibrate_parameter",
]

DEFAULT_SEED = 42

CSV_HEADER = (
    "distribution",
    "params",
    "estimator",
    "m",
    "l",
    "w",
    "reps",
    "seed",
    "true_value",
    "bias",
    "rmse",
    "mc_se",
)

# per-m tuning grids used by the benchmark tables
RMN_W_GRID = {2: (-2, -1, 0, 1), 3: (-1, 0, 1, 2), 4: (0, 1, 2, 3), 5: (1, 2, 3, 4)}
LSTAT_ADJ_W_GRID = {
    "exp": {2: (-11, -10, -9, -8), 3: (-7, -6, -5, -4), 4: (-3, -2, -1, 0), 5: (1, 2, 3, 4)},
    "unif": {2: (-4, -3, -2, -1), 3: (-2, -1, 0, 1), 4: (0, 1, 2, 3), 5: (2, 3, 4, 5)},
    "beta": {m: (-3, -2, -1, 0) for m in (2, 3, 4, 5)},
}
PROTOCOL_DISTRIBUTIONS = {
    "exp": "exp:rate=1",
    "unif": "unif:a=0,b=1",
    "beta": "powerbeta:alpha=2",
}


class BiasConvention(enum.Enum):
    TRUTH_MINUS_ESTIMATE = "truth-minus-estimate"
    ESTIMATE_MINUS_TRUTH = "estimate-minus-truth"


@dataclass(frozen=True)
class SimulationRow:
    """One completed grid cell."""

    distribution: str
    params: str
    estimator: str
    m: int
    l: int
    w: int | None
    reps: int
    seed: int
    true_value: float
    bias: float
    rmse: float
    mc_se: float


@dataclass
class SimulationConfig:
    """Grid coordinates plus execution settings.

    ``w_lists`` maps an estimator kind to either one w sequence (used for
    every m) or a mapping ``m -> sequence``.  Estimator kinds without a
    tuning value run once per (m, l) cell.
    """

    distribution: Distribution | str
    m_values: tuple = (2, 3, 4, 5)
    l_values: tuple = (2, 3)
    estimators: tuple = ("rn", "rmn")
    w_lists: dict = field(default_factory=dict)
    psi_family: str | None = None
    replications: int = 5000
    base_seed: int = DEFAULT_SEED
    bias_convention: BiasConvention = BiasConvention.TRUTH_MINUS_ESTIMATE

    def __post_init__(self):
        if isinstance(self.distribution, str):
            self.distribution = parse_distribution(self.distribution)
        if isinstance(self.bias_convention, str):
            self.bias_convention = BiasConvention(self.bias_convention)
        if self.replications < 1:
            raise SpecParseError(f"replications must be >= 1, got {self.replications}")
        if int(self.base_seed) < 0:
            raise SpecParseError(f"base seed must be >= 0, got {self.base_seed}")
        self.m_values = tuple(int(m) for m in self.m_values)
        self.l_values = tuple(int(l) for l in self.l_values)
        if any(m < 1 for m in self.m_values) or any(l < 1 for l in self.l_values):
            raise SpecParseError("m and l values must be >= 1")
        self.estimators = tuple(self.estimators)
        # validate every (estimator, w) pair eagerly
        for m in self.m_values:
            for _ in self.cell_specs(m):
                pass

    def w_values(self, kind, m):
        entry = self.w_lists.get(kind)
        if entry is None:
            return (None,)
        if isinstance(entry, dict):
            values = entry.get(m)
            if values is None:
                raise SpecParseError(f"no w list for estimator {kind!r} at m={m}")
        else:
            values = entry
        return tuple(int(w) for w in values)

    def cell_specs(self, m):
        """(EstimatorSpec, w) pairs for one m, in deterministic order."""
        out = []
        for kind_token in self.estimators:
            try:
                kind = EstimatorKind(kind_token)
            except ValueError:
                known = ", ".join(k.value for k in EstimatorKind)
                raise SpecParseError(
                    f"unknown estimator {kind_token!r} (known: {known})"
                ) from None
            needs_w = kind in (EstimatorKind.RMN, EstimatorKind.LSTAT_ADJUSTED)
            family = None
            if kind is EstimatorKind.LSTAT_ADJUSTED:
                if self.psi_family is None:
                    raise SpecParseError("estimator 'lstat_adj' needs psi_family")
                family = PsiFamily(self.psi_family)
            for w in self.w_values(kind_token, m):
                if needs_w and w is None:
                    raise SpecParseError(f"estimator {kind_token!r} needs a w list")
                if not needs_w and w is not None:
                    raise SpecParseError(f"estimator {kind_token!r} does not take w")
                out.append(EstimatorSpec(kind=kind, w=w, psi_family=family))
        return out


@dataclass(frozen=True)
class GridResult:
    rows: list
    failures: list

    @property
    def ok(self):
        return not self.failures


def _cell_digest(dist_spec, estimator_text, m, l):
    text = f"{dist_spec}|{estimator_text}|m={m}|l={l}"
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


def replication_rng(base_seed, cell_digest, rep_index):
    """The counter-based stream owned by one replication of one cell."""
    seq = np.random.SeedSequence(entropy=[int(base_seed), int(cell_digest), int(rep_index)])
    return np.random.Generator(np.random.Philox(seq))


def run_cell(
    dist,
    estimator,
    m,
    l,
    replications,
    base_seed=DEFAULT_SEED,
    bias_convention=BiasConvention.TRUTH_MINUS_ESTIMATE,
    sample_factory=None,
):
    """Run one grid cell and summarize bias / RMSE against the true measure.

    ``sample_factory(rng)`` is a testing seam that replaces the sampler;
    it must return an array for ``vn`` and a MinRSSU sample otherwise.
    """
    if isinstance(dist, str):
        dist = parse_distribution(dist)
    if isinstance(estimator, str):
        estimator = EstimatorSpec.parse(estimator)
    if isinstance(bias_convention, str):
        bias_convention = BiasConvention(bias_convention)
    if replications < 1:
        raise DomainError(f"replications must be >= 1, got {replications}")
    n = m * l
    true_value = float(crex(dist))
    digest = _cell_digest(dist.spec_string(), estimator.text(), m, l)
    estimates = np.empty(replications)
    for r in range(replications):
        rng = replication_rng(base_seed, digest, r)
        if sample_factory is not None:
            data = sample_factory(rng)
        elif estimator.kind is EstimatorKind.VN:
            data = dist.sample(rng, n)
        else:
            data = draw_minrssu(dist, m, l, rng)
        estimates[r] = estimate(estimator, data)
    mean_est = float(np.mean(estimates, dtype=np.longdouble))
    if bias_convention is BiasConvention.TRUTH_MINUS_ESTIMATE:
        bias = true_value - mean_est
    else:
        bias = mean_est - true_value
    dev = estimates.astype(np.longdouble) - true_value
    rmse = float(np.sqrt(np.mean(dev * dev)))
    if replications > 1:
        mc_se = float(np.std(estimates, ddof=1) / np.sqrt(replications))
    else:
        mc_se = 0.0
    return SimulationRow(
        distribution=dist.family,
        params=dist.param_text(),
        estimator=estimator.text(with_w=False),
        m=int(m),
        l=int(l),
        w=estimator.w,
        reps=int(replications),
        seed=int(base_seed),
        true_value=true_value,
        bias=bias,
        rmse=rmse,
        mc_se=mc_se,
    )


def _worker_count(workers):
    env = os.environ.get("CREXLAB_THREADS")
    cap = None
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            raise SpecParseError(f"CREXLAB_THREADS must be an integer, got {env!r}") from None
    effective = workers if workers is not None else (cap or 1)
    if cap is not None:
        effective = min(effective, cap)
    return max(1, int(effective))


def run_grid(config, workers=None):
    """Run the full Cartesian grid of a config.

    Rows come back in deterministic (m, l, estimator, w) order regardless
    of the worker count.  Failed cells are collected as
    :class:`~crexlab.errors.CellError` and do not stop the rest.
    """
    dist = config.distribution
    cells = []
    for m in config.m_values:
        for l in config.l_values:
            for spec in config.cell_specs(m):
                cells.append((m, l, spec))

    def one(cell):
        m, l, spec = cell
        try:
            return run_cell(
                dist,
                spec,
                m,
                l,
                config.replications,
                base_seed=config.base_seed,
                bias_convention=config.bias_convention,
            )
        except CrexlabError as exc:
            coords = {
                "distribution": dist.spec_string(),
                "estimator": spec.text(),
                "m": m,
                "l": l,
            }
            return CellError(coords, exc)

    count = _worker_count(workers)
    if count == 1:
        outcomes = [one(cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=count) as pool:
            outcomes = list(pool.map(one, cells))
    rows = [o for o in outcomes if isinstance(o, SimulationRow)]
    failures = [o for o in outcomes if isinstance(o, CellError)]
    return GridResult(rows=rows, failures=failures)


def rows_to_csv(rows, file=None):
    """Serialize rows under the fixed schema; returns text if file is None."""
    own = file is None
    if own:
        file = io.StringIO()
    writer = csv.writer(file, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            [
                row.distribution,
                row.params,
                row.estimator,
                row.m,
                row.l,
                "" if row.w is None else row.w,
                row.reps,
                row.seed,
                repr(row.true_value),
                repr(row.bias),
                repr(row.rmse),
                repr(row.mc_se),
            ]
        )
    if own:
        return file.getvalue()
    return None


def rows_from_csv(file):
    """Read rows written by :func:`rows_to_csv`; '#' comment lines are skipped."""
    if isinstance(file, str):
        file = io.StringIO(file)
    reader = csv.reader(line for line in file if not line.startswith("#"))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise SpecParseError("empty results CSV") from None
    if header != CSV_HEADER:
        raise SpecParseError(
            f"expected header {','.join(CSV_HEADER)}, got {','.join(header)}"
        )
    rows = []
    for raw in reader:
        if not raw:
            continue
        if len(raw) != len(CSV_HEADER):
            raise SpecParseError(f"malformed results row: {raw}")
        try:
            rows.append(
                SimulationRow(
                    distribution=raw[0],
                    params=raw[1],
                    estimator=raw[2],
                    m=int(raw[3]),
                    l=int(raw[4]),
                    w=None if raw[5] == "" else int(raw[5]),
                    reps=int(raw[6]),
                    seed=int(raw[7]),
                    true_value=float(raw[8]),
                    bias=float(raw[9]),
                    rmse=float(raw[10]),
                    mc_se=float(raw[11]),
                )
            )
        except ValueError:
            raise SpecParseError(f"malformed results row: {raw}") from None
    return rows


def protocol_config(family, replications=5000, base_seed=DEFAULT_SEED, sides=("spacing", "order")):
    """The benchmark-table grid for one distribution family.

    ``family`` is ``"exp"``, ``"unif"`` or ``"beta"``; defaults are rate 1,
    Uniform(0, 1), and Beta(2, 1).  ``sides`` selects the spacing-estimator
    half (``rn`` + tuned ``rmn``), the order-statistic half (``lstat`` +
    tuned ``lstat_adj``), or both.
    """
    if family not in PROTOCOL_DISTRIBUTIONS:
        known = ", ".join(sorted(PROTOCOL_DISTRIBUTIONS))
        raise SpecParseError(f"unknown protocol family {family!r} (known: {known})")
    estimators = []
    w_lists = {}
    if "spacing" in sides:
        estimators += ["rn", "rmn"]
        w_lists["rmn"] = RMN_W_GRID
    if "order" in sides:
        estimators += ["lstat", "lstat_adj"]
        w_lists["lstat_adj"] = LSTAT_ADJ_W_GRID[family]
    return SimulationConfig(
        distribution=PROTOCOL_DISTRIBUTIONS[family],
        m_values=(2, 3, 4, 5),
        l_values=(2, 3),
        estimators=tuple(estimators),
        w_lists=w_lists,
        psi_family=family if "order" in sides else None,
        replications=replications,
        base_seed=base_seed,
    )


@dataclass(frozen=True)
class CalibrationResult:
    """Best-fit distribution for a target (bias, rmse) pair."""

    distribution: Distribution
    residual: float
    bias_convention: BiasConvention
    bias: float
    rmse: float
    details: list

    @property
    def spec_string(self):
        return self.distribution.spec_string()


def calibrate_parameter(
    candidates,
    estimator,
    m,
    l,
    target,
    replications=500,
    base_seed=DEFAULT_SEED,
):
    """Scan candidate distributions for the best match to a target cell.

    ``target`` is the (bias, rmse) pair to reproduce.  Both bias sign
    conventions are tried for every candidate; the squared deviation
    ``(bias - target_bias)**2 + (rmse - target_rmse)**2`` is minimized.
    Returns the best fit together with per-candidate details; a poor
    residual is reported, never raised.
    """
    target_bias, target_rmse = float(target[0]), float(target[1])
    candidate_list = [
        parse_distribution(c) if isinstance(c, str) else c for c in candidates
    ]
    if not candidate_list:
        raise DomainError("calibration needs at least one candidate distribution")
    best = None
    details = []
    for dist in candidate_list:
        row = run_cell(
            dist,
            estimator,
            m,
            l,
            replications,
            base_seed=base_seed,
            bias_convention=BiasConvention.TRUTH_MINUS_ESTIMATE,
        )
        for convention in BiasConvention:
            bias = row.bias if convention is BiasConvention.TRUTH_MINUS_ESTIMATE else -row.bias
            residual = (bias - target_bias) ** 2 + (row.rmse - target_rmse) ** 2
            details.append(
                {
                    "distribution": dist.spec_string(),
                    "bias_convention": convention.value,
                    "bias": bias,
                    "rmse": row.rmse,
                    "residual": residual,
                }
            )
            if best is None or residual < best.residual:
                best = CalibrationResult(
                    distribution=dist,
                    residual=residual,
                    bias_convention=convention,
                    bias=bias,
                    rmse=row.rmse,
                    details=[],
                )
    return replace(best, details=details)
