"""crexlab: cumulative residual extropy for SRS and MinRSSU designs.

Library layout:

* :mod:`crexlab.distributions` - parametric families with exact kernels
* :mod:`crexlab.measures` - CREX, extropy, and design-level measures
* :mod:`crexlab.sampling` - SRS and unequal-minima dataset generators
* :mod:`crexlab.estimators` - empirical estimators and their asymptotics
* :mod:`crexlab.discrimination` - design discrimination measures
* :mod:`crexlab.simulation` - the seeded Monte Carlo benchmark harness
* :mod:`crexlab.cli` - the ``crexlab`` command-line front end
"""

from .distributions import (
    Distribution,
    Exponential,
    FiniteRange,
    PowerBeta,
    Uniform,
    parse_distribution,
)
from .discrimination import DiscriminationValue, d_designs, d_min_vs_parent
from .errors import (
    CellError,
    CrexlabError,
    DivergenceError,
    DomainError,
    ParameterError,
    SizeError,
    SpecParseError,
)
from .estimators import (
    EmpiricalSurvival,
    EstimatorKind,
    EstimatorSpec,
    PsiFamily,
    asymptotic_variance_minrssu,
    asymptotic_variance_srs,
    lstat,
    lstat_adjusted,
    psi,
    rmn,
    rn,
    vn,
)
from .measures import (
    CrexValue,
    Method,
    crex,
    crex_min_order_stat,
    crex_minrssu_design,
    crex_srs_design,
    cumulative_extropy,
    dynamic_crex,
    dynamic_crex_designs,
    extropy,
)
from .sampling import (
    MinRssuSample,
    draw_minrssu,
    draw_srs,
    pooled_order_statistics,
    sample_from_csv,
    sample_to_csv,
)
from .simulation import (
    BiasConvention,
    CalibrationResult,
    DEFAULT_SEED,
    GridResult,
    SimulationConfig,
    SimulationRow,
    calibrate_parameter,
    protocol_config,
    replication_rng,
    rows_from_csv,
    rows_to_csv,
    run_cell,
    run_grid,
)

__version__ = "0.1.0"
