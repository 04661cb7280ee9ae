from .numeric import (
    DEFAULT_DPS,
    AsymptoticReport,
    EllipticBranch,
    NumericError,
    SearchResult,
    Singularity,
    agm,
    asymptotic_check,
    elliptic_eval,
    find_singularities,
    newton_critical,
    predicted_coefficient,
)
from .series import (
    EllipticSeries,
    HalfPowerSeries,
    ModelSeries,
    Nm2Solution,
    elliptic_series,
    gamma_table,
    model_series,
    renorm_residual,
    solve_renorm_nm2,
)
