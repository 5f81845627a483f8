"""Exact q-series toolkit for congruences of the cubic partition function a(n)."""

from .series import (
    ModSeries,
    TruncatedSeries,
    extract_progression,
    invert,
    mul,
    power,
    reduce_mod,
    shift,
)
from .qproducts import (
    cubic_partition_series,
    eta_expansion,
    jacobi_cube_series,
    partition_series,
    qpochhammer_inf,
    triangular_series,
)
from .etaquot import EtaQuotient, cusp_order, modularity_verdict, sturm_bound
from .congruence import (
    CongruenceClaim,
    VerificationReport,
    mod3_family_check,
    pipeline_mod5,
    pipeline_mod7,
    verify_progression,
)
from .parity import parity_census, parity_recurrence

__all__ = [
    "ModSeries", "TruncatedSeries", "extract_progression", "invert", "mul", "power",
    "reduce_mod", "shift", "cubic_partition_series", "eta_expansion", "jacobi_cube_series",
    "partition_series", "qpochhammer_inf", "triangular_series", "EtaQuotient", "cusp_order",
    "modularity_verdict", "sturm_bound", "CongruenceClaim", "VerificationReport",
    "mod3_family_check", "pipeline_mod5", "pipeline_mod7", "verify_progression",
    "parity_census", "parity_recurrence",
]

__version__ = "0.1.0"
