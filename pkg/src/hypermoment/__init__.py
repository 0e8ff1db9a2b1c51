"""Exact polynomial hypergroups and generalized moment function sequences."""

from ._backend import BACKEND
from .bellgroup import (
    AdditiveFamily,
    GroupExponential,
    aczel_rank1,
    faa_di_bruno_check,
    group_moment,
    partial_bell,
    verify_group_binomial,
)
from .core import (
    Measure,
    MultiIndex,
    Scalar,
    measure_add,
    measure_scale,
    measure_total,
    mi_binom,
    mi_enumerate,
)
from .errors import *  # noqa: F401,F403
from .hypergroup import (
    CATALOG,
    Hypergroup,
    RecurrenceSpec,
    catalog,
    linearize_by_monomials,
    validate_spec,
)
from .jets import (
    Jet,
    compose_basis,
    jet_add,
    jet_const,
    jet_exp,
    jet_mul,
    jet_scale,
    jet_variable,
    partial_at_zero,
)
from .moments import (
    MomentSeed,
    MomentTable,
    VerificationReport,
    exponential_values,
    moment_table,
    rank1_table,
    seed_jet,
    sine_check,
    verify_binomial,
)

__version__ = "0.1.0"
