"""Dynamic muscle fatigue model with endurance-time validation tooling."""

from .catalog import MetModel, evaluate, get_model, list_models, load_manifest
from .errors import (
    ArgumentError,
    DomainError,
    FatigueError,
    ManifestError,
    ParseError,
    SingularParameterError,
    UndefinedCorrelationError,
)
from .fatigue import (
    FatigueTrajectory,
    LoadProfile,
    MuscleProfile,
    f_cem_closed_form,
    fatigue_index_closed_form,
    met_dynamic,
    normalized_load_integral,
    simulate,
)
from .kernels import BACKEND
from .reference import (
    ActiveMotorModel,
    ReservoirModel,
    active_motor_closed_form,
    active_motor_simulate,
    mvc_comparison_curve,
    reservoir_step,
)
from .stats import ComparisonGrid, ComparisonReport, icc, pearson_r, replicate_table2

__version__ = "0.1.0"
