"""Exact envy-free connected cake division: model, metrics, solver, families."""

from .model import (
    CellPartition,
    Classification,
    Division,
    Instance,
    Interval,
    NotNormalized,
    OverlappingPieces,
    OverlappingSegments,
    Valuation,
    classify,
    make_valuation,
    refine,
    uniform_valuation,
    value_of,
)
from .metrics import (
    EnvyMatrix,
    NoAllocatedPiece,
    SizeMismatch,
    WelfareKind,
    WelfareValue,
    absorb_leftover,
    envy_matrix,
    is_envy_free,
    pareto_dominates,
    utilities,
    welfare,
)
from .documents import (
    SchemaError,
    parse_division,
    parse_instance,
    serialize_division,
    serialize_instance,
)
from .solver import (
    BudgetExceeded,
    Configuration,
    DumpingReport,
    Mode,
    Objective,
    SolveResult,
    SolverOptions,
    dumping_report,
    enumerate_configurations,
    exists_strict_pareto_improvement,
    max_player_utility_ef,
    optimize,
)
from .oracle import NoGridDivision, OracleResult, grid_oracle
from .families import (
    ConstructionBundle,
    ParamOutOfRange,
    UnknownTag,
    egalitarian_family,
    egalitarian_tight,
    intro_two_player,
    pareto_family,
    predicted_value,
    utilitarian_family,
)

__version__ = "0.1.0"
