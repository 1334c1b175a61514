"""Two-machine flow shop where each job holds storage equal to its first-stage time."""

from .extend import DegenerateInstance, ExtendedInstance, build_extension
from .johnson import JohnsonResult, johnson, johnson_schedule
from .model import (
    BufferProfile,
    CapacityError,
    Instance,
    Job,
    Schedule,
    ScheduleError,
    ValidationReport,
    buffer_profile,
    earliest_start_timing,
    makespan,
    validate_schedule,
)
from .solver import (
    ConditionNotMet,
    check_condition5,
    check_corollary,
    classify,
    extract_real,
    run_aggregated,
    run_reference,
    solve,
    solve_detailed,
)

__version__ = "0.1.0"
