"""Stateless model checking of shared-variable thread programs."""

from ltlsmc.smc.explore import (
    InfeasibleScheduleError,
    IterationResult,
    ProgramReport,
    ProgramVerdict,
    PropertyOutcome,
    ReplayResult,
    StateRecord,
    Termination,
    aggregate,
    check_schedule,
    enumerate_schedules,
    explore,
    parse_schedule,
    replay,
)
from ltlsmc.smc.expr import ExecutionError, parse_assignment, parse_expr
from ltlsmc.smc.program import (
    END,
    ExecState,
    Location,
    Program,
    ProgramError,
    Thread,
    enabled_threads,
    execute_location,
    load_program,
    load_program_file,
    snapshot_aps,
)

__all__ = [
    "END",
    "ExecState",
    "ExecutionError",
    "InfeasibleScheduleError",
    "IterationResult",
    "Location",
    "Program",
    "ProgramError",
    "ProgramReport",
    "ProgramVerdict",
    "PropertyOutcome",
    "ReplayResult",
    "StateRecord",
    "Termination",
    "Thread",
    "aggregate",
    "check_schedule",
    "enabled_threads",
    "enumerate_schedules",
    "execute_location",
    "explore",
    "load_program",
    "load_program_file",
    "parse_assignment",
    "parse_expr",
    "parse_schedule",
    "replay",
    "snapshot_aps",
]
