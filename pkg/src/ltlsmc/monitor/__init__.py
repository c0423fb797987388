"""Runtime monitors built from evaluator networks."""

from ltlsmc.monitor._backend import BACKEND, HAVE_COMPILED, make_engine
from ltlsmc.monitor.actors import ActorRuntime
from ltlsmc.monitor.compiled import CompiledFormula, compile_formula
from ltlsmc.monitor.messages import (
    FALSE,
    TRUE,
    WAITING,
    ResultMessage,
    WorkerKind,
    and_transition,
    not_transition,
    or_transition,
    until_transition,
)
from ltlsmc.monitor.network import (
    APSnapshot,
    Master,
    MonitorNetwork,
    PropertyMonitor,
    build_network,
    describe,
    dump_trace,
    finish,
    load_trace,
    monitor_word,
    read_trace,
    reset,
    step,
)

__all__ = [
    "BACKEND",
    "HAVE_COMPILED",
    "FALSE",
    "TRUE",
    "WAITING",
    "APSnapshot",
    "ActorRuntime",
    "CompiledFormula",
    "Master",
    "MonitorNetwork",
    "PropertyMonitor",
    "ResultMessage",
    "WorkerKind",
    "and_transition",
    "build_network",
    "compile_formula",
    "describe",
    "dump_trace",
    "finish",
    "load_trace",
    "make_engine",
    "monitor_word",
    "not_transition",
    "or_transition",
    "read_trace",
    "reset",
    "step",
    "until_transition",
]
