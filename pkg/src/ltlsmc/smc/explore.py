"""Stateless exploration: enumerate schedules, run each one, aggregate.

An iteration executes the program from its initial state under one schedule
and feeds the proposition values after every executed location to the
property monitors.  The initial state is not part of the monitored word, so
the monitors see states 1..n and an empty schedule yields the empty word.
"""

from __future__ import annotations

import enum
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from ltlsmc.errors import LtlsmcError
from ltlsmc.formula import TemporalClass, atoms, parse_property
from ltlsmc.monitor import APSnapshot, Master, ResultMessage
from ltlsmc.oracle import Verdict
from ltlsmc.smc.program import (
    ExecState,
    Program,
    enabled_threads,
    execute_location,
    format_state,
    is_enabled,
)


class InfeasibleScheduleError(LtlsmcError):
    """A schedule picks a thread that is finished or blocked."""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


class Termination(str, enum.Enum):
    ALL_DONE = "all-threads-done"
    DEADLOCK = "deadlock"
    DEPTH_BOUND = "depth-bound"


class ProgramVerdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    PRESUMABLY_PASS = "PRESUMABLY-PASS"


def termination_of(p: Program, s: ExecState) -> Termination:
    if s.all_done:
        return Termination.ALL_DONE
    if not enabled_threads(p, s):
        return Termination.DEADLOCK
    return Termination.DEPTH_BOUND


@dataclass(frozen=True)
class IterationResult:
    schedule: tuple[str, ...]
    verdicts: tuple[Verdict, ...]
    resolved_at: tuple[int | None, ...]
    termination: Termination

    def to_dict(self) -> dict:
        return {
            "schedule": list(self.schedule),
            "termination": self.termination.value,
            "verdicts": [v.value for v in self.verdicts],
            "resolved_at_state": list(self.resolved_at),
        }


@dataclass(frozen=True)
class StateRecord:
    """One row of a replay log; ``messages`` is empty for the initial state."""

    index: int
    thread: str | None
    pcs: dict
    variables: dict
    aps: dict
    messages: tuple[ResultMessage, ...]

    def to_dict(self) -> dict:
        return {
            "state": self.index,
            "thread": self.thread,
            "pcs": self.pcs,
            "vars": self.variables,
            "aps": self.aps,
            "root_messages": [str(m) for m in self.messages],
        }


@dataclass(frozen=True)
class ReplayResult:
    iteration: IterationResult
    states: tuple[StateRecord, ...]


# -- monitors over a program ----------------------------------------------------


class _Checker:
    """Property monitors wired to one program's propositions."""

    def __init__(self, program: Program, properties: Sequence, **network_kw):
        self.program = program
        self.master = Master.from_sources(properties, first_index=1, **network_kw)
        wanted = {}
        for m in self.master.monitors:
            for a in atoms(m.basis):
                wanted.setdefault(a.key, a)
        self.exprs = program.atom_evaluator(wanted.values())

    def snapshot(self, s: ExecState):
        env = s.valuation
        return APSnapshot(s.index, {k: bool(e.eval(env)) for k, e in self.exprs.items()})

    def run(self, schedule: Sequence[int], *, log: bool = False) -> ReplayResult:
        p = self.program
        master = self.master
        master.reset()
        s = p.initial_state()
        names = p.thread_names
        rows: list[StateRecord] = []
        if log:
            rows.append(self._row(s, None, ()))
        for step_no, t in enumerate(schedule, start=1):
            if not 0 <= t < len(names) or not is_enabled(p, s, t):
                who = names[t] if 0 <= t < len(names) else f"#{t}"
                raise InfeasibleScheduleError(
                    f"schedule step {step_no}: thread {who} is not enabled in state {s.index}", step_no
                )
            s = execute_location(p, s, t)
            snap = self.snapshot(s)
            msgs = master.step(snap)
            if log:
                rows.append(self._row(s, names[t], tuple(msgs), snap.values))
        it = IterationResult(
            tuple(names[t] for t in schedule),
            tuple(m.network.finish() for m in master.monitors),
            tuple(m.network.resolved_at for m in master.monitors),
            termination_of(p, s),
        )
        return ReplayResult(it, tuple(rows))

    def _row(self, s: ExecState, thread, msgs, values=None) -> StateRecord:
        if values is None:
            values = self.snapshot(s).values
        st = format_state(self.program, s)
        return StateRecord(s.index, thread, st["pcs"], st["vars"], dict(values), msgs)

    def close(self) -> None:
        self.master.close()


def parse_schedule(text: str | Sequence[str], program: Program) -> tuple[int, ...]:
    """``"T2,T2,T1"`` (or a list of names) to thread ids."""
    parts = text.split(",") if isinstance(text, str) else list(text)
    parts = [x.strip() for x in parts]
    if parts == [""]:
        return ()
    return tuple(program.thread_id(x) for x in parts)


def replay(program: Program, schedule: str | Sequence, properties: Sequence) -> ReplayResult:
    """Execute one schedule and log every state with the root messages."""
    if isinstance(schedule, str) or (schedule and isinstance(schedule[0], str)):
        schedule = parse_schedule(schedule, program)
    checker = _Checker(program, properties)
    try:
        return checker.run(tuple(schedule), log=True)
    finally:
        checker.close()


# -- exhaustive exploration ---------------------------------------------------


def enumerate_schedules(program: Program, depth_bound: int) -> Iterator[tuple[tuple[int, ...], Termination]]:
    """Depth-first over maximal schedules, smaller thread ids first."""
    if depth_bound < 1:
        raise LtlsmcError("depth bound must be at least 1")
    stack = [program.initial_state()]
    while stack:
        s = stack.pop()
        enabled = enabled_threads(program, s) if s.index < depth_bound else []
        if not enabled:
            yield s.schedule, termination_of(program, s)
            continue
        for t in reversed(enabled):
            stack.append(execute_location(program, s, t))


_WORKER: _Checker | None = None


def _init_worker(program: Program, properties: list) -> None:
    global _WORKER
    _WORKER = _Checker(program, properties)


def _run_chunk(schedules: list[tuple[int, ...]]) -> list[IterationResult]:
    assert _WORKER is not None
    return [_WORKER.run(s).iteration for s in schedules]


def _chunks(items: list, size: int) -> Iterable[list]:
    for i in range(0, len(items), size):
        yield items[i : i + size]


def explore(program: Program, properties: Sequence, depth_bound: int = 20, jobs: int = 1) -> ProgramReport:
    """Run every maximal schedule up to ``depth_bound`` locations."""
    properties = _normalize(properties)
    checker = _Checker(program, properties)  # validates before any work
    try:
        schedules = [s for s, _ in enumerate_schedules(program, depth_bound)]
        if jobs <= 1 or len(schedules) < 2:
            results = [checker.run(s).iteration for s in schedules]
        else:
            size = max(1, len(schedules) // (jobs * 4))
            with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(program, properties)) as pool:
                results = [r for chunk in pool.map(_run_chunk, _chunks(schedules, size)) for r in chunk]
        return ProgramReport.build(checker.master, results, depth_bound)
    finally:
        checker.close()


def check_schedule(program: Program, properties: Sequence, schedule) -> tuple[ProgramReport, ReplayResult]:
    """Report for a single fixed schedule (same verdicts as ``replay``)."""
    properties = _normalize(properties)
    result = replay(program, schedule, properties)
    checker = _Checker(program, properties)
    try:
        return ProgramReport.build(checker.master, [result.iteration], None), result
    finally:
        checker.close()


def _normalize(properties: Sequence) -> list:
    return [(p, parse_property(p)) if isinstance(p, str) else tuple(p) for p in properties]


# -- aggregation ----------------------------------------------------------------


def aggregate(verdicts: Iterable[Verdict]) -> ProgramVerdict:
    verdicts = list(verdicts)
    if not verdicts:
        raise LtlsmcError("cannot aggregate zero iterations")
    if any(v.is_failure for v in verdicts):
        return ProgramVerdict.FAIL
    if all(v is Verdict.TRUE for v in verdicts):
        return ProgramVerdict.PASS
    return ProgramVerdict.PRESUMABLY_PASS


@dataclass(frozen=True)
class PropertyOutcome:
    source: str
    cls: TemporalClass
    verdict: ProgramVerdict
    counts: dict
    first_violation: dict | None

    def to_dict(self) -> dict:
        return {
            "property": self.source,
            "class": self.cls.value,
            "verdict": self.verdict.value,
            "counts": self.counts,
            "first_violation": self.first_violation,
        }


@dataclass
class ProgramReport:
    outcomes: list[PropertyOutcome]
    iterations: list[IterationResult]
    depth_bound: int | None = None
    verdict: ProgramVerdict = field(default=ProgramVerdict.PASS)

    @classmethod
    def build(cls, master: Master, results: list[IterationResult], depth_bound: int | None) -> ProgramReport:
        outcomes = []
        for k, m in enumerate(master.monitors):
            vs = [r.verdicts[k] for r in results]
            counts = {v.value: 0 for v in Verdict}
            for v in vs:
                counts[v.value] += 1
            first = None
            for i, r in enumerate(results):
                if r.verdicts[k].is_failure:
                    first = {
                        "iteration": i,
                        "schedule": list(r.schedule),
                        "verdict": r.verdicts[k].value,
                        "resolved_at_state": r.resolved_at[k],
                    }
                    break
            outcomes.append(PropertyOutcome(m.source, m.cls, aggregate(vs), counts, first))
        overall = ProgramVerdict.PASS
        if any(o.verdict is ProgramVerdict.FAIL for o in outcomes):
            overall = ProgramVerdict.FAIL
        elif any(o.verdict is ProgramVerdict.PRESUMABLY_PASS for o in outcomes):
            overall = ProgramVerdict.PRESUMABLY_PASS
        return cls(outcomes, results, depth_bound, overall)

    @property
    def failed(self) -> bool:
        return self.verdict is ProgramVerdict.FAIL

    def termination_counts(self) -> dict:
        counts = {t.value: 0 for t in Termination}
        for r in self.iterations:
            counts[r.termination.value] += 1
        return counts

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "depth_bound": self.depth_bound,
            "iterations": len(self.iterations),
            "termination": self.termination_counts(),
            "properties": [o.to_dict() for o in self.outcomes],
            "runs": [r.to_dict() for r in self.iterations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"
