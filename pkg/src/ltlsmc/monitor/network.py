"""Public monitor API: networks, the master over many properties, trace IO."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from ltlsmc.errors import BasisError, LtlsmcError, UnsupportedClassError
from ltlsmc.formula import (
    Formula,
    TemporalClass,
    classify,
    is_basis,
    parse_atom,
    parse_property,
    rewrite_to_basis,
    to_text,
)
from ltlsmc.monitor._backend import make_engine
from ltlsmc.monitor.compiled import K_AND, K_NEXT, K_NOT, K_TRUE, K_UNTIL, compile_formula
from ltlsmc.monitor.messages import CODE_WAIT, ResultMessage, WorkerKind, from_code
from ltlsmc.oracle import ThreeValue, Verdict, map_verdict

MONITORABLE = (TemporalClass.TL_G, TemporalClass.TL_F)

_KIND_NAME = {K_NOT: WorkerKind.NOT, K_AND: WorkerKind.AND, K_NEXT: WorkerKind.NEXT, K_UNTIL: WorkerKind.UNTIL}


@dataclass(frozen=True)
class APSnapshot:
    """Atom values at the end of one state."""

    index: int
    values: Mapping[str, bool]


class MonitorNetwork:
    """Evaluator network for one property in the monitoring basis.

    ``first_index`` is the state index expected by the first ``step``.
    """

    def __init__(
        self,
        formula: Formula,
        cls: TemporalClass,
        *,
        share: bool = True,
        executor: str = "sequential",
        backend: str | None = None,
        first_index: int = 0,
        seed: int | None = None,
    ):
        if cls not in MONITORABLE:
            raise UnsupportedClassError(f"class {cls.value} cannot be monitored on finite traces")
        if not is_basis(formula):
            raise BasisError("formula is not in the monitoring basis; rewrite it first")
        self.formula = formula
        self.cls = cls
        self.first_index = first_index
        self.compiled = compile_formula(formula)
        self.atoms: tuple[str, ...] = self.compiled.atoms
        kw = {"seed": seed} if executor == "shuffle" else {}
        self._engine = make_engine(self.compiled, share=share, executor=executor, backend=backend, **kw)
        self.resolved_at: int | None = None
        self.steps = 0

    # -- structure ---------------------------------------------------------

    def worker_kinds(self) -> Counter:
        """Operator workers per kind in the initial network, one per parse-tree node."""
        return Counter(_KIND_NAME[k] for k in self.compiled.kinds if k in _KIND_NAME)

    def leaves(self) -> list[str]:
        """Leaf actors: ``"true"`` for the constant leaf plus one per distinct atom."""
        out = ["true"] if K_TRUE in self.compiled.kinds else []
        return out + list(self.atoms)

    @property
    def engine(self):
        return self._engine

    @property
    def index(self) -> int:
        """Index of the next state to be processed."""
        return self.first_index + self.steps

    @property
    def latched(self) -> bool:
        return self._engine.root_code != CODE_WAIT

    @property
    def root(self) -> ResultMessage:
        return from_code(self._engine.root_code)

    # -- stepping ----------------------------------------------------------

    def step(self, snap: APSnapshot) -> ResultMessage:
        if snap.index != self.index:
            raise LtlsmcError(f"expected state {self.index}, got state {snap.index}")
        try:
            bits = [bool(snap.values[a]) for a in self.atoms]
        except KeyError as exc:
            raise LtlsmcError(f"state {snap.index} has no value for atom {exc.args[0]!r}") from None
        was_latched = self.latched
        code = self._engine.step(bits)
        self.steps += 1
        if not was_latched and code != CODE_WAIT:
            self.resolved_at = snap.index
        return from_code(code)

    def step_bits(self, bits: Iterable[bool]) -> ResultMessage:
        """Step with atom values given positionally in ``self.atoms`` order."""
        return self.step(APSnapshot(self.index, dict(zip(self.atoms, bits))))

    def finish(self) -> Verdict:
        code = self._engine.root_code
        value = ThreeValue.VQ if code == CODE_WAIT else (ThreeValue.V1 if code else ThreeValue.V0)
        return map_verdict(value, self.cls)

    def reset(self) -> MonitorNetwork:
        self._engine.reset()
        self.resolved_at = None
        self.steps = 0
        return self

    def live_workers(self) -> int:
        return self._engine.live_count()

    def close(self) -> None:
        self._engine.close()

    def __enter__(self) -> MonitorNetwork:
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def build_network(formula: Formula, cls: TemporalClass, **kw) -> MonitorNetwork:
    return MonitorNetwork(formula, cls, **kw)


def step(net: MonitorNetwork, snap: APSnapshot) -> ResultMessage:
    return net.step(snap)


def finish(net: MonitorNetwork) -> Verdict:
    return net.finish()


def reset(net: MonitorNetwork) -> MonitorNetwork:
    return net.reset()


def monitor_word(formula: Formula, cls: TemporalClass, letters: Iterable[Iterable[str]], **kw) -> Verdict:
    """Run a fresh network over a word given as sets of true atoms."""
    with MonitorNetwork(formula, cls, **kw) as net:
        for letter in letters:
            true_atoms = set(letter)
            net.step_bits(a in true_atoms for a in net.atoms)
        return net.finish()


# -- many properties --------------------------------------------------------


@dataclass
class PropertyMonitor:
    source: str
    formula: Formula
    basis: Formula
    cls: TemporalClass
    network: MonitorNetwork

    def record(self) -> dict:
        return {
            "property": self.source,
            "class": self.cls.value,
            "verdict": self.network.finish().value,
            "resolved_at_state": self.network.resolved_at,
        }


@dataclass
class Master:
    """Owns one network per property; all networks see the same snapshots."""

    monitors: list[PropertyMonitor] = field(default_factory=list)

    @classmethod
    def from_sources(cls, sources: Iterable[str | tuple[str, Formula]], **kw) -> Master:
        monitors = []
        for item in sources:
            if isinstance(item, str):
                source, formula = item, parse_property(item)
            else:
                source, formula = item
            tcls = classify(formula)
            if tcls not in MONITORABLE:
                raise UnsupportedClassError(
                    f"property {source!r} is in class {tcls.value}; only TL_G and TL_F can be monitored"
                )
            basis = rewrite_to_basis(formula)
            monitors.append(PropertyMonitor(source, formula, basis, tcls, MonitorNetwork(basis, tcls, **kw)))
        return cls(monitors)

    @property
    def atoms(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for m in self.monitors:
            seen.update(dict.fromkeys(m.network.atoms))
        return tuple(seen)

    def step(self, snap: APSnapshot) -> list[ResultMessage]:
        return [m.network.step(snap) for m in self.monitors]

    def finish(self) -> list[dict]:
        return [m.record() for m in self.monitors]

    def reset(self) -> None:
        for m in self.monitors:
            m.network.reset()

    def close(self) -> None:
        for m in self.monitors:
            m.network.close()


# -- trace files ------------------------------------------------------------


def parse_trace_record(line: str, lineno: int = 1) -> APSnapshot:
    try:
        rec = json.loads(line)
    except json.JSONDecodeError as exc:
        raise LtlsmcError(f"trace line {lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(rec, dict) or not isinstance(rec.get("state"), int) or not isinstance(rec.get("aps"), dict):
        raise LtlsmcError(f"trace line {lineno}: expected {{\"state\": int, \"aps\": {{...}}}}")
    values = {}
    for name, value in rec["aps"].items():
        if not isinstance(value, bool):
            raise LtlsmcError(f"trace line {lineno}: value of {name!r} is not a boolean")
        values[parse_atom(name).key] = value
    return APSnapshot(rec["state"], values)


def read_trace(lines: Iterable[str]) -> Iterator[APSnapshot]:
    """Parse newline-delimited state records; indices must run 0, 1, 2, ..."""
    expected = 0
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        snap = parse_trace_record(line, lineno)
        if snap.index != expected:
            raise LtlsmcError(f"trace line {lineno}: expected state {expected}, got {snap.index}")
        expected += 1
        yield snap


def load_trace(path: str | Path) -> list[APSnapshot]:
    with open(path, encoding="utf-8") as fh:
        return list(read_trace(fh))


def dump_trace(snaps: Iterable[APSnapshot]) -> str:
    return "".join(json.dumps({"state": s.index, "aps": dict(s.values)}) + "\n" for s in snaps)


def describe(net: MonitorNetwork) -> str:
    kinds = net.worker_kinds()
    parts = [f"{k.value} x{n}" for k, n in sorted(kinds.items(), key=lambda kv: kv[0].value)]
    return f"{to_text(net.formula)}: workers [{', '.join(parts)}], leaves [{', '.join(net.leaves())}]"


__all__ = [
    "APSnapshot",
    "Master",
    "MonitorNetwork",
    "PropertyMonitor",
    "build_network",
    "describe",
    "dump_trace",
    "finish",
    "load_trace",
    "monitor_word",
    "parse_trace_record",
    "read_trace",
    "reset",
    "step",
]
