"""Shared-variable thread programs split into locations.

A program document (JSON) looks like::

    {
      "vars": {"x1": 1, "b1": false},
      "aps": {"crit1": "crit1 == true"},
      "threads": [
        [{"guard": "b2 == false", "body": ["x1 := 2"], "next": 2}, ...],
        {"name": "worker", "locations": [...]}
      ]
    }

Each location has an optional ``guard`` (the only thing that can block), a
``body`` of assignments run atomically once the guard holds, and a ``next``
successor: a 1-based location number, ``"goto k"`` or ``"end"``.  Without
``next`` control falls through to the following location, and off the last
one the thread ends.  Threads are named ``T1``, ``T2``, ... unless named.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from ltlsmc.errors import LtlsmcError
from ltlsmc.monitor.network import APSnapshot
from ltlsmc.smc.expr import (
    Binary,
    Const,
    ExecutionError,
    Expr,
    Value,
    Var,
    infer_type,
    parse_assignment,
    parse_expr,
    type_name,
)

END = None  # successor / program counter value of a finished thread


class ProgramError(LtlsmcError):
    """The program document is malformed or ill-typed."""


@dataclass(frozen=True)
class Assignment:
    var: str
    expr: Expr

    def __str__(self) -> str:
        return f"{self.var} := {self.expr}"


@dataclass(frozen=True)
class Location:
    guard: Expr | None
    body: tuple[Assignment, ...]
    next: int | None  # 1-based successor, END when the thread finishes


@dataclass(frozen=True)
class Thread:
    name: str
    locations: tuple[Location, ...]


@dataclass(frozen=True)
class Program:
    variables: Mapping[str, Value]
    aps: Mapping[str, Expr]
    threads: tuple[Thread, ...]

    @property
    def thread_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.threads)

    def thread_id(self, name: str) -> int:
        try:
            return self.thread_names.index(name)
        except ValueError:
            raise LtlsmcError(f"unknown thread {name!r}") from None

    def initial_state(self) -> ExecState:
        return ExecState(dict(self.variables), tuple(1 for _ in self.threads), ())

    def atom_evaluator(self, atoms) -> dict[str, Expr]:
        """Expressions for the given atom keys.

        Bare names must be declared propositions; comparison atoms such as
        ``x1 == 2`` are evaluated directly over the program variables.
        """
        out: dict[str, Expr] = {}
        types = {k: type_name(v) for k, v in self.variables.items()}
        for atom in atoms:
            if isinstance(atom, str):
                key, atom_obj = atom, None
            else:
                key, atom_obj = atom.key, atom
            if key in self.aps:
                out[key] = self.aps[key]
                continue
            if atom_obj is None or not atom_obj.is_comparison:
                raise LtlsmcError(f"atom {key!r} is not a declared proposition of the program")
            rhs = Var(atom_obj.rhs) if isinstance(atom_obj.rhs, str) else Const(atom_obj.rhs)
            e = Binary(atom_obj.op, Var(atom_obj.name), rhs)
            try:
                infer_type(e, types)
            except LtlsmcError as exc:
                raise LtlsmcError(f"atom {key!r}: {exc}") from None
            out[key] = e
        return out


@dataclass(frozen=True)
class ExecState:
    """Variable valuation, program counters and the schedule so far.

    ``pcs[t]`` is the 1-based location thread ``t`` points to, or END.
    The state index is the number of executed locations.
    """

    valuation: Mapping[str, Value]
    pcs: tuple[int | None, ...]
    schedule: tuple[int, ...] = field(default=())

    @property
    def index(self) -> int:
        return len(self.schedule)

    @property
    def all_done(self) -> bool:
        return all(pc is END for pc in self.pcs)


# -- loading ------------------------------------------------------------------


def _parse(kind: str, text: Any, where: str, parser):
    if not isinstance(text, str):
        raise ProgramError(f"{where}: {kind} must be a string")
    try:
        return parser(text)
    except LtlsmcError as exc:
        raise ProgramError(f"{where}: malformed {kind} {text!r}: {exc}") from None


def _check(e: Expr, types: Mapping[str, str], want: str | None, where: str) -> None:
    try:
        got = infer_type(e, types)
    except LtlsmcError as exc:
        raise ProgramError(f"{where}: {exc}") from None
    if want is not None and got != want:
        raise ProgramError(f"{where}: expected {'an' if want == 'int' else 'a'} {want} expression, got {got}")


def _successor(raw: Any, position: int, count: int, where: str) -> int | None:
    if raw is None:
        return position + 1 if position < count else END
    if raw == "end":
        return END
    if isinstance(raw, str) and raw.startswith("goto "):
        raw = raw[5:].strip()
        if raw.isdigit():
            raw = int(raw)
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ProgramError(f"{where}: next must be a location number, 'goto k' or 'end'")
    if not 1 <= raw <= count:
        raise ProgramError(f"{where}: next location {raw} does not exist (1..{count})")
    return raw


def load_program(doc: Mapping[str, Any]) -> Program:
    if not isinstance(doc, Mapping):
        raise ProgramError("program document must be an object")
    unknown = set(doc) - {"vars", "aps", "threads"}
    if unknown:
        raise ProgramError(f"unknown program keys: {', '.join(sorted(unknown))}")

    raw_vars = doc.get("vars", {})
    if not isinstance(raw_vars, Mapping):
        raise ProgramError("vars must be an object")
    for name, value in raw_vars.items():
        if not isinstance(value, (int, bool)):
            raise ProgramError(f"variable {name!r}: initial value must be an integer or boolean")
        if name in ("true", "false") or not name.isidentifier():
            raise ProgramError(f"invalid variable name {name!r}")
    types = {k: type_name(v) for k, v in raw_vars.items()}

    raw_aps = doc.get("aps", {})
    if isinstance(raw_aps, list):
        names = [item.get("name") if isinstance(item, Mapping) else None for item in raw_aps]
        dupes = sorted({n for n in names if n is not None and names.count(n) > 1})
        if dupes:
            raise ProgramError(f"duplicate AP name {dupes[0]!r}")
        try:
            raw_aps = {item["name"]: item["expr"] for item in raw_aps}
        except (KeyError, TypeError):
            raise ProgramError("each AP entry needs a name and an expr") from None
    if not isinstance(raw_aps, Mapping):
        raise ProgramError("aps must be an object")
    aps: dict[str, Expr] = {}
    for name, text in raw_aps.items():
        where = f"AP {name!r}"
        if name in ("true", "false") or not name.isidentifier():
            raise ProgramError(f"{where}: invalid name")
        e = _parse("expression", text, where, parse_expr)
        _check(e, types, "bool", where)
        aps[name] = e

    raw_threads = doc.get("threads")
    if not isinstance(raw_threads, list) or not raw_threads:
        raise ProgramError("a program needs at least one thread")
    threads = []
    for t, raw in enumerate(raw_threads, start=1):
        name = f"T{t}"
        if isinstance(raw, Mapping):
            name = raw.get("name", name)
            raw = raw.get("locations")
        if not isinstance(raw, list) or not raw:
            raise ProgramError(f"thread {name} has no locations")
        locs = []
        for i, loc in enumerate(raw, start=1):
            where = f"thread {name}, location {i}"
            if not isinstance(loc, Mapping):
                raise ProgramError(f"{where}: location must be an object")
            extra = set(loc) - {"guard", "body", "next"}
            if extra:
                raise ProgramError(f"{where}: unknown keys {', '.join(sorted(extra))}")
            guard = None
            if loc.get("guard") is not None:
                guard = _parse("guard", loc["guard"], where, parse_expr)
                _check(guard, types, "bool", where)
            body_raw = loc.get("body", [])
            if isinstance(body_raw, str):
                body_raw = [body_raw]
            body = []
            for stmt in body_raw:
                var, e = _parse("assignment", stmt, where, parse_assignment)
                if var not in types:
                    raise ProgramError(f"{where}: undeclared variable {var!r}")
                _check(e, types, types[var], where)
                body.append(Assignment(var, e))
            locs.append(Location(guard, tuple(body), _successor(loc.get("next"), i, len(raw), where)))
        threads.append(Thread(str(name), tuple(locs)))
    names = [t.name for t in threads]
    if len(set(names)) != len(names):
        raise ProgramError("thread names must be unique")
    return Program(dict(raw_vars), aps, tuple(threads))


def load_program_file(path: str | Path) -> Program:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ProgramError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return load_program(doc)


# -- execution ----------------------------------------------------------------


def _truthy(e: Expr, env: Mapping[str, Value], what: str) -> bool:
    v = e.eval(env)
    if not isinstance(v, bool):
        raise ExecutionError(f"{what} evaluated to {v!r}, not a boolean")
    return v


def is_enabled(p: Program, s: ExecState, t: int) -> bool:
    pc = s.pcs[t]
    if pc is END:
        return False
    guard = p.threads[t].locations[pc - 1].guard
    return guard is None or _truthy(guard, s.valuation, "guard")


def enabled_threads(p: Program, s: ExecState) -> list[int]:
    """Enabled thread ids in ascending order."""
    return [t for t in range(len(p.threads)) if is_enabled(p, s, t)]


def execute_location(p: Program, s: ExecState, t: int) -> ExecState:
    """Run thread ``t``'s current location atomically."""
    if not 0 <= t < len(p.threads):
        raise ExecutionError(f"no thread with id {t}")
    if not is_enabled(p, s, t):
        raise ExecutionError(f"thread {p.threads[t].name} is not enabled at state {s.index}")
    loc = p.threads[t].locations[s.pcs[t] - 1]
    env = dict(s.valuation)
    for a in loc.body:
        value = a.expr.eval(env)
        if type_name(value) != type_name(p.variables[a.var]):
            raise ExecutionError(f"assigning {type_name(value)} to {type_name(p.variables[a.var])} variable {a.var!r}")
        env[a.var] = value
    pcs = s.pcs[:t] + (loc.next,) + s.pcs[t + 1 :]
    return ExecState(env, pcs, s.schedule + (t,))


def snapshot_aps(p: Program, s: ExecState, atoms=None) -> APSnapshot:
    """Values of the declared propositions (or of ``atoms``) in state ``s``."""
    exprs = p.aps if atoms is None else p.atom_evaluator(atoms)
    return APSnapshot(s.index, {k: _truthy(e, s.valuation, f"AP {k!r}") for k, e in exprs.items()})


def format_state(p: Program, s: ExecState) -> dict:
    return {
        "state": s.index,
        "pcs": {t.name: ("end" if pc is END else pc) for t, pc in zip(p.threads, s.pcs)},
        "vars": dict(s.valuation),
    }


__all__ = [
    "END",
    "Assignment",
    "ExecState",
    "Location",
    "Program",
    "ProgramError",
    "Thread",
    "enabled_threads",
    "execute_location",
    "format_state",
    "is_enabled",
    "load_program",
    "load_program_file",
    "snapshot_aps",
]
