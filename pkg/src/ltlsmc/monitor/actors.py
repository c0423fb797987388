"""Pure-Python actor runtime for the monitor network.

Every operator occurrence is evaluated by a worker pinned to a trace offset:
the worker for node ``i`` at offset ``k`` computes the value of subformula
``i`` on the trace suffix that starts at state ``k``.  Leaves are two kinds
of long-lived actors, one condition checker per distinct atom and one
``TrueLeaf``; workers subscribe to them for the state they need and get a
resolved message when that state's snapshot arrives.

A state is processed in three phases:

1. the leaves emit to their subscribers for this state;
2. messages are dispatched until quiescence (only resolved messages travel;
   waiting is every worker's initial result);
3. barrier: unreachable workers are dropped, and every live ``X`` or ``U``
   worker created at this state demands its continuation at the next one.
   ``X f`` at ``k`` hands its parents straight to ``f`` at ``k+1``.  ``f U g``
   at ``k`` whose operands came back (true, false) does the same with
   ``f U g`` at ``k+1``; otherwise it subscribes to it as a third input.

Structure only changes in phase 3 and phase 1 of the next state, so the
dispatch in phase 2 may run workers in any order or in parallel.  Dispatch
modes: ``fifo`` (sequential reference), ``shuffle`` (seeded random delivery
order) and ``threaded`` (rounds of inbox processing on a thread pool).
"""

from __future__ import annotations

import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from ltlsmc.monitor.compiled import K_AND, K_ATOM, K_NEXT, K_NOT, K_TRUE, K_UNTIL, CompiledFormula
from ltlsmc.monitor.messages import (
    FALSE,
    TRUE,
    WAITING,
    ResultMessage,
    and_transition,
    not_transition,
    to_code,
    until_transition,
)

DISPATCH_MODES = ("fifo", "shuffle", "threaded")


class PropertyChecker:
    """Root supervisor; keeps the first resolved message it receives."""

    __slots__ = ("result", "children", "inbox")

    def __init__(self) -> None:
        self.result = WAITING
        self.children: list[Worker | None] = [None]
        self.inbox: list[tuple[int, ResultMessage]] = []

    def deliver(self, slot: int, msg: ResultMessage) -> list:
        if not self.result.resolved and msg.resolved:
            self.result = msg
        return []

    def process(self) -> list:
        for slot, msg in self.inbox:
            self.deliver(slot, msg)
        self.inbox.clear()
        return []


class Worker:
    __slots__ = ("sid", "offset", "kind", "inputs", "children", "parents", "result", "dead", "inbox")

    def __init__(self, sid: int, offset: int, kind: int):
        self.sid = sid
        self.offset = offset
        self.kind = kind
        # slot 0/1: operands, slot 2: the until continuation
        self.inputs = [WAITING, WAITING, WAITING]
        self.children: list[Worker | None] = [None, None, None]
        self.parents: list[tuple[Worker | PropertyChecker, int]] = []
        self.result = WAITING
        self.dead = False
        self.inbox: list[tuple[int, ResultMessage]] = []

    def deliver(self, slot: int, msg: ResultMessage) -> list:
        if self.result.resolved or self.dead:
            return []
        self.inputs[slot] = msg
        kind = self.kind
        if kind == K_NOT:
            result = not_transition(self.inputs[0])
        elif kind == K_AND:
            result = and_transition(self.inputs[0], self.inputs[1])
        elif kind == K_UNTIL:
            result = until_transition(self.inputs[0], self.inputs[1], self.inputs[2])
        else:  # X workers never receive messages: they hand over at the barrier
            result = WAITING
        if not result.resolved:
            return []
        self.result = result
        return [(parent, pslot, result) for parent, pslot in self.parents]

    def process(self) -> list:
        out: list = []
        for slot, msg in self.inbox:
            out.extend(self.deliver(slot, msg))
        self.inbox.clear()
        return out

    def __repr__(self) -> str:
        return f"Worker(sid={self.sid}, offset={self.offset}, result={self.result})"


class Leaf:
    """Condition checker for one atom, or the constant ``true`` leaf."""

    __slots__ = ("name", "subscribers")

    def __init__(self, name: str):
        self.name = name
        self.subscribers: list[tuple[Worker | PropertyChecker, int]] = []

    def emit(self, value: bool) -> list:
        msg = TRUE if value else FALSE
        out = [(target, slot, msg) for target, slot in self.subscribers]
        self.subscribers.clear()
        return out


class ActorRuntime:
    """Monitor network for one compiled basis formula."""

    def __init__(
        self,
        compiled: CompiledFormula,
        *,
        share: bool = True,
        dispatch: str = "fifo",
        seed: int | None = None,
        threads: int = 4,
    ):
        if dispatch not in DISPATCH_MODES:
            raise ValueError(f"unknown dispatch mode {dispatch!r}")
        self.compiled = compiled
        self.share = share
        self.dispatch = dispatch
        self._seed = seed
        self._threads = threads
        self._pool: ThreadPoolExecutor | None = None
        self.checkers = [Leaf(name) for name in compiled.atoms]
        self.true_leaf = Leaf("true")
        self.reset()

    # -- construction -------------------------------------------------------

    def reset(self) -> None:
        for leaf in (*self.checkers, self.true_leaf):
            leaf.subscribers.clear()
        self.root = PropertyChecker()
        self.index = 0
        self._rng = random.Random(self._seed)
        self._registry: dict[tuple[int, int], Worker] = {}
        self._due: list[Worker] = []
        self.latest: dict[int, Worker] = {}
        self.created = 0
        self._demand(0, self.root, 0)

    def _demand(self, sid: int, parent: Worker | PropertyChecker, slot: int) -> None:
        """Attach the evaluator of node ``sid`` at the current offset to ``parent``."""
        c = self.compiled
        kind = c.kinds[sid]
        if kind == K_ATOM:
            parent.children[slot] = None
            self.checkers[c.arg0[sid]].subscribers.append((parent, slot))
            return
        if kind == K_TRUE:
            parent.children[slot] = None
            self.true_leaf.subscribers.append((parent, slot))
            return
        key = (c.canon[sid], self.index)
        worker = self._registry.get(key) if self.share else None
        if worker is None:
            worker = Worker(sid, self.index, kind)
            self.created += 1
            self.latest[sid] = worker
            if self.share:
                self._registry[key] = worker
            if kind in (K_NOT, K_AND, K_UNTIL):
                self._demand(c.arg0[sid], worker, 0)
            if kind in (K_AND, K_UNTIL):
                self._demand(c.arg1[sid], worker, 1)
            if kind in (K_NEXT, K_UNTIL):
                self._due.append(worker)
        worker.parents.append((parent, slot))
        parent.children[slot] = worker

    # -- stepping -----------------------------------------------------------

    def step(self, bits: Sequence[int]) -> int:
        """Process one state; ``bits[i]`` is the value of atom ``i``."""
        if self.root.result.resolved:
            self.index += 1
            return to_code(self.root.result)
        messages = []
        for checker, bit in zip(self.checkers, bits):
            messages.extend(checker.emit(bool(bit)))
        messages.extend(self.true_leaf.emit(True))
        self._run(messages)
        self._barrier()
        return to_code(self.root.result)

    def _run(self, messages: list) -> None:
        if self.dispatch == "fifo":
            queue = deque(messages)
            while queue:
                target, slot, msg = queue.popleft()
                queue.extend(target.deliver(slot, msg))
        elif self.dispatch == "shuffle":
            pending = list(messages)
            rng = self._rng
            while pending:
                i = rng.randrange(len(pending))
                pending[i], pending[-1] = pending[-1], pending[i]
                target, slot, msg = pending.pop()
                pending.extend(target.deliver(slot, msg))
        else:
            if self._pool is None:
                self._pool = ThreadPoolExecutor(max_workers=self._threads)
            pending = messages
            while pending:
                active: dict[int, Worker | PropertyChecker] = {}
                for target, slot, msg in pending:
                    target.inbox.append((slot, msg))
                    active.setdefault(id(target), target)
                results = self._pool.map(lambda actor: actor.process(), active.values())
                pending = [m for out in results for m in out]

    def _barrier(self) -> None:
        live = self._live()
        due, self._due = self._due, []
        self.index += 1
        self._registry.clear()
        c = self.compiled
        for worker in due:
            if id(worker) not in live:
                continue
            parents = [(p, s) for p, s in worker.parents if p is self.root or id(p) in live]
            if worker.kind == K_NEXT:
                worker.dead = True
                for parent, slot in parents:
                    self._demand(c.arg0[worker.sid], parent, slot)
            elif worker.inputs[0] == TRUE and worker.inputs[1] == FALSE:
                worker.dead = True
                for parent, slot in parents:
                    self._demand(worker.sid, parent, slot)
            else:
                self._demand(worker.sid, worker, 2)

    def _live(self) -> dict[int, Worker]:
        live: dict[int, Worker] = {}
        if self.root.result.resolved:
            return live
        stack = [w for w in self.root.children if w is not None]
        while stack:
            w = stack.pop()
            if id(w) in live or w.dead or w.result.resolved:
                continue
            live[id(w)] = w
            stack.extend(k for k in w.children if k is not None)
        return live

    # -- inspection ---------------------------------------------------------

    @property
    def root_code(self) -> int:
        return to_code(self.root.result)

    def live_count(self) -> int:
        return len(self._live())

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def __del__(self) -> None:
        pool = getattr(self, "_pool", None)
        if pool is not None:
            pool.shutdown(wait=False)
