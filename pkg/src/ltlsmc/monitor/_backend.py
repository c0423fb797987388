"""Pick the sequential engine: the compiled one when importable.

Set ``LTLSMC_PURE_PYTHON=1`` to force the pure-Python actor runtime.
"""

from __future__ import annotations

import os

from ltlsmc.monitor.actors import ActorRuntime

CompiledEngine = None
if not os.environ.get("LTLSMC_PURE_PYTHON"):
    try:
        from ltlsmc.monitor._engine import Engine as CompiledEngine
    except ImportError:  # extension not built
        CompiledEngine = None

BACKEND = "cython" if CompiledEngine is not None else "python"
HAVE_COMPILED = CompiledEngine is not None


def make_engine(compiled, *, share: bool = True, executor: str = "sequential", backend: str | None = None, **kw):
    """Engine factory.

    ``executor="sequential"`` uses the selected backend (``backend`` may force
    ``"cython"`` or ``"python"``); ``"threaded"`` and ``"shuffle"`` always run
    the actor runtime with that dispatch mode.
    """
    if executor == "sequential":
        backend = backend or BACKEND
        if backend == "cython":
            if CompiledEngine is None:
                raise RuntimeError("compiled engine is not available")
            return CompiledEngine(compiled, share)
        if backend != "python":
            raise ValueError(f"unknown backend {backend!r}")
        return ActorRuntime(compiled, share=share, dispatch="fifo")
    if executor in ("threaded", "shuffle"):
        return ActorRuntime(compiled, share=share, dispatch=executor, **kw)
    raise ValueError(f"unknown executor {executor!r}")
