"""Compare the compiled monitor engine with the pure-Python actor runtime.

    python3 benchmarks/bench_engine.py [--runs N] [--length L] [--repeat R]

Each row feeds the same pseudo-random runs through both backends, resetting
between runs as exploration does, checks that the root messages agree and
reports monitor steps per second (best of R).
"""

from __future__ import annotations

import argparse
import random
import time

from ltlsmc.formula import TemporalClass, classify, parse_property, rewrite_to_basis
from ltlsmc.monitor import HAVE_COMPILED, build_network

CASES = [
    "G !(crit1 && crit2)",
    "G (!req || X (ack || X ack))",
    "F (a && X b && X X c)",
    "G (!a || (b U c))",
    "(a U b) U (c U d)",
    "G !(a && X (b && X c))",
]


def _runs(atoms: tuple[str, ...], runs: int, length: int, seed: int) -> list[list[list[bool]]]:
    rng = random.Random(seed)
    return [[[rng.random() < 0.3 for _ in atoms] for _ in range(length)] for _ in range(runs)]


def _time(net, runs, repeat: int) -> tuple[float, list]:
    best = float("inf")
    roots: list = []
    for _ in range(repeat):
        start = time.perf_counter()
        roots = []
        for run in runs:
            net.reset()
            roots.append([net.step_bits(bits) for bits in run])
        best = min(best, time.perf_counter() - start)
    return best, roots


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=500)
    ap.add_argument("--length", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAVE_COMPILED:
        raise SystemExit("compiled engine not built; run `pip install -e . --no-build-isolation` first")

    print(f"{'property':32} {'class':5} {'python st/s':>12} {'cython st/s':>12} {'speedup':>8}")
    steps = args.runs * args.length
    for text in CASES:
        f = parse_property(text)
        cls = classify(f)
        if cls not in (TemporalClass.TL_G, TemporalClass.TL_F):
            print(f"{text:32} {cls.value[3:]:5} skipped: not monitorable")
            continue
        basis = rewrite_to_basis(f)
        py = build_network(basis, cls, backend="python")
        cy = build_network(basis, cls, backend="cython")
        runs = _runs(py.atoms, args.runs, args.length, seed=1)
        t_py, r_py = _time(py, runs, args.repeat)
        t_cy, r_cy = _time(cy, runs, args.repeat)
        if r_py != r_cy:
            raise SystemExit(f"backends disagree on {text}")
        print(
            f"{text:32} {cls.value[3:]:5} {steps / t_py:12.0f} {steps / t_cy:12.0f} {t_py / t_cy:7.1f}x"
        )


if __name__ == "__main__":
    main()
