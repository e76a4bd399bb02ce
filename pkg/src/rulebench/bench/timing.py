"""CPU-time measurement with named phases.

Times are per-process CPU seconds (time.process_time), averaged over the
requested number of runs. A run times its phases individually plus the
whole run as "total"; phases may legitimately sum to slightly less than
total (untimed glue), never meaningfully more.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass

PHASES = ("read_raw", "write_cache", "read_cache", "prepare", "eval", "collect", "total")

DEFAULT_REPEATS = 10


@dataclass(frozen=True)
class TimingRecord:
    benchmark: str
    variant: str
    size_param: object
    phase: str
    cpu_seconds_mean: float
    runs: int
    result_size: int
    seed: int


class PhaseClock:
    """Accumulates CPU seconds per named phase across one run."""

    def __init__(self):
        self.seconds: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        if name not in PHASES:
            raise ValueError(f"unknown phase {name!r}")
        start = time.process_time()
        try:
            yield
        finally:
            self.seconds[name] = (
                self.seconds.get(name, 0.0) + time.process_time() - start
            )


def timed_runs(run_once, repeats: int = DEFAULT_REPEATS):
    """Call run_once(clock) `repeats` times; mean seconds per phase.

    Returns (phase_means, last_result) where run_once's return value is
    kept from the final run only; the workload must be identical across
    runs for the mean to make sense.
    """
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    sums: dict[str, float] = {}
    result = None
    for _ in range(repeats):
        clock = PhaseClock()
        start = time.process_time()
        result = run_once(clock)
        total = time.process_time() - start
        clock.seconds.setdefault("total", total)
        for name, secs in clock.seconds.items():
            sums[name] = sums.get(name, 0.0) + secs
    means = {name: secs / repeats for name, secs in sums.items()}
    return means, result


def records_from_means(
    benchmark: str,
    variant: str,
    size_param,
    means: dict[str, float],
    repeats: int,
    result_size: int,
    seed: int,
) -> list[TimingRecord]:
    return [
        TimingRecord(
            benchmark=benchmark,
            variant=variant,
            size_param=size_param,
            phase=phase,
            cpu_seconds_mean=means[phase],
            runs=repeats,
            result_size=result_size,
            seed=seed,
        )
        for phase in PHASES
        if phase in means
    ]
