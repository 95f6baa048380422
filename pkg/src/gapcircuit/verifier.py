"""Scale verification of the leading-segment property, and random search.

The property under test: every derived row of the circuit starts with 1.
Two methods are provided.  The naive one derives all n-1 rows and looks at
each leading value — trustworthy and O(n^2).  The frontier one derives rows
only until it meets a row of the shape (1, then nothing but 0s and 2s); from
such a row on, every later row must again start with 1, because absolute
differences keep {0, 2} values inside {0, 2} and |x - 1| = 1 for x in
{0, 2}.  That certificate lets it skip the remaining rows entirely.

Both methods stream: only the current row is held, so memory stays O(n).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import RangeError
from .originator import (
    Originator,
    RandomModel,
    _SplitMix64,
    dump_sequence,
    random_generalized,
)
from .triangle import _abs_diff_checked

DEFAULT_SCAN_DEPTH = 500

# How many failing sequences a search report keeps for replay.
KEPT_FAILURES = 5


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one verification run.

    ``max_order_checked`` is the highest order whose leading segment is
    confirmed to be 1 (via direct derivation or the frontier certificate);
    ``first_failure`` is the (order, value) of the first bad leader, if any;
    ``stabilization_row`` is the order where the frontier certificate fired.
    ``elapsed`` is wall time in seconds.
    """

    n: int
    method: str
    all_ones: bool
    max_order_checked: int
    first_failure: tuple[int, int] | None
    stabilization_row: int | None
    elapsed: float

    def to_json_dict(self, *, timing: bool = True) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "n": self.n,
            "method": self.method,
            "all_ones": self.all_ones,
            "max_order_checked": self.max_order_checked,
            "first_failure": list(self.first_failure) if self.first_failure else None,
            "stabilization_row": self.stabilization_row,
        }
        if timing:
            payload["elapsed_ms"] = round(self.elapsed * 1000.0, 3)
        return payload


def _first_row(o: Originator) -> np.ndarray:
    if o.n < 2:
        raise RangeError(f"verification needs at least two terms, got {o.n}")
    return _abs_diff_checked(o.terms)


def _derive_into(row: np.ndarray, spare: np.ndarray, length: int) -> np.ndarray:
    """One derivation step, writing into the spare buffer's prefix."""
    out = spare[: length - 1]
    np.subtract(row[1:length], row[: length - 1], out=out)
    np.abs(out, out=out)
    return out


def verify_naive(o: Originator) -> VerifyReport:
    """Derive every row and check each leading segment directly."""
    start = time.perf_counter()
    n = o.n
    row = _first_row(o)
    spare = np.empty(max(n - 2, 0), dtype=np.int64)
    all_ones = True
    first_failure = None
    max_checked = 0
    length = n - 1
    for k in range(1, n):
        leader = int(row[0])
        if leader != 1:
            all_ones = False
            first_failure = (k, leader)
            break
        max_checked = k
        if k < n - 1:
            row, spare = _derive_into(row, spare, length), row
            length -= 1
    return VerifyReport(
        n=n,
        method="naive",
        all_ones=all_ones,
        max_order_checked=max_checked,
        first_failure=first_failure,
        stabilization_row=None,
        elapsed=time.perf_counter() - start,
    )


def _is_stable(row: np.ndarray, length: int) -> bool:
    """(1, tail) with the whole tail in {0, 2}: the certificate shape."""
    tail = row[1:length]
    return bool(((tail == 0) | (tail == 2)).all())


def verify_frontier(o: Originator, scan_depth: int = DEFAULT_SCAN_DEPTH) -> VerifyReport:
    """Check leaders row by row, stopping early at a certifying stable row.

    Rows are derived explicitly only up to the stable row (searched for
    within ``scan_depth`` rows); all later leaders are certified without
    materializing anything.  If no stable row shows up in the scan window,
    the run degrades to the naive sweep and the report says so in
    ``method``.
    """
    start = time.perf_counter()
    if scan_depth < 1:
        raise RangeError(f"scan depth must be at least 1, got {scan_depth}")
    n = o.n
    row = _first_row(o)
    spare = np.empty(max(n - 2, 0), dtype=np.int64)
    all_ones = True
    first_failure = None
    stabilization_row = None
    max_checked = 0
    length = n - 1
    for k in range(1, n):
        leader = int(row[0])
        if leader != 1:
            all_ones = False
            first_failure = (k, leader)
            break
        max_checked = k
        if k <= scan_depth and _is_stable(row, length):
            stabilization_row = k
            max_checked = n - 1
            break
        if k < n - 1:
            row, spare = _derive_into(row, spare, length), row
            length -= 1
    return VerifyReport(
        n=n,
        method="frontier" if stabilization_row is not None else "naive",
        all_ones=all_ones,
        max_order_checked=max_checked,
        first_failure=first_failure,
        stabilization_row=stabilization_row,
        elapsed=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class FailingCase:
    """One reproducible counterexample: its trial, seed, failure, and terms."""

    trial: int
    seed: int
    failure_order: int
    failure_value: int
    terms: tuple[int, ...]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "failure_order": self.failure_order,
            "failure_value": self.failure_value,
            "sequence": list(self.terms),
        }


@dataclass(frozen=True)
class SearchReport:
    """Aggregate outcome of a randomized counterexample search.

    ``failure_orders`` maps the order of the first bad leader to how many
    trials failed there; ``examples`` keeps the first few failing sequences
    for replay.
    """

    n: int
    g_max: int
    trials: int
    seed: int
    scan_depth: int
    failures: int
    failure_orders: tuple[tuple[int, int], ...]
    examples: tuple[FailingCase, ...]
    elapsed: float

    @property
    def failure_rate(self) -> float:
        return self.failures / self.trials

    def to_json_dict(self, *, timing: bool = False) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "n": self.n,
            "g_max": self.g_max,
            "trials": self.trials,
            "seed": self.seed,
            "scan_depth": self.scan_depth,
            "failures": self.failures,
            "failure_rate": self.failure_rate,
            "failure_orders": {str(k): c for k, c in self.failure_orders},
            "examples": [case.to_json_dict() for case in self.examples],
        }
        if timing:
            payload["elapsed_ms"] = round(self.elapsed * 1000.0, 3)
        return payload


def search_counterexamples(
    model: RandomModel,
    trials: int,
    seed: int,
    *,
    scan_depth: int = DEFAULT_SCAN_DEPTH,
    dump_dir: str | os.PathLike | None = None,
) -> SearchReport:
    """Run ``trials`` independent verifications on sequences from the model.

    Each trial draws its own sequence seed from a SplitMix64 stream on
    ``seed``, so a report is reproducible from (model shape, trials, seed)
    alone; the seed inside ``model`` is not consulted.  With ``dump_dir``
    set, the kept failing sequences are also written there as sequence
    files named ``<trial seed>.txt``.
    """
    start = time.perf_counter()
    if trials < 1:
        raise RangeError(f"trial count must be at least 1, got {trials}")
    if not 0 <= seed < (1 << 64):
        raise RangeError(f"seed must fit in 64 unsigned bits, got {seed}")
    stream = _SplitMix64(seed)
    failures = 0
    orders: dict[int, int] = {}
    examples: list[FailingCase] = []
    for trial in range(1, trials + 1):
        trial_seed = stream.next_u64()
        o = random_generalized(RandomModel(model.n, model.g_max, trial_seed))
        report = verify_frontier(o, scan_depth)
        if report.all_ones:
            continue
        failures += 1
        k, value = report.first_failure
        orders[k] = orders.get(k, 0) + 1
        if len(examples) < KEPT_FAILURES:
            examples.append(
                FailingCase(
                    trial=trial,
                    seed=trial_seed,
                    failure_order=k,
                    failure_value=value,
                    terms=tuple(int(t) for t in o.terms),
                )
            )
    if dump_dir is not None and examples:
        os.makedirs(dump_dir, exist_ok=True)
        for case in examples:
            path = os.path.join(os.fspath(dump_dir), f"{case.seed}.txt")
            dump_sequence(Originator(np.array(case.terms, dtype=np.int64)), path)
    return SearchReport(
        n=model.n,
        g_max=model.g_max,
        trials=trials,
        seed=seed,
        scan_depth=scan_depth,
        failures=failures,
        failure_orders=tuple(sorted(orders.items())),
        examples=tuple(examples),
        elapsed=time.perf_counter() - start,
    )
