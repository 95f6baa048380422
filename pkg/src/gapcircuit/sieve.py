"""Segmented sieve of Eratosthenes.

Base primes up to sqrt(limit) are found with a plain sieve; the rest of the
range is processed in fixed-size windows so the working set stays
cache-resident regardless of the limit.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .errors import RangeError, SieveBudgetError

# Window of integers sieved per segment.  Tunable: larger windows trade cache
# locality for fewer passes over the base primes.
SEGMENT_SIZE = 1 << 18

# Ceiling on the byte size of any emitted prime array (8 bytes per prime).
DEFAULT_BUDGET_BYTES = 1 << 29

BUDGET_ENV_VAR = "GAPCIRCUIT_SIEVE_BUDGET"

_SMALL_NTH_BOUND = (2, 3, 5, 7, 11)


def sieve_budget_bytes() -> int:
    """Return the active sieve budget in bytes.

    Reads ``GAPCIRCUIT_SIEVE_BUDGET`` from the environment when set, otherwise
    falls back to ``DEFAULT_BUDGET_BYTES``.
    """
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET_BYTES
    try:
        value = int(raw)
    except ValueError:
        raise SieveBudgetError(
            f"{BUDGET_ENV_VAR} must be an integer byte count, got {raw!r}"
        ) from None
    if value <= 0:
        raise SieveBudgetError(f"{BUDGET_ENV_VAR} must be positive, got {value}")
    return value


def prime_count_upper_bound(limit: int) -> int:
    """Upper bound on the number of primes <= limit (Rosser-Schoenfeld style)."""
    if limit < 2:
        return 0
    if limit < 17:
        return 6
    return int(1.25506 * limit / math.log(limit)) + 1


def nth_prime_upper_bound(n: int) -> int:
    """Integer upper bound on the n-th prime (1-based)."""
    if n <= len(_SMALL_NTH_BOUND):
        return _SMALL_NTH_BOUND[n - 1]
    x = float(n)
    return int(x * (math.log(x) + math.log(math.log(x)))) + 1


def _simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit by a dense boolean sieve (int64 array)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_up_to_array(
    limit: int,
    *,
    segment_size: int | None = None,
    budget_bytes: int | None = None,
) -> np.ndarray:
    """All primes <= limit, increasing, as an int64 array.

    Raises ``RangeError`` for limit < 2 and ``SieveBudgetError`` when the
    estimated output would exceed the budget.
    """
    if limit < 2:
        raise RangeError(f"prime limit must be at least 2, got {limit}")
    budget = sieve_budget_bytes() if budget_bytes is None else budget_bytes
    estimated_bytes = 8 * prime_count_upper_bound(limit)
    if estimated_bytes > budget:
        raise SieveBudgetError(
            f"sieving to {limit} may emit ~{estimated_bytes} bytes of primes, "
            f"over the budget of {budget} bytes "
            f"(raise {BUDGET_ENV_VAR} to allow this)"
        )
    window = SEGMENT_SIZE if segment_size is None else segment_size
    if window < 1:
        raise RangeError(f"segment size must be positive, got {window}")

    root = math.isqrt(limit)
    base = _simple_sieve(root)
    chunks = [base]
    base_ints = [int(p) for p in base]
    for lo in range(root + 1, limit + 1, window):
        hi = min(lo + window, limit + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base_ints:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start < hi:
                seg[start - lo :: p] = False
        chunks.append(np.flatnonzero(seg).astype(np.int64) + lo)
    primes = np.concatenate(chunks)
    primes.setflags(write=False)
    return primes


def first_n_primes_array(
    n: int,
    *,
    segment_size: int | None = None,
    budget_bytes: int | None = None,
) -> np.ndarray:
    """The first n primes, increasing, as an int64 array."""
    if n < 1:
        raise RangeError(f"prime count must be at least 1, got {n}")
    budget = sieve_budget_bytes() if budget_bytes is None else budget_bytes
    if 8 * n > budget:
        raise SieveBudgetError(
            f"{n} primes need {8 * n} bytes, over the budget of {budget} bytes "
            f"(raise {BUDGET_ENV_VAR} to allow this)"
        )
    bound = nth_prime_upper_bound(n)
    while True:
        primes = primes_up_to_array(
            bound, segment_size=segment_size, budget_bytes=budget
        )
        if len(primes) >= n:
            out = primes[:n].copy()
            out.setflags(write=False)
            return out
        # The bound is proven sufficient; this is pure defensiveness.
        bound *= 2
