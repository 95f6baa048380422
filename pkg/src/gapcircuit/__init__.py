"""Difference triangles of integer sequences, their statistics, and checks.

The package builds the triangle of iterated absolute differences over a
seed sequence (the originator), measures its rows (lengths, circuit
length, traces), evaluates a family of exact inequalities on it, and
verifies at scale that every derived row of a prime triangle starts
with 1.
"""

from .bounds import (
    BoundReport,
    check_average_trace_bound,
    check_circuit_bounds,
    check_length_bounds,
    check_monotone_length_decrease,
    check_small_segment_existence,
    check_strong_gilbreath,
    check_trace_circuit_theorem,
    check_trace_recurrence,
    check_trace_sum_identity,
    check_zero_existence,
    run_all_checks,
    summarize,
)
from .errors import (
    EmptyInputError,
    GapCircuitError,
    Int64OverflowError,
    RangeError,
    SequenceParseError,
    SieveBudgetError,
    UsageError,
)
from .originator import (
    Originator,
    RandomModel,
    dump_sequence,
    first_n_primes,
    load_sequence,
    primes_up_to,
    random_generalized,
    render_sequence,
)
from .triangle import (
    Circuit,
    Path,
    build_circuit,
    circuit_length,
    derive,
    path_lengths,
    path_length,
    path_of_order,
    total_maximal_steps,
    trace,
    traces,
    trivial_path,
)
from .verifier import (
    FailingCase,
    SearchReport,
    VerifyReport,
    search_counterexamples,
    verify_frontier,
    verify_naive,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Circuit",
    "EmptyInputError",
    "FailingCase",
    "GapCircuitError",
    "Int64OverflowError",
    "Originator",
    "Path",
    "RandomModel",
    "RangeError",
    "SearchReport",
    "SequenceParseError",
    "SieveBudgetError",
    "UsageError",
    "VerifyReport",
    "build_circuit",
    "check_average_trace_bound",
    "check_circuit_bounds",
    "check_length_bounds",
    "check_monotone_length_decrease",
    "check_small_segment_existence",
    "check_strong_gilbreath",
    "check_trace_circuit_theorem",
    "check_trace_recurrence",
    "check_trace_sum_identity",
    "check_zero_existence",
    "circuit_length",
    "derive",
    "dump_sequence",
    "first_n_primes",
    "load_sequence",
    "path_length",
    "path_lengths",
    "path_of_order",
    "primes_up_to",
    "random_generalized",
    "render_sequence",
    "run_all_checks",
    "search_counterexamples",
    "summarize",
    "total_maximal_steps",
    "trace",
    "traces",
    "trivial_path",
    "verify_frontier",
    "verify_naive",
]
