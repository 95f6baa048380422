"""End-to-end acceptance suite.

Each test covers one release criterion and prints a single PASS/FAIL line
(written straight to the real stdout so it survives pytest's capture).
The criteria are exercised at full stated scale; none of them may be
weakened to make a run faster.
"""

import json
import random
import subprocess
import sys
import time

import numpy as np

import oracle
from gapcircuit import (
    Originator,
    RandomModel,
    build_circuit,
    circuit_length,
    derive,
    first_n_primes,
    path_lengths,
    path_of_order,
    random_generalized,
    total_maximal_steps,
    traces,
    trivial_path,
    verify_frontier,
    verify_naive,
)
from gapcircuit.cli import main


def _report(capsys, number: int, label: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    line = f"acceptance {number} ({label}): {status} — {detail}"
    with capsys.disabled():
        print(line, flush=True)
    assert ok, line


class TestAcceptance:
    def test_1_hand_fixture(self, capsys):
        seed = Originator([2, 3, 5, 7, 11])
        circuit = build_circuit(seed)

        expected_rows = [[1, 2, 2, 4], [1, 0, 2], [1, 2], [1]]
        rows_ok = [circuit.row(k).tolist() for k in range(1, 5)] == expected_rows
        stats_ok = (
            circuit_length(circuit) == 16
            and traces(circuit) == [4, 4, 4, 4]
            and path_lengths(circuit) == [9, 3, 3, 1]
            and total_maximal_steps(5) == 10 == 5 * 4 // 2
        )
        # second, independent route: the pure-python oracle must agree
        oracle_ok = (
            oracle.triangle_rows([2, 3, 5, 7, 11]) == expected_rows
            and oracle.kappa([2, 3, 5, 7, 11]) == 16
            and oracle.all_taus([2, 3, 5, 7, 11]) == [4, 4, 4, 4]
        )

        def fixture_pass():
            c = build_circuit(seed)
            return circuit_length(c), traces(c), path_lengths(c)

        fixture_pass()  # warm-up
        timings = []
        for _ in range(5):
            t0 = time.perf_counter()
            fixture_pass()
            timings.append(time.perf_counter() - t0)
        elapsed = min(timings)
        timing_ok = elapsed < 1e-3

        exact = rows_ok and stats_ok and oracle_ok
        _report(
            capsys,
            1,
            "hand fixture",
            exact and timing_ok,
            f"{'exact match' if exact else 'value mismatch'}, "
            f"fastest of 5 runs {elapsed * 1000:.3f} ms (< 1 ms)",
        )

    def test_2_scale_timings(self, capsys):
        desk = first_n_primes(10_000)
        t0 = time.perf_counter()
        desk_report = verify_naive(desk)
        desk_elapsed = time.perf_counter() - t0

        large = first_n_primes(1_000_000)
        t0 = time.perf_counter()
        large_report = verify_frontier(large)
        large_elapsed = time.perf_counter() - t0

        ok = (
            desk_report.all_ones
            and desk_elapsed < 5.0
            and large_report.all_ones
            and large_elapsed < 60.0
        )
        _report(
            capsys,
            2,
            "scale timings",
            ok,
            f"naive 10^4 primes {desk_elapsed:.2f}s (< 5s), "
            f"frontier 10^6 primes {large_elapsed:.2f}s (< 60s), "
            f"stabilized at row {large_report.stabilization_row}",
        )

    def test_3_method_equivalence(self, capsys):
        discrepancies = 0
        cases = 0

        primes = first_n_primes(2000).terms
        for n in range(2, 2001):
            seed = Originator(primes[:n])
            fast = verify_frontier(seed)
            slow = verify_naive(seed)
            cases += 1
            if (fast.all_ones, fast.first_failure) != (
                slow.all_ones,
                slow.first_failure,
            ):
                discrepancies += 1

        for i in range(500):
            model = RandomModel(
                n=2 + (i * 7) % 299, g_max=2 * (1 + i % 10), seed=i
            )
            seed = random_generalized(model)
            fast = verify_frontier(seed)
            slow = verify_naive(seed)
            cases += 1
            if (fast.all_ones, fast.first_failure) != (
                slow.all_ones,
                slow.first_failure,
            ):
                discrepancies += 1

        _report(
            capsys,
            3,
            "method equivalence",
            discrepancies == 0,
            f"{cases} originators compared "
            f"(1999 prime prefixes + 500 random), {discrepancies} discrepancies",
        )

    def test_4_proposition_suite(self, capsys):
        problems = []
        total_reports = 0
        for n in (3, 10, 50, 100, 500):
            code = main(["check", "--primes", str(n)])
            payload = json.loads(capsys.readouterr().out)
            reports = payload["reports"]
            total_reports += len(reports)
            if code != 0 or payload["summary"]["failed"] != 0:
                problems.append(f"n={n}: exit {code}, summary {payload['summary']}")

            strict_failures = set()
            for r in reports:
                if not r["precondition_met"] or r["holds"]:
                    continue
                family = r["name"].split("(")[0]
                if family != "monotone_length_decrease":
                    problems.append(f"n={n}: non-vacuous failure in {r['name']}")
                elif r["lhs"] != r["rhs"]:
                    problems.append(f"n={n}: strict {r['name']} failed non-equal")
                else:
                    k = int(r["name"].split("k=")[1].rstrip(")"))
                    strict_failures.add(k)

            circuit = build_circuit(first_n_primes(n))
            all_zero_rows = {
                k for k in range(1, n) if not circuit.row(k).any()
            }
            if strict_failures != all_zero_rows:
                problems.append(
                    f"n={n}: equality cases {sorted(strict_failures)} != "
                    f"all-zero rows {sorted(all_zero_rows)}"
                )

        _report(
            capsys,
            4,
            "proposition suite",
            not problems,
            f"{total_reports} reports over n in (3, 10, 50, 100, 500), "
            f"zero non-vacuous failures" if not problems else "; ".join(problems),
        )

    def test_5_structural_laws(self, capsys):
        failures = []
        for i in range(1000):
            rng = random.Random(i)
            n = 2 + i % 199
            terms = [rng.randint(-(10**9), 10**9) for _ in range(n)]
            seed = Originator(terms)
            circuit = build_circuit(seed)

            if any(len(circuit.row(k)) != n - k for k in range(1, n)):
                failures.append(f"trial {i}: step-count law broken")
            if not (circuit.segment_count == n * (n - 1) // 2 == total_maximal_steps(n)):
                failures.append(f"trial {i}: segment-count law broken")
            if circuit_length(circuit) != sum(traces(circuit)):
                failures.append(f"trial {i}: trace-sum identity broken")

            # determinism: independent recomputations agree segment for segment
            again = build_circuit(seed)
            if any(
                not np.array_equal(circuit.row(k), again.row(k))
                for k in range(1, n)
            ):
                failures.append(f"trial {i}: rebuild differs")
            for k in {1, n // 2, n - 1} - {0}:
                line = path_of_order(seed, k)
                if line.steps != n - k or not np.array_equal(
                    line.segments, circuit.row(k)
                ):
                    failures.append(f"trial {i}: path_of_order({k}) differs")
            repeat = derive(trivial_path(seed))
            if not np.array_equal(repeat.segments, circuit.row(1)):
                failures.append(f"trial {i}: derive not deterministic")

            if failures:
                break

        _report(
            capsys,
            5,
            "structural laws",
            not failures,
            "1000 mixed-sign originators, all laws hold"
            if not failures
            else failures[0],
        )

    def test_6_cli_determinism(self, capsys, tmp_path):
        failing = tmp_path / "fails.txt"
        failing.write_text("1\n3\n5\n7\n")
        commands = [
            ["triangle", "--primes", "12"],
            ["triangle", "--primes", "12", "--format", "text"],
            ["stats", "--primes", "40", "--format", "csv"],
            ["stats", "--limit", "100"],
            ["check", "--primes", "60"],
            ["check", "--primes", "25", "--format", "text"],
            ["verify", "--primes", "500"],
            ["verify", "--file", str(failing), "--format", "csv"],
            ["search", "--n", "50", "--gmax", "8", "--trials", "40", "--seed", "3"],
            ["search", "--n", "20", "--gmax", "2", "--format", "csv"],
        ]
        mismatches = []
        for argv in commands:
            runs = [
                subprocess.run(
                    [sys.executable, "-m", "gapcircuit", *argv],
                    capture_output=True,
                    timeout=120,
                )
                for _ in range(2)
            ]
            if runs[0].stdout != runs[1].stdout:
                mismatches.append(f"stdout differs: {' '.join(argv)}")
            if runs[0].returncode != runs[1].returncode:
                mismatches.append(f"exit code differs: {' '.join(argv)}")

        _report(
            capsys,
            6,
            "cli determinism",
            not mismatches,
            f"{len(commands)} commands, two runs each, byte-identical"
            if not mismatches
            else "; ".join(mismatches),
        )
