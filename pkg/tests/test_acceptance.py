"""Acceptance gate: the full criteria list, one printed verdict line each.

Every test prints `criterion N (<label>): PASS|FAIL` on the live terminal
(capture is bypassed) so a plain pytest run doubles as the acceptance
checklist.  One criterion is expected to fail: the square-sum exchange
relation demanded at zero failures is mathematically false on generic
difference sequences (see test_criterion_7_exchange_step_zero_failures),
and this suite reports that honestly instead of weakening the check.
"""

import contextlib
import functools
import json
import time

import numpy as np
import pytest

from rieszmart import (
    ConditionalExpectationOp,
    GeneratorConfig,
    Partition,
    SampleSpace,
    WeightSequence,
    generate_mds,
    generate_submartingale,
    holder_sums,
    kronecker_transform,
    slln_an_equals_n,
    slln_p_le_2,
    submartingale_convergence_experiment,
)
from rieszmart.cli import main
from rieszmart.reports import dump_json, strip_elapsed
from rieszmart.rng import SplitMix64, derive_seed
from rieszmart.suites import (
    RunConfig,
    run_bands,
    run_burkholder,
    run_clarkson,
    run_doob,
    run_holder,
    run_hrc,
    run_telescoping,
)

GOLDEN_DIR = "golden"
STANDARD = dict(trials=1000, seed=42, dim_max=8, steps_max=16)


@contextlib.contextmanager
def criterion(capsys, number, label):
    ok = False
    try:
        yield
        ok = True
    finally:
        with capsys.disabled():
            print(f"criterion {number} ({label}): {'PASS' if ok else 'FAIL'}")


# --- 1: Clarkson at scale ------------------------------------------------------


def test_criterion_1_clarkson_suite(capsys):
    with criterion(capsys, 1, "clarkson 10^4 trials dims<=32"):
        start = time.perf_counter()
        report = run_clarkson(
            RunConfig(suite="clarkson", trials=10_000, seed=42, dim_max=32)
        )
        elapsed = time.perf_counter() - start
        assert report.failure_count == 0, report.failures[:3]
        assert report.tol.abs == 1e-12 and report.tol.rel == 1e-9
        assert elapsed < 10.0, f"took {elapsed:.2f}s"


# --- 2: Holder at scale ---------------------------------------------------------


def test_criterion_2_holder_suite(capsys):
    with criterion(capsys, 2, "holder 10^4 trials incl. q=inf"):
        report = run_holder(RunConfig(suite="holder", trials=10_000, seed=42, dim_max=32))
        assert report.failure_count == 0, report.failures[:3]

        op = ConditionalExpectationOp(Partition.single_block(SampleSpace.uniform(3)))
        e = op.space.unit()
        unit_case = holder_sums([e], [e], 2.0, 2.0, op)
        assert unit_case.passed
        assert abs(unit_case.min_margin) <= 1e-12


# --- 3: band projection oracle and set identities --------------------------------


def test_criterion_3_band_oracle_equivalence(capsys):
    with criterion(capsys, 3, "band oracle + set identities, 10^3 trials"):
        report = run_bands(RunConfig(suite="bands", trials=1000, seed=42, dim_max=16))
        assert report.failure_count == 0, report.failures[:3]


# --- 4: telescoping bound and maximal inequalities --------------------------------


def test_criterion_4_telescoping_and_maximal(capsys):
    with criterion(capsys, 4, "telescoping + maximal ineq., 10^3 each"):
        cfg = RunConfig(suite="telescoping", trials=1000, seed=42, dim_max=16, steps_max=20)
        tele = run_telescoping(cfg)
        assert tele.failure_count == 0, tele.failures[:3]
        hrc = run_hrc(RunConfig(suite="hrc", trials=1000, seed=42, dim_max=16, steps_max=20))
        assert hrc.failure_count == 0, hrc.failures[:3]
        doob = run_doob(RunConfig(suite="doob", trials=1000, seed=42, dim_max=16, steps_max=20))
        assert doob.failure_count == 0, doob.failures[:3]


# --- 5: Burkholder identity and golden ratio brackets ------------------------------


def test_criterion_5_burkholder_identity_and_golden(capsys):
    with criterion(capsys, 5, "burkholder p=2 identity + golden p=3,4"):
        identity = run_burkholder(RunConfig(suite="burkholder", **STANDARD), p=2.0)
        assert identity.failure_count == 0, identity.failures[:3]
        assert identity.details["ratio_min"] == pytest.approx(1.0, rel=1e-9)
        assert identity.details["ratio_max"] == pytest.approx(1.0, rel=1e-9)

        for p, name in ((3.0, "burkholder_p3.json"), (4.0, "burkholder_p4.json")):
            report = run_burkholder(RunConfig(suite="burkholder", **STANDARD), p=p)
            assert report.failure_count == 0
            lo = report.details["ratio_min"]
            hi = report.details["ratio_max"]
            assert 0.0 < lo <= hi and np.isfinite(hi)
            regenerated = dump_json(strip_elapsed(report.to_json_dict()))
            with open(f"{GOLDEN_DIR}/{name}") as fh:
                frozen = fh.read()
            assert regenerated == frozen, f"{name} drifted from the golden report"


# --- 6: Kronecker desk check --------------------------------------------------------


def test_criterion_6_kronecker_desk_check(capsys):
    with criterion(capsys, 6, "kronecker desk check, dim 1, N=10^4"):
        space = SampleSpace.uniform(1)
        n = 10_000
        xs = [space.element([1.0 / i**2]) for i in range(1, n + 1)]
        start = time.perf_counter()
        report = kronecker_transform(xs, WeightSequence.power(1.0), epsilon=1e-2)
        elapsed = time.perf_counter() - start

        acc = 0.0
        for i in range(1, n + 1):
            acc += float(i) * (1.0 / i**2)
        oracle = acc / n

        value = report.values[-1][0]
        assert abs(value - oracle) <= 1e-12 * abs(oracle)
        assert abs(value - 9.79e-4) / 9.79e-4 < 0.05
        assert report.verdict, "not order-null at epsilon 1e-2"
        assert elapsed < 1.0, f"took {elapsed:.2f}s"


# --- 7: strong laws over the 20-seed suite -------------------------------------------


@functools.cache
def _slln_suite():
    """Twenty seeded runs of both strong-law experiments at N = 10^4."""
    results = []
    for seed in range(20):
        dim = 2 + seed % 7  # covers 2..8
        diffs = generate_mds(
            GeneratorConfig(seed=seed, dim=dim, steps=10_000, amplitude=1.0)
        )
        le2 = slln_p_le_2(diffs, WeightSequence.power(1.0), p=2.0, epsilon=0.1)
        at_n = slln_an_equals_n(diffs, p=3.0, epsilon=0.1)
        results.append((seed, le2, at_n))
    return results


def test_criterion_7_slln_verdicts_and_sound_steps(capsys):
    with criterion(capsys, 7, "slln 20 seeds: verdicts + sound proof steps"):
        for seed, le2, at_n in _slln_suite():
            assert le2.verdict, f"seed {seed}: p<=2 verdict negative"
            assert at_n.verdict, f"seed {seed}: rate-n verdict negative"
            assert le2.decay.tail_sup[-1] <= 0.1, f"seed {seed}"
            assert at_n.decay.tail_sup[-1] <= 0.1, f"seed {seed}"
            # Submartingale double bound on |X_n|^p: sound, must never fail.
            assert le2.checks["power-diff-nonneg"].failures == 0, f"seed {seed}"
            assert le2.checks["power-diff-dominated"].failures == 0, f"seed {seed}"
            # Composite square-sum bound: sound, must never fail.
            assert at_n.checks["square-sum-power-bound"].failures == 0, f"seed {seed}"
            assert at_n.checks["moment-power-step"].failures == 0, f"seed {seed}"


def test_criterion_7_exchange_step_zero_failures(capsys):
    """Demanded: zero failures for the square-sum exchange relation.

    The relation pushes a convex power inside the stage-one average, which
    reverses the true convexity direction; it is false on any difference
    sequence whose squared increments are nonconstant across a block
    (Y = (1,-1,0,0) on four uniform atoms already breaks it: averaged
    square-sum 1/2 against squared averaged moments 1/4).  The
    implementation evaluates the relation faithfully and counts every
    componentwise miss, so this test fails for mathematical reasons, not
    engineering ones, and is kept isolated so the remaining suite stays
    meaningful.
    """
    with criterion(capsys, 7, "slln 20 seeds: exchange step zero failures"):
        total = sum(r.checks["square-sum-exchange"].failures for _, _, r in _slln_suite())
        worst = min(r.checks["square-sum-exchange"].min_margin for _, _, r in _slln_suite())
        assert total == 0, (
            f"square-sum-exchange failed {total} componentwise comparisons over "
            f"20 seeds (worst margin {worst:.3e}); the relation is false in "
            f"general, so zero failures are unattainable"
        )


# --- 8: series term signs -------------------------------------------------------------


def test_criterion_8_submartingale_term_signs(capsys):
    with criterion(capsys, 8, "500 submartingales: term signs >= -1e-12"):
        worst = 0.0
        for t in range(500):
            stream = SplitMix64(derive_seed(42, "term-sign", t))
            dim = 1 + stream.below(8)
            steps = 2 + stream.below(11)
            amplitude = 1.0
            weight_mode = "uniform" if stream.next_float() < 0.5 else "random"
            proc = generate_submartingale(
                GeneratorConfig(
                    seed=derive_seed(42, "term-sign-proc", t),
                    dim=dim,
                    steps=steps,
                    amplitude=amplitude,
                    weight_mode=weight_mode,
                ),
                mode="positive-part",
            )
            p = 1.0 + 1.5 * stream.next_float()
            rates = WeightSequence.power((0.5, 1.0)[t % 2])
            report = submartingale_convergence_experiment(proc, rates, p=p)
            margin = report.checks["term-nonneg"].min_margin
            worst = min(worst, margin)
            assert margin >= -1e-12, f"trial {t}: term margin {margin:.3e}"
        assert worst >= -1e-12


# --- 9: determinism --------------------------------------------------------------------


def test_criterion_9_reports_are_byte_identical(capsys, tmp_path):
    with criterion(capsys, 9, "verify/simulate byte-identical reruns"):
        out_a = tmp_path / "verify_a.json"
        out_b = tmp_path / "verify_b.json"
        args = ["verify", "--suite", "ce-axioms", "--trials", "50", "--seed", "42"]
        assert main(args + ["--output", str(out_a)]) == 0
        assert main(args + ["--output", str(out_b)]) == 0
        bytes_a = dump_json(strip_elapsed(json.loads(out_a.read_text())))
        bytes_b = dump_json(strip_elapsed(json.loads(out_b.read_text())))
        assert bytes_a == bytes_b

        dir_a = tmp_path / "sim_a"
        dir_b = tmp_path / "sim_b"
        sim = ["simulate", "slln-p-le-2", "--n", "512", "--dim", "4", "--seed", "42"]
        assert main(sim + ["--output-dir", str(dir_a)]) == 0
        assert main(sim + ["--output-dir", str(dir_b)]) == 0
        for name in ("slln_p_le_2_trajectory.csv", "slln_p_le_2_hypothesis.csv"):
            assert (dir_a / name).read_bytes() == (dir_b / name).read_bytes(), name
        v_a = dump_json(strip_elapsed(json.loads((dir_a / "slln_p_le_2_verdict.json").read_text())))
        v_b = dump_json(strip_elapsed(json.loads((dir_b / "slln_p_le_2_verdict.json").read_text())))
        assert v_a == v_b
