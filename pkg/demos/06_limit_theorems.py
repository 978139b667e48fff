"""Desk-scale limit theorems: damped averages, convergence, strong laws.

Order convergence to zero is certified empirically through suffix suprema
at power-of-two checkpoints; series hypotheses are screened by a Cauchy
tail criterion.  The last section demonstrates, on purpose, a proof step
that is genuinely false — pushing a convex power inside a stage-one
average — and shows the counterexample that breaks it.
"""

import numpy as np

from rieszmart import (
    ConditionalExpectationOp,
    GeneratorConfig,
    Partition,
    ProcessSequence,
    Filtration,
    SampleSpace,
    WeightSequence,
    generate_mds,
    generate_submartingale,
    kronecker_transform,
    slln_an_equals_n,
    slln_p_gt_2,
    slln_p_le_2,
    submartingale_convergence_experiment,
)


def banner(text: str) -> None:
    print(f"\n--- {text} ---")


def main() -> None:
    banner("rate-damped averages of a summable sequence")
    space = SampleSpace.uniform(1)
    n = 10_000
    xs = [space.element([1.0 / i**2]) for i in range(1, n + 1)]
    report = kronecker_transform(xs, WeightSequence.power(1.0), epsilon=1e-2)
    print(f"(1/N) sum i * x_i at N={n}: {report.values[-1][0]:.6e}  (about H_N / N)")
    print(f"order-null verdict at eps=1e-2: {report.verdict}")

    banner("normalized decay of a nonnegative submartingale")
    sub = generate_submartingale(
        GeneratorConfig(seed=2, dim=4, steps=4096, amplitude=1.0), mode="positive-part"
    )
    exp = submartingale_convergence_experiment(sub, WeightSequence.power(0.5), p=1.5)
    terms = exp.checks["term-nonneg"]
    print(f"verdict: {exp.verdict}; series terms nonnegative: "
          f"failures={terms.failures}, worst margin={terms.min_margin:+.3e}")
    print(f"tail sup of X_n / a_n at the horizon: {exp.decay.tail_sup[-1]:.3e}")

    banner("strong law, 1 <= p <= 2, rates a_i = i")
    diffs = generate_mds(GeneratorConfig(seed=9, dim=6, steps=8192, amplitude=1.0))
    law = slln_p_le_2(diffs, WeightSequence.power(1.0), p=2.0, epsilon=0.1)
    print(f"verdict: {law.verdict}; tail sup {law.decay.tail_sup[-1]:.3e}")
    for name in ("power-diff-nonneg", "power-diff-dominated"):
        print(f"  sound step {name}: failures={law.checks[name].failures}")

    banner("strong law, p > 2, growth-rate constraint p >= gamma + (p/2 - 1) k")
    fast = slln_p_gt_2(diffs, WeightSequence.power(1.0), p=3.0, gamma=1.5, k=2)
    print(f"verdict: {fast.verdict}; delta={fast.config['delta']}")
    print(f"  holder-reduction failures: {fast.checks['holder-reduction'].failures}")

    banner("strong law at a_n = n, p > 2: one exchange step is false")
    law_n = slln_an_equals_n(diffs, p=3.0, epsilon=0.1)
    print(f"verdict: {law_n.verdict} (the conclusion itself holds)")
    for name, summary in sorted(law_n.checks.items()):
        print(f"  {name:24s}: failures={summary.failures:6d} worst={summary.min_margin:+.3e}")
    print("the exchange relation T1(s_n^(p/2)) <= (sum T1|Y_i|^2)^(p/2) points the")
    print("wrong way for a convex power; the composite bound that skips it is sound.")

    banner("the minimal counterexample, worked by hand")
    cspace = SampleSpace.uniform(4)
    ops = [ConditionalExpectationOp(Partition.single_block(cspace))] + [
        ConditionalExpectationOp(Partition.singletons(cspace)) for _ in range(3)
    ]
    values = np.zeros((4, 4))
    values[1] = [1.0, -1.0, 0.0, 0.0]
    proc = ProcessSequence(Filtration(ops), values)
    broken = slln_an_equals_n(proc, p=4.0)
    ex = broken.checks["square-sum-exchange"]
    print("Y_2 = (1,-1,0,0) on four uniform atoms, p = 4:")
    print("  T1(s^2)            = (1/2) e   (average of squares first)")
    print("  (T1 s)^2           = (1/4) e   (square of the average)")
    print(f"  recorded failures  = {ex.failures}, worst margin = {ex.min_margin:+.3f}")


if __name__ == "__main__":
    main()
