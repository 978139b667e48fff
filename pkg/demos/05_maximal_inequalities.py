"""Inequalities under averaging operators, from one-shot checks to suites.

Every check reports a margin — the worst signed slack across atoms — so a
passing inequality also says how comfortably it passed.  The maximal
inequalities bound how far a submartingale climbs above a block-constant
threshold g in terms of a telescoped sum of projected increments.
"""

import math

from rieszmart import (
    ConditionalExpectationOp,
    GeneratorConfig,
    Partition,
    SampleSpace,
    burkholder_ratio,
    clarkson,
    doob_maximal,
    generate_mds,
    generate_submartingale,
    holder_sums,
    hrc_maximal,
    jensen_power,
    telescoping_bound,
)


def banner(text: str) -> None:
    print(f"\n--- {text} ---")


def show(name: str, report) -> None:
    print(f"{name:28s}: failures={report.failure_count} min_margin={report.min_margin:+.3e}")


def main() -> None:
    space = SampleSpace.uniform(4)
    op = ConditionalExpectationOp(Partition(space, [[0, 1], [2, 3]]))
    x = space.element([1.0, -2.0, 0.5, 3.0])
    y = space.element([2.0, 1.0, -1.0, 0.5])

    banner("pointwise inequality checks")
    show("holder p=2,q=2", holder_sums([x], [y], 2.0, 2.0, op))
    show("holder p=1,q=inf", holder_sums([x], [y], 1.0, math.inf, op))
    show("clarkson p=1.5", clarkson(x, y, 1.5))
    show("jensen p=3", jensen_power(x, 3.0, op))
    e = space.unit()
    sharp = holder_sums([e], [e], 2.0, 2.0, ConditionalExpectationOp(Partition.single_block(space)))
    print(f"equality case (x=y=e)       : margin {sharp.min_margin:+.3e} (bound is attained)")

    banner("telescoping band-projection bound for arbitrary sequences")
    seq = [space.element(v) for v in ([0.5, 1.0, 2.0, 0.0], [2.0, 0.5, 1.0, 3.0], [1.0, 1.0, 1.0, 1.0])]
    g = space.unit()
    show("telescoping, 3 stages", telescoping_bound(seq, g))

    banner("maximal inequalities for generated submartingales")
    cfg = GeneratorConfig(seed=3, dim=8, steps=10, amplitude=1.0)
    sub = generate_submartingale(cfg, mode="positive-part")
    gsub = sub.space.unit()
    unit_rates = [1.0] * len(sub)
    growing = [float(i) for i in range(1, len(sub) + 1)]
    show("hajek-renyi-chow, a_i = 1", hrc_maximal(sub, unit_rates, gsub))
    show("hajek-renyi-chow, a_i = i", hrc_maximal(sub, growing, gsub))
    show("doob form (a = 1)", doob_maximal(sub, gsub))

    banner("square-function ratio brackets")
    diffs = generate_mds(GeneratorConfig(seed=5, dim=8, steps=12, amplitude=1.0))
    base = diffs.filtration[0]
    for p in (2.0, 3.0, 4.0):
        rep = burkholder_ratio(diffs, base, p)
        lo, hi = rep.details["ratio_min"], rep.details["ratio_max"]
        note = "identity: both sides equal" if p == 2.0 else "finite two-sided bracket"
        print(f"p={p}: ratio range [{lo:.6f}, {hi:.6f}]  ({note})")


if __name__ == "__main__":
    main()
