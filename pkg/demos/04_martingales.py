"""Adapted processes: generation, classification, and the square function.

A process is one lattice element per filtration stage, stored as a matrix.
Generated difference sequences satisfy the defining property exactly up to
rounding (every earlier-stage average of a later increment is numerically
zero), their partial sums classify as martingales, and taking positive
parts produces genuine submartingales.
"""

import numpy as np

from rieszmart import (
    GeneratorConfig,
    classify,
    generate_mds,
    generate_submartingale,
    is_difference_sequence,
    partial_sums,
    positive_part_process,
    square_function,
)


def banner(text: str) -> None:
    print(f"\n--- {text} ---")


def main() -> None:
    banner("a generated martingale difference sequence")
    cfg = GeneratorConfig(seed=11, dim=4, steps=6, amplitude=1.0)
    diffs = generate_mds(cfg)
    print(f"shape (steps x atoms): {diffs.values.shape}")
    print(f"difference property  : {is_difference_sequence(diffs)}")
    print("stage values:")
    for i in range(len(diffs)):
        print(f"  Y_{i + 1} = {np.array2string(diffs.values[i], precision=4)}")
    print("(the default filtration refines one block per stage; by stage 4")
    print(" all blocks are singletons, so later increments must be zero)")

    banner("partial sums classify as a martingale")
    walk = partial_sums(diffs)
    print(f"classify(partial sums) : {classify(walk)}")
    print(f"classify(differences)  : {classify(diffs)}")
    print("(the differences themselves are typically unordered: earlier-stage")
    print(" averages of later stages are zero, neither above nor below Y_i)")

    banner("drifted and positive-part submartingales")
    drifted = generate_submartingale(cfg, mode="drift")
    print(f"drift mode        : {classify(drifted)}")
    plus = positive_part_process(walk)
    print(f"positive part     : {classify(plus)}")
    print(f"first stage (X_1)+: {np.array2string(plus.values[0], precision=4)}")

    banner("the square function")
    sq = square_function(walk)
    print("running sums of squared increments (nondecreasing rows):")
    for i in (0, len(sq) - 1):
        print(f"  S_{i + 1} = {np.array2string(sq.values[i], precision=4)}")
    nondecreasing = bool(np.all(np.diff(sq.values, axis=0) >= 0.0))
    print(f"rows nondecreasing: {nondecreasing}")

    banner("CSV export of a trajectory")
    print("\n".join(walk.to_csv().splitlines()[:5]))
    print("...")


if __name__ == "__main__":
    main()
