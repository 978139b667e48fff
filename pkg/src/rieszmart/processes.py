"""Adapted processes, martingale machinery, and seeded generators.

A ProcessSequence pairs one value per stage of a filtration.  Classification
compares apply(T_i, f_j) against f_i over every ordered pair i < j, not just
consecutive stages; the scan below is exact but organized per distinct
operator so the quadratic pair set costs linear work for the usual
filtrations (a few distinct coarse stages, then singletons repeated).

Generators draw all randomness from per-step SplitMix64 substreams keyed by
(seed, "mds-step", i), so a fixed GeneratorConfig reproduces the same process
bit for bit.  Step i draws a block-constant Z_i for the stage-i partition in
[-amplitude, amplitude] and takes Y_i = Z_i - T_{i-1} Z_i, with Y_1 = Z_1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conditional import ConditionalExpectationOp, Filtration, Partition
from .errors import (
    NotAdapted,
    NotDifferenceSequence,
    NotSubmartingale,
    SpaceMismatch,
)
from .lattice import DEFAULT_TOL, LatticeElement, SampleSpace, Tolerance
from .rng import SplitMix64, derive_seed

MARTINGALE = "martingale"
SUBMARTINGALE = "submartingale"
SUPERMARTINGALE = "supermartingale"
NONE = "none"


class ProcessSequence:
    """One element per filtration stage, stored as an (N, n) matrix."""

    __slots__ = ("filtration", "values")

    def __init__(self, filtration: Filtration, values):
        if isinstance(values, np.ndarray):
            mat = np.array(values, dtype=np.float64)
        else:
            rows = []
            for f in values:
                if f.space != filtration.space:
                    raise SpaceMismatch("process value on a different space")
                rows.append(f.coords)
            mat = np.array(rows, dtype=np.float64)
        if mat.ndim != 2 or mat.shape != (len(filtration), filtration.space.n):
            raise ValueError(
                f"expected {len(filtration)} x {filtration.space.n} values, got {mat.shape}"
            )
        if not np.all(np.isfinite(mat)):
            raise ValueError("process values must be finite")
        self.filtration = filtration
        self.values = mat
        self.values.flags.writeable = False

    @property
    def space(self) -> SampleSpace:
        return self.filtration.space

    def __len__(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, i: int) -> LatticeElement:
        return LatticeElement(self.space, self.values[i])

    def to_json_dict(self) -> dict:
        return {
            "filtration": self.filtration.to_json_dict(),
            "values": [[float(v) for v in row] for row in self.values],
        }

    def to_csv(self) -> str:
        lines = ["step,atom,value"]
        for i, row in enumerate(self.values):
            for a, v in enumerate(row):
                lines.append(f"{i + 1},{a},{float(v)!r}")
        return "\n".join(lines) + "\n"


def _op_groups(ops) -> list[tuple[ConditionalExpectationOp, np.ndarray]]:
    """Indices grouped by distinct operator, preserving first-seen order."""
    groups: dict = {}
    order = []
    for i, op in enumerate(ops):
        key = op.partition.blocks
        if key not in groups:
            groups[key] = (op, [])
            order.append(key)
        groups[key][1].append(i)
    return [(groups[k][0], np.asarray(groups[k][1], dtype=np.intp)) for k in order]


def is_adapted(process: ProcessSequence, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Every stage value must be fixed by its own averaging operator."""
    mat = process.values
    slack = tol.abs + tol.rel * float(np.max(np.abs(mat))) if mat.size else tol.abs
    for op, idx in _op_groups(process.filtration.ops):
        if op.is_identity:
            continue
        rows = mat[idx]
        if np.max(np.abs(op.apply_rows(rows) - rows)) > slack:
            return False
    return True


def classify(process: ProcessSequence, tol: Tolerance = DEFAULT_TOL) -> str:
    """Label a process by checking apply(T_i, f_j) against f_i for all i < j.

    Returns "martingale" when both one-sided comparisons hold (a martingale
    is both a sub- and a supermartingale), otherwise "submartingale",
    "supermartingale", or "none".  Raises NotAdapted first if any stage value
    is not fixed by its operator.
    """
    if not is_adapted(process, tol):
        raise NotAdapted("process value not fixed by its stage operator")
    mat = process.values
    count = mat.shape[0]
    if count < 2:
        return MARTINGALE
    slack = tol.abs + tol.rel * float(np.max(np.abs(mat)))
    is_sub = True
    is_super = True
    for op, idx in _op_groups(process.filtration.ops[: count - 1]):
        transformed = mat if op.is_identity else op.apply_rows(mat)
        # suffix envelopes of T_i-transformed values over j = i+1 .. N-1
        suff_min = np.minimum.accumulate(transformed[::-1], axis=0)[::-1]
        suff_max = np.maximum.accumulate(transformed[::-1], axis=0)[::-1]
        here = mat[idx]
        if is_sub and np.any(suff_min[idx + 1] < here - slack):
            is_sub = False
        if is_super and np.any(suff_max[idx + 1] > here + slack):
            is_super = False
        if not (is_sub or is_super):
            return NONE
    if is_sub and is_super:
        return MARTINGALE
    return SUBMARTINGALE if is_sub else SUPERMARTINGALE


def is_difference_sequence(process: ProcessSequence, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Martingale difference property: apply(T_{i-1}, Y_i) = 0 for i >= 2."""
    if not is_adapted(process, tol):
        return False
    mat = process.values
    if mat.shape[0] < 2:
        return True
    slack = tol.abs + tol.rel * float(np.max(np.abs(mat)))
    conditioners = process.filtration.ops[:-1]
    for op, idx in _op_groups(conditioners):
        rows = mat[idx + 1]
        means = rows if op.is_identity else op.apply_rows(rows)
        if np.max(np.abs(means)) > slack:
            return False
    return True


def require_difference_sequence(process: ProcessSequence, tol: Tolerance = DEFAULT_TOL) -> None:
    if not is_difference_sequence(process, tol):
        raise NotDifferenceSequence(
            "sequence is not a martingale difference sequence for its filtration"
        )


def partial_sums(diffs: ProcessSequence) -> ProcessSequence:
    """X_n = Y_1 + ... + Y_n on the same filtration."""
    return ProcessSequence(diffs.filtration, np.cumsum(diffs.values, axis=0))


def increments(process: ProcessSequence) -> np.ndarray:
    """X_i - X_{i-1} with X_0 = 0, as a raw matrix."""
    mat = process.values
    out = np.array(mat)
    out[1:] -= mat[:-1]
    return out


def square_function(process: ProcessSequence) -> ProcessSequence:
    """Running sum of squared increments of the process (start value included)."""
    return ProcessSequence(
        process.filtration, np.cumsum(increments(process) ** 2, axis=0)
    )


def positive_part_process(
    process: ProcessSequence, tol: Tolerance = DEFAULT_TOL
) -> ProcessSequence:
    """Positive part of a (sub)martingale, itself a submartingale."""
    label = classify(process, tol)
    if label not in (MARTINGALE, SUBMARTINGALE):
        raise NotSubmartingale(f"positive part requires a (sub)martingale, got {label}")
    return ProcessSequence(process.filtration, np.maximum(process.values, 0.0))


@dataclass(frozen=True)
class GeneratorConfig:
    """Deterministic recipe for a generated process."""

    seed: int
    dim: int
    steps: int
    amplitude: float = 1.0
    weight_mode: str = "uniform"  # "uniform" | "random"

    def __post_init__(self):
        if self.dim < 1 or self.steps < 1:
            raise ValueError("dim and steps must be >= 1")
        if self.amplitude <= 0.0:
            raise ValueError("amplitude must be positive")
        if self.weight_mode not in ("uniform", "random"):
            raise ValueError(f"unknown weight_mode {self.weight_mode!r}")

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "dim": self.dim,
            "steps": self.steps,
            "amplitude": self.amplitude,
            "weight_mode": self.weight_mode,
        }


def make_space(cfg: GeneratorConfig) -> SampleSpace:
    if cfg.weight_mode == "uniform":
        return SampleSpace.uniform(cfg.dim)
    stream = SplitMix64(derive_seed(cfg.seed, "space"))
    # Bounded away from zero so no atom degenerates.
    return SampleSpace(stream.uniforms(cfg.dim, 0.05, 1.0))


def default_filtration(space: SampleSpace, steps: int) -> Filtration:
    """Single block first, then split the largest block per stage;
    once singletons are reached the finest partition repeats."""
    parts = [Partition.single_block(space)]
    while len(parts) < steps:
        parts.append(parts[-1].split_largest())
    return Filtration([ConditionalExpectationOp(p) for p in parts[:steps]])


def _block_constant_draw(stream: SplitMix64, part: Partition, amplitude: float) -> np.ndarray:
    vals = stream.uniforms(part.num_blocks, -amplitude, amplitude)
    return vals[part.block_id]


def generate_mds(cfg: GeneratorConfig, filtration: Filtration | None = None) -> ProcessSequence:
    """Martingale difference sequence with increments bounded by 2*amplitude."""
    space = filtration.space if filtration is not None else make_space(cfg)
    if filtration is None:
        filtration = default_filtration(space, cfg.steps)
    elif len(filtration) != cfg.steps:
        raise ValueError("filtration length does not match steps")
    rows = np.empty((cfg.steps, space.n))
    check_slack = 1e-12 * max(1.0, cfg.amplitude)
    for i, op in enumerate(filtration.ops):
        stream = SplitMix64(derive_seed(cfg.seed, "mds-step", i))
        z = _block_constant_draw(stream, op.partition, cfg.amplitude)
        if i == 0:
            rows[i] = z
        else:
            prev = filtration.ops[i - 1]
            rows[i] = z - prev.apply_array(z)
            residual = np.max(np.abs(prev.apply_array(rows[i])))
            if residual > check_slack:
                raise AssertionError(
                    f"difference residual {residual} exceeds {check_slack} at step {i}"
                )
    return ProcessSequence(filtration, rows)


def generate_submartingale(
    cfg: GeneratorConfig,
    mode: str = "positive-part",
    filtration: Filtration | None = None,
) -> ProcessSequence:
    """A submartingale built from a generated martingale.

    mode "positive-part" takes (X_n)+ of the partial-sum martingale (always
    nonnegative); mode "drift" adds a deterministic nondecreasing constant
    drift to X_n, which may still take negative values.
    """
    sums = partial_sums(generate_mds(cfg, filtration))
    if mode == "positive-part":
        return ProcessSequence(sums.filtration, np.maximum(sums.values, 0.0))
    if mode == "drift":
        stream = SplitMix64(derive_seed(cfg.seed, "drift"))
        steps_drift = stream.uniforms(cfg.steps, 0.0, cfg.amplitude / 2.0)
        return ProcessSequence(
            sums.filtration, sums.values + np.cumsum(steps_drift)[:, None]
        )
    raise ValueError(f"unknown submartingale mode {mode!r}")
