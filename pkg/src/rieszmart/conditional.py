"""Partition-induced conditional expectation operators.

A partition of the atoms induces the weighted block-averaging operator: on
each block B the value is sum(mu_i f_i, i in B) / sum(mu_i, i in B).  These
operators are exactly the linear, positive, idempotent maps fixing the unit
that admit the averaging identity T(Tf * g) = Tf * Tg; their ranges are the
block-constant elements.  verify_axioms exercises all of that on random
draws, and Filtration/CompatibleTriple package refining families of them.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BadExponent, Incompatible, NotRefining, SpaceMismatch
from .lattice import (
    DEFAULT_TOL,
    LatticeElement,
    MarginCheck,
    SampleSpace,
    Tolerance,
    leq_with_tolerance,
    multiply,
)
from .reports import VerificationReport
from .rng import SplitMix64, derive_seed


class Partition:
    """Disjoint cover of the atoms by nonempty blocks, canonically ordered."""

    __slots__ = ("space", "blocks", "block_id", "num_blocks", "_order", "_starts")

    def __init__(self, space: SampleSpace, blocks):
        canonical = []
        for block in blocks:
            atoms = sorted(int(a) for a in block)
            if not atoms:
                raise ValueError("empty block")
            canonical.append(tuple(atoms))
        canonical.sort(key=lambda b: b[0])
        flat = [a for block in canonical for a in block]
        if sorted(flat) != list(range(space.n)):
            raise ValueError("blocks must partition the atoms exactly once")
        self.space = space
        self.blocks = tuple(canonical)
        self.num_blocks = len(canonical)
        bid = np.empty(space.n, dtype=np.intp)
        for k, block in enumerate(canonical):
            bid[list(block)] = k
        self.block_id = bid
        self.block_id.flags.writeable = False
        # Atom indices grouped by block, for reduceat-style block maxima.
        self._order = np.array(flat, dtype=np.intp)
        self._starts = np.cumsum([0] + [len(b) for b in canonical[:-1]])

    @classmethod
    def single_block(cls, space: SampleSpace) -> "Partition":
        return cls(space, [range(space.n)])

    @classmethod
    def singletons(cls, space: SampleSpace) -> "Partition":
        return cls(space, [[i] for i in range(space.n)])

    @property
    def is_singletons(self) -> bool:
        return self.num_blocks == self.space.n

    def refines(self, coarser: "Partition") -> bool:
        """True when every block of self sits inside one block of coarser."""
        if self.space != coarser.space:
            raise SpaceMismatch("partitions on different spaces")
        firsts = np.array([b[0] for b in self.blocks], dtype=np.intp)
        rep = firsts[self.block_id]
        return bool(np.all(coarser.block_id == coarser.block_id[rep]))

    def split_largest(self) -> "Partition":
        """Split the largest block in half (ties: block with the lowest atom)."""
        sizes = [len(b) for b in self.blocks]
        largest = max(sizes)
        if largest == 1:
            return self
        idx = sizes.index(largest)  # blocks are ordered by first atom
        target = self.blocks[idx]
        cut = (len(target) + 1) // 2
        new_blocks = list(self.blocks[:idx]) + [target[:cut], target[cut:]]
        new_blocks += list(self.blocks[idx + 1 :])
        return Partition(self.space, new_blocks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Partition)
            and self.space == other.space
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.space, self.blocks))

    def __repr__(self) -> str:
        return f"Partition({[list(b) for b in self.blocks]})"

    def to_json_dict(self) -> list:
        return [list(b) for b in self.blocks]


class ConditionalExpectationOp:
    """Weighted block averaging along a partition."""

    __slots__ = ("space", "partition", "block_weight", "_matrix")

    def __init__(self, partition: Partition):
        self.space = partition.space
        self.partition = partition
        self.block_weight = np.bincount(
            partition.block_id,
            weights=self.space.weights,
            minlength=partition.num_blocks,
        )
        self._matrix = None

    def apply(self, f: LatticeElement) -> LatticeElement:
        if f.space != self.space:
            raise SpaceMismatch("element on a different space than the operator")
        sums = np.bincount(
            self.partition.block_id,
            weights=self.space.weights * f.coords,
            minlength=self.partition.num_blocks,
        )
        vals = sums / self.block_weight
        return LatticeElement(self.space, vals[self.partition.block_id])

    def apply_array(self, values: np.ndarray) -> np.ndarray:
        """Raw-array version of apply, for hot loops."""
        sums = np.bincount(
            self.partition.block_id,
            weights=self.space.weights * values,
            minlength=self.partition.num_blocks,
        )
        return (sums / self.block_weight)[self.partition.block_id]

    def apply_rows(self, rows: np.ndarray) -> np.ndarray:
        """Apply to each row of a (k, n) array at once."""
        return rows @ self.matrix().T

    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            n = self.space.n
            bid = self.partition.block_id
            m = np.zeros((n, n))
            contrib = self.space.weights / self.block_weight[bid]
            same = bid[:, None] == bid[None, :]
            m[same] = np.broadcast_to(contrib[None, :], (n, n))[same]
            self._matrix = m
        return self._matrix

    @property
    def is_identity(self) -> bool:
        return self.partition.is_singletons

    def fixes(self, f: LatticeElement, tol: Tolerance = DEFAULT_TOL) -> bool:
        """Is f in the range, i.e. block-constant for this partition?"""
        return _eq_check(self.apply(f), f, tol).ok

    def fixes_exactly(self, f: LatticeElement) -> bool:
        """Exact block-constancy: every block carries a single float value."""
        bid = self.partition.block_id
        firsts = np.array([b[0] for b in self.partition.blocks], dtype=np.intp)
        return bool(np.all(f.coords == f.coords[firsts][bid]))

    def block_max(self, f: LatticeElement) -> LatticeElement:
        """Blockwise maximum, broadcast back to a block-constant element."""
        part = self.partition
        maxima = np.maximum.reduceat(f.coords[part._order], part._starts)
        return LatticeElement(self.space, maxima[part.block_id])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConditionalExpectationOp)
            and self.partition == other.partition
        )

    def __hash__(self):
        return hash(self.partition)

    def __repr__(self) -> str:
        return f"ConditionalExpectationOp(blocks={self.partition.num_blocks})"


def _eq_check(
    a: LatticeElement, b: LatticeElement, tol: Tolerance = DEFAULT_TOL
) -> MarginCheck:
    """Two-sided comparison; margin is -max|a-b| (0 when exactly equal)."""
    forward = leq_with_tolerance(a, b, tol)
    backward = leq_with_tolerance(b, a, tol)
    worse = forward if forward.margin <= backward.margin else backward
    return MarginCheck(ok=forward.ok and backward.ok, margin=worse.margin, atom=worse.atom)


def lp_norm(op: ConditionalExpectationOp, f: LatticeElement, p: float) -> LatticeElement:
    """Operator-valued p-norm: (T|f|^p)^(1/p); blockwise max of |f| at p = inf."""
    if p != math.inf:
        p = float(p)
        if p < 1.0:
            raise BadExponent(f"norm exponent must satisfy p >= 1, got {p}")
    absf = f.abs()
    if p == math.inf:
        return op.block_max(absf)
    if p == 1.0:
        return op.apply(absf)
    moment = op.apply(LatticeElement(f.space, np.power(absf.coords, p)))
    return LatticeElement(f.space, np.power(moment.coords, 1.0 / p))


class Filtration:
    """A refining sequence of averaging operators on one space.

    Consecutive stages must refine (equal partitions are allowed) and the
    composition identities T_i T_j = T_j T_i = T_i for i < j are verified on
    the canonical basis for each distinct consecutive pair; transitivity
    extends them to all pairs.
    """

    __slots__ = ("space", "ops")

    def __init__(self, ops):
        ops = list(ops)
        if not ops:
            raise ValueError("filtration needs at least one stage")
        space = ops[0].space
        for k, op in enumerate(ops):
            if op.space != space:
                raise SpaceMismatch(f"stage {k} lives on a different space")
        for k in range(len(ops) - 1):
            coarse, fine = ops[k].partition, ops[k + 1].partition
            if not fine.refines(coarse):
                raise NotRefining(f"stage {k + 1} does not refine stage {k}")
            if fine != coarse:
                _check_tower_on_basis(ops[k], ops[k + 1], k)
        self.space = space
        self.ops = ops

    def __len__(self) -> int:
        return len(self.ops)

    def __getitem__(self, i: int) -> ConditionalExpectationOp:
        return self.ops[i]

    def __iter__(self):
        return iter(self.ops)

    def to_json_dict(self) -> list:
        return [op.partition.to_json_dict() for op in self.ops]


def _check_tower_on_basis(
    coarse: ConditionalExpectationOp, fine: ConditionalExpectationOp, stage: int
) -> None:
    basis = np.eye(coarse.space.n)
    ce = coarse.apply_rows(basis)
    if not np.allclose(fine.apply_rows(ce), ce, rtol=1e-12, atol=1e-14):
        raise NotRefining(f"T_{stage + 1} T_{stage} != T_{stage} on the basis")
    cf = coarse.apply_rows(fine.apply_rows(basis))
    if not np.allclose(cf, ce, rtol=1e-12, atol=1e-14):
        raise NotRefining(f"T_{stage} T_{stage + 1} != T_{stage} on the basis")


def make_filtration(space: SampleSpace, partitions) -> Filtration:
    """Build a validated filtration from raw block lists or Partition objects."""
    ops = []
    for p in partitions:
        part = p if isinstance(p, Partition) else Partition(space, p)
        ops.append(ConditionalExpectationOp(part))
    return Filtration(ops)


class CompatibleTriple:
    """A base operator together with a filtration it is coarser than.

    Coarseness gives T T_n = T = T_n T for every stage; the first stage is
    checked on the basis and transitivity covers the rest.
    """

    __slots__ = ("base", "filtration")

    def __init__(self, base: ConditionalExpectationOp, filtration: Filtration):
        if base.space != filtration.space:
            raise Incompatible("base operator on a different space")
        first = filtration[0].partition
        if not first.refines(base.partition):
            raise Incompatible("first stage does not refine the base partition")
        if first != base.partition:
            try:
                _check_tower_on_basis(base, filtration[0], -1)
            except NotRefining as exc:
                raise Incompatible(str(exc)) from exc
        self.base = base
        self.filtration = filtration


def verify_axioms(
    op: ConditionalExpectationOp,
    trials: int = 100,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> VerificationReport:
    """Randomized check of the averaging-operator axioms.

    Per trial: linearity, positivity, idempotence, unit preservation, strict
    positivity (contrapositive on a draw bounded away from zero), and the
    averaging identity T(Tf * g) = Tf * Tg.
    """
    report = VerificationReport(suite="ce-axioms", trials=trials, seed=seed, tol=tol)
    space = op.space
    e = space.unit()
    zero = space.zero()
    for t in range(trials):
        stream = SplitMix64(derive_seed(seed, "ce-axioms", t))
        f = LatticeElement(space, stream.uniforms(space.n, -2.0, 2.0))
        g = LatticeElement(space, stream.uniforms(space.n, -2.0, 2.0))
        alpha = stream.uniform(-2.0, 2.0)
        beta = stream.uniform(-2.0, 2.0)

        lin = _eq_check(op.apply(alpha * f + beta * g), alpha * op.apply(f) + beta * op.apply(g), tol)
        report.record(lin.ok, lin.margin, f"trial {t}: linearity at atom {lin.atom}", t, seed)

        pos = leq_with_tolerance(zero, op.apply(f.abs()), tol)
        report.record(pos.ok, pos.margin, f"trial {t}: positivity at atom {pos.atom}", t, seed)

        idem = _eq_check(op.apply(op.apply(f)), op.apply(f), tol)
        report.record(idem.ok, idem.margin, f"trial {t}: idempotence at atom {idem.atom}", t, seed)

        unit = _eq_check(op.apply(e), e, tol)
        report.record(unit.ok, unit.margin, f"trial {t}: unit preservation at atom {unit.atom}", t, seed)

        # Strict positivity, contrapositively: pin one coordinate away from 0
        # and require T|f| to have a strictly positive coordinate.
        pinned = np.array(f.coords)
        k = stream.below(space.n)
        pinned[k] = stream.uniform(0.5, 1.5) * (1.0 if stream.next_float() < 0.5 else -1.0)
        tf = op.apply(LatticeElement(space, pinned).abs())
        peak = tf.max_abs()
        report.record(peak > 0.0, peak, f"trial {t}: strict positivity (max T|f| = {peak})", t, seed)

        avg = _eq_check(
            op.apply(multiply(op.apply(f), g)),
            multiply(op.apply(f), op.apply(g)),
            tol,
        )
        report.record(avg.ok, avg.margin, f"trial {t}: averaging identity at atom {avg.atom}", t, seed)
    return report
