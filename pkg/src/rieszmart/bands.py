"""Band projections as support masks.

In the coordinate model the band generated by g >= 0 is spanned by the atoms
where g is strictly positive, so the band projection just zeroes every other
coordinate.  apply_sup_formula_oracle recomputes the same projection from the
order-theoretic formula sup_n (f ^ (n g)) and reports where the iteration
stabilized; the two routes are compared exactly, never through a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeArgument, NegativeGenerator, SpaceMismatch
from .lattice import LatticeElement, SampleSpace, inf_many, sup_many
from .reports import VerificationReport


class BandProjection:
    """Projection onto the atoms listed in support."""

    __slots__ = ("space", "support", "mask")

    def __init__(self, space: SampleSpace, support) -> None:
        atoms = sorted(set(int(a) for a in support))
        if atoms and (atoms[0] < 0 or atoms[-1] >= space.n):
            raise ValueError("support atom out of range")
        self.space = space
        self.support = tuple(atoms)
        mask = np.zeros(space.n, dtype=bool)
        mask[list(atoms)] = True
        self.mask = mask
        self.mask.flags.writeable = False

    @classmethod
    def identity(cls, space: SampleSpace) -> "BandProjection":
        return cls(space, range(space.n))

    @classmethod
    def zero(cls, space: SampleSpace) -> "BandProjection":
        return cls(space, ())

    def apply(self, f: LatticeElement) -> LatticeElement:
        if f.space != self.space:
            raise SpaceMismatch("element on a different space than the projection")
        return LatticeElement(self.space, np.where(self.mask, f.coords, 0.0))

    def co_apply(self, f: LatticeElement) -> LatticeElement:
        """(I - P) f: the part of f outside the band."""
        if f.space != self.space:
            raise SpaceMismatch("element on a different space than the projection")
        return LatticeElement(self.space, np.where(self.mask, 0.0, f.coords))

    def compose(self, other: "BandProjection") -> "BandProjection":
        """Product of commuting band projections: intersection of supports."""
        if self.space != other.space:
            raise SpaceMismatch("projections on different spaces")
        return BandProjection(self.space, set(self.support) & set(other.support))

    def complement(self) -> "BandProjection":
        return BandProjection(
            self.space, set(range(self.space.n)) - set(self.support)
        )

    def leq(self, other: "BandProjection") -> bool:
        """Order on projections: containment of supports."""
        return set(self.support) <= set(other.support)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BandProjection)
            and self.space == other.space
            and self.support == other.support
        )

    def __hash__(self):
        return hash((self.space, self.support))

    def __repr__(self) -> str:
        return f"BandProjection(support={list(self.support)})"

    def to_json_dict(self) -> list:
        return list(self.support)


def band_projection(g: LatticeElement, threshold: float = 0.0) -> BandProjection:
    """Projection onto the band generated by g >= 0.

    The support is read off exactly as {i : g_i > threshold}; the default
    threshold 0 means any strictly positive coordinate counts, with no
    epsilon blurring.
    """
    if np.any(g.coords < 0.0):
        worst = int(np.argmin(g.coords))
        raise NegativeGenerator(f"generator has negative coordinate at atom {worst}")
    return BandProjection(g.space, np.flatnonzero(g.coords > threshold))


@dataclass(frozen=True)
class SupFormulaResult:
    value: LatticeElement
    stabilized_at: int
    bound: int


def apply_sup_formula_oracle(g: LatticeElement, f: LatticeElement) -> SupFormulaResult:
    """Evaluate the band projection of f via sup_n (f ^ (n g)).

    Both f and g must be nonnegative.  The sequence n -> f ^ (n g) is
    nondecreasing and constant from some n on; iteration stops at the first n
    with f ^ (n g) = f ^ ((n+1) g) exactly, which is guaranteed to happen by
    N* = ceil(max_i f_i / min over the support of g) + 1.
    """
    if np.any(g.coords < 0.0):
        raise NegativeGenerator("sup formula needs g >= 0")
    if np.any(f.coords < 0.0):
        raise NegativeArgument("sup formula needs f >= 0")
    if f.space != g.space:
        raise SpaceMismatch("f and g on different spaces")
    positive = g.coords[g.coords > 0.0]
    if positive.size == 0:
        bound = 1
    else:
        bound = int(np.ceil(f.coords.max() / positive.min())) + 1
    current = np.minimum(f.coords, g.coords)
    n = 1
    while True:
        nxt = np.minimum(f.coords, (n + 1) * g.coords)
        if np.array_equal(nxt, current):
            return SupFormulaResult(
                value=LatticeElement(f.space, current), stabilized_at=n, bound=bound
            )
        if n > bound:  # unreachable if the bound argument is right
            raise AssertionError("sup formula failed to stabilize within its bound")
        current = nxt
        n += 1


def check_sup_identity(generators) -> VerificationReport:
    """Join of projections vs projection of the join: exact support equality."""
    generators = list(generators)
    report = VerificationReport(suite="bands-join", trials=1)
    union: set[int] = set()
    for g in generators:
        union |= set(band_projection(g).support)
    joined = band_projection(sup_many(generators))
    ok = union == set(joined.support)
    witness = f"union={sorted(union)} vs join-support={list(joined.support)}"
    report.record(ok, 0.0 if ok else -1.0, witness)
    report.details["support_size"] = len(joined.support)
    return report


def check_inf_inequality(generators) -> VerificationReport:
    """Meet of projections dominates the projection of the meet.

    The intersection of the supports contains the support of the pointwise
    minimum; the containment can be strict, which is recorded.
    """
    generators = list(generators)
    report = VerificationReport(suite="bands-meet", trials=1)
    inter: set[int] | None = None
    for g in generators:
        s = set(band_projection(g).support)
        inter = s if inter is None else (inter & s)
    met = set(band_projection(inf_many(generators)).support)
    ok = met <= (inter or set())
    witness = f"meet-support={sorted(met)} not within intersection={sorted(inter or set())}"
    report.record(ok, 0.0 if ok else -1.0, witness)
    report.details["strict"] = bool(met != inter)
    return report


def check_exclusion_inequality(elements) -> VerificationReport:
    """Band of the joined positive parts excludes the common negative region.

    Where every element is strictly negative, no positive part survives, so
    the support of sup_n (g_n)+ must be disjoint from the support of
    inf_n (g_n)-; equivalently the first projection is below the complement
    of the second.
    """
    elements = list(elements)
    report = VerificationReport(suite="bands-exclusion", trials=1)
    pos_join = band_projection(sup_many([g.pos_part() for g in elements]))
    neg_meet = band_projection(inf_many([g.neg_part() for g in elements]))
    overlap = set(pos_join.support) & set(neg_meet.support)
    ok_sets = not overlap
    report.record(
        ok_sets,
        0.0 if ok_sets else -float(len(overlap)),
        f"overlapping atoms: {sorted(overlap)}",
    )
    # The same fact as an operator inequality against the complement.
    ok_op = pos_join.leq(neg_meet.complement())
    report.record(ok_op, 0.0 if ok_op else -1.0, "projection not below complement")
    return report


def compose_all(projections) -> BandProjection:
    """Product of a nonempty family of band projections."""
    projections = list(projections)
    if not projections:
        raise ValueError("composition of an empty family")
    out = projections[0]
    for p in projections[1:]:
        out = out.compose(p)
    return out
