"""Componentwise verification of the operator inequalities.

Each checker evaluates both sides of its inequality on concrete coordinates
and reports margins through a VerificationReport: min_margin is the worst
value of min_i (rhs_i - lhs_i) seen, and a failure is recorded whenever the
comparison misses by more than the tolerance slack.

Covered here:
  * Holder for sums:  sum_i T|x_i y_i| <= (sum_i T|x_i|^p)^(1/p) (sum_i T|y_i|^q)^(1/q)
    with the q = inf factor replaced by the join of the blockwise maxima;
  * Clarkson for 1 <= p <= 2, together with its stronger intermediate
    |x+y|^p + |x-y|^p <= 2 (x^2 + y^2)^(p/2);
  * the power-function Jensen bound |Tf|^p <= T|f|^p for p >= 1;
  * Burkholder ratios between T|X_n|^p and T(S_n^(p/2)), with the exact
    identity at p = 2 coming from orthogonality of increments;
  * the telescoped band-projection bound and the Hajek-Renyi-Chow maximal
    inequality, including Doob's special case a = 1.
"""

from __future__ import annotations

import math

import numpy as np

from .bands import BandProjection, band_projection
from .conditional import CompatibleTriple, ConditionalExpectationOp, lp_norm
from .errors import (
    BadExponent,
    BadWeights,
    ExponentMismatch,
    GNotInRange,
    NotSubmartingale,
    SpaceMismatch,
)
from .lattice import (
    DEFAULT_TOL,
    LatticeElement,
    Tolerance,
    leq_with_tolerance,
    multiply,
    power,
    sup_many,
)
from .processes import (
    MARTINGALE,
    SUBMARTINGALE,
    ProcessSequence,
    classify,
    partial_sums,
    require_difference_sequence,
    square_function,
)
from .reports import VerificationReport

_CONJUGATE_TOL = 1e-12


def _check_conjugate(p: float, q: float) -> None:
    for name, val in (("p", p), ("q", q)):
        if val != math.inf and val < 1.0:
            raise BadExponent(f"{name} must be >= 1, got {val}")
    inv = (0.0 if p == math.inf else 1.0 / p) + (0.0 if q == math.inf else 1.0 / q)
    if abs(inv - 1.0) > _CONJUGATE_TOL:
        raise ExponentMismatch(f"1/p + 1/q = {inv}, expected 1")


def _norm_factor(elements, r: float, op: ConditionalExpectationOp) -> LatticeElement:
    """(sum_i T|x_i|^r)^(1/r), or the join of blockwise maxima at r = inf."""
    if r == math.inf:
        return sup_many([lp_norm(op, x, math.inf) for x in elements])
    total = op.space.zero()
    for x in elements:
        total = total + op.apply(power(x.abs(), r))
    return power(total, 1.0 / r)


def holder_sums(
    x_list,
    y_list,
    p: float,
    q: float,
    op: ConditionalExpectationOp,
    tol: Tolerance = DEFAULT_TOL,
) -> VerificationReport:
    """Holder inequality for finite sums under an averaging operator."""
    x_list, y_list = list(x_list), list(y_list)
    if len(x_list) != len(y_list) or not x_list:
        raise ValueError("need equally many x and y elements, at least one pair")
    _check_conjugate(p, q)
    report = VerificationReport(suite="holder", trials=1, tol=tol)
    lhs = op.space.zero()
    for x, y in zip(x_list, y_list):
        lhs = lhs + op.apply(multiply(x, y).abs())
    rhs = multiply(_norm_factor(x_list, p, op), _norm_factor(y_list, q, op))
    check = leq_with_tolerance(lhs, rhs, tol)
    report.record(check.ok, check.margin, f"pairs={len(x_list)} p={p} atom={check.atom}")
    return report


def clarkson(
    x: LatticeElement, y: LatticeElement, p: float, tol: Tolerance = DEFAULT_TOL
) -> VerificationReport:
    """Clarkson inequality for 1 <= p <= 2, plus its sharper intermediate.

    |x+y|^p + |x-y|^p <= 2 (x^2 + y^2)^(p/2) <= 2 (|x|^p + |y|^p);
    both upper bounds are checked against the same left side.
    """
    p = float(p)
    if not 1.0 <= p <= 2.0:
        raise BadExponent(f"Clarkson range is 1 <= p <= 2, got {p}")
    report = VerificationReport(suite="clarkson", trials=1, tol=tol)
    lhs = power((x + y).abs(), p) + power((x - y).abs(), p)
    plain = 2.0 * (power(x.abs(), p) + power(y.abs(), p))
    sharper = 2.0 * power(multiply(x, x) + multiply(y, y), p / 2.0)
    main = leq_with_tolerance(lhs, plain, tol)
    report.record(main.ok, main.margin, f"p={p} plain bound atom={main.atom}")
    mid = leq_with_tolerance(lhs, sharper, tol)
    report.record(mid.ok, mid.margin, f"p={p} quadratic-mean bound atom={mid.atom}")
    return report


def jensen_power(
    f: LatticeElement,
    p: float,
    op: ConditionalExpectationOp,
    tol: Tolerance = DEFAULT_TOL,
) -> VerificationReport:
    """Convexity bound |Tf|^p <= T|f|^p for p >= 1."""
    p = float(p)
    if p < 1.0:
        raise BadExponent(f"Jensen power bound needs p >= 1, got {p}")
    report = VerificationReport(suite="jensen", trials=1, tol=tol)
    lhs = power(op.apply(f).abs(), p)
    rhs = op.apply(power(f.abs(), p))
    check = leq_with_tolerance(lhs, rhs, tol)
    report.record(check.ok, check.margin, f"p={p} atom={check.atom}")
    return report


def burkholder_ratio(
    diffs: ProcessSequence,
    base: ConditionalExpectationOp,
    p: float,
    tol: Tolerance = DEFAULT_TOL,
) -> VerificationReport:
    """Ratio extremes of T(S_n^(p/2)) against T|X_n|^p over steps and atoms.

    X is the running sum of the difference sequence and S its running sum of
    squared increments.  At p = 2 the two sides agree exactly (orthogonality
    of increments under a compatible base), which is asserted; for other p
    the componentwise ratios are collected so empirical brackets for the
    equivalence constants can be frozen into golden reports.
    """
    p = float(p)
    if p <= 1.0 or p == math.inf:
        raise BadExponent(f"ratio defined for 1 < p < inf, got {p}")
    require_difference_sequence(diffs, tol)
    CompatibleTriple(base, diffs.filtration)  # raises Incompatible
    report = VerificationReport(suite="burkholder", trials=1, tol=tol)
    sums = partial_sums(diffs)
    square = square_function(sums)
    a_side = base.apply_rows(np.abs(sums.values) ** p)
    b_side = base.apply_rows(square.values ** (p / 2.0))
    if p == 2.0:
        gap = np.abs(a_side - b_side)
        slack = tol.slack(a_side, b_side)
        worst = int(np.argmax(gap - slack))
        n_idx, atom = np.unravel_index(worst, gap.shape)
        report.record(
            bool(np.all(gap <= slack)),
            -float(gap.max()),
            f"p=2 identity n={n_idx + 1} atom={atom}",
        )
    positive = a_side > 0.0
    if np.any(positive):
        ratios = b_side[positive] / a_side[positive]
        report.details["ratio_min"] = float(ratios.min())
        report.details["ratio_max"] = float(ratios.max())
        finite = bool(np.all(np.isfinite(ratios)))
        report.record(
            finite,
            0.0 if finite else -math.inf,
            "ratio finiteness",
        )
    else:
        report.details["ratio_min"] = None
        report.details["ratio_max"] = None
    return report


def telescoping_bound(
    x_elements, g: LatticeElement, tol: Tolerance = DEFAULT_TOL
) -> VerificationReport:
    """Telescoped band-projection bound for an arbitrary finite sequence.

    With P_i the projection onto the band of (g - X_i)+ and Q_n their
    product, every n must satisfy
        (I - Q_n) g <= X_1 + sum_{i<n} Q_i (X_{i+1} - X_i) - Q_n X_n,
    and Q_n must agree exactly with the projection generated by
    (g - max_{j<=n} X_j)+.
    """
    xs = list(x_elements)
    if not xs:
        raise ValueError("need at least one element")
    for x in xs:
        if x.space != g.space:
            raise SpaceMismatch("sequence and threshold on different spaces")
    report = VerificationReport(suite="telescoping", trials=1, tol=tol)
    running_max = xs[0]
    product = band_projection((g - xs[0]).pos_part())
    rhs_sum = xs[0]  # X_1 + sum_{i<n} Q_i (X_{i+1} - X_i), built incrementally
    for n, x_n in enumerate(xs, start=1):
        if n > 1:
            running_max = running_max.sup(x_n)
            product = product.compose(band_projection((g - x_n).pos_part()))
        join_form = band_projection((g - running_max).pos_part())
        same = product == join_form
        report.record(
            same,
            0.0 if same else -1.0,
            f"n={n} product-support {list(product.support)} vs join-support {list(join_form.support)}",
        )
        check = leq_with_tolerance(product.co_apply(g), rhs_sum - product.apply(x_n), tol)
        report.record(check.ok, check.margin, f"n={n} bound atom={check.atom}")
        if n < len(xs):
            rhs_sum = rhs_sum + product.apply(xs[n] - x_n)
    return report


def _validate_rates(a_values, length: int) -> np.ndarray:
    a = np.asarray(a_values, dtype=np.float64)
    if a.shape != (length,):
        raise BadWeights(f"need {length} rate values, got shape {a.shape}")
    if np.any(a <= 0.0):
        raise BadWeights("rates must be strictly positive")
    if np.any(np.diff(a) < 0.0):
        raise BadWeights("rates must be nondecreasing")
    return a


def _validate_threshold(g: LatticeElement, op: ConditionalExpectationOp) -> None:
    if np.any(g.coords < 0.0):
        raise GNotInRange("threshold must be nonnegative")
    if not op.fixes_exactly(g):
        raise GNotInRange("threshold must be exactly block-constant for the base operator")


def hrc_maximal(
    process: ProcessSequence,
    a_values,
    g: LatticeElement,
    tol: Tolerance = DEFAULT_TOL,
) -> VerificationReport:
    """Hajek-Renyi-Chow maximal inequality for a submartingale.

    U_n projects onto the band of (g - max_{i<=n} Y_i/a_i)+; for every n,
        T_1 (I - U_n) g <= Y_1+/a_1 + sum_{i<n} T_1[(Y_{i+1}+ - Y_i+)/a_{i+1}].
    The threshold g must lie in the positive part of the range of T_1, with
    exact block-constancy (near misses are rejected, not rounded).
    """
    label = classify(process, tol)
    if label not in (MARTINGALE, SUBMARTINGALE):
        raise NotSubmartingale(f"maximal inequality needs a (sub)martingale, got {label}")
    count = len(process)
    a = _validate_rates(a_values, count)
    t1 = process.filtration[0]
    if g.space != process.space:
        raise SpaceMismatch("threshold on a different space")
    _validate_threshold(g, t1)
    report = VerificationReport(suite="hrc", trials=1, tol=tol)
    space = process.space
    scaled = process.values / a[:, None]
    pos = np.maximum(process.values, 0.0)
    rhs = LatticeElement(space, pos[0] / a[0])
    running_max = scaled[0]
    product = band_projection(LatticeElement(space, np.maximum(g.coords - scaled[0], 0.0)))
    for n in range(1, count + 1):
        if n > 1:
            running_max = np.maximum(running_max, scaled[n - 1])
            product = product.compose(
                band_projection(
                    LatticeElement(space, np.maximum(g.coords - scaled[n - 1], 0.0))
                )
            )
            rhs = rhs + t1.apply(
                LatticeElement(space, (pos[n - 1] - pos[n - 2]) / a[n - 1])
            )
        join_form = BandProjection(space, np.flatnonzero(g.coords > running_max))
        same = product == join_form
        report.record(
            same,
            0.0 if same else -1.0,
            f"n={n} product-support {list(product.support)} vs join-support {list(join_form.support)}",
        )
        check = leq_with_tolerance(t1.apply(product.co_apply(g)), rhs, tol)
        report.record(check.ok, check.margin, f"n={n} bound atom={check.atom}")
    return report


def doob_maximal(
    process: ProcessSequence, g: LatticeElement, tol: Tolerance = DEFAULT_TOL
) -> VerificationReport:
    """Doob-style maximal bound: unit rates, telescoped right side.

    With a = 1 the sum on the right collapses to T_1 Y_n+; both forms are
    computed and must agree within tolerance, and the bound is checked
    against the telescoped form as well.
    """
    report = hrc_maximal(process, np.ones(len(process)), g, tol)
    report.suite = "doob"
    t1 = process.filtration[0]
    pos = np.maximum(process.values, 0.0)
    running_max = np.maximum.accumulate(process.values, axis=0)
    rhs_sum = LatticeElement(process.space, pos[0])
    for n in range(1, len(process) + 1):
        if n > 1:
            rhs_sum = rhs_sum + t1.apply(
                LatticeElement(process.space, pos[n - 1] - pos[n - 2])
            )
        telescoped = t1.apply(LatticeElement(process.space, pos[n - 1]))
        gap = np.abs(rhs_sum.coords - telescoped.coords)
        slack = tol.slack(rhs_sum.coords, telescoped.coords)
        report.record(
            bool(np.all(gap <= slack)),
            -float(gap.max()),
            f"n={n} telescoped-right-side agreement",
        )
        u_n = BandProjection(
            process.space, np.flatnonzero(g.coords > running_max[n - 1])
        )
        check = leq_with_tolerance(t1.apply(u_n.co_apply(g)), telescoped, tol)
        report.record(check.ok, check.margin, f"n={n} telescoped bound atom={check.atom}")
    return report
