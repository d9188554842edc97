"""Exact feasibility decisions for a single frequency triple.

Given q on the simplex, decide whether some strategy of a model (classical
cube, pure-strategy sphere, mixed-strategy ball) is optimal for q,
optionally restricted to a preference class, and produce a witness
strategy. This is the scalar reference route: readable case analysis,
tolerant of simplex edges and vertices. The vectorized kernels implement
the same generic-interior decision and are cross-checked against this
module in the tests, but neither calls the other.

Method: optimality is two independent linear conditions, so with
t = p02 free the solutions form the line

    p01(t) = (1/3 - t q2) / q1,      p10(t) = (1/3 - q2 + t q2) / q0

(generic case, every q component positive). Classical feasibility
intersects the box constraints into an interval [lo, hi] of t. The pure
sphere adds the unit-norm condition g(t) = x1^2 + x2^2 + x3^2 = 1, a
quadratic with at most two roots; the ball relaxes it to g(t) <= 1,
which holds exactly on the sub-segment of [lo, hi] between the roots.
At both endpoints of [lo, hi] some box constraint is active, which pins
a symmetric coordinate at +-1 and forces g >= 1, so the ball is
feasible exactly when the sphere is. Under a class filter the models
genuinely differ: the ball segment can cross sign-pattern knots that
neither root reaches, so it is searched directly rather than through
the roots. A component q_i = 0 degenerates the line: the remaining
equations pin two probabilities and the third is free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import (
    BOUNDARY,
    INTRANSITIVE_I,
    INTRANSITIVE_II,
    TRANSITIVE,
    ConditionalProbs,
    classify,
)

__all__ = [
    "MODEL_CLASSICAL",
    "MODEL_QUANTUM_PURE",
    "MODEL_QUANTUM_MIXED",
    "MODELS",
    "FILTER_ANY",
    "FILTER_INTRANSITIVE_I",
    "FILTER_INTRANSITIVE_II",
    "FILTER_INTRANSITIVE_ANY",
    "FILTER_TRANSITIVE_ANY",
    "FILTERS",
    "FeasibilityResult",
    "feasible",
    "brute_force_feasible",
]

MODEL_CLASSICAL = "classical"
MODEL_QUANTUM_PURE = "quantum-pure"
MODEL_QUANTUM_MIXED = "quantum-mixed"
MODELS = (MODEL_CLASSICAL, MODEL_QUANTUM_PURE, MODEL_QUANTUM_MIXED)

FILTER_ANY = "any"
FILTER_INTRANSITIVE_I = "intransitive-i"
FILTER_INTRANSITIVE_II = "intransitive-ii"
FILTER_INTRANSITIVE_ANY = "intransitive-any"
FILTER_TRANSITIVE_ANY = "transitive-any"
FILTERS = (
    FILTER_ANY,
    FILTER_INTRANSITIVE_I,
    FILTER_INTRANSITIVE_II,
    FILTER_INTRANSITIVE_ANY,
    FILTER_TRANSITIVE_ANY,
)

_THIRD = 1.0 / 3.0
#: Slack for admissible-interval membership of quadratic roots.
_TOL = 1e-9


@dataclass(frozen=True)
class FeasibilityResult:
    """Decision plus witness. The witness is None exactly when infeasible.

    Witnesses from :func:`feasible` satisfy the model constraint (cube
    membership, sphere norm within 1e-9, ball norm below 1 + 1e-9), match
    the class filter, and are optimal for q at eps 1e-9. Witnesses from
    :func:`brute_force_feasible` are grid points and optimal only at that
    oracle's acceptance window, 2/resolution.
    """

    feasible: bool
    witness: ConditionalProbs | None = None

    def __bool__(self) -> bool:
        return self.feasible


def _matches(kind_needed: str, probs: ConditionalProbs) -> bool:
    kind = classify(probs).kind
    if kind_needed == FILTER_ANY:
        return True
    if kind_needed == FILTER_INTRANSITIVE_ANY:
        return kind in (INTRANSITIVE_I, INTRANSITIVE_II)
    if kind_needed == FILTER_INTRANSITIVE_I:
        return kind == INTRANSITIVE_I
    if kind_needed == FILTER_INTRANSITIVE_II:
        return kind == INTRANSITIVE_II
    return kind == TRANSITIVE


def _clip01(v: float) -> float:
    return min(max(v, 0.0), 1.0)


class _Line:
    """The optimal-strategy line of a strictly interior q, parameterized by t = p02."""

    def __init__(self, q0: float, q1: float, q2: float):
        self.q0, self.q1, self.q2 = q0, q1, q2
        self.lo = max(0.0, (_THIRD - q1) / q2, (q2 - _THIRD) / q2)
        self.hi = min(1.0, _THIRD / q2, (q0 + q2 - _THIRD) / q2)
        # Symmetric coordinates along the line: x_k(t) = alpha_k + beta_k t,
        # with x3 = 1 - 2t.
        self.alpha1 = 2.0 * (_THIRD / q1) - 1.0
        self.beta1 = -2.0 * q2 / q1
        self.alpha2 = 2.0 * ((_THIRD - q2) / q0) - 1.0
        self.beta2 = 2.0 * q2 / q0

    def probs(self, t: float) -> ConditionalProbs:
        return ConditionalProbs(
            _clip01(t),
            _clip01((_THIRD - t * self.q2) / self.q1),
            _clip01((_THIRD - self.q2 + t * self.q2) / self.q0),
        )

    def norm2(self, t: float) -> float:
        x1 = self.alpha1 + self.beta1 * t
        x2 = self.alpha2 + self.beta2 * t
        x3 = 1.0 - 2.0 * t
        return x1 * x1 + x2 * x2 + x3 * x3

    def knots(self) -> tuple[float, float, float]:
        """Zero crossings of x1, x2, x3 (sign patterns are constant between them)."""
        return (
            (_THIRD - 0.5 * self.q1) / self.q2,
            (0.5 * self.q0 + self.q2 - _THIRD) / self.q2,
            0.5,
        )

    def candidates(self, a: float, b: float) -> list[float]:
        """Midpoints of the knot gaps of [a, b]; they meet every sign pattern."""
        s1, s2, s3 = sorted(min(max(k, a), b) for k in self.knots())
        return [0.5 * (a + s1), 0.5 * (s1 + s2), 0.5 * (s2 + s3), 0.5 * (s3 + b)]

    def sphere_roots(self) -> tuple[float, float] | None:
        """Solutions of norm2(t) = 1 via the cancellation-free quadratic form."""
        big_a = self.beta1 * self.beta1 + self.beta2 * self.beta2 + 4.0
        big_b = 2.0 * (self.alpha1 * self.beta1 + self.alpha2 * self.beta2 - 2.0)
        big_c = self.alpha1 * self.alpha1 + self.alpha2 * self.alpha2
        disc = big_b * big_b - 4.0 * big_a * big_c
        if disc < 0.0:
            return None
        qq = -0.5 * (big_b + math.copysign(math.sqrt(disc), big_b))
        r1 = qq / big_a
        r2 = big_c / qq if qq != 0.0 else 0.0
        # Two Newton polish steps tighten the witness norm; they matter only
        # when the line coefficients are large (q close to a simplex edge).
        out = []
        for r in (r1, r2):
            for _ in range(2):
                slope = 2.0 * big_a * r + big_b
                if slope != 0.0:
                    r -= (self.norm2(r) - 1.0) / slope
            out.append(r)
        return (out[0], out[1])


def _generic(q0: float, q1: float, q2: float, model: str, class_filter: str) -> FeasibilityResult:
    line = _Line(q0, q1, q2)
    lo, hi = line.lo, line.hi
    if lo > hi:
        return FeasibilityResult(False)

    if model == MODEL_CLASSICAL:
        if class_filter == FILTER_ANY:
            return FeasibilityResult(True, line.probs(min(max(0.5, lo), hi)))
        for t in line.candidates(lo, hi):
            p = line.probs(t)
            if _matches(class_filter, p):
                return FeasibilityResult(True, p)
        return FeasibilityResult(False)

    roots = line.sphere_roots()
    if roots is None:
        return FeasibilityResult(False)
    inside = [r for r in roots if lo - _TOL <= r <= hi + _TOL]

    if model == MODEL_QUANTUM_PURE:
        for r in inside:
            p = line.probs(r)
            if _matches(class_filter, p):
                return FeasibilityResult(True, p)
        return FeasibilityResult(False)

    # Mixed ball: norm2(t) <= 1 exactly between the roots, so the feasible
    # set is the segment [mlo, mhi]. Its class search cannot ride the roots:
    # the segment may cross sign-pattern knots that neither root reaches.
    mlo = max(lo, min(roots))
    mhi = min(hi, max(roots))
    if mlo > mhi + _TOL:
        return FeasibilityResult(False)
    if mlo > mhi:
        # Tangency within slack: collapse to the touch point.
        mlo = mhi = 0.5 * (mlo + mhi)
    if class_filter == FILTER_ANY:
        t = min(max(0.5 * (mlo + mhi), lo), hi)
        return FeasibilityResult(True, line.probs(t))
    for t in line.candidates(mlo, mhi):
        p = line.probs(t)
        if _matches(class_filter, p):
            return FeasibilityResult(True, p)
    return FeasibilityResult(False)


def _one_free_axis(
    fixed: dict[str, float], free: str, model: str, class_filter: str
) -> FeasibilityResult:
    """Degenerate case: two probabilities pinned, one unconstrained.

    ``fixed`` maps two field names to pinned values (already checked to be
    inside [0, 1]); ``free`` names the remaining field. The witness search
    walks a fixed candidate list for the free coordinate; for the sphere
    the free symmetric coordinate is forced to +-sqrt(1 - c) with c the
    fixed squared norm.
    """
    lohi = {}
    for name, v in fixed.items():
        lohi[name] = _clip01(v)

    def build(free_prob: float) -> ConditionalProbs:
        vals = dict(lohi)
        vals[free] = _clip01(free_prob)
        return ConditionalProbs(vals["p02"], vals["p01"], vals["p10"])

    # Fixed part of the squared norm in symmetric coordinates.
    c = 0.0
    for name, v in lohi.items():
        x = (1.0 - 2.0 * v) if name == "p02" else (2.0 * v - 1.0)
        c += x * x
    if model == MODEL_CLASSICAL:
        free_candidates = [0.5, 0.0, 1.0, 0.25, 0.75]
    else:
        # Sphere and ball share candidates on an edge: the free-axis chord
        # varies only the free coordinate's magnitude, and the sphere
        # endpoints +-mag already realize both reachable sign patterns.
        if c > 1.0 + 1e-12:
            return FeasibilityResult(False)
        mag = math.sqrt(max(1.0 - c, 0.0))
        free_candidates = [0.5 * (1.0 + mag), 0.5 * (1.0 - mag)]
    for fp in free_candidates:
        p = build(fp)
        if _matches(class_filter, p):
            return FeasibilityResult(True, p)
    return FeasibilityResult(False)


def feasible(q, model: str, class_filter: str = FILTER_ANY) -> FeasibilityResult:
    """Decide whether the model contains an optimal strategy for q.

    q is any object with q0, q1, q2 attributes summing to 1 (simplex edges
    and vertices included). The filter restricts the witness's preference
    class; `any` accepts every class including boundaries. The decision is
    exact up to the 1e-9 interval slack; the returned witness re-verifies
    against `is_optimal` at eps 1e-9.
    """
    assert model in MODELS, f"unknown model {model!r}"
    assert class_filter in FILTERS, f"unknown filter {class_filter!r}"
    q0, q1, q2 = q.q0, q.q1, q.q2

    if (q0 == 0.0) + (q1 == 0.0) + (q2 == 0.0) >= 2:
        # A vertex offers one pair only; one option is never offered.
        return FeasibilityResult(False)
    if q2 == 0.0:
        # Pair {0,1} never offered: p02 is free, the other two are pinned.
        p01 = _THIRD / q1
        p10 = _THIRD / q0
        if p01 > 1.0 or p10 > 1.0:
            return FeasibilityResult(False)
        return _one_free_axis({"p01": p01, "p10": p10}, "p02", model, class_filter)
    if q1 == 0.0:
        # Pair {0,2} never offered: p01 free.
        p02 = _THIRD / q2
        p10 = (2.0 * _THIRD - q2) / q0
        if p02 > 1.0 or p10 > 1.0 or p10 < 0.0:
            return FeasibilityResult(False)
        return _one_free_axis({"p02": p02, "p10": p10}, "p01", model, class_filter)
    if q0 == 0.0:
        # Pair {1,2} never offered: p10 free.
        p02 = 1.0 - _THIRD / q2
        p01 = (2.0 * _THIRD - q2) / q1
        if p02 < 0.0 or p01 > 1.0 or p01 < 0.0:
            return FeasibilityResult(False)
        return _one_free_axis({"p02": p02, "p01": p01}, "p10", model, class_filter)
    return _generic(q0, q1, q2, model, class_filter)


def _brute_classical(q, window: float, resolution: int, class_filter: str):
    centers = (np.arange(resolution) + 0.5) / resolution
    a1 = centers * q.q1  # p01 contribution to c0
    b1 = centers * q.q0  # p10 contribution to c1
    for t in centers:
        m0 = np.abs(a1 + t * q.q2 - _THIRD) <= window
        m1 = np.abs(b1 + (1.0 - t) * q.q2 - _THIRD) <= window
        js = np.nonzero(m0)[0]
        ks = np.nonzero(m1)[0]
        if not js.size or not ks.size:
            continue
        c2 = (q.q0 + q.q1) - b1[ks][None, :] - a1[js][:, None]
        ok = np.abs(c2 - _THIRD) <= window
        for jj, kk in zip(*np.nonzero(ok)):
            p = ConditionalProbs(t, centers[js[jj]], centers[ks[kk]])
            if _matches(class_filter, p):
                return p
    return None


def _brute_sphere_points(resolution: int):
    centers = (np.arange(resolution) + 0.5) / resolution
    x3 = 2.0 * centers - 1.0
    phi = 2.0 * math.pi * centers
    s = np.sqrt(np.maximum(1.0 - x3 * x3, 0.0))
    x1 = s[:, None] * np.cos(phi)[None, :]
    x2 = s[:, None] * np.sin(phi)[None, :]
    return x1, x2, np.broadcast_to(x3[:, None], x1.shape)


def _brute_quantum(q, window: float, resolution: int, class_filter: str, mixed: bool):
    if mixed:
        centers = 2.0 * (np.arange(resolution) + 0.5) / resolution - 1.0
        x1g, x2g = np.meshgrid(centers, centers, indexing="ij")
        slabs = centers
    else:
        x1g, x2g, x3g = _brute_sphere_points(resolution)
        slabs = [None]
    for slab in slabs:
        if mixed:
            x1, x2 = x1g, x2g
            x3 = np.full(x1.shape, slab)
            keep = x1 * x1 + x2 * x2 + x3 * x3 <= 1.0
        else:
            x1, x2, x3 = x1g, x2g, x3g
            keep = np.ones(x1.shape, dtype=bool)
        p02 = 0.5 * (1.0 - x3)
        p01 = 0.5 * (1.0 + x1)
        p10 = 0.5 * (1.0 + x2)
        c0 = p01 * q.q1 + p02 * q.q2
        c1 = p10 * q.q0 + (1.0 - p02) * q.q2
        c2 = (1.0 - p10) * q.q0 + (1.0 - p01) * q.q1
        hit = (
            keep
            & (np.abs(c0 - _THIRD) <= window)
            & (np.abs(c1 - _THIRD) <= window)
            & (np.abs(c2 - _THIRD) <= window)
        )
        for i, j in zip(*np.nonzero(hit)):
            p = ConditionalProbs(
                _clip01(float(p02[i, j])), _clip01(float(p01[i, j])), _clip01(float(p10[i, j]))
            )
            if _matches(class_filter, p):
                return p
        if not mixed:
            break
    return None


def brute_force_feasible(
    q, model: str, class_filter: str = FILTER_ANY, resolution: int = 1000
) -> FeasibilityResult:
    """Grid-search oracle, algorithmically independent of :func:`feasible`.

    Scans an offset lattice over the model's whole strategy set (cube,
    sphere, or ball) and accepts any point whose consumption rates are all
    within 2/resolution of 1/3. Exists to validate `feasible`: a brute
    witness implies `feasible` is true, and when `feasible` is false the
    scan comes up empty for q away from region boundaries. Slow by design;
    keep resolution moderate outside targeted checks.
    """
    assert resolution >= 100, "resolution below the contract minimum"
    assert model in MODELS and class_filter in FILTERS
    window = 2.0 / resolution
    if model == MODEL_CLASSICAL:
        w = _brute_classical(q, window, resolution, class_filter)
    else:
        ball = model == MODEL_QUANTUM_MIXED
        w = _brute_quantum(q, window, resolution, class_filter, mixed=ball)
    return FeasibilityResult(w is not None, w)
