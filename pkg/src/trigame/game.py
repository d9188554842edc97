"""Core game mathematics.

Three options are offered in pairs: the pair that excludes option j appears
with frequency q_j, and the player's conduct is summarized by the three free
conditional probabilities

    p02 = P(pick 0 | pair {0,1}),
    p01 = P(pick 0 | pair {0,2}),
    p10 = P(pick 1 | pair {1,2}),

the other three being complements. This module computes the long-run
consumption rates, tests optimality (all rates equal 1/3), inverts the
relation to find the frequency triple a given strategy is optimal for, and
classifies the pairwise-preference structure of a strategy (a strict linear
order, one of the two cyclic orders, or a tie boundary).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Frequencies

__all__ = [
    "ConditionalProbs",
    "Consumption",
    "Classification",
    "MapResult",
    "consumption",
    "is_optimal",
    "optimal_frequencies",
    "classify",
    "classification_from_code",
    "TRANSITIVE",
    "INTRANSITIVE_I",
    "INTRANSITIVE_II",
    "BOUNDARY",
    "STATUS_OK",
    "STATUS_SINGULAR",
    "STATUS_OUT_OF_SIMPLEX",
    "SINGULAR_TOL",
    "NEGATIVE_TOL",
]

#: Determinant magnitude below which the frequency map is treated as singular.
SINGULAR_TOL = 1e-12
#: Solution components above this (tiny negative) floor are clamped to zero.
NEGATIVE_TOL = -1e-12

TRANSITIVE = "transitive"
INTRANSITIVE_I = "intransitive-I"
INTRANSITIVE_II = "intransitive-II"
BOUNDARY = "boundary"

STATUS_OK = "ok"
STATUS_SINGULAR = "singular"
STATUS_OUT_OF_SIMPLEX = "out-of-simplex"


@dataclass(frozen=True)
class ConditionalProbs:
    """The three free conditional probabilities of a strategy.

    Attributes p12, p21, p20 give the complementary probabilities of the
    same pairs, and bloch() expresses the strategy in the symmetric +-1
    coordinates used by the sphere picture (x1 = 2 p01 - 1, x2 = 2 p10 - 1,
    x3 = 1 - 2 p02).
    """

    p02: float
    p01: float
    p10: float

    def __post_init__(self):
        for name in ("p02", "p01", "p10"):
            v = getattr(self, name)
            assert -1e-12 <= v <= 1.0 + 1e-12, f"{name} = {v!r} outside [0, 1]"

    @property
    def p12(self) -> float:
        return 1.0 - self.p02

    @property
    def p21(self) -> float:
        return 1.0 - self.p01

    @property
    def p20(self) -> float:
        return 1.0 - self.p10

    def bloch(self) -> tuple[float, float, float]:
        return (2.0 * self.p01 - 1.0, 2.0 * self.p10 - 1.0, 1.0 - 2.0 * self.p02)


@dataclass(frozen=True)
class Consumption:
    """Long-run consumption rates (c0, c1, c2); they always sum to 1."""

    c0: float
    c1: float
    c2: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c0, self.c1, self.c2)


def consumption(probs, q) -> Consumption:
    """Long-run rate of consuming each option.

    Option k is eaten when either pair containing it is offered and the
    conditional choice falls on k:

        c0 = p01 q1 + p02 q2
        c1 = p10 q0 + (1 - p02) q2
        c2 = (1 - p10) q0 + (1 - p01) q1
    """
    return Consumption(
        probs.p01 * q.q1 + probs.p02 * q.q2,
        probs.p10 * q.q0 + (1.0 - probs.p02) * q.q2,
        (1.0 - probs.p10) * q.q0 + (1.0 - probs.p01) * q.q1,
    )


def is_optimal(probs, q, eps: float = 1e-9) -> bool:
    """True when every consumption rate is within eps of 1/3."""
    assert eps > 0.0
    c = consumption(probs, q)
    third = 1.0 / 3.0
    return max(abs(c.c0 - third), abs(c.c1 - third), abs(c.c2 - third)) <= eps


@dataclass(frozen=True)
class MapResult:
    """Outcome of inverting the consumption relation for a strategy.

    status is one of STATUS_OK (frequencies holds a valid simplex point),
    STATUS_SINGULAR (the linear system is singular, no isolated solution),
    or STATUS_OUT_OF_SIMPLEX (an isolated solution exists but has a negative
    component; raw keeps the unclamped triple).
    """

    status: str
    frequencies: Frequencies | None = None
    raw: tuple[float, float, float] | None = None

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


def optimal_frequencies(probs) -> MapResult:
    """Frequency triple for which the given strategy is optimal.

    Solves the 3x3 linear system expressing "all consumption rates equal
    1/3" for (q2, q1, q0). The system matrix has unit column sums, so a
    nonsingular solution automatically sums to 1; after clamping tiny
    negative components (>= -1e-12) to zero the triple is renormalized by
    its sum to pin the simplex invariant exactly.
    """
    a, b, c = probs.p02, probs.p01, probs.p10
    m = np.array(
        [
            [a, b, 0.0],
            [1.0 - a, 0.0, c],
            [0.0, 1.0 - b, 1.0 - c],
        ]
    )
    if abs(np.linalg.det(m)) < SINGULAR_TOL:
        return MapResult(STATUS_SINGULAR)
    third = 1.0 / 3.0
    q2, q1, q0 = np.linalg.solve(m, np.array([third, third, third]))
    raw = (float(q0), float(q1), float(q2))
    if min(raw) < NEGATIVE_TOL:
        return MapResult(STATUS_OUT_OF_SIMPLEX, raw=raw)
    q0, q1, q2 = (max(v, 0.0) for v in raw)
    s = q0 + q1 + q2
    return MapResult(STATUS_OK, frequencies=Frequencies(q0 / s, q1 / s, q2 / s), raw=raw)


@dataclass(frozen=True)
class Classification:
    """Pairwise-preference structure of a strategy.

    kind is one of TRANSITIVE, INTRANSITIVE_I, INTRANSITIVE_II, BOUNDARY.
    For a transitive strategy, order lists the three options from most to
    least preferred; otherwise order is None.
    """

    kind: str
    order: tuple[int, int, int] | None = None

    def label(self) -> str:
        """Serialization token, e.g. ``transitive:0>1>2`` or ``intransitive-I``."""
        if self.kind == TRANSITIVE:
            return "transitive:%d>%d>%d" % self.order
        return self.kind


# Strict orders in lexicographic sequence; codes 0..5. The two cycles and the
# tie boundary take codes 6, 7, 8. The compiled kernels emit these same codes.
_ORDERS = (
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
)
CODE_INTRANSITIVE_I = 6
CODE_INTRANSITIVE_II = 7
CODE_BOUNDARY = 8


def classify(probs) -> Classification:
    """Classify the pairwise preferences encoded by a strategy.

    Each pair is decided by comparing its conditional probability to 1/2
    (strictly; an exact tie in any pair classifies as BOUNDARY). The first
    cycle is 0 beats 2, 2 beats 1, 1 beats 0; the second is its reversal.
    """
    x1, x2, x3 = (float(v) for v in probs.bloch())
    if x1 == 0.0 or x2 == 0.0 or x3 == 0.0:
        return Classification(BOUNDARY)
    if x1 > 0.0 and x2 < 0.0 and x3 > 0.0:
        return Classification(INTRANSITIVE_I)
    if x1 < 0.0 and x2 > 0.0 and x3 < 0.0:
        return Classification(INTRANSITIVE_II)
    # 0 vs 1 decided by p02 (x3 < 0 means 0 beats 1), 0 vs 2 by p01 (x1 > 0
    # means 0 beats 2), 1 vs 2 by p10 (x2 > 0 means 1 beats 2).
    wins = (
        int(x3 < 0.0) + int(x1 > 0.0),
        int(x3 > 0.0) + int(x2 > 0.0),
        int(x1 < 0.0) + int(x2 < 0.0),
    )
    ranked = sorted((0, 1, 2), key=lambda k: -wins[k])
    return Classification(TRANSITIVE, order=tuple(ranked))


def classification_from_code(code: int) -> Classification:
    """Decode the integer class code used by the vectorized kernels."""
    if 0 <= code <= 5:
        return Classification(TRANSITIVE, order=_ORDERS[code])
    if code == CODE_INTRANSITIVE_I:
        return Classification(INTRANSITIVE_I)
    if code == CODE_INTRANSITIVE_II:
        return Classification(INTRANSITIVE_II)
    assert code == CODE_BOUNDARY, f"unknown class code {code}"
    return Classification(BOUNDARY)
