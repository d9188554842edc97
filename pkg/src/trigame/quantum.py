"""Quantum strategies: measurement bases, the label family, probabilities.

A pure quantum strategy is a ray spanned by (1, z) in the computational
basis, with z ranging over the extended complex plane (z at infinity is the
ray of (0, 1)). Each of the three offered pairs is measured in its own
basis: pair {0,1} in the computational basis, pair {0,2} in its image under
HADAMARD, pair {1,2} in its image under PHASE_HADAMARD. The conditional
choice probabilities are the normalized squared amplitudes of the strategy
ray in the corresponding basis.

Under the fixed stereographic projection of :mod:`trigame.geometry`, those
probabilities are an affine function of the sphere coordinates, so the same
formula extends from pure strategies (unit sphere) to mixed ones (unit
ball). ``decompose_mixed`` splits a mixed strategy into the two antipodal
pure strategies on its chord through the center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import ConditionalProbs
from .geometry import INFINITY, BallPoint, SpherePoint

__all__ = [
    "HADAMARD",
    "PHASE_HADAMARD",
    "basis_matrix",
    "express_in_basis",
    "probs_from_z",
    "probs_from_sphere",
    "MixedDecomposition",
    "decompose_mixed",
]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

#: Self-inverse transform whose basis image measures the pair {0, 2}.
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) * _INV_SQRT2

#: HADAMARD followed by a quarter phase; its basis image measures the pair {1, 2}.
PHASE_HADAMARD = np.array([[1.0, 1.0], [1.0j, -1.0j]]) * _INV_SQRT2

_IDENTITY = np.eye(2, dtype=complex)


def basis_matrix(index: int) -> np.ndarray:
    """Unitary whose columns form the measurement basis for pair index.

    Pair index j is the pair that excludes option j: 2 -> computational
    basis, 1 -> HADAMARD image, 0 -> PHASE_HADAMARD image.
    """
    assert index in (0, 1, 2)
    return (PHASE_HADAMARD, HADAMARD, _IDENTITY)[index].copy()


def _amplitudes(z) -> tuple[complex, complex]:
    """Computational-basis amplitude pair for a strategy label.

    Projective representative chosen for numerical range: (1, z) for
    |z| <= 1, (1/z, 1) for |z| > 1, (0, 1) at infinity. Never divides by a
    vanishing quantity.
    """
    if z is INFINITY:
        return (0j, 1 + 0j)
    z = complex(z)
    if abs(z) <= 1.0:
        return (1 + 0j, z)
    return (1.0 / z, 1 + 0j)


def express_in_basis(z, basis_index: int) -> tuple[complex, complex]:
    """Amplitude pair of the strategy ray in the basis of the given pair.

    The result is a projective representative (global scale is arbitrary).
    In basis 1 the ratio of the amplitudes is (1 - z)/(1 + z); in basis 0 it
    is (1 + iz)/(1 - iz); both arise here as pairs, so the poles z = -1 and
    z = i are regular.
    """
    assert basis_index in (0, 1, 2)
    a0, a1 = _amplitudes(z)
    if basis_index == 2:
        return (a0, a1)
    if basis_index == 1:
        # Columns of HADAMARD are self-inverse, so analysis = application.
        return ((a0 + a1) * _INV_SQRT2, (a0 - a1) * _INV_SQRT2)
    # Analysis coefficients in the PHASE_HADAMARD image basis (conjugate
    # transpose applied to the amplitude pair).
    return ((a0 - 1j * a1) * _INV_SQRT2, (a0 + 1j * a1) * _INV_SQRT2)


def _first_share(pair: tuple[complex, complex]) -> float:
    c0, c1 = pair
    m0 = c0.real * c0.real + c0.imag * c0.imag
    m1 = c1.real * c1.real + c1.imag * c1.imag
    return m0 / (m0 + m1)


def probs_from_z(z) -> ConditionalProbs:
    """Conditional choice probabilities of the pure strategy labeled z.

    In each pair's basis, the first basis state corresponds to the
    lower-numbered option of the pair; its normalized squared amplitude is
    the probability of choosing it.
    """
    return ConditionalProbs(
        _first_share(express_in_basis(z, 2)),
        _first_share(express_in_basis(z, 1)),
        _first_share(express_in_basis(z, 0)),
    )


def probs_from_sphere(x) -> ConditionalProbs:
    """Conditional choice probabilities from symmetric coordinates.

    Affine in (x1, x2, x3): p02 = (1 - x3)/2, p01 = (1 + x1)/2,
    p10 = (1 + x2)/2. Valid on the whole unit ball, so mixed strategies use
    the same formula. Agrees with probs_from_z composed with the
    stereographic projection.
    """
    return ConditionalProbs(
        min(max(0.5 * (1.0 - x.x3), 0.0), 1.0),
        min(max(0.5 * (1.0 + x.x1), 0.0), 1.0),
        min(max(0.5 * (1.0 + x.x2), 0.0), 1.0),
    )


@dataclass(frozen=True)
class MixedDecomposition:
    """A mixed strategy as a convex mix of two antipodal pure strategies.

    The mixed point p equals w_plus * v - w_minus * v with w_plus + w_minus
    = 1 and w_plus - w_minus = |p|. At the ball center every axis works;
    unique is False there and v defaults to (0, 0, 1).
    """

    v: SpherePoint
    w_plus: float
    w_minus: float
    unique: bool = True

    def __post_init__(self):
        assert self.w_plus >= 0.0 and self.w_minus >= 0.0
        assert abs(self.w_plus + self.w_minus - 1.0) <= 1e-12


def decompose_mixed(p: BallPoint) -> MixedDecomposition:
    """Split a mixed strategy along its chord through the ball center."""
    r = p.norm()
    if r == 0.0:
        return MixedDecomposition(SpherePoint(0.0, 0.0, 1.0), 0.5, 0.5, unique=False)
    v = SpherePoint(p.x1 / r, p.x2 / r, p.x3 / r)
    return MixedDecomposition(v, 0.5 * (1.0 + r), 0.5 * (1.0 - r))
