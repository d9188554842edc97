"""Coordinate systems and seeded uniform sampling.

The library lives on four spaces: the Riemann sphere of strategy labels
(complex plane plus a point at infinity), the unit sphere and unit ball in
symmetric +-1 coordinates, the unit cube of free conditional probabilities,
and the 2-simplex of pair-offer frequencies. This module holds the point
types, the stereographic bijection between plane and sphere, a barycentric
plot embedding, and counter-based uniform samplers for sphere, ball and cube.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "INFINITY",
    "SpherePoint",
    "BallPoint",
    "CubePoint",
    "Frequencies",
    "Rng",
    "stereographic_to_sphere",
    "sphere_to_stereographic",
    "sample_sphere",
    "sample_ball",
    "sample_cube",
    "simplex_to_cartesian",
]

_NORM_TOL = 1e-12
_SUM_TOL = 1e-12


class _PointAtInfinity:
    """Singleton label for the north pole of the strategy sphere."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"

    def __eq__(self, other) -> bool:
        return isinstance(other, _PointAtInfinity)

    def __hash__(self) -> int:
        return hash(_PointAtInfinity)


#: The point at infinity of the extended complex plane. Strategy labels are
#: either a finite complex number or this marker.
INFINITY = _PointAtInfinity()


@dataclass(frozen=True)
class SpherePoint:
    """Unit-norm point (x1, x2, x3), a pure strategy in symmetric coordinates."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        n2 = self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
        assert abs(n2 - 1.0) <= _NORM_TOL, f"not on the unit sphere: |x|^2 = {n2!r}"

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])


@dataclass(frozen=True)
class BallPoint:
    """Point of the closed unit ball, a mixed strategy in symmetric coordinates."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        n2 = self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
        assert n2 <= 1.0 + _NORM_TOL, f"outside the unit ball: |x|^2 = {n2!r}"

    def norm(self) -> float:
        return math.sqrt(self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])


@dataclass(frozen=True)
class CubePoint:
    """The three free conditional probabilities (p02, p01, p10), a point of [0,1]^3."""

    p02: float
    p01: float
    p10: float

    def __post_init__(self):
        for name in ("p02", "p01", "p10"):
            v = getattr(self, name)
            assert -_NORM_TOL <= v <= 1.0 + _NORM_TOL, f"{name} = {v!r} outside [0, 1]"


@dataclass(frozen=True)
class Frequencies:
    """Barycentric point (q0, q1, q2) of the simplex of pair-offer frequencies.

    q_j is the probability that the pair excluding option j is offered.
    """

    q0: float
    q1: float
    q2: float

    def __post_init__(self):
        assert min(self.q0, self.q1, self.q2) >= 0.0, f"negative component in {self}"
        s = self.q0 + self.q1 + self.q2
        assert abs(s - 1.0) <= _SUM_TOL, f"components sum to {s!r}, not 1"

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.q0, self.q1, self.q2)


class Rng:
    """Counter-based uniform source with O(1) random access to any sample.

    Built on the Philox bit generator keyed by ``(seed, stream)``. Every
    sample owns one fixed-width block of four float64 draws (one Philox
    counter block), so the draws for sample ``i`` are derivable without
    generating samples ``0..i-1``: position a fresh generator with
    ``at(i)``. Streams are independent; fork one per logical purpose.

    Two instances with equal seed, stream and position produce bit-identical
    draw blocks, regardless of how the consuming work is chunked.
    """

    DRAWS_PER_SAMPLE = 4

    def __init__(self, seed: int, stream: int = 0, start: int = 0):
        assert 0 <= seed < 2**64 and 0 <= stream < 2**64
        assert start >= 0
        self.seed = int(seed)
        self.stream = int(stream)
        self._cursor = int(start)

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, stream={self.stream}, start={self._cursor})"

    @property
    def position(self) -> int:
        """Index of the next sample to be drawn."""
        return self._cursor

    def at(self, index: int) -> "Rng":
        """A new generator on the same stream, positioned at sample ``index``."""
        return Rng(self.seed, self.stream, index)

    def fork(self, stream: int) -> "Rng":
        """A new generator on an independent stream, positioned at zero."""
        return Rng(self.seed, stream, 0)

    def draws(self, count: int) -> np.ndarray:
        """The next ``count`` sample blocks as a (count, 4) array in [0, 1)."""
        assert count >= 0
        bitgen = np.random.Philox(key=[self.seed, self.stream])
        if self._cursor:
            bitgen.advance(self._cursor)  # one advance step = one 4-draw block
        out = np.random.Generator(bitgen).random((count, self.DRAWS_PER_SAMPLE))
        self._cursor += count
        return out


def stereographic_to_sphere(z) -> SpherePoint:
    """Project a strategy label onto the unit sphere.

    Finite z maps to (2 Re z, 2 Im z, |z|^2 - 1) / (1 + |z|^2); the point at
    infinity maps to the north pole (0, 0, 1). For |z| > 1 the projection is
    evaluated through w = 1/z, which keeps the formula finite for labels of
    any magnitude.
    """
    if z is INFINITY:
        return SpherePoint(0.0, 0.0, 1.0)
    z = complex(z)
    if abs(z) <= 1.0:
        denom = 1.0 + (z.real * z.real + z.imag * z.imag)
        return SpherePoint(
            2.0 * z.real / denom,
            2.0 * z.imag / denom,
            (z.real * z.real + z.imag * z.imag - 1.0) / denom,
        )
    w = 1.0 / z
    ww = w.real * w.real + w.imag * w.imag
    denom = 1.0 + ww
    return SpherePoint(2.0 * w.real / denom, -2.0 * w.imag / denom, (1.0 - ww) / denom)


def sphere_to_stereographic(x: SpherePoint):
    """Inverse projection: z = (x1 + i x2) / (1 - x3), north pole -> INFINITY."""
    if x.x3 == 1.0:
        return INFINITY
    if x.x3 > 0.0:
        # Near the pole 1 - x3 loses precision; invert through the south view.
        w = complex(x.x1, -x.x2) / (1.0 + x.x3)
        if w == 0:
            return INFINITY
        return 1.0 / w
    return complex(x.x1, x.x2) / (1.0 - x.x3)


def _sphere_from_uniforms(u1, u2):
    """Map two unit uniforms to surface-uniform sphere coordinates."""
    x3 = 2.0 * u1 - 1.0
    phi = (2.0 * math.pi) * u2
    s = np.sqrt(np.maximum(1.0 - x3 * x3, 0.0))
    return s * np.cos(phi), s * np.sin(phi), x3


def sample_sphere(rng: Rng, count: int | None = None):
    """Draw from the uniform surface measure on the unit sphere.

    Returns a single :class:`SpherePoint` when ``count`` is None, otherwise
    a ``(count, 3)`` float array. Uses the area-preserving cylinder map:
    x3 uniform in [-1, 1], azimuth uniform in [0, 2 pi).
    """
    u = rng.draws(1 if count is None else count)
    x1, x2, x3 = _sphere_from_uniforms(u[:, 0], u[:, 1])
    if count is None:
        return SpherePoint(float(x1[0]), float(x2[0]), float(x3[0]))
    return np.column_stack([x1, x2, x3])


def sample_ball(rng: Rng, count: int | None = None):
    """Draw from the uniform volume measure on the closed unit ball.

    Surface direction from the first two draws, radius as the cube root of
    the third (the volume-uniform radial law).
    """
    u = rng.draws(1 if count is None else count)
    x1, x2, x3 = _sphere_from_uniforms(u[:, 0], u[:, 1])
    r = np.cbrt(u[:, 2])
    if count is None:
        return BallPoint(float(r[0] * x1[0]), float(r[0] * x2[0]), float(r[0] * x3[0]))
    return np.column_stack([r * x1, r * x2, r * x3])


def sample_cube(rng: Rng, count: int | None = None):
    """Draw the three free conditional probabilities independently uniform on [0, 1].

    The sampling law on the cube is a modeling choice (nothing pins it down);
    independent uniforms are the maximum-entropy default.
    """
    u = rng.draws(1 if count is None else count)
    if count is None:
        return CubePoint(float(u[0, 0]), float(u[0, 1]), float(u[0, 2]))
    return u[:, :3].copy()


_SQRT3_HALF = math.sqrt(3.0) / 2.0


def simplex_to_cartesian(q) -> tuple[float, float]:
    """Embed a frequency triple into the plane for plotting.

    The simplex vertices q0=1, q1=1, q2=1 land on (0,0), (1,0) and
    (1/2, sqrt(3)/2) respectively.
    """
    return (q.q1 + 0.5 * q.q2, _SQRT3_HALF * q.q2)
