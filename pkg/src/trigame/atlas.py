"""Region-area measurement over the frequency simplex.

Two independent methods estimate the same areas. The oracle method asks
the exact feasibility kernel at the centroid of every grid cell; it is the
quoted authority for the headline fractions. The forward method mirrors
the Monte Carlo procedure the figures come from: sample strategies from
the model's measure, push them through the frequency map, and rasterize
the surviving points. ``cross_validate`` compares the two cell by cell.

The grid splits the simplex into 2 n^2 congruent cells: n^2 lattice
triangles, each halved by the altitude through its apex. Equal cell areas
make every fraction a plain cell count over 2 n^2.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .feasibility import (
    MODEL_CLASSICAL,
    MODEL_QUANTUM_MIXED,
    MODEL_QUANTUM_PURE,
    MODELS,
)
from .geometry import Rng

__all__ = [
    "SimplexGrid",
    "AreaReport",
    "DiscrepancyReport",
    "measure_oracle",
    "measure_forward",
    "cross_validate",
]

_CHUNK_CELLS = 1 << 17
_CHUNK_SAMPLES = 1 << 16

# Per-cell coverage flags used by the forward method.
_COVER_ANY = np.uint8(1)
_COVER_I = np.uint8(2)
_COVER_II = np.uint8(4)
_COVER_TRANSITIVE = np.uint8(8)


@dataclass(frozen=True)
class SimplexGrid:
    """Equal-area triangulation of the simplex at lattice resolution n.

    Row j (counted along the q2 axis) holds 4(n - j) - 2 cells: the lattice
    triangles alternate upward and downward, and each is split into a left
    and a right half by the vertical altitude through its apex. Cells are
    indexed row-major with offset 2 j (2n - j), then by horizontal position.
    """

    n: int

    def __post_init__(self):
        assert self.n >= 1

    @property
    def n_cells(self) -> int:
        return 2 * self.n * self.n

    def centroids(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Cell centroid coordinates (q0, q1, q2), each of length n_cells.

        Centroids of half-triangles sit strictly inside the simplex, at
        lattice fractions 1/6, 1/2 or 5/6 horizontally and 1/3 or 2/3
        vertically, so every centroid has all components >= 1/(6n) > 0.
        """
        n = self.n
        a = np.empty(self.n_cells)
        b = np.empty(self.n_cells)
        for j in range(n):
            off = 2 * j * (2 * n - j)
            k = n - j
            up = np.arange(k)
            a[off + 4 * up] = up + 1.0 / 6.0
            a[off + 4 * up + 1] = up + 0.5
            b[off + 4 * up] = j + 1.0 / 3.0
            b[off + 4 * up + 1] = j + 1.0 / 3.0
            if k > 1:
                down = np.arange(k - 1)
                a[off + 4 * down + 2] = down + 0.5
                a[off + 4 * down + 3] = down + 5.0 / 6.0
                b[off + 4 * down + 2] = j + 2.0 / 3.0
                b[off + 4 * down + 3] = j + 2.0 / 3.0
        q1 = a / n
        q2 = b / n
        return 1.0 - q1 - q2, q1, q2

    def cell_index(self, q1, q2) -> np.ndarray:
        """Cell indices containing the given simplex points (vectorized).

        Points on cell boundaries go to a deterministic side; points at the
        very simplex boundary are clamped into the adjacent cell.
        """
        n = self.n
        af = np.asarray(q1, dtype=np.float64) * n
        bf = np.asarray(q2, dtype=np.float64) * n
        j = np.clip(np.floor(bf).astype(np.int64), 0, n - 1)
        i = np.clip(np.floor(af).astype(np.int64), 0, n - 1 - j)
        fa = af - i
        fb = bf - j
        xrel = fa + 0.5 * fb
        down = (fa + fb > 1.0) & (i <= n - 2 - j)
        p = np.where(down, 2 * i + 1, 2 * i)
        right = np.where(down, xrel >= 1.0, xrel >= 0.5)
        return 2 * j * (2 * n - j) + 2 * p + right


@dataclass(frozen=True)
class AreaReport:
    """Simplex-area fractions of the optimal-strategy regions of one model.

    All fractions are relative to the whole simplex (area 1). overlap is
    the region where both cyclic orders are achievable; lens_estimate is
    the per-side classical-minus-quantum deficit, (classical any minus
    quantum any) / 3.
    """

    model: str
    method: str
    grid_n: int
    n_samples: int
    seed: int
    fraction_all: float
    fraction_intransitive_any: float
    fraction_intransitive_i: float
    fraction_intransitive_ii: float
    fraction_transitive: float
    fraction_overlap: float
    lens_estimate: float

    def __post_init__(self):
        eps = 1e-12
        fr = (
            self.fraction_all,
            self.fraction_intransitive_any,
            self.fraction_intransitive_i,
            self.fraction_intransitive_ii,
            self.fraction_transitive,
            self.fraction_overlap,
        )
        assert all(0.0 <= f <= 1.0 for f in fr)
        assert self.fraction_intransitive_any <= self.fraction_all + eps
        assert self.fraction_transitive <= self.fraction_all + eps
        assert self.fraction_overlap <= self.fraction_intransitive_i + eps
        assert self.fraction_overlap <= self.fraction_intransitive_ii + eps

    def to_dict(self) -> dict:
        """Serialization order matches the report file format."""
        return {
            "model": self.model,
            "method": self.method,
            "grid_n": self.grid_n,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "fraction_all": self.fraction_all,
            "fraction_intransitive_any": self.fraction_intransitive_any,
            "fraction_intransitive_i": self.fraction_intransitive_i,
            "fraction_intransitive_ii": self.fraction_intransitive_ii,
            "fraction_transitive": self.fraction_transitive,
            "fraction_overlap": self.fraction_overlap,
            "lens_estimate": self.lens_estimate,
        }


def _map_chunks(worker, chunks, workers: int):
    """Ordered map over chunks; thread count never changes the result."""
    if workers <= 1:
        return [worker(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, chunks))


def _sweep_bits(grid: SimplexGrid, workers: int) -> np.ndarray:
    q0, q1, q2 = grid.centroids()
    spans = [
        (s, min(s + _CHUNK_CELLS, grid.n_cells)) for s in range(0, grid.n_cells, _CHUNK_CELLS)
    ]
    parts = _map_chunks(lambda se: _kernels.oracle_sweep(*(v[se[0] : se[1]] for v in (q0, q1, q2))), spans, workers)
    return np.concatenate(parts)


def _oracle_fractions(bits: np.ndarray, model: str) -> dict:
    def frac(mask: int) -> float:
        return float(np.count_nonzero(bits & mask)) / bits.size

    b_any = _kernels.feasibility_bit(model, "any")
    b_i = _kernels.feasibility_bit(model, "intransitive-i")
    b_ii = _kernels.feasibility_bit(model, "intransitive-ii")
    b_tr = _kernels.feasibility_bit(model, "transitive-any")
    overlap = float(np.count_nonzero((bits & b_i != 0) & (bits & b_ii != 0))) / bits.size
    return {
        "fraction_all": frac(b_any),
        "fraction_intransitive_any": frac(b_i | b_ii),
        "fraction_intransitive_i": frac(b_i),
        "fraction_intransitive_ii": frac(b_ii),
        "fraction_transitive": frac(b_tr),
        "fraction_overlap": overlap,
    }


def measure_oracle(model: str, grid: SimplexGrid, workers: int = 1) -> AreaReport:
    """Exact-membership area report: one feasibility decision per cell centroid.

    A single sweep decides all models at once, so the lens estimate always
    compares classical against the pure-sphere model, whichever model the
    report is for.
    """
    assert model in MODELS
    bits = _sweep_bits(grid, workers)
    own = _oracle_fractions(bits, model)
    classical_any = float(
        np.count_nonzero(bits & _kernels.feasibility_bit(MODEL_CLASSICAL, "any"))
    ) / bits.size
    pure_any = float(
        np.count_nonzero(bits & _kernels.feasibility_bit(MODEL_QUANTUM_PURE, "any"))
    ) / bits.size
    return AreaReport(
        model=model,
        method="oracle",
        grid_n=grid.n,
        n_samples=0,
        seed=0,
        lens_estimate=(classical_any - pure_any) / 3.0,
        **own,
    )


def _strategies_from_draws(model: str, u: np.ndarray):
    """Strategy component arrays (p02, p01, p10) from raw draw blocks."""
    if model == MODEL_CLASSICAL:
        return u[:, 0], u[:, 1], u[:, 2]
    x3 = 2.0 * u[:, 0] - 1.0
    phi = (2.0 * np.pi) * u[:, 1]
    s = np.sqrt(np.maximum(1.0 - x3 * x3, 0.0))
    x1 = s * np.cos(phi)
    x2 = s * np.sin(phi)
    if model == MODEL_QUANTUM_MIXED:
        r = np.cbrt(u[:, 2])
        x1, x2, x3 = r * x1, r * x2, r * x3
    p02 = np.minimum(np.maximum(0.5 * (1.0 - x3), 0.0), 1.0)
    p01 = np.minimum(np.maximum(0.5 * (1.0 + x1), 0.0), 1.0)
    p10 = np.minimum(np.maximum(0.5 * (1.0 + x2), 0.0), 1.0)
    return p02, p01, p10


def _forward_cover(model: str, grid: SimplexGrid, m: int, rng: Rng, workers: int) -> np.ndarray:
    """Per-cell coverage flags from m mapped samples (indexed, chunk-stable)."""

    def worker(span) -> np.ndarray:
        start, stop = span
        u = rng.at(start).draws(stop - start)
        p02, p01, p10 = _strategies_from_draws(model, u)
        _, q1, q2, status, cls = _kernels.forward_map(p02, p01, p10)
        ok = status == _kernels.OK
        cells = grid.cell_index(q1[ok], q2[ok])
        k = cls[ok]
        flags = np.full(k.shape, _COVER_ANY)
        flags |= np.where(k == 6, _COVER_I, 0).astype(np.uint8)
        flags |= np.where(k == 7, _COVER_II, 0).astype(np.uint8)
        flags |= np.where(k <= 5, _COVER_TRANSITIVE, 0).astype(np.uint8)
        cover = np.zeros(grid.n_cells, dtype=np.uint8)
        np.bitwise_or.at(cover, cells, flags)
        return cover

    base = rng.position
    spans = [(base + s, base + min(s + _CHUNK_SAMPLES, m)) for s in range(0, m, _CHUNK_SAMPLES)]
    parts = _map_chunks(worker, spans, workers)
    out = np.zeros(grid.n_cells, dtype=np.uint8)
    for part in parts:
        out |= part
    return out


def _cover_fractions(cover: np.ndarray) -> dict:
    def frac(flag: int) -> float:
        return float(np.count_nonzero(cover & flag)) / cover.size

    overlap = float(np.count_nonzero((cover & _COVER_I != 0) & (cover & _COVER_II != 0)))
    return {
        "fraction_all": frac(_COVER_ANY),
        "fraction_intransitive_any": frac(_COVER_I | _COVER_II),
        "fraction_intransitive_i": frac(_COVER_I),
        "fraction_intransitive_ii": frac(_COVER_II),
        "fraction_transitive": frac(_COVER_TRANSITIVE),
        "fraction_overlap": overlap / cover.size,
    }


def measure_forward(
    model: str, grid: SimplexGrid, m: int, rng: Rng, workers: int = 1
) -> AreaReport:
    """Monte Carlo area report: map m sampled strategies, count covered cells.

    Samples are addressed by index on the rng's stream (the caller's rng is
    not advanced), so the result is independent of chunking and worker
    count. The lens estimate needs both a classical and a quantum `any`
    fraction; the missing model runs as a complementary pass on the next
    stream. Coverage underestimates thin regions at small m; fractions
    converge from below as m grows.
    """
    assert model in MODELS
    assert m >= 1
    cover = _forward_cover(model, grid, m, rng, workers)
    own = _cover_fractions(cover)
    if model == MODEL_CLASSICAL:
        other = _forward_cover(MODEL_QUANTUM_PURE, grid, m, rng.fork(rng.stream + 1), workers)
        classical_any = own["fraction_all"]
        quantum_any = float(np.count_nonzero(other & _COVER_ANY)) / other.size
    else:
        other = _forward_cover(MODEL_CLASSICAL, grid, m, rng.fork(rng.stream + 1), workers)
        classical_any = float(np.count_nonzero(other & _COVER_ANY)) / other.size
        quantum_any = own["fraction_all"]
    return AreaReport(
        model=model,
        method="forward",
        grid_n=grid.n,
        n_samples=m,
        seed=rng.seed,
        lens_estimate=(classical_any - quantum_any) / 3.0,
        **own,
    )


@dataclass(frozen=True)
class DiscrepancyReport:
    """Cell-by-cell comparison of forward coverage against oracle membership.

    Boundary-adjacent cells are those where the oracle decision flips within
    two lattice steps, probed on a four times finer point raster; any
    rasterization method disagrees somewhere in that collar, and forward
    sampling densities taper toward region boundaries, so cell coverage
    there is not resolvable at moderate sample counts. Interior
    disagreement is the fraction of the remaining cells where the two
    methods differ (forward undercoverage included), the honest
    convergence figure.
    """

    model: str
    grid_n: int
    n_samples: int
    n_cells: int
    n_boundary_adjacent: int
    n_disagree: int
    n_disagree_interior: int
    disagreement_fraction: float
    interior_disagreement_fraction: float


def _boundary_adjacent_cells(model: str, grid: SimplexGrid, workers: int) -> np.ndarray:
    """Conservative per-cell flag: the oracle decision flips within two
    lattice steps of the cell.

    Probes a raster four times finer than the lattice, so every half-cell
    receives several probe points, then marks the probes whose Chebyshev
    neighborhood of two lattice steps contains both feasible and infeasible
    points. A cell is flagged when any of its probes is marked. Two steps
    cover the band where a forward sampling density that tapers linearly
    toward the region boundary leaves cells with only a few expected hits
    at the calibration sample count of 10^6.
    """
    n = grid.n
    k = 4 * n
    i_idx, j_idx = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    valid = (i_idx + j_idx) <= k - 1
    q1 = (i_idx[valid] + 0.5) / k
    q2 = (j_idx[valid] + 0.5) / k
    q0 = 1.0 - q1 - q2
    spans = [(s, min(s + _CHUNK_CELLS, q0.size)) for s in range(0, q0.size, _CHUNK_CELLS)]
    parts = _map_chunks(
        lambda se: _kernels.oracle_sweep(q0[se[0] : se[1]], q1[se[0] : se[1]], q2[se[0] : se[1]]),
        spans,
        workers,
    )
    feas = (np.concatenate(parts) & _kernels.feasibility_bit(model, "any")) != 0

    state = np.zeros((k, k), dtype=np.int8)  # 0 outside, 1 infeasible, 2 feasible
    state[valid] = np.where(feas, 2, 1).astype(np.int8)
    pad = 8  # two lattice steps on the quarter-step raster
    padded = np.zeros((k + 2 * pad, k + 2 * pad), dtype=np.int8)
    padded[pad:-pad, pad:-pad] = state
    any_feas = np.zeros((k, k), dtype=bool)
    any_inf = np.zeros((k, k), dtype=bool)
    for di in range(2 * pad + 1):
        for dj in range(2 * pad + 1):
            win = padded[di : di + k, dj : dj + k]
            any_feas |= win == 2
            any_inf |= win == 1
    mixed = (any_feas & any_inf)[valid]

    flag = np.zeros(grid.n_cells, dtype=bool)
    cells = grid.cell_index(q1, q2)
    np.logical_or.at(flag, cells, mixed)
    return flag


def cross_validate(
    model: str, grid: SimplexGrid, m: int, rng: Rng, workers: int = 1
) -> DiscrepancyReport:
    """Compare forward coverage with oracle membership cell by cell."""
    assert model in MODELS
    bits = _sweep_bits(grid, workers)
    oracle_any = (bits & _kernels.feasibility_bit(model, "any")) != 0
    cover = _forward_cover(model, grid, m, rng, workers)
    covered = (cover & _COVER_ANY) != 0
    disagree = covered != oracle_any
    badj = _boundary_adjacent_cells(model, grid, workers)
    interior = ~badj
    n_int_disagree = int(np.count_nonzero(disagree & interior))
    n_interior = int(np.count_nonzero(interior))
    return DiscrepancyReport(
        model=model,
        grid_n=grid.n,
        n_samples=m,
        n_cells=grid.n_cells,
        n_boundary_adjacent=int(np.count_nonzero(badj)),
        n_disagree=int(np.count_nonzero(disagree)),
        n_disagree_interior=n_int_disagree,
        disagreement_fraction=float(np.count_nonzero(disagree)) / grid.n_cells,
        interior_disagreement_fraction=n_int_disagree / max(n_interior, 1),
    )
