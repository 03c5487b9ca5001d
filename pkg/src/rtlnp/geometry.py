"""Neighborhood geometry of the RTLNP operator.

The local neighborhood of a reference pixel is a stack of square
(Chebyshev) rings; ring ``n`` holds ``8 n`` pixels.  The neighborhood is cut
into ``S`` angular sectors, and each sector into an inner part (rings
``1..r_in``) and an outer part (rings ``r_in+1..r_out``).

Offsets are ``(dc, dr)`` = (column, row) displacements, rows growing
downwards.  Ring pixels are numbered 1..8n by increasing angle starting at
``(n, 0)`` and turning towards ``-row`` (counterclockwise on screen).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Tuple


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class RtlnpParams:
    """Operator parameters: inner/outer radii and sector width in degrees."""

    r_in: int = 3
    r_out: int = 6
    delta_theta: int = 36
    theta_zero: int = 0

    def __post_init__(self):
        for name in ("r_in", "r_out", "delta_theta", "theta_zero"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"{name} must be an integer, got {v!r}")
        if not 1 <= self.r_in < self.r_out:
            raise ValueError(
                f"need 1 <= r_in < r_out, got r_in={self.r_in}, r_out={self.r_out}")
        if not 1 <= self.delta_theta <= 360:
            raise ValueError(f"delta_theta must lie in [1, 360], got {self.delta_theta}")
        if self.theta_zero != 0:
            raise ValueError("only theta_zero = 0 is supported")

    @property
    def sector_count(self) -> int:
        return sector_count(self.delta_theta)

    @property
    def n_bins(self) -> int:
        return 1 << self.sector_count

    def to_dict(self) -> dict:
        return {"r_in": self.r_in, "r_out": self.r_out,
                "delta_theta": self.delta_theta, "theta_zero": self.theta_zero}


def sector_count(delta_theta: int) -> int:
    """Number of sectors ``floor(360 / delta_theta)``."""
    if not 1 <= delta_theta <= 360:
        raise ValueError(f"delta_theta must lie in [1, 360], got {delta_theta}")
    return 360 // delta_theta


def neighbors_per_sector(ring: int, delta_theta: int) -> int:
    """Pixels a sector takes from ring ``ring``: ``ceil(ring * delta_theta / 45)``.

    The ceiling (rather than the floor the brackets suggest) is what gives
    one pixel per sector on ring 1 at 36 degrees.
    """
    if ring < 1:
        raise ValueError(f"ring must be >= 1, got {ring}")
    return _ceil_div(ring * delta_theta, 45)


def neighbor_index(ring: int, sector: int, k: int, delta_theta: int) -> int:
    """1-based ring ordinal of the ``k``-th pixel of ``sector`` on ``ring``.

    ``min(ceil(ring * delta_theta * (sector - 1) / 45) + k, 8 * ring)``; the
    clamp makes late sectors reuse the last ring pixel when there are more
    sectors than pixels.
    """
    if not 1 <= sector <= sector_count(delta_theta):
        raise ValueError(f"sector {sector} out of range for delta_theta={delta_theta}")
    if not 1 <= k <= neighbors_per_sector(ring, delta_theta):
        raise ValueError(f"k={k} out of range for ring {ring}")
    return min(_ceil_div(ring * delta_theta * (sector - 1), 45) + k, 8 * ring)


class RingOffset(NamedTuple):
    dc: int
    dr: int
    ring: int
    ordinal: int


@lru_cache(maxsize=None)
def ring_offsets(ring: int) -> Tuple[RingOffset, ...]:
    """The ``8 * ring`` offsets at Chebyshev distance ``ring``, in ordinal order."""
    if ring < 1:
        raise ValueError(f"ring must be >= 1, got {ring}")
    pts = [(dc, dr)
           for dr in range(-ring, ring + 1)
           for dc in range(-ring, ring + 1)
           if max(abs(dc), abs(dr)) == ring]
    pts.sort(key=lambda p: math.atan2(-p[1], p[0]) % (2 * math.pi))
    return tuple(RingOffset(dc, dr, ring, i) for i, (dc, dr) in enumerate(pts, start=1))


@dataclass(frozen=True)
class Sector:
    index: int
    inner: Tuple[RingOffset, ...]
    outer: Tuple[RingOffset, ...]


@dataclass(frozen=True)
class SectorGeometry:
    """Per-sector offset tables for one parameter set.

    Offsets may repeat inside a sector (the ordinal clamp), and neighboring
    sectors may share pixels on small rings; both are intentional.
    """

    params: RtlnpParams
    sectors: Tuple[Sector, ...]

    @property
    def sector_count(self) -> int:
        return len(self.sectors)

    @property
    def n_bins(self) -> int:
        return 1 << len(self.sectors)

    @property
    def margin(self) -> int:
        return self.params.r_out


def _sector_ring_offsets(ring: int, sector: int, delta_theta: int):
    table = ring_offsets(ring)
    return [table[neighbor_index(ring, sector, k, delta_theta) - 1]
            for k in range(1, neighbors_per_sector(ring, delta_theta) + 1)]


@lru_cache(maxsize=64)
def build_geometry(params: RtlnpParams) -> SectorGeometry:
    """Precompute the sector tables for ``params`` (cached per parameter set)."""
    if not isinstance(params, RtlnpParams):
        raise TypeError("params must be an RtlnpParams instance")
    sectors = []
    for j in range(1, params.sector_count + 1):
        inner = [o for n in range(1, params.r_in + 1)
                 for o in _sector_ring_offsets(n, j, params.delta_theta)]
        outer = [o for n in range(params.r_in + 1, params.r_out + 1)
                 for o in _sector_ring_offsets(n, j, params.delta_theta)]
        sectors.append(Sector(j, tuple(inner), tuple(outer)))
    return SectorGeometry(params, tuple(sectors))
