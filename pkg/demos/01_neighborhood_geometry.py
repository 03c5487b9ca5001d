"""
How the RTLNP neighborhood is cut into sectors
==============================================

Prints the square rings around a reference pixel and which ring pixels each
sector averages, for the small (r_in=2, r_out=3, 45 deg) configuration and
for the default (3, 6, 36 deg) one.
"""

import numpy as np

from rtlnp import RtlnpParams, build_geometry, neighbors_per_sector, ring_offsets

# %%
# Ring pixels are numbered counterclockwise starting to the right of the
# reference pixel.  Ring 2 as a 5x5 grid of ordinals:
grid = np.zeros((5, 5), dtype=int)
for o in ring_offsets(2):
    grid[2 + o.dr, 2 + o.dc] = o.ordinal
print(grid)

# %%
# With 45 degree sectors each sector takes one pixel of ring 1, two of ring
# 2 and three of ring 3.
g = build_geometry(RtlnpParams(2, 3, 45))
for s in g.sectors:
    inner = [(o.ring, o.ordinal) for o in s.inner]
    outer = [(o.ring, o.ordinal) for o in s.outer]
    print(f"sector {s.index}: inner {inner}  outer {outer}")

# %%
# Paint the sector membership of (2, 3, 45) on a 7x7 grid; 0 is the
# reference pixel.  Outer pixels are shown as negative sector numbers.
paint = np.zeros((7, 7), dtype=int)
for s in g.sectors:
    for o in s.inner:
        paint[3 + o.dr, 3 + o.dc] = s.index
    for o in s.outer:
        paint[3 + o.dr, 3 + o.dc] = -s.index
print(paint)

# %%
# At 36 degrees there are 10 sectors but ring 1 has only 8 pixels, so the
# last sectors reuse pixel 8 of ring 1.
g36 = build_geometry(RtlnpParams(3, 6, 36))
print("pixels per sector on rings 1..6:",
      [neighbors_per_sector(n, 36) for n in range(1, 7)])
print("ring-1 pixel used by each sector:",
      [s.inner[0].ordinal for s in g36.sectors])
print("inner/outer pixel counts per sector:", len(g36.sectors[0].inner) + 1,
      len(g36.sectors[0].outer))
