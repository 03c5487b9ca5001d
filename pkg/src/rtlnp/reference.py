"""Slow, literal per-pixel RTLNP evaluator used as a test oracle.

Shares no code with :mod:`rtlnp.geometry` or :mod:`rtlnp.descriptor`: ring
pixels come from walking the square perimeter rather than sorting by angle,
and every sum is taken pixel by pixel in plain Python.

``bracket="floor"`` evaluates the index formulas with floors as printed.
That variant is kept for comparison only: it drops ring 1 entirely for
sector widths under 45 degrees, shifts the ordinals of later sectors back
by one in places, and for very narrow sectors leaves the outer subsector empty
(``ZeroDivisionError``).
"""

from __future__ import annotations

import math

import numpy as np


def perimeter_walk(radius):
    """Ring pixels as ``(dc, dr)``, starting at ``(radius, 0)`` and walking
    counterclockwise on screen (towards negative rows first)."""
    R = radius
    pts = [(R, -t) for t in range(0, R + 1)]           # right edge, upwards
    pts += [(R - t, -R) for t in range(1, 2 * R + 1)]  # top edge, leftwards
    pts += [(-R, -R + t) for t in range(1, 2 * R + 1)]  # left edge, downwards
    pts += [(-R + t, R) for t in range(1, 2 * R + 1)]  # bottom edge, rightwards
    pts += [(R, R - t) for t in range(1, R)]           # right edge, back up
    assert len(pts) == 8 * R
    return pts


def _bracket(x, mode):
    return math.ceil(x) if mode == "ceil" else math.floor(x)


def reference_tables(r_in, r_out, delta_theta, bracket="ceil"):
    """Per-sector ``(inner, outer)`` lists of ``(dc, dr)`` pixel displacements.

    Inner lists start with the reference pixel ``(0, 0)``.
    """
    S = math.floor(360 / delta_theta)
    tables = []
    for j in range(1, S + 1):
        inner = [(0, 0)]
        outer = []
        for n in range(1, r_out + 1):
            ring = perimeter_walk(n)
            per_sector = _bracket(n * delta_theta / 45, bracket)
            start = _bracket(n * delta_theta * (j - 1) / 45, bracket)
            for k in range(1, per_sector + 1):
                l = start + k
                if l > 8 * n:
                    l = 8 * n
                (inner if n <= r_in else outer).append(ring[l - 1])
        tables.append((inner, outer))
    return tables


def _code_from_tables(rows, col, row, tables):
    code = 0
    for j, (inner, outer) in enumerate(tables, start=1):
        in_sum = 0
        for dc, dr in inner:
            in_sum += rows[row + dr][col + dc]
        out_sum = 0
        for dc, dr in outer:
            out_sum += rows[row + dr][col + dc]
        a_in = in_sum // len(inner)
        a_out = out_sum // len(outer)
        bit = 0 if a_in <= a_out else 1
        code += 2 ** (j - 1) * bit
    return code


def reference_code(pixels, col, row, r_in, r_out, delta_theta, bracket="ceil"):
    """Literal RTLNP code of pixel ``(col, row)`` of a 2-D intensity array."""
    rows = np.asarray(pixels, dtype=np.int64).tolist()
    tables = reference_tables(r_in, r_out, delta_theta, bracket)
    return _code_from_tables(rows, col, row, tables)


def reference_feature_codes(pixels, r_in, r_out, delta_theta, bracket="ceil"):
    """Code array with the same shape as ``pixels``; border pixels are 0."""
    px = np.asarray(pixels, dtype=np.int64)
    h, w = px.shape
    rows = px.tolist()
    tables = reference_tables(r_in, r_out, delta_theta, bracket)
    out = np.zeros((h, w), dtype=np.int64)
    for r in range(r_out, h - r_out):
        for c in range(r_out, w - r_out):
            out[r, c] = _code_from_tables(rows, c, r, tables)
    return out


def reference_lbp_codes(pixels):
    """Radius-1, 8-neighbor LBP with ties counted as 1, same neighbor order."""
    px = np.asarray(pixels, dtype=np.int64).tolist()
    h, w = len(px), len(px[0])
    ring = perimeter_walk(1)
    out = np.zeros((h, w), dtype=np.int64)
    for r in range(1, h - 1):
        for c in range(1, w - 1):
            code = 0
            for p, (dc, dr) in enumerate(ring, start=1):
                if px[r + dr][c + dc] >= px[r][c]:
                    code += 2 ** (p - 1)
            out[r, c] = code
    return out
