import math

import pytest
from hypothesis import given, strategies as st

from rtlnp import (RtlnpParams, build_geometry, neighbor_index, neighbors_per_sector,
                   ring_offsets, sector_count)
from rtlnp.reference import perimeter_walk


class TestParams:
    def test_defaults(self):
        p = RtlnpParams()
        assert (p.r_in, p.r_out, p.delta_theta, p.theta_zero) == (3, 6, 36, 0)
        assert p.n_bins == 1024

    @pytest.mark.parametrize("args", [(0, 2, 36), (3, 3, 36), (4, 2, 36), (1, 2, 0),
                                      (1, 2, 361), (1.5, 3, 36)])
    def test_invalid(self, args):
        with pytest.raises((ValueError, TypeError)):
            RtlnpParams(*args)


class TestSectorCount:
    @pytest.mark.parametrize("dt,s", [(36, 10), (45, 8), (360, 1), (24, 15), (72, 5),
                                      (120, 3), (100, 3)])
    def test_values(self, dt, s):
        assert sector_count(dt) == s

    @pytest.mark.parametrize("dt", [0, -5, 361])
    def test_range(self, dt):
        with pytest.raises(ValueError):
            sector_count(dt)


class TestNeighborsPerSector:
    @pytest.mark.parametrize("ring,dt,n", [(1, 36, 1), (2, 36, 2), (4, 36, 4), (1, 45, 1),
                                           (3, 36, 3), (5, 36, 4), (6, 36, 5), (1, 120, 3)])
    def test_values(self, ring, dt, n):
        assert neighbors_per_sector(ring, dt) == n

    @given(st.integers(1, 20), st.integers(1, 360))
    def test_is_ceiling(self, ring, dt):
        assert neighbors_per_sector(ring, dt) == math.ceil(ring * dt / 45)


class TestNeighborIndex:
    @pytest.mark.parametrize("ring,j,k,dt,l", [
        (1, 2, 1, 36, 2), (2, 2, 1, 36, 3), (1, 10, 1, 36, 8),
        (4, 2, 1, 36, 5), (4, 2, 2, 36, 6), (4, 2, 3, 36, 7), (4, 2, 4, 36, 8),
        (4, 1, 1, 36, 1), (4, 1, 4, 36, 4), (2, 1, 2, 36, 2),
    ])
    def test_worked_examples(self, ring, j, k, dt, l):
        assert neighbor_index(ring, j, k, dt) == l

    @given(st.integers(1, 8), st.sampled_from([24, 36, 45, 72, 120, 360]), st.data())
    def test_first_sector_identity(self, ring, dt, data):
        k = data.draw(st.integers(1, neighbors_per_sector(ring, dt)))
        assert neighbor_index(ring, 1, k, dt) == k

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            neighbor_index(1, 11, 1, 36)
        with pytest.raises(ValueError):
            neighbor_index(1, 1, 2, 36)


class TestRingOffsets:
    def test_ring1(self):
        assert [(o.dc, o.dr) for o in ring_offsets(1)] == [
            (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1)]
        assert [o.ordinal for o in ring_offsets(1)] == list(range(1, 9))

    def test_ring2(self):
        r2 = ring_offsets(2)
        assert len(r2) == 16
        assert (r2[0].dc, r2[0].dr) == (2, 0)
        assert (r2[4].dc, r2[4].dr) == (0, -2)

    @pytest.mark.parametrize("ring", range(1, 9))
    def test_matches_perimeter_walk(self, ring):
        offs = ring_offsets(ring)
        assert len(offs) == 8 * ring
        assert all(max(abs(o.dc), abs(o.dr)) == ring and o.ring == ring for o in offs)
        assert [(o.dc, o.dr) for o in offs] == perimeter_walk(ring)


class TestBuildGeometry:
    def test_r2_r3_45(self):
        g = build_geometry(RtlnpParams(2, 3, 45))
        assert g.sector_count == 8
        s1 = g.sectors[0]
        assert [(o.ring, o.ordinal) for o in s1.inner] == [(1, 1), (2, 1), (2, 2)]
        assert [(o.ring, o.ordinal) for o in s1.outer] == [(3, 1), (3, 2), (3, 3)]

    def test_r3_r6_36_counts(self):
        g = build_geometry(RtlnpParams(3, 6, 36))
        assert g.sector_count == 10
        for s in g.sectors:
            assert len(s.inner) == 1 + 2 + 3
            assert len(s.outer) == 4 + 4 + 5

    def test_single_sector_covers_rings(self):
        g = build_geometry(RtlnpParams(1, 2, 360))
        (s,) = g.sectors
        assert sorted((o.dc, o.dr) for o in s.inner) == sorted((o.dc, o.dr) for o in ring_offsets(1))
        assert {(o.dc, o.dr) for o in s.outer} == {(o.dc, o.dr) for o in ring_offsets(2)}

    def test_clamp_shares_last_pixel(self):
        g = build_geometry(RtlnpParams(1, 2, 36))
        assert g.sectors[8].inner[0].ordinal == 8 and g.sectors[9].inner[0].ordinal == 8

    @given(st.integers(1, 4), st.integers(1, 4), st.sampled_from([10, 24, 30, 36, 45, 60, 72, 90, 120, 360]))
    def test_invariants(self, r_in, extra, dt):
        p = RtlnpParams(r_in, r_in + extra, dt)
        g = build_geometry(p)
        assert g.sector_count == 360 // dt
        for j, s in enumerate(g.sectors, start=1):
            for part, rings in ((s.inner, range(1, p.r_in + 1)),
                                (s.outer, range(p.r_in + 1, p.r_out + 1))):
                assert len(part) == sum(neighbors_per_sector(n, dt) for n in rings)
                for n in rings:
                    got = [o for o in part if o.ring == n]
                    assert len(got) == neighbors_per_sector(n, dt)
                    for k, o in enumerate(got, start=1):
                        expect = min(math.ceil(n * dt * (j - 1) / 45) + k, 8 * n)
                        assert o.ordinal == expect
                        assert ring_offsets(n)[o.ordinal - 1] == o
            assert all((o.dc, o.dr) != (0, 0) for o in s.inner)

    def test_deterministic(self):
        assert build_geometry(RtlnpParams(2, 5, 24)) == build_geometry(RtlnpParams(2, 5, 24))
