"""Rips filtrations and persistence diagrams."""

import math
import random

import numpy as np
import pytest

import cellcomplex as cx
from cellcomplex.persist import Filtration, FiltrationStep

import helpers

SQUARE = cx.PointCloud([[0, 0], [1, 0], [1, 1], [0, 1]])


class TestVrFiltration:
    def test_two_points(self):
        cloud = cx.PointCloud([[0, 0], [1, 0]])
        filtration = cx.vr_filtration(cloud, 2.0, 1)
        births = [(s.vertices, s.birth) for s in filtration.steps]
        assert births == [((0,), 0.0), ((1,), 0.0), ((0, 1), 1.0)]

    def test_unit_square_births(self):
        filtration = cx.vr_filtration(SQUARE, 2.0, 2)
        by_dim = {}
        for step in filtration.steps:
            by_dim.setdefault(step.dim, []).append(step.birth)
        assert by_dim[0] == [0.0] * 4
        assert sorted(by_dim[1]) == pytest.approx([1, 1, 1, 1, math.sqrt(2), math.sqrt(2)])
        assert by_dim[2] == pytest.approx([math.sqrt(2)] * 4)

    def test_max_eps_zero(self):
        filtration = cx.vr_filtration(SQUARE, 0.0, 2)
        assert all(step.dim == 0 for step in filtration.steps)

    def test_faces_precede(self):
        rng = random.Random(31)
        cloud = helpers.random_cloud(rng, n_min=5, n_max=8)
        filtration = cx.vr_filtration(cloud, 3.0, 2)
        seen = set()
        for step in filtration.steps:
            if step.dim >= 1:
                import itertools

                for face in itertools.combinations(step.vertices, step.dim):
                    assert face in seen
            seen.add(step.vertices)

    def test_validation_rejects_bad_order(self):
        steps = (
            FiltrationStep(0.0, 0, (0,)),
            FiltrationStep(0.0, 0, (1,)),
            FiltrationStep(0.5, 1, (0, 1)),
        )
        Filtration(steps)
        with pytest.raises(ValueError):
            Filtration(steps[::-1])
        with pytest.raises(ValueError):
            Filtration((FiltrationStep(0.0, 1, (0, 1)),))


class TestPersistence:
    def test_single_point(self):
        diagram = cx.persistence(cx.vr_filtration(cx.PointCloud([[0, 0]]), 1.0, 2))
        assert len(diagram.bars) == 1
        bar = diagram.bars[0]
        assert (bar.dim, bar.birth) == (0, 0.0) and bar.infinite

    def test_two_points(self):
        cloud = cx.PointCloud([[0, 0], [1, 0]])
        diagram = cx.persistence(cx.vr_filtration(cloud, 2.0, 1))
        assert [(b.dim, b.birth, b.death) for b in diagram.bars] == [
            (0, 0.0, 1.0),
            (0, 0.0, math.inf),
        ]

    def test_unit_square_h1_bar(self):
        diagram = cx.persistence(cx.vr_filtration(SQUARE, 2.0, 2))
        h1 = diagram.in_dim(1)
        assert len(h1) == 1
        assert h1[0].birth == pytest.approx(1.0, abs=1e-12)
        assert h1[0].death == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_h0_bar_count_and_unique_infinite_bar(self):
        rng = random.Random(32)
        for _ in range(10):
            cloud = helpers.random_cloud(rng, n_min=2, n_max=7)
            max_eps = float(np.max(cloud.distances())) + 0.1
            diagram = cx.persistence(
                cx.vr_filtration(cloud, max_eps, 1), keep_zero_bars=True
            )
            h0 = diagram.in_dim(0)
            assert len(h0) == len(cloud)
            assert sum(bar.infinite for bar in h0) == 1

    def test_keep_zero_bars_flag(self):
        slim = cx.persistence(cx.vr_filtration(SQUARE, 2.0, 2))
        full = cx.persistence(cx.vr_filtration(SQUARE, 2.0, 2), keep_zero_bars=True)
        assert len(full.bars) > len(slim.bars)
        assert all(bar.death > bar.birth for bar in slim.bars)
        # 14 simplices pair into 6 finite bars plus 2 infinite ones.
        assert len(full.bars) == 8
        zero_bars = [bar for bar in full.bars if bar.death == bar.birth]
        assert len(zero_bars) == 2 and all(bar.dim == 1 for bar in zero_bars)

    def test_invariant_under_point_permutation(self):
        rng = random.Random(33)
        points = [[rng.uniform(0, 2), rng.uniform(0, 2)] for _ in range(7)]
        base = cx.persistence(cx.vr_filtration(cx.PointCloud(points), 3.0, 2))
        for _ in range(3):
            shuffled = points[:]
            rng.shuffle(shuffled)
            other = cx.persistence(cx.vr_filtration(cx.PointCloud(shuffled), 3.0, 2))
            key = lambda b: (b.dim, b.birth, b.death)
            assert sorted(base.bars, key=key) == sorted(other.bars, key=key)

    def test_alive_counts_match_betti_numbers(self):
        rng = random.Random(34)
        cloud = helpers.random_cloud(rng, n_min=5, n_max=8)
        distances = cloud.distances()
        max_eps = float(np.max(distances)) + 0.1
        diagram = cx.persistence(cx.vr_filtration(cloud, max_eps, 2))
        breakpoints = sorted({0.0, *np.unique(distances).tolist()})
        for eps in breakpoints:
            rips = cx.vietoris_rips(cloud, eps, 2)
            betti = cx.betti_numbers(rips).betti
            for k in range(3):
                expected = betti[k] if k <= rips.dim else 0
                assert diagram.alive_at(eps, k) == expected
