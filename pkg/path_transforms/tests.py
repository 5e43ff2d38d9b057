import math

import numpy as np
from django.test import SimpleTestCase
from scipy import stats

from levy_models.catalog import LevyModel
from levy_models.exceptions import AlignmentError, DomainError
from levy_models.rng import RngStream
from levy_models.services import path_sample
from minorant_core.paths import GridPath
from minorant_core.services import Face, MinorantDecomposition, convex_minorant

from .services import (
    invariant_transform,
    knight_bridge,
    psi_transform,
    recursive_face_discovery,
    three_point_transform,
    vervaat,
)

STEP_FUNCTION = GridPath(0.0, 1.0 / 6, [0.0, 0.0, 1.0, 1.0, 2.0, 2.0, 2.0])


def _random_walk(seed, n=64):
    return GridPath.from_increments(RngStream(seed).standard_normal(n), 1.0 / n)


class ThreePointTransformTests(SimpleTestCase):
    def test_step_function(self):
        result = three_point_transform(STEP_FUNCTION, 2 / 6, 3 / 6, 4 / 6)
        np.testing.assert_array_equal(result.values, [0.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0])

    def test_degenerate_middle_piece_rotates(self):
        path = GridPath(0.0, 0.25, [0.0, 1.0, 3.0, 2.0, 5.0])
        result = three_point_transform(path, 0.25, 0.25, 0.75)
        np.testing.assert_array_equal(result.values, [0.0, 2.0, 1.0, 2.0, 5.0])

    def test_preserves_terminal_value_and_increments(self):
        for seed in range(50):
            path = _random_walk(seed)
            a, b, c = sorted(RngStream(seed, 1).generator.choice(65, size=3, replace=False))
            result = three_point_transform(path, a / 64, b / 64, c / 64)
            self.assertEqual(result.terminal, path.terminal)
            self.assertEqual(result.values[0], 0.0)
            np.testing.assert_allclose(np.sort(result.increments()), np.sort(path.increments()), atol=1e-12)

    def test_argument_checks(self):
        with self.assertRaises(DomainError):
            three_point_transform(STEP_FUNCTION, 4 / 6, 3 / 6, 2 / 6)
        with self.assertRaises(AlignmentError):
            three_point_transform(STEP_FUNCTION, 0.1, 3 / 6, 4 / 6)
        with self.assertRaises(DomainError):
            three_point_transform(GridPath(0.0, 0.5, [1.0, 2.0, 0.0]), 0.0, 0.5, 1.0)


class PsiTransformTests(SimpleTestCase):
    def test_matches_plain_rearrangement_on_hull_vertices(self):
        for seed in range(20):
            path = _random_walk(seed)
            dec = convex_minorant(path)
            u = 0.37
            face = next(f for f in dec if f.g < u <= f.d)
            if face.d_index - face.g_index < 2:
                continue
            middle = path.time_at(face.g_index + 1)
            np.testing.assert_array_equal(
                psi_transform(path, dec, face.g, middle, face.d).values,
                three_point_transform(path, face.g, middle, face.d).values,
            )

    def test_uses_minorant_values(self):
        dec = MinorantDecomposition(
            (Face.from_increment(0.0, 1 / 3, -0.5), Face(1 / 3, 2 / 3, 1 / 3, 2.0, 6.0),
             Face(2 / 3, 1.0, 1 / 3, 0.5, 1.5)),
            np.array([0.0, -0.5, 1.5, 2.0]),
        )
        result = psi_transform(STEP_FUNCTION, dec, 2 / 6, 3 / 6, 4 / 6)
        np.testing.assert_array_equal(result.values, [0.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0])
        self.assertEqual(result.terminal, STEP_FUNCTION.terminal)

    def test_requires_vertices(self):
        path = _random_walk(3)
        dec = convex_minorant(path)
        off_vertex = next(k for k in range(1, 64) if k not in dec.vertex_indices)
        with self.assertRaises(DomainError):
            psi_transform(path, dec, path.time_at(off_vertex), path.time_at(off_vertex), 1.0)


class InvariantTransformTests(SimpleTestCase):
    def test_single_face_swaps_pieces(self):
        path = GridPath(0.0, 0.25, [0.0, 1.0, 2.0, 1.5, 0.2])
        result = invariant_transform(path, 0.6, snap=True)
        self.assertEqual((result.face.g, result.face.d), (0.0, 1.0))
        self.assertEqual(result.uniform_length, 1.0)
        np.testing.assert_allclose(result.transformed.values, [0.0, -1.3, -0.3, 0.7, 0.2], atol=1e-12)
        self.assertEqual(result.transformed.terminal, 0.2)
        self.assertEqual(result.cut, 0.75)

    def test_off_grid_time_needs_snap(self):
        path = GridPath(0.0, 0.25, [0.0, 1.0, 2.0, 1.5, 0.2])
        with self.assertRaises(AlignmentError):
            invariant_transform(path, 0.6)
        on_grid = invariant_transform(path, 0.75)
        self.assertEqual(on_grid.cut, 0.75)
        np.testing.assert_array_equal(
            on_grid.transformed.values, invariant_transform(path, 0.6, snap=True).transformed.values,
        )

    def test_invariants_on_random_paths(self):
        rng = RngStream(71)
        for k, model in enumerate((LevyModel.brownian(), LevyModel.cauchy(), LevyModel.gamma())):
            path = path_sample(model, 1.0, 512, RngStream(72, k))
            result = invariant_transform(path, float(rng.open_uniform()), snap=True)
            self.assertEqual(result.transformed.terminal, path.terminal)
            self.assertEqual(result.transformed.values[0], 0.0)
            np.testing.assert_allclose(
                np.sort(result.transformed.increments()), np.sort(path.increments()),
                atol=1e-12 * path.scale,
            )
            self.assertEqual(result.uniform_length, result.face.length)

    def test_discrete_face_length_is_uniform(self):
        rng = RngStream(73)
        counts = np.zeros(8)
        for rep in range(8000):
            path = GridPath.from_increments(rng.standard_normal(8), 1.0 / 8)
            result = invariant_transform(path, (rep % 8 + rng.open_uniform() * 0.5 + 0.25) / 8, snap=True)
            counts[result.face.d_index - result.face.g_index - 1] += 1
        self.assertGreater(stats.chisquare(counts).pvalue, 1e-3)

    def test_face_length_is_uniform(self):
        rng = RngStream(74)
        lengths = []
        for rep in range(1500):
            path = path_sample(LevyModel.brownian(), 1.0, 256, RngStream(75, rep))
            u = float(rng.open_uniform()) * 0.999 + 0.0005
            lengths.append(invariant_transform(path, u, snap=True).uniform_length)
        self.assertGreater(stats.kstest(lengths, 'uniform').pvalue, 1e-3)


class VervaatTests(SimpleTestCase):
    def test_cyclic_shift(self):
        result = vervaat(GridPath(0.0, 0.5, [0.0, -1.0, 1.0]))
        np.testing.assert_array_equal(result.values, [0.0, 2.0, 1.0])

    def test_rejects_paths_ending_below_their_start(self):
        with self.assertRaises(DomainError):
            vervaat(GridPath(0.0, 0.5, [0.0, -2.0, -1.0]))

    def test_nonnegative_when_ending_above_start(self):
        for seed in range(200):
            path = path_sample(LevyModel.brownian(drift=3.0), 1.0, 64, RngStream(78, seed))
            if path.terminal < 0:
                continue
            self.assertGreaterEqual(vervaat(path).values.min(), 0.0)

    def test_minimum_at_start(self):
        path = GridPath(0.0, 0.5, [0.0, 1.0, 0.5])
        np.testing.assert_array_equal(vervaat(path).values, path.values)

    def test_bridges_become_nonnegative(self):
        for seed in range(300):
            path = path_sample(LevyModel.brownian(), 1.0, 128, RngStream(76, seed))
            excursion = vervaat(knight_bridge(path, 0.25, 1.0))
            self.assertGreaterEqual(excursion.values.min(), -1e-12)
            self.assertEqual(excursion.values[0], 0.0)


class KnightBridgeTests(SimpleTestCase):
    def test_linear_path(self):
        path = GridPath(0.0, 0.25, [0.0, 0.5, 1.0, 1.5, 2.0])
        np.testing.assert_allclose(knight_bridge(path, 0.25, 1.0).values, 0.0, atol=1e-15)

    def test_endpoints_vanish(self):
        bridge = knight_bridge(_random_walk(5), 0.125, 0.75)
        self.assertEqual(bridge.values[0], 0.0)
        self.assertEqual(bridge.values[-1], 0.0)
        self.assertAlmostEqual(bridge.duration, 0.625)

    def test_alignment(self):
        with self.assertRaises(AlignmentError):
            knight_bridge(_random_walk(5), 0.1, 0.75)
        with self.assertRaises(DomainError):
            knight_bridge(_random_walk(5), 0.5, 0.5)

    def test_brownian_midpoint_variance(self):
        midpoints = []
        for seed in range(3000):
            path = path_sample(LevyModel.brownian(), 1.0, 64, RngStream(77, seed))
            midpoints.append(knight_bridge(path, 0.25, 0.75).values[16])
        self.assertGreater(stats.kstest(midpoints, 'norm', args=(0.0, math.sqrt(0.125))).pvalue, 1e-3)


class DiscoveryTests(SimpleTestCase):
    def test_single_round_matches_invariant_transform(self):
        path = _random_walk(8, n=128)
        result = recursive_face_discovery(path, 1, RngStream(80))
        u = path.duration * float(RngStream(80).open_uniform())
        direct = invariant_transform(path, u, snap=True)
        self.assertEqual(result.steps_completed, 1)
        np.testing.assert_array_equal(result.steps[0].transformed.values, direct.transformed.values)
        self.assertEqual(result.steps[0].face, direct.face)

    def test_length_bookkeeping(self):
        path = _random_walk(9, n=256)
        result = recursive_face_discovery(path, 5, RngStream(81))
        residual_steps = result.residual.n_steps if result.residual is not None else 0
        self.assertEqual(sum(step.steps for step in result.steps) + residual_steps, 256)

    def test_residual_keeps_the_other_faces(self):
        path = _random_walk(10, n=256)
        dec = convex_minorant(path)
        result = recursive_face_discovery(path, 1, RngStream(85))
        found = result.steps[0].face
        if result.residual is None:
            return
        expected = sorted(
            (face.d_index - face.g_index, face.increment) for face in dec if face.g_index != found.g_index
        )
        actual = sorted((face.d_index - face.g_index, face.increment) for face in convex_minorant(result.residual))
        self.assertEqual([steps for steps, _ in actual], [steps for steps, _ in expected])
        np.testing.assert_allclose([inc for _, inc in actual], [inc for _, inc in expected], atol=1e-12)

    def test_stops_when_path_is_exhausted(self):
        path = GridPath(0.0, 0.25, [0.0, 1.0, 2.0, 1.5, 0.2])
        result = recursive_face_discovery(path, 3, RngStream(82))
        self.assertTrue(result.stopped_early)
        self.assertEqual(result.steps_completed, 1)
        self.assertEqual(result.v_tildes, [1.0])
        self.assertIsNone(result.residual)

    def test_relative_lengths_are_uniform_and_uncorrelated(self):
        rng = RngStream(83)
        first, second = [], []
        for rep in range(2000):
            path = path_sample(LevyModel.brownian(), 1.0, 256, RngStream(84, rep))
            result = recursive_face_discovery(path, 2, rng)
            if result.stopped_early:
                continue
            first.append(result.v_tildes[0])
            second.append(result.v_tildes[1])
        self.assertGreater(stats.kstest(first, 'uniform').pvalue, 1e-3)
        self.assertGreater(stats.kstest(second, 'uniform').pvalue, 1e-3)
        self.assertLess(abs(stats.spearmanr(first, second).correlation), 5 / math.sqrt(len(first)))

    def test_rejects_zero_rounds(self):
        with self.assertRaises(DomainError):
            recursive_face_discovery(_random_walk(1), 0, RngStream(1))
