import numpy as np
from django.test import SimpleTestCase, override_settings
from scipy import special

from levy_models.catalog import LevyModel
from levy_models.exceptions import AlignmentError, DomainError, NumericError, VertexCollisionError
from levy_models.rng import RngStream
from levy_models.services import path_sample

from .paths import GridPath
from .services import (
    Face,
    MinorantDecomposition,
    argmin,
    brute_force_faces,
    contact_fraction,
    convex_minorant,
    excursion,
    face_containing,
    hull_indices,
    log_hull_indices,
    ranked_lengths,
    right_derivative,
    slope_passage,
)


def _decomposition(lengths, increments):
    faces, g, values = [], 0.0, [0.0]
    for length, increment in zip(lengths, increments):
        faces.append(Face.from_increment(g, length, increment))
        g += length
        values.append(values[-1] + increment)
    return MinorantDecomposition(tuple(faces), np.array(values))


class GridPathTests(SimpleTestCase):
    def test_basic_properties(self):
        path = GridPath(0.0, 0.25, [0.0, 1.0, -1.0, 2.0, 0.5])
        self.assertEqual(path.n_steps, 4)
        self.assertEqual(path.duration, 1.0)
        self.assertEqual(path.index_of(0.75), 3)
        self.assertEqual(path.value_at(0.5), -1.0)

    def test_alignment(self):
        path = GridPath(0.0, 0.25, [0.0, 1.0, 2.0])
        with self.assertRaises(AlignmentError):
            path.index_of(0.3)
        with self.assertRaises(AlignmentError):
            path.index_of(0.75)

    def test_validation(self):
        with self.assertRaises(DomainError):
            GridPath(0.0, 0.1, [0.0])
        with self.assertRaises(DomainError):
            GridPath(0.0, 0.0, [0.0, 1.0])
        with self.assertRaises(NumericError):
            GridPath(0.0, 0.1, [0.0, np.inf])

    def test_rows_round_trip(self):
        path = GridPath(0.5, 0.125, [0.0, 0.3, -0.2, 0.1])
        again = GridPath.from_rows(path.to_rows())
        np.testing.assert_array_equal(again.values, path.values)
        self.assertAlmostEqual(again.dt, path.dt)
        self.assertEqual(again.t0, path.t0)

    def test_rows_must_be_uniform(self):
        with self.assertRaises(AlignmentError):
            GridPath.from_rows([(0.0, 0.0), (0.1, 1.0), (0.3, 2.0)])


class ConvexMinorantTests(SimpleTestCase):
    def test_middle_point_above_chord(self):
        dec = convex_minorant(GridPath(0.0, 0.5, [0.0, 1.0, 0.0]))
        self.assertEqual(len(dec), 1)
        face = dec.faces[0]
        self.assertEqual((face.g, face.d, face.increment, face.slope), (0.0, 1.0, 0.0, 0.0))

    def test_v_shape(self):
        dec = convex_minorant(GridPath(0.0, 0.5, [0.0, -1.0, 0.0]))
        self.assertEqual(
            [face.as_row() for face in dec],
            [(0.0, 0.5, 0.5, -1.0, -2.0), (0.5, 1.0, 0.5, 1.0, 2.0)],
        )

    def test_collinear_points_are_not_vertices(self):
        dec = convex_minorant(GridPath(0.0, 1.0, [0.0, 1.0, 2.0, 3.0]))
        self.assertEqual(len(dec), 1)
        self.assertEqual(dec.faces[0].slope, 1.0)

    def test_matches_brute_force_on_short_walks(self):
        rng = RngStream(2024)
        for rep in range(3000):
            n = 1 + rep % 9
            increments = rng.standard_normal(n) if rep % 2 else rng.generator.standard_cauchy(n)
            path = GridPath.from_increments(increments, 1.0 / n)
            expected = [(f.g_index, f.d_index) for f in brute_force_faces(path)]
            actual = [(f.g_index, f.d_index) for f in convex_minorant(path)]
            self.assertEqual(actual, expected, f"replicate {rep}")

    def test_pruning_does_not_change_the_hull(self):
        path = path_sample(LevyModel.cauchy(), 1.0, 4096, RngStream(5))
        pruned = [f.as_row() for f in convex_minorant(path)]
        with override_settings(MINORANT_PRUNE_THRESHOLD=10 ** 9):
            exact = [f.as_row() for f in convex_minorant(path)]
        self.assertEqual(pruned, exact)

    def test_decomposition_invariants(self):
        for k, model in enumerate((LevyModel.brownian(), LevyModel.cauchy(), LevyModel.gamma())):
            path = path_sample(model, 1.0, 4096, RngStream(17, k))
            dec = convex_minorant(path)
            self.assertEqual(dec.t0, 0.0)
            self.assertAlmostEqual(dec.end, 1.0)
            for left, right in zip(dec.faces[:-1], dec.faces[1:]):
                self.assertEqual(left.d, right.g)
                self.assertLessEqual(left.slope, right.slope)
            self.assertGreaterEqual(np.min(path.values - dec.on_grid(path)), -1e-12 * path.scale)
            np.testing.assert_array_equal(dec.vertex_values, path.values[dec.vertex_indices])
            self.assertAlmostEqual(dec.lengths.sum(), 1.0)

    def test_slopes_strictly_increase_on_gaussian_walks(self):
        rng = RngStream(99)
        for _ in range(500):
            path = GridPath.from_increments(rng.standard_normal(64), 1.0 / 64)
            self.assertTrue(np.all(np.diff(convex_minorant(path).slopes) > 0))


class LogHullTests(SimpleTestCase):
    def test_matches_float_hull_on_positive_walks(self):
        rng = RngStream(31)
        for rep in range(300):
            steps = rng.exponential(1.0, 1 + rep % 40)
            expected = hull_indices(np.concatenate(([0.0], np.cumsum(steps))))
            self.assertEqual(log_hull_indices(np.log(steps)), expected, f"replicate {rep}")

    def test_single_step(self):
        self.assertEqual(log_hull_indices([-900.0]), [0, 1])

    def test_underflowed_steps_keep_their_order(self):
        # steps of exp(-800) and exp(-790) are both 0.0 as floats
        path = GridPath(0.0, 0.25, [0.0, 0.0, 0.0, 0.0, 1.0], log_steps=[-800.0, -790.0, -795.0, 0.0])
        self.assertEqual(convex_minorant(path).vertex_indices, [0, 1, 3, 4])

    def test_gamma_faces_survive_underflow(self):
        path = path_sample(LevyModel.gamma(), 1.0, 4096, RngStream(32))
        self.assertGreater(int(np.sum(np.exp(path.log_steps) == 0.0)), 0)
        dec = convex_minorant(path)
        indices = dec.vertex_indices
        log_slopes = [
            special.logsumexp(path.log_steps[i:j]) - np.log(j - i) for i, j in zip(indices[:-1], indices[1:])
        ]
        self.assertTrue(np.all(np.diff(log_slopes) > 0))
        self.assertAlmostEqual(dec.lengths.sum(), 1.0)
        self.assertAlmostEqual(dec.increments.sum(), path.terminal, places=9)

    def test_gamma_face_count_is_harmonic(self):
        counts = [len(convex_minorant(path_sample(LevyModel.gamma(), 1.0, 4096, RngStream(33, k))))
                  for k in range(400)]
        harmonic = float(np.sum(1.0 / np.arange(1, 4097)))
        self.assertLess(abs(np.mean(counts) - harmonic), 0.7)

    def test_log_steps_must_match_the_grid(self):
        with self.assertRaises(DomainError):
            GridPath(0.0, 0.5, [0.0, 1.0, 2.0], log_steps=[0.0])
        with self.assertRaises(NumericError):
            GridPath(0.0, 0.5, [0.0, 1.0, 2.0], log_steps=[0.0, np.nan])


class GeometryTests(SimpleTestCase):
    def setUp(self):
        self.v_shape = convex_minorant(GridPath(0.0, 0.5, [0.0, -1.0, 0.0]))

    def test_face_containing(self):
        self.assertEqual(face_containing(self.v_shape, 0.25).d, 0.5)
        self.assertEqual(face_containing(self.v_shape, 0.75).g, 0.5)
        single = convex_minorant(GridPath(0.0, 0.5, [0.0, 1.0, 0.0]))
        self.assertEqual(face_containing(single, 0.3), single.faces[0])

    def test_face_containing_errors(self):
        with self.assertRaises(VertexCollisionError):
            face_containing(self.v_shape, 0.5)
        with self.assertRaises(DomainError):
            face_containing(self.v_shape, 0.0)
        with self.assertRaises(DomainError):
            face_containing(self.v_shape, 1.2)

    def test_excursion_on_face(self):
        path = GridPath(0.0, 0.5, [0.0, -1.0, 0.0])
        np.testing.assert_array_equal(excursion(path, self.v_shape.faces[0]).values, [0.0, 0.0])

    def test_excursion_of_linear_path_is_zero(self):
        path = GridPath(0.0, 0.25, [0.0, 0.5, 1.0, 1.5, 2.0])
        dec = convex_minorant(path)
        np.testing.assert_allclose(excursion(path, dec.faces[0]).values, 0.0, atol=1e-15)

    def test_brownian_excursions_are_nonnegative(self):
        path = path_sample(LevyModel.brownian(), 1.0, 4096, RngStream(3))
        for face in convex_minorant(path):
            values = excursion(path, face).values
            self.assertGreaterEqual(values.min(), -1e-12)
            self.assertEqual(values[0], 0.0)
            self.assertEqual(values[-1], 0.0)
            if face.d_index - face.g_index > 1:
                self.assertGreater(values.max(), 0.0)

    def test_excursion_alignment(self):
        path = GridPath(0.0, 0.5, [0.0, -1.0, 0.0])
        with self.assertRaises(AlignmentError):
            excursion(path, Face.from_increment(0.1, 0.4, 1.0))

    def test_right_derivative(self):
        derivative = right_derivative(self.v_shape)
        self.assertEqual(derivative(0.1), -2.0)
        self.assertEqual(derivative(0.5), 2.0)
        self.assertEqual(derivative(0.9), 2.0)
        self.assertTrue(derivative.is_nondecreasing())
        single = right_derivative(convex_minorant(GridPath(0.0, 0.5, [0.0, 1.0, 0.0])))
        np.testing.assert_array_equal(single(np.array([0.0, 0.4, 0.99])), [0.0, 0.0, 0.0])

    def test_slope_passage(self):
        self.assertEqual(slope_passage(self.v_shape, -5.0), 0.0)
        self.assertEqual(slope_passage(self.v_shape, 5.0), 1.0)
        self.assertEqual(slope_passage(self.v_shape, 0.0), 0.5)
        self.assertEqual(slope_passage(self.v_shape, 2.0), 1.0)

    def test_slope_passage_is_monotone(self):
        dec = convex_minorant(path_sample(LevyModel.cauchy(), 1.0, 1024, RngStream(8)))
        passages = [slope_passage(dec, x) for x in np.linspace(-20, 20, 401)]
        self.assertTrue(np.all(np.diff(passages) >= 0))

    def test_ranked_lengths(self):
        dec = _decomposition([0.2, 0.5, 0.3], [-0.4, 0.1, 0.9])
        np.testing.assert_allclose(ranked_lengths(dec), [0.5, 0.3, 0.2])
        single = convex_minorant(GridPath(0.0, 0.5, [0.0, 1.0, 0.0]))
        np.testing.assert_array_equal(ranked_lengths(single), [1.0])

    def test_argmin(self):
        self.assertEqual(argmin(GridPath(0.0, 0.5, [0.0, -1.0, 0.0])), (0.5, -1.0))
        self.assertEqual(argmin(GridPath(0.0, 0.5, [0.0, 1.0, 2.0])), (0.0, 0.0))
        self.assertEqual(argmin(GridPath(0.0, 1.0 / 3, [0.0, -1.0, -1.0, 0.0]))[0], 2.0 / 3)

    def test_contact_fraction_shrinks_with_resolution(self):
        coarse = np.mean([
            contact_fraction(path, convex_minorant(path))
            for path in (path_sample(LevyModel.brownian(), 1.0, 256, RngStream(6, k)) for k in range(20))
        ])
        fine = np.mean([
            contact_fraction(path, convex_minorant(path))
            for path in (path_sample(LevyModel.brownian(), 1.0, 4096, RngStream(7, k)) for k in range(20))
        ])
        self.assertLess(fine, coarse)
