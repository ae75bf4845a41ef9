# coding=utf-8
"""Minimal resolution, Ext and Gorenstein probe tests.

.. note:: This program is free software; you can redistribute it and/or modify
     it under the terms of the GNU General Public License as published by
     the Free Software Foundation; either version 2 of the License, or
     (at your option) any later version.

"""

__author__ = "DGInvariantToolkit authors"
__date__ = "2026-10-18"
__copyright__ = "Copyright 2026, the DGInvariantToolkit authors"

import logging
import os
import unittest

from dg_core import cohomology
from errors import NotAnHAutomorphism, WindowExhausted
from families import down_up_algebra, preset
from presented_algebra import FreeSpec, NcPolynomial, PresentedAlgebra, free_algebra
from resolution_ext import (
    ConsistentASGorenstein,
    GradedAlgebraData,
    GradedAutomorphism,
    Inconclusive,
    Refuted,
    ext_table,
    gorenstein_probe,
    minimal_resolution,
)
from scalars_linalg import ExactMatrix, make_field

LOGGER = logging.getLogger("DGInvariantToolkit")
SLOW = bool(os.environ.get("DG_TOOLKIT_SLOW_TESTS"))


def polynomial_ring(field, order="deglex"):
    spec = FreeSpec(("x", "y"), (1, 1))
    x = NcPolynomial.generator(spec, field, "x")
    y = NcPolynomial.generator(spec, field, "y")
    return PresentedAlgebra(spec, field, [x * y - y * x], order=order, name="k[x,y]")


class GradedAlgebraDataTest(unittest.TestCase):
    """Structure constants as graded data."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")
        self.B = GradedAlgebraData.from_presented(polynomial_ring(self.Q), 6)

    def test_dimensions_and_window(self):
        """Dimensions are known up to the window only."""
        self.assertEqual(self.B.dims, (1, 2, 3, 4, 5, 6, 7))
        self.assertEqual(self.B.dim(-1), 0)
        with self.assertRaises(ValueError):
            self.B.dim(7)

    def test_associative_with_generators(self):
        """The polynomial ring is associative and generated in degree 1."""
        self.assertTrue(self.B.check_associativity())
        self.assertEqual(self.B.generator_degrees(), [1, 1])

    def test_automorphism_checks(self):
        """Scalings that do not respect the product are refused."""
        k_x = GradedAlgebraData.from_presented(free_algebra(("x",), (1,), self.Q), 3)
        scaling = [ExactMatrix.from_rows(self.Q, [[2**n]]) for n in range(4)]
        self.assertEqual(GradedAutomorphism(k_x, scaling).matrix(2)[0, 0], 4)
        broken = [ExactMatrix.from_rows(self.Q, [[v]]) for v in (1, 2, 3, 8)]
        with self.assertRaises(NotAnHAutomorphism):
            GradedAutomorphism(k_x, broken)
        singular = [ExactMatrix.from_rows(self.Q, [[v]]) for v in (1, 0, 0, 0)]
        with self.assertRaises(NotAnHAutomorphism):
            GradedAutomorphism(k_x, singular)


class ResolutionTest(unittest.TestCase):
    """Minimal resolutions of the trivial module."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")

    def test_polynomial_ring(self):
        """k[x, y] has the Koszul resolution."""
        B = GradedAlgebraData.from_presented(polynomial_ring(self.Q), 8)
        resolution = minimal_resolution(B, 3)
        self.assertEqual(resolution.betti_degrees(1), (1, 1))
        self.assertEqual(resolution.betti_degrees(2), (2,))
        self.assertEqual(resolution.betti_degrees(3), ())
        for i in (1, 2):
            for n in range(1, 8):
                composite = resolution.differential(i, n) @ resolution.differential(
                    i + 1, n
                )
                self.assertTrue(composite.is_zero())

    def test_down_up_algebra(self):
        """A(0, 1) is resolved by F1 (1, 1), F2 (3, 3), F3 (4) in both orders."""
        for order in ("deglex", "degrevlex"):
            A = down_up_algebra(self.Q, 0, 1, order=order)
            resolution = minimal_resolution(GradedAlgebraData.from_presented(A, 8), 4)
            self.assertEqual(resolution.betti_degrees(1), (1, 1))
            self.assertEqual(resolution.betti_degrees(2), (3, 3))
            self.assertEqual(resolution.betti_degrees(3), (4,))
            self.assertEqual(resolution.betti_degrees(4), ())

    def test_step_callback(self):
        """Steps are reported and a False return cancels."""
        B = GradedAlgebraData.from_presented(polynomial_ring(self.Q), 6)
        steps = []
        minimal_resolution(B, 2, post_step_callback=lambda *s: steps.append(s))
        self.assertIn((1, 1, 2), steps)
        self.assertIn((2, 2, 1), steps)
        cancelled = minimal_resolution(B, 2, post_step_callback=lambda *s: False)
        self.assertEqual(cancelled.betti_degrees(1), (1, 1))
        self.assertTrue(all(cancelled.exhausted[1:]))

    def test_window_edge(self):
        """Generators near the window edge flag the spot."""
        B = GradedAlgebraData.from_presented(free_algebra(("w",), (6,), self.Q), 8)
        resolution = minimal_resolution(B, 2)
        self.assertTrue(resolution.exhausted[1])
        with self.assertRaises(WindowExhausted):
            minimal_resolution(B, 2, strict=True)


class GorensteinProbeTest(unittest.TestCase):
    """AS-Gorenstein verdicts from Ext(k, B)."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")

    def test_polynomial_in_one_variable(self):
        """k[x] is AS-Gorenstein with (d, l) = (1, 1)."""
        B = GradedAlgebraData.from_presented(free_algebra(("x",), (1,), self.Q), 8)
        self.assertEqual(gorenstein_probe(B, 3), ConsistentASGorenstein(1, 1))

    def test_polynomial_in_two_variables(self):
        """k[x, y] is AS-Gorenstein with (d, l) = (2, 2)."""
        B = GradedAlgebraData.from_presented(polynomial_ring(self.Q), 8)
        resolution = minimal_resolution(B, 4)
        table = ext_table(B, resolution, 3)
        self.assertEqual(table.nonzero(), [(2, -2, 1)])
        verdict = gorenstein_probe(B, 3, resolution=resolution, table=table)
        self.assertEqual(verdict, ConsistentASGorenstein(2, 2))
        self.assertTrue(verdict.passed)
        frame = table.to_frame()
        self.assertEqual(list(frame.columns), ["i", "j", "dim", "trusted"])

    def test_generator_in_degree_six(self):
        """k[w] with |w| = 6 has (d, l) = (1, 6)."""
        B = GradedAlgebraData.from_presented(free_algebra(("w",), (6,), self.Q), 12)
        self.assertEqual(gorenstein_probe(B, 2), ConsistentASGorenstein(1, 6))

    def test_exterior_algebra(self):
        """k[b]/(b^2) is AS-Gorenstein of injective dimension zero."""
        spec = FreeSpec(("b",), (1,))
        b = NcPolynomial.generator(spec, self.Q, "b")
        B = GradedAlgebraData.from_presented(PresentedAlgebra(spec, self.Q, [b * b]), 8)
        self.assertEqual(gorenstein_probe(B, 2), ConsistentASGorenstein(0, -1))

    def test_truncated_polynomial_near_the_window(self):
        """k[x]/(x^6) through degree 10 does not trust Ext^3.

        F_4 starts in degree 12, past the window, but its boundary x^5 lands
        in B_5. The socle x^5 gives (d, l) = (0, -5).
        """
        spec = FreeSpec(("x",), (1,))
        x = NcPolynomial.generator(spec, self.Q, "x")
        A = PresentedAlgebra(spec, self.Q, [x**6])
        B = GradedAlgebraData.from_presented(A, 10)
        resolution = minimal_resolution(B, 5)
        self.assertEqual(resolution.betti_degrees(2), (6,))
        self.assertEqual(resolution.betti_degrees(3), (7,))
        self.assertEqual(resolution.betti_degrees(4), ())
        self.assertEqual(resolution.reach, 5)
        self.assertEqual(resolution.exhausted, [False] * 3 + [True] * 3)
        table = ext_table(B, resolution, 4)
        self.assertFalse(table.trusted[(3, -7)])
        self.assertEqual(table.nonzero(), [(0, 5, 1)])
        verdict = gorenstein_probe(B, 4, resolution=resolution, table=table)
        self.assertEqual(verdict, ConsistentASGorenstein(0, -5))

    def test_free_algebra_is_refuted(self):
        """k<x, y> has Ext^0 = 0 and Ext^1 of dimension two."""
        free = free_algebra(("x", "y"), (1, 1), self.Q)
        B = GradedAlgebraData.from_presented(free, 6)
        verdict = gorenstein_probe(B, 2)
        self.assertIsInstance(verdict, Refuted)
        self.assertFalse(verdict.passed)
        self.assertEqual(verdict.to_dict()["kind"], "Refuted")

    def test_cohomology_of_first_preset(self):
        """H(A1) is AS-Gorenstein with (d, l) = (1, 1)."""
        B = GradedAlgebraData.from_cohomology(cohomology(preset("A1"), 10))
        resolution = minimal_resolution(B, 4)
        for i in range(1, 5):
            self.assertEqual(resolution.betti_degrees(i), (i, i + 1))
        verdict = gorenstein_probe(B, 3, resolution=resolution)
        self.assertEqual(verdict, ConsistentASGorenstein(1, 1))

    def test_cohomology_of_third_preset(self):
        """H(A3) = k[w] with |w| = 6 needs H through degree 12."""
        dg = preset("A3")
        small = GradedAlgebraData.from_cohomology(cohomology(dg, 12))
        self.assertEqual(small.max_degree, 11)
        self.assertIsInstance(gorenstein_probe(small, 2), Inconclusive)
        large = GradedAlgebraData.from_cohomology(cohomology(dg, 13))
        self.assertEqual(large.dims, (1,) + (0,) * 5 + (1,) + (0,) * 5 + (1,))
        self.assertEqual(gorenstein_probe(large, 2), ConsistentASGorenstein(1, 6))


if __name__ == "__main__":
    unittest.main()
