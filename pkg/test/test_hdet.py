# coding=utf-8
"""Homological determinant tests.

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

from errors import NotGorensteinWindow
from families import down_up_algebra, preset
from hdet import (
    CohomologyData,
    GorensteinWindow,
    Hdet_dg,
    hdet_character,
    hdet_graded,
    scan_diagonal_hdet_one,
    theorem_d_check,
)
from invariants import AlgebraMorphism, group_closure
from presented_algebra import FreeSpec, NcPolynomial, PresentedAlgebra, free_algebra
from resolution_ext import GradedAlgebraData, GradedAutomorphism
from scalars_linalg import make_field

LOGGER = logging.getLogger("DGInvariantToolkit")
SLOW = bool(os.environ.get("DG_TOOLKIT_SLOW_TESTS"))


def polynomial_ring(field, order="deglex"):
    spec = FreeSpec(("x", "y"), (1, 1))
    x = NcPolynomial.generator(spec, field, "x")
    y = NcPolynomial.generator(spec, field, "y")
    return PresentedAlgebra(spec, field, [x * y - y * x], order=order, name="k[x,y]")


def graded(algebra, sigma, D):
    B = GradedAlgebraData.from_presented(algebra, D)
    return B, GradedAutomorphism.from_morphism(B, sigma)


class HdetGradedTest(unittest.TestCase):
    """hdet of graded automorphisms of AS-Gorenstein algebras."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")

    def test_scaling_one_variable(self):
        """x -> 2x on k[x] has hdet 2."""
        A = free_algebra(("x",), (1,), self.Q)
        sigma = AlgebraMorphism.diagonal(A, [2])
        B, tau = graded(A, sigma, 8)
        result = hdet_graded(B, tau, L=2)
        self.assertEqual(result.scalar, 2)
        self.assertEqual(result.alternate, self.Q(1) / 2)
        self.assertEqual((result.d, result.l), (1, 1))

    def test_exterior_algebra(self):
        """b -> 3b on k[b]/(b^2) has hdet 1/3."""
        spec = FreeSpec(("b",), (1,))
        b = NcPolynomial.generator(spec, self.Q, "b")
        A = PresentedAlgebra(spec, self.Q, [b * b])
        B, tau = graded(A, AlgebraMorphism.diagonal(A, [3]), 8)
        self.assertEqual(hdet_graded(B, tau, L=2).scalar, self.Q(1) / 3)

    def test_swap(self):
        """x <-> y on k[x, y] has hdet -1 in both word orders."""
        for order in ("deglex", "degrevlex"):
            A = polynomial_ring(self.Q, order)
            x, y = A.generators
            B, tau = graded(A, AlgebraMorphism(A, [y, x], name="swap"), 8)
            result = hdet_graded(B, tau, L=3)
            self.assertEqual(result.scalar, -1, order)
            self.assertEqual(result.to_dict()["element"], "swap")
            self.assertTrue(result.certificates)

    def test_diagonal_on_polynomial_ring(self):
        """diag(2, 5) on k[x, y] has hdet 10."""
        A = polynomial_ring(self.Q)
        B, tau = graded(A, AlgebraMorphism.diagonal(A, [2, 5]), 8)
        self.assertEqual(hdet_graded(B, tau, L=3).scalar, 10)

    def test_down_up_algebra(self):
        """diag(2, 3) on A(0, 1) has hdet 2^2 3^2."""
        A = down_up_algebra(self.Q, 0, 1)
        B, tau = graded(A, AlgebraMorphism.diagonal(A, [2, 3]), 8)
        self.assertEqual(hdet_graded(B, tau, L=3).scalar, 36)

    def test_window_must_be_gorenstein(self):
        """The free algebra has no Gorenstein window."""
        B = GradedAlgebraData.from_presented(
            free_algebra(("x", "y"), (1, 1), self.Q), 6
        )
        with self.assertRaises(NotGorensteinWindow):
            GorensteinWindow.probe(B, 2)


class HdetDGTest(unittest.TestCase):
    """Hdet of DG automorphisms of the first preset."""

    def setUp(self):
        """Runs before each test."""
        self.dg = preset("A1")
        self.F = self.dg.field
        self.xi = self.F.generator
        self.data = CohomologyData(self.dg, 10, 3)

    def test_sign_change(self):
        """diag(1, -1) acts by -1 on u and w, so Hdet is 1."""
        sigma = AlgebraMorphism.diagonal(self.dg.algebra, [1, -1])
        self.assertEqual(Hdet_dg(self.dg, sigma, 10, 3, self.data).scalar, 1)

    def test_cube_root_scaling(self):
        """diag(xi^2, xi) fixes w and scales u by xi, so Hdet is xi^2."""
        sigma = AlgebraMorphism.diagonal(self.dg.algebra, [self.xi**2, self.xi])
        result = Hdet_dg(self.dg, sigma, 10, 3, self.data)
        self.assertEqual(result.scalar, self.xi**2)
        self.assertEqual(result.alternate, self.xi)

    def test_lift_choice_does_not_matter(self):
        """Shifting the lift by cycles leaves hdet unchanged."""
        sigma = AlgebraMorphism.diagonal(self.dg.algebra, [self.xi**2, self.xi])
        tau = self.data.induced_automorphism(sigma)
        result = hdet_graded(
            self.data.algebra, tau, window=self.data.window, kernel_shift=True
        )
        self.assertEqual(result.scalar, self.xi**2)

    def test_character_is_multiplicative(self):
        """Hdet on the cyclic group of order three."""
        sigma = AlgebraMorphism.diagonal(
            self.dg.algebra, [self.xi**2, self.xi], name="r"
        )
        group = group_closure(self.dg, [sigma])
        report, results = hdet_character(self.dg, group, 10, 3, self.data)
        self.assertTrue(report.passed, report.summary())
        self.assertEqual(
            [r.scalar for r in results], [1, self.xi**2, self.xi]
        )
        self.assertEqual(report.facts["hdet_one"], ["e"])
        self.assertEqual(len(report.tables["hdet"]), 3)

    def test_scan_finds_sign_change(self):
        """The first diagonal hit on A1 is diag(1, -1)."""
        hit = scan_diagonal_hdet_one(self.dg, 10, 3, data=self.data)
        self.assertIsNotNone(hit)
        self.assertEqual(hit.weights, (1, -1))
        self.assertEqual(hit.group.order, 2)
        self.assertEqual(hit.hdet.scalar, 1)


class TheoremDCheckTest(unittest.TestCase):
    """The Hdet-1 criterion end to end."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")
        self.A = polynomial_ring(self.Q)

    def test_minus_identity(self):
        """diag(-1, -1) has Hdet 1; the Veronese is Gorenstein (2, 2)."""
        sigma = AlgebraMorphism.diagonal(self.A, [-1, -1], name="m")
        group = group_closure(self.A, [sigma])
        report = theorem_d_check(self.A, group, 10, 3)
        self.assertTrue(report.passed, report.summary())
        self.assertTrue(report.facts["theorem_applies"])
        self.assertEqual(report.facts["fixed_probe"]["kind"], "ConsistentASGorenstein")

    def test_reflection(self):
        """diag(-1, 1) has Hdet -1 and the criterion does not apply."""
        sigma = AlgebraMorphism.diagonal(self.A, [-1, 1], name="s")
        group = group_closure(self.A, [sigma])
        report = theorem_d_check(self.A, group, 8, 3)
        self.assertFalse(report.facts["theorem_applies"])
        self.assertNotIn("conclusion", report.facts)

    @unittest.skipUnless(SLOW, "set DG_TOOLKIT_SLOW_TESTS to run")
    def test_scan_then_criterion_on_first_preset(self):
        """The scan hit on A1 satisfies the criterion; H(A^G) is never refuted."""
        dg = preset("A1")
        hit = scan_diagonal_hdet_one(dg, 12, 4)
        report = theorem_d_check(dg, hit.group, 12, 4)
        self.assertTrue(report.facts["theorem_applies"])
        self.assertNotEqual(report.facts["fixed_probe"]["kind"], "Refuted")


if __name__ == "__main__":
    unittest.main()
