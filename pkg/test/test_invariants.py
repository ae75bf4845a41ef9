# coding=utf-8
"""Automorphism, group and fixed subalgebra tests.

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

from dg_core import DGAlgebra
from errors import OrderBoundExceeded
from families import DownUpParams, make_down_up, preset, xi_field
from invariants import (
    AlgebraMorphism,
    diagonal_character_count,
    fixed_subalgebra,
    group_closure,
    induced_group_on_H,
    reynolds_report,
    validate_automorphism,
    verify_prop_equal,
)
from presented_algebra import FreeSpec, NcPolynomial, PresentedAlgebra
from scalars_linalg import make_field

LOGGER = logging.getLogger("DGInvariantToolkit")
SLOW = bool(os.environ.get("DG_TOOLKIT_SLOW_TESTS"))


def polynomial_ring(field):
    spec = FreeSpec(("x", "y"), (1, 1))
    x = NcPolynomial.generator(spec, field, "x")
    y = NcPolynomial.generator(spec, field, "y")
    return PresentedAlgebra(spec, field, [x * y - y * x], name="k[x,y]")


class AutomorphismTest(unittest.TestCase):
    """Morphisms given on generators."""

    def setUp(self):
        """Runs before each test."""
        self.dg = preset("A1")
        self.A = self.dg.algebra
        self.F = self.dg.field

    def test_sign_change_is_a_dg_automorphism(self):
        """x -> x, y -> -y commutes with d(x) = y^2."""
        sigma = AlgebraMorphism.diagonal(self.A, [1, -1], name="g")
        report = validate_automorphism(self.dg, sigma, 6)
        self.assertTrue(report.passed, report.summary())

    def test_scaling_breaks_the_differential(self):
        """x -> 2x, y -> y does not commute with d."""
        sigma = AlgebraMorphism.diagonal(self.A, [2, 1])
        report = validate_automorphism(self.dg, sigma, 6)
        self.assertFalse(report.passed)
        failed = [c.name for c in report.failures()]
        self.assertEqual(failed, ["commutes with d"])

    def test_negating_both_generators_breaks_the_differential(self):
        """x -> -x, y -> -y sends d(x) = y^2 to y^2 but d(-x) = -y^2."""
        sigma = AlgebraMorphism.diagonal(self.A, [-1, -1])
        report = validate_automorphism(self.dg, sigma, 6)
        self.assertFalse(report.passed)
        failed = [c.name for c in report.failures()]
        self.assertEqual(failed, ["commutes with d"])

    def test_matrices_compose(self):
        """Matrices of a composite are products of matrices."""
        xi = self.F.generator
        s = AlgebraMorphism.diagonal(self.A, [xi**2, xi])
        t = AlgebraMorphism.diagonal(self.A, [1, -1])
        st = s.compose(t)
        for n in range(5):
            self.assertEqual(st.matrix(n), s.matrix(n) @ t.matrix(n))
        self.assertTrue(AlgebraMorphism.identity(self.A).is_identity())

    def test_apply(self):
        """apply substitutes generator images."""
        x, y = self.A.generators
        sigma = AlgebraMorphism.diagonal(self.A, [1, -1])
        self.assertEqual(sigma.apply(x * y), -(x * y))


class GroupTest(unittest.TestCase):
    """Closure of generators into a finite group."""

    def setUp(self):
        """Runs before each test."""
        self.F = xi_field()
        self.A = polynomial_ring(self.F)
        xi = self.F.generator
        self.rho = AlgebraMorphism.diagonal(self.A, [xi, xi**2], name="r")

    def test_cyclic_group(self):
        """diag(xi, xi^2) generates a group of order three."""
        group = group_closure(self.A, [self.rho])
        self.assertEqual(group.order, 3)
        self.assertEqual(group.names, ["e", "r", "r^2"])
        self.assertEqual(group.product(1, 2), 0)
        self.assertEqual(group.inverse(1), 2)

    def test_trivial_group(self):
        """No generators give the trivial group."""
        group = group_closure(self.A, [])
        self.assertEqual(group.order, 1)

    def test_order_bound(self):
        """Closures larger than the bound are refused."""
        with self.assertRaises(OrderBoundExceeded):
            group_closure(self.A, [self.rho], bound=2)


class FixedSubalgebraTest(unittest.TestCase):
    """Reynolds projector and fixed subalgebras."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")
        self.A = polynomial_ring(self.Q)
        minus = AlgebraMorphism.diagonal(self.A, [-1, -1], name="m")
        self.group = group_closure(self.A, [minus])

    def test_even_veronese(self):
        """k[x, y]^{-1} is spanned by the even degree monomials."""
        view = fixed_subalgebra(self.A, self.group, 5)
        self.assertEqual(list(view.hilbert()), [1, 0, 3, 0, 5, 0])
        for n in range(6):
            self.assertEqual(
                view.dim(n), diagonal_character_count(self.A, [1, 1], 2, n)
            )

    def test_reynolds_report(self):
        """P is an idempotent G-invariant chain map."""
        report = reynolds_report(self.A, self.group, 5)
        self.assertTrue(report.passed, report.summary())
        fixed_dims = list(report.tables["fixed_dims"]["dim_A^G"])
        self.assertEqual(fixed_dims, [1, 0, 3, 0, 5, 0])

    def test_fixed_cohomology_matches_invariant_cohomology(self):
        """H(A^G) = H(A)^H(G) on the first preset."""
        dg = preset("A1")
        sigma = AlgebraMorphism.diagonal(dg.algebra, [1, -1], name="g")
        group = group_closure(dg, [sigma])
        report = verify_prop_equal(dg, group, 7)
        self.assertTrue(report.passed, report.summary())
        dims = list(report.tables["fixed_dims"]["dim_H(A^G)"])
        self.assertEqual(dims, [1, 0, 0, 1, 1, 0, 0])

    def test_fixed_cohomology_other_groups(self):
        """H(A^G) = H(A)^H(G) for C3 on A1 and for -1 on A(1, 1)."""
        dg = preset("A1")
        xi = dg.field.generator
        rho = AlgebraMorphism.diagonal(dg.algebra, [xi**2, xi], name="r")
        report = verify_prop_equal(dg, group_closure(dg, [rho]), 6)
        self.assertTrue(report.passed, report.summary())
        generic = make_down_up(DownUpParams(self.Q, 1, 1))
        minus = AlgebraMorphism.diagonal(generic.algebra, [-1, -1], name="m")
        report = verify_prop_equal(generic, group_closure(generic, [minus]), 6)
        self.assertTrue(report.passed, report.summary())

    def test_fixed_cohomology_trivial_group(self):
        """The trivial group fixes all of A and all of H(A)."""
        dg = preset("A1")
        group = group_closure(dg, [])
        report = verify_prop_equal(dg, group, 6)
        self.assertTrue(report.passed, report.summary())
        table = report.tables["fixed_dims"]
        self.assertEqual(list(table["dim_A^G"]), [dg.dim(n) for n in range(6)])

    def test_induced_action_is_a_representation(self):
        """H(g) H(h) = H(gh) and H(e) is the identity."""
        dg = DGAlgebra.with_zero_differential(self.A)
        action = induced_group_on_H(dg, self.group, 4)
        self.assertTrue(action[0][2].is_identity())
        self.assertEqual(action[1][1].trace(), -2)

@unittest.skipUnless(SLOW, "set DG_TOOLKIT_SLOW_TESTS to run")
class FullWindowTest(unittest.TestCase):
    """Fixed subalgebra checks through degree 10."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")
        self.a1 = preset("A1")
        xi = self.a1.field.generator
        sign = AlgebraMorphism.diagonal(self.a1.algebra, [1, -1], name="g")
        rho = AlgebraMorphism.diagonal(self.a1.algebra, [xi**2, xi], name="r")
        self.generic = make_down_up(DownUpParams(self.Q, 1, 1))
        minus = AlgebraMorphism.diagonal(self.generic.algebra, [-1, -1], name="m")
        self.cases = [
            (self.a1, group_closure(self.a1, [])),
            (self.a1, group_closure(self.a1, [sign])),
            (self.a1, group_closure(self.a1, [rho])),
            (self.generic, group_closure(self.generic, [minus])),
        ]

    def test_fixed_cohomology_through_degree_ten(self):
        """H(A^G) = H(A)^H(G) in every degree n <= 10."""
        for dg, group in self.cases:
            with self.subTest(algebra=repr(dg), order=group.order):
                report = verify_prop_equal(dg, group, 11)
                self.assertTrue(report.passed, report.summary())
                self.assertEqual(len(report.tables["fixed_dims"]), 11)

    def test_reynolds_through_degree_ten(self):
        """The projector identities hold through degree 10 for every group."""
        ring = polynomial_ring(self.Q)
        minus = AlgebraMorphism.diagonal(ring, [-1, -1], name="m")
        F = xi_field()
        cyclic = polynomial_ring(F)
        xi = F.generator
        r = AlgebraMorphism.diagonal(cyclic, [xi, xi**2], name="r")
        cases = self.cases + [
            (ring, group_closure(ring, [minus])),
            (cyclic, group_closure(cyclic, [r])),
        ]
        for dg, group in cases:
            with self.subTest(algebra=repr(dg), order=group.order):
                report = reynolds_report(dg, group, 10)
                self.assertTrue(report.passed, report.summary())



if __name__ == "__main__":
    unittest.main()
