# coding=utf-8
"""DG algebra, cohomology and Kunneth tests.

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
from unittest import mock

from dg_core import DGAlgebra, check_presentation, cohomology, tensor_dg, validate_dg
from errors import DegreeMismatch, TruncationTooSmall
from families import (
    DownUpParams,
    down_up_algebra,
    make_down_up,
    preset,
    preset_presentation,
    xi_field,
)
from presented_algebra import (
    FreeSpec,
    NcPolynomial,
    PresentedAlgebra,
    free_algebra,
    tensor_product,
)
from scalars_linalg import make_field

LOGGER = logging.getLogger("DGInvariantToolkit")
SLOW = bool(os.environ.get("DG_TOOLKIT_SLOW_TESTS"))


class DGAlgebraTest(unittest.TestCase):
    """Differentials and their validation."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")

    def test_leibniz_sign(self):
        """d(x) = x^2 on k<x> with |x| = 1 gives d(x^2) = 0."""
        A = free_algebra(("x",), (1,), self.Q)
        (x,) = A.generators
        dg = DGAlgebra(A, [x * x])
        self.assertFalse(dg.apply(x * x))
        self.assertEqual(dg.apply(x * x * x), x * x * x * x)
        self.assertTrue(validate_dg(dg, 5).passed)

    def test_wrong_degree(self):
        """d must raise the degree by one."""
        A = free_algebra(("x",), (1,), self.Q)
        (x,) = A.generators
        with self.assertRaises(DegreeMismatch):
            DGAlgebra(A, [x])

    def test_differential_not_preserving_relations(self):
        """d(x) = x^2, d(y) = 0 does not descend to A(xi - 1, xi)."""
        F = xi_field()
        xi = F.generator
        A = down_up_algebra(F, xi - 1, xi)
        x, y = A.generators
        report = validate_dg(DGAlgebra(A, [x * x, None]), 5)
        self.assertFalse(report.passed)
        self.assertEqual(report.verdict, "FAIL")
        failed = [c.name for c in report.failures()]
        self.assertIn("d(relation 1) lies in the ideal", failed)

    def test_presets_validate(self):
        """The built-in presets are DG algebras."""
        for name in ("A1", "A2", "A3"):
            self.assertTrue(validate_dg(preset(name), 6).passed, name)

    @unittest.skipUnless(SLOW, "set DG_TOOLKIT_SLOW_TESTS to run")
    def test_presets_validate_through_twelve(self):
        """Presets and the down-up constructors stay DG algebras through 12."""
        F = xi_field()
        xi = F.generator
        algebras = [preset(name) for name in ("A1", "A2", "A3")]
        algebras.append(make_down_up(DownUpParams(F, xi - 1, xi, c=0, d=xi)))
        algebras.append(make_down_up(DownUpParams(self.Q, 0, 1, case_c=(0,) * 6)))
        for dg in algebras:
            with self.subTest(algebra=repr(dg)):
                report = validate_dg(dg, 12)
                self.assertTrue(report.passed, report.summary())


class CohomologyTest(unittest.TestCase):
    """Cohomology dimensions, products and presentations."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")

    def test_zero_differential(self):
        """With d = 0 the cohomology is the algebra."""
        spec = FreeSpec(("x",), (1,))
        x = NcPolynomial.generator(spec, self.Q, "x")
        A = PresentedAlgebra(spec, self.Q, [x * x])
        view = cohomology(DGAlgebra.with_zero_differential(A), 5)
        self.assertEqual(view.dims, (1, 1, 0, 0, 0))
        self.assertEqual(view.valid_through, 4)

    def test_truncation_too_small(self):
        """At least two degrees are needed."""
        A = free_algebra(("x",), (1,), self.Q)
        with self.assertRaises(TruncationTooSmall):
            cohomology(DGAlgebra.with_zero_differential(A), 1)

    def test_acyclic_free_algebra(self):
        """k<x, y> with d(x) = y is acyclic above degree zero."""
        A = free_algebra(("x", "y"), (1, 2), self.Q)
        x, y = A.generators
        view = cohomology(DGAlgebra(A, [y, None]), 6)
        self.assertEqual(view.dims, (1, 0, 0, 0, 0, 0))

    def test_cohomology_of_first_preset(self):
        """H(A1) is one dimensional in every degree."""
        view = cohomology(preset("A1"), 8)
        self.assertEqual(view.dims, (1,) * 8)
        frame = view.to_frame()
        self.assertEqual(list(frame["dim_H"]), [1] * 8)
        tensor = view.structure_constants(1, 1)
        self.assertEqual(tensor.shape, (1, 1, 1))
        self.assertFalse(tensor[0, 0, 0])

    def test_preset_presentations(self):
        """The recorded presentations of H(A1), H(A2), H(A3) hold."""
        for name in ("A1", "A2", "A3"):
            dg = preset(name)
            cocycles, relations = preset_presentation(dg)
            report = check_presentation(dg, cocycles, relations, 8)
            self.assertTrue(report.passed, report.summary())

    def test_wrong_presentation(self):
        """Dropping u^2 = 0 makes the Hilbert functions disagree."""
        dg = preset("A1")
        cocycles, relations = preset_presentation(dg)
        report = check_presentation(dg, cocycles, relations[:1], 6)
        self.assertFalse(report.passed)

    def test_kunneth(self):
        """dim H(A (x) A) is the convolution of dim H(A)."""
        D = 8 if SLOW else 6
        product, report = tensor_dg(preset("A1"), preset("A1"), D)
        self.assertTrue(report.passed, report.summary())
        self.assertEqual(len(product.spec), 4)
        self.assertEqual(list(report.tables["kunneth"]["H(A(x)B)"])[:3], [1, 2, 3])

    def test_kunneth_checks_the_whole_window(self):
        """The tensor algebra is compared with the convolution through D."""
        with mock.patch("dg_core.tensor_product", wraps=tensor_product) as spy:
            tensor_dg(preset("A1"), preset("A1"), 6)
        self.assertEqual(spy.call_args.kwargs["check_degree"], 6)


if __name__ == "__main__":
    unittest.main()
