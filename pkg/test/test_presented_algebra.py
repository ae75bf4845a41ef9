# coding=utf-8
"""Presented graded algebra tests.

.. note:: This program is free software; you can redistribute it and/or modify
     it under the terms of the GNU General Public License as published by
     the Free Software Foundation; either version 2 of the License, or
     (at your option) any later version.

"""

__author__ = "DGInvariantToolkit authors"
__date__ = "2026-10-18"
__copyright__ = "Copyright 2026, the DGInvariantToolkit authors"

import logging
import unittest

import numpy as np

from errors import CacheCorrupt, InhomogeneousRelation
from families import down_up_algebra, preset, xi_field
from presented_algebra import (
    FreeSpec,
    NcPolynomial,
    PresentedAlgebra,
    free_algebra,
    tensor_product,
)
from scalars_linalg import make_field

LOGGER = logging.getLogger("DGInvariantToolkit")


def polynomial_ring(field, order="deglex"):
    spec = FreeSpec(("x", "y"), (1, 1))
    x = NcPolynomial.generator(spec, field, "x")
    y = NcPolynomial.generator(spec, field, "y")
    return PresentedAlgebra(spec, field, [x * y - y * x], order=order, name="k[x,y]")


class PresentedAlgebraTest(unittest.TestCase):
    """Normal words, dimensions and products."""

    def setUp(self):
        """Runs before each test."""
        self.Q = make_field("t")
        self.A = polynomial_ring(self.Q)
        self.x, self.y = self.A.generators

    def test_word_count(self):
        """Words in the free algebra on two degree one letters."""
        spec = FreeSpec(("x", "y"), (1, 1))
        self.assertEqual(spec.word_count(3), 8)
        self.assertEqual(FreeSpec(("a", "b"), (1, 2)).word_count(4), 5)

    def test_polynomial_ring_dimensions(self):
        """k[x, y] has n + 1 monomials in degree n, in both word orders."""
        self.assertEqual(list(self.A.hilbert(5)), [1, 2, 3, 4, 5, 6])
        other = polynomial_ring(self.Q, order="degrevlex")
        self.assertEqual(list(other.hilbert(5)), [1, 2, 3, 4, 5, 6])

    def test_down_up_dimensions(self):
        """A(xi - 1, xi) has Hilbert series 1/((1-t)^2 (1-t^2))."""
        F = xi_field()
        xi = F.generator
        A = down_up_algebra(F, xi - 1, xi)
        self.assertEqual(list(A.hilbert(6)), [1, 2, 4, 6, 9, 12, 16])

    def test_membership(self):
        """xy - yx lies in the ideal, xy does not."""
        x, y = self.x, self.y
        self.assertTrue(self.A.in_ideal(x * y - y * x))
        self.assertTrue(self.A.in_ideal(x * x * y - y * x * x))
        self.assertFalse(self.A.in_ideal(x * y))

    def test_products_agree_with_normal_forms(self):
        """multiply, multiply_vectors and structure constants agree."""
        A, x, y = self.A, self.x, self.y
        expected = A.normal_form(y * x * x)
        self.assertEqual(list(A.multiply(x * y, x)), list(expected))
        u, v = A.normal_form(x * y), A.normal_form(x)
        self.assertEqual(list(A.multiply_vectors(2, u, 1, v)), list(expected))
        tensor = A.structure_constants(1, 1)
        self.assertEqual(tensor.shape, (3, 2, 2))
        self.assertEqual(list(tensor[:, 0, 1]), list(tensor[:, 1, 0]))

    def test_reduce_gives_normal_words(self):
        """The reduced form of yx is a single normal word."""
        reduced = self.A.reduce(self.y * self.x)
        self.assertEqual(len(reduced.terms), 1)
        self.assertIn(reduced.words()[0], self.A.degree_basis(2))
        self.assertEqual(
            list(self.A.normal_form(reduced)),
            list(self.A.normal_form(self.x * self.y)),
        )

    def test_inhomogeneous_relation(self):
        """Relations must be homogeneous."""
        spec = FreeSpec(("x",), (1,))
        x = NcPolynomial.generator(spec, self.Q, "x")
        with self.assertRaises(InhomogeneousRelation):
            PresentedAlgebra(spec, self.Q, [x * x - x])

    def test_polynomial_printing(self):
        """Words print with powers and signed coefficients."""
        x, y = self.x, self.y
        self.assertEqual(str(x * x * y * 2 - y * x * x), "2*x^2*y - y*x^2")
        self.assertEqual(str(x - x), "0")

    def test_state_round_trip(self):
        """Exported degree data restores an equal algebra."""
        self.A.warm_up(5)
        state = self.A.export_state()
        fresh = polynomial_ring(self.Q)
        fresh.load_state(state)
        self.assertEqual(fresh.warmed_degree, 5)
        self.assertEqual(list(fresh.hilbert(5)), [1, 2, 3, 4, 5, 6])
        p = self.x * self.y * self.y
        self.assertEqual(list(fresh.normal_form(p)), list(self.A.normal_form(p)))

    def test_state_mismatch(self):
        """Cached data for another algebra or malformed data is refused."""
        state = self.A.warm_up(3).export_state()
        other = free_algebra(("x", "y"), (1, 1), self.Q)
        with self.assertRaises(CacheCorrupt):
            other.load_state(state)
        state["degrees"][0]["ideal_dim"] = "many"
        with self.assertRaises(CacheCorrupt):
            polynomial_ring(self.Q).load_state(state)

    def test_tensor_product(self):
        """k[x] (x) k[y] is k[x, y]."""
        a = free_algebra(("x",), (1,), self.Q, name="k[x]")
        b = free_algebra(("y",), (1,), self.Q, name="k[y]")
        product = tensor_product(a, b, check_degree=5)
        self.assertEqual(list(product.hilbert(5)), [1, 2, 3, 4, 5, 6])

def random_element(algebra, degree, rng):
    """A homogeneous element with small random coefficients on all words."""
    F = algebra.field
    xi = F.generator
    terms = {
        word: F(int(a)) + F(int(b)) * xi
        for word, (a, b) in zip(
            algebra.spec.words(degree),
            rng.integers(-2, 3, size=(algebra.spec.word_count(degree), 2)),
        )
    }
    return NcPolynomial(algebra.spec, F, terms)


class NormalFormPropertyTest(unittest.TestCase):
    """Normal forms and products on random elements of A(xi - 1, xi)."""

    def setUp(self):
        """Runs before each test."""
        F = xi_field()
        xi = F.generator
        self.A = down_up_algebra(F, xi - 1, xi)
        self.rng = np.random.default_rng(11)

    def test_normal_form_is_idempotent(self):
        """Reducing a reduced element gives it back."""
        for degree in range(1, 6):
            for _ in range(5):
                p = random_element(self.A, degree, self.rng)
                reduced = self.A.reduce(p, degree)
                self.assertEqual(self.A.reduce(reduced, degree), reduced)
                self.assertEqual(
                    list(self.A.normal_form(reduced, degree)),
                    list(self.A.normal_form(p, degree)),
                )
                for word in reduced.words():
                    self.assertIn(word, self.A.degree_basis(degree))

    def test_multiply_is_associative(self):
        """(uv)w = u(vw) on random triples."""
        A = self.A
        for _ in range(10):
            a, b, c = (int(v) for v in self.rng.integers(1, 4, size=3))
            u, v, w = (
                A.normal_form(random_element(A, n, self.rng), n) for n in (a, b, c)
            )
            left = A.multiply_vectors(a + b, A.multiply_vectors(a, u, b, v), c, w)
            right = A.multiply_vectors(a, u, b + c, A.multiply_vectors(b, v, c, w))
            self.assertEqual(list(left), list(right))

    def test_multiply_matches_free_products(self):
        """multiply of random elements is the normal form of their product."""
        A = self.A
        p = random_element(A, 2, self.rng)
        q = random_element(A, 3, self.rng)
        reduced = A.multiply(A.reduce(p, 2), A.reduce(q, 3))
        self.assertEqual(list(reduced), list(A.normal_form(p * q, 5)))

    def test_word_orders_agree_on_presets(self):
        """deglex and degrevlex give the same Hilbert function."""
        for name in ("A1", "A2", "A3"):
            with self.subTest(preset=name):
                lex = preset(name).algebra.hilbert(8)
                revlex = preset(name, order="degrevlex").algebra.hilbert(8)
                self.assertEqual(list(lex), list(revlex))



if __name__ == "__main__":
    unittest.main()
