# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            DG automorphisms, finite groups of them, the Reynolds
         projector and the fixed DG subalgebra computed degreewise.

                              -------------------
        begin                : 2026-10-18
        git sha              : $Format:%H$
        copyright            : (C) 2026 by the DGInvariantToolkit authors
 ***************************************************************************/

/***************************************************************************
 *                                                                         *
 *   This program is free software; you can redistribute it and/or modify  *
 *   it under the terms of the GNU General Public License as published by  *
 *   the Free Software Foundation; either version 2 of the License, or     *
 *   (at your option) any later version.                                   *
 *                                                                         *
 ***************************************************************************/
"""

import logging

import numpy as np
import pandas as pd

from dg_core import DGAlgebra, cohomology
from errors import DegreeMismatch, InhomogeneousInput, InputError, OrderBoundExceeded
from presented_algebra import HilbertFunction
from reports import ValidationReport
from scalars_linalg import (
    ExactMatrix,
    NotInSpan,
    SpanSolver,
    image_basis,
    vector_key,
)

MESSAGE_CATEGORY = "DGInvariantToolkit"
LOGGER = logging.getLogger(MESSAGE_CATEGORY)

DEFAULT_GROUP_BOUND = 64


def _as_dg(algebra):
    if isinstance(algebra, DGAlgebra):
        return algebra
    return DGAlgebra.with_zero_differential(algebra)


class AlgebraMorphism:
    """A degree-preserving algebra endomorphism given on generators."""

    def __init__(self, algebra, images, name=None):
        spec, field = algebra.spec, algebra.field
        images = list(images)
        if len(images) != len(spec):
            raise InputError(f"{len(images)} images for {len(spec)} generators")
        for g, image in enumerate(images):
            if image.spec != spec or image.field != field:
                raise InputError(f"image of {spec.names[g]} is not an element of A")
            if not image.is_homogeneous():
                raise InhomogeneousInput(
                    f"image of {spec.names[g]} is not homogeneous: {image}"
                )
            if image and image.degree != spec.degrees[g]:
                raise DegreeMismatch(
                    f"image of {spec.names[g]} has degree {image.degree}, "
                    f"expected {spec.degrees[g]}"
                )
        self.algebra = algebra
        self.images = tuple(images)
        self.name = name
        self.image_vectors = tuple(
            algebra.normal_form(image, spec.degrees[g])
            for g, image in enumerate(images)
        )
        self._matrices = {}

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, algebra.generators, name="e")

    @classmethod
    def diagonal(cls, algebra, scalars, name=None):
        """x_i -> scalars[i] * x_i."""
        return cls(
            algebra,
            [g * c for g, c in zip(algebra.generators, scalars)],
            name=name,
        )

    def __repr__(self):
        if self.name:
            return f"AlgebraMorphism({self.name})"
        body = ", ".join(
            f"{n} -> {image}" for n, image in zip(self.algebra.spec.names, self.images)
        )
        return f"AlgebraMorphism({body})"

    @property
    def field(self):
        return self.algebra.field

    def key(self):
        return tuple(vector_key(v) for v in self.image_vectors)

    def apply(self, p):
        """sigma(p) in the free algebra."""
        if not p:
            return p
        return p.substitute(self.images)

    def matrix(self, n):
        """Matrix of sigma on the degree-n component."""
        matrix = self._matrices.get(n)
        if matrix is None:
            A = self.algebra
            spec = A.spec
            basis = A.degree_basis(n)
            matrix = ExactMatrix.zeros(self.field, len(basis), len(basis))
            for j, word in enumerate(basis):
                if not word:
                    matrix.entries[0, 0] = self.field.one
                    continue
                g = word[-1]
                m = n - spec.degrees[g]
                prefix = self.matrix(m).column(A.basis_index(m)[word[:-1]])
                matrix.entries[:, j] = A.multiply_vectors(
                    m, prefix, spec.degrees[g], self.image_vectors[g]
                )
            self._matrices[n] = matrix
        return matrix

    def apply_vector(self, n, vector):
        return self.matrix(n) @ vector

    def compose(self, other, name=None):
        """self o other."""
        A = self.algebra
        images = [
            A.element(A.spec.degrees[g], self.matrix(A.spec.degrees[g]) @ v)
            for g, v in enumerate(other.image_vectors)
        ]
        return AlgebraMorphism(A, images, name=name)

    def is_identity(self):
        return self.key() == AlgebraMorphism.identity(self.algebra).key()


def validate_automorphism(dg, sigma, D):
    """Relations preserved, chain map, invertible through degree D."""
    dg = _as_dg(dg)
    A = dg.algebra
    report = ValidationReport(f"{sigma!r} as an automorphism of {dg!r}")

    broken = []
    for r in A.relations:
        if r.degree <= D and not A.in_ideal(sigma.apply(r), r.degree):
            broken.append(str(r))
    report.add(
        "relations are preserved",
        not broken,
        "" if not broken else "sigma(r) not in the ideal for r = " + "; ".join(broken),
    )

    mismatched = []
    for g, generator in enumerate(A.generators):
        degree = A.spec.degrees[g] + 1
        if degree > D:
            continue
        difference = sigma.apply(dg.apply(generator)) - dg.apply(sigma.apply(generator))
        if not A.in_ideal(difference, degree):
            mismatched.append(
                f"sigma(d {A.spec.names[g]}) - d(sigma {A.spec.names[g]}) = "
                f"{A.reduce(difference, degree)}"
            )
    report.add("commutes with d", not mismatched, "; ".join(mismatched))

    if broken:
        report.add(f"invertible through degree {D}", None, "relations not preserved")
        return report
    singular = [n for n in range(1, D + 1) if sigma.matrix(n).rank() != A.dim(n)]
    report.add(
        f"invertible through degree {D}",
        not singular,
        "" if not singular else f"singular in degrees {singular}",
    )
    return report


class FiniteGroup:
    """A finite group of algebra automorphisms with its Cayley table.

    ``table[i, j]`` is the index of elements[i] o elements[j]; element 0 is
    the identity.
    """

    def __init__(self, algebra, elements, table):
        self.algebra = algebra
        self.elements = tuple(elements)
        self.table = table
        self.identity_index = 0
        self._matrices = {}
        order = len(self.elements)
        assert all(
            sorted(self.table[i]) == list(range(order)) for i in range(order)
        ), "Cayley table is not a Latin square"
        self._inverses = [
            int(np.flatnonzero(self.table[i] == 0)[0]) for i in range(order)
        ]

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    @property
    def names(self):
        return [e.name for e in self.elements]

    def inverse(self, i):
        return self._inverses[i]

    def product(self, i, j):
        return int(self.table[i, j])

    def matrices(self, n):
        """Degree-n matrices of every element, in element order."""
        matrices = self._matrices.get(n)
        if matrices is None:
            matrices = [e.matrix(n) for e in self.elements]
            self._matrices[n] = matrices
        return matrices


def _word_name(word):
    if not word:
        return "e"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j + 1 < len(word) and word[j + 1] == word[i]:
            j += 1
        run = j - i + 1
        parts.append(word[i] if run == 1 else f"{word[i]}^{run}")
        i = j + 1
    return "*".join(parts)


def group_closure(dg, generators, bound=DEFAULT_GROUP_BOUND):
    """Close ``generators`` under composition; identity first."""
    algebra = dg.algebra if isinstance(dg, DGAlgebra) else dg
    generators = list(generators)
    names = [s.name or f"s{k}" for k, s in enumerate(generators, start=1)]
    identity = AlgebraMorphism.identity(algebra)
    elements = [identity]
    index = {identity.key(): 0}
    frontier = [(identity, ())]
    while frontier:
        next_frontier = []
        for element, word in frontier:
            for name, s in zip(names, generators):
                product = s.compose(element)
                key = product.key()
                if key in index:
                    continue
                product.name = _word_name((name,) + word)
                index[key] = len(elements)
                elements.append(product)
                next_frontier.append((product, (name,) + word))
                if len(elements) > bound:
                    raise OrderBoundExceeded(
                        f"the generated group has more than {bound} elements"
                    )
        frontier = next_frontier

    order = len(elements)
    table = np.zeros((order, order), dtype=int)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            key = a.compose(b).key()
            assert key in index, "composition left the group"
            table[i, j] = index[key]
    LOGGER.info("generated a group of order %d", order)
    return FiniteGroup(algebra, elements, table)


def reynolds_projector(dg, group, n):
    """|G|^-1 sum_g M_g on the degree-n component."""
    matrices = group.matrices(n)
    total = matrices[0]
    for m in matrices[1:]:
        total = total + m
    return total.scale(group.algebra.field.one / group.order)


class FixedSubalgebraView:
    """A^G degree by degree, as a subcomplex of A with its product.

    Basis vectors of (A^G)^n are independent columns of the Reynolds
    projector, expressed in the normal-word basis of A^n.
    """

    def __init__(self, dg, group, D):
        self.dg = _as_dg(dg)
        self.group = group
        self.max_degree = D
        self.field = self.dg.field
        self._projectors = {}
        self._bases = {}
        self._solvers = {}
        self._differentials = {}
        self._cohomology = None
        self._cohomology_has_products = False

    def __repr__(self):
        return f"FixedSubalgebraView({self.dg!r}, |G|={self.group.order})"

    def projector(self, n):
        projector = self._projectors.get(n)
        if projector is None:
            projector = reynolds_projector(self.dg, self.group, n)
            self._projectors[n] = projector
        return projector

    def basis(self, n):
        basis = self._bases.get(n)
        if basis is None:
            basis = image_basis(self.projector(n))
            self._bases[n] = basis
        return basis

    def dim(self, n):
        return len(self.basis(n))

    def hilbert(self):
        return HilbertFunction(self.dim(n) for n in range(self.max_degree + 1))

    def embedding(self, n):
        return ExactMatrix.from_columns(self.field, self.basis(n), self.dg.dim(n))

    def elements(self, n):
        A = self.dg.algebra
        return [A.element(n, b) for b in self.basis(n)]

    def coordinates(self, n, vector):
        solver = self._solvers.get(n)
        if solver is None:
            solver = SpanSolver(self.field, self.basis(n), self.dg.dim(n))
            self._solvers[n] = solver
        coefficients = solver.solve(vector)
        assert coefficients is not NotInSpan, f"vector is not G-fixed in degree {n}"
        return coefficients

    def differential_matrix(self, n):
        matrix = self._differentials.get(n)
        if matrix is None:
            d = self.dg.differential_matrix(n)
            columns = [self.coordinates(n + 1, d @ b) for b in self.basis(n)]
            matrix = ExactMatrix.from_columns(self.field, columns, self.dim(n + 1))
            self._differentials[n] = matrix
        return matrix

    def multiply_vectors(self, p, u, q, v):
        product = self.dg.multiply_vectors(
            p, self.embedding(p) @ u, q, self.embedding(q) @ v
        )
        return self.coordinates(p + q, product)

    def trace_dimension(self, n):
        """|G|^-1 sum_g trace(M_g) on degree n."""
        total = self.field.zero
        for m in self.group.matrices(n):
            total = total + m.trace()
        return total / self.group.order

    def cohomology(self, with_products=True):
        if self._cohomology is None or (
            with_products and not self._cohomology_has_products
        ):
            self._cohomology = cohomology(self, self.max_degree, with_products)
            self._cohomology_has_products = with_products
        return self._cohomology


def fixed_subalgebra(dg, group, D):
    """The fixed DG subalgebra through degree D."""
    view = FixedSubalgebraView(dg, group, D)
    assert view.dim(0) == 1, "degree 0 of the fixed subalgebra is not the field"
    for n in range(D + 1):
        assert view.trace_dimension(n) == view.dim(n), (
            f"trace formula disagrees with the projector rank in degree {n}"
        )
    for n in range(D):
        view.differential_matrix(n)
    return view


def induced_action(view, sigma, n):
    """Matrix of H(sigma) on H^n in the basis of ``view``."""
    columns = [
        view.class_coordinates(n, sigma.apply_vector(n, rep))
        for rep in view.representatives(n)
    ]
    return ExactMatrix.from_columns(view.field, columns, view.dims[n])


def induced_group_on_H(dg, group, D, view=None):
    """{element index: [H(g) on H^0, ..., H(g) on H^(D-1)]}."""
    view = view or cohomology(_as_dg(dg), D, with_products=False)
    action = {
        i: [induced_action(view, g, n) for n in range(view.valid_through + 1)]
        for i, g in enumerate(group.elements)
    }
    for i in range(group.order):
        for j in range(group.order):
            k = group.product(i, j)
            for n in range(view.valid_through + 1):
                assert action[i][n] @ action[j][n] == action[k][n], (
                    f"H(g)H(h) != H(gh) in degree {n}"
                )
    return action


def verify_prop_equal(dg, group, D):
    """dim H^n(A^G) against dim H^n(A)^{H(G)} for n <= D - 1."""
    dg = _as_dg(dg)
    view = cohomology(dg, D, with_products=False)
    action = induced_group_on_H(dg, group, D, view)
    fixed = fixed_subalgebra(dg, group, D)
    fixed_cohomology = fixed.cohomology(with_products=False)

    report = ValidationReport(
        f"H(A^G) = H(A)^H(G) for {dg!r}, |G| = {group.order}, through {D - 1}"
    )
    rows = []
    for n in range(view.valid_through + 1):
        average = ExactMatrix.zeros(dg.field, view.dims[n], view.dims[n])
        for i in range(group.order):
            average = average + action[i][n]
        rhs = average.rank()
        lhs = fixed_cohomology.dims[n]
        rows.append((n, fixed.dim(n), lhs, rhs))
        report.add(
            f"degree {n}: dim H(A^G) = dim H(A)^H(G)", lhs == rhs, f"{lhs} vs {rhs}"
        )
    report.tables["fixed_dims"] = pd.DataFrame(
        rows, columns=["degree", "dim_A^G", "dim_H(A^G)", "dim_H(A)^H(G)"]
    )
    return report


def diagonal_character_count(algebra, weights, modulus, n):
    """#{normal words w of degree n : sum of weights over w = 0 mod modulus}."""
    return sum(
        1
        for w in algebra.degree_basis(n)
        if sum(weights[g] for g in w) % modulus == 0
    )


def reynolds_report(dg, group, D, view=None):
    """Projector and representation identities on every degree <= D."""
    dg = _as_dg(dg)
    view = view or fixed_subalgebra(dg, group, D)
    report = ValidationReport(f"Reynolds projector of |G| = {group.order} through {D}")
    idempotent, invariant, chain, homomorphism = [], [], [], []
    for n in range(D + 1):
        P = view.projector(n)
        matrices = group.matrices(n)
        if P @ P != P:
            idempotent.append(n)
        if any(P @ M != P or M @ P != P for M in matrices):
            invariant.append(n)
        if n < D:
            d = dg.differential_matrix(n)
            if d @ P != view.projector(n + 1) @ d:
                chain.append(n)
        if any(
            matrices[group.product(i, j)] != matrices[i] @ matrices[j]
            for i in range(group.order)
            for j in range(group.order)
        ):
            homomorphism.append(n)
    for name, failed in (
        ("P^2 = P", idempotent),
        ("P M_g = M_g P = P", invariant),
        ("d P = P d", chain),
        ("M_gh = M_g M_h", homomorphism),
    ):
        report.add(name, not failed, "" if not failed else f"fails in degrees {failed}")
    report.tables["fixed_dims"] = pd.DataFrame(
        {
            "degree": range(D + 1),
            "dim_A": [dg.dim(n) for n in range(D + 1)],
            "dim_A^G": [view.dim(n) for n in range(D + 1)],
        }
    )
    return report
