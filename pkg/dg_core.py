# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            Differentials extended by the graded Leibniz rule, their
         validation, and degreewise cohomology algebras.

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
from dataclasses import dataclass

import numpy as np
import pandas as pd

from errors import DegreeMismatch, InhomogeneousInput, InputError, TruncationTooSmall
from presented_algebra import (
    FreeSpec,
    HilbertFunction,
    NcPolynomial,
    PresentedAlgebra,
    tensor_embeddings,
    tensor_product,
)
from reports import ValidationReport
from scalars_linalg import (
    EchelonBasis,
    ExactMatrix,
    NotInSpan,
    SpanSolver,
    is_zero_vector,
    kernel_and_image,
)

MESSAGE_CATEGORY = "DGInvariantToolkit"
LOGGER = logging.getLogger(MESSAGE_CATEGORY)


class DGAlgebra:
    """A presented algebra with a degree +1 differential.

    ``d_images[g]`` is d of generator g; d is extended to words by
    d(uv) = d(u)v + (-1)^|u| u d(v).
    """

    def __init__(self, algebra, d_images, name=None):
        spec, field = algebra.spec, algebra.field
        d_images = list(d_images)
        if len(d_images) != len(spec):
            raise InputError(
                f"{len(d_images)} differential images for {len(spec)} generators"
            )
        images = []
        for g, image in enumerate(d_images):
            if image is None:
                image = NcPolynomial.zero(spec, field)
            if image.spec != spec or image.field != field:
                raise InputError(f"d({spec.names[g]}) is not an element of A")
            if image:
                if not image.is_homogeneous():
                    raise InhomogeneousInput(
                        f"d({spec.names[g]}) = {image} is not homogeneous"
                    )
                if image.degree != spec.degrees[g] + 1:
                    raise DegreeMismatch(
                        f"d({spec.names[g]}) = {image} has degree "
                        f"{image.degree}, expected {spec.degrees[g] + 1}"
                    )
            images.append(image)
        self.algebra = algebra
        self.d_images = tuple(images)
        self.name = name or algebra.name
        self._word_d = {}
        self._matrices = {}

    @classmethod
    def with_zero_differential(cls, algebra, name=None):
        return cls(algebra, [None] * len(algebra.spec), name=name)

    def __repr__(self):
        return f"DGAlgebra({self.name or ','.join(self.spec.names)})"

    @property
    def spec(self):
        return self.algebra.spec

    @property
    def field(self):
        return self.algebra.field

    def is_zero_differential(self):
        return not any(self.d_images)

    def dim(self, n):
        return self.algebra.dim(n)

    def warm_up(self, D, post_degree_callback=None):
        self.algebra.warm_up(D, post_degree_callback)
        return self

    def multiply_vectors(self, p, u, q, v):
        return self.algebra.multiply_vectors(p, u, q, v)

    def differential_of_word(self, word):
        result = self._word_d.get(word)
        if result is None:
            spec, field = self.spec, self.field
            terms = {}
            sign = 1
            for i, g in enumerate(word):
                for v, c in self.d_images[g].terms.items():
                    w = word[:i] + v + word[i + 1 :]
                    terms[w] = terms.get(w, field.zero) + (c if sign > 0 else -c)
                if spec.degrees[g] % 2:
                    sign = -sign
            result = NcPolynomial(spec, field, terms)
            self._word_d[word] = result
        return result

    def apply(self, p):
        """d(p) in the free algebra."""
        result = NcPolynomial.zero(self.spec, self.field)
        for word, c in p.terms.items():
            result = result + self.differential_of_word(word) * c
        return result

    def differential_matrix(self, n):
        """Matrix of d from the degree-n basis to the degree-(n+1) basis."""
        matrix = self._matrices.get(n)
        if matrix is None:
            A = self.algebra
            columns = [
                A.normal_form(self.differential_of_word(w), n + 1)
                for w in A.degree_basis(n)
            ]
            matrix = ExactMatrix.from_columns(self.field, columns, A.dim(n + 1))
            self._matrices[n] = matrix
        return matrix


def validate_dg(dg, D):
    """Check that d descends to the quotient and squares to zero."""
    A = dg.algebra
    report = ValidationReport(f"differential of {dg!r} through degree {D}")
    for k, r in enumerate(A.relations, start=1):
        name = f"d(relation {k}) lies in the ideal"
        if r.degree + 1 > D:
            report.add(name, None, f"degree {r.degree + 1} beyond the window")
            continue
        residue = A.normal_form(dg.apply(r), r.degree + 1)
        if is_zero_vector(residue):
            report.add(name, True)
        else:
            remainder = A.element(r.degree + 1, residue)
            report.add(name, False, f"d({r}) reduces to {remainder}")
    for g, generator in enumerate(A.generators):
        name = f"d^2({A.spec.names[g]}) = 0"
        degree = A.spec.degrees[g] + 2
        if degree > D:
            report.add(name, None, f"degree {degree} beyond the window")
            continue
        residue = A.normal_form(dg.apply(dg.apply(generator)), degree)
        if is_zero_vector(residue):
            report.add(name, True)
        else:
            report.add(name, False, f"d^2 reduces to {A.element(degree, residue)}")
    if report.failures():
        return report
    for n in range(D - 1):
        composite = dg.differential_matrix(n + 1) @ dg.differential_matrix(n)
        assert composite.is_zero(), f"d o d is not zero in degree {n}"
    report.add(f"d o d = 0 as matrices through degree {D}", True)
    return report


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    index: int
    representative: np.ndarray

    def __repr__(self):
        return f"CohomologyClass(degree={self.degree}, index={self.index})"


class CohomologyAlgebraView:
    """H of a degreewise complex with a product, valid through D - 1.

    The complex must provide ``field``, ``dim(n)``, ``differential_matrix(n)``
    and ``multiply_vectors(p, u, q, v)``; both DGAlgebra and the fixed
    subalgebra view do.
    """

    def __init__(self, source, representatives, boundaries, valid_through):
        self.source = source
        self.field = source.field
        self.valid_through = valid_through
        self._representatives = representatives
        self._boundaries = boundaries
        self.dims = tuple(len(representatives[n]) for n in range(valid_through + 1))
        self._solvers = {}
        self._boundary_solvers = {}
        self._products = {}

    def __repr__(self):
        return f"CohomologyAlgebraView({self.source!r}, dims={self.dims})"

    def dim(self, n):
        return self.dims[n] if 0 <= n <= self.valid_through else 0

    def hilbert(self):
        return HilbertFunction(self.dims)

    def representatives(self, n):
        return list(self._representatives[n])

    def boundaries(self, n):
        return list(self._boundaries[n])

    def classes(self, n):
        return [
            CohomologyClass(n, i, rep)
            for i, rep in enumerate(self._representatives[n])
        ]

    def _solver(self, n):
        solver = self._solvers.get(n)
        if solver is None:
            solver = SpanSolver(
                self.field,
                self._representatives[n] + self._boundaries[n],
                self.source.dim(n),
            )
            self._solvers[n] = solver
        return solver

    def class_coordinates(self, n, cocycle):
        """Coordinates of the class of ``cocycle`` in the H^n basis."""
        coefficients = self._solver(n).solve(cocycle)
        assert coefficients is not NotInSpan, f"not a cocycle in degree {n}"
        return coefficients[: self.dims[n]]

    def is_coboundary(self, n, vector):
        solver = self._boundary_solvers.get(n)
        if solver is None:
            solver = SpanSolver(
                self.field, self._boundaries[n], self.source.dim(n)
            )
            self._boundary_solvers[n] = solver
        return solver.contains(vector)

    def structure_constants(self, p, q):
        """T[:, i, j] = class of rep_p[i] * rep_q[j] in the H^(p+q) basis."""
        if p + q > self.valid_through:
            raise ValueError(f"products beyond degree {self.valid_through}")
        tensor = self._products.get((p, q))
        if tensor is None:
            shape = (self.dims[p + q], self.dims[p], self.dims[q])
            tensor = np.empty(shape, dtype=object)
            for i, u in enumerate(self._representatives[p]):
                for j, v in enumerate(self._representatives[q]):
                    product = self.source.multiply_vectors(p, u, q, v)
                    tensor[:, i, j] = self.class_coordinates(p + q, product)
            self._products[(p, q)] = tensor
        return tensor

    def compute_products(self):
        for p in range(self.valid_through + 1):
            for q in range(self.valid_through + 1 - p):
                self.structure_constants(p, q)
        return self

    def to_frame(self):
        return pd.DataFrame(
            {"degree": range(len(self.dims)), "dim_H": list(self.dims)}
        )


def cohomology(complex_, D, with_products=True, post_degree_callback=None):
    """Cohomology of ``complex_`` through degree D - 1."""
    if D < 2:
        raise TruncationTooSmall(f"cohomology needs D >= 2, got {D}")
    field = complex_.field
    representatives, boundaries = {}, {}
    incoming = []
    for n in range(D):
        cycles, outgoing = kernel_and_image(complex_.differential_matrix(n))
        echelon = EchelonBasis(field, complex_.dim(n))
        for b in incoming:
            assert echelon.add(b), f"dependent boundary basis in degree {n}"
        reps = [z for z in cycles if echelon.add(z)]
        assert len(reps) == len(cycles) - len(incoming), (
            f"boundaries are not cycles in degree {n}"
        )
        representatives[n] = reps
        boundaries[n] = incoming
        incoming = outgoing
        LOGGER.debug("%r: dim H^%d = %d", complex_, n, len(reps))
        if post_degree_callback:
            if post_degree_callback(n, len(reps)) is False:
                D = n + 1
                break
    view = CohomologyAlgebraView(complex_, representatives, boundaries, D - 1)
    assert view.dims[0] == 1, "H^0 must be the base field"
    if with_products:
        view.compute_products()
    return view


def check_presentation(dg, candidates, relations, D, view=None):
    """Compare H(dg) with the algebra presented by cocycle candidates.

    ``candidates`` maps class names to cocycles of ``dg``; ``relations`` are
    NcPolynomials in those names.
    """
    A = dg.algebra
    field = dg.field
    report = ValidationReport(f"presentation of H({dg.name or 'A'})")
    names = list(candidates)
    cocycles = [candidates[name] for name in names]
    degrees = []
    for name, cocycle in zip(names, cocycles):
        if not cocycle or not cocycle.is_homogeneous() or cocycle.degree == 0:
            report.add(f"{name} is a homogeneous cocycle", False, "not homogeneous")
            continue
        degree = cocycle.degree
        degrees.append(degree)
        residue = A.normal_form(dg.apply(cocycle), degree + 1)
        report.add(
            f"{name} = {cocycle} is a cocycle",
            is_zero_vector(residue),
            ""
            if is_zero_vector(residue)
            else f"d({name}) = {A.element(degree + 1, residue)}",
        )
    if report.failures():
        return report

    view = view or cohomology(dg, D)
    top = view.valid_through
    spec = FreeSpec(names, degrees)
    relations = [_over_spec(r, spec) for r in relations]
    for r in relations:
        name = f"relation {r} holds in H"
        if not r.is_homogeneous():
            report.add(name, False, "not homogeneous")
            continue
        if r.degree > top:
            report.add(name, None, f"degree {r.degree} beyond the window")
            continue
        image = A.normal_form(r.substitute(cocycles), r.degree)
        report.add(name, view.is_coboundary(r.degree, image), "coboundary test")
    if report.failures():
        return report

    candidate = PresentedAlgebra(spec, field, relations, order=A.order)
    expected = candidate.hilbert(top)
    actual = view.hilbert()
    report.add(
        "Hilbert function of the presentation equals that of H",
        expected == actual,
        f"{list(expected)} vs {list(actual)}",
    )
    report.tables["hilbert"] = pd.DataFrame(
        {
            "degree": range(top + 1),
            "presented": list(expected),
            "H": list(actual),
        }
    )
    if report.failures():
        return report

    bijective = True
    for n in range(top + 1):
        columns = []
        for word in candidate.degree_basis(n):
            monomial = NcPolynomial.monomial(spec, field, word)
            image = A.normal_form(monomial.substitute(cocycles), n)
            columns.append(view.class_coordinates(n, image))
        matrix = ExactMatrix.from_columns(field, columns, view.dims[n])
        if matrix.rank() != view.dims[n]:
            bijective = False
            report.add(f"induced map is bijective in degree {n}", False)
            break
    if bijective:
        report.add(f"induced map is bijective through degree {top}", True)
    return report


def tensor_dg(A, B, D):
    """A (x) B with the Leibniz differential and the Kunneth comparison."""
    algebra = tensor_product(A.algebra, B.algebra, check_degree=D)
    embed_a, embed_b = tensor_embeddings(
        algebra.spec, algebra.field, len(A.spec), len(B.spec)
    )
    images = [_embed(d, embed_a, algebra) for d in A.d_images]
    images += [_embed(d, embed_b, algebra) for d in B.d_images]
    product = DGAlgebra(algebra, images, name=algebra.name)

    report = ValidationReport(f"Kunneth formula for {product!r} through {D - 1}")
    lhs = cohomology(product, D, with_products=False).hilbert()
    rhs = (
        cohomology(A, D, with_products=False)
        .hilbert()
        .convolve(cohomology(B, D, with_products=False).hilbert())
    )
    for n in range(D):
        report.add(
            f"dim H^{n}(A (x) B) = sum dim H^i(A) dim H^j(B)",
            lhs[n] == rhs[n],
            f"{lhs[n]} vs {rhs[n]}",
        )
    report.tables["kunneth"] = pd.DataFrame(
        {"degree": range(D), "H(A(x)B)": list(lhs), "convolution": list(rhs)}
    )
    return product, report


def _over_spec(p, spec):
    if p.spec == spec:
        return p
    try:
        mapping = [spec.names.index(name) for name in p.spec.names]
    except ValueError:
        raise InputError(f"relation {p} uses names outside {spec.names}")
    return NcPolynomial(
        spec, p.field, {tuple(mapping[g] for g in w): c for w, c in p.terms.items()}
    )


def _embed(image, embedding, algebra):
    if not image:
        return NcPolynomial.zero(algebra.spec, algebra.field)
    return image.substitute(embedding)
