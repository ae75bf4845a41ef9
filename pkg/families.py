# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            DG down-up algebras, the presets A1, A2, A3 with their
         cohomology presentations, and DG free algebras from crisscross
                          matrix tuples.

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

from dg_core import DGAlgebra, validate_dg
from errors import CaseMismatch, DGValidationFailed, NotCrisscross, ShapeMismatch
from presented_algebra import FreeSpec, NcPolynomial, PresentedAlgebra
from scalars_linalg import ExactMatrix, make_field

MESSAGE_CATEGORY = "DGInvariantToolkit"
LOGGER = logging.getLogger(MESSAGE_CATEGORY)

XI_POLYNOMIAL = "t^2 + t + 1"
VALIDATION_DEGREE = 5
CASE_C_NAMES = ("c1", "c2", "c3", "d1", "d2", "d3")


def xi_field():
    """Q(xi) for a primitive cube root of unity xi = t."""
    return make_field(XI_POLYNOMIAL)


def down_up_algebra(field, alpha, beta, order="deglex", name=None):
    """A(alpha, beta) = k<x, y>/(x^2y - alpha xyx - beta yx^2,
    xy^2 - alpha yxy - beta y^2x)."""
    spec = FreeSpec(("x", "y"), (1, 1))
    x = NcPolynomial.generator(spec, field, "x")
    y = NcPolynomial.generator(spec, field, "y")
    alpha, beta = field(alpha), field(beta)
    relations = [
        x * x * y - x * y * x * alpha - y * x * x * beta,
        x * y * y - y * x * y * alpha - y * y * x * beta,
    ]
    return PresentedAlgebra(spec, field, relations, order=order, name=name)


@dataclass
class DownUpParams:
    """Parameters of a DG down-up algebra.

    ``c``/``d`` and ``family`` select the two differentials allowed when
    1 + alpha - beta = 0, beta^3 = 1, beta != 1; ``case_c`` holds
    (c1, c2, c3, d1, d2, d3) when alpha = 0, beta = 1.
    """

    field: object
    alpha: object
    beta: object
    c: object = None
    d: object = None
    family: int = 1
    case_c: tuple = None

    def __post_init__(self):
        F = self.field
        self.alpha, self.beta = F(self.alpha), F(self.beta)
        if self.c is not None:
            self.c = F(self.c)
        if self.d is not None:
            self.d = F(self.d)
        if self.case_c is not None:
            if len(self.case_c) != 6:
                raise CaseMismatch("case (c) takes six coefficients c1..c3, d1..d3")
            self.case_c = tuple(F(v) for v in self.case_c)

    @property
    def case(self):
        """'a', 'b' or 'c'."""
        alpha, beta = self.alpha, self.beta
        if not beta:
            raise CaseMismatch("beta = 0 gives a non-Noetherian down-up algebra")
        if 1 + alpha - beta or beta**3 != 1:
            return "a"
        if beta != 1:
            return "b"
        return "c"

    def has_differential(self):
        return bool(
            (self.c is not None and self.c)
            or (self.d is not None and self.d)
            or (self.case_c is not None and any(self.case_c))
        )


def _down_up_differential(params, spec):
    F = params.field
    x = NcPolynomial.generator(spec, F, "x")
    y = NcPolynomial.generator(spec, F, "y")
    case = params.case
    if case == "a":
        if params.has_differential():
            raise CaseMismatch(
                f"alpha = {params.alpha}, beta = {params.beta} forces d = 0"
            )
        return [None, None]
    if case == "b":
        if params.case_c is not None:
            raise CaseMismatch("c1..d3 only apply when alpha = 0 and beta = 1")
        c = params.c if params.c is not None else F.zero
        d = params.d if params.d is not None else F.zero
        if params.family == 1:
            if c * d:
                raise CaseMismatch(
                    f"d(x) = cy^2, d(y) = dx^2 needs c*d = 0, got {c * d}"
                )
            return [y * y * c, x * x * d]
        if params.family == 2:
            if not c or not d:
                raise CaseMismatch("the second differential family needs c, d != 0")
            return [
                x * x * (2 * d) + x * y * c + y * x * c - y * y * (c * c / d),
                x * x * (-(d * d) / c) + x * y * d + y * x * d + y * y * (2 * c),
            ]
        raise CaseMismatch(f"unknown differential family {params.family}")
    if params.c is not None or params.d is not None:
        raise CaseMismatch("c, d do not apply when alpha = 0 and beta = 1")
    c1, c2, c3, d1, d2, d3 = params.case_c or (F.zero,) * 6
    symmetric = x * y + y * x
    return [
        x * x * c1 + symmetric * c2 + y * y * c3,
        x * x * d1 + symmetric * d2 + y * y * d3,
    ]


def make_down_up(params, order="deglex", name=None, check_degree=VALIDATION_DEGREE):
    """The DG down-up algebra of ``params``, validated."""
    algebra = down_up_algebra(params.field, params.alpha, params.beta, order, name)
    images = _down_up_differential(params, algebra.spec)
    dg = DGAlgebra(algebra, images, name=name or f"A({params.alpha}, {params.beta})")
    report = validate_dg(dg, check_degree)
    if not report.passed:
        raise DGValidationFailed(report.summary(), report)
    LOGGER.debug("built %r (case %s)", dg, params.case)
    return dg


def _preset_params(name):
    F = xi_field()
    xi = F.generator
    if name == "A1":
        return DownUpParams(F, xi - 1, xi, c=1, d=0)
    if name == "A2":
        return DownUpParams(F, xi - 1, xi, c=0, d=1)
    if name == "A3":
        return DownUpParams(F, xi - 1, xi, c=1, d=1, family=2)
    raise KeyError(name)


PRESET_NAMES = ("A1", "A2", "A3")


def preset(name, order="deglex"):
    """A1: dx = y^2, dy = 0; A2: dx = 0, dy = x^2;
    A3: dx = 2x^2 + xy + yx - y^2, dy = -x^2 + xy + yx + 2y^2;
    all over A(xi - 1, xi)."""
    return make_down_up(_preset_params(name), order=order, name=name)


def preset_presentation(dg):
    """(cocycles by class name, relations over the class names) of the
    known presentation of H for a preset, or None."""
    name = dg.name
    if name not in PRESET_NAMES:
        return None
    A, F = dg.algebra, dg.field
    xi = F.generator
    x, y = A.generators
    w = x * y + y * x
    if name == "A3":
        return {"w": w * w * w}, []
    u = y if name == "A1" else x
    classes = FreeSpec(("u", "w"), (1, 2))
    U = NcPolynomial.generator(classes, F, "u")
    W = NcPolynomial.generator(classes, F, "w")
    if name == "A1":
        relations = [U * W * xi - W * U, U * U]
    else:
        relations = [U * W - W * U * xi, U * U]
    return {"u": u, "w": w}, relations


@dataclass
class CrisscrossTuple:
    """(M^1, ..., M^n), d(x_i) = (x_1..x_n) M^i (x_1..x_n)^t."""

    matrices: tuple

    def __post_init__(self):
        self.matrices = tuple(self.matrices)
        n = len(self.matrices)
        if not n:
            raise ShapeMismatch("a crisscross tuple needs at least one matrix")
        for i, m in enumerate(self.matrices, start=1):
            if m.shape != (n, n):
                raise ShapeMismatch(f"M^{i} has shape {m.shape}, expected ({n}, {n})")

    @classmethod
    def from_lists(cls, field, matrices):
        try:
            return cls([ExactMatrix.from_rows(field, rows) for rows in matrices])
        except ValueError as e:
            raise ShapeMismatch(str(e))

    @property
    def n(self):
        return len(self.matrices)

    @property
    def field(self):
        return self.matrices[0].field

    def column(self, i, j):
        """c^i_j, 1-based."""
        return self.matrices[i - 1].entries[:, j - 1]

    def row(self, i, j):
        """r^i_j, 1-based."""
        return self.matrices[i - 1].entries[j - 1, :]


@dataclass
class CrisscrossResult:
    passed: bool
    witness: tuple = None

    def __bool__(self):
        return self.passed


def crisscross_matrix(t, i, j):
    """sum_l [c^l_j r^i_l - c^i_l r^l_j], 1-based i, j."""
    total = np.empty((t.n, t.n), dtype=object)
    total[...] = t.field.zero
    for l in range(1, t.n + 1):  # noqa: E741
        total = total + np.outer(t.column(l, j), t.row(i, l))
        total = total - np.outer(t.column(i, l), t.row(l, j))
    return total


def crisscross_check(t):
    """Evaluate the crisscross identity for every (i, j); on failure the
    witness is (i, j, (p, s), entry), all 1-based."""
    for i in range(1, t.n + 1):
        for j in range(1, t.n + 1):
            total = crisscross_matrix(t, i, j)
            nonzero = np.flatnonzero(total)
            if len(nonzero):
                p, s = divmod(int(nonzero[0]), t.n)
                return CrisscrossResult(False, (i, j, (p + 1, s + 1), total[p, s]))
    return CrisscrossResult(True)


def make_dg_free(t, check=True, order="deglex", name=None):
    """k<x1..xn>, all degree 1, with the quadratic differential of ``t``."""
    if check:
        result = crisscross_check(t)
        if not result:
            i, j, entry, value = result.witness
            raise NotCrisscross(
                f"crisscross identity fails at i={i}, j={j}, entry {entry}: {value}",
                result.witness,
            )
    n, F = t.n, t.field
    spec = FreeSpec(tuple(f"x{k}" for k in range(1, n + 1)), (1,) * n)
    algebra = PresentedAlgebra(spec, F, [], order=order, name=name)
    images = []
    for m in t.matrices:
        terms = {
            (a, b): m.entries[a, b]
            for a in range(n)
            for b in range(n)
            if m.entries[a, b]
        }
        images.append(NcPolynomial(spec, F, terms))
    return DGAlgebra(algebra, images, name=name or f"dg-free({n})")
