# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            Homological determinants of graded and DG automorphisms,
         the hdet-1 hypothesis check for fixed subalgebras and a scan
                   over diagonal actions.

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

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from dg_core import DGAlgebra, cohomology
from errors import LiftFailure, NotGorensteinWindow
from invariants import (
    DEFAULT_GROUP_BOUND,
    AlgebraMorphism,
    fixed_subalgebra,
    group_closure,
    induced_action,
    validate_automorphism,
)
from reports import ValidationReport
from resolution_ext import (
    DEFAULT_RESOLUTION_LENGTH,
    ConsistentASGorenstein,
    GradedAlgebraData,
    GradedAutomorphism,
    ext_table,
    gorenstein_probe,
    minimal_resolution,
)
from scalars_linalg import (
    EchelonBasis,
    NotInSpan,
    SpanSolver,
    kernel_basis,
    roots_of_unity,
    zero_vector,
)

MESSAGE_CATEGORY = "DGInvariantToolkit"
LOGGER = logging.getLogger(MESSAGE_CATEGORY)


@dataclass
class HdetResult:
    """hdet(tau) = s where tau^-1 o f o tau_d = s f on the top Ext class f.

    ``alternate`` is 1/s, the other reading of the convention.
    """

    scalar: object
    alternate: object
    d: int
    l: int  # noqa: E741
    name: str = None
    certificates: list = field(default_factory=list)

    def to_dict(self):
        return {
            "element": self.name,
            "hdet": str(self.scalar),
            "alternate": str(self.alternate),
            "d": self.d,
            "l": self.l,
        }


class GorensteinWindow:
    """A connected graded algebra with its resolution, Ext table and a
    consistent AS-Gorenstein verdict, ready to lift automorphisms."""

    def __init__(self, B, resolution, table, verdict):
        if not isinstance(verdict, ConsistentASGorenstein):
            raise NotGorensteinWindow(
                f"{B!r} is not AS-Gorenstein inside the window: {verdict}", verdict
            )
        self.algebra = B
        self.resolution = resolution
        self.table = table
        self.verdict = verdict
        self.d = verdict.d
        self.l = verdict.l  # noqa: E741
        self._top = None
        self._solvers = {}

    @classmethod
    def probe(cls, B, L=DEFAULT_RESOLUTION_LENGTH, D=None):
        resolution = minimal_resolution(B, L + 1, D)
        table = ext_table(B, resolution, L)
        verdict = gorenstein_probe(B, L, resolution=resolution, table=table)
        return cls(B, resolution, table, verdict)

    def top_class(self):
        """(f, solver): a cocycle f spanning Ext^d_(-l) and a solver against
        [f] + coboundaries."""
        if self._top is None:
            B, res, d, j = self.algebra, self.resolution, self.d, -self.l
            length = res.hom_dim(d, j)
            cocycles = kernel_basis(res.dual_differential(d + 1, j))
            boundaries = (
                res.dual_differential(d, j).columns() if d >= 1 else []
            )
            echelon = EchelonBasis(B.field, length)
            for b in boundaries:
                echelon.add(b)
            top = next((z for z in cocycles if echelon.add(z)), None)
            assert top is not None, f"Ext^{d} vanishes in internal degree {j}"
            self._top = (top, SpanSolver(B.field, [top] + boundaries, length))
        return self._top

    def _solver(self, i, n):
        solver = self._solvers.get((i, n))
        if solver is None:
            differential = self.resolution.differential(i, n)
            solver = SpanSolver(
                self.algebra.field, differential.columns(), differential.rows
            )
            self._solvers[(i, n)] = solver
        return solver


def _apply_lift(window, tau, lifts, i, n, vector):
    """tau_i applied to a vector of (F_i)_n; tau_0 = tau on B."""
    B, res = window.algebra, window.resolution
    if i == 0:
        return tau.matrix(n) @ vector
    result = zero_vector(B.field, res.component_dim(i, n))
    targets = {k: (offset, size) for k, offset, size in res.layout(i, n)}
    for k, offset, size in res.layout(i, n):
        coefficient = vector[offset : offset + size]
        if not len(np.flatnonzero(coefficient)):
            continue
        a_k = res.generators[i][k]
        moved = tau.matrix(n - a_k) @ coefficient
        image = lifts[i][k]
        for m, m_offset, m_size in res.layout(i, a_k):
            block = image[m_offset : m_offset + m_size]
            if not len(np.flatnonzero(block)):
                continue
            a_m = res.generators[i][m]
            out_offset, out_size = targets[m]
            result[out_offset : out_offset + out_size] = result[
                out_offset : out_offset + out_size
            ] + B.multiply(n - a_k, moved, a_k - a_m, block)
    return result


def _lift(window, tau, top, kernel_shift=False):
    """Images tau_i(e) of every generator of F_1..F_top with
    d tau_i = tau_(i-1) d."""
    res = window.resolution
    lifts = {0: [np.array([window.algebra.field.one], dtype=object)]}
    certificates = []
    for i in range(1, top + 1):
        lifts[i] = []
        for j, a in enumerate(res.generators[i]):
            target = _apply_lift(window, tau, lifts, i - 1, a, res.images[i][j])
            solution = window._solver(i, a).solve(target)
            if solution is NotInSpan:
                raise LiftFailure(
                    f"tau_{i - 1}(d e) has no preimage for generator {j} of F_{i}"
                )
            if kernel_shift:
                for z in kernel_basis(res.differential(i, a)):
                    solution = solution + z
            check = res.differential(i, a) @ solution
            assert all(x == y for x, y in zip(check, target)), (
                f"lift does not commute with d_{i} on generator {j}"
            )
            lifts[i].append(solution)
        certificates.append(
            f"d_{i} tau_{i} = tau_{i - 1} d_{i} on {len(res.generators[i])} generators"
        )
    return lifts, certificates


def hdet_graded(B, tau, window=None, L=DEFAULT_RESOLUTION_LENGTH, kernel_shift=False):
    """Homological determinant of a graded automorphism tau of B.

    The lift tau_d acts on Hom(F_d, B) by f -> tau^-1 o f o tau_d; on the
    one-dimensional Ext^d this is multiplication by hdet(tau). For k[x]
    with x -> cx the result is c.
    """
    window = window or GorensteinWindow.probe(B, L)
    res, d, j = window.resolution, window.d, -window.l
    lifts, certificates = _lift(window, tau, d, kernel_shift)
    f, solver = window.top_class()

    image = zero_vector(B.field, len(f))
    blocks = res.hom_layout(d, j)
    source = {k: (offset, size) for k, offset, size in blocks}
    for k, offset, size in blocks:
        a_k = res.generators[d][k]
        value = zero_vector(B.field, size)
        moved = lifts[d][k]
        for m, m_offset, m_size in res.layout(d, a_k):
            if m not in source:
                continue
            a_m = res.generators[d][m]
            coefficient = moved[m_offset : m_offset + m_size]
            f_offset, f_size = source[m]
            value = value + B.multiply(
                a_k - a_m, coefficient, a_m + j, f[f_offset : f_offset + f_size]
            )
        image[offset : offset + size] = tau.inverse_matrix(a_k + j) @ value

    coefficients = solver.solve(image)
    if coefficients is NotInSpan:
        raise LiftFailure("tau does not preserve the top Ext class")
    scalar = coefficients[0]
    if not scalar:
        raise LiftFailure("tau acts by zero on the top Ext class")
    certificates.append(f"tau^-1 f tau_{d} = ({scalar}) f modulo coboundaries")
    return HdetResult(
        scalar, scalar.inverse(), d, window.l, getattr(tau, "name", None), certificates
    )


class CohomologyData:
    """H(A) of a DG algebra through degree D as graded data with its
    Gorenstein window."""

    def __init__(self, dg, D, L=DEFAULT_RESOLUTION_LENGTH):
        if not isinstance(dg, DGAlgebra):
            dg = DGAlgebra.with_zero_differential(dg)
        self.dg = dg
        self.view = cohomology(self.dg, D + 1, with_products=True)
        self.algebra = GradedAlgebraData.from_cohomology(self.view)
        self.resolution = minimal_resolution(self.algebra, L + 1)
        self.table = ext_table(self.algebra, self.resolution, L)
        self.verdict = gorenstein_probe(
            self.algebra, L, resolution=self.resolution, table=self.table
        )
        self._window = None

    @property
    def window(self):
        if self._window is None:
            self._window = GorensteinWindow(
                self.algebra, self.resolution, self.table, self.verdict
            )
        return self._window

    def induced_automorphism(self, sigma):
        matrices = [
            induced_action(self.view, sigma, n)
            for n in range(self.algebra.max_degree + 1)
        ]
        return GradedAutomorphism(self.algebra, matrices, name=sigma.name)


def Hdet_dg(dg, sigma, D, L=DEFAULT_RESOLUTION_LENGTH, data=None):
    """Hdet of a DG automorphism as hdet of H(sigma) on H(A)."""
    data = data or CohomologyData(dg, D, L)
    tau = data.induced_automorphism(sigma)
    return hdet_graded(data.algebra, tau, window=data.window)


def hdet_character(dg, group, D, L=DEFAULT_RESOLUTION_LENGTH, data=None):
    """Hdet of every element of a finite group, checked multiplicative."""
    data = data or CohomologyData(dg, D, L)
    results = [Hdet_dg(dg, g, D, L, data) for g in group.elements]
    report = ValidationReport(f"Hdet on a group of order {group.order}")
    report.add("Hdet(e) = 1", results[group.identity_index].scalar == 1)
    broken = [
        (group.names[i], group.names[j])
        for i in range(group.order)
        for j in range(group.order)
        if results[group.product(i, j)].scalar != results[i].scalar * results[j].scalar
    ]
    report.add(
        "Hdet(gh) = Hdet(g) Hdet(h)",
        not broken,
        "" if not broken else f"fails for {broken[:3]}",
    )
    report.tables["hdet"] = pd.DataFrame(
        [r.to_dict() for r in results],
        columns=["element", "hdet", "alternate", "d", "l"],
    )
    report.facts["hdet_one"] = [
        r.name for r in results if r.scalar == 1
    ]
    return report, results


def theorem_d_check(dg, group, D, L=DEFAULT_RESOLUTION_LENGTH):
    """If Hdet is 1 on every element of G then A^G is a Gorenstein DG
    algebra; corroborated by probing H(A^G) inside the window."""
    dg = dg if isinstance(dg, DGAlgebra) else DGAlgebra.with_zero_differential(dg)
    report = ValidationReport(
        f"Hdet-1 criterion for {dg!r}^G, |G| = {group.order}, window {D}"
    )
    data = CohomologyData(dg, D, L)
    report.add(
        "H(A) is AS-Gorenstein inside the window",
        data.verdict.passed,
        str(data.verdict),
    )
    if not isinstance(data.verdict, ConsistentASGorenstein):
        return report
    report.facts["gorenstein_dg"] = (
        f"{dg!r} is Gorenstein DG (H(A) is {data.verdict})"
    )

    character, results = hdet_character(dg, group, D, L, data)
    report.extend(character)
    applies = all(r.scalar == 1 for r in results)
    report.add(
        "every element has Hdet 1",
        applies,
        "" if applies else "hypothesis fails; no claim about A^G",
    )
    report.facts["theorem_applies"] = applies
    if not applies:
        return report
    report.facts["conclusion"] = "A^G is a Gorenstein DG algebra"

    fixed = fixed_subalgebra(dg, group, D + 1)
    fixed_view = fixed.cohomology(with_products=True)
    B = GradedAlgebraData.from_cohomology(fixed_view)
    verdict = gorenstein_probe(B, L)
    report.add(
        "H(A^G) is AS-Gorenstein inside the window", verdict.passed, str(verdict)
    )
    report.facts["fixed_probe"] = verdict.to_dict()
    report.tables["fixed_cohomology"] = fixed_view.to_frame()
    return report


@dataclass
class ScanHit:
    weights: tuple
    sigma: object
    group: object
    hdet: object


def scan_diagonal_hdet_one(
    dg,
    D,
    L=DEFAULT_RESOLUTION_LENGTH,
    bound=DEFAULT_GROUP_BOUND,
    max_order=12,
    data=None,
):
    """First non-trivial diagonal DG automorphism with Hdet 1 and the
    group it generates, or None."""
    dg = dg if isinstance(dg, DGAlgebra) else DGAlgebra.with_zero_differential(dg)
    data = data or CohomologyData(dg, D, L)
    window = data.window
    roots = roots_of_unity(dg.field, max_order)
    one = dg.field.one
    for weights in itertools.product(roots, repeat=len(dg.spec)):
        if all(w == one for w in weights):
            continue
        sigma = AlgebraMorphism.diagonal(
            dg.algebra, weights, name="diag(" + ", ".join(map(str, weights)) + ")"
        )
        if not validate_automorphism(dg, sigma, D).passed:
            continue
        tau = data.induced_automorphism(sigma)
        result = hdet_graded(data.algebra, tau, window=window)
        LOGGER.info("%s: Hdet = %s", sigma.name, result.scalar)
        if result.scalar == 1:
            group = group_closure(dg, [sigma], bound)
            return ScanHit(tuple(weights), sigma, group, result)
    return None
