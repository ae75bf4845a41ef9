# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            Minimal graded free resolutions of the trivial module, graded
         Ext(k, B) tables and the AS-Gorenstein probe.

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

from errors import NotAnHAutomorphism, WindowExhausted
from scalars_linalg import (
    EchelonBasis,
    ExactMatrix,
    image_basis,
    is_zero_vector,
    kernel_basis,
    unit_vector,
    zero_vector,
)

MESSAGE_CATEGORY = "DGInvariantToolkit"
LOGGER = logging.getLogger(MESSAGE_CATEGORY)

DEFAULT_RESOLUTION_LENGTH = 4
AUTOMORPHISM_CHECK_DEGREE = 8


def _contract_last(tensor, vector):
    """sum_j tensor[:, :, j] * vector[j] as a 2-d object array."""
    rows, cols, depth = tensor.shape
    if rows == 0 or cols == 0 or depth == 0:
        field_zero = _zero_like(vector)
        out = np.empty((rows, cols), dtype=object)
        out[...] = field_zero
        return out
    return np.tensordot(tensor, vector, axes=([2], [0]))


def _contract_middle(vector, tensor):
    """sum_i vector[i] * tensor[:, i, :] as a 2-d object array."""
    rows, middle, cols = tensor.shape
    if rows == 0 or middle == 0 or cols == 0:
        out = np.empty((rows, cols), dtype=object)
        out[...] = _zero_like(vector)
        return out
    return np.tensordot(vector, tensor, axes=([0], [1]))


def _zero_like(vector):
    for x in vector:
        return x.field.zero
    return 0


class GradedAlgebraData:
    """Dimensions and structure constants of a connected graded algebra B
    through internal degree ``max_degree``."""

    def __init__(self, field, dims, product_source, name=None):
        self.field = field
        self.dims = tuple(int(h) for h in dims)
        self.max_degree = len(self.dims) - 1
        self.name = name
        self._source = product_source
        self._tensors = {}
        assert self.dims[0] == 1, "graded algebra is not connected"

    @classmethod
    def from_presented(cls, algebra, D):
        algebra.warm_up(D)
        return cls(
            algebra.field,
            [algebra.dim(n) for n in range(D + 1)],
            algebra.structure_constants,
            name=algebra.name,
        )

    @classmethod
    def from_cohomology(cls, view):
        return cls(
            view.field,
            view.dims,
            view.structure_constants,
            name=f"H({getattr(view.source, 'name', None) or view.source!r})",
        )

    def __repr__(self):
        return f"GradedAlgebraData({self.name}, dims={self.dims})"

    def dim(self, n):
        if n < 0:
            return 0
        if n > self.max_degree:
            raise ValueError(f"degree {n} is beyond the window {self.max_degree}")
        return self.dims[n]

    def product_tensor(self, p, q):
        tensor = self._tensors.get((p, q))
        if tensor is None:
            if p + q > self.max_degree:
                raise ValueError(f"product in degree {p + q} beyond the window")
            tensor = self._source(p, q)
            self._tensors[(p, q)] = tensor
        return tensor

    def multiply(self, p, u, q, v):
        if self.dim(p + q) == 0:
            return zero_vector(self.field, 0)
        if not len(u) or not len(v):
            return zero_vector(self.field, self.dim(p + q))
        return _contract_last(self.product_tensor(p, q), v) @ u

    def left_multiplication(self, p, u, q):
        """Matrix of b -> u*b from B_q to B_(p+q)."""
        return ExactMatrix(self.field, _contract_middle(u, self.product_tensor(p, q)))

    def check_associativity(self, samples=25, seed=0):
        """(ab)c = a(bc) on random basis triples."""
        rng = np.random.default_rng(seed)
        top = self.max_degree
        triples = [
            (p, q, r)
            for p in range(top + 1)
            for q in range(top + 1 - p)
            for r in range(top + 1 - p - q)
            if self.dims[p] and self.dims[q] and self.dims[r]
        ]
        for _ in range(samples):
            p, q, r = triples[int(rng.integers(len(triples)))]
            a = unit_vector(self.field, self.dims[p], int(rng.integers(self.dims[p])))
            b = unit_vector(self.field, self.dims[q], int(rng.integers(self.dims[q])))
            c = unit_vector(self.field, self.dims[r], int(rng.integers(self.dims[r])))
            left = self.multiply(p + q, self.multiply(p, a, q, b), r, c)
            right = self.multiply(p, a, q + r, self.multiply(q, b, r, c))
            if any(x != y for x, y in zip(left, right)):
                return False
        return True

    def generator_degrees(self):
        """Degrees n with B_n not spanned by products of lower positive
        degrees, repeated by the number of generators needed."""
        degrees = []
        for n in range(1, self.max_degree + 1):
            echelon = EchelonBasis(self.field, self.dims[n])
            for p in range(1, n):
                tensor = self.product_tensor(p, n - p)
                for i in range(self.dims[p]):
                    for j in range(self.dims[n - p]):
                        echelon.add(tensor[:, i, j])
            degrees.extend([n] * (self.dims[n] - len(echelon)))
        return degrees


class GradedAutomorphism:
    """Degree-preserving algebra automorphism of B as per-degree matrices."""

    def __init__(self, B, matrices, name=None, check_degree=AUTOMORPHISM_CHECK_DEGREE):
        self.algebra = B
        self.name = name
        self.matrices = list(matrices)
        if len(self.matrices) <= B.max_degree:
            raise NotAnHAutomorphism(
                f"matrices given through degree {len(self.matrices) - 1}, "
                f"need {B.max_degree}"
            )
        self._inverses = {}
        for n in range(B.max_degree + 1):
            if self.matrices[n].shape != (B.dims[n], B.dims[n]):
                raise NotAnHAutomorphism(f"matrix in degree {n} has the wrong shape")
            try:
                self._inverses[n] = self.matrices[n].inverse()
            except ZeroDivisionError:
                raise NotAnHAutomorphism(f"not invertible in degree {n}")
        top = min(B.max_degree, check_degree)
        for p in range(top + 1):
            for q in range(top + 1 - p):
                if not self._respects_product(p, q):
                    raise NotAnHAutomorphism(
                        f"does not respect the product B_{p} x B_{q}"
                    )

    @classmethod
    def from_morphism(cls, B, sigma, name=None, check_degree=AUTOMORPHISM_CHECK_DEGREE):
        return cls(
            B,
            [sigma.matrix(n) for n in range(B.max_degree + 1)],
            name=name or sigma.name,
            check_degree=check_degree,
        )

    def _respects_product(self, p, q):
        B = self.algebra
        tensor = B.product_tensor(p, q)
        if 0 in tensor.shape:
            return True
        lhs = np.tensordot(self.matrices[p + q].entries, tensor, axes=([1], [0]))
        rhs = np.tensordot(tensor, self.matrices[p].entries, axes=([1], [0]))
        rhs = np.tensordot(rhs, self.matrices[q].entries, axes=([1], [0]))
        return all(a == b for a, b in zip(lhs.flat, rhs.flat))

    def matrix(self, n):
        return self.matrices[n]

    def inverse_matrix(self, n):
        return self._inverses[n]


class ResolutionData:
    """F_0 <- F_1 <- ... <- F_L, free left B-modules recorded by generator
    degrees.

    ``images[i][j]`` is the boundary of the j-th generator of F_i, a vector
    in (F_(i-1)) at that generator's degree, laid out generator by generator.
    """

    def __init__(self, B, length, max_degree):
        self.algebra = B
        self.length = length
        self.max_degree = max_degree
        self.generators = [[0]] + [[] for _ in range(length)]
        self.images = [[]] + [[] for _ in range(length)]
        self.exhausted = [False] * (length + 1)
        self.reach = 0
        self._differentials = {}
        self._duals = {}

    def __repr__(self):
        spots = ", ".join(
            f"F{i}:{tuple(g)}" for i, g in enumerate(self.generators)
        )
        return f"ResolutionData({spots})"

    def betti_degrees(self, i):
        return tuple(self.generators[i]) if i <= self.length else ()

    def layout(self, i, n):
        """[(generator index, offset, block size)] of (F_i)_n."""
        B = self.algebra
        blocks = []
        offset = 0
        for j, a in enumerate(self.generators[i]):
            if a <= n:
                size = B.dim(n - a)
                blocks.append((j, offset, size))
                offset += size
        return blocks

    def component_dim(self, i, n):
        return sum(size for _, _, size in self.layout(i, n))

    def coefficient_degree(self, i, n, vector):
        """Largest degree of a B-coefficient in a boundary ``vector`` of
        (F_(i-1))_n."""
        return max(
            (
                n - self.generators[i - 1][k]
                for k, offset, size in self.layout(i - 1, n)
                if not is_zero_vector(vector[offset : offset + size])
            ),
            default=0,
        )

    def block(self, i, j, k):
        """Coefficient in B of generator k of F_(i-1) in d(e_ij)."""
        a = self.generators[i][j]
        for index, offset, size in self.layout(i - 1, a):
            if index == k:
                return self.images[i][j][offset : offset + size]
        return None

    def differential(self, i, n):
        """Matrix of d_i : (F_i)_n -> (F_(i-1))_n."""
        key = (i, n)
        matrix = self._differentials.get(key)
        if matrix is None:
            B = self.algebra
            rows = self.layout(i - 1, n)
            matrix = ExactMatrix.zeros(
                B.field, self.component_dim(i - 1, n), self.component_dim(i, n)
            )
            for j, col_offset, col_size in self.layout(i, n):
                a = self.generators[i][j]
                for k, row_offset, row_size in rows:
                    coefficient = self.block(i, j, k)
                    if coefficient is None or not len(np.flatnonzero(coefficient)):
                        continue
                    a_k = self.generators[i - 1][k]
                    tensor = B.product_tensor(n - a, a - a_k)
                    matrix.entries[
                        row_offset : row_offset + row_size,
                        col_offset : col_offset + col_size,
                    ] = _contract_last(tensor, coefficient)
            self._differentials[key] = matrix
        return matrix

    def forget(self, i, n):
        self._differentials.pop((i, n), None)

    def hom_layout(self, i, j):
        """[(generator index, offset, block size)] of Hom_B(F_i, B)_j."""
        B = self.algebra
        blocks = []
        offset = 0
        for k, a in enumerate(self.generators[i]):
            if a + j >= 0:
                size = B.dim(a + j)
                blocks.append((k, offset, size))
                offset += size
        return blocks

    def hom_dim(self, i, j):
        return sum(size for _, _, size in self.hom_layout(i, j))

    def dual_differential(self, i, j):
        """Matrix of f -> f o d_i from Hom(F_(i-1), B)_j to Hom(F_i, B)_j."""
        key = (i, j)
        matrix = self._duals.get(key)
        if matrix is None:
            B = self.algebra
            sources = self.hom_layout(i - 1, j)
            matrix = ExactMatrix.zeros(
                B.field, self.hom_dim(i, j), self.hom_dim(i - 1, j)
            )
            for e, row_offset, row_size in self.hom_layout(i, j):
                a = self.generators[i][e]
                for k, col_offset, col_size in sources:
                    coefficient = self.block(i, e, k)
                    if coefficient is None or not len(np.flatnonzero(coefficient)):
                        continue
                    a_k = self.generators[i - 1][k]
                    tensor = B.product_tensor(a - a_k, a_k + j)
                    matrix.entries[
                        row_offset : row_offset + row_size,
                        col_offset : col_offset + col_size,
                    ] = _contract_middle(coefficient, tensor)
            self._duals[key] = matrix
        return matrix

    def require_complete(self, i):
        if self.exhausted[i]:
            raise WindowExhausted(
                f"F_{i} acquired generators near the window edge "
                f"{self.max_degree}; more may exist beyond it"
            )


def minimal_resolution(
    B, L=DEFAULT_RESOLUTION_LENGTH, D=None, strict=False, post_step_callback=None
):
    """Minimal free resolution of k over B, spots F_0..F_L, through
    internal degree D."""
    D = B.max_degree if D is None else min(D, B.max_degree)
    field = B.field
    resolution = ResolutionData(B, L, D)
    margin = max(B.generator_degrees(), default=1)
    reach = margin

    for n in range(1, D + 1):
        for i in range(1, min(L, n) + 1):
            if i == 1:
                cycles = [unit_vector(field, B.dim(n), s) for s in range(B.dim(n))]
            else:
                cycles = kernel_basis(resolution.differential(i - 1, n))
            echelon = EchelonBasis(field, resolution.component_dim(i - 1, n))
            for column in image_basis(resolution.differential(i, n)):
                echelon.add(column)
            new = [z for z in cycles if echelon.add(z)]
            assert len(echelon) == len(cycles), (
                f"resolution is not exact at F_{i - 1} in degree {n}"
            )
            if new:
                for z in new:
                    reach = max(reach, resolution.coefficient_degree(i, n, z))
                resolution.generators[i].extend([n] * len(new))
                resolution.images[i].extend(new)
                resolution.forget(i, n)
                if n > D - margin:
                    resolution.exhausted[i] = True
            if post_step_callback and post_step_callback(i, n, len(new)) is False:
                LOGGER.info("resolution cancelled in degree %d", n)
                resolution.exhausted[1:] = [True] * L
                return resolution
    # F_i may have generators above D once a generator a of F_(i-1) has
    # a + reach > D, reach being the largest coefficient degree seen in d.
    for i in range(1, L + 1):
        previous = resolution.generators[i - 1]
        if resolution.exhausted[i - 1] or any(a + reach > D for a in previous):
            resolution.exhausted[i] = True
    resolution.reach = reach
    LOGGER.info("resolution over %r: %r", B, resolution)
    if strict:
        for i in range(1, L + 1):
            resolution.require_complete(i)
    return resolution


@dataclass
class ExtTable:
    """dim Ext^i_B(k, B)_j for i <= L; None where the window cannot tell."""

    length: int
    window: int
    entries: dict
    trusted: dict

    def dim(self, i, j):
        return self.entries.get((i, j), 0)

    def nonzero(self, trusted_only=True):
        return sorted(
            (i, j, dim)
            for (i, j), dim in self.entries.items()
            if dim and (self.trusted[(i, j)] or not trusted_only)
        )

    def untrusted(self):
        return sorted(key for key, ok in self.trusted.items() if not ok)

    def to_frame(self):
        rows = [
            {"i": i, "j": j, "dim": dim, "trusted": self.trusted[(i, j)]}
            for (i, j), dim in sorted(self.entries.items())
            if dim
        ]
        return pd.DataFrame(rows, columns=["i", "j", "dim", "trusted"])


def ext_table(B, resolution, L=None, window=None):
    """Graded Ext^i(k, B) for i <= L from the dual of the resolution.

    Hom_B(B(-a), B)_j = B_(a+j). An entry is trusted when every generator
    degree a of F_(i-1), F_i, F_(i+1) has a + j inside the window and neither
    F_i nor F_(i+1) was flagged exhausted. F_(i+1) is flagged as soon as a
    generator of F_i lies within ``resolution.reach`` of the window edge, so
    a trusted entry never misses a generator of F_(i+1) that d could reach.
    """
    L = resolution.length - 1 if L is None else L
    if L + 1 > resolution.length:
        raise ValueError(f"Ext^{L} needs the resolution through F_{L + 1}")
    D = resolution.max_degree if window is None else min(window, resolution.max_degree)
    entries, trusted = {}, {}
    for i in range(L + 1):
        nearby = list(resolution.generators[i]) + list(resolution.generators[i + 1])
        if i >= 1:
            nearby += resolution.generators[i - 1]
        complete = not (resolution.exhausted[i] or resolution.exhausted[i + 1])
        for j in range(-D, D + 1):
            if any(a + j > D for a in nearby):
                entries[(i, j)] = None
                trusted[(i, j)] = False
                continue
            hom_dim = resolution.hom_dim(i, j)
            if not hom_dim:
                entries[(i, j)] = 0
                trusted[(i, j)] = complete
                continue
            outgoing = resolution.dual_differential(i + 1, j).rank()
            incoming = resolution.dual_differential(i, j).rank() if i >= 1 else 0
            entries[(i, j)] = hom_dim - outgoing - incoming
            trusted[(i, j)] = complete
    return ExtTable(L, D, entries, trusted)


@dataclass(frozen=True)
class ConsistentASGorenstein:
    d: int
    l: int  # noqa: E741
    kind = "ConsistentASGorenstein"
    passed = True

    def to_dict(self):
        return {"kind": self.kind, "d": self.d, "l": self.l}

    def __str__(self):
        return f"ConsistentASGorenstein(d={self.d}, l={self.l})"


@dataclass(frozen=True)
class Refuted:
    witness: str
    kind = "Refuted"
    passed = False

    def to_dict(self):
        return {"kind": self.kind, "witness": self.witness}

    def __str__(self):
        return f"Refuted({self.witness})"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    kind = "Inconclusive"
    passed = None

    def to_dict(self):
        return {"kind": self.kind, "reason": self.reason}

    def __str__(self):
        return f"Inconclusive({self.reason})"


def gorenstein_probe(
    B, L=DEFAULT_RESOLUTION_LENGTH, D=None, resolution=None, table=None
):
    """Left-sided AS-Gorenstein test on Ext(k, B) inside the window."""
    if resolution is None:
        resolution = minimal_resolution(B, L + 1, D)
    if table is None:
        table = ext_table(B, resolution, L)
    nonzero = table.nonzero()
    indices = sorted({i for i, _, _ in nonzero})
    if len(indices) > 1:
        first, second = indices[:2]
        return Refuted(f"Ext^{first} and Ext^{second} are both nonzero")
    if not indices:
        if table.untrusted():
            return Inconclusive(
                f"no nonzero Ext^i for i <= {L} inside the window "
                f"({len(table.untrusted())} entries undecided)"
            )
        return Refuted(f"Ext^i(k, B) = 0 for all i <= {L}")
    d = indices[0]
    total = sum(dim for _, _, dim in nonzero)
    if total > 1:
        spread = ", ".join(f"j={j}: {dim}" for _, j, dim in nonzero)
        return Refuted(f"Ext^{d} has dimension {total} ({spread})")
    blocked = [i for i in range(d + 2) if resolution.exhausted[i]]
    if blocked:
        return Inconclusive(
            f"resolution spots {blocked} may continue beyond the window"
        )
    _, j, _ = nonzero[0]
    return ConsistentASGorenstein(d, -j)
