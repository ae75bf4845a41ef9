# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            Exact arithmetic in number fields Q[t]/(m(t)) and dense
                 exact linear algebra over them.

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

import functools
from fractions import Fraction
from math import gcd

import numpy as np
import sympy

from errors import (
    DegreeTooLarge,
    FieldMismatch,
    InputError,
    ReducibleMinimalPolynomial,
)

MAX_FIELD_DEGREE = 4
VARIABLE = "t"

_T = sympy.Symbol(VARIABLE)


def make_field(min_poly):
    """Return the number field Q[t]/(min_poly).

    ``min_poly`` is either a string such as ``"t^2 + t + 1"`` or a sequence
    of integer coefficients, highest power first (``[1, 1, 1]``).
    """
    if isinstance(min_poly, str):
        coefficients = _parse_minimal_polynomial(min_poly)
    else:
        coefficients = tuple(min_poly)
    if any(Fraction(c).denominator != 1 for c in coefficients):
        raise InputError(f"minimal polynomial {min_poly!r} must be integral")
    return _make_field(tuple(int(c) for c in coefficients))


@functools.lru_cache(maxsize=None)
def _make_field(coefficients):
    while coefficients and coefficients[0] == 0:
        coefficients = coefficients[1:]
    degree = len(coefficients) - 1
    if degree < 1:
        raise InputError("minimal polynomial must have degree at least 1")
    if degree > MAX_FIELD_DEGREE:
        raise DegreeTooLarge(
            f"minimal polynomial of degree {degree} exceeds the supported "
            f"maximum {MAX_FIELD_DEGREE}"
        )
    if coefficients[0] != 1:
        raise InputError("minimal polynomial must be monic")
    poly = sympy.Poly(list(coefficients), _T, domain="QQ")
    if not poly.is_irreducible:
        factors = " * ".join(
            f"({str(f.as_expr()).replace('**', '^')})"
            for f, _ in poly.factor_list()[1]
        )
        raise ReducibleMinimalPolynomial(
            f"{_render_coefficients(coefficients)} factors as {factors}"
        )
    return NumberField(coefficients)


def _parse_minimal_polynomial(text):
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={VARIABLE: _T})
        poly = sympy.Poly(expr, _T)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as e:
        raise InputError(f"cannot read minimal polynomial {text!r}: {e}")
    coefficients = poly.all_coeffs()
    if poly.free_symbols - {_T} or not all(c.is_Rational for c in coefficients):
        raise InputError(
            f"minimal polynomial {text!r} must have rational coefficients "
            f"in {VARIABLE}"
        )
    return tuple(Fraction(int(c.p), int(c.q)) for c in coefficients)


def _render_coefficients(coefficients):
    return _render_polynomial([Fraction(c) for c in reversed(coefficients)])


def _render_polynomial(ascending):
    terms = []
    for power in range(len(ascending) - 1, -1, -1):
        c = ascending[power]
        if not c:
            continue
        if power == 0:
            body = str(abs(c))
        else:
            monomial = VARIABLE if power == 1 else f"{VARIABLE}^{power}"
            body = monomial if abs(c) == 1 else f"{abs(c)}*{monomial}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) if terms else "0"


class NumberField:
    """The field Q[t]/(m(t)) for a monic irreducible integer polynomial m.

    Use :func:`make_field` to obtain instances; fields with the same minimal
    polynomial compare equal.
    """

    def __init__(self, coefficients):
        self.minimal_polynomial = tuple(coefficients)
        self.degree = len(coefficients) - 1
        # m(t) = t^n + sum tail[i] t^i
        self.tail = tuple(reversed(coefficients[1:]))
        n = self.degree
        self.zero = Scalar._make(self, (0,) * n, 1)
        self.one = Scalar._make(self, (1,) + (0,) * (n - 1), 1)
        if n == 1:
            self.generator = Scalar._make(self, (-self.tail[0],), 1)
        else:
            self.generator = Scalar._make(self, (0, 1) + (0,) * (n - 2), 1)

    @property
    def is_rational(self):
        return self.degree == 1

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.minimal_polynomial == other.minimal_polynomial

    def __hash__(self):
        return hash(self.minimal_polynomial)

    def __repr__(self):
        return f"NumberField({self.polynomial_text()})"

    def polynomial_text(self):
        return _render_coefficients(self.minimal_polynomial)

    def __call__(self, value):
        """Coerce an int, Fraction, Scalar or ascending coefficient list."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value!r} does not live in {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if not value:
                return self.zero
            return Scalar._make(self, (value,) + (0,) * (self.degree - 1), 1)
        if isinstance(value, Fraction):
            return self.from_coefficients([value])
        if isinstance(value, (list, tuple)):
            return self.from_coefficients(value)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def from_coefficients(self, ascending):
        """Residue class of sum c_i t^i with rational c_i."""
        fractions = [Fraction(c) for c in ascending]
        den = 1
        for c in fractions:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in fractions]
        return Scalar._normalized(self, self._reduce(nums), den)

    def _reduce(self, nums):
        n = self.degree
        nums = list(nums) + [0] * max(0, n - len(nums))
        tail = self.tail
        for k in range(len(nums) - 1, n - 1, -1):
            v = nums[k]
            if v:
                base = k - n
                for i in range(n):
                    if tail[i]:
                        nums[base + i] -= v * tail[i]
                nums[k] = 0
        return tuple(nums[:n])

    def power_of_generator(self, k):
        return self.generator**k


class Scalar:
    """An element of a NumberField: integer numerators over one denominator.

    ``nums`` holds the coefficients of 1, t, ..., t^(n-1); the value is
    ``sum(nums[i] * t^i) / den`` with ``den > 0`` and the content reduced.
    """

    __slots__ = ("field", "nums", "den")

    def __init__(self, field, ascending):
        other = field.from_coefficients(ascending)
        self.field = field
        self.nums = other.nums
        self.den = other.den

    @classmethod
    def _make(cls, field, nums, den):
        scalar = object.__new__(cls)
        scalar.field = field
        scalar.nums = nums
        scalar.den = den
        return scalar

    @classmethod
    def _normalized(cls, field, nums, den):
        if den < 0:
            nums = tuple(-x for x in nums)
            den = -den
        g = den
        for x in nums:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        else:
            if not any(nums):
                return field.zero
        if g != 1:
            nums = tuple(x // g for x in nums)
            den //= g
        return cls._make(field, tuple(nums), den)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(
                    f"cannot combine elements of {self.field!r} "
                    f"and {other.field!r}"
                )
            return other
        if isinstance(other, (int, np.integer, Fraction)):
            return self.field(other)
        return NotImplemented

    # arithmetic

    def __bool__(self):
        return any(self.nums)

    def __neg__(self):
        return Scalar._make(self.field, tuple(-x for x in self.nums), self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        field = self.field
        if field.degree == 1:
            a, b = self.den, other.den
            return Scalar._normalized(
                field, (self.nums[0] * b + other.nums[0] * a,), a * b
            )
        if self.den == other.den:
            nums = tuple(x + y for x, y in zip(self.nums, other.nums))
            return Scalar._normalized(field, nums, self.den)
        nums = tuple(
            x * other.den + y * self.den for x, y in zip(self.nums, other.nums)
        )
        return Scalar._normalized(field, nums, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        field = self.field
        if not self or not other:
            return field.zero
        if field.degree == 1:
            return Scalar._normalized(
                field, (self.nums[0] * other.nums[0],), self.den * other.den
            )
        n = field.degree
        product = [0] * (2 * n - 1)
        for i, x in enumerate(self.nums):
            if x:
                for j, y in enumerate(other.nums):
                    if y:
                        product[i + j] += x * y
        return Scalar._normalized(
            field, field._reduce(product), self.den * other.den
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in a number field")
        field = self.field
        if field.degree == 1:
            return Scalar._normalized(field, (self.den,), self.nums[0])
        # Solve (nums * x) = 1 as a linear system in the coefficients of x.
        n = field.degree
        columns = []
        power = list(self.nums)
        for _ in range(n):
            columns.append(power)
            power = list(field._reduce([0] + power))
        system = [
            [Fraction(columns[j][i]) for j in range(n)] + [Fraction(i == 0)]
            for i in range(n)
        ]
        for c in range(n):
            p = next(r for r in range(c, n) if system[r][c])
            system[c], system[p] = system[p], system[c]
            pivot = system[c][c]
            system[c] = [v / pivot for v in system[c]]
            for r in range(n):
                if r != c and system[r][c]:
                    f = system[r][c]
                    system[r] = [a - f * b for a, b in zip(system[r], system[c])]
        solution = field.from_coefficients([row[n] for row in system])
        return solution * self.den

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, np.integer)):
            return NotImplemented
        exponent = int(exponent)
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.field.one, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # comparison and hashing

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (
                self.nums == other.nums
                and self.den == other.den
                and self.field == other.field
            )
        if isinstance(other, (int, np.integer, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        if not any(self.nums[1:]):
            return hash(Fraction(self.nums[0], self.den))
        return hash((self.nums, self.den))

    # inspection

    @property
    def coefficients(self):
        return tuple(Fraction(x, self.den) for x in self.nums)

    @property
    def is_rational(self):
        return not any(self.nums[1:])

    def to_fraction(self):
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def is_unit_rational(self):
        return self.den == 1 and self.is_rational and abs(self.nums[0]) == 1

    def is_negative_rational(self):
        return self.is_rational and self.nums[0] < 0

    def to_json(self):
        return [self.den, *self.nums]

    @classmethod
    def from_json(cls, field, data):
        den, *nums = data
        if len(nums) != field.degree or den <= 0:
            raise ValueError(f"malformed scalar {data!r} for {field!r}")
        return cls._normalized(field, tuple(int(x) for x in nums), int(den))

    def __str__(self):
        return _render_polynomial(self.coefficients)

    def __repr__(self):
        return f"Scalar({self})"


def multiplicative_order(z, max_order):
    """Smallest k <= max_order with z^k = 1, or None."""
    power = z
    for k in range(1, max_order + 1):
        if power == 1:
            return k
        power = power * z
    return None


def roots_of_unity(field, max_order=12):
    """Roots of unity of the form +-t^k in ``field``, 1 and -1 first."""
    found = {}
    for k in range(max_order + 1):
        for sign in (1, -1):
            z = field.generator**k * sign
            if z in found:
                continue
            order = multiplicative_order(z, max_order)
            if order is not None:
                found[z] = (order, k, sign < 0)
    return sorted(found, key=lambda z: found[z])


#
# Vectors are 1-d numpy object arrays of Scalars
#


def zero_vector(field, length):
    v = np.empty(length, dtype=object)
    v[:] = [field.zero] * length
    return v


def unit_vector(field, length, index):
    v = zero_vector(field, length)
    v[index] = field.one
    return v


def as_vector(field, values):
    v = np.empty(len(values), dtype=object)
    v[:] = [field(x) for x in values]
    return v


def is_zero_vector(vector):
    return len(np.flatnonzero(vector)) == 0


def vector_key(vector):
    """Hashable form of a vector, for deduplication."""
    return tuple((x.nums, x.den) for x in vector)


class ExactMatrix:
    """A dense matrix of Scalars backed by a numpy object array."""

    __slots__ = ("field", "entries")

    def __init__(self, field, entries):
        self.field = field
        self.entries = entries

    @classmethod
    def zeros(cls, field, rows, cols):
        entries = np.empty((rows, cols), dtype=object)
        entries[...] = field.zero
        return cls(field, entries)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.entries[i, i] = field.one
        return m

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        m = cls.zeros(field, len(rows), cols)
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError("ragged rows in matrix literal")
            for j, value in enumerate(row):
                m.entries[i, j] = field(value)
        return m

    @classmethod
    def from_columns(cls, field, columns, rows):
        m = cls.zeros(field, rows, len(columns))
        for j, column in enumerate(columns):
            m.entries[:, j] = column
        return m

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape

    def __getitem__(self, index):
        return self.entries[index]

    def column(self, j):
        return self.entries[:, j].copy()

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def copy(self):
        return ExactMatrix(self.field, self.entries.copy())

    @property
    def T(self):
        return ExactMatrix(self.field, self.entries.T.copy())

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            if self.cols == 0:
                return ExactMatrix.zeros(self.field, self.rows, other.cols)
            return ExactMatrix(self.field, _dot(self.entries, other.entries))
        vector = np.asarray(other, dtype=object)
        if self.cols != len(vector):
            raise ValueError(f"shape mismatch {self.shape} @ ({len(vector)},)")
        if self.cols == 0:
            return zero_vector(self.field, self.rows)
        return _dot(self.entries, vector)

    def __add__(self, other):
        return ExactMatrix(self.field, self.entries + other.entries)

    def __sub__(self, other):
        return ExactMatrix(self.field, self.entries - other.entries)

    def __neg__(self):
        return ExactMatrix(self.field, -self.entries)

    def scale(self, c):
        c = self.field(c)
        return ExactMatrix(self.field, self.entries * c)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self.entries.flat, other.entries.flat)
        )

    __hash__ = None

    def is_zero(self):
        return len(np.flatnonzero(self.entries)) == 0

    def is_identity(self):
        return self == ExactMatrix.identity(self.field, self.rows)

    def trace(self):
        total = self.field.zero
        for i in range(min(self.shape)):
            total = total + self.entries[i, i]
        return total

    def rank(self):
        return len(rref(self)[1])

    def inverse(self):
        n = self.rows
        if self.cols != n:
            raise ValueError("only square matrices have inverses")
        augmented = ExactMatrix(
            self.field,
            np.hstack([self.entries, ExactMatrix.identity(self.field, n).entries]),
        )
        reduced, pivots = rref(augmented)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return ExactMatrix(self.field, reduced.entries[:, n:].copy())

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.entries]

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(x) for x in row) for row in self.entries
        )
        return f"ExactMatrix[{self.rows}x{self.cols}]({body})"


def _dot(a, b):
    result = np.dot(a, b)
    if isinstance(result, np.ndarray):
        return result
    return np.array(result, dtype=object)


def rref(matrix):
    """Reduced row echelon form and the pivot columns.

    Among the candidate pivot rows of a column, a row whose entry is +-1 is
    preferred.
    """
    rows, cols = matrix.shape
    a = matrix.entries.copy()
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        candidates = np.flatnonzero(a[r:, c]) + r
        if not len(candidates):
            continue
        pivot_row = next(
            (i for i in candidates if a[i, c].is_unit_rational()), candidates[0]
        )
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        support = np.flatnonzero(a[r, c:]) + c
        pivot = a[r, c]
        if pivot != 1:
            a[r, support] = a[r, support] * pivot.inverse()
        for i in np.flatnonzero(a[:, c]):
            if i != r:
                a[i, support] = a[i, support] - a[i, c] * a[r, support]
        pivots.append(int(c))
        r += 1
    assert len(pivots) <= min(rows, cols)
    assert all(p < q for p, q in zip(pivots, pivots[1:]))
    return ExactMatrix(matrix.field, a), pivots


def kernel_basis(matrix):
    """Basis of the null space, one vector per non-pivot column."""
    field = matrix.field
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [j for j in range(matrix.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = unit_vector(field, matrix.cols, f)
        for k, p in enumerate(pivots):
            v[p] = -reduced.entries[k, f]
        basis.append(v)
    assert len(basis) + len(pivots) == matrix.cols, "rank-nullity violated"
    return basis


def image_basis(matrix):
    """Independent columns of ``matrix`` spanning its column space."""
    _, pivots = rref(matrix)
    return [matrix.column(p) for p in pivots]


def kernel_and_image(matrix):
    """``(kernel_basis(matrix), image_basis(matrix))`` from one reduction."""
    field = matrix.field
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    kernel = []
    for f in range(matrix.cols):
        if f in pivot_set:
            continue
        v = unit_vector(field, matrix.cols, f)
        for k, p in enumerate(pivots):
            v[p] = -reduced.entries[k, f]
        kernel.append(v)
    assert len(kernel) + len(pivots) == matrix.cols, "rank-nullity violated"
    return kernel, [matrix.column(p) for p in pivots]


class _NotInSpan:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotInSpan"


NotInSpan = _NotInSpan()


class SpanSolver:
    """Answers repeated ``solve_in_span`` queries against fixed generators."""

    def __init__(self, field, generators, length):
        self.field = field
        self.length = length
        self.n_generators = len(generators)
        k = self.n_generators
        augmented = ExactMatrix.zeros(field, length, k + length)
        for j, g in enumerate(generators):
            if len(g) != length:
                raise ValueError("generators must all have the same length")
            augmented.entries[:, j] = g
        for i in range(length):
            augmented.entries[i, k + i] = field.one
        reduced, pivots = rref(augmented)
        self.pivots = [p for p in pivots if p < k]
        self.rank = len(self.pivots)
        self._transform = reduced.entries[:, k:].copy()

    def solve(self, target):
        if len(target) != self.length:
            raise ValueError("target has the wrong length")
        coefficients = zero_vector(self.field, self.n_generators)
        if not self.length:
            return coefficients
        y = _dot(self._transform, np.asarray(target, dtype=object))
        if len(np.flatnonzero(y[self.rank :])):
            return NotInSpan
        for i, p in enumerate(self.pivots):
            coefficients[p] = y[i]
        return coefficients

    def contains(self, target):
        return self.solve(target) is not NotInSpan


def solve_in_span(target, generators, field=None):
    """Coefficients c with sum c_i g_i = target, or NotInSpan."""
    if field is None:
        field = next(
            (x.field for x in target if isinstance(x, Scalar)), None
        ) or next(x.field for g in generators for x in g)
    return SpanSolver(field, generators, len(target)).solve(target)


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a subspace.

    Rows are kept fully reduced: each stored row has a leading 1 at its pivot
    and zeros at every other pivot column.
    """

    def __init__(self, field, length):
        self.field = field
        self.length = length
        self._rows = {}
        self._support = {}

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self):
        return sorted(self._rows)

    def row(self, pivot):
        return self._rows[pivot]

    def reduce(self, vector):
        v = np.array(vector, dtype=object)
        for p, row in self._rows.items():
            c = v[p]
            if c:
                support = self._support[p]
                v[support] = v[support] - c * row[support]
        return v

    def contains(self, vector):
        return is_zero_vector(self.reduce(vector))

    def add(self, vector):
        """Insert ``vector``; False if it already lies in the span."""
        r = self.reduce(vector)
        support = np.flatnonzero(r)
        if not len(support):
            return False
        p = int(support[0])
        if r[p] != 1:
            r[support] = r[support] * r[p].inverse()
        for q, row in self._rows.items():
            c = row[p]
            if c:
                row[support] = row[support] - c * r[support]
                self._support[q] = np.flatnonzero(row)
        self._rows[p] = r
        self._support[p] = support
        return True
