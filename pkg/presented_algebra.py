# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            Connected graded algebras given by generators and homogeneous
         relations, computed degree by degree.

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
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from errors import (
    CacheCorrupt,
    FieldMismatch,
    InhomogeneousInput,
    InhomogeneousRelation,
    InputError,
)
from scalars_linalg import (
    EchelonBasis,
    ExactMatrix,
    Scalar,
    is_zero_vector,
    unit_vector,
    zero_vector,
)

MESSAGE_CATEGORY = "DGInvariantToolkit"
LOGGER = logging.getLogger(MESSAGE_CATEGORY)

WORD_ORDERS = ("deglex", "degrevlex")


@dataclass(frozen=True)
class FreeSpec:
    """Generator names and their (positive) degrees.

    Words are tuples of generator indices.
    """

    names: tuple
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.names) != len(self.degrees):
            raise InputError("every generator needs exactly one degree")
        if len(set(self.names)) != len(self.names):
            raise InputError(f"duplicate generator names in {self.names}")
        for name, degree in zip(self.names, self.degrees):
            if not name.isidentifier():
                raise InputError(f"{name!r} is not a valid generator name")
            if degree < 1:
                raise InputError(
                    f"generator {name} has degree {degree}; degrees must be >= 1"
                )

    def __len__(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown generator {name!r}")

    def word_degree(self, word):
        return sum(self.degrees[g] for g in word)

    def word_count(self, d):
        return _word_count(self.degrees, d)

    def words(self, d):
        """All words of degree d, lexicographic in the declared order."""
        return _words(self.degrees, d)

    def render_word(self, word):
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j + 1 < len(word) and word[j + 1] == word[i]:
                j += 1
            name = self.names[word[i]]
            run = j - i + 1
            parts.append(name if run == 1 else f"{name}^{run}")
            i = j + 1
        return "*".join(parts)


@functools.lru_cache(maxsize=None)
def _word_count(degrees, d):
    if d == 0:
        return 1
    return sum(_word_count(degrees, d - g) for g in degrees if g <= d)


@functools.lru_cache(maxsize=None)
def _words(degrees, d):
    if d == 0:
        return ((),)
    return tuple(
        (g,) + rest
        for g, deg in enumerate(degrees)
        if deg <= d
        for rest in _words(degrees, d - deg)
    )


class NcPolynomial:
    """A linear combination of words with Scalar coefficients.

    Zero coefficients are never stored. Iteration follows the canonical
    order: by degree, then lexicographically.
    """

    __slots__ = ("spec", "field", "terms")

    def __init__(self, spec, field, terms=None):
        self.spec = spec
        self.field = field
        self.terms = {}
        for word, c in (terms or {}).items():
            c = field(c)
            if c:
                word = tuple(word)
                previous = self.terms.get(word)
                c = c if previous is None else previous + c
                if c:
                    self.terms[word] = c
                else:
                    del self.terms[word]

    @classmethod
    def _clean(cls, spec, field, terms):
        p = object.__new__(cls)
        p.spec = spec
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def zero(cls, spec, field):
        return cls._clean(spec, field, {})

    @classmethod
    def constant(cls, spec, field, value):
        return cls(spec, field, {(): value})

    @classmethod
    def monomial(cls, spec, field, word, coefficient=1):
        return cls(spec, field, {tuple(word): coefficient})

    @classmethod
    def generator(cls, spec, field, name):
        index = name if isinstance(name, int) else spec.index(name)
        return cls._clean(spec, field, {(index,): field.one})

    def _other(self, other):
        if isinstance(other, NcPolynomial):
            if other.spec != self.spec:
                raise InputError("polynomials over different generators")
            if other.field != self.field:
                raise FieldMismatch(
                    f"polynomials over {self.field!r} and {other.field!r}"
                )
            return other
        if isinstance(other, (int, Scalar)) or hasattr(other, "denominator"):
            return NcPolynomial.constant(self.spec, self.field, other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __neg__(self):
        return NcPolynomial._clean(
            self.spec, self.field, {w: -c for w, c in self.terms.items()}
        )

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            total = terms.get(w)
            total = c if total is None else total + c
            if total:
                terms[w] = total
            else:
                terms.pop(w, None)
        return NcPolynomial._clean(self.spec, self.field, terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, NcPolynomial):
            other = self._other(other)
            terms = {}
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    w = u + v
                    total = terms.get(w)
                    total = a * b if total is None else total + a * b
                    if total:
                        terms[w] = total
                    else:
                        terms.pop(w, None)
            return NcPolynomial._clean(self.spec, self.field, terms)
        c = self.field(other)
        if not c:
            return NcPolynomial.zero(self.spec, self.field)
        return NcPolynomial._clean(
            self.spec, self.field, {w: a * c for w, a in self.terms.items()}
        )

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent):
        result = NcPolynomial.constant(self.spec, self.field, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _sort_key(self, word):
        return (self.spec.word_degree(word), word)

    def words(self):
        return sorted(self.terms, key=self._sort_key)

    def items(self):
        return [(w, self.terms[w]) for w in self.words()]

    def coefficient(self, word):
        return self.terms.get(tuple(word), self.field.zero)

    def degrees(self):
        return {self.spec.word_degree(w) for w in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        degrees = self.degrees()
        if len(degrees) > 1:
            raise InhomogeneousInput(f"{self} is not homogeneous")
        return degrees.pop() if degrees else None

    def substitute(self, images):
        """Replace generator i by ``images[i]`` (an algebra map of free
        algebras)."""
        images = list(images)
        target = images[0] if images else self
        spec, field = target.spec, target.field
        result = NcPolynomial.zero(spec, field)
        one = NcPolynomial.constant(spec, field, 1)
        for word, c in self.terms.items():
            term = one
            for g in word:
                term = term * images[g]
            result = result + term * c
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for word, c in self.items():
            text = self.spec.render_word(word) if word else ""
            negative = c.is_negative_rational()
            magnitude = -c if negative else c
            if not word:
                body = str(magnitude)
                if not magnitude.is_rational:
                    body = f"({body})"
            elif magnitude == 1:
                body = text
            elif magnitude.is_rational:
                body = f"{magnitude}*{text}"
            else:
                body = f"({magnitude})*{text}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"NcPolynomial({self})"


@dataclass(frozen=True)
class HilbertFunction:
    """dim A^d for d = 0..max_degree."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        assert not self.values or self.values[0] == 1, "not connected"

    @property
    def max_degree(self):
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, d):
        return self.values[d]

    def __iter__(self):
        return iter(self.values)

    def convolve(self, other):
        top = min(self.max_degree, other.max_degree)
        return HilbertFunction(
            sum(self.values[i] * other.values[n - i] for i in range(n + 1))
            for n in range(top + 1)
        )

    def truncate(self, max_degree):
        return HilbertFunction(self.values[: max_degree + 1])

    def to_series(self, name="dim"):
        return pd.Series(
            self.values,
            index=pd.RangeIndex(len(self.values), name="degree"),
            name=name,
        )


class PresentedAlgebra:
    """k<generators> / (relations), computed degree by degree.

    The degree-d component is the quotient of the span of words b*g (b a
    normal word of lower degree, g a generator) by the rows b*r for the
    relations r. Pivots of the row reduction are taken at the smallest words
    under the word order, so the normal words are the largest ones and every
    prefix of a normal word is normal.
    """

    def __init__(self, spec, field, relations=(), order="deglex", name=None):
        if order not in WORD_ORDERS:
            raise InputError(f"word order must be one of {WORD_ORDERS}")
        self.spec = spec
        self.field = field
        self.order = order
        self.name = name
        cleaned = []
        for r in relations:
            if r.spec != spec:
                raise InputError(f"relation {r} uses other generators")
            if r.field != field:
                raise FieldMismatch(f"relation {r} is over {r.field!r}")
            if not r:
                continue
            if not r.is_homogeneous():
                raise InhomogeneousRelation(f"relation {r} is not homogeneous")
            if r.degree == 0:
                raise InhomogeneousRelation(f"relation {r} is a constant")
            cleaned.append(r)
        self.relations = tuple(cleaned)
        self._reset()

    def _reset(self):
        self._basis = [((),)]
        self._index = [{(): 0}]
        self._ideal_dims = [0]
        self._right = {}
        self._word_nf = {(): unit_vector(self.field, 1, 0)}
        self._word_matrices = {}
        self._structure = {}

    def __repr__(self):
        label = self.name or ",".join(self.spec.names)
        return f"PresentedAlgebra({label})"

    @property
    def generators(self):
        return tuple(
            NcPolynomial.generator(self.spec, self.field, i)
            for i in range(len(self.spec))
        )

    @property
    def warmed_degree(self):
        return len(self._basis) - 1

    def _order_key(self, word):
        return word if self.order == "deglex" else word[::-1]

    def warm_up(self, D, post_degree_callback=None):
        """Compute all components up to degree D."""
        for d in range(len(self._basis), D + 1):
            self._build_degree(d)
            if post_degree_callback:
                keep_running = post_degree_callback(d, len(self._basis[d]))
                if keep_running is False:
                    break
        return self

    def _ensure(self, d):
        if d >= len(self._basis):
            self.warm_up(d)

    def _build_degree(self, d):
        spec, field = self.spec, self.field
        pairs = []
        for g, deg in enumerate(spec.degrees):
            if deg <= d:
                for i, b in enumerate(self._basis[d - deg]):
                    pairs.append((b + (g,), d - deg, i, g))
        pairs.sort(key=lambda pair: self._order_key(pair[0]))
        column = {pair[0]: j for j, pair in enumerate(pairs)}

        echelon = EchelonBasis(field, len(pairs))
        for r in self.relations:
            k = r.degree
            if k > d:
                continue
            for u in self._basis[d - k]:
                row = zero_vector(field, len(pairs))
                for w, c in r.terms.items():
                    g = w[-1]
                    m = d - spec.degrees[g]
                    prefix = self._word_vector(u + w[:-1])
                    basis_m = self._basis[m]
                    for i in np.flatnonzero(prefix):
                        j = column[basis_m[i] + (g,)]
                        row[j] = row[j] + c * prefix[i]
                echelon.add(row)

        pivots = set(echelon.pivots)
        normal = sorted(pair[0] for j, pair in enumerate(pairs) if j not in pivots)
        index = {w: i for i, w in enumerate(normal)}
        right = {
            g: ExactMatrix.zeros(field, len(normal), len(self._basis[d - deg]))
            for g, deg in enumerate(spec.degrees)
            if deg <= d
        }
        for j, (word, _, i, g) in enumerate(pairs):
            if j in pivots:
                row = echelon.row(j)
                for k in np.flatnonzero(row):
                    if k != j:
                        right[g].entries[index[pairs[k][0]], i] = -row[k]
            else:
                right[g].entries[index[word], i] = field.one

        ideal_dim = len(echelon) + sum(
            spec.word_count(d - deg) - len(self._basis[d - deg])
            for deg in spec.degrees
            if deg <= d
        )
        assert len(normal) + ideal_dim == spec.word_count(d), (
            f"dimension count failed in degree {d}"
        )
        self._basis.append(tuple(normal))
        self._index.append(index)
        self._ideal_dims.append(ideal_dim)
        for g, matrix in right.items():
            self._right[(d - spec.degrees[g], g)] = matrix
        LOGGER.debug("%r: degree %d has dimension %d", self, d, len(normal))

    def _word_vector(self, word):
        v = self._word_nf.get(word)
        if v is None:
            g = word[-1]
            prefix = word[:-1]
            m = self.spec.word_degree(prefix)
            v = self._right[(m, g)] @ self._word_vector(prefix)
            self._word_nf[word] = v
        return v

    # degreewise access

    def degree_basis(self, d):
        """Normal words of degree d, sorted by (degree, lexicographic)."""
        if d < 0:
            return ()
        self._ensure(d)
        return self._basis[d]

    def dim(self, d):
        return len(self.degree_basis(d))

    def basis_index(self, d):
        self._ensure(d)
        return self._index[d]

    def ideal_dim(self, d):
        self._ensure(d)
        return self._ideal_dims[d]

    def hilbert(self, D):
        return HilbertFunction(self.dim(d) for d in range(D + 1))

    def right_multiplication(self, d, g):
        """Matrix of b -> b*g from degree d to degree d + |g|."""
        self._ensure(d + self.spec.degrees[g])
        return self._right[(d, g)]

    def word_matrix(self, d, word):
        """Matrix of b -> b*word from degree d."""
        key = (d, word)
        matrix = self._word_matrices.get(key)
        if matrix is None:
            matrix = ExactMatrix.identity(self.field, self.dim(d))
            degree = d
            for g in word:
                matrix = self.right_multiplication(degree, g) @ matrix
                degree += self.spec.degrees[g]
            self._word_matrices[key] = matrix
        return matrix

    # elements

    def word_normal_form(self, word):
        word = tuple(word)
        self._ensure(self.spec.word_degree(word))
        return self._word_vector(word)

    def normal_form(self, p, degree=None):
        """Coordinates of p over ``degree_basis`` of its degree."""
        if p.spec != self.spec:
            raise InputError(f"{p} is not over the generators of {self!r}")
        if p.field != self.field:
            raise FieldMismatch(f"{p} is over {p.field!r}")
        if not p:
            if degree is None:
                raise InhomogeneousInput("the degree of 0 must be given")
            return zero_vector(self.field, self.dim(degree))
        if not p.is_homogeneous():
            raise InhomogeneousInput(f"{p} is not homogeneous")
        d = p.degree
        if degree is not None and degree != d:
            raise InhomogeneousInput(f"{p} has degree {d}, expected {degree}")
        self._ensure(d)
        v = zero_vector(self.field, len(self._basis[d]))
        for w, c in p.terms.items():
            v = v + c * self._word_vector(w)
        return v

    def element(self, d, vector):
        basis = self.degree_basis(d)
        return NcPolynomial(
            self.spec, self.field, {basis[i]: vector[i] for i in np.flatnonzero(vector)}
        )

    def reduce(self, p, degree=None):
        """The normal-word representative of p."""
        d = p.degree if p else degree
        return self.element(d, self.normal_form(p, degree))

    def in_ideal(self, p, degree=None):
        return is_zero_vector(self.normal_form(p, degree))

    def multiply(self, p, q):
        """Normal form of p*q."""
        if not p or not q:
            degree = (p.degree if p else None, q.degree if q else None)
            if None in degree:
                raise InhomogeneousInput("the degree of 0 must be given")
            return zero_vector(self.field, self.dim(sum(degree)))
        return self.normal_form(p * q)

    def multiply_vectors(self, p, u, q, v):
        """Product of u in degree p and v in degree q, as a degree p+q
        vector."""
        self._ensure(p + q)
        result = zero_vector(self.field, len(self._basis[p + q]))
        basis_q = self._basis[q]
        for j in np.flatnonzero(v):
            w = u
            degree = p
            for g in basis_q[j]:
                w = self._right[(degree, g)] @ w
                degree += self.spec.degrees[g]
            result = result + v[j] * w
        return result

    def structure_constants(self, p, q):
        """T[:, i, j] = coordinates of basis_p[i] * basis_q[j]."""
        key = (p, q)
        tensor = self._structure.get(key)
        if tensor is None:
            self._ensure(p + q)
            tensor = np.empty((self.dim(p + q), self.dim(p), self.dim(q)), dtype=object)
            for j, word in enumerate(self._basis[q]):
                tensor[:, :, j] = self.word_matrix(p, word).entries
            self._structure[key] = tensor
        return tensor

    def ideal_basis(self, d):
        """w - NF(w) for every non-normal word w of degree d."""
        index = self.basis_index(d)
        return [
            NcPolynomial.monomial(self.spec, self.field, w)
            - self.element(d, self._word_vector(w))
            for w in self.spec.words(d)
            if w not in index
        ]

    # persistence

    def fingerprint(self):
        return {
            "generators": [list(self.spec.names), list(self.spec.degrees)],
            "field": list(self.field.minimal_polynomial),
            "relations": [str(r) for r in self.relations],
            "order": self.order,
        }

    def export_state(self):
        """Warmed degree data as plain JSON-serialisable values."""
        degrees = []
        for d in range(1, len(self._basis)):
            degrees.append(
                {
                    "basis": [list(w) for w in self._basis[d]],
                    "ideal_dim": self._ideal_dims[d],
                    "right": [
                        [g, self._right[(d - deg, g)].to_json()]
                        for g, deg in enumerate(self.spec.degrees)
                        if deg <= d
                    ],
                }
            )
        return {"fingerprint": self.fingerprint(), "degrees": degrees}

    def load_state(self, state):
        """Restore data written by :meth:`export_state`."""
        try:
            if state["fingerprint"] != self.fingerprint():
                raise CacheCorrupt("cached data belongs to another algebra")
            self._reset()
            for d, entry in enumerate(state["degrees"], start=1):
                basis = tuple(tuple(w) for w in entry["basis"])
                self._basis.append(basis)
                self._index.append({w: i for i, w in enumerate(basis)})
                self._ideal_dims.append(int(entry["ideal_dim"]))
                for g, rows in entry["right"]:
                    matrix = ExactMatrix.zeros(
                        self.field,
                        len(basis),
                        len(self._basis[d - self.spec.degrees[g]]),
                    )
                    for i, row in enumerate(rows):
                        for j, value in enumerate(row):
                            matrix.entries[i, j] = Scalar.from_json(self.field, value)
                    self._right[(d - self.spec.degrees[g], g)] = matrix
        except CacheCorrupt:
            self._reset()
            raise
        except (KeyError, TypeError, ValueError, IndexError) as e:
            self._reset()
            raise CacheCorrupt(f"malformed cached algebra data: {e}")
        return self


def tensor_product(A, B, check_degree, name=None):
    """A (x) B with Koszul-signed commutation of the two generator sets.

    The Hilbert function is compared with the convolution of the factors
    through ``check_degree``.
    """
    if A.field != B.field:
        raise FieldMismatch(f"{A!r} is over {A.field!r}, {B!r} over {B.field!r}")
    field = A.field
    names_a, names_b = A.spec.names, B.spec.names
    if set(names_a) & set(names_b):
        names_a = tuple(f"{n}_1" for n in names_a)
        names_b = tuple(f"{n}_2" for n in names_b)
    spec = FreeSpec(names_a + names_b, A.spec.degrees + B.spec.degrees)
    embed_a, embed_b = tensor_embeddings(spec, field, len(names_a), len(names_b))

    relations = [r.substitute(embed_a) for r in A.relations]
    relations += [r.substitute(embed_b) for r in B.relations]
    for i, deg_a in enumerate(A.spec.degrees):
        for j, deg_b in enumerate(B.spec.degrees):
            sign = -1 if deg_a * deg_b % 2 else 1
            relations.append(embed_b[j] * embed_a[i] - embed_a[i] * embed_b[j] * sign)

    product = PresentedAlgebra(
        spec,
        field,
        relations,
        order=A.order,
        name=name or f"{A.name or 'A'} (x) {B.name or 'B'}",
    )
    expected = A.hilbert(check_degree).convolve(B.hilbert(check_degree))
    assert product.hilbert(check_degree) == expected, (
        f"tensor product Hilbert function {product.hilbert(check_degree)} "
        f"differs from the convolution {expected}"
    )
    return product


def tensor_embeddings(spec, field, n_a, n_b):
    """Generator images of the two factors inside a tensor product."""
    embed_a = [NcPolynomial.generator(spec, field, i) for i in range(n_a)]
    embed_b = [NcPolynomial.generator(spec, field, n_a + j) for j in range(n_b)]
    return embed_a, embed_b


def free_algebra(names, degrees, field, order="deglex", name=None):
    return PresentedAlgebra(FreeSpec(names, degrees), field, (), order, name)


def trivial_algebra(field):
    """The base field as a graded algebra with no generators."""
    return PresentedAlgebra(FreeSpec((), ()), field, (), name="k")
