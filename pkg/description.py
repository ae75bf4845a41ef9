# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            The line-oriented algebra description format: parsing with
         located diagnostics, serialisation and construction of the
                       described DG algebra.

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

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

import families
from dg_core import DGAlgebra
from errors import (
    DegreeMismatch,
    DescriptionSyntaxError,
    FieldError,
    InputError,
    ToolkitError,
    UnknownGenerator,
    UnknownPreset,
)
from invariants import AlgebraMorphism
from presented_algebra import WORD_ORDERS, FreeSpec, NcPolynomial, PresentedAlgebra
from scalars_linalg import VARIABLE, make_field

BLOCKS = (
    "relations",
    "differential",
    "group",
    "classes",
    "class_relations",
    "options",
)
TOP_LEVEL_KEYS = ("algebra", "field", "generators")
OPTION_TYPES = {
    "max_degree": int,
    "resolution_length": int,
    "group_bound": int,
    "word_order": str,
}
DEFAULT_FIELD = "t"
PRESET_FORMS = (
    "A1",
    "A2",
    "A3",
    "down-up(alpha, beta[, c=.., d=.., family=1|2, c1=.., c2=.., c3=.., "
    "d1=.., d2=.., d3=..])",
    "dg-free(n, M1, ..., Mn)",
)

_TRANSFORMATIONS = standard_transformations + (convert_xor,)
_T = sympy.Symbol(VARIABLE)
_HEADER = re.compile(r"^\[(\w+)\]$")
_ASSIGNMENT = re.compile(r"^([^=]+?)\s*=\s*(.*)$")
_DIFFERENTIAL_LHS = re.compile(r"^(?:d\(\s*(\w+)\s*\)|(\w+))$")
_PRESET = re.compile(r"^([A-Za-z][\w-]*)\s*(?:\((.*)\))?$", re.S)


@dataclass
class Line:
    number: int
    text: str
    column: int = 1


@dataclass
class AlgebraDescription:
    """Everything a description text says, parsed and validated."""

    field: object
    generators: tuple
    relations: list = field(default_factory=list)
    differential: dict = field(default_factory=dict)
    group: list = field(default_factory=list)
    classes: dict = field(default_factory=dict)
    class_relations: list = field(default_factory=list)
    options: dict = field(default_factory=dict)
    preset: str = None

    @property
    def spec(self):
        return FreeSpec(
            [name for name, _ in self.generators],
            [degree for _, degree in self.generators],
        )

    @property
    def name(self):
        return self.preset or "A"

    def build(self, order=None):
        """The described DG algebra (not yet validated for presets given
        by explicit blocks)."""
        order = order or self.options.get("word_order", "deglex")
        if self.preset:
            return _build_preset(self.preset, self.field, order)
        spec = self.spec
        algebra = PresentedAlgebra(spec, self.field, self.relations, order=order)
        images = [self.differential.get(name) for name in spec.names]
        return DGAlgebra(algebra, images, name="A")

    def morphisms(self, dg):
        """The [group] block as AlgebraMorphisms of ``dg``'s algebra."""
        return [
            AlgebraMorphism(dg.algebra, images, name=name)
            for name, images in self.group
        ]

    def presentation(self, dg):
        """(cocycles, relations) from [classes], else a preset's own."""
        if self.classes:
            return dict(self.classes), list(self.class_relations)
        return families.preset_presentation(dg)

    def crisscross_tuple(self):
        """The matrix tuple of a dg-free preset."""
        match = _PRESET.match(self.preset or "")
        if not match or match.group(1) != "dg-free":
            raise InputError("expected algebra = dg-free(n, M1, ..., Mn)")
        positional, keywords = _split_arguments(match.group(2) or "")
        return _crisscross_tuple(self.field, positional, keywords)

    def digest(self):
        return hashlib.sha256(serialize(self).encode("utf-8")).hexdigest()

    def __eq__(self, other):
        if not isinstance(other, AlgebraDescription):
            return NotImplemented
        return serialize(self) == serialize(other)

    __hash__ = None


def _build_preset(text, field, order, check=True):
    match = _PRESET.match(text.strip())
    name, arguments = match.group(1), match.group(2)
    if name in families.PRESET_NAMES:
        return families.preset(name, order=order)
    positional, keywords = _split_arguments(arguments or "")
    if name == "down-up":
        params = _down_up_params(field, positional, keywords)
        return families.make_down_up(params, order=order, name=text.strip())
    if name == "dg-free":
        t = _crisscross_tuple(field, positional, keywords)
        return families.make_dg_free(t, check=check, order=order, name=text.strip())
    raise UnknownPreset(f"unknown preset {name!r}")


def _split_arguments(text):
    """Top-level comma split into positional and key=value arguments."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    if "".join(current).strip():
        parts.append("".join(current).strip())
    positional, keywords = [], {}
    for part in parts:
        match = re.match(r"^(\w+)\s*=\s*(.+)$", part)
        if match:
            keywords[match.group(1)] = match.group(2)
        else:
            if keywords:
                raise DescriptionSyntaxError(
                    f"positional argument {part!r} after keyword arguments"
                )
            positional.append(part)
    return positional, keywords


def _down_up_params(field, positional, keywords):
    if len(positional) != 2:
        raise DescriptionSyntaxError("down-up takes alpha and beta")
    unknown = set(keywords) - {"c", "d", "family"} - set(families.CASE_C_NAMES)
    if unknown:
        raise DescriptionSyntaxError(f"unknown down-up arguments {sorted(unknown)}")
    alpha, beta = (scalar(text, field) for text in positional)
    case_c = None
    if any(name in keywords for name in families.CASE_C_NAMES):
        case_c = tuple(
            scalar(keywords.get(name, "0"), field) for name in families.CASE_C_NAMES
        )
    return families.DownUpParams(
        field,
        alpha,
        beta,
        c=scalar(keywords["c"], field) if "c" in keywords else None,
        d=scalar(keywords["d"], field) if "d" in keywords else None,
        family=int(keywords.get("family", 1)),
        case_c=case_c,
    )


def _crisscross_tuple(field, positional, keywords):
    if keywords or not positional:
        raise DescriptionSyntaxError("dg-free takes n and n matrices")
    try:
        n = int(positional[0])
    except ValueError:
        raise DescriptionSyntaxError(
            f"dg-free size {positional[0]!r} is not an integer"
        )
    if len(positional) != n + 1:
        raise DescriptionSyntaxError(f"dg-free({n}, ...) needs {n} matrices")
    matrices = []
    for text in positional[1:]:
        try:
            rows = sympy.sympify(text, locals={VARIABLE: _T})
        except (sympy.SympifyError, SyntaxError, TypeError) as e:
            raise DescriptionSyntaxError(f"cannot read matrix {text!r}: {e}")
        if not isinstance(rows, (list, tuple)):
            raise DescriptionSyntaxError(f"{text!r} is not a matrix literal")
        matrices.append(
            [[_scalar_from_expr(entry, field) for entry in row] for row in rows]
        )
    return families.CrisscrossTuple.from_lists(field, matrices)


def scalar(text, field):
    """A field element written as a rational function of t."""
    try:
        expr = parse_expr(
            text.replace("^", "**"),
            local_dict={VARIABLE: _T},
            transformations=standard_transformations,
        )
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise FieldError(f"cannot read scalar {text!r}: {e}")
    return _scalar_from_expr(expr, field)


def _scalar_from_expr(expr, field):
    numerator, denominator = sympy.fraction(sympy.together(sympy.sympify(expr)))
    denominator = _polynomial_scalar(denominator, field)
    if not denominator:
        raise FieldError(f"{expr} divides by zero in {field!r}")
    return _polynomial_scalar(numerator, field) / denominator


def _polynomial_scalar(expr, field):
    try:
        poly = sympy.Poly(expr, _T)
    except sympy.PolynomialError as e:
        raise FieldError(f"{expr} is not a polynomial in {VARIABLE}: {e}")
    if poly.free_symbols - {_T}:
        raise FieldError(f"{expr} involves symbols other than {VARIABLE}")
    coefficients = poly.all_coeffs()
    if not all(c.is_Rational for c in coefficients):
        raise FieldError(f"{expr} has non-rational coefficients")
    return field.from_coefficients(
        [Fraction(int(c.p), int(c.q)) for c in reversed(coefficients)]
    )


def _factor_word(factor, index):
    """Generator indices of a product of generator powers, or None."""
    if factor in index:
        return [index[factor]]
    if factor.is_Pow:
        base, exponent = factor.as_base_exp()
        if not exponent.is_Integer or exponent < 1:
            return None
        letters = _factor_word(base, index)
        return None if letters is None else letters * int(exponent)
    if factor.is_Mul:
        commutative, noncommutative = factor.args_cnc()
        if commutative:
            return None
        word = []
        for part in noncommutative:
            letters = _factor_word(part, index)
            if letters is None:
                return None
            word.extend(letters)
        return word
    return None


def polynomial(text, spec, field, line=None):
    """Parse a polynomial in the generators of ``spec`` with coefficients
    that are rational functions of t."""
    symbols = {name: sympy.Symbol(name, commutative=False) for name in spec.names}
    local = dict(symbols)
    local[VARIABLE] = _T
    number, column = (line.number, line.column) if line else (None, None)
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMATIONS)
        expr = sympy.expand(expr)
    except (SyntaxError, TypeError, sympy.SympifyError, TokenError) as e:
        raise DescriptionSyntaxError(f"cannot parse {text!r}: {e}", number, column)
    index = {symbol: i for i, symbol in enumerate(symbols.values())}
    unknown = sorted(str(s) for s in expr.free_symbols if s not in index and s != _T)
    if unknown:
        name = unknown[0]
        found = re.search(rf"\b{re.escape(name)}\b", text)
        raise UnknownGenerator(
            f"unknown generator {name!r}",
            number,
            None if column is None else column + (found.start() if found else 0),
        )
    terms = {}
    for term in sympy.Add.make_args(expr):
        commutative, noncommutative = term.args_cnc()
        word = []
        for factor in noncommutative:
            letters = _factor_word(factor, index)
            if letters is None:
                raise DescriptionSyntaxError(
                    f"{factor} is not a monomial in the generators", number, column
                )
            word.extend(letters)
        try:
            c = _scalar_from_expr(sympy.Mul(*commutative), field)
        except FieldError as e:
            raise FieldError(e.message, number, column)
        word = tuple(word)
        terms[word] = terms.get(word, field.zero) + c
    return NcPolynomial(spec, field, terms)


def _scan(text):
    """Top-level assignments and block lines, each with its line number."""
    top, blocks = {}, {name: [] for name in BLOCKS}
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        column = len(raw) - len(raw.lstrip()) + 1
        header = _HEADER.match(stripped)
        if header:
            current = header.group(1)
            if current not in BLOCKS:
                raise DescriptionSyntaxError(
                    f"unknown block [{current}]", number, column
                )
            continue
        if current is None:
            match = _ASSIGNMENT.match(stripped)
            if not match or match.group(1) not in TOP_LEVEL_KEYS:
                raise DescriptionSyntaxError(
                    f"expected one of {', '.join(TOP_LEVEL_KEYS)} = ...", number, column
                )
            key = match.group(1)
            if key in top:
                raise DescriptionSyntaxError(f"{key} given twice", number, column)
            value = match.group(2).strip().strip('"').strip("'")
            top[key] = Line(number, value, column + match.start(2))
        else:
            blocks[current].append(Line(number, stripped, column))
    return top, blocks


def _split_assignment(line):
    match = _ASSIGNMENT.match(line.text)
    if not match:
        raise DescriptionSyntaxError("expected name = value", line.number, line.column)
    return match.group(1).strip(), Line(
        line.number, match.group(2), line.column + match.start(2)
    )


def _parse_field(top, override):
    if override is not None:
        return override if not isinstance(override, str) else make_field(override)
    entry = top.get("field")
    if entry is None:
        return make_field(DEFAULT_FIELD)
    try:
        return make_field(entry.text)
    except InputError as e:
        raise FieldError(str(e), entry.number, entry.column)


def _parse_generators(entry):
    generators = []
    for part in entry.text.split(","):
        match = re.match(r"^\s*(\w+)\s*:\s*(-?\d+)\s*$", part)
        if not match:
            raise DescriptionSyntaxError(
                f"generator {part.strip()!r} is not name:degree",
                entry.number,
                entry.column + entry.text.find(part.strip()),
            )
        name, degree = match.group(1), int(match.group(2))
        if name == VARIABLE:
            raise DescriptionSyntaxError(
                f"{VARIABLE} is reserved for the field generator",
                entry.number,
                entry.column,
            )
        if degree < 1:
            raise DegreeMismatch(
                f"generator {name} has degree {degree}; degrees must be >= 1",
                entry.number,
                entry.column + entry.text.find(part.strip()),
            )
        generators.append((name, degree))
    return tuple(generators)


def _homogeneous(p, line, expected=None, what="expression"):
    if not p.is_homogeneous():
        raise DegreeMismatch(f"{what} {p} is not homogeneous", line.number, line.column)
    if expected is not None and p and p.degree != expected:
        raise DegreeMismatch(
            f"{what} {p} has degree {p.degree}, expected {expected}",
            line.number,
            line.column,
        )
    return p


def parse_description(text, field=None):
    """Parse a description; ``field`` overrides its field line."""
    top, blocks = _scan(text)
    F = _parse_field(top, field)
    description = AlgebraDescription(F, ())

    if "algebra" in top:
        entry = top["algebra"]
        if "generators" in top or blocks["relations"] or blocks["differential"]:
            raise DescriptionSyntaxError(
                "a preset algebra cannot be combined with generators, "
                "relations or differential blocks",
                entry.number,
                entry.column,
            )
        match = _PRESET.match(entry.text)
        if not match:
            raise DescriptionSyntaxError(
                f"cannot read preset {entry.text!r}", entry.number, entry.column
            )
        if match.group(1) in families.PRESET_NAMES:
            F = families.xi_field()
            if "field" in top and make_field(top["field"].text) != F:
                raise FieldError(
                    f"{match.group(1)} lives over Q[t]/({families.XI_POLYNOMIAL})",
                    top["field"].number,
                    top["field"].column,
                )
            description.field = F
        try:
            dg = _build_preset(entry.text, F, "deglex", check=False)
        except UnknownPreset as e:
            raise UnknownPreset(e.message, entry.number, entry.column)
        except (DescriptionSyntaxError, FieldError) as e:
            raise type(e)(e.message, entry.number, entry.column)
        description.preset = entry.text.strip()
        spec = dg.spec
        description.generators = tuple(zip(spec.names, spec.degrees))
        description.relations = list(dg.algebra.relations)
        description.differential = {
            name: image for name, image in zip(spec.names, dg.d_images) if image
        }
    else:
        if "generators" not in top:
            raise DescriptionSyntaxError("missing generators = ... line", 1, 1)
        description.generators = _parse_generators(top["generators"])
        try:
            spec = description.spec
        except InputError as e:
            entry = top["generators"]
            raise DescriptionSyntaxError(str(e), entry.number, entry.column)
        for line in blocks["relations"]:
            lhs, _, rhs = line.text.partition("=")
            relation = polynomial(lhs, spec, F, line)
            if rhs.strip():
                relation = relation - polynomial(rhs, spec, F, line)
            description.relations.append(
                _homogeneous(relation, line, what="relation")
            )
        for line in blocks["differential"]:
            lhs, value = _split_assignment(line)
            match = _DIFFERENTIAL_LHS.match(lhs)
            name = match and (match.group(1) or match.group(2))
            if not name or name not in spec.names:
                raise UnknownGenerator(
                    f"d of unknown generator {lhs!r}", line.number, line.column
                )
            if name in description.differential:
                raise DescriptionSyntaxError(
                    f"d({name}) given twice", line.number, line.column
                )
            expected = spec.degrees[spec.index(name)] + 1
            description.differential[name] = _homogeneous(
                polynomial(value.text, spec, F, value), value, expected, f"d({name}) ="
            )

    spec = description.spec
    for line in blocks["group"]:
        name, value = _split_assignment(line)
        parts, _ = _split_arguments(value.text)
        if len(parts) != len(spec):
            raise DescriptionSyntaxError(
                f"{name} needs {len(spec)} images, got {len(parts)}",
                line.number,
                value.column,
            )
        images = [
            _homogeneous(
                polynomial(part, spec, F, value), value, degree, f"image {part!r}"
            )
            for part, degree in zip(parts, spec.degrees)
        ]
        description.group.append((name, images))

    for line in blocks["classes"]:
        name, value = _split_assignment(line)
        cocycle = _homogeneous(polynomial(value.text, spec, F, value), value)
        if not cocycle or not cocycle.degree:
            raise DegreeMismatch(
                f"class {name} needs a cocycle of positive degree",
                line.number,
                value.column,
            )
        description.classes[name] = cocycle
    if description.classes:
        class_spec = FreeSpec(
            list(description.classes),
            [c.degree for c in description.classes.values()],
        )
        for line in blocks["class_relations"]:
            description.class_relations.append(
                _homogeneous(polynomial(line.text, class_spec, F, line), line)
            )
    elif blocks["class_relations"]:
        line = blocks["class_relations"][0]
        raise DescriptionSyntaxError(
            "[class_relations] needs a [classes] block", line.number, line.column
        )

    for line in blocks["options"]:
        name, value = _split_assignment(line)
        if name not in OPTION_TYPES:
            raise DescriptionSyntaxError(
                f"unknown option {name!r}", line.number, line.column
            )
        try:
            description.options[name] = OPTION_TYPES[name](value.text)
        except ValueError:
            raise DescriptionSyntaxError(
                f"option {name} = {value.text!r} is not valid",
                line.number,
                value.column,
            )
        if name == "word_order" and value.text not in WORD_ORDERS:
            raise DescriptionSyntaxError(
                f"word_order must be one of {WORD_ORDERS}", line.number, value.column
            )
    return description


def serialize(description):
    """Canonical text for a description; parses back to an equal one."""
    lines = []
    if description.preset:
        lines.append(f"algebra = {description.preset}")
        if not any(description.preset.startswith(n) for n in families.PRESET_NAMES):
            lines.append(f"field = {description.field.polynomial_text()}")
    else:
        lines.append(f"field = {description.field.polynomial_text()}")
        lines.append(
            "generators = "
            + ", ".join(f"{name}:{degree}" for name, degree in description.generators)
        )
        if description.relations:
            lines.append("")
            lines.append("[relations]")
            lines.extend(str(r) for r in description.relations)
        if description.differential:
            lines.append("")
            lines.append("[differential]")
            lines.extend(
                f"d({name}) = {image}"
                for name, image in description.differential.items()
            )
    if description.group:
        lines.append("")
        lines.append("[group]")
        lines.extend(
            f"{name} = " + ", ".join(str(image) for image in images)
            for name, images in description.group
        )
    if description.classes:
        lines.append("")
        lines.append("[classes]")
        lines.extend(f"{name} = {c}" for name, c in description.classes.items())
        if description.class_relations:
            lines.append("")
            lines.append("[class_relations]")
            lines.extend(str(r) for r in description.class_relations)
    if description.options:
        lines.append("")
        lines.append("[options]")
        lines.extend(f"{k} = {v}" for k, v in sorted(description.options.items()))
    return "\n".join(lines) + "\n"


def read_description(path, field=None):
    """Parse a description file, or a bare preset expression."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except FileNotFoundError:
        if _PRESET.match(path.strip()):
            text = f"algebra = {path}\n"
        else:
            raise
    except OSError as e:
        raise ToolkitError(f"cannot read {path}: {e}")
    return parse_description(text, field)
