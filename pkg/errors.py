# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            Exact degreewise computations for connected cochain
         DG algebras, their fixed subalgebras and homological determinants.

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

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONCLUSIVE = 3


class ToolkitError(Exception):
    """Base class of every error raised on purpose by the toolkit."""

    exit_code = EXIT_INPUT_ERROR


class InputError(ToolkitError):
    """The caller handed us something that is not a valid input."""

    exit_code = EXIT_INPUT_ERROR


class CheckFailed(ToolkitError):
    """A mathematical check failed on otherwise valid input."""

    exit_code = EXIT_CHECK_FAILED


class WindowError(ToolkitError):
    """The truncation window is too small to decide."""

    exit_code = EXIT_INCONCLUSIVE


class LocatedError(InputError):
    """An input error tied to a position in a description text."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


# scalars_linalg


class ReducibleMinimalPolynomial(InputError):
    pass


class DegreeTooLarge(InputError):
    pass


class FieldMismatch(InputError):
    pass


# presented_algebra / dg_core


class InhomogeneousRelation(InputError):
    pass


class InhomogeneousInput(InputError):
    pass


class TruncationTooSmall(InputError):
    pass


class DGValidationFailed(CheckFailed):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# invariants


class OrderBoundExceeded(InputError):
    pass


class NotAnAutomorphism(CheckFailed):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# resolution_ext / hdet


class WindowExhausted(WindowError):
    pass


class NotGorensteinWindow(WindowError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class NotAnHAutomorphism(CheckFailed):
    pass


class LiftFailure(CheckFailed):
    pass


# families


class CaseMismatch(InputError):
    pass


class NotCrisscross(CheckFailed):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ShapeMismatch(InputError):
    pass


# description format


class DescriptionSyntaxError(LocatedError):
    pass


class UnknownGenerator(LocatedError):
    pass


class DegreeMismatch(LocatedError):
    pass


class FieldError(LocatedError):
    pass


class UnknownPreset(LocatedError):
    pass


# cli


class CacheCorrupt(ToolkitError):
    pass
