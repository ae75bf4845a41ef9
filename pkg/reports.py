# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            Check records, validation reports and the machine-readable
         report tree emitted by the command line.

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

import json
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from errors import (
    EXIT_CHECK_FAILED,
    EXIT_INCONCLUSIVE,
    EXIT_INPUT_ERROR,
    EXIT_OK,
)
from scalars_linalg import ExactMatrix, Scalar

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
INPUT_ERROR = "INPUT_ERROR"

_EXIT_CODES = {
    PASS: EXIT_OK,
    FAIL: EXIT_CHECK_FAILED,
    INCONCLUSIVE: EXIT_INCONCLUSIVE,
    INPUT_ERROR: EXIT_INPUT_ERROR,
}


@dataclass
class CheckResult:
    """One verdict. ``passed`` is None when the window could not decide."""

    name: str
    passed: object
    detail: str = ""

    @property
    def verdict(self):
        if self.passed is None:
            return INCONCLUSIVE
        return PASS if self.passed else FAIL

    def to_dict(self):
        return {"name": self.name, "verdict": self.verdict, "detail": self.detail}


@dataclass
class ValidationReport:
    subject: str
    checks: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    facts: dict = field(default_factory=dict)

    def add(self, name, passed, detail=""):
        check = CheckResult(name, None if passed is None else bool(passed), detail)
        self.checks.append(check)
        return check

    def extend(self, other, prefix=""):
        for check in other.checks:
            self.checks.append(
                CheckResult(prefix + check.name, check.passed, check.detail)
            )
        self.tables.update(other.tables)
        self.facts.update(other.facts)
        return self

    @property
    def passed(self):
        return all(c.passed is True for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.passed is False]

    @property
    def verdict(self):
        if self.failures():
            return FAIL
        if any(c.passed is None for c in self.checks):
            return INCONCLUSIVE
        return PASS

    def __bool__(self):
        return self.passed

    def summary(self):
        failed = self.failures()
        if not failed:
            return f"{self.subject}: {self.verdict} ({len(self.checks)} checks)"
        return f"{self.subject}: FAIL ({'; '.join(c.name for c in failed)})"


def jsonable(value):
    """Convert Scalars, matrices, frames and numpy values for json.dumps."""
    if isinstance(value, Scalar):
        return str(value)
    if isinstance(value, ExactMatrix):
        return [[str(x) for x in row] for row in value.entries]
    if isinstance(value, pd.DataFrame):
        return [
            {str(k): jsonable(v) for k, v in row.items()}
            for row in value.to_dict(orient="records")
        ]
    if isinstance(value, pd.Series):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def build_report(command, validation, inputs_digest, options, engine_version):
    """The report tree for one command run."""
    return {
        "command": command,
        "engine_version": engine_version,
        "inputs_digest": inputs_digest,
        "options": jsonable(options),
        "subject": validation.subject,
        "checks": [c.to_dict() for c in validation.checks],
        "tables": jsonable(validation.tables),
        "facts": jsonable(validation.facts),
        "verdict": validation.verdict,
        "exit_code": _EXIT_CODES[validation.verdict],
    }


def error_report(command, error, inputs_digest, options, engine_version):
    verdict = {
        EXIT_CHECK_FAILED: FAIL,
        EXIT_INCONCLUSIVE: INCONCLUSIVE,
    }.get(getattr(error, "exit_code", EXIT_INPUT_ERROR), INPUT_ERROR)
    return {
        "command": command,
        "engine_version": engine_version,
        "inputs_digest": inputs_digest,
        "options": jsonable(options),
        "subject": None,
        "checks": [
            {
                "name": type(error).__name__,
                "verdict": verdict,
                "detail": str(error),
            }
        ],
        "tables": {},
        "facts": {},
        "verdict": verdict,
        "exit_code": _EXIT_CODES[verdict],
    }


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2)


def render_text(report):
    """Human-readable view of a report tree."""
    lines = [f"======== {report['command'].upper()} ========"]
    if report.get("subject"):
        lines.append(report["subject"])
    for check in report["checks"]:
        detail = f"  ({check['detail']})" if check["detail"] else ""
        lines.append(f"[{check['verdict']}] {check['name']}{detail}")
    for name, rows in sorted(report["tables"].items()):
        lines.append("")
        lines.append(f"{name}:")
        if rows:
            lines.append(pd.DataFrame(rows).to_string(index=False))
        else:
            lines.append("(empty)")
    for name, value in sorted(report["facts"].items()):
        lines.append(f"{name}: {value}")
    lines.append("")
    lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines)
