# -*- coding: utf-8 -*-
"""
/***************************************************************************
 DGInvariantToolkit

            Command line front end: one subcommand per check, JSON or
         text reports, CSV/PNG output and a cache of warmed algebras.

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

import datetime
import hashlib
import json
import logging
import os
import pathlib
import tempfile
import time

import click
import humanize
import matplotlib.pyplot as plt
import pandas as pd

from description import PRESET_FORMS, read_description
from dg_core import check_presentation, cohomology, tensor_dg, validate_dg
from errors import (
    EXIT_INPUT_ERROR,
    CacheCorrupt,
    DGValidationFailed,
    InputError,
    NotAnAutomorphism,
    ToolkitError,
)
from families import crisscross_check, make_dg_free
from hdet import (
    CohomologyData,
    Hdet_dg,
    scan_diagonal_hdet_one,
    theorem_d_check,
)
from invariants import (
    fixed_subalgebra,
    group_closure,
    reynolds_report,
    validate_automorphism,
    verify_prop_equal,
)
from reports import (
    ValidationReport,
    build_report,
    dumps,
    error_report,
    render_text,
)
from resolution_ext import (
    GradedAlgebraData,
    ext_table,
    gorenstein_probe,
    minimal_resolution,
)
from scalars_linalg import make_field

MESSAGE_CATEGORY = "DGInvariantToolkit"
LOGGER = logging.getLogger(MESSAGE_CATEGORY)

ENGINE_VERSION = "1.0.0"
CACHE_ENV = "DG_TOOLKIT_CACHE_DIR"
DEFAULT_PARAMETERS = {
    "max_degree": 12,
    "resolution_length": 4,
    "group_bound": 64,
    "word_order": "deglex",
}
PLOTTED_TABLES = {"hilbert": "hilbert", "cohomology": "cohomology"}


def in_range(low, high):
    def validate_range(ctx, param, value):
        if value is not None and not (low <= value <= high):
            raise click.BadParameter(
                f"{value} needs to be in range [{low}, {high}]", ctx, param
            )
        return value

    return validate_range


def parse_field_str(ctx, param, value):
    if value is None:
        return None
    try:
        return make_field(value)
    except ToolkitError as e:
        raise click.BadParameter(f"Could not use '{value}' as a field: {e}", ctx, param)


def resolve_parameters(description, **flags):
    """Flags over the [options] block over DEFAULT_PARAMETERS."""
    parameters = dict(DEFAULT_PARAMETERS)
    parameters.update(description.options)
    parameters.update({k: v for k, v in flags.items() if v is not None})
    return parameters


#
# Cache of warmed algebra data
#


def default_cache_dir():
    return pathlib.Path(
        os.environ.get(CACHE_ENV) or pathlib.Path(os.path.dirname(__file__)) / ".cache"
    )


def _cache_key(d):
    return hashlib.md5(json.dumps(d, sort_keys=True).encode()).hexdigest()


def _read_cache(cache_dir, key):
    cache_file = pathlib.Path(cache_dir) / f"{key}.json"
    if not cache_file.exists():
        LOGGER.info("cache miss %s", key)
        return None
    try:
        return json.loads(cache_file.read_text())
    except (OSError, ValueError) as e:
        raise CacheCorrupt(f"unreadable cache blob {cache_file}: {e}")


def _write_cache(cache_dir, key, data):
    cache_dir = pathlib.Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        "w", dir=cache_dir, suffix=".tmp", delete=False
    ) as handle:
        json.dump(data, handle)
    os.replace(handle.name, cache_dir / f"{key}.json")


def warm_algebra(dg, description, parameters, cache_dir=None, progress=None):
    """Warm dg through max_degree + 1, from the cache when possible."""
    D = parameters["max_degree"] + 1
    key = None
    if cache_dir is not None:
        key = _cache_key(
            {
                "description": description.digest(),
                "max_degree": D,
                "word_order": parameters["word_order"],
                "engine_version": ENGINE_VERSION,
            }
        )
        try:
            state = _read_cache(cache_dir, key)
            if state is not None:
                dg.algebra.load_state(state)
                LOGGER.info("warmed algebra read from cache %s", key)
                return dg
        except CacheCorrupt as e:
            LOGGER.warning("%s; recomputing", e)
    dg.warm_up(D, progress)
    if key is not None:
        _write_cache(cache_dir, key, dg.algebra.export_state())
    return dg


#
# Subcommands
#


def _validated(dg, D):
    report = validate_dg(dg, D)
    if not report.passed:
        raise DGValidationFailed(report.summary(), report)
    return dg


def _group(dg, description, parameters):
    D = parameters["max_degree"]
    generators = description.morphisms(dg)
    for sigma in generators:
        report = validate_automorphism(dg, sigma, D)
        if not report.passed:
            raise NotAnAutomorphism(report.summary(), report)
    return group_closure(dg, generators, parameters["group_bound"])


def _check_dg(dg, description, parameters):
    """Validate that d preserves the relations and squares to zero."""
    return validate_dg(dg, parameters["max_degree"])


def _hilbert(dg, description, parameters):
    """Hilbert function of the underlying graded algebra."""
    D = parameters["max_degree"]
    hilbert = dg.algebra.hilbert(D)
    report = ValidationReport(f"Hilbert function of {dg!r} through {D}")
    report.add(f"components computed through degree {D}", True)
    report.tables["hilbert"] = hilbert.to_series().reset_index()
    return report


def _cohomology(dg, description, parameters):
    """Dimensions of the cohomology algebra H(A)."""
    D = parameters["max_degree"]
    view = cohomology(_validated(dg, D), D + 1)
    report = ValidationReport(f"H({dg.name}) through degree {view.valid_through}")
    report.add("H^0 = k", view.dims[0] == 1)
    report.tables["cohomology"] = view.to_frame()
    report.facts["valid_through"] = view.valid_through
    return report


def _check_presentation(dg, description, parameters):
    """Compare H(A) with a presentation by cocycle classes."""
    D = parameters["max_degree"]
    presentation = description.presentation(_validated(dg, D))
    if presentation is None:
        raise InputError("no [classes] block and no built-in presentation")
    cocycles, relations = presentation
    return check_presentation(dg, cocycles, relations, D)


def _tensor_kunneth(dg, description, parameters):
    """Kunneth comparison for A (x) A."""
    D = parameters["max_degree"]
    _, report = tensor_dg(_validated(dg, D), dg, D)
    return report


def _fixed_subalgebra(dg, description, parameters):
    """Fixed DG subalgebra of the [group] block and projector checks."""
    D = parameters["max_degree"]
    group = _group(_validated(dg, D), description, parameters)
    report = reynolds_report(dg, group, D, fixed_subalgebra(dg, group, D))
    report.facts["group"] = group.names
    return report


def _verify_prop_equal(dg, description, parameters):
    """dim H(A^G) against dim H(A)^H(G) degree by degree."""
    D = parameters["max_degree"]
    group = _group(_validated(dg, D), description, parameters)
    return verify_prop_equal(dg, group, D)


def _gorenstein_probe(dg, description, parameters):
    """Ext(k, H(A)) and the AS-Gorenstein verdict."""
    D, L = parameters["max_degree"], parameters["resolution_length"]
    view = cohomology(_validated(dg, D), D + 1)
    B = GradedAlgebraData.from_cohomology(view)
    resolution = minimal_resolution(B, L + 1)
    table = ext_table(B, resolution, L)
    verdict = gorenstein_probe(B, L, resolution=resolution, table=table)
    report = ValidationReport(f"AS-Gorenstein probe of H({dg.name}), L = {L}")
    report.add("H(A) is AS-Gorenstein inside the window", verdict.passed, str(verdict))
    report.add("structure constants are associative", B.check_associativity())
    report.tables["ext"] = table.to_frame()
    report.tables["betti"] = pd.DataFrame(
        {
            "i": range(resolution.length + 1),
            "generator_degrees": [list(g) for g in resolution.generators],
            "exhausted": resolution.exhausted,
        }
    )
    report.facts["verdict"] = verdict.to_dict()
    if verdict.passed:
        report.facts["gorenstein_dg"] = f"{dg.name} is a Gorenstein DG algebra"
    return report


def _hdet(dg, description, parameters):
    """Homological determinant of each [group] generator."""
    D, L = parameters["max_degree"], parameters["resolution_length"]
    generators = description.morphisms(_validated(dg, D))
    if not generators:
        raise InputError("hdet needs a [group] block")
    data = CohomologyData(dg, D, L)
    report = ValidationReport(f"Hdet on {dg.name}")
    rows = []
    for sigma in generators:
        check = validate_automorphism(dg, sigma, D)
        if not check.passed:
            raise NotAnAutomorphism(check.summary(), check)
        result = Hdet_dg(dg, sigma, D, L, data)
        report.add(f"Hdet({sigma.name}) is defined", True, str(result.scalar))
        rows.append(result.to_dict())
    report.tables["hdet"] = pd.DataFrame(rows)
    return report


def _theorem_d(dg, description, parameters):
    """Hdet-1 criterion for the fixed subalgebra to be Gorenstein."""
    D, L = parameters["max_degree"], parameters["resolution_length"]
    group = _group(_validated(dg, D), description, parameters)
    return theorem_d_check(dg, group, D, L)


def _crisscross(dg, description, parameters):
    """Crisscross identity of a dg-free matrix tuple."""
    t = description.crisscross_tuple()
    result = crisscross_check(t)
    report = ValidationReport(f"crisscross identity for n = {t.n}")
    witness = ""
    if not result:
        i, j, entry, value = result.witness
        witness = f"i={i}, j={j}, entry {entry}: {value}"
    report.add("sum_l [c^l_j r^i_l - c^i_l r^l_j] = 0", result.passed, witness)
    squares = validate_dg(make_dg_free(t, check=False), 3)
    report.add(
        "d^2 = 0 on generators agrees",
        squares.passed == result.passed,
        squares.summary(),
    )
    return report


def _scan_hdet(dg, description, parameters):
    """First non-trivial diagonal automorphism with Hdet 1."""
    D, L = parameters["max_degree"], parameters["resolution_length"]
    hit = scan_diagonal_hdet_one(_validated(dg, D), D, L, parameters["group_bound"])
    report = ValidationReport(f"diagonal Hdet-1 scan on {dg.name}")
    if hit is None:
        report.add("found a non-trivial diagonal automorphism with Hdet 1", None)
        return report
    report.add(
        "found a non-trivial diagonal automorphism with Hdet 1",
        True,
        f"{hit.sigma.name} generates a group of order {hit.group.order}",
    )
    report.facts["weights"] = [str(w) for w in hit.weights]
    report.facts["group"] = hit.group.names
    return report


COMMANDS = {
    "check-dg": _check_dg,
    "hilbert": _hilbert,
    "cohomology": _cohomology,
    "check-presentation": _check_presentation,
    "tensor-kunneth": _tensor_kunneth,
    "fixed-subalgebra": _fixed_subalgebra,
    "verify-prop-equal": _verify_prop_equal,
    "gorenstein-probe": _gorenstein_probe,
    "hdet": _hdet,
    "theorem-d": _theorem_d,
    "crisscross": _crisscross,
    "scan-hdet": _scan_hdet,
}


def run_command(cmd, description, parameters, cache_dir=None, progress=None):
    """Run one subcommand and return its report tree."""
    digest = description.digest()
    try:
        dg = None
        if cmd != "crisscross":
            dg = description.build(parameters["word_order"])
            warm_algebra(dg, description, parameters, cache_dir, progress)
        validation = COMMANDS[cmd](dg, description, parameters)
    except ToolkitError as e:
        LOGGER.info("%s failed: %s", cmd, e)
        return error_report(cmd, e, digest, parameters, ENGINE_VERSION)
    return build_report(cmd, validation, digest, parameters, ENGINE_VERSION)


def write_results(report, output_base):
    tables = report["tables"]
    if tables:
        frames = {name: pd.DataFrame(rows) for name, rows in sorted(tables.items())}
        df = pd.concat(frames, names=["table", "row"]).reset_index()
        df.to_csv(output_base + ".csv", index=False)
    table = PLOTTED_TABLES.get(report["command"])
    if table and tables.get(table):
        df = pd.DataFrame(tables[table])
        column = [c for c in df.columns if c != "degree"][0]
        plt.figure()
        plt.bar(df["degree"], df[column])
        plt.xlabel("Degree")
        plt.ylabel("Dimension")
        plt.title(f"{report['command']} of {report['subject']}")
        plt.savefig(output_base + ".png")
        plt.close()


def print_results(report, elapsed):
    click.echo(render_text(report))
    click.echo(
        "elapsed: "
        + humanize.precisedelta(
            datetime.timedelta(seconds=elapsed), minimum_unit="milliseconds"
        )
    )


def common_options(function):
    options = [
        click.argument("description_file", type=str),
        click.option(
            "-D",
            "--max-degree",
            "max_degree",
            type=int,
            callback=in_range(2, 40),
            help="Truncation degree D of every degreewise computation.",
        ),
        click.option(
            "-L",
            "--resolution-length",
            "resolution_length",
            type=int,
            callback=in_range(1, 10),
            help="Highest Ext index examined by the Gorenstein probe.",
        ),
        click.option(
            "--group-bound",
            "group_bound",
            type=int,
            callback=in_range(1, 100000),
            help="Largest group order accepted by the closure.",
        ),
        click.option(
            "--word-order",
            "word_order",
            type=click.Choice(["deglex", "degrevlex"]),
            help="Order choosing the normal words.",
        ),
        click.option(
            "--field",
            "field",
            type=str,
            callback=parse_field_str,
            help="Minimal polynomial in t overriding the description's field.",
        ),
        click.option("--json", "as_json", is_flag=True, help="Print the JSON report."),
        click.option("--no-cache", is_flag=True, help="Disables any caching."),
        click.option(
            "--cache-dir",
            "cache_dir",
            type=str,
            default=None,
            help=f"Cache directory (default ${CACHE_ENV} or .cache).",
        ),
        click.option(
            "-o",
            "--output",
            "output_base",
            default=None,
            type=str,
            help="Base name of CSV/PNG output files.",
        ),
        click.option("-q", "--quiet", is_flag=True, help="Silence verbose output"),
    ]
    for option in reversed(options):
        function = option(function)
    return function


@click.group(
    help="Exact checks on DG algebras, their fixed subalgebras and "
    "homological determinants.",
    context_settings={"show_default": True},
)
def cli():
    pass


def _make_command(name):
    @cli.command(name=name, help=(COMMANDS[name].__doc__ or f"Run {name}."))
    @common_options
    @click.pass_context
    def command(
        ctx,
        description_file,
        max_degree=None,
        resolution_length=None,
        group_bound=None,
        word_order=None,
        field=None,
        as_json=False,
        no_cache=False,
        cache_dir=None,
        output_base=None,
        quiet=False,
    ):
        verbose = not quiet
        logging.basicConfig(
            level=logging.INFO if verbose and not as_json else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
            force=True,
        )
        start = time.perf_counter()
        try:
            description = read_description(description_file, field)
        except (ToolkitError, OSError) as e:
            report = error_report(name, e, None, {}, ENGINE_VERSION)
            click.echo(dumps(report) if as_json else render_text(report))
            ctx.exit(getattr(e, "exit_code", EXIT_INPUT_ERROR))
        parameters = resolve_parameters(
            description,
            max_degree=max_degree,
            resolution_length=resolution_length,
            group_bound=group_bound,
            word_order=word_order,
        )

        def post_degree_callback(degree, dim):
            if verbose and not as_json:
                click.echo(f"degree {degree}: {humanize.intcomma(dim)} normal words")

        report = run_command(
            name,
            description,
            parameters,
            cache_dir=None if no_cache else (cache_dir or default_cache_dir()),
            progress=post_degree_callback,
        )
        if as_json:
            click.echo(dumps(report))
        else:
            print_results(report, time.perf_counter() - start)
        if output_base:
            write_results(report, output_base)
        ctx.exit(report["exit_code"])

    return command


for _name in COMMANDS:
    _make_command(_name)


@cli.command(name="presets", help="List the built-in algebra presets.")
def presets():
    for form in PRESET_FORMS:
        click.echo(form)


if __name__ == "__main__":
    cli()
