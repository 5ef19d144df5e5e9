#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
`cftw` command line: solve, certify, stability, compare
"""

import argparse
import os
import sys
from argparse import Namespace
from typing import Callable, Optional

import numpy as np
import pandas as pd
from loguru import logger
from omegaconf import DictConfig

from cftw.analysis import (CertificateKinds, PerturbationSpec, certify,
                           continuity_probe, finite_difference_check)
from cftw.cli.documents import (dump_document, load_document, parse_document,
                                parse_tolerances, parse_vector,
                                result_document, save_document)
from cftw.core import (AnchorSolutionError, CollinearInstanceError,
                       EscapeFailureError, ProblemInstance, Tolerances,
                       evaluate_objective)
from cftw.resources import Instances
from cftw.solvers import (OracleConfig, SolveStatus, grid_search_2d,
                          projected_subgradient, solve)
from cftw.utils import load_config, set_logging

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_OPTIMAL = 2

CSV_FLOAT_FORMAT = "%.17g"


class CommandParser(argparse.ArgumentParser):
    """
    Argument errors exit with code 1
    """

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def get_argument_parser() -> CommandParser:
    """
    Get argument parser for all subcommands
    """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "file",
        metavar="FILE",
        type=str,
        help=f"Instance document (JSON, optionally compressed) or one of {Instances.names()}",
    )
    common.add_argument(
        "--config",
        default=None,
        type=str,
        help="YAML file overriding package defaults",
    )
    common.add_argument(
        "--debug",
        action="store_true",
        help="Log level to DEBUG",
    )
    common.add_argument(
        "--log-dir",
        default=None,
        type=str,
        help="Also log to `<dir>/logs/cftw.log`",
    )

    parser = CommandParser(
        prog="cftw",
        description="Constrained Fermat-Torricelli-Weber problem via projected Weiszfeld iteration",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve_parser = subparsers.add_parser("solve", parents=[common], help="Solve an instance")
    solve_parser.add_argument("--x0", default=None, type=str, help="Feasible starting point, e.g. `0.5,0.5`")
    solve_parser.add_argument("--tol", default=None, type=float, help="Step-norm stopping tolerance")
    solve_parser.add_argument("--max-iter", default=None, type=int, help="Iteration budget")
    solve_parser.add_argument("--trace", default=None, type=str, help="Write iteration trace (CSV)")
    solve_parser.add_argument("--out", default=None, type=str, help="Write result document (JSON)")
    solve_parser.add_argument(
        "--allow-collinear",
        action="store_true",
        help="Solve even if all anchors lie on one line",
    )
    solve_parser.add_argument(
        "--precheck-anchors",
        action="store_true",
        help="Test every anchor for optimality before iterating",
    )

    certify_parser = subparsers.add_parser("certify", parents=[common], help="Certify a candidate point")
    certify_parser.add_argument("--point", required=True, type=str, help="Candidate point, e.g. `0,0`")
    certify_parser.add_argument("--tol", default=None, type=float, help="Certificate tolerance")
    certify_parser.add_argument(
        "--kind",
        default=str(CertificateKinds.FIXED_POINT),
        choices=[str(CertificateKinds.FIXED_POINT), str(CertificateKinds.VARIATIONAL_INEQUALITY)],
        help="Optimality test away from the anchors",
    )
    certify_parser.add_argument("--samples", default=None, type=int, help="Variational inequality samples")
    certify_parser.add_argument("--seed", default=None, type=int, help="Sampling seed")

    stability_parser = subparsers.add_parser(
        "stability", parents=[common], help="Probe continuity of the solution map and the optimal value"
    )
    stability_parser.add_argument("--deltas", default=None, type=str, help="Decreasing perturbation sizes, e.g. `0.1,0.01`")
    stability_parser.add_argument("--dirs", default=None, type=int, help="Number of random directions")
    stability_parser.add_argument("--seed", default=None, type=int, help="Direction seed")
    stability_parser.add_argument("--per-anchor", action="store_true", help="Move one anchor at a time")
    stability_parser.add_argument(
        "--gradient",
        action="store_true",
        help="Also compare finite differences of the optimal value with its closed-form gradient",
    )
    stability_parser.add_argument("--out", default=None, type=str, help="Write report (CSV)")
    stability_parser.add_argument("--cores", default=1, type=int, help="Available cores")

    compare_parser = subparsers.add_parser(
        "compare", parents=[common], help="Check Weiszfeld against the reference solvers"
    )
    compare_parser.add_argument("--iters", default=None, type=int, help="Subgradient iterations")
    compare_parser.add_argument("--seed", default=None, type=int, help="Subgradient seed")
    compare_parser.add_argument("--cores", default=1, type=int, help="Available cores (grid search)")

    return parser


def load_problem(file: str) -> tuple[ProblemInstance, dict]:
    """
    Instance and its tolerance overrides from a file or a built-in name
    """

    if os.path.exists(file):
        document = load_document(file)
    elif file in Instances.names():
        document = Instances.get(file).document()
    else:
        raise FileNotFoundError(f"No instance file `{file}` (built-in instances: {Instances.names()})")

    return parse_document(document), parse_tolerances(document)


def get_tolerances(config: DictConfig, document_overrides: dict, **flags) -> Tolerances:
    """
    Package defaults < user config < instance document < command line
    """

    overrides = dict(document_overrides)
    overrides.update({k: v for k, v in flags.items() if v is not None})

    return Tolerances.from_omegaconf(config.tolerances, **overrides)


def _write_csv(frame: pd.DataFrame, path: Optional[str]):
    if path is not None:
        frame.to_csv(path, float_format=CSV_FLOAT_FORMAT, index=False)
        logger.info("Saved {} rows to `{}`", len(frame), path)


def solve_command(args: Namespace, config: DictConfig) -> int:
    """
    Solve and certify
    """

    instance, overrides = load_problem(args.file)
    tol = get_tolerances(config, overrides, epsilon=args.tol, max_iter=args.max_iter)
    x0 = None if args.x0 is None else parse_vector(args.x0, dim=instance.dim, name="x0")

    if args.log_dir is not None:
        tol.save(args.log_dir, name="tolerances.yaml")
        logger.debug("Saved resolved tolerances to `{}`", args.log_dir)

    result = solve(
        instance,
        tol=tol,
        x0=x0,
        allow_collinear=args.allow_collinear,
        precheck_anchors=args.precheck_anchors,
    )

    if result.status == SolveStatus.COLLINEAR_REFUSED:
        logger.error("Anchors are collinear: rerun with `--allow-collinear` to solve anyway")
        return EXIT_INVALID

    certificate = certify(
        instance,
        result.x_final,
        tol=10 * tol.epsilon,
        eta_anchor=tol.eta_anchor,
        membership_tol=config.certify.membership_tol,
        anchor_tol=config.certify.anchor_tol,
    )

    document = result_document(instance, result, certificate, membership_tol=config.certify.membership_tol)

    if args.out is not None:
        save_document(args.out, document)
        logger.info("Saved result to `{}`", args.out)

    _write_csv(result.trace_frame(), args.trace)

    sys.stdout.write(dump_document(document))

    solved = result.status in (SolveStatus.CONVERGED, SolveStatus.ANCHOR_OPTIMAL)

    return EXIT_OK if solved and certificate.optimal else EXIT_NOT_OPTIMAL


def certify_command(args: Namespace, config: DictConfig) -> int:
    """
    Certify a user-supplied point
    """

    instance, _ = load_problem(args.file)
    x = parse_vector(args.point, dim=instance.dim, name="point")

    certificate = certify(
        instance,
        x,
        tol=config.certify.tol if args.tol is None else args.tol,
        kind=CertificateKinds(args.kind),
        samples=config.certify.vi_samples if args.samples is None else args.samples,
        seed=config.certify.seed if args.seed is None else args.seed,
        membership_tol=config.certify.membership_tol,
        anchor_tol=config.certify.anchor_tol if args.tol is None else args.tol,
    )

    logger.info("Certificate `{}`: {} (margin {:.6g})", certificate.kind, certificate.verdict, certificate.margin)

    sys.stdout.write(dump_document(certificate.to_dict()))

    return EXIT_OK if certificate.optimal else EXIT_NOT_OPTIMAL


def stability_command(args: Namespace, config: DictConfig) -> int:
    """
    Perturb the anchors and report deviations of M and m
    """

    instance, overrides = load_problem(args.file)
    tol = get_tolerances(config, overrides)

    if args.deltas is None:
        deltas = list(config.stability.deltas)
    else:
        deltas = [float(d) for d in parse_vector(args.deltas, name="deltas")]

    spec = PerturbationSpec.random(
        instance,
        deltas=deltas,
        count=config.stability.directions if args.dirs is None else args.dirs,
        seed=config.stability.seed if args.seed is None else args.seed,
        per_anchor=args.per_anchor,
    )

    report = continuity_probe(instance, spec, tol=tol, cores=args.cores)
    frame = report.to_frame()

    _write_csv(frame, args.out)
    sys.stdout.write(frame.to_string(index=False) + "\n")

    if len(report.flagged) > 0:
        logger.warning("Skipped {} of {} perturbations", len(report.flagged), len(report.rows))

    if args.gradient:
        try:
            deviation = finite_difference_check(
                instance, h=config.stability.finite_difference_step, tol=tol, cores=args.cores
            )
            logger.info("Finite differences vs. gradient of the optimal value: {:.3g}", deviation)
        except AnchorSolutionError as error:
            logger.warning("Gradient check skipped: {}", error)

    return EXIT_OK


def compare_command(args: Namespace, config: DictConfig) -> int:
    """
    Weiszfeld vs. projected subgradient (and grid search in 2-D)
    """

    instance, overrides = load_problem(args.file)

    if instance.collinear:
        raise CollinearInstanceError("Anchors are collinear: nothing to compare")

    tol = get_tolerances(config, overrides)
    cfg = OracleConfig.from_omegaconf(config.oracle, iterations=args.iters, seed=args.seed)

    reference = solve(instance, tol=tol)

    candidates = [("weiszfeld", reference.x_final)]
    candidates.append(("subgradient", projected_subgradient(instance, cfg, eta_anchor=tol.eta_anchor).x_final))
    if instance.dim == 2:
        candidates.append(("grid", grid_search_2d(instance, cfg, cores=args.cores)))

    rows = []
    for name, x in candidates:
        value = evaluate_objective(instance, x)
        rows.append(
            (name, value, abs(value - reference.objective), float(np.linalg.norm(x - reference.x_final)))
        )

    frame = pd.DataFrame(rows, columns=["method", "f", "df", "dx"])
    sys.stdout.write(frame.to_string(index=False) + "\n")

    agreement = config.compare.agreement * (1.0 + abs(reference.objective))
    disagreement = float(frame["df"].max())

    if disagreement > agreement:
        logger.warning("Solvers disagree: |df| = {:.3g} > {:.3g}", disagreement, agreement)
        return EXIT_NOT_OPTIMAL

    logger.info("Solvers agree: |df| = {:.3g} <= {:.3g}", disagreement, agreement)

    return EXIT_OK


COMMANDS: dict[str, Callable[[Namespace, DictConfig], int]] = {
    "solve": solve_command,
    "certify": certify_command,
    "stability": stability_command,
    "compare": compare_command,
}


def run_command(argv: Optional[list[str]] = None) -> int:
    """
    Parse arguments, run the subcommand and return its exit code
    """

    parser = get_argument_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return EXIT_OK if error.code is None else int(error.code)

    set_logging(
        logger=logger,
        level="DEBUG" if args.debug else "INFO",
        directory=args.log_dir,
    )

    try:
        config = load_config(args.config)
        return COMMANDS[args.command](args, config)
    except (ValueError, OSError, CollinearInstanceError, EscapeFailureError) as error:
        logger.error("{}: {}", type(error).__name__, error)
        return EXIT_INVALID


def main():
    """
    Console entry point
    """
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
