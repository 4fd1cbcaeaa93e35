"""hilbertkit command line driver.

Exit status: 0 all verdicts pass (or estimation only), 1 a verdict failed,
2 usage or configuration error, 3 numeric/domain error or report write failure.
"""
import argparse
import dataclasses
import logging
import sys
import time
from typing import Any, Callable

from .. import __version__
from ..exceptions import CertificationError, DomainError, InvalidConfigError, QuadratureError, ReportWriteError
from ..kernels import KernelParams, compare_entrywise
from ..monotone import (
    SequenceSpec,
    hermite_hadamard_check,
    power_sum_sequences,
    verify_f_aux_monotone,
    verify_increasing,
    verify_partial_sum_form,
    verify_power_sum_ratio_range,
    verify_second_difference_range,
    ratio_lemma_check,
)
from ..norms import power_iteration_lower_bound, schur_certify, test_vector_lower_bound
from ..reporting import CheckReport, FORMATS, ReportWriter, build_document
from ..series import (
    SeriesParams,
    bernoulli_bracket_check,
    certified_sum,
    euler_maclaurin_check,
    sign_conditions,
    verify_beta_series_bound,
    verify_linear_series_bound,
    verify_region,
)
from ..special import best_constant, conjugate
from .config import RunConfig, load_params_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

PARTIAL_SUM_FORM_MAX = 200
RATIO_LEMMA_LENGTH_MAX = 1000

Outcome = tuple[list[CheckReport], dict[str, Any]]


def run_norms(cfg: RunConfig) -> Outcome:
    p = cfg.params
    params = KernelParams(p["alpha"], p["beta"])
    exps = conjugate(p["p"])
    best = best_constant(params, exps)
    tv = test_vector_lower_bound(params, exps, p["N"], threads=cfg.threads)
    est = power_iteration_lower_bound(params, exps, p["N"], tol=p["tol"], max_iter=p["max_iter"])
    lower = max(tv, est.value)
    estimates = {
        "best_constant": best,
        "test_vector_lower_bound": tv,
        "power_iteration_lower_bound": est.value,
        "power_iterations": est.iterations,
        "power_residual": est.residual,
        "power_converged": est.converged,
        "gap": best - lower,
    }
    gap_report = CheckReport(
        name="lower_bound_gap",
        params={**params.as_dict(), "p": exps.p, "N": p["N"]},
        passed=bool(lower <= best + 1e-9),
        lhs=lower,
        rhs=best,
        margin=best - lower,
        asserted=False,
    )
    return [gap_report], estimates


def run_series(cfg: RunConfig) -> Outcome:
    p = cfg.params
    reports = []
    first = SeriesParams(p["lambda"], p["s"], p["n"])
    for n in range(p["n"], max(p["n"], p["n_max"]) + 1):
        params = SeriesParams(p["lambda"], p["s"], n)
        reports.append(verify_beta_series_bound(params, budget=p["budget"]))
        if p["lambda"] == 1 and p["s"] > 2:
            reports.append(verify_linear_series_bound(p["s"], n, budget=p["budget"]))
    value = certified_sum(first, budget=p["budget"])
    estimates = {
        "sum_lower": value.lower,
        "sum_upper": value.upper,
        "terms_summed": value.terms_summed,
        "tail_method": value.tail_method.value,
    }
    return reports, estimates


def run_region(cfg: RunConfig) -> Outcome:
    report = verify_region(cfg.params["step"], threads=cfg.threads)
    return [report], {"points": report.details["points"]}


def run_monotone(cfg: RunConfig) -> Outcome:
    p = cfg.params
    seq = SequenceSpec(p["alpha"], p["n_max"], exploratory=p["exploratory"])
    alpha, ratio_max = seq.alpha, p["ratio_max"]
    reports = [
        verify_increasing(seq),
        verify_power_sum_ratio_range(alpha, ratio_max, exploratory=seq.exploratory),
        verify_second_difference_range(alpha, ratio_max, exploratory=seq.exploratory),
        ratio_lemma_check(*power_sum_sequences(alpha, min(ratio_max, RATIO_LEMMA_LENGTH_MAX) + 2)),
        verify_f_aux_monotone(alpha, ratio_max),
        hermite_hadamard_check(alpha),
        verify_partial_sum_form(alpha, min(seq.n_max, PARTIAL_SUM_FORM_MAX)),
    ]
    if not seq.asserted:
        reports = [dataclasses.replace(r, asserted=False) for r in reports]
    return reports, {}


def run_compare(cfg: RunConfig) -> Outcome:
    p = cfg.params
    report = compare_entrywise(KernelParams(p["alpha"], p["beta"]), p["limit"],
                               rectangle=p["rectangle"], threads=cfg.threads)
    estimates = {"first_failure": report.location}
    return [report], estimates


def run_em_check(cfg: RunConfig) -> Outcome:
    p = cfg.params
    params = SeriesParams(p["lambda"], p["s"], p["n"])
    reports = [euler_maclaurin_check(params, quad_points=p["quad_points"], constant=p["constant"])]
    if 1 < params.lam <= 2:
        reports.append(bernoulli_bracket_check(params, quad_points=p["quad_points"]))
        reports.append(sign_conditions(params))
    return reports, {"discrepancy": reports[0].details.get("discrepancy")}


def run_schur(cfg: RunConfig) -> Outcome:
    p = cfg.params
    params = KernelParams(p["alpha"], p["beta"])
    exps = conjugate(p["p"])
    report = schur_certify(params, exps, p["j_max"])
    return [report], {"best_constant": best_constant(params, exps)}


COMMANDS: dict[str, Callable[[RunConfig], Outcome]] = {
    "norms": run_norms,
    "series": run_series,
    "region": run_region,
    "monotone": run_monotone,
    "compare": run_compare,
    "em-check": run_em_check,
    "schur": run_schur,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="json")
    common.add_argument("--output", dest="output_path", default=None, help="report file, stdout if omitted")
    common.add_argument("--threads", type=int, default=1, help="worker processes, 0 = one per cpu")
    common.add_argument("--params-json", default=None, help="JSON object or file of parameters; flags win")
    common.add_argument("--timing", action="store_true", help="record wall time in the report")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    parser = argparse.ArgumentParser(prog="hilbertkit", description="Hilbert-type inequality verification")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    # every parameter flag defaults to None so --params-json values survive unless overridden
    norms = sub.add_parser("norms", parents=[common], help="best constant and lower bounds")
    norms.add_argument("--alpha")
    norms.add_argument("--beta")
    norms.add_argument("--p")
    norms.add_argument("--N", dest="N")
    norms.add_argument("--tol")
    norms.add_argument("--max-iter", dest="max_iter")

    series = sub.add_parser("series", parents=[common], help="certified series inequalities")
    series.add_argument("--lambda", dest="lambda")
    series.add_argument("--s")
    series.add_argument("--n")
    series.add_argument("--nmax", "--n-max", dest="n_max")
    series.add_argument("--budget")

    region = sub.add_parser("region", parents=[common], help="exact D-polynomial region sweep")
    region.add_argument("--step")

    monotone = sub.add_parser("monotone", parents=[common], help="monotone sequence chain")
    monotone.add_argument("--alpha")
    monotone.add_argument("--nmax", "--n-max", dest="n_max")
    monotone.add_argument("--ratio-max", dest="ratio_max")
    monotone.add_argument("--exploratory", action="store_const", const=True, default=None)

    compare = sub.add_parser("compare", parents=[common], help="entrywise H versus M comparison")
    compare.add_argument("--alpha")
    compare.add_argument("--beta")
    compare.add_argument("--limit")
    compare.add_argument("--rectangle", action="store_const", const=True, default=None)

    em = sub.add_parser("em-check", parents=[common], help="Euler-Maclaurin identity and bracket")
    em.add_argument("--lambda", dest="lambda")
    em.add_argument("--s")
    em.add_argument("--n")
    em.add_argument("--quad-points", dest="quad_points")
    em.add_argument("--constant")

    schur = sub.add_parser("schur", parents=[common], help="Schur test certification")
    schur.add_argument("--alpha")
    schur.add_argument("--beta")
    schur.add_argument("--p")
    schur.add_argument("--j-max", dest="j_max")
    return parser


GLOBAL_KEYS = {"command", "output_format", "output_path", "threads", "params_json", "timing", "verbose"}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        params = load_params_json(args.params_json) if args.params_json else {}
        params |= {k: v for k, v in vars(args).items() if k not in GLOBAL_KEYS and v is not None}
        cfg = RunConfig(
            args.command,
            output_path=args.output_path,
            output_format=args.output_format,
            threads=args.threads,
            timing=args.timing,
            **params,
        )
    except InvalidConfigError as e:
        print(f"hilbertkit: {e}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


def run(cfg: RunConfig) -> int:
    """Execute one validated command, write its report and return the exit status

    Args:
        cfg (RunConfig): validated run configuration

    Returns:
        int: 0 when every asserted verdict passes, 1 on a failed verdict, 3 on numeric or output errors
    """
    logger.debug("run config %r", cfg)
    started = time.perf_counter()
    try:
        reports, estimates = COMMANDS[cfg.command](cfg)
    except (DomainError, CertificationError, QuadratureError) as e:
        print(f"hilbertkit: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    timing_ms = (time.perf_counter() - started) * 1000 if cfg.timing else None

    document = build_document(cfg.command, cfg.params, reports, estimates, timing_ms)
    try:
        ReportWriter(cfg.output_format).write(document, output_path=cfg.output_path)
    except ReportWriteError as e:
        print(f"hilbertkit: {e}", file=sys.stderr)
        return EXIT_NUMERIC

    failed = [r.name for r in reports if r.failed]
    if failed:
        logger.info("failed verdicts: %s", ", ".join(failed))
        return EXIT_VERDICT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
