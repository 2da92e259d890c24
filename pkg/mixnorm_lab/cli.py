"""
Command line for norm queries, operators, duality brackets and probe suites.

Usage:
    mixnorm norm --kind bm --pbar 2,4 --t 4 --r 8 --cube 0:0,0
    mixnorm apply --input f.txt --op mit --output mf.txt
    mixnorm pair --input f.txt --other g.txt
    mixnorm block-bracket --input g.txt --pbar 2,2 --t 3 --r 6
    mixnorm probe embedding --trials 1000
    mixnorm suite --config configs/default.cfg --output output/suite.csv

Exit status: 0 on success, 1 on validation or usage errors, 2 when a probe
fails.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence

from mixnorm_lab.blocks import h_norm_lower, h_norm_upper, pairing, vector_block_bracket
from mixnorm_lab.grid import (
    DyadicCube,
    StepFunction,
    VectorStepFunction,
    dilate_dyadic,
    translate,
)
from mixnorm_lab.models import (
    REGIME_CONDITION,
    ExponentVector,
    ProbeReport,
    RegimeError,
    SpaceParams,
    parse_extended,
)
from mixnorm_lab.norms import bm_norm, mixed_norm, morrey_norm, slice_norm
from mixnorm_lab.operators import (
    SingularKernelModel,
    cond_expect,
    convolve_project,
    doob_maximal,
    dyadic_maximal_shifted,
    frac_integral,
    hl_maximal_lower,
    iterated_maximal_grid,
    maximal_1d_grid,
    singular_apply,
)
from mixnorm_lab.resources import default_thread_count
from mixnorm_lab.verify import (
    get_probe,
    load_suite_config,
    ratio_of,
    reports_to_csv,
    run_suite,
    suite_exit_status,
    write_csv,
)

USAGE_ERROR = 1
PROBE_FAILURE = 2

OPERATORS = (
    "ek:<k>, doob, mdya:<a1,...>, hl, m1d:<axis>, mit, ialpha:<alpha>, "
    "hilbert, riesz:<axis>:<eps>, conv:<file>, dilate:<k>, translate:<t1,...>"
)


class UsageError(ValueError):
    """Invalid command line input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _number(value: float) -> str:
    return format(value, ".15g")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write_text(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def _read_step(path: str) -> StepFunction:
    return StepFunction.parse(_read_text(path))


def _cube_indicator(text: str, window: int) -> StepFunction:
    """``LEVEL:m1,...,mn`` → χ_Q of the standard dyadic cube."""
    level, sep, index = text.partition(":")
    if not sep:
        raise UsageError(f"--cube expects LEVEL:m1,...,mn, got {text!r}")
    try:
        cube = DyadicCube.standard(int(level), *(int(m) for m in index.split(",")))
    except ValueError as e:
        raise UsageError(f"--cube {text!r}: {e}") from e
    return StepFunction.indicator(cube, J=max(cube.level, -window), K=window)


def _input_step(args: argparse.Namespace) -> StepFunction:
    if getattr(args, "cube", None):
        return _cube_indicator(args.cube, args.window)
    if not args.input:
        raise UsageError("an input is required: pass --input FILE or --cube")
    return _read_step(args.input[0] if isinstance(args.input, list) else args.input)


def _space_params(
    args: argparse.Namespace, default_r: str | None = None
) -> SpaceParams:
    if args.pbar is None or args.t is None:
        raise UsageError("--pbar and --t are required")
    r = args.r if args.r is not None else default_r
    if r is None:
        raise UsageError("--r is required")
    return SpaceParams.of(args.pbar, parse_extended(args.t), parse_extended(r))


# ---------------------------------------------------------------------- #
# subcommands


def cmd_norm(args: argparse.Namespace) -> int:
    f = _input_step(args)
    kind = args.kind
    if kind == "mixed":
        if args.pbar is None:
            raise UsageError("--pbar is required")
        value = mixed_norm(f, ExponentVector.parse(args.pbar))
    elif kind == "bm":
        params = _space_params(args)
        params.require_nontrivial()
        value = bm_norm(f, params)
    elif kind == "morrey":
        params = _space_params(args, default_r="inf")
        if params.r != float("inf"):
            raise UsageError("the Morrey norm needs r = inf")
        params.require_nontrivial()
        value = morrey_norm(f, params)
    elif kind.startswith("slice:"):
        params = _space_params(args)
        params.require_finite()
        try:
            level = int(kind.partition(":")[2])
        except ValueError as e:
            raise UsageError(
                f"--kind slice:<j> needs an integer level, got {kind!r}"
            ) from e
        value = slice_norm(f, level, params)
    else:
        raise UsageError(f"unknown --kind {kind!r}; use mixed, bm, morrey or slice:<j>")
    print(_number(value))
    return 0


def _operator(spec: str) -> Callable[[StepFunction], StepFunction]:
    name, _, rest = spec.partition(":")
    try:
        if name == "ek":
            k = int(rest)
            return lambda f: cond_expect(f, k)
        if name == "doob":
            return doob_maximal
        if name == "mdya":
            shift = tuple(int(a) for a in rest.split(","))
            return lambda f: dyadic_maximal_shifted(f, shift)
        if name == "hl":
            return hl_maximal_lower
        if name == "m1d":
            axis = int(rest)
            return lambda f: maximal_1d_grid(f, axis)
        if name == "mit":
            return iterated_maximal_grid
        if name == "ialpha":
            alpha = float(rest)
            return lambda f: frac_integral(f, alpha)
        if name == "hilbert":
            return lambda f: singular_apply(f, SingularKernelModel.hilbert())
        if name == "riesz":
            axis, _, epsilon = rest.partition(":")
            kernel = SingularKernelModel.riesz(axis=int(axis), epsilon=float(epsilon))
            return lambda f: singular_apply(f, kernel)
        if name == "conv":
            g = _read_step(rest)
            return lambda f: convolve_project(f, g)
        if name == "dilate":
            k = int(rest)
            return lambda f: dilate_dyadic(f, k)
        if name == "translate":
            shift = tuple(int(t) for t in rest.split(","))
            return lambda f: translate(f, shift)
    except ValueError as e:
        raise UsageError(f"--op {spec!r}: {e}") from e
    raise UsageError(f"unknown --op {spec!r}; expected one of {OPERATORS}")


def cmd_apply(args: argparse.Namespace) -> int:
    f = _input_step(args)
    _write_text(_operator(args.op)(f).serialize(), args.output)
    return 0


def cmd_pair(args: argparse.Namespace) -> int:
    print(_number(pairing(_input_step(args), _read_step(args.other))))
    return 0


def _print_bracket(lower: float, upper: float) -> None:
    print(
        f"lower={_number(lower)} upper={_number(upper)} "
        f"ratio={_number(ratio_of(upper, lower))}"
    )


def cmd_block_bracket(args: argparse.Namespace) -> int:
    params = _space_params(args)
    params.require_finite()
    threads = default_thread_count()
    if len(args.input) > 1:
        if args.u_dual is None:
            raise UsageError("vector inputs need --u-dual")
        gv = VectorStepFunction.of([_read_step(path) for path in args.input])
        bracket = vector_block_bracket(
            gv, params, parse_extended(args.u_dual), args.budget, args.seed, threads
        )
        _print_bracket(bracket.lower, bracket.upper)
        return 0
    g = _read_step(args.input[0])
    lower, _ = h_norm_lower(g, params, args.budget, args.seed, threads)
    upper, decomposition = h_norm_upper(g, params)
    _print_bracket(lower, upper)
    if args.decomposition:
        _write_text(decomposition.serialize(), args.decomposition)
    return 0


def _emit(reports: list[ProbeReport], emit: str, output: str | None) -> None:
    if output:
        write_csv(reports, output)
    if emit == "csv":
        sys.stdout.write(reports_to_csv(reports))
        return
    for report in reports:
        marker = "✓" if report.passed else "✗"
        print(
            f"{marker} {report.name}: max_ratio={_number(report.max_ratio)} "
            f"witness={report.witness_seed}:{report.witness_index} "
            f"{';'.join(report.notes)}"
        )


def _overrides(pairs: Sequence[str]) -> dict[str, str]:
    overrides = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--set expects key=value, got {pair!r}")
        overrides[key.strip()] = value.strip()
    return overrides


def cmd_probe(args: argparse.Namespace) -> int:
    cls = get_probe(args.name)
    spec = cls.build_spec(
        seed=args.seed, trials=args.trials, overrides=_overrides(args.set)
    )
    report = cls(spec, max_workers=default_thread_count()).run()
    _emit([report], args.emit, args.output)
    return 0 if report.passed else PROBE_FAILURE


def cmd_suite(args: argparse.Namespace) -> int:
    config = load_suite_config(args.config)
    if args.output:
        config = config.model_copy(update={"output": args.output})
    reports = run_suite(config, threads=default_thread_count())
    _emit(reports, args.emit, None)
    return suite_exit_status(reports)


# ---------------------------------------------------------------------- #
# parser


def _add_space_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pbar", help="comma-separated exponents, e.g. 2,4")
    parser.add_argument("--t", help="Morrey exponent t")
    parser.add_argument("--r", help="summation exponent r (inf allowed)")


def _add_input_flags(parser: argparse.ArgumentParser, many: bool = False) -> None:
    if many:
        parser.add_argument(
            "--input",
            nargs="+",
            required=True,
            help="step function files ('-' for stdin)",
        )
        return
    parser.add_argument("--input", help="step function file ('-' for stdin)")
    parser.add_argument("--cube", help="use χ_Q for the cube LEVEL:m1,...,mn instead")
    parser.add_argument(
        "--window", type=int, default=0, help="window level K for --cube (default 0)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mixnorm",
        description="Mixed Bourgain-Morrey norm laboratory for dyadic step functions",
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    norm = sub.add_parser("norm", help="evaluate a norm")
    _add_input_flags(norm)
    _add_space_flags(norm)
    norm.add_argument("--kind", default="bm", help="mixed, bm, morrey or slice:<j>")
    norm.set_defaults(handler=cmd_norm)

    apply = sub.add_parser("apply", help="apply an operator")
    _add_input_flags(apply)
    apply.add_argument("--op", required=True, help=OPERATORS)
    apply.add_argument("--output", help="output file (stdout by default)")
    apply.set_defaults(handler=cmd_apply)

    pair = sub.add_parser("pair", help="∫fg of two step functions")
    _add_input_flags(pair)
    pair.add_argument("--other", required=True, help="second step function file")
    pair.set_defaults(handler=cmd_pair)

    bracket = sub.add_parser("block-bracket", help="bracket the block-space norm")
    _add_input_flags(bracket, many=True)
    _add_space_flags(bracket)
    bracket.add_argument("--budget", type=int, default=16, help="random candidates")
    bracket.add_argument("--seed", type=int, default=0)
    bracket.add_argument("--u-dual", help="ℓ^{u′} exponent for vector inputs")
    bracket.add_argument("--decomposition", help="write the upper decomposition here")
    bracket.set_defaults(handler=cmd_block_bracket)

    probe = sub.add_parser("probe", help="run one inequality probe")
    probe.add_argument("name", help="registered probe name")
    probe.add_argument("--seed", type=int, default=20240601)
    probe.add_argument("--trials", type=int)
    probe.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE", help="probe override"
    )
    probe.add_argument("--emit", choices=("text", "csv"), default="text")
    probe.add_argument("--output", help="also write the CSV report here")
    probe.set_defaults(handler=cmd_probe)

    suite = sub.add_parser("suite", help="run a suite configuration")
    suite.add_argument("--config", required=True, help="key=value suite file")
    suite.add_argument("--emit", choices=("text", "csv"), default="text")
    suite.add_argument("--output", help="CSV report path, overrides the config")
    suite.set_defaults(handler=cmd_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return USAGE_ERROR
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else USAGE_ERROR
    if getattr(args, "handler", None) is None:
        parser.print_usage(sys.stderr)
        return USAGE_ERROR
    try:
        return args.handler(args)
    except OSError as e:
        print(f"mixnorm: {e}", file=sys.stderr)
        return USAGE_ERROR
    except RegimeError as e:
        message = str(e)
        if REGIME_CONDITION not in message:
            message = f"{message}; the space is non-trivial only if {REGIME_CONDITION}"
        print(f"mixnorm: {message}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as e:
        print(f"mixnorm: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
