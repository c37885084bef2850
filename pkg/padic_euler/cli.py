"""Command line front end: `padic-euler <command> [options]`.

Exit codes: 0 ok, 1 identity check failures, 2 usage errors, 3 failed mathematical preconditions.
"""

from __future__ import annotations
import sys
from argparse import ArgumentParser, ArgumentTypeError, Namespace
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import __version__, euler
from .errors import InvalidPrime, PAdicError
from .fermionic import IntegralEstimate, IntegrandKind, IntegrandSpec, fermionic_integral_numeric
from .identities import run_suite, suites
from .loggamma import LogGammaRequest, log_gamma, log_gamma_star, psi
from .padic import PAdicNumber, check_prime, from_rational
from .projection import angle, teichmuller_character
from .settings import OutputFormat, Settings, settings
from .util import dump_json, format_rational, log_error, logger as log
from .zeta import Strategy, ZetaRequest, ZetaValue, zeta, zeta_star

SCHEMA = 1


@dataclass
class CliConfig:
    p: int
    M: int
    guard: int
    budget: int
    kcap: int
    output: OutputFormat
    seed: int

    @staticmethod
    def from_args(args: Namespace):
        """Settings file first, then command line flags, then PADIC_EULER_BUDGET."""
        if args.config is not None:
            settings.load(args.config)
        overrides = {
            "prime": args.p,
            "precision": args.prec,
            "guard_digits": args.guard,
            "term_budget": args.budget,
            "reduction_cap": args.kcap,
            "seed": args.seed,
        }
        for name, value in overrides.items():
            if value is not None:
                setattr(settings, name, value)
        if args.format is not None:
            settings.output_format = OutputFormat[args.format]
        settings.apply_environment()
        check_prime(settings.prime)
        return CliConfig(
            p=settings.prime,
            M=settings.precision,
            guard=settings.guard_digits,
            budget=settings.term_budget,
            kcap=settings.reduction_cap,
            output=settings.output_format,
            seed=settings.seed,
        )


# Argument types


def rational_arg(text: str) -> Fraction:
    try:
        num, _, den = text.strip().partition("/")
        return Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise ArgumentTypeError(f"'{text}' is not a rational number a/b")


def rational_list(text: str) -> list[Fraction]:
    return [rational_arg(item) for item in text.split(",") if item.strip()]


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ArgumentTypeError(f"'{text}' is not an integer")
    if value < 1:
        raise ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def prime_arg(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise ArgumentTypeError(f"'{text}' is not an integer")
    try:
        return check_prime(p)
    except InvalidPrime as e:
        raise ArgumentTypeError(str(e))


def non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def strategy_arg(text: str) -> Strategy:
    try:
        return Strategy.parse(text)
    except ValueError as e:
        raise ArgumentTypeError(str(e))


# Output


@dataclass
class Output:
    text: str
    payload: dict[str, Any]
    failed: bool = False


def _value_output(kind: str, value: PAdicNumber | Fraction, **fields):
    if isinstance(value, Fraction):
        text, json_value = format_rational(value), format_rational(value)
    else:
        text, json_value = str(value), value.to_json()
    lines = [text] + [f"{k}: {_field_text(v)}" for k, v in fields.items()]
    payload = {"schema": SCHEMA, "kind": kind, "value": json_value, **fields}
    return Output("\n".join(lines), payload)


def _field_text(value: Any):
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _zeta_output(kind: str, result: ZetaValue):
    return Output(str(result), dict(result.to_json(), kind=kind))


def _estimate_output(result: IntegralEstimate):
    return _value_output(
        "integral",
        result.value,
        stable_digits=result.stable_digits,
        level=result.level,
        terms=result.terms,
    )


def emit(output: Output, cfg: CliConfig):
    if cfg.output is OutputFormat.json:
        print(dump_json(output.payload))
    else:
        print(output.text)


# Commands


def cmd_zeta(cfg: CliConfig, args: Namespace):
    req = ZetaRequest.create(cfg.p, cfg.M, args.s, args.x, args.omega, args.strategy)
    return _zeta_output("zeta", zeta(req))


def cmd_zeta_star(cfg: CliConfig, args: Namespace):
    return _zeta_output("zeta-star", zeta_star(args.s, args.x, args.omega, cfg.p, cfg.M))


def cmd_loggamma(cfg: CliConfig, args: Namespace):
    req = LogGammaRequest.create(cfg.p, cfg.M, args.x, args.omega, args.strategy)
    return _value_output("loggamma", log_gamma(req), strategy=str(req.strategy))


def cmd_loggamma_star(cfg: CliConfig, args: Namespace):
    return _value_output("loggamma-star", log_gamma_star(args.x, args.omega, cfg.p, cfg.M))


def cmd_psi(cfg: CliConfig, args: Namespace):
    req = LogGammaRequest.create(cfg.p, cfg.M, args.x, args.omega, args.strategy)
    return _value_output("psi", psi(args.k, req), k=args.k)


def cmd_euler_poly(cfg: CliConfig, args: Namespace):
    N = len(args.omega) if args.N is None else args.N
    if N != len(args.omega):
        raise ArgumentTypeError(f"--N {N} does not match the {len(args.omega)} given parameters")
    table = euler.build_table(N, args.omega, args.n)
    if args.table:
        lines = [f"E_{{{N},{k}}}(0) = {format_rational(c)}" for k, c in enumerate(table.coeffs)]
        payload = {"schema": SCHEMA, "kind": "euler-table", "N": N, "table": table.to_json()}
        return Output("\n".join(lines), payload)
    if args.x is None:
        raise ArgumentTypeError("--x is required unless --table is given")
    return _value_output("euler-poly", euler.euler_poly(table, args.n, args.x))


def cmd_teichmuller(cfg: CliConfig, args: Namespace):
    x = from_rational(args.x, cfg.p, cfg.M)
    lift = teichmuller_character(x)
    return _value_output("teichmuller", lift, angle=str(angle(x)))


def cmd_integrate(cfg: CliConfig, args: Namespace):
    kind = IntegrandKind(args.kind)
    if kind is IntegrandKind.polynomial:
        spec = IntegrandSpec.polynomial(args.n, args.x, args.omega)
    elif kind is IntegrandKind.log_shift:
        spec = IntegrandSpec.log_shift(args.x, args.omega, args.starred)
    elif kind is IntegrandKind.xlogx_shift:
        spec = IntegrandSpec.xlogx_shift(args.x, args.omega, args.starred)
    else:
        spec = IntegrandSpec.angle_power(args.x, args.omega, args.s, args.starred)
    return _estimate_output(fermionic_integral_numeric(spec, cfg.p, args.level, cfg.M))


def cmd_check(cfg: CliConfig, args: Namespace):
    reports = run_suite(args.suite, args.instances, cfg.seed, progress=args.progress)
    failed = [r for r in reports if not r.passed]
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name} agreement={r.agreement} required={r.required}"
        for r in reports
    ]
    lines.append(f"{len(reports) - len(failed)} passed, {len(failed)} failed")
    payload = {
        "schema": SCHEMA,
        "kind": "check",
        "suite": args.suite,
        "seed": cfg.seed,
        "instances": args.instances,
        "precision": cfg.M,
        "reports": [r.to_json() for r in reports],
        "passed": len(reports) - len(failed),
        "failed": len(failed),
    }
    return Output("\n".join(lines), payload, failed=len(failed) > 0)


# Parser


def _common_options():
    common = ArgumentParser(add_help=False)
    group = common.add_argument_group("global options")
    add = group.add_argument
    add("--p", type=prime_arg, help=Settings._prime.desc)
    add("--prec", type=positive_int, metavar="M", help=Settings._precision.desc)
    add("--guard", type=non_negative_int, metavar="G", help=Settings._guard_digits.desc)
    add("--budget", type=positive_int, help=Settings._term_budget.desc)
    add("--kcap", type=positive_int, help=Settings._reduction_cap.desc)
    add("--format", choices=[f.name for f in OutputFormat], help=Settings._output_format.desc)
    add("--seed", type=int, help=Settings._seed.desc)
    add("--config", type=Path, help="settings file (JSON)")
    return common


def _add_point(parser: ArgumentParser, x_required=True, omega_default="1"):
    parser.add_argument("--x", type=rational_arg, required=x_required, help="rational x = a/b")
    parser.add_argument(
        "--omega",
        type=rational_list,
        default=rational_list(omega_default),
        help="comma separated parameters w_1,...,w_N",
    )


def _add_strategy(parser: ArgumentParser):
    parser.add_argument(
        "--strategy",
        type=strategy_arg,
        default=Strategy(),
        help="auto, series, reduce(k) or integral(L)",
    )


Command = Callable[[CliConfig, Namespace], Output]


def create_parser():
    common = _common_options()
    parser = ArgumentParser(
        prog="padic-euler",
        description="p-adic multiple Barnes-Euler zeta and Diamond-Euler Log Gamma functions",
        epilog="global options are given after the command, e.g. padic-euler zeta --p 5 ...",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    def command(name: str, func: Command, help: str):
        sub = commands.add_parser(name, parents=[common], help=help, description=help)
        sub.set_defaults(func=func)
        return sub

    sub = command("zeta", cmd_zeta, "evaluate zeta_{p,E,N}(s, x; w)")
    sub.add_argument("--s", type=rational_arg, default=Fraction(0), help="s = a/b, p-integral")
    _add_point(sub)
    _add_strategy(sub)

    sub = command("zeta-star", cmd_zeta_star, "evaluate zeta*(s, x; w) for x in Lambda")
    sub.add_argument("--s", type=rational_arg, default=Fraction(0), help="s = a/b, p-integral")
    _add_point(sub)

    sub = command("loggamma", cmd_loggamma, "evaluate LogGamma_{D,E,N}(x; w)")
    _add_point(sub)
    _add_strategy(sub)

    sub = command("loggamma-star", cmd_loggamma_star, "evaluate LGamma(x; w) for x in Lambda")
    _add_point(sub)

    sub = command("psi", cmd_psi, "evaluate psi^(k)(x; w), the k-th derivative of LogGamma")
    sub.add_argument("--k", type=positive_int, default=1, help="derivative order")
    _add_point(sub)
    _add_strategy(sub)

    sub = command("euler-poly", cmd_euler_poly, "evaluate E_{N,n}(x; w) exactly")
    sub.add_argument("--N", type=non_negative_int, help="order, defaults to the number of w")
    sub.add_argument("--n", type=non_negative_int, default=0, help="degree")
    sub.add_argument("--table", action="store_true", help="export E_{N,k}(0) for k <= n")
    _add_point(sub, x_required=False)

    sub = command("teichmuller", cmd_teichmuller, "Teichmuller representative and <x>")
    sub.add_argument("--x", type=rational_arg, required=True, help="rational x = a/b")

    sub = command("integrate", cmd_integrate, "numeric fermionic integral at level L")
    sub.add_argument(
        "--kind",
        choices=[k.value for k in IntegrandKind if k is not IntegrandKind.custom],
        default=IntegrandKind.polynomial.value,
    )
    sub.add_argument("--n", type=non_negative_int, default=0, help="degree of y^n")
    sub.add_argument("--s", type=rational_arg, default=Fraction(0), help="exponent of <y>^(1-s)")
    sub.add_argument("--level", type=positive_int, default=3, metavar="L", help="level L")
    sub.add_argument("--starred", action="store_true", help="zero the integrand on p Z_p")
    _add_point(sub)

    sub = command("check", cmd_check, "run the identity suite")
    sub.add_argument("--suite", choices=("all",) + suites, default="all")
    sub.add_argument("--instances", type=non_negative_int, default=3, metavar="n")
    sub.add_argument("--progress", action="store_true", help="show a progress bar on stderr")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    if args.config is not None and not args.config.is_file():
        parser.error(f"settings file {args.config} does not exist")
    try:
        cfg = CliConfig.from_args(args)
        log.info(f"padic-euler {args.command} with {cfg}")
        output = args.func(cfg, args)
    except ArgumentTypeError as e:
        parser.error(str(e))
    except PAdicError as e:
        print(log_error(e), file=sys.stderr)
        return 3
    emit(output, cfg)
    return 1 if output.failed else 0
