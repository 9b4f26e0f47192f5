import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from qball._lib.action import CONVENTIONS, STANDARD, HopfConvention, act_word
from qball._lib.algebra import Shape, star
from qball._lib.errors import NotFiniteError, QBallError
from qball._lib.expr import format_element, parse_element, parse_generator_word
from qball._lib.harmonic import basis, check_positive, gram, integrate
from qball._lib.scalar import evaluate_at, parse_fraction
from qball._lib.static import DEFAULT_DEGREE_CAP, ExitCode
from qball._lib.verify import run_verify

_logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "json")
FAULTS = ("r-prime",)


@dataclass(frozen=True)
class RunConfig:
    m: int
    n: int
    q_value: Optional[Fraction] = None
    degree_cap: int = DEFAULT_DEGREE_CAP
    output_format: str = "text"
    star: bool = False
    convention: HopfConvention = STANDARD
    fault: Optional[str] = None

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise QBallError(f"--m and --n must be positive, got m={self.m}, n={self.n}")
        if self.degree_cap < 0:
            raise QBallError(f"--degree must be non-negative, got {self.degree_cap}")
        if self.q_value is not None and not 0 < self.q_value < 1:
            raise QBallError(f"--q must lie in (0, 1), got {self.q_value}")
        if self.output_format not in OUTPUT_FORMATS:
            raise QBallError(f"unknown output format {self.output_format!r}")
        if self.fault is not None and self.fault not in FAULTS:
            raise QBallError(f"unknown fault {self.fault!r}")

    @property
    def shape(self) -> Shape:
        return Shape(self.m, self.n, faulty_r_prime=self.fault == "r-prime")


def _normalize(config: RunConfig, expression: str) -> str:
    f = parse_element(expression, config.shape, config.convention)
    if config.star:
        f = star(f)
    return format_element(f, config.output_format)


def _act(config: RunConfig, word: str, expression: str) -> str:
    shape = config.shape
    f = parse_element(expression, shape, config.convention)
    if config.star:
        f = star(f)
    return format_element(act_word(parse_generator_word(word, shape), f, config.convention), config.output_format)


def _integrate(config: RunConfig, expression: str) -> str:
    f = parse_element(expression, config.shape, config.convention)
    if config.star:
        f = star(f)
    value = integrate(f)
    numeric = evaluate_at(value, config.q_value) if config.q_value is not None else None
    if config.output_format == "json":
        return json.dumps({"value": str(value), "numeric": None if numeric is None else str(numeric)})
    lines = [str(value)]
    if numeric is not None:
        lines.append(str(numeric))
    return "\n".join(lines)


def _gram(config: RunConfig) -> str:
    shape, j = config.shape, config.degree_cap
    matrix = gram(shape, j).matrix
    rows = [[str(entry) for entry in row] for row in matrix]
    positive = check_positive(shape, j, config.q_value) if config.q_value is not None else None
    if config.output_format == "json":
        return json.dumps(
            {
                "degree": j,
                "basis": [str(mono) for mono in basis(shape, j)],
                "matrix": rows,
                "positive_definite": positive,
            }
        )
    lines = ["[" + ", ".join(row) + "]" for row in rows]
    if positive is not None:
        lines.append(f"positive definite at q = {config.q_value}: {'yes' if positive else 'no'}")
    return "\n".join(lines)


def _verify(config: RunConfig) -> Tuple[int, str]:
    if config.degree_cap < 1:
        raise QBallError(f"verify needs --degree of at least 1, got {config.degree_cap}")
    report = run_verify(config.shape, config.convention, config.degree_cap)
    code = ExitCode.OK if report.passed else ExitCode.VERIFY_FAILED
    if config.output_format == "json":
        suites = [
            {"name": suite.name, "passed": suite.passed, "checks": suite.checks, "counterexample": suite.counterexample}
            for suite in report.suites
        ]
        return code, json.dumps({"passed": report.passed, "suites": suites})
    return code, "\n".join(str(suite) for suite in report.suites)


def run(command: str, config: RunConfig, expression: str = "", word: str = "") -> Tuple[int, str]:
    """Runs one command and returns (exit code, stdout text)."""
    if command == "normalize":
        return ExitCode.OK, _normalize(config, expression)
    if command == "act":
        return ExitCode.OK, _act(config, word, expression)
    if command == "integrate":
        return ExitCode.OK, _integrate(config, expression)
    if command == "gram":
        return ExitCode.OK, _gram(config)
    if command == "verify":
        return _verify(config)
    raise NotImplementedError(f"unknown command {command!r}")


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise QBallError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, required=True, help="number of columns")
    common.add_argument("--n", type=int, required=True, help="number of rows")
    common.add_argument("--q", dest="q_value", type=parse_fraction, help="rational q in (0, 1) to evaluate at")
    common.add_argument("--degree", dest="degree_cap", type=int, default=DEFAULT_DEGREE_CAP)
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default="text")
    common.add_argument("--star", action="store_true", help="apply the involution to the input")
    common.add_argument("--convention", choices=sorted(CONVENTIONS), default=STANDARD.name)
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("--inject-fault", dest="fault", choices=FAULTS, help=argparse.SUPPRESS)

    parser = _ArgumentParser(prog="qball", description="Quantum matrix ball algebra toolkit.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    for name in ("normalize", "integrate"):
        sub = commands.add_parser(name, parents=[common])
        sub.add_argument("expression", nargs="?", help="expression, @path to a file, or - for stdin")
    sub = commands.add_parser("act", parents=[common])
    sub.add_argument("word", help="generators such as 'En F1', applied in the order written")
    sub.add_argument("expression", nargs="?", help="expression, @path to a file, or - for stdin")
    commands.add_parser("gram", parents=[common])
    commands.add_parser("verify", parents=[common])
    return parser


def _read_expression(argument: Optional[str]) -> str:
    if argument is None or argument == "-":
        return sys.stdin.read()
    if not argument.startswith("@"):
        return argument
    path = Path(argument[1:])
    try:
        return path.read_text(encoding="utf-8")
    except OSError as error:
        raise QBallError(f"cannot read expression file {path}: {error.strerror}") from error


def cli(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.WARNING,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
        config = RunConfig(
            m=args.m,
            n=args.n,
            q_value=args.q_value,
            degree_cap=args.degree_cap,
            output_format=args.output_format,
            star=args.star,
            convention=CONVENTIONS[args.convention],
            fault=args.fault,
        )
        _logger.debug("running %s with %s", args.command, config)
        expression = ""
        if args.command in ("normalize", "integrate", "act"):
            expression = _read_expression(args.expression)
        code, output = run(args.command, config, expression, getattr(args, "word", ""))
    except NotFiniteError as error:
        print(f"error: {error}", file=sys.stderr)
        return ExitCode.NOT_FINITE
    except (QBallError, ZeroDivisionError) as error:
        print(f"error: {error}", file=sys.stderr)
        return ExitCode.USAGE
    print(output)
    return code


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(cli(argv))


if __name__ == "__main__":
    main()
