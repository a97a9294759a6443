"""This module implements the iterfield command line interface."""

# This file is part of Iterfield.
# Iterfield is free software: you can redistribute it and/or modify it under the terms of the GNU Lesser General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
# Iterfield is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more details.
# You should have received a copy of the GNU Lesser General Public License along with Iterfield. If not, see <https://www.gnu.org/licenses/>.

import argparse
import json
import logging
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from iterfield.checks.apf import APFConstruction
from iterfield.checks.ramification import BreakAgreement
from iterfield.checks.roots import ChebyshevTrace, LattesFiber
from iterfield.functions.algebra_func import critical_polynomial, iterate, parse_map_literal
from iterfield.functions.dynamics_func import (
    bicritical_normal_form,
    classify_pcf,
    critical_points,
    is_bicritical,
    is_exceptional,
    verify_v_identity,
)
from iterfield.functions.numeric_func import periodic_lcm, verify_power_structure, witness_root_of_unity
from iterfield.functions.ramification_func import ramification_breaks
from iterfield.helpers import constants
from iterfield.helpers.config import RunConfig
from iterfield.helpers.constants import AVAILABLE_SUBCOMMANDS
from iterfield.helpers.enums import SubCommand
from iterfield.helpers.exceptions import IterfieldError
from iterfield.helpers.herbrand import HerbrandFn
from iterfield.helpers.padic import LocalTower
from iterfield.helpers.polynomial import Poly, RationalMap, is_infinity
from iterfield.helpers.utils import jsonable, to_rat

log = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Invalid command line input; reported with exit code 2."""


def _common_parser(suppress: bool = False) -> argparse.ArgumentParser:
    """
    Return the parent parser of the global flags.

    The subcommand copies are built with suppress=True: their defaults are SUPPRESS, so a flag given before
    the subcommand is not overwritten by the subparser default.
    """

    def default(value: Any) -> Any:
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--precision", type=int, default=default(constants.DEFAULT_PRECISION), help="p-adic precision in digits of p."
    )
    common.add_argument(
        "--depth", type=int, default=default(None), help="Tower depth, by default chosen from the level degree."
    )
    common.add_argument(
        "--tolerance", type=float, default=default(1.0), help="Scale in (0, 1] applied to every numeric tolerance."
    )
    common.add_argument(
        "--bound-n", type=int, default=default(constants.DEFAULT_ORBIT_BOUND), help="Orbit iteration bound N."
    )
    common.add_argument(
        "--height-bound", type=int, default=default(constants.DEFAULT_HEIGHT_BOUND), help="Orbit height bound."
    )
    common.add_argument(
        "--m-max", type=int, default=default(constants.DEFAULT_M_MAX), help="Period bound of the power-like test."
    )
    common.add_argument(
        "--output", default=default(None), help="Write the JSON report to this path instead of stdout."
    )
    common.add_argument("-v", "--verbose", action="count", default=default(0), help="-v for INFO, -vv for DEBUG logs.")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subparser per subcommand."""
    common = _common_parser(suppress=True)
    parser = argparse.ArgumentParser(
        prog="iterfield",
        description="Verify arithmetic dynamics constructions and emit JSON reports.",
        parents=[_common_parser()],
    )
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(AVAILABLE_SUBCOMMANDS) + "}")
    sub.required = True

    analyze = sub.add_parser(SubCommand.ANALYZE.value, parents=[common], help="Critical, PCF and exceptional data.")
    analyze.add_argument("--map", required=True, help="Map literal file, or - for stdin.")

    roots = sub.add_parser(SubCommand.VERIFY_ROOTS.value, parents=[common], help="Orbit products and witnesses.")
    roots.add_argument("--map", required=True, help="Map literal file, or - for stdin.")
    roots.add_argument("--base", required=True, help="Rational basepoint b.")
    roots.add_argument("--m", type=int, required=True, help="Power structure m.")
    roots.add_argument("--j", type=int, required=True, help="Witness the primitive m^j-th roots of unity.")
    roots.add_argument("--alpha", default=None, help="Point of the orbit product check, default the basepoint.")

    chebyshev = sub.add_parser(SubCommand.CHEBYSHEV.value, parents=[common], help="Chebyshev identities and traces.")
    chebyshev.add_argument("--d", type=int, required=True)
    chebyshev.add_argument("--base", required=True)
    chebyshev.add_argument("--n", type=int, required=True)

    lattes = sub.add_parser(SubCommand.LATTES.value, parents=[common], help="Lattès semiconjugacy and fibers.")
    lattes.add_argument("--a", required=True)
    lattes.add_argument("--b", required=True)
    lattes.add_argument("--d", type=int, required=True)
    lattes.add_argument("--x0", required=True)
    lattes.add_argument("--n", type=int, required=True)

    ramification = sub.add_parser(SubCommand.RAMIFICATION.value, parents=[common], help="Breaks and Herbrand data.")
    source = ramification.add_mutually_exclusive_group(required=True)
    source.add_argument("--poly", help="JSON list of coefficients of an Eisenstein polynomial, constant first.")
    source.add_argument("--cyclotomic", nargs=2, type=int, metavar=("P", "N"), help="The tower Q_p(ζ_{p^n}).")
    ramification.add_argument("--p", type=int, default=None, help="The prime of --poly.")

    apf = sub.add_parser(SubCommand.APF.value, parents=[common], help="Norm-compatible Eisenstein tower.")
    apf.add_argument("--map", required=True, help="Map literal file, or - for stdin.")
    apf.add_argument("--p", type=int, required=True)
    return parser


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise UsageError(f"Cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_map(path: str) -> RationalMap:
    try:
        return parse_map_literal(_read_json(path))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _rational(text: str, name: str) -> Fraction:
    try:
        return to_rat(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"'--{name}' must be an integer or p/q, got {text!r}.") from exc


def _point(x: Any) -> Any:
    return "inf" if is_infinity(x) else jsonable(x)


def run_analyze(args: argparse.Namespace, config: RunConfig) -> Tuple[Dict[str, Any], bool]:
    phi = _load_map(args.map)
    points = critical_points(phi)
    pcf = classify_pcf(phi, n=config.bound_n, height_bound=config.height_bound)
    candidates = [x for x, _ in points if is_infinity(x) or isinstance(x, Fraction)]
    report: Dict[str, Any] = {
        "map": phi.to_literal(),
        "degree": phi.degree,
        "critical": critical_polynomial(phi).to_dict(),
        "critical_points": [{"point": _point(x), "multiplicity": m} for x, m in points],
        "pcf": pcf.to_dict(),
        "exceptional": [_point(x) for x in candidates if is_exceptional(phi, x)],
        "bicritical": is_bicritical(phi),
    }
    if report["bicritical"] and len(candidates) == 2:
        mu, psi = bicritical_normal_form(phi)
        report["normal_form"] = {"mobius": jsonable([mu.a, mu.b, mu.c, mu.d]), "map": psi.to_literal()}
    return report, True


def run_verify_roots(args: argparse.Namespace, config: RunConfig) -> Tuple[Dict[str, Any], bool]:
    phi = _load_map(args.map)
    b = _rational(args.base, "base")
    alpha = _rational(args.alpha, "alpha") if args.alpha is not None else b
    tolerances = config.tolerances
    r = periodic_lcm(phi, n=config.bound_n)
    psi = iterate(phi, r) if r > 1 else phi
    structure = verify_power_structure(
        psi, alpha, args.m, tolerance=tolerances.check, root_tolerance=tolerances.root, strict=False
    )
    witnesses = [
        witness_root_of_unity(
            phi, b, args.m, j, tolerance=tolerances.witness, root_tolerance=tolerances.root, strict=False
        )
        for j in range(1, args.j + 1)
    ]
    report = {
        "period_lcm": r,
        "power_structure": structure.to_dict(),
        "witnesses": [w.to_dict() for w in witnesses],
    }
    return report, structure.passed and all(w.passed for w in witnesses)


def run_chebyshev(args: argparse.Namespace, config: RunConfig) -> Tuple[Dict[str, Any], bool]:
    check = ChebyshevTrace(
        tolerance=config.tolerances.trace, root_tolerance=config.tolerances.root, disable_warnings=True
    )
    b = _rational(args.base, "base")
    (result,) = check(instances=[{"d": args.d, "b": b, "n": args.n}])
    v_identity = verify_v_identity()
    return {"v_identity": v_identity, **result.to_dict()}, v_identity and result.passed


def run_lattes(args: argparse.Namespace, config: RunConfig) -> Tuple[Dict[str, Any], bool]:
    check = LattesFiber(
        tolerance=config.tolerances.check, root_tolerance=config.tolerances.root, disable_warnings=True
    )
    instance = {
        "a": _rational(args.a, "a"),
        "b": _rational(args.b, "b"),
        "d": args.d,
        "x0": _rational(args.x0, "x0"),
        "n": args.n,
    }
    (result,) = check(instances=[instance])
    return result.to_dict(), result.passed


def run_ramification(args: argparse.Namespace, config: RunConfig) -> Tuple[Dict[str, Any], bool]:
    if args.cyclotomic is not None:
        p, n = args.cyclotomic
        (result,) = BreakAgreement(precision=config.precision, disable_warnings=True)(instances=[{"p": p, "n": n}])
        return result.to_dict(), result.passed

    if args.p is None:
        raise UsageError("'--poly' needs the prime '--p'.")
    coeffs = _read_json(args.poly) if not args.poly.lstrip().startswith("[") else json.loads(args.poly)
    if not isinstance(coeffs, list) or not coeffs:
        raise UsageError("'--poly' must be a non-empty JSON list of coefficients.")
    g = Poly([_rational(str(c), "poly") for c in coeffs])
    data = ramification_breaks(g, tower=LocalTower(args.p, config.precision))
    herbrand = HerbrandFn.from_lower_breaks(data.lower_breaks, data.degree)
    report = {
        "breaks": data.to_dict(),
        "herbrand": herbrand.to_dict(),
        "upper_breaks": jsonable(herbrand.upper_breaks()),
    }
    return report, True


def run_apf(args: argparse.Namespace, config: RunConfig) -> Tuple[Dict[str, Any], bool]:
    phi = _load_map(args.map)
    check = APFConstruction(m_max=config.m_max, precision=config.precision, disable_warnings=True)
    (certificate,) = check(instances=[{"phi": phi, "p": args.p, "depth": config.depth}])
    return certificate.to_dict(), certificate.passed


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], Tuple[Dict[str, Any], bool]]] = {
    SubCommand.ANALYZE.value: run_analyze,
    SubCommand.VERIFY_ROOTS.value: run_verify_roots,
    SubCommand.CHEBYSHEV.value: run_chebyshev,
    SubCommand.LATTES.value: run_lattes,
    SubCommand.RAMIFICATION.value: run_ramification,
    SubCommand.APF.value: run_apf,
}


def _emit(payload: Dict[str, Any], output: Optional[str]) -> None:
    payload["timestamp"] = datetime.now(timezone.utc).isoformat()
    text = json.dumps(jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False)
    if output is None:
        print(text)
        return
    with open(output, "w") as handle:
        handle.write(text + "\n")


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse the arguments, run one subcommand and emit its JSON report.

    Parameters
    ----------
    argv: sequence of str, optional
        The arguments without the program name, sys.argv[1:] when omitted.

    Returns
    -------
    integer
        0 when every check passed, 1 when a mathematical check failed and 2 on usage errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_USAGE

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.captureWarnings(True)

    try:
        config = RunConfig.from_namespace(args)
    except (ValueError, AssertionError) as exc:
        print(f"iterfield: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    payload: Dict[str, Any] = {"command": args.command, "config": config.to_dict()}
    try:
        report, passed = COMMANDS[args.command](args, config)
    except UsageError as exc:
        print(f"iterfield: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"iterfield: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IterfieldError as exc:
        log.error("%s failed with %s: %s", args.command, type(exc).__name__, exc)
        payload.update({"passed": False, "error": {"type": type(exc).__name__, "message": str(exc)}})
        _emit(payload, config.output_path)
        return EXIT_FAILURE

    payload.update({"passed": passed, "report": report})
    _emit(payload, config.output_path)
    if not passed:
        log.warning("%s: a check failed, see the report.", args.command)
    return EXIT_PASS if passed else EXIT_FAILURE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
