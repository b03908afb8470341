"""
Command-Line Interface
Parses flags into a RunConfig, runs it and maps errors to exit codes
"""
import argparse
import sys
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from src.hilbert.field_states import FieldKind
from src.orchestration.run_orchestrator import Command, RunConfig, execute_run
from src.scan.sweep import ScanAxis
from src.utils.exceptions import ConfigurationError, SqueezeError


ELLIPSIS = "..."
EXIT_OK = 0


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError as e:
        raise ConfigurationError(f"not a number: '{text}'") from e


def expand_values(items: Sequence[str]) -> List[float]:
    """
    Numbers with optional '...' runs: 0.1,0.2,...,0.5 expands using the
    spacing of the two values before the ellipsis
    """
    values: List[float] = []
    pending = False
    for item in (i.strip() for i in items):
        if not item:
            continue
        if item == ELLIPSIS:
            if len(values) < 2 or pending:
                raise ConfigurationError("'...' needs two values before it")
            pending = True
            continue

        value = _float(item)
        if pending:
            start = values[-1]
            step = start - values[-2]
            if step == 0 or (value - start) / step < 0:
                raise ConfigurationError(f"cannot reach {value} from {start} in steps of {step}")
            count = int(round((value - start) / step))
            values.extend([round(start + k * step, 12) for k in range(1, count)])
            pending = False
        values.append(value)

    if pending:
        raise ConfigurationError("'...' needs an end value")
    return values


def parse_scan(text: str) -> Tuple[ScanAxis, List[float]]:
    """'<axis>:<v1,v2,...>' with axis one of alpha, n_atoms (or atoms, N), r"""
    axis_name, sep, rest = text.partition(":")
    if not sep:
        raise ConfigurationError(f"--scan expects <axis>:<values>, got '{text}'")

    aliases = {"atoms": "n_atoms", "n": "n_atoms"}
    axis_name = aliases.get(axis_name.strip().lower(), axis_name.strip().lower())
    try:
        axis = ScanAxis(axis_name)
    except ValueError as e:
        raise ConfigurationError(f"unknown scan axis '{axis_name}'") from e
    return axis, expand_values(rest.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tc-squeeze",
        description="Exact spin and field squeezing in the resonant Tavis-Cummings model",
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("--atoms", type=int, help="number of atoms N")

    field_group = parser.add_mutually_exclusive_group()
    field_group.add_argument("--coherent", type=float, metavar="ALPHA", help="coherent field amplitude")
    field_group.add_argument("--squeezed", type=float, metavar="R", help="squeezed vacuum parameter")
    field_group.add_argument("--fock", type=int, metavar="N", help="photon number state")
    field_group.add_argument("--custom", metavar="FILE", help="file of 're im' coefficient pairs")

    parser.add_argument("--gtmax", type=float, help="end of the gt window")
    parser.add_argument("--step", type=float, help="gt step (default pi / (20 sqrt(N)))")
    parser.add_argument("--scan", metavar="AXIS:VALUES", help="e.g. r:0.1,0.2,...,1.2")
    parser.add_argument("--model", help="analytic model id for compare")
    parser.add_argument("--out", help="CSV output path")
    parser.add_argument("--eps-tail", type=float, dest="eps_tail", help="truncation tail bound")
    parser.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=True,
                        help="rescale custom coefficients to unit norm (--no-normalize rejects them)")
    parser.add_argument("--field-minima", action="store_true", dest="field_minima",
                        help="also record minima of xi_Q and xi_P")
    return parser


def _field_from_args(args: argparse.Namespace):
    if args.coherent is not None:
        return FieldKind.COHERENT, args.coherent, None
    if args.squeezed is not None:
        return FieldKind.SQUEEZED_VACUUM, args.squeezed, None
    if args.fock is not None:
        return FieldKind.FOCK, float(args.fock), None
    if args.custom is not None:
        return FieldKind.CUSTOM, None, args.custom
    return None, None, None


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Validated RunConfig; usage errors exit with status 2"""
    parser = build_parser()
    args = parser.parse_args(argv)
    field_kind, parameter, custom_path = _field_from_args(args)

    try:
        scan_axis, scan_values = parse_scan(args.scan) if args.scan else (None, [])
        return RunConfig(
            command=Command(args.command),
            n_atoms=args.atoms,
            field_kind=field_kind,
            field_parameter=parameter,
            custom_path=custom_path,
            gt_max=args.gtmax,
            step=args.step,
            scan_axis=scan_axis,
            scan_values=scan_values,
            model=args.model,
            out=args.out,
            eps_tail=args.eps_tail,
            normalize=args.normalize,
            field_minima=args.field_minima,
        )
    except ConfigurationError as e:
        parser.error(str(e))
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        parser.error(messages)


def run(config: RunConfig) -> int:
    """Exit status: 0 ok, 2 bad configuration, 3 numerical failure"""
    try:
        summary = execute_run(config)
    except SqueezeError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    print(summary.line())
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
