"""Command-line front end.

Subcommands: fields, figure, sweep, profile, verify.  Exit codes: 0 on
success, 1 for invalid configuration or arguments, 2 for I/O failures,
3 when verification fails.  Argument errors are routed through the same
invalid-config path so the exit-code contract holds for malformed command
lines too.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import azimuthal_profile, ring_radius
from .config import load_config
from .errors import InvalidConfigError, VerificationError, VortexTwmError
from .figures import FIGURE_IDS, SWEEP_PARAMS, reproduce_figure, run_sweep
from .render import write_profile_csv
from .runner import compute_fields, run_config, write_manifest
from .verify import ensure_passing, print_report, run_verify

PROFILE_FIELDS = {
    "d": "omega_d",
    "u": "omega_u",
    "fp": "omega_fp",
    "fs": "omega_fs",
    "p": "omega_p",
    "s": "omega_s",
}


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so main() owns the exit-code mapping."""

    def error(self, message):
        raise InvalidConfigError(message)


def _parse_values(raw: str) -> list[float]:
    items = [piece.strip() for piece in raw.split(",") if piece.strip()]
    if not items:
        raise InvalidConfigError("--values needs a comma-separated list of numbers")
    try:
        return [float(piece) for piece in items]
    except ValueError as exc:
        raise InvalidConfigError(f"--values: {exc}") from None


def _cmd_fields(args) -> int:
    cfg = load_config(args.config)
    manifest = run_config(cfg, args.out)
    print(f"wrote {len(manifest['files'])} files to {args.out}")
    return 0


def _cmd_figure(args) -> int:
    manifest = reproduce_figure(args.id, args.out)
    print(f"{args.id}: wrote {len(manifest['files'])} files to {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    values = _parse_values(args.values)
    manifest = run_sweep(cfg, args.param, values, args.out)
    print(
        f"sweep {args.param} over {len(values)} values: "
        f"wrote {len(manifest['files'])} files to {args.out}"
    )
    return 0


def _cmd_profile(args) -> int:
    if args.field not in PROFILE_FIELDS:
        raise InvalidConfigError(
            f"--field must be one of {sorted(PROFILE_FIELDS)}, got {args.field!r}"
        )
    cfg = load_config(args.config)
    name = PROFILE_FIELDS[args.field]
    field = compute_fields(cfg)[name]
    if args.radius == "auto":
        radius = cfg.ring_radius if cfg.ring_radius is not None else ring_radius(field)
    else:
        try:
            radius = float(args.radius)
        except ValueError:
            raise InvalidConfigError(
                f"--radius must be 'auto' or a number, got {args.radius!r}"
            ) from None
    profile = azimuthal_profile(field, radius, cfg.profile_m)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_profile_csv(profile, out_dir / f"profile_{name}.csv")
    write_manifest(out_dir, {"profile": {"field": name, "radius": radius, "m": cfg.profile_m}})
    print(f"profile of {name} at radius {radius:g}: wrote {out_dir / f'profile_{name}.csv'}")
    return 0


def _cmd_verify(args) -> int:
    results = run_verify(args.level)
    print_report(results)
    ensure_passing(results)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="vortex-twm", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p_fields = sub.add_parser("fields", help="run one configuration into a directory")
    p_fields.add_argument("--config", required=True, help="JSON run configuration")
    p_fields.add_argument("--out", required=True, help="output directory")
    p_fields.set_defaults(handler=_cmd_fields)

    p_figure = sub.add_parser("figure", help="reproduce a preset figure suite")
    p_figure.add_argument("id", help=f"one of {', '.join(FIGURE_IDS)}")
    p_figure.add_argument("--out", required=True, help="output directory")
    p_figure.set_defaults(handler=_cmd_figure)

    p_sweep = sub.add_parser("sweep", help="re-run a config across one parameter axis")
    p_sweep.add_argument("--param", required=True, help=f"one of {', '.join(SWEEP_PARAMS)}")
    p_sweep.add_argument("--values", required=True, help="comma-separated numbers")
    p_sweep.add_argument("--config", required=True, help="JSON run configuration")
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_profile = sub.add_parser("profile", help="write one field's azimuthal intensity profile")
    p_profile.add_argument(
        "--field", required=True, help=f"one of {', '.join(sorted(PROFILE_FIELDS))}"
    )
    p_profile.add_argument("--radius", default="auto", help="'auto' or ring radius in waists")
    p_profile.add_argument("--config", required=True, help="JSON run configuration")
    p_profile.add_argument("--out", required=True, help="output directory")
    p_profile.set_defaults(handler=_cmd_profile)

    p_verify = sub.add_parser("verify", help="run the oracle self-check suites")
    p_verify.add_argument("--level", default="fast", help="fast or full")
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "handler", None) is None:
            parser.print_help()
            return 1
        return args.handler(args)
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvalidConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VortexTwmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
