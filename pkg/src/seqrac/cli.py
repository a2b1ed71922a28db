"""Command-line client for the certification service.

Every subcommand builds the same request model the HTTP API accepts and
calls the shared handler in-process; `seqrac serve` starts the HTTP server.
Options may also come from a JSON config file (--config); explicit flags
override file values, and SEQRAC_SEED supplies the default seed.
"""

import argparse
import json
import os
import sys

from .report import rows_to_csv
from .service import handlers, schemas

ENV_SEED = "SEQRAC_SEED"


def _default_seed() -> int | None:
    raw = os.environ.get(ENV_SEED)
    return int(raw) if raw else None


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return data


def _merge(config: dict, args: argparse.Namespace, keys: list[str]) -> dict:
    """Config values first, explicit command-line values override."""
    merged = {k: v for k, v in config.items() if k in keys}
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if "seed" in keys and merged.get("seed") is None:
        env_seed = _default_seed()
        if env_seed is not None:
            merged["seed"] = env_seed
    return merged


def _emit(payload: dict, args: argparse.Namespace, csv_rows: list[dict] | None = None):
    if getattr(args, "format", "json") == "csv":
        if not csv_rows:
            raise ValueError("this command has no CSV representation")
        text = rows_to_csv(csv_rows)
    else:
        text = json.dumps(payload, indent=2) + "\n"
    output = getattr(args, "output", None)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn(payload: dict):
    for message in payload.get("warnings", []):
        print(f"warning: {message}", file=sys.stderr)


def cmd_sweep(args, config):
    merged = _merge(
        config, args, ["thetas", "visibility", "events_per_setting", "seed"]
    )
    response = handlers.sweep(schemas.SweepRequest(**merged))
    payload = response.model_dump()
    _emit(payload, args, csv_rows=[r.model_dump() for r in response.rows])


def cmd_simulate(args, config):
    merged = _merge(
        config,
        args,
        [
            "eta", "theta_degrees", "visibility", "events_per_setting",
            "seed", "bootstrap_replicates",
        ],
    )
    response = handlers.simulate(schemas.SimulateRequest(**merged))
    payload = response.model_dump()
    _emit(payload, args, csv_rows=[c.model_dump() for c in response.counts])


def cmd_certify(args, config):
    merged = _merge(config, args, ["w_ab", "w_ac", "sigma_ab", "sigma_ac"])
    response = handlers.certify(schemas.CertifyRequest(**merged))
    payload = response.model_dump()
    _warn(payload)
    _emit(payload, args)


def cmd_incompat(args, config):
    merged = _merge(
        config, args, ["w_ab", "w_ac", "sigma_ab", "sigma_ac", "eta_min", "eta_max"]
    )
    response = handlers.incompat(schemas.IncompatRequest(**merged))
    payload = response.model_dump()
    _warn(payload)
    _emit(payload, args)


def cmd_tomo(args, config):
    merged = _merge(config, args, ["epsilon", "eta_grid", "restarts", "seed"])
    response = handlers.tomography(schemas.TomographyRequest(**merged))
    payload = response.model_dump()
    # the achieving Bloch vectors ride along in JSON only
    csv_rows = [
        {k: v for k, v in row.model_dump().items() if k != "lab_bloch"}
        for row in response.rows
    ]
    _emit(payload, args, csv_rows=csv_rows)


def cmd_projective_bound(args, config):
    merged = _merge(config, args, ["w_ab", "points"])
    response = handlers.projective(schemas.ProjectiveBoundRequest(**merged))
    payload = response.model_dump()
    _emit(payload, args, csv_rows=[r.model_dump() for r in response.rows])


def cmd_serve(args, config):
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)


def _add_output_options(parser):
    parser.add_argument("--output", help="write to this file instead of stdout")
    parser.add_argument(
        "--format", choices=["json", "csv"], default="json", help="output format"
    )
    parser.add_argument("--config", help="JSON file with default option values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqrac",
        description="Sequential random-access-code simulation and certification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="one certified row per wave-plate angle")
    p.add_argument("--thetas", type=float, nargs="+", help="angles in degrees")
    p.add_argument("--visibility", type=float)
    p.add_argument(
        "--events-per-setting",
        dest="events_per_setting",
        type=int,
        help="sample counts instead of exact statistics",
    )
    p.add_argument("--seed", type=int)
    _add_output_options(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="sample one Poissonian count table")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--eta", type=float)
    group.add_argument("--theta-degrees", dest="theta_degrees", type=float)
    p.add_argument("--visibility", type=float)
    p.add_argument(
        "--events-per-setting", dest="events_per_setting", type=int
    )
    p.add_argument("--seed", type=int)
    p.add_argument(
        "--bootstrap",
        dest="bootstrap_replicates",
        type=int,
        help="cross-check witness errors by resampling this many times",
    )
    _add_output_options(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("certify", help="sharpness interval and incompatibility bounds")
    p.add_argument("--w-ab", dest="w_ab", type=float)
    p.add_argument("--w-ac", dest="w_ac", type=float)
    p.add_argument("--sigma-ab", dest="sigma_ab", type=float)
    p.add_argument("--sigma-ac", dest="sigma_ac", type=float)
    _add_output_options(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("incompat", help="incompatibility bounds from witnesses")
    p.add_argument("--w-ab", dest="w_ab", type=float)
    p.add_argument("--w-ac", dest="w_ac", type=float)
    p.add_argument("--sigma-ab", dest="sigma_ab", type=float)
    p.add_argument("--sigma-ac", dest="sigma_ac", type=float)
    p.add_argument("--eta-min", dest="eta_min", type=float)
    p.add_argument("--eta-max", dest="eta_max", type=float)
    _add_output_options(p)
    p.set_defaults(func=cmd_incompat)

    p = sub.add_parser("tomo", help="worst-case detector-tomography sweep")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--eta-grid", dest="eta_grid", type=float, nargs="+")
    p.add_argument("--restarts", type=int)
    p.add_argument("--seed", type=int)
    _add_output_options(p)
    p.set_defaults(func=cmd_tomo)

    p = sub.add_parser(
        "projective-bound", help="stochastic-projective trade-off boundary"
    )
    group = p.add_mutually_exclusive_group()
    group.add_argument("--w-ab", dest="w_ab", type=float)
    group.add_argument("--points", type=int, help="emit a full curve on a grid")
    _add_output_options(p)
    p.set_defaults(func=cmd_projective_bound)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve, config=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(getattr(args, "config", None))
        args.func(args, config)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
