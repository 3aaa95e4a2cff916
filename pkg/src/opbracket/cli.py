import argparse
import logging
import os
import sys
from typing import List, Optional

import dotenv

from . import instantiate_from_config
from .core import ConfigError
from .datastore import JSONStore, default_store
from .flows import FlowSpec
from .run import RunConfig, parse_sizes, run

logger = logging.getLogger(__name__)

LOG_LEVEL_VARIABLE = "OPBRACKET_LOG_LEVEL"
KIND_FAMILY = {"toda": "oprl", "schur": "opuc"}


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--family", choices=["oprl", "opuc"])
    parser.add_argument("--n", dest="sizes", help="sizes: a..b, a,b,c or a single integer")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--instances", type=int, help="random instances per size")
    parser.add_argument("--tol", type=float, help="override every tolerance")
    parser.add_argument("--grid", type=int, help="points per axis of the (z, w) grid")
    parser.add_argument("--out", help="JSON report path (default: stdout)")
    parser.add_argument("--preset", help="load run_<PRESET>.json from the config store")
    parser.add_argument("--config-dir", help="config store directory (default: $OPBRACKET_CONFIG_DIR)")
    parser.add_argument("--log-level", help=f"logging level (default: ${LOG_LEVEL_VARIABLE} or WARNING)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opbracket",
        description="Numerical verification of Poisson brackets of orthogonal polynomials.")
    commands = parser.add_subparsers(dest="command", required=True)
    for name, text in (("verify", "fundamental brackets, identity suite and symplectic checks"),
                       ("jacobian", "Jacobian determinants of the spectral maps"),
                       ("periodic", "discriminant, Floquet and density-of-states checks")):
        _common(commands.add_parser(name, help=text))
    flow = commands.add_parser("flow", help="RK4 trace flows against the exact spectral solution")
    _common(flow)
    flow.add_argument("--kind", choices=["toda", "schur", "custom"])
    flow.add_argument("--coeffs", help="comma separated c_0..c_k (oprl) or complex b_0..b_K (opuc)")
    flow.add_argument("--t", dest="t_final", type=float)
    flow.add_argument("--dt", type=float)
    flow.add_argument("--compare", choices=["exact", "none"])
    flow.add_argument("--csv", dest="csv_out", help="trajectory CSV path")
    return parser


def parse_coeffs(text: str, family: str) -> dict:
    """``0,2`` for OPRL; ``0,1+0.5j`` style complex values for OPUC."""
    try:
        values = [complex(part.strip().replace(" ", "")) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise ConfigError(f"cannot parse coefficients {text!r}") from err
    if family == "oprl":
        if any(value.imag for value in values):
            raise ConfigError("OPRL coefficients must be real")
        return {"coeffs": [value.real for value in values]}
    return {"coeffs": [value.real for value in values], "coeffs_imag": [value.imag for value in values]}


def _flow_spec(args, family: str, base: Optional[FlowSpec]) -> Optional[FlowSpec]:
    kind = getattr(args, "kind", None)
    coeffs = getattr(args, "coeffs", None)
    if kind in KIND_FAMILY:
        return FlowSpec.from_preset(kind)
    if kind == "custom" or coeffs:
        if not coeffs:
            raise ConfigError("--kind custom needs --coeffs")
        return FlowSpec(kind=family, preset="custom", **parse_coeffs(coeffs, family))
    return base


def config_from_args(args, store: Optional[JSONStore] = None) -> RunConfig:
    """RunConfig from a preset (if any) overridden by the explicit flags.

    Raises:
        ConfigError: for unknown presets and invalid values.
    """
    fields = {}
    if args.preset:
        store = store or default_store()
        preset = instantiate_from_config(store.require_config("run", args.preset), store)
        if not isinstance(preset, RunConfig):
            raise ConfigError(f"run preset {args.preset!r} does not describe a RunConfig")
        fields = preset.model_dump()
        fields["flow"] = preset.flow
    fields["command"] = args.command

    for name in ("family", "seed", "instances", "grid", "out"):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    if args.tol is not None:
        fields["tolerance"] = args.tol
    if args.sizes:
        fields["sizes"] = parse_sizes(args.sizes)

    if args.command == "flow":
        kind = args.kind
        if kind in KIND_FAMILY:
            if args.family and args.family != KIND_FAMILY[kind]:
                raise ConfigError(f"--kind {kind} is an {KIND_FAMILY[kind]} flow")
            fields["family"] = KIND_FAMILY[kind]
        try:
            fields["flow"] = _flow_spec(args, fields.get("family", "oprl"), fields.get("flow"))
        except ValueError as err:
            raise ConfigError(str(err)) from err
        for name in ("t_final", "dt", "compare", "csv_out"):
            value = getattr(args, name)
            if value is not None:
                fields[name] = value
    return RunConfig.build(**fields)


def configure_logging(level: Optional[str] = None):
    name = (level or os.environ.get(LOG_LEVEL_VARIABLE) or "WARNING").upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise ConfigError(f"unknown log level {name!r}")
    logging.basicConfig(level=numeric, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    dotenv.load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        configure_logging(args.log_level)
        store = JSONStore(args.config_dir) if args.config_dir else None
        config = config_from_args(args, store)
    except ConfigError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return 2
    logger.info("running %s for %s, sizes %s, seed %d", config.command, config.family, config.sizes, config.seed)
    return run(config, sys.stdout, sys.stderr)


def start():
    sys.exit(main())


if __name__ == "__main__":
    start()
