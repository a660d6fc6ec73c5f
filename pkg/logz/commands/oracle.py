"""oracle: closed forms and quadrature printed as JSON."""
import argparse
import json
import logging
import math

from logz.core.config import get_settings
from logz.core.rng import RngStream
from logz.models.config import OracleConfig
from logz.oracles import (
    analytic_gaussian_Z,
    gaussian_log_stage_ratio,
    gaussian_log_variance_ratio,
    simulate_product_deviation,
    trapezoid_Z,
)
from logz.potentials.factory import build_target
from logz.services.report_service import read_json_config

logger = logging.getLogger(__name__)


def _emit(payload: dict) -> int:
    print(json.dumps(payload, sort_keys=True))
    return 0


def _optional_float(text: str):
    if text.lower() in ("inf", "none", "last"):
        return None
    return float(text)


def cmd_gaussian(args: argparse.Namespace) -> int:
    log_z = analytic_gaussian_Z(args.lambdas)
    return _emit({"lambdas": args.lambdas, "log_z": log_z, "z": math.exp(log_z)})


def cmd_stage_ratio(args: argparse.Namespace) -> int:
    log_ratio = gaussian_log_stage_ratio(args.s2, args.sigma_sq, args.sigma_next_sq, args.d)
    return _emit({"log_ratio": log_ratio, "ratio": math.exp(log_ratio)})


def cmd_variance_ratio(args: argparse.Namespace) -> int:
    log_ratio = gaussian_log_variance_ratio(args.s2, args.sigma2, args.alpha, args.d)
    return _emit({"log_ratio": log_ratio, "ratio": math.exp(log_ratio)})


def cmd_quadrature(args: argparse.Namespace) -> int:
    config = read_json_config(args.config, OracleConfig)
    potential = build_target(config.target)
    max_points = args.max_points or get_settings().QUADRATURE_MAX_POINTS
    result = trapezoid_Z(potential, args.eps, h_override=args.h, max_points=max_points)
    return _emit(result.model_dump(mode="json"))


def cmd_product_deviation(args: argparse.Namespace) -> int:
    result = simulate_product_deviation(args.M, args.eta, args.eps, args.trials, RngStream(args.seed))
    return _emit(result.model_dump(mode="json"))


def register(subparsers) -> None:
    parser = subparsers.add_parser("oracle", help="Print a ground-truth value as JSON")
    oracles = parser.add_subparsers(dest="oracle", required=True)

    gaussian = oracles.add_parser("gaussian", help="log Z of exp(-sum lambda_j x_j^2 / 2)")
    gaussian.add_argument("--lambdas", type=float, nargs="+", required=True)
    gaussian.set_defaults(handler=cmd_gaussian)

    stage = oracles.add_parser("stage-ratio", help="E g_i under rho_i for a N(0, s2 I) target")
    stage.add_argument("--s2", type=float, required=True)
    stage.add_argument("--sigma-sq", type=float, required=True)
    stage.add_argument("--sigma-next-sq", type=_optional_float, default=None, help="'inf' for the last stage")
    stage.add_argument("--d", type=int, required=True)
    stage.set_defaults(handler=cmd_stage_ratio)

    variance = oracles.add_parser("variance-ratio", help="E g^2 / (E g)^2 for a N(0, s2 I) target")
    variance.add_argument("--s2", type=float, required=True)
    variance.add_argument("--sigma2", type=float, required=True)
    variance.add_argument("--alpha", type=float, required=True)
    variance.add_argument("--d", type=int, required=True)
    variance.set_defaults(handler=cmd_variance_ratio)

    quadrature = oracles.add_parser("quadrature", help="Trapezoid Z for a d <= 3 target")
    quadrature.add_argument("--config", required=True, help="Target or run config JSON")
    quadrature.add_argument("--eps", type=float, required=True)
    quadrature.add_argument("--h", type=float, default=None, help="Fixed spacing")
    quadrature.add_argument("--max-points", type=int, default=None)
    quadrature.set_defaults(handler=cmd_quadrature)

    product = oracles.add_parser("product-deviation", help="Simulated deviation of a product of M estimates")
    product.add_argument("--M", type=int, required=True)
    product.add_argument("--eta", type=float, required=True)
    product.add_argument("--eps", type=float, required=True)
    product.add_argument("--trials", type=int, default=100_000)
    product.add_argument("--seed", type=int, default=0)
    product.set_defaults(handler=cmd_product_deviation)
