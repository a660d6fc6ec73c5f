"""sample: trace of a single chain written as CSV."""
import argparse
import logging
from typing import List

import numpy as np

from logz.core.dependencies import get_run_seed, get_run_settings
from logz.core.rng import RngStream
from logz.models.config import SampleConfig
from logz.potentials.factory import build_target
from logz.samplers import get_sampler, mala_chain
from logz.services.report_service import ReportService, read_json_config
from logz.utils.helpers import as_points

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("sample", help="Write the trace of one chain as CSV")
    parser.add_argument("--config", required=True, help="Sample config JSON")
    parser.add_argument("--output", default="trace.csv", help="Trace CSV")
    parser.set_defaults(handler=handle)


def trace_chain(config: SampleConfig, seed: int, settings=None):
    """
    Run one chain and collect a row per step.

    Returns:
        (columns, rows): uld/rmm rows are (t, x_1..x_d, v_1..v_d); mala rows are (step, x_1..x_d)
    """
    base = build_target(config.target)
    d = base.d
    x0 = base.minimizer if config.x0 is None else as_points(config.x0, d)[0]
    rng = RngStream(seed)
    rows: List[np.ndarray] = []
    positions = [f"x_{j}" for j in range(1, d + 1)]

    if config.sampler == "mala":
        def record(step, x):
            rows.append(np.concatenate([[step], x]))

        result = mala_chain(x0, base, config.h, config.n, rng, on_step=record)
        logger.info(f"MALA trace of {config.n} steps, acceptance {result.acceptance_rate:.3f}")
        return ["step"] + positions, rows

    def record_phase(t, state):
        rows.append(np.concatenate([[t], state.x, state.v]))

    get_sampler(config.sampler, settings).run(base, x0, config.eta, config.T, rng, on_step=record_phase)
    logger.info(f"{config.sampler} trace of {len(rows)} steps (eta={config.eta}, T={config.T})")
    return ["t"] + positions + [f"v_{j}" for j in range(1, d + 1)], rows


def handle(args: argparse.Namespace) -> int:
    config = read_json_config(args.config, SampleConfig)
    settings = get_run_settings(threads=args.threads)
    columns, rows = trace_chain(config, get_run_seed(config.seed, settings), settings)
    ReportService().write_trace_csv(columns, rows, args.output)
    return 0
