"""Statistical tests for the ULD and ULD-RMM chains and their couplings."""
import numpy as np
import pytest

from logz.core.rng import RngStream
from logz.mlmc import calibrate_variance_model, coupling_decay_slope
from logz.potentials import make_diag_quadratic, make_gaussian
from logz.samplers import rmm_coupled_run, rmm_run, uld_coupled_run, uld_run

CHAINS = 4000
ETAS = [0.4, 0.2, 0.1, 0.05]
PAIRS = 1000


def _runner(coupled, stage):
    def run(n, eta, T, gen):
        return coupled(np.zeros((n, stage.d)), stage, eta, T, gen)
    return run


@pytest.mark.sampling
@pytest.mark.parametrize("coupled", [uld_coupled_run, rmm_coupled_run])
@pytest.mark.parametrize("seed", range(5))
def test_flat_potential_coupling_is_exact(flat_potential, coupled, seed):
    """Test fine and coarse chains agree when the gradient vanishes."""
    pair = coupled(np.zeros((100, 2)), flat_potential, 0.2, 2.0, RngStream(seed))
    assert np.max(pair.gap_sq()) <= 1e-20
    assert np.std(pair.x_fine) > 0.1


@pytest.mark.sampling
@pytest.mark.parametrize("run, eta", [(uld_run, 0.05), (rmm_run, 0.1)])
def test_chain_reaches_gaussian_target(run, eta):
    """Test the position law after a long horizon matches N(0, diag(1/lambda))."""
    stage = make_diag_quadratic([1.0, 4.0])
    state = run(np.zeros((CHAINS, 2)), stage, eta, 30.0, RngStream(6))
    variances = np.var(state.x, axis=0)
    assert abs(variances[0] - 1.0) <= 0.1
    assert abs(variances[1] - 0.25) <= 0.1
    assert np.all(np.abs(np.mean(state.x, axis=0)) <= 0.05)
    assert np.var(state.v, axis=0) == pytest.approx([0.25, 0.25], abs=0.05)


@pytest.mark.sampling
def test_uld_coupling_gap_decays_quadratically():
    """Test the mean squared ULD gap scales like eta^2."""
    stage = make_gaussian(4, 1.0)
    slope, gaps = coupling_decay_slope(_runner(uld_coupled_run, stage), ETAS, PAIRS, 2.0, RngStream(7))
    assert np.all(np.diff(gaps) < 0)
    assert abs(slope - 2.0) <= 0.5


@pytest.mark.sampling
def test_rmm_coupling_gap_decays_cubically():
    """Test the mean squared RMM gap scales like eta^3."""
    stage = make_gaussian(4, 1.0)
    slope, gaps = coupling_decay_slope(_runner(rmm_coupled_run, stage), ETAS, PAIRS, 2.0, RngStream(8))
    assert np.all(np.diff(gaps) < 0)
    assert abs(slope - 3.0) <= 0.7


@pytest.mark.sampling
def test_calibrated_model_tracks_gaps(gaussian_2d):
    """Test a fitted eta^2 model is within a factor two of the measured gaps."""
    runner = _runner(uld_coupled_run, gaussian_2d)
    etas = [0.4, 0.2, 0.1]
    model = calibrate_variance_model(runner, etas, 2000, 2.0, RngStream(9))
    _, gaps = coupling_decay_slope(runner, etas, 2000, 2.0, RngStream(9))
    assert len(model.terms) == 1
    assert model.terms[0][1] == 2.0
    for eta, gap in zip(etas, gaps):
        assert 0.5 * gap <= model.evaluate(eta) <= 2.0 * gap
