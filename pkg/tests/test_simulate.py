"""Monte Carlo estimator: determinism, exact zero-disturbance cases, statistics."""
import math

import numpy as np
import pytest

from qtradeoff import (
    Instrument,
    SimulationConfig,
    SimulationResult,
    optimal_instrument,
    run,
    symmetric_pair,
    tradeoff_point,
)
from qtradeoff.simulate import outcome_counts

PI8 = math.pi / 8
IDENTITY = Instrument(outcomes=((np.eye(2, dtype=complex) / math.sqrt(2),),
                                (np.eye(2, dtype=complex) / math.sqrt(2),)))

# chi-squared 99.9% critical value, 3 degrees of freedom
CHI2_999_DF3 = 16.266


class TestConfig:
    def test_shots_must_be_positive(self):
        with pytest.raises(ValueError):
            SimulationConfig(shots=0, seed=1)

    def test_single_shot_allowed(self):
        result = run(IDENTITY, symmetric_pair(0.3), SimulationConfig(shots=1, seed=5))
        assert result.shots == 1
        assert result.stderr_P == 0.0


class TestDeterminism:
    def test_identical_runs_identical_records(self):
        pair = symmetric_pair(PI8)
        inst = optimal_instrument(PI8, 0.7)
        cfg = SimulationConfig(shots=50000, seed=424242)
        assert run(inst, pair, cfg) == run(inst, pair, cfg)

    def test_different_seeds_differ(self):
        pair = symmetric_pair(PI8)
        inst = optimal_instrument(PI8, 0.7)
        a = run(inst, pair, SimulationConfig(shots=50000, seed=1))
        b = run(inst, pair, SimulationConfig(shots=50000, seed=2))
        assert a != b


class TestExactCases:
    def test_identity_instrument_never_disturbs(self):
        result = run(IDENTITY, symmetric_pair(0.37), SimulationConfig(shots=20000, seed=11))
        assert result.empirical_D == 0.0
        assert result.stderr_D == 0.0
        assert abs(result.empirical_P - 0.5) <= 4 * result.stderr_P

    def test_t_zero_never_disturbs(self):
        result = run(optimal_instrument(PI8, 0.0), symmetric_pair(PI8),
                     SimulationConfig(shots=20000, seed=3))
        assert result.empirical_D == 0.0


class TestStatistics:
    @pytest.mark.parametrize("t,shots", [(1.0, 1000000), (0.5, 1000000)])
    def test_matches_closed_form_within_four_sigma(self, t, shots):
        pair = symmetric_pair(PI8)
        result = run(optimal_instrument(PI8, t), pair, SimulationConfig(shots=shots, seed=2718))
        pt = tradeoff_point(PI8, t)
        assert abs(result.empirical_P - pt.P) <= 4 * result.stderr_P
        assert abs(result.empirical_D - pt.D) <= 4 * result.stderr_D

    def test_unbiased_over_seeds(self):
        # mean over independent seeds stays within 3 pooled standard errors
        pair = symmetric_pair(PI8)
        inst = optimal_instrument(PI8, 0.8)
        pt = tradeoff_point(PI8, 0.8)
        results = [run(inst, pair, SimulationConfig(shots=10000, seed=s)) for s in range(50)]
        mean_p = np.mean([r.empirical_P for r in results])
        pooled = math.sqrt(np.mean([r.stderr_P**2 for r in results]) / len(results))
        assert abs(mean_p - pt.P) <= 3 * pooled

    def test_outcome_frequencies_match_povm(self):
        pair = symmetric_pair(PI8)
        inst = optimal_instrument(PI8, 0.6)
        cfg = SimulationConfig(shots=1000000, seed=909)
        counts = outcome_counts(inst, pair, cfg)
        assert counts.sum() == cfg.shots
        from qtradeoff import povm
        elements = povm(inst)
        stat = 0.0
        for i, psi in enumerate((pair.psi1, pair.psi2)):
            for j in range(2):
                expected = cfg.shots * 0.5 * float(np.real(psi.conj() @ elements[j] @ psi))
                stat += (counts[i, j] - expected) ** 2 / expected
        assert stat < CHI2_999_DF3

    def test_stderr_is_sample_std_over_sqrt_shots(self):
        result = run(optimal_instrument(PI8, 1.0), symmetric_pair(PI8),
                     SimulationConfig(shots=40000, seed=77))
        # success indicator is Bernoulli: reconstruct its sample std
        p_hat = result.empirical_P
        n = result.shots
        expected = math.sqrt(p_hat * (1 - p_hat) * n / (n - 1)) / math.sqrt(n)
        assert result.stderr_P == pytest.approx(expected, rel=1e-9)


class TestValidation:
    def test_requires_two_outcomes(self):
        third = Instrument(outcomes=(
            (np.eye(2, dtype=complex) / math.sqrt(3),),
            (np.eye(2, dtype=complex) / math.sqrt(3),),
            (np.eye(2, dtype=complex) / math.sqrt(3),),
        ))
        with pytest.raises(ValueError):
            run(third, symmetric_pair(0.3), SimulationConfig(shots=10, seed=0))

    def test_result_is_plain_record(self):
        result = run(IDENTITY, symmetric_pair(0.3), SimulationConfig(shots=10, seed=0))
        assert isinstance(result, SimulationResult)
        assert result.seed == 0
        assert 0.0 <= result.empirical_P <= 1.0
        assert 0.0 <= result.empirical_D <= 1.0
