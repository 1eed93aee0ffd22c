"""Seeded Monte Carlo of the discrimination experiment.

Each shot draws one of the two states uniformly, samples a measurement outcome
from the POVM statistics, records a success indicator and the fidelity of the
normalized posterior with the input state. Averaging the per-shot disturbance
over the sampled outcome is an unbiased estimator of the outcome-averaged
channel disturbance.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instruments import Instrument, apply_outcome, povm
from .qubit import StatePair, projector

# Pinned in output metadata so results can be reproduced across platforms.
RNG_ALGORITHM = f"numpy.random.Generator(PCG64) numpy=={np.__version__}"

# Per-shot disturbances below double-precision resolution are round-off.
_ROUNDOFF = 1e-12


@dataclass(frozen=True)
class SimulationConfig:
    shots: int
    seed: int

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class SimulationResult:
    empirical_P: float
    empirical_D: float
    stderr_P: float
    stderr_D: float
    shots: int
    seed: int


def _cell_tables(inst: Instrument, pair: StatePair) -> tuple[np.ndarray, np.ndarray]:
    """Outcome probabilities p[i, j] and per-shot disturbances d[i, j]."""
    states = (pair.psi1, pair.psi2)
    probs = np.zeros((2, 2))
    dist = np.zeros((2, 2))
    for i, psi in enumerate(states):
        rho = projector(psi)
        for j in range(2):
            out, p = apply_outcome(inst, j, rho)
            probs[i, j] = p
            if p > 0.0:
                fid = float(np.real(psi.conj() @ (out / p) @ psi))
                d = max(0.0, 1.0 - fid)
                dist[i, j] = 0.0 if d < _ROUNDOFF else d
    return probs, dist


def _sample_cells(probs: np.ndarray, cfg: SimulationConfig) -> tuple[np.ndarray, np.ndarray]:
    """Draw (state index, outcome index) for every shot."""
    rng = np.random.default_rng(int(cfg.seed))
    which = rng.integers(0, 2, size=cfg.shots)
    # Outcome 0 fires when u < p[i, 0]; u in [0, 1) never lands on a
    # zero-probability branch.
    u = rng.random(cfg.shots)
    outcome = (u >= probs[which, 0]).astype(np.int64)
    return which, outcome


def run(inst: Instrument, pair: StatePair, cfg: SimulationConfig) -> SimulationResult:
    """Simulate cfg.shots discrimination rounds with equal priors.

    Deterministic given cfg.seed. Success means the sampled outcome index
    matches the sampled state index; the per-shot disturbance is one minus the
    posterior fidelity for the sampled (state, outcome) cell. Returns sample
    means with standard errors (sample standard deviation / sqrt(shots)).
    """
    if inst.n_outcomes != 2:
        raise ValueError("simulation requires a two-outcome instrument")
    probs, dist = _cell_tables(inst, pair)
    which, outcome = _sample_cells(probs, cfg)
    success = (outcome == which).astype(float)
    per_shot_d = dist[which, outcome]
    ddof = 1 if cfg.shots > 1 else 0
    return SimulationResult(
        empirical_P=float(success.mean()),
        empirical_D=float(per_shot_d.mean()),
        stderr_P=float(success.std(ddof=ddof) / np.sqrt(cfg.shots)),
        stderr_D=float(per_shot_d.std(ddof=ddof) / np.sqrt(cfg.shots)),
        shots=int(cfg.shots),
        seed=int(cfg.seed),
    )


def outcome_counts(inst: Instrument, pair: StatePair, cfg: SimulationConfig) -> np.ndarray:
    """Counts over the four (state, outcome) cells, same stream as run()."""
    probs, _ = _cell_tables(inst, pair)
    which, outcome = _sample_cells(probs, cfg)
    counts = np.zeros((2, 2), dtype=np.int64)
    np.add.at(counts, (which, outcome), 1)
    return counts
