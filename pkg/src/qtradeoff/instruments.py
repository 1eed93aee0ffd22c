"""Two-outcome quantum instruments: Kraus maps, POVM extraction, information and disturbance.

An instrument is an ordered collection of completely positive maps, one per
outcome, each given by a list of 2x2 Kraus operators. The outcome maps must sum
to a trace-preserving channel.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qubit import ID2, StatePair, is_hermitian, projector, validate_state

COMPLETENESS_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class Instrument:
    """Ordered outcomes, each a tuple of 2x2 Kraus operators.

    Completeness sum_i sum_k E_k^(i)† E_k^(i) = 1 is enforced on construction
    (entrywise, within 1e-10).
    """

    outcomes: tuple[tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        clean = []
        for kraus_set in self.outcomes:
            ops = tuple(np.asarray(e, dtype=complex) for e in kraus_set)
            if not ops:
                raise ValueError("every outcome needs at least one Kraus operator")
            for e in ops:
                if e.shape != (2, 2):
                    raise ValueError(f"Kraus operators must be 2x2, got shape {e.shape}")
                e.setflags(write=False)
            clean.append(ops)
        object.__setattr__(self, "outcomes", tuple(clean))
        total = sum(e.conj().T @ e for ops in self.outcomes for e in ops)
        if np.max(np.abs(total - ID2)) > COMPLETENESS_ATOL:
            raise ValueError("Kraus operators do not satisfy the completeness relation")

    @property
    def n_outcomes(self) -> int:
        return len(self.outcomes)

    @property
    def is_pure(self) -> bool:
        """True iff every outcome has exactly one Kraus operator."""
        return all(len(ops) == 1 for ops in self.outcomes)


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Pure states with prior probabilities summing to one."""

    priors: tuple[float, ...]
    states: tuple[np.ndarray, ...]

    def __post_init__(self):
        priors = tuple(float(p) for p in self.priors)
        states = tuple(np.asarray(s, dtype=complex) for s in self.states)
        if len(priors) != len(states):
            raise ValueError("priors and states must have matching lengths")
        if any(p < 0 for p in priors):
            raise ValueError("priors must be nonnegative")
        if abs(sum(priors) - 1.0) > 1e-12:
            raise ValueError(f"priors must sum to 1, got {sum(priors)!r}")
        for s in states:
            validate_state(s)
            s.setflags(write=False)
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "states", states)

    @classmethod
    def equal_pair(cls, pair: StatePair) -> "Ensemble":
        """Equiprobable ensemble {1/2, psi1; 1/2, psi2}."""
        return cls(priors=(0.5, 0.5), states=(pair.psi1.copy(), pair.psi2.copy()))


def apply_outcome(inst: Instrument, i: int, rho: np.ndarray) -> tuple[np.ndarray, float]:
    """Apply outcome map i to a density matrix.

    Returns the unnormalized output sum_k E_k rho E_k† together with its trace
    (the outcome probability). The normalized posterior is output/probability
    when the probability is nonzero; a zero-probability outcome returns the
    zero matrix and probability 0, and normalization is the caller's problem.
    """
    if not 0 <= i < inst.n_outcomes:
        raise IndexError(f"outcome index {i} out of range for {inst.n_outcomes} outcomes")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2) or not is_hermitian(rho, atol=1e-10):
        raise ValueError("rho must be a 2x2 Hermitian matrix")
    if abs(np.trace(rho).real - 1.0) > 1e-10:
        raise ValueError("rho must have unit trace")
    out = np.zeros((2, 2), dtype=complex)
    for e in inst.outcomes[i]:
        out += e @ rho @ e.conj().T
    return out, float(np.trace(out).real)


def povm(inst: Instrument) -> list[np.ndarray]:
    """POVM elements Pi_i = sum_k E_k^(i)† E_k^(i); positive and summing to 1."""
    return [sum(e.conj().T @ e for e in ops) for ops in inst.outcomes]


def success_probability(inst: Instrument, ens: Ensemble) -> float:
    """Average success probability sum_i p_i <psi_i| Pi_i |psi_i>.

    Depends only on the POVM, not on the Kraus decomposition.
    """
    if inst.n_outcomes != len(ens.states):
        raise ValueError("outcome count must match ensemble size")
    elements = povm(inst)
    p = 0.0
    for prior, psi, pi in zip(ens.priors, ens.states, elements):
        p += prior * float(np.real(psi.conj() @ pi @ psi))
    return p


def disturbance(inst: Instrument, ens: Ensemble) -> float:
    """One minus the input-averaged fidelity through the outcome-averaged channel.

    D = 1 - sum_i p_i <psi_i| E(|psi_i><psi_i|) |psi_i> with E the sum of all
    outcome maps (the measurement outcome is ignored).
    """
    if inst.n_outcomes != len(ens.states):
        raise ValueError("outcome count must match ensemble size")
    fid = 0.0
    for prior, psi in zip(ens.priors, ens.states):
        rho = projector(psi)
        for ops in inst.outcomes:
            for e in ops:
                fid += prior * float(np.real(psi.conj() @ (e @ rho @ e.conj().T) @ psi))
    return 1.0 - fid
