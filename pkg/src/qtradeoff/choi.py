"""Choi representation of completely positive maps on a qubit.

A map M corresponds to the 4x4 positive operator R = (M (x) I)|Om><Om| built on
the unnormalized maximally entangled vector |Om> = sum_k |k>|k>. The first
tensor factor carries the map output, the second the input; consequently the
inverse formula reads M(rho) = Tr_2[(1 (x) rho*) R] and trace preservation is
Tr_1[R] = 1. Conjugation is taken in the basis that defines |Om> and is kept
explicit throughout, so nothing relies on states having real components.
"""
from __future__ import annotations

import numpy as np

from .qubit import ID2, SIGMA_XX, StatePair, is_hermitian, projector, tensor

OMEGA = np.array([1, 0, 0, 1], dtype=complex)
OMEGA.setflags(write=False)

TRACE_PRESERVING_ATOL = 1e-8


def kraus_to_choi(kraus_ops) -> np.ndarray:
    """Choi operator sum_k (E_k (x) 1)|Om><Om|(E_k (x) 1)† of a Kraus set.

    (E (x) 1)|Om> is the row-major flattening of E, so the result is PSD by
    construction.
    """
    ops = [np.asarray(e, dtype=complex) for e in kraus_ops]
    if not ops:
        raise ValueError("Kraus set must be nonempty")
    r = np.zeros((4, 4), dtype=complex)
    for e in ops:
        if e.shape != (2, 2):
            raise ValueError(f"Kraus operators must be 2x2, got shape {e.shape}")
        v = e.reshape(-1)
        r += np.outer(v, v.conj())
    return r


def choi_apply(r: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Apply the map encoded by a Choi operator: M(rho) = Tr_2[(1 (x) rho*) R]."""
    r = np.asarray(r, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if r.shape != (4, 4) or rho.shape != (2, 2):
        raise ValueError("choi_apply expects a 4x4 Choi operator and a 2x2 matrix")
    if not is_hermitian(rho, atol=1e-10):
        raise ValueError("rho must be Hermitian")
    m = tensor(ID2, rho.conj()) @ r
    return partial_trace_second(m)


def partial_trace_first(r: np.ndarray) -> np.ndarray:
    """Trace over the first (output) factor: out[j,l] = sum_i R[2i+j, 2i+l]."""
    r = np.asarray(r, dtype=complex)
    if r.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {r.shape}")
    return np.einsum("ikil->kl", r.reshape(2, 2, 2, 2))


def partial_trace_second(r: np.ndarray) -> np.ndarray:
    """Trace over the second (input) factor: out[i,j] = sum_k R[2i+k, 2j+k]."""
    r = np.asarray(r, dtype=complex)
    if r.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {r.shape}")
    return np.einsum("ikjk->ij", r.reshape(2, 2, 2, 2))


def symmetrize(r1: np.ndarray, r2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Average each outcome with the swap-conjugated other outcome.

    R'_i = (R_i + sx(x)sx R_j sx(x)sx)/2 for i != j. The output pair achieves
    the same success probability and disturbance as the input pair and
    satisfies R'_2 = sx(x)sx R'_1 sx(x)sx.
    """
    r1 = np.asarray(r1, dtype=complex)
    r2 = np.asarray(r2, dtype=complex)
    s1 = 0.5 * (r1 + SIGMA_XX @ r2 @ SIGMA_XX)
    s2 = 0.5 * (r2 + SIGMA_XX @ r1 @ SIGMA_XX)
    return s1, s2


def choi_functionals(r1: np.ndarray, r2: np.ndarray, pair: StatePair) -> tuple[float, float]:
    """Success probability and disturbance of an instrument given as Choi operators.

    P = (1/2) sum_i Tr[(1 (x) |psi_i><psi_i|*) R_i] and
    D = 1 - (1/2) sum_i Tr[(|psi_i><psi_i| (x) |psi_i><psi_i|*) (R_1 + R_2)],
    for the equiprobable pair. Raises if R_1 + R_2 is not trace preserving
    within 1e-8.
    """
    r1 = np.asarray(r1, dtype=complex)
    r2 = np.asarray(r2, dtype=complex)
    total = r1 + r2
    if np.max(np.abs(partial_trace_first(total) - ID2)) > TRACE_PRESERVING_ATOL:
        raise ValueError("R1 + R2 is not trace preserving within tolerance")
    p = 0.0
    fid = 0.0
    for psi, r in zip((pair.psi1, pair.psi2), (r1, r2)):
        proj = projector(psi)
        p += 0.5 * float(np.real(np.trace(tensor(ID2, proj.conj()) @ r)))
        fid += 0.5 * float(np.real(np.trace(tensor(proj, proj.conj()) @ total)))
    return p, 1.0 - fid


def choi_to_kraus(r: np.ndarray, atol: float = 1e-10) -> list[np.ndarray]:
    """Kraus operators of a Choi operator via Hermitian eigendecomposition.

    Eigenvalues in [-atol, 0) are clamped to zero (numerical PSD drift); more
    negative ones raise.
    """
    r = np.asarray(r, dtype=complex)
    if r.shape != (4, 4) or not is_hermitian(r, atol=atol):
        raise ValueError("Choi operator must be a 4x4 Hermitian matrix")
    vals, vecs = np.linalg.eigh(0.5 * (r + r.conj().T))
    if vals[0] < -atol:
        raise ValueError(f"Choi operator is not PSD: min eigenvalue {vals[0]!r}")
    ops = []
    for lam, v in zip(vals, vecs.T):
        if lam <= 0.0:
            continue
        ops.append(np.sqrt(lam) * v.reshape(2, 2))
    return ops
