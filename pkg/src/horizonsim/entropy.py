"""Reduced density matrices and von Neumann entanglement entropy (in nats)."""

from __future__ import annotations

import logging
import math
from typing import Iterable

import numpy as np

from .errors import ConvergenceError, InvalidDensityMatrixError, InvalidGateError
from .statevec import PureState

log = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-9
TRACE_TOL = 1e-9
NEGATIVE_TOL = 1e-9
ROUNDOFF_TOL = 1e-12
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def _subset(state: PureState, keep: Iterable[int]) -> list:
    keep = sorted(set(int(q) for q in keep))
    if not keep:
        raise InvalidGateError("subset of qubits to keep is empty")
    for q in keep:
        if not 0 <= q < state.n_qubits:
            raise InvalidGateError(f"qubit index {q} out of range for {state.n_qubits} qubits")
    return keep


def reduced_density(state: PureState, keep: Iterable[int]) -> np.ndarray:
    """Partial trace of |psi><psi| over every qubit not in ``keep``.

    Kept qubits retain their relative order, so the result uses the same
    most-significant-first convention as the parent state.
    """
    keep = _subset(state, keep)
    n = state.n_qubits
    rest = [q for q in range(n) if q not in keep]
    psi = np.transpose(state.tensor(), keep + rest).reshape(1 << len(keep), -1)
    return psi @ psi.conj().T


def check_density(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidDensityMatrixError(f"density matrix must be square, got {rho.shape}")
    dev = float(np.max(np.abs(rho - rho.conj().T))) if rho.size else 0.0
    if dev > HERMITIAN_TOL:
        raise InvalidDensityMatrixError(f"matrix is not Hermitian (deviation {dev:.3g})")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidDensityMatrixError(f"trace is {tr!r}, expected 1")
    return rho


def _off_norm(a):
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _round_robin(dim):
    """Pairings covering every (p, q) once per sweep; each round's pairs are disjoint."""
    players = list(range(dim + dim % 2))
    rounds = []
    for _ in range(len(players) - 1):
        half = len(players) // 2
        pairs = [(players[i], players[-1 - i]) for i in range(half)]
        pairs = [(min(x, y), max(x, y)) for x, y in pairs if x < dim and y < dim]
        if pairs:
            rounds.append((np.array([x for x, _ in pairs]), np.array([y for _, y in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def hermitian_eigenvalues(rho, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations, ascending.

    Each rotation removes the phase of ``a[p, q]`` and then applies the real
    symmetric Jacobi rotation that zeroes it. Sweeps use a round-robin
    ordering so that the disjoint rotations of one round are applied together.
    """
    a = np.array(rho, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidDensityMatrixError(f"matrix must be square, got {a.shape}")
    dev = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if dev > HERMITIAN_TOL:
        raise InvalidDensityMatrixError(f"matrix is not Hermitian (deviation {dev:.3g})")
    a = 0.5 * (a + a.conj().T)
    rounds = _round_robin(a.shape[0])

    off = _off_norm(a)
    sweeps = 0
    while off >= tol:
        if sweeps == max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3g})",
                off,
            )
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            live = mag > 0.0
            if not live.any():
                continue
            safe = np.where(live, mag, 1.0)
            phase = np.where(live, apq / safe, 1.0)
            theta = (a[q, q].real - a[p, p].real) / (2.0 * safe)
            t = np.where(live, np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
            t = np.where(live & (theta == 0.0), 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # A <- G^H A G with G[p,p] = G[q,q] = c, G[p,q] = s*phase, G[q,p] = -s*conj(phase)
            colp, colq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = colp * c - colq * (s * phase.conj())
            a[:, q] = colp * (s * phase) + colq * c
            rowp, rowq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = rowp * c[:, None] - rowq * (s * phase)[:, None]
            a[q, :] = rowp * (s * phase.conj())[:, None] + rowq * c[:, None]
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real
        sweeps += 1
        off = _off_norm(a)
    return np.sort(np.diag(a).real)


def entropy_from_probabilities(probs) -> float:
    """-sum p ln p with 0 ln 0 = 0; the caller guarantees p >= 0."""
    p = np.asarray(probs, dtype=float)
    p = p[p > 0.0]
    return max(float(-np.sum(p * np.log(p))), 0.0)


def von_neumann_entropy(rho) -> float:
    rho = check_density(rho)
    vals = hermitian_eigenvalues(rho)
    lowest = float(vals[0])
    if lowest < -NEGATIVE_TOL:
        raise InvalidDensityMatrixError(f"eigenvalue {lowest!r} is negative; not a state")
    if lowest < -ROUNDOFF_TOL:
        log.warning("clamping eigenvalue %.3g to zero", lowest)
    return entropy_from_probabilities(np.clip(vals, 0.0, None))


def bipartite_entropy(state: PureState, subset: Iterable[int]) -> float:
    """Entanglement entropy between ``subset`` and the remaining qubits."""
    return von_neumann_entropy(reduced_density(state, subset))
