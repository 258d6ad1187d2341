"""Dense statevector simulation of A, S_chi, S_0 and the iterate Q.

Operators act on axis 0 of the amplitude array, so a state may carry extra
trailing axes (other registers) and every column is transformed alike.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .core import AlgorithmModel, PhasePair, Unitary2
from .errors import DegenerateSubspaceError, InvalidMarkedSetError, PreconditionError

LEAKAGE_TOL = 1e-12


@dataclass(frozen=True)
class SimConfig:
    """An n-qubit register, the marked (good) basis indices and the algorithm A.

    ``algorithm_unitary=None`` selects the Walsh-Hadamard transform.
    """

    n: int
    marked: frozenset
    algorithm_unitary: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise PreconditionError(f"qubit count must be a positive integer, got {self.n}")
        marked = frozenset(int(x) for x in self.marked)
        if any(x < 0 or x >= 2**self.n for x in marked):
            raise InvalidMarkedSetError(f"marked indices must lie in [0, {2**self.n})")
        object.__setattr__(self, "marked", marked)
        if self.algorithm_unitary is not None:
            U = np.asarray(self.algorithm_unitary, dtype=complex)
            if U.shape != (self.dim, self.dim):
                raise PreconditionError(f"algorithm unitary must be {self.dim}x{self.dim}")
            if np.max(np.abs(U.conj().T @ U - np.eye(self.dim))) > 1e-10:
                raise PreconditionError("algorithm_unitary is not unitary")
            object.__setattr__(self, "algorithm_unitary", U)

    @property
    def dim(self) -> int:
        return 2**self.n

    @property
    def good_mask(self) -> np.ndarray:
        mask = np.zeros(self.dim, dtype=bool)
        mask[list(self.marked)] = True
        return mask

    def require_proper(self) -> None:
        if not self.marked or len(self.marked) == self.dim:
            raise InvalidMarkedSetError("marked set must be a nonempty proper subset")

    def success_probability(self) -> float:
        psi = apply_algorithm(basis_state(self.dim), self)
        return float(np.sum(np.abs(psi[self.good_mask]) ** 2))

    def model(self) -> AlgorithmModel:
        if self.algorithm_unitary is None:
            return AlgorithmModel.from_probability(len(self.marked) / self.dim)
        return AlgorithmModel.from_probability(min(max(self.success_probability(), 0.0), 1.0))


def basis_state(dim: int, index: int = 0) -> np.ndarray:
    state = np.zeros(dim, dtype=complex)
    state[index] = 1.0
    return state


def walsh_hadamard(state: np.ndarray) -> np.ndarray:
    """Walsh-Hadamard transform on axis 0 by n butterfly passes; returns a new array."""
    out = np.array(state, dtype=complex, copy=True)
    dim = out.shape[0]
    n = dim.bit_length() - 1
    if 1 << n != dim:
        raise PreconditionError(f"axis 0 must have power-of-two length, got {dim}")
    rest = out.shape[1:]
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for k in range(n):
        # qubit k: pair indices differing in bit (n-1-k)
        view = out.reshape((2**k, 2, 2 ** (n - k - 1)) + rest)
        lo = view[:, 0].copy()
        hi = view[:, 1]
        view[:, 0] = (lo + hi) * inv_sqrt2
        view[:, 1] = (lo - hi) * inv_sqrt2
    return out


def apply_algorithm(state: np.ndarray, config: SimConfig, inverse: bool = False) -> np.ndarray:
    if config.algorithm_unitary is None:
        return walsh_hadamard(state)
    U = config.algorithm_unitary.conj().T if inverse else config.algorithm_unitary
    return np.tensordot(U, state, axes=(1, 0))


def apply_oracle_phase(state: np.ndarray, config: SimConfig, phi_good: float) -> np.ndarray:
    """S_chi: multiply every marked amplitude by e^{i phi_good}."""
    out = np.array(state, dtype=complex, copy=True)
    out[config.good_mask] *= cmath.exp(1j * phi_good)
    return out


def apply_zero_phase(state: np.ndarray, phi_zero: float) -> np.ndarray:
    """S_0: multiply the amplitude of |0> by e^{i phi_zero}."""
    out = np.array(state, dtype=complex, copy=True)
    out[0] *= cmath.exp(1j * phi_zero)
    return out


def apply_q(state: np.ndarray, config: SimConfig, phases: PhasePair) -> np.ndarray:
    """Q = -A S_0(phi_zero) A^-1 S_chi(phi_good), applied right to left."""
    out = apply_oracle_phase(state, config, phases.phi_good)
    out = apply_algorithm(out, config, inverse=True)
    out = apply_zero_phase(out, phases.phi_zero)
    out = apply_algorithm(out, config)
    return -out


def subspace_basis(config: SimConfig) -> tuple[np.ndarray, np.ndarray]:
    """Normalized good and bad projections of A|0>."""
    config.require_proper()
    psi = apply_algorithm(basis_state(config.dim), config)
    mask = config.good_mask
    good = np.where(mask, psi, 0.0)
    bad = np.where(mask, 0.0, psi)
    ng, nb = np.linalg.norm(good), np.linalg.norm(bad)
    if ng < 1e-15 or nb < 1e-15:
        raise DegenerateSubspaceError("A|0> lies entirely in the good or the bad subspace")
    return good / ng, bad / nb


def embed(vec2, config: SimConfig) -> np.ndarray:
    """Lift a (good, bad) coefficient vector into the full register."""
    good, bad = subspace_basis(config)
    return vec2[0] * good + vec2[1] * bad


def restricted_matrix(config: SimConfig, phases: PhasePair, with_leakage: bool = False):
    """Matrix of ``apply_q`` on span{Psi_1, Psi_0} in the (good, bad) basis.

    With ``with_leakage=True`` returns ``(matrix, leakage)`` where leakage is the
    largest norm of the component of Q|basis vector> outside the subspace.
    """
    good, bad = subspace_basis(config)
    basis = np.stack([good, bad], axis=1)
    image = apply_q(basis, config, phases)
    coeffs = basis.conj().T @ image
    residual = image - basis @ coeffs
    leakage = float(np.max(np.linalg.norm(residual, axis=0)))
    M = Unitary2.from_array(coeffs)
    if with_leakage:
        return M, leakage
    return M


def good_probability(state: np.ndarray, config: SimConfig) -> float:
    return float(np.sum(np.abs(state[config.good_mask]) ** 2))


def run_iterates(config: SimConfig, phases: PhasePair, steps: int, state: np.ndarray | None = None):
    """Apply Q ``steps`` times starting from A|0>; yields (step, state) including step 0."""
    if state is None:
        state = apply_algorithm(basis_state(config.dim), config)
    yield 0, state
    for k in range(1, int(steps) + 1):
        state = apply_q(state, config, phases)
        yield k, state


def simulate_rows(config: SimConfig, phases: PhasePair, steps: int) -> list[dict]:
    """Per-step good-state probability and the good-state angle in [0, pi/2]."""
    rows = []
    mask = config.good_mask
    for k, state in run_iterates(config, phases, steps):
        p_good = float(np.sum(np.abs(state[mask]) ** 2))
        p_bad = float(np.sum(np.abs(state[~mask]) ** 2))
        angle = math.atan2(math.sqrt(p_good), math.sqrt(p_bad))
        rows.append({"step": k, "p_good": p_good, "angle_estimate": angle})
    return rows
