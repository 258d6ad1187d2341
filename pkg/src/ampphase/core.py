"""Two-dimensional model of the amplitude amplification iterate.

All matrices and vectors use the ordered basis (good, bad): index 0 is the
normalized good projection Psi_1/sqrt(a) and index 1 the normalized bad
projection Psi_0/sqrt(1-a).

In this ordering the iterate with phases (pi, pi) is ``rotation_matrix(2*theta)``
where::

    rotation_matrix(x) = [[cos x,  sin x],
                          [-sin x, cos x]]

which moves amplitude from the bad axis onto the good axis.  Written in the
(bad, good) ordering this is the familiar ``[[cos, -sin], [sin, cos]]``; use
:meth:`Unitary2.swapped` to get that view.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSubspaceError,
    ExcludedPhaseError,
    NotEqualDiagonalError,
    PreconditionError,
    UnreachableRotationError,
)

TWO_PI = 2.0 * math.pi

# tolerances
ALGEBRA_TOL = 1e-12
PIPELINE_TOL = 1e-10
ROUNDTRIP_TOL = 1e-9
DECOMPOSE_GAP_TOL = 1e-9


def normalize_angle(x: float) -> float:
    """Map an angle to its principal value in (-pi, pi]."""
    r = math.remainder(float(x), TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r


def _is_pi(x: float, tol: float = ALGEBRA_TOL) -> bool:
    return abs(abs(normalize_angle(x)) - math.pi) < tol


@dataclass(frozen=True)
class AlgorithmModel:
    """Success probability ``a`` of ``A|0>`` and the angle ``theta`` with sin^2(theta) = a."""

    a: float
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.a <= 1.0) or math.isnan(self.a):
            raise PreconditionError(f"success probability must lie in [0, 1], got {self.a}")
        if not (0.0 <= self.theta <= math.pi / 2 + ALGEBRA_TOL):
            raise PreconditionError(f"theta must lie in [0, pi/2], got {self.theta}")
        if abs(math.sin(self.theta) ** 2 - self.a) > ALGEBRA_TOL:
            raise PreconditionError("sin^2(theta) does not match a")

    @classmethod
    def from_probability(cls, a: float) -> "AlgorithmModel":
        a = float(a)
        if not (0.0 <= a <= 1.0):
            raise PreconditionError(f"success probability must lie in [0, 1], got {a}")
        return cls(a, math.asin(math.sqrt(a)))

    @classmethod
    def from_angle(cls, theta: float) -> "AlgorithmModel":
        theta = float(theta)
        return cls(math.sin(theta) ** 2, theta)

    @property
    def b(self) -> float:
        return 1.0 - self.a

    @property
    def is_degenerate(self) -> bool:
        return self.a <= 0.0 or self.a >= 1.0

    def require_nondegenerate(self) -> None:
        if self.is_degenerate:
            raise DegenerateSubspaceError(
                f"a={self.a}: the good/bad subspace is one-dimensional"
            )

    def initial_state(self) -> np.ndarray:
        """``A|0>`` expressed in the (good, bad) basis."""
        return np.array([math.sin(self.theta), math.cos(self.theta)], dtype=complex)


@dataclass(frozen=True)
class PhasePair:
    """Phases of the iterate: ``phi_zero`` for S_0 and ``phi_good`` for S_chi.

    Both are stored as principal values in (-pi, pi].
    """

    phi_zero: float
    phi_good: float

    def __post_init__(self):
        object.__setattr__(self, "phi_zero", normalize_angle(self.phi_zero))
        object.__setattr__(self, "phi_good", normalize_angle(self.phi_good))

    @classmethod
    def grover(cls) -> "PhasePair":
        return cls(math.pi, math.pi)


@dataclass(frozen=True)
class Unitary2:
    """Complex 2x2 matrix, row-major, row/column 0 = good component."""

    m00: complex
    m01: complex
    m10: complex
    m11: complex

    @classmethod
    def from_array(cls, arr) -> "Unitary2":
        arr = np.asarray(arr, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError(f"expected a 2x2 array, got shape {arr.shape}")
        return cls(complex(arr[0, 0]), complex(arr[0, 1]), complex(arr[1, 0]), complex(arr[1, 1]))

    def to_array(self) -> np.ndarray:
        return np.array([[self.m00, self.m01], [self.m10, self.m11]], dtype=complex)

    def __array__(self, dtype=None, copy=None):
        arr = self.to_array()
        return arr if dtype is None else arr.astype(dtype)

    def __matmul__(self, other):
        if isinstance(other, Unitary2):
            return Unitary2.from_array(self.to_array() @ other.to_array())
        return self.to_array() @ np.asarray(other)

    def power(self, m: int) -> "Unitary2":
        return Unitary2.from_array(np.linalg.matrix_power(self.to_array(), int(m)))

    def swapped(self) -> "Unitary2":
        """The same operator written in the (bad, good) ordering."""
        return Unitary2(self.m11, self.m10, self.m01, self.m00)

    def unitarity_error(self) -> float:
        """max |(M^dagger M - I)_ij|."""
        arr = self.to_array()
        return float(np.max(np.abs(arr.conj().T @ arr - np.eye(2))))

    def is_unitary(self, tol: float = ALGEBRA_TOL) -> bool:
        return self.unitarity_error() < tol


@dataclass(frozen=True)
class HDecomposition:
    """``e^{iv} diag(1, e^{iu}) rotation_matrix(vartheta) diag(1, e^{-iu})``."""

    vartheta: float
    u: float
    v: float

    def recompose(self) -> Unitary2:
        return Unitary2.from_array(h_matrix(self.vartheta, self.u, self.v))


def rotation_matrix(x: float) -> np.ndarray:
    c, s = math.cos(x), math.sin(x)
    return np.array([[c, s], [-s, c]], dtype=complex)


def phase_bad(u: float) -> np.ndarray:
    """Conditional phase e^{iu} on the bad component."""
    return np.diag([1.0, cmath.exp(1j * u)])


def h_matrix(vartheta: float, u: float, v: float) -> np.ndarray:
    return cmath.exp(1j * v) * (phase_bad(u) @ rotation_matrix(vartheta) @ phase_bad(-u))


def build_q_matrix(model: AlgorithmModel, phases: PhasePair) -> Unitary2:
    """Matrix of Q(A, chi, phi_zero, phi_good) on span{Psi_1, Psi_0}."""
    model.require_nondegenerate()
    a = model.a
    e0 = cmath.exp(1j * phases.phi_zero)
    eg = cmath.exp(1j * phases.phi_good)
    one_minus = 1.0 - e0
    off = one_minus * math.sqrt(a) * math.sqrt(1.0 - a)
    return Unitary2(
        m00=(one_minus * a - 1.0) * eg,
        m01=off,
        m10=off * eg,
        m11=-(one_minus * a + e0),
    )


def diagonal_gap(M: Unitary2) -> float:
    return abs(M.m00 - M.m11)


def is_matched(phases: PhasePair, model: AlgorithmModel, tol: float = PIPELINE_TOL) -> bool:
    """True when the iterate for ``phases`` has equal diagonal entries.

    Accepts the Grover pair (pi, pi) even though the tangent condition is
    undefined there.
    """
    if _is_pi(phases.phi_zero):
        return _is_pi(phases.phi_good) or model.is_degenerate
    return diagonal_gap(build_q_matrix(model, phases)) < tol


def solve_phi_good(phi_zero: float, model: AlgorithmModel) -> float:
    """Oracle phase making the diagonal entries equal for the given ``phi_zero``."""
    phi = normalize_angle(phi_zero)
    if _is_pi(phi):
        raise ExcludedPhaseError(
            "phi_zero = pi has no tangent solution; use PhasePair.grover() for (pi, pi)"
        )
    return 2.0 * math.atan(math.tan(phi / 2.0) * (1.0 - 2.0 * model.a))


def solve_success_prob(phases: PhasePair) -> float:
    """Success probability for which ``phases`` are matched."""
    phi, varphi = phases.phi_zero, phases.phi_good
    if _is_pi(phi) or abs(phi) < ALGEBRA_TOL:
        raise ExcludedPhaseError(f"phi_zero must avoid 0 and pi, got {phi}")
    return 0.5 * (1.0 - math.tan(varphi / 2.0) / math.tan(phi / 2.0))


def rotation_angle_from_phase(phi_zero: float, model: AlgorithmModel) -> float:
    """Angle in [0, pi/2] rotated per matched iterate: sin = |sin(phi/2) sin(2 theta)|."""
    model.require_nondegenerate()
    s = abs(math.sin(phi_zero / 2.0) * math.sin(2.0 * model.theta))
    return math.asin(min(s, 1.0))


def phase_from_rotation_angle(vartheta: float, model: AlgorithmModel) -> float:
    """Phase in [0, pi] whose matched iterate rotates by ``vartheta``."""
    model.require_nondegenerate()
    s2 = math.sin(2.0 * model.theta)
    s = abs(math.sin(vartheta))
    if s > s2 * (1.0 + ALGEBRA_TOL) + ALGEBRA_TOL:
        raise UnreachableRotationError(
            f"|sin(vartheta)|={s:.6g} exceeds sin(2 theta)={s2:.6g}"
        )
    return 2.0 * math.asin(min(s / s2, 1.0))


def decompose_equal_diagonal(M: Unitary2) -> HDecomposition:
    """Write an equal-diagonal unitary as e^{iv} D(u) R(vartheta) D(-u)."""
    gap = diagonal_gap(M)
    if gap >= DECOMPOSE_GAP_TOL:
        raise NotEqualDiagonalError(f"diagonal gap {gap:.3g} is not below {DECOMPOSE_GAP_TOL}")
    diag = 0.5 * (M.m00 + M.m11)
    c, s = abs(diag), abs(M.m10)
    vartheta = math.atan2(s, c)
    # det(M) = e^{2iv}; pick the square root that makes the diagonal factor non-negative
    det = M.m00 * M.m11 - M.m01 * M.m10
    v = 0.5 * cmath.phase(det)
    if (diag * cmath.exp(-1j * v)).real < 0.0:
        v += math.pi
    if s < ALGEBRA_TOL:
        u = 0.0
    else:
        u = cmath.phase(-M.m10) - v
    return HDecomposition(vartheta, normalize_angle(u), normalize_angle(v))
