"""Exact 2x2 complex linear algebra and the Bloch-sphere correspondence.

Every operator in the package (states, POVM effects, Kraus operators) is a
2x2 complex numpy array.  Eigenvalue problems are solved in closed form from
the Pauli decomposition, never iteratively: a Hermitian H = c0*I + c.sigma
has eigenvalues c0 +/- |c| with eigenprojectors (I +/- c_hat.sigma)/2.
"""

from dataclasses import dataclass

import numpy as np

from .constants import TOL

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])


def is_hermitian(op: np.ndarray, atol: float = TOL.hermitian) -> bool:
    op = np.asarray(op, dtype=complex)
    return bool(np.max(np.abs(op - op.conj().T)) <= atol)


def pauli_decompose(op: np.ndarray) -> tuple[float, np.ndarray]:
    """Split a Hermitian 2x2 operator into (c0, c) with op = c0*I + c.sigma."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"expected a 2x2 operator, got shape {op.shape}")
    if not is_hermitian(op):
        raise ValueError("operator is not Hermitian within tolerance")
    c0 = float(op.trace().real) / 2.0
    c = np.array([float((op @ s).trace().real) / 2.0 for s in PAULIS])
    return c0, c


def pauli_compose(c0: float, c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    return c0 * ID2 + c[0] * SIGMA_X + c[1] * SIGMA_Y + c[2] * SIGMA_Z


def hermitian_eigenvalues(op: np.ndarray) -> tuple[float, float]:
    """Eigenvalues (low, high) of a Hermitian 2x2 operator, in closed form."""
    c0, c = pauli_decompose(op)
    r = float(np.linalg.norm(c))
    return c0 - r, c0 + r


def is_psd(op: np.ndarray, atol: float = TOL.psd) -> bool:
    low, _ = hermitian_eigenvalues(op)
    return low >= -atol


def psd_sqrt(op: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root, via the closed-form spectral decomposition.

    Rejects operators whose smallest eigenvalue is below -TOL.psd; eigenvalues
    in [-TOL.psd, 0) are clamped to 0 before taking the root.
    """
    c0, c = pauli_decompose(op)
    r = float(np.linalg.norm(c))
    low, high = c0 - r, c0 + r
    if low < -TOL.psd:
        raise ValueError(f"operator is not PSD: smallest eigenvalue {low}")
    low, high = max(low, 0.0), max(high, 0.0)
    if r <= TOL.psd:
        return np.sqrt((low + high) / 2.0) * ID2
    s_lo, s_hi = np.sqrt(low), np.sqrt(high)
    return pauli_compose((s_hi + s_lo) / 2.0, (s_hi - s_lo) / (2.0 * r) * c)


def as_bloch(v, clamp: bool = True) -> np.ndarray:
    """Validate a Bloch vector; norms in (1, 1+TOL.bloch_clamp] snap to 1."""
    v = np.asarray(v, dtype=float).reshape(3)
    norm = float(np.linalg.norm(v))
    if norm > 1.0 + TOL.bloch_clamp:
        raise ValueError(f"Bloch vector norm {norm} exceeds 1")
    if clamp and norm > 1.0:
        v = v / norm
    return v


@dataclass(frozen=True, eq=False)
class QubitState:
    """Qubit density operator (trace one, Hermitian, PSD)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 density matrix, got {m.shape}")
        if abs(m.trace().real - 1.0) > TOL.trace or abs(m.trace().imag) > TOL.trace:
            raise ValueError(f"trace {m.trace()} differs from 1")
        if not is_hermitian(m):
            raise ValueError("density matrix is not Hermitian within tolerance")
        if not is_psd(m):
            raise ValueError("density matrix is not PSD within tolerance")

    @property
    def bloch(self) -> np.ndarray:
        # rho = (I + v.sigma)/2, so the Pauli coefficients carry v/2
        _, c = pauli_decompose(self.matrix)
        return 2.0 * c

    def purity(self) -> float:
        return float((self.matrix @ self.matrix).trace().real)


def bloch_to_state(v) -> QubitState:
    """State rho = (I + v.sigma)/2 for a Bloch vector v with |v| <= 1."""
    v = as_bloch(v)
    return QubitState(pauli_compose(0.5, 0.5 * v))


def maximally_mixed() -> QubitState:
    return QubitState(0.5 * ID2)


def fidelity(a: QubitState, b: QubitState) -> float:
    """Qubit fidelity F = Tr(ab) + 2 sqrt(det a * det b), clipped to [0, 1]."""
    cross = float((a.matrix @ b.matrix).trace().real)
    det_a = max(float(np.linalg.det(a.matrix).real), 0.0)
    det_b = max(float(np.linalg.det(b.matrix).real), 0.0)
    return float(np.clip(cross + 2.0 * np.sqrt(det_a * det_b), 0.0, 1.0))


def uhlmann_fidelity(a: QubitState, b: QubitState) -> float:
    """General-form fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.

    Independent of :func:`fidelity`; kept as a cross-check oracle.
    """
    ra = psd_sqrt(a.matrix)
    inner = ra @ b.matrix @ ra
    return float(psd_sqrt(inner).trace().real) ** 2


@dataclass(frozen=True, eq=False)
class Observable:
    """Dichotomic qubit observable B = bias*I + bloch.sigma.

    The POVM effects are (I +/- B)/2, which are PSD exactly when
    |bias| <= 1 - |bloch|.  Sharpness is |bloch|.
    """

    bloch: np.ndarray
    bias: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.bloch, dtype=float).reshape(3)
        object.__setattr__(self, "bloch", v)
        object.__setattr__(self, "bias", float(self.bias))
        norm = float(np.linalg.norm(v))
        if norm > 1.0 + TOL.bloch_clamp:
            raise ValueError(f"observable Bloch norm {norm} exceeds 1")
        if abs(self.bias) > 1.0 - norm + TOL.bloch_clamp:
            raise ValueError(
                f"bias {self.bias} violates |bias| <= 1 - |bloch| = {1.0 - norm}"
            )

    @property
    def sharpness(self) -> float:
        return float(np.linalg.norm(self.bloch))

    def as_operator(self) -> np.ndarray:
        return pauli_compose(self.bias, self.bloch)

    def effect(self, outcome: int) -> np.ndarray:
        """POVM effect (I + (-1)^outcome B)/2 for outcome in {0, 1}."""
        sign = 1.0 if outcome == 0 else -1.0
        return 0.5 * (ID2 + sign * self.as_operator())
