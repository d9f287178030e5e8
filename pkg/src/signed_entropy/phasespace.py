"""Discrete Wigner functions for odd-prime dimension and Moyal-bracket evolution.

Phase-point operators follow the displaced-parity form of the Wootters
construction: ``A_(q,p) = D_(q,p) Pi D_(q,p)^dagger`` with ``D = X^q Z^p``
and ``Pi |x> = |-x mod d>``. The Wigner function is ``W = Tr[A rho] / d``,
which sums to one and feeds straight into the entropy functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._integrate import rk4_linear
from .errors import (
    DimensionMismatchError,
    DomainError,
    InputError,
    NotHermitianError,
    UnsupportedDimensionError,
)

HERMITIAN_TOL = 1e-12
IMAG_TOL = 1e-10


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, int(n ** 0.5) + 1))


def _real(x: np.ndarray, what: str) -> np.ndarray:
    resid = float(np.max(np.abs(np.imag(x)))) if np.size(x) else 0.0
    if resid > IMAG_TOL:
        raise DomainError(f"{what} has imaginary residue {resid:.3g}")
    return np.real(x).astype(float)


class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite ``d x d`` matrix."""

    def __init__(self, entries):
        rho = np.array(entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise InputError(f"density matrix must be square, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
            raise NotHermitianError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > HERMITIAN_TOL:
            raise InputError(f"density matrix trace is {np.trace(rho).real:.12g}, expected 1")
        if np.min(np.linalg.eigvalsh(rho)) < -1e-10:
            raise InputError("density matrix has a negative eigenvalue")
        rho.setflags(write=False)
        self.entries = rho

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def pure(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(np.eye(d) / d)

    @classmethod
    def basis(cls, d: int, k: int = 0) -> "DensityMatrix":
        e = np.zeros(d)
        e[k] = 1.0
        return cls.pure(e)

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


@dataclass(frozen=True)
class PhasePointBasis:
    """The ``d**2`` phase-point operators, indexed row-major by ``(q, p)``."""

    dim: int
    operators: np.ndarray  # shape (d*d, d, d), complex

    def index(self, q: int, p: int) -> int:
        return (q % self.dim) * self.dim + (p % self.dim)

    def points(self) -> list[tuple[int, int]]:
        return [(q, p) for q in range(self.dim) for p in range(self.dim)]


def shift_clock(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Generalized Pauli shift ``X|x> = |x+1>`` and clock ``Z|x> = w^x |x>``."""
    x = np.roll(np.eye(d), 1, axis=0).astype(complex)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return x, z


@lru_cache(maxsize=None)
def build_phase_point_basis(d: int) -> PhasePointBasis:
    """Phase-point operators for odd prime ``d``.

    Raises
    ------
    UnsupportedDimensionError
        ``d`` is even or not prime.
    """
    d = int(d)
    if d == 2 or not _is_prime(d):
        raise UnsupportedDimensionError(f"dimension must be an odd prime, got {d}")
    x, z = shift_clock(d)
    parity = np.zeros((d, d), dtype=complex)
    parity[(-np.arange(d)) % d, np.arange(d)] = 1.0
    ops = np.empty((d * d, d, d), dtype=complex)
    for q in range(d):
        xq = np.linalg.matrix_power(x, q)
        for p in range(d):
            disp = xq @ np.linalg.matrix_power(z, p)
            ops[q * d + p] = disp @ parity @ disp.conj().T
    ops.setflags(write=False)
    return PhasePointBasis(d, ops)


def basis_residuals(basis: PhasePointBasis) -> dict:
    """Max deviations from Hermiticity, unit trace, orthogonality and resolution of ``d I``."""
    a, d = basis.operators, basis.dim
    herm = np.max(np.abs(a - np.conj(np.transpose(a, (0, 2, 1)))))
    trace = np.max(np.abs(np.trace(a, axis1=1, axis2=2) - 1.0))
    gram = np.einsum("aij,bji->ab", a, a)
    ortho = np.max(np.abs(gram - d * np.eye(d * d)))
    resolution = np.max(np.abs(a.sum(axis=0) - d * np.eye(d)))
    return {
        "hermitian": float(herm),
        "trace": float(trace),
        "orthogonality": float(ortho),
        "resolution": float(resolution),
    }


class WignerFunction:
    """Real quasi-distribution over the ``d**2`` phase points."""

    def __init__(self, values, dim: int | None = None):
        v = np.asarray(values)
        if np.iscomplexobj(v):
            resid = float(np.max(np.abs(v.imag)))
            if resid > 1e-12:
                raise DomainError(f"Wigner values have imaginary residue {resid:.3g}")
            v = v.real
        v = np.array(v, dtype=float).ravel()
        d = int(round(np.sqrt(v.size))) if dim is None else dim
        if d * d != v.size:
            raise DimensionMismatchError(f"{v.size} values do not form a d x d phase space")
        v.setflags(write=False)
        self.values = v
        self.dim = d

    def __len__(self) -> int:
        return self.values.size

    def total(self) -> float:
        return float(np.sum(self.values))

    def grid(self) -> np.ndarray:
        """Values as a ``(d, d)`` array indexed by ``[q, p]``."""
        return self.values.reshape(self.dim, self.dim)


def _check_dim(basis: PhasePointBasis, d: int) -> None:
    if basis.dim != d:
        raise DimensionMismatchError(f"basis dimension {basis.dim} vs object dimension {d}")


def wigner_from_density(rho, basis: PhasePointBasis) -> WignerFunction:
    """``W_xi = Tr[A_xi rho] / d``."""
    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    _check_dim(basis, rho.dim)
    w = np.einsum("aij,ji->a", basis.operators, rho.entries) / basis.dim
    return WignerFunction(w, basis.dim)


def density_from_wigner(w: WignerFunction, basis: PhasePointBasis) -> np.ndarray:
    """``rho = sum_xi W_xi A_xi``.

    Returned as a plain complex array: an arbitrary real ``W`` (e.g. one-hot)
    maps to a Hermitian unit-trace matrix that need not be positive.
    """
    _check_dim(basis, w.dim)
    return np.einsum("a,aij->ij", w.values, basis.operators)


@dataclass(frozen=True)
class Liouvillian:
    matrix: np.ndarray  # shape (d*d, d*d), real

    def skew_residual(self) -> float:
        return float(np.max(np.abs(self.matrix + self.matrix.T)))


def build_liouvillian(hamiltonian, basis: PhasePointBasis) -> Liouvillian:
    """Real skew-symmetric generator of ``dW/dt`` under ``d rho/dt = -i[H, rho]``.

    Entry ``(xi, eta)`` is ``Tr[A_xi (-i)[H, A_eta]] / d``; the imaginary
    residue and skew-symmetry are both verified before returning.
    """
    h = np.asarray(hamiltonian, dtype=complex)
    d = basis.dim
    if h.shape != (d, d):
        raise DimensionMismatchError(f"Hamiltonian shape {h.shape} vs dimension {d}")
    if np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL:
        raise NotHermitianError("Hamiltonian is not Hermitian")
    a = basis.operators
    comm = -1j * (np.einsum("ij,bjk->bik", h, a) - np.einsum("bij,jk->bik", a, h))
    lmat = _real(np.einsum("aij,bji->ab", a, comm) / d, "Liouvillian")
    liou = Liouvillian(lmat)
    if liou.skew_residual() > 1e-10:
        raise DomainError(f"Liouvillian skew residual {liou.skew_residual():.3g} exceeds 1e-10")
    return liou


def evolve_wigner(w0: WignerFunction, liou: Liouvillian, t_end: float, dt: float = 1e-3):
    """RK4 integration of ``dW/dt = L W``; returns a list of ``(time, WignerFunction)``."""
    if liou.matrix.shape != (len(w0), len(w0)):
        raise DimensionMismatchError(f"Liouvillian {liou.matrix.shape} vs {len(w0)} phase points")
    times, states, _ = rk4_linear(liou.matrix, w0.values, t_end, dt)
    return [(float(t), WignerFunction(s, w0.dim)) for t, s in zip(times, states)]


def quadratic_moment(w: WignerFunction) -> float:
    """``sum W_xi**2``; equals purity / d for a Wigner function of a state."""
    return float(np.dot(w.values, w.values))


def unitary_state(rho, hamiltonian, t: float) -> np.ndarray:
    """``exp(-iHt) rho exp(iHt)`` from the spectral decomposition of ``H``."""
    rho = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    e, v = np.linalg.eigh(np.asarray(hamiltonian, dtype=complex))
    u = v @ np.diag(np.exp(-1j * e * t)) @ v.conj().T
    return u @ rho @ u.conj().T


def random_hermitian(d: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * 0.5 * (g + g.conj().T)


def random_pure_state(d: int, rng: np.random.Generator) -> DensityMatrix:
    return DensityMatrix.pure(rng.normal(size=d) + 1j * rng.normal(size=d))
