"""
传播子: e^{-iHt}
"""
from typing import Optional

import numpy as np
from scipy import linalg

from .operators import HERMITIAN_TOL, OperatorMatrix
from ..utils.exceptions import NumericalInvariantError


class EigenPropagator:
    """Caches the eigendecomposition of a hermitian H so that e^{-iHt} can be
    evaluated for many t at the cost of one matrix product each."""
    
    def __init__(self, h: OperatorMatrix):
        if h.hermiticity_error() > HERMITIAN_TOL:
            raise NumericalInvariantError(
                f"传播子要求厄米哈密顿量, max|H - H†| = {h.hermiticity_error():.3e}",
                invariant="hermitian-input",
            )
        self.n_sites = h.n_sites
        self.diagonal = h.diagonal
        if self.diagonal:
            self.eigenvalues = np.real(np.diag(h.matrix)).copy()
            self.eigenvectors: Optional[np.ndarray] = None
        else:
            self.eigenvalues, self.eigenvectors = linalg.eigh(h.matrix)
    
    def phases(self, t: float) -> np.ndarray:
        return np.exp(-1j * self.eigenvalues * t)
    
    def evolve(self, t: float) -> np.ndarray:
        phases = self.phases(t)
        if self.diagonal:
            return np.diag(phases)
        return (self.eigenvectors * phases) @ self.eigenvectors.conj().T
    
    def operator(self, t: float) -> OperatorMatrix:
        matrix = self.evolve(t)
        return OperatorMatrix(matrix, unitary=True, n_sites=self.n_sites, diagonal=self.diagonal)


def propagator(h: OperatorMatrix, t: float) -> OperatorMatrix:
    return EigenPropagator(h).operator(t)


def conjugate(u: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return u @ rho @ u.conj().T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
