"""Dense complex linear algebra helpers for small bipartite operators.

Everything here works on plain numpy arrays; dimensions in this package
are at most 9x9 (two qutrits), so dense storage is used throughout.
"""

import numpy as np

HERMITIAN_TOL = 1e-10
EIG_CLAMP_TOL = 1e-12


def kron(a, b):
    """Kronecker product with block structure a_ij * b."""
    return np.kron(np.asarray(a), np.asarray(b))


def dagger(m):
    return np.conj(np.asarray(m)).T


def symmetrize(m):
    """Hermitian part (M + M†)/2, applied before every eigendecomposition."""
    m = np.asarray(m)
    return 0.5 * (m + dagger(m))


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and np.max(np.abs(m - dagger(m))) <= tol


def partial_trace(m, dims, keep):
    """Trace out one subsystem of a (d_A*d_B)-dimensional operator.

    keep is "A" or "B". Raises ValueError on dimension mismatch.
    """
    d_a, d_b = dims
    m = np.asarray(m)
    if m.shape != (d_a * d_b, d_a * d_b):
        raise ValueError(
            f"operator shape {m.shape} does not match dims ({d_a}, {d_b})"
        )
    t = m.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.trace(t, axis1=1, axis2=3)
    if keep == "B":
        return np.trace(t, axis1=0, axis2=2)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def eig_hermitian(m, tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues descending and
    eigenvectors as matching columns. The input is symmetrized first;
    inputs that are not Hermitian within tol are rejected.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - dagger(m))) > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    vals, vecs = np.linalg.eigh(symmetrize(m))
    order = np.argsort(vals)[::-1]
    return vals[order], vecs[:, order]


def clamped_density_eigenvalues(rho, tol=EIG_CLAMP_TOL):
    """Eigenvalues of a density matrix with tiny negatives clamped to zero.

    Eigenvalues below -tol mean the input is not a valid (sub)normalized
    density matrix and raise ValueError.
    """
    vals, _ = eig_hermitian(rho)
    if vals[-1] < -tol:
        raise ValueError(
            f"matrix has negative eigenvalue {vals[-1]:.3e}, not a density matrix"
        )
    return np.clip(vals, 0.0, None)
