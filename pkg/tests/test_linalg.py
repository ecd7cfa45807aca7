import numpy as np
import pytest

from eurbounds.linalg import (
    clamped_density_eigenvalues,
    eig_hermitian,
    kron,
    partial_trace,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(d, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (g + np.conj(g).T)


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_projector_identity():
    out = kron(np.diag([1.0, 0.0]), np.eye(2))
    assert np.array_equal(out, np.diag([1.0, 1.0, 0.0, 0.0]))


def test_kron_pauli_blocks():
    # hand expansion of the 2x2 block formula for sigma_x (x) sigma_z
    expected = np.zeros((4, 4), dtype=complex)
    expected[0:2, 2:4] = SZ
    expected[2:4, 0:2] = SZ
    assert np.array_equal(kron(SX, SZ), expected)


def test_kron_associative():
    a = np.array([[1, 2], [3, 4]])
    b = np.array([[0, 1], [1, 1]])
    c = np.array([[2, 0], [0, 5]])
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_partial_trace_bell():
    psi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    rho = np.outer(psi, np.conj(psi))
    assert np.allclose(partial_trace(rho, (2, 2), "B"), np.eye(2) / 2, atol=1e-12)
    assert np.allclose(partial_trace(rho, (2, 2), "A"), np.eye(2) / 2, atol=1e-12)


def test_partial_trace_product_factorizes():
    rho = random_hermitian(2, 1)
    sigma = random_hermitian(3, 2)
    combined = kron(rho, sigma)
    assert np.allclose(
        partial_trace(combined, (2, 3), "A"), rho * np.trace(sigma), atol=1e-12
    )
    assert np.allclose(
        partial_trace(combined, (2, 3), "B"), sigma * np.trace(rho), atol=1e-12
    )


def test_partial_trace_bruteforce_oracle():
    # independent double-loop summation over the traced index
    from eurbounds.states import horodecki_state

    rho = horodecki_state(0.5).rho
    expected = np.zeros((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                expected[i, j] += rho[3 * i + k, 3 * j + k]
    assert np.allclose(partial_trace(rho, (3, 3), "A"), expected, atol=1e-14)


def test_partial_trace_preserves_trace():
    m = random_hermitian(6, 3)
    assert np.isclose(
        np.trace(partial_trace(m, (2, 3), "A")), np.trace(m), atol=1e-12
    )


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError):
        partial_trace(np.eye(5), (2, 3), "A")


def test_eig_pauli_z():
    vals, _ = eig_hermitian(SZ)
    assert np.allclose(vals, [1, -1])


def test_eig_maximally_mixed():
    vals, _ = eig_hermitian(np.eye(4) / 4)
    assert np.allclose(vals, [0.25] * 4)


def test_eig_werner_spectrum():
    from eurbounds.states import werner_state

    vals, _ = eig_hermitian(werner_state(0.8).rho)
    assert np.allclose(vals, [0.85, 0.05, 0.05, 0.05], atol=1e-12)


def test_eig_reconstruction_and_gram():
    m = random_hermitian(5, 7)
    vals, vecs = eig_hermitian(m)
    rebuilt = (vecs * vals) @ np.conj(vecs).T
    assert np.linalg.norm(rebuilt - m) < 1e-10
    assert np.max(np.abs(np.conj(vecs).T @ vecs - np.eye(5))) < 1e-10


def test_eig_unitary_invariance():
    m = random_hermitian(4, 11)
    g = np.random.default_rng(12).standard_normal((4, 4)) + 1j * \
        np.random.default_rng(13).standard_normal((4, 4))
    u, _ = np.linalg.qr(g)
    v1, _ = eig_hermitian(m)
    v2, _ = eig_hermitian(u @ m @ np.conj(u).T)
    assert np.allclose(np.sort(v1), np.sort(v2), atol=1e-9)


def test_eig_rejects_non_hermitian():
    with pytest.raises(ValueError):
        eig_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


def test_clamping_policy():
    vals = clamped_density_eigenvalues(np.diag([1.0, -1e-13]))
    assert vals[-1] == 0.0
    with pytest.raises(ValueError):
        clamped_density_eigenvalues(np.diag([1.0, -1e-6]))
