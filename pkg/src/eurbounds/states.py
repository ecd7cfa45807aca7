"""Bipartite states, projective measurements and entropic functionals.

All entropies are in bits (log base 2). States are plain density matrices
wrapped with their local dimensions; measurements are orthonormal bases of
the measured (A) subsystem.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    EIG_CLAMP_TOL,
    clamped_density_eigenvalues,
    dagger,
    eig_hermitian,
    kron,
    partial_trace,
    symmetrize,
)

STATE_TOL = 1e-10
SUPPORT_TOL = 1e-10


@dataclass(frozen=True)
class BipartiteState:
    """Density operator on a d_A x d_B system."""

    rho: np.ndarray
    dim_a: int
    dim_b: int

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        d = self.dim_a * self.dim_b
        if rho.shape != (d, d):
            raise ValueError(f"rho shape {rho.shape} != ({d}, {d})")
        if np.max(np.abs(rho - dagger(rho))) > STATE_TOL:
            raise ValueError("rho is not Hermitian within tolerance")
        if abs(np.trace(rho).real - 1.0) > STATE_TOL:
            raise ValueError(f"rho has trace {np.trace(rho).real}, expected 1")
        clamped_density_eigenvalues(rho)  # raises on negative spectrum
        object.__setattr__(self, "rho", rho)

    @property
    def rho_a(self):
        return partial_trace(self.rho, (self.dim_a, self.dim_b), "A")

    @property
    def rho_b(self):
        return partial_trace(self.rho, (self.dim_a, self.dim_b), "B")


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """Orthonormal basis of the A subsystem; vectors are rows of `vectors`.

    gram_defect records how far the raw input was from orthonormal before
    any re-orthonormalization (0 for exactly constructed bases).
    """

    label: str
    vectors: np.ndarray
    gram_defect: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError(f"expected d x d vector array, got shape {v.shape}")
        gram = v @ dagger(v)
        if np.max(np.abs(gram - np.eye(v.shape[0]))) > STATE_TOL:
            raise ValueError(f"basis {self.label!r} is not orthonormal")
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self):
        return self.vectors.shape[0]

    def projector(self, alpha):
        v = self.vectors[alpha]
        return np.outer(v, np.conj(v))


@dataclass(frozen=True)
class MeasurementSet:
    """An ordered list of N >= 2 equal-dimension projective measurements."""

    measurements: tuple

    def __post_init__(self):
        ms = tuple(self.measurements)
        if len(ms) < 2:
            raise ValueError("need at least 2 measurements")
        d = ms[0].dim
        if any(m.dim != d for m in ms):
            raise ValueError("all measurements must share one dimension")
        object.__setattr__(self, "measurements", ms)

    @property
    def n(self):
        return len(self.measurements)

    @property
    def dim(self):
        return self.measurements[0].dim

    def __iter__(self):
        return iter(self.measurements)

    def __getitem__(self, i):
        return self.measurements[i]


# ---------------------------------------------------------------------------
# entropic functionals


def von_neumann_entropy(rho):
    """S(rho) = -sum lam log2 lam over the clamped spectrum, in bits."""
    vals = clamped_density_eigenvalues(rho)
    nz = vals[vals > 0]
    return float(-np.sum(nz * np.log2(nz)))


def shannon_entropy(p):
    """H(p) in bits with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    if np.any(p < -STATE_TOL) or abs(p.sum() - 1.0) > STATE_TOL:
        raise ValueError("not a probability distribution")
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz)))


def conditional_entropy(state):
    """H(A|B) = S(rho_AB) - S(rho_B); negative values witness entanglement."""
    return von_neumann_entropy(state.rho) - von_neumann_entropy(state.rho_b)


def relative_entropy(rho, sigma, allow_subnormalized=False):
    """S(rho || sigma) = Tr rho (log2 rho - log2 sigma), in bits.

    Returns +inf when the support of rho is not contained in the support of
    sigma. With allow_subnormalized, sigma may have trace <= 1; the same
    formula applies.
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise ValueError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    rvals = clamped_density_eigenvalues(rho)
    svals, svecs = eig_hermitian(symmetrize(sigma))
    svals = np.clip(svals, 0.0, None)
    if not allow_subnormalized and abs(svals.sum() - 1.0) > 1e-8:
        raise ValueError("sigma is not normalized (pass allow_subnormalized)")

    # support check: weight of rho outside the support of sigma
    kernel = svecs[:, svals < SUPPORT_TOL]
    if kernel.shape[1] > 0:
        leak = np.trace(dagger(kernel) @ rho @ kernel).real
        if leak > SUPPORT_TOL:
            return float("inf")

    rnz = rvals[rvals > 0]
    tr_rho_log_rho = float(np.sum(rnz * np.log2(rnz)))

    support = svals >= SUPPORT_TOL
    log_sigma = (svecs[:, support] * np.log2(svals[support])) @ dagger(
        svecs[:, support]
    )
    tr_rho_log_sigma = np.trace(rho @ log_sigma).real
    return tr_rho_log_rho - tr_rho_log_sigma


# ---------------------------------------------------------------------------
# measurements acting on states


def _check_dims(state, m):
    if m.dim != state.dim_a:
        raise ValueError(
            f"measurement dimension {m.dim} != state A dimension {state.dim_a}"
        )


def measure_channel(state, m):
    """Pinching of subsystem A: sum_a (P_a x I) rho (P_a x I)."""
    _check_dims(state, m)
    eye_b = np.eye(state.dim_b)
    out = np.zeros_like(state.rho)
    for alpha in range(m.dim):
        p = kron(m.projector(alpha), eye_b)
        out += p @ state.rho @ p
    return BipartiteState(out, state.dim_a, state.dim_b)


def conditional_b_state(state, v):
    """Unnormalized B-side operator <v|_A rho_AB |v>_A.

    Its trace is the Born probability of outcome v.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (state.dim_a,):
        raise ValueError(f"vector shape {v.shape} != ({state.dim_a},)")
    t = state.rho.reshape(state.dim_a, state.dim_b, state.dim_a, state.dim_b)
    return np.einsum("i,ijkl,k->jl", np.conj(v), t, v)


def outcome_distribution(state, m):
    """Born probabilities p_a = Tr[(|a><a| x I) rho_AB]."""
    _check_dims(state, m)
    p = np.array(
        [np.trace(conditional_b_state(state, m.vectors[a])).real for a in range(m.dim)]
    )
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def measurement_conditional_entropy(state, m):
    """H(Pi|B) = S(rho_PiB) - S(rho_B), always >= 0 for a pinching of A."""
    return von_neumann_entropy(measure_channel(state, m).rho) - von_neumann_entropy(
        state.rho_b
    )


def mutual_information(state, m):
    """I(Pi:B) = H(Pi) - H(Pi|B)."""
    return shannon_entropy(outcome_distribution(state, m)) - \
        measurement_conditional_entropy(state, m)


# ---------------------------------------------------------------------------
# named states


def werner_state(eta):
    """eta-weighted mixture of the Bell state (|00>+|11>)/sqrt(2) and white noise."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must be in [0, 1], got {eta}")
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1.0 / np.sqrt(2.0)
    rho = eta * np.outer(psi, np.conj(psi)) + (1.0 - eta) * np.eye(4) / 4.0
    return BipartiteState(rho, 2, 2)


def horodecki_state(alpha):
    """The 3x3 bound entangled family, normalized by 1/(8 alpha + 1)."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    a = alpha
    b = (1.0 + alpha) / 2.0
    g = np.sqrt(1.0 - alpha**2) / 2.0
    rho = np.zeros((9, 9), dtype=complex)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            rho[i, j] = a
    for i in (1, 2, 3, 5, 7):
        rho[i, i] = a
    rho[6, 6] = rho[8, 8] = b
    rho[6, 8] = rho[8, 6] = g
    rho /= 8.0 * alpha + 1.0
    return BipartiteState(rho, 3, 3)


def product_state(rho_a, rho_b):
    rho_a = np.asarray(rho_a)
    rho_b = np.asarray(rho_b)
    return BipartiteState(kron(rho_a, rho_b), rho_a.shape[0], rho_b.shape[0])


# ---------------------------------------------------------------------------
# named measurement bases


def qubit_basis(theta, phi, label=None):
    """Qubit observable with Bloch angles (theta, phi)."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    vectors = np.array(
        [
            [c, -np.exp(1j * phi) * s],
            [np.exp(-1j * phi) * s, c],
        ]
    )
    return ProjectiveMeasurement(label or f"qubit({theta:.4g},{phi:.4g})", vectors)


def qubit_y_basis():
    """The fixed qubit basis {(1/2, sqrt3/2), (sqrt3/2, -1/2)}."""
    r3 = np.sqrt(3.0) / 2.0
    return ProjectiveMeasurement("Y2", np.array([[0.5, r3], [r3, -0.5]], dtype=complex))


def qubit_z_basis():
    return ProjectiveMeasurement("Z2", np.eye(2, dtype=complex))


def qutrit_x_basis(theta, phi, label=None):
    """Qutrit basis rotating the first two levels, third vector (0, 0, 1)."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    vectors = np.array(
        [
            [c, -np.exp(1j * phi) * s, 0.0],
            [np.exp(-1j * phi) * s, c, 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    return ProjectiveMeasurement(label or f"qutritX({theta:.4g},{phi:.4g})", vectors)


# Three fixed qutrit (Y, Z) basis pairs, printed to 4 decimals in the source
# data and therefore only approximately orthonormal; see qutrit_group.
_QUTRIT_GROUPS = (
    (
        (
            (0.3282, -0.9425, 0.0633),
            (0.6684, 0.1843, -0.7206),
            (0.6675, 0.2788, 0.6904),
        ),
        (
            (-0.1355, 0.4003, -0.9063),
            (0.6065, -0.6898, -0.3953),
            (0.7835, 0.6032, 0.1493),
        ),
    ),
    (
        (
            (-0.1429, -0.4205, 0.8960),
            (-0.7427, 0.6439, 0.1837),
            (-0.6542, -0.6392, -0.4043),
        ),
        (
            (0.8783, -0.0955, -0.4685),
            (0.1058, -0.9168, 0.3852),
            (0.4663, 0.3879, 0.7951),
        ),
    ),
    (
        (
            (0.4514, 0.6672, -0.5925),
            (0.6676, -0.6931, -0.2719),
            (0.5920, 0.2728, 0.7583),
        ),
        (
            (-0.8182, 0.3974, 0.4155),
            (-0.2143, -0.8814, 0.4210),
            (0.5335, 0.2554, 0.8063),
        ),
    ),
)


def _gram_schmidt(rows):
    rows = np.asarray(rows, dtype=complex)
    out = np.zeros_like(rows)
    for i, v in enumerate(rows):
        for j in range(i):
            v = v - np.vdot(out[j], v) * out[j]
        out[i] = v / np.linalg.norm(v)
    return out


def qutrit_group(group, which):
    """Fixed qutrit basis: group in {1, 2, 3}, which in {"y", "z"}.

    The printed 4-decimal vectors are re-orthonormalized (Gram-Schmidt in
    listed order); the pre-correction Gram defect is kept on the result.
    """
    if group not in (1, 2, 3):
        raise ValueError(f"group must be 1, 2 or 3, got {group}")
    which = which.lower()
    if which not in ("y", "z"):
        raise ValueError(f"which must be 'y' or 'z', got {which!r}")
    raw = np.asarray(_QUTRIT_GROUPS[group - 1][0 if which == "y" else 1], dtype=complex)
    defect = float(np.max(np.abs(raw @ dagger(raw) - np.eye(3))))
    vectors = _gram_schmidt(raw)
    return ProjectiveMeasurement(f"group{group}.{which}", vectors, gram_defect=defect)


# ---------------------------------------------------------------------------
# seeded random generators


def random_state(d_a, d_b, seed):
    """Hilbert-Schmidt random density matrix G G† / Tr(G G†), seeded."""
    if d_a < 2 or d_b < 2:
        raise ValueError("dimensions must be >= 2")
    rng = np.random.default_rng(seed)
    d = d_a * d_b
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ dagger(g)
    rho /= np.trace(rho).real
    return BipartiteState(rho, d_a, d_b)


def random_basis(d, seed, label=None):
    """Haar-like basis: QR orthonormalization of a seeded Gaussian matrix."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    # fix the phase ambiguity of QR so the basis is a pure function of the seed
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return ProjectiveMeasurement(label or f"random({d},{seed})", q.T)
