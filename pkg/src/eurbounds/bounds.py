"""Lower bounds on measurement uncertainty and upper bounds on accessible
information, for N projective measurements with quantum memory.

Naming used throughout:
  l1, lopt, b_tilde   -- the uncertainty (EUR) lower bounds
  u1, uopt, u1_tilde, u2_tilde, uopt_tilde -- the information (IEP) upper bounds
All values are in bits.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .states import (
    conditional_entropy,
    measure_channel,
    measurement_conditional_entropy,
    mutual_information,
    outcome_distribution,
    shannon_entropy,
    von_neumann_entropy,
)

MAX_ORDERING_N = 8
MAX_COVER_N = 6


def overlap_matrix(a, b):
    """Squared-overlap matrix O[i, j] = |<a_i|b_j>|^2; doubly stochastic."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch {a.dim} vs {b.dim}")
    return np.abs(a.vectors @ np.conj(b.vectors).T) ** 2


@dataclass(frozen=True)
class MeasurementOrdering:
    """A permutation of a measurement set with its consecutive overlaps.

    overlaps[n] has entries [D_n]_{a_n, a_{n+1}} between the n-th and
    (n+1)-th measurement in the permuted order.
    """

    permutation: tuple
    overlaps: tuple

    @classmethod
    def from_set(cls, ms, permutation):
        perm = tuple(permutation)
        if sorted(perm) != list(range(ms.n)):
            raise ValueError(f"not a permutation of 0..{ms.n - 1}: {perm}")
        overlaps = tuple(
            overlap_matrix(ms[perm[i]], ms[perm[i + 1]]) for i in range(ms.n - 1)
        )
        return cls(perm, overlaps)

    @property
    def n(self):
        return len(self.permutation)

    @property
    def last(self):
        return self.permutation[-1]


def chain_coefficients(ordering):
    """Coefficient vector b indexed by the last measurement's outcome.

    b = m . D_2 . ... . D_{N-1} with m(a2) = max_{a1} [D_1]_{a1, a2}; the
    max over the first index factorizes out because it only enters D_1.
    """
    m = ordering.overlaps[0].max(axis=0)
    for d in ordering.overlaps[1:]:
        m = m @ d
    return m


def ell_u(state, ordering, ms):
    """State-dependent incompatibility term: -sum_a p(a) log2 b(a)."""
    b = chain_coefficients(ordering)
    p = outcome_distribution(state, ms[ordering.last])
    return float(-np.sum(p * np.log2(b)))


def ell_u_tilde(ordering):
    """Distribution-free weakening: -log2 max_a b(a)."""
    return float(-np.log2(chain_coefficients(ordering).max()))


def _all_orderings(ms):
    if ms.n > MAX_ORDERING_N:
        raise ValueError(
            f"N={ms.n} exceeds the ordering-search cap {MAX_ORDERING_N}; "
            "raise MAX_ORDERING_N explicitly if you really want N! search"
        )
    # lexicographic order; ties in any max/min below resolve to the smallest
    return [
        MeasurementOrdering.from_set(ms, perm)
        for perm in itertools.permutations(range(ms.n))
    ]


def eur_l1(state, ms):
    """(N-1) H(A|B) plus the best incompatibility term over all orderings."""
    h_ab = conditional_entropy(state)
    best_val, best_ord = None, None
    for ordering in _all_orderings(ms):
        v = ell_u(state, ordering, ms)
        if best_val is None or v > best_val:
            best_val, best_ord = v, ordering
    return (ms.n - 1) * h_ab + best_val, best_ord


@dataclass(frozen=True)
class PairComplementarity:
    """Directed complementarities of a measurement pair and their max."""

    i: int
    j: int
    c_ij: float
    c_ji: float

    @property
    def value(self):
        return max(self.c_ij, self.c_ji)


def pair_complementarity(state, a, b, i=0, j=1):
    """C_ij = -sum_aj p(aj) log2 max_ai |<ai|aj>|^2, both directions."""
    o = overlap_matrix(a, b)
    p_b = outcome_distribution(state, b)
    p_a = outcome_distribution(state, a)
    c_ij = float(-np.sum(p_b * np.log2(o.max(axis=0))))
    c_ji = float(-np.sum(p_a * np.log2(o.max(axis=1))))
    return PairComplementarity(i, j, c_ij, c_ji)


def pair_complementarity_floor(a, b):
    """State-independent floor: -log2 of the largest squared overlap."""
    return float(-np.log2(overlap_matrix(a, b).max()))


@dataclass(frozen=True)
class PairCover:
    """An r-regular set of measurement pairs over {0..n-1}."""

    edges: tuple
    degree: int


@lru_cache(maxsize=None)
def enumerate_pair_covers(n):
    """All simple r-regular spanning subgraphs of K_n, any r >= 1.

    Counts are 1, 1, 7 for n = 2, 3, 4.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if n > MAX_COVER_N:
        raise ValueError(
            f"N={n} exceeds the cover-enumeration cap {MAX_COVER_N}"
        )
    all_edges = list(itertools.combinations(range(n), 2))
    covers = []
    for mask in range(1, 2 ** len(all_edges)):
        edges = tuple(e for k, e in enumerate(all_edges) if mask >> k & 1)
        deg = [0] * n
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        if deg[0] >= 1 and all(d == deg[0] for d in deg):
            covers.append(PairCover(edges, deg[0]))
    return tuple(covers)


def _cover_average(cover, pair_values):
    return sum(pair_values[e] for e in cover.edges) / cover.degree


def _pair_values(state, ms):
    return {
        (i, j): pair_complementarity(state, ms[i], ms[j], i, j).value
        for i, j in itertools.combinations(range(ms.n), 2)
    }


def eur_lopt(state, ms):
    """(N/2) H(A|B) plus the best averaged pairwise complementarity."""
    h_ab = conditional_entropy(state)
    pv = _pair_values(state, ms)
    best_val, best_cover = None, None
    for cover in enumerate_pair_covers(ms.n):
        v = _cover_average(cover, pv)
        if best_val is None or v > best_val:
            best_val, best_cover = v, cover
    return ms.n / 2.0 * h_ab + best_val, best_cover


def eur_total(state, ms):
    """Combined lower bound max{L1, Lopt, 0}."""
    l1, _ = eur_l1(state, ms)
    lopt, _ = eur_lopt(state, ms)
    return max(l1, lopt, 0.0)


def eur_state_independent(state, ms):
    """(N-1) H(A|B) + max over orderings of the distribution-free term."""
    h_ab = conditional_entropy(state)
    best = max(ell_u_tilde(o) for o in _all_orderings(ms))
    return (ms.n - 1) * h_ab + best


def eur_no_memory(rho, ms):
    """Bound for a lone state rho (no memory): (N-1) S(rho) + max ell."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ms.dim, ms.dim):
        raise ValueError(f"rho shape {rho.shape} != ({ms.dim}, {ms.dim})")
    s = von_neumann_entropy(rho)
    best = None
    for ordering in _all_orderings(ms):
        b = chain_coefficients(ordering)
        vecs = ms[ordering.last].vectors
        p = np.clip(np.real(np.einsum("ai,ij,aj->a", np.conj(vecs), rho, vecs)), 0, None)
        v = float(-np.sum(p / p.sum() * np.log2(b)))
        if best is None or v > best:
            best = v
    return (ms.n - 1) * s + best


def iep_u1(state, ms):
    """sum_i H(Pi_i) minus the L1 lower bound."""
    h_sum = sum(shannon_entropy(outcome_distribution(state, m)) for m in ms)
    l1, _ = eur_l1(state, ms)
    return h_sum - l1


def iep_uopt(state, ms):
    """Minimum over pair covers; equals sum_i H(Pi_i) - Lopt."""
    h_sum = sum(shannon_entropy(outcome_distribution(state, m)) for m in ms)
    lopt, _ = eur_lopt(state, ms)
    return h_sum - lopt


def iep_u1_tilde(state, ms):
    """N log2 d minus the distribution-free EUR bound."""
    return ms.n * np.log2(ms.dim) - eur_state_independent(state, ms)


def iep_u2_tilde(state, ms):
    """(N-1)(log2 d - H(A|B)) + min over orderings of log2 sum_a b(a)."""
    h_ab = conditional_entropy(state)
    best = min(float(np.log2(chain_coefficients(o).sum())) for o in _all_orderings(ms))
    return (ms.n - 1) * (np.log2(ms.dim) - h_ab) + best


def iep_uopt_tilde(state, ms):
    """State-independent weakening of uopt: H(Pi_i) -> log2 d and each pair
    complementarity -> its overlap floor."""
    h_ab = conditional_entropy(state)
    floors = {
        (i, j): pair_complementarity_floor(ms[i], ms[j])
        for i, j in itertools.combinations(range(ms.n), 2)
    }
    best = max(_cover_average(c, floors) for c in enumerate_pair_covers(ms.n))
    return ms.n * np.log2(ms.dim) - (ms.n / 2.0 * h_ab + best)


def iep_total(state, ms):
    """(state-dependent, state-independent) combined upper bounds."""
    dep = min(iep_u1(state, ms), iep_uopt(state, ms))
    indep = min(
        iep_u1_tilde(state, ms), iep_u2_tilde(state, ms), iep_uopt_tilde(state, ms)
    )
    return dep, indep


def lhs_eur(state, ms):
    """Directly computed uncertainty sum_i H(Pi_i|B)."""
    return sum(measurement_conditional_entropy(state, m) for m in ms)


def lhs_iep(state, ms):
    """Directly computed information sum_i I(Pi_i:B)."""
    return sum(mutual_information(state, m) for m in ms)


@dataclass(frozen=True)
class BoundReport:
    """Every bound plus the directly computed quantities for one instance."""

    h_ab_cond: float
    lhs_eur: float
    lhs_iep: float
    l1: float
    lopt: float
    eur_total: float
    b_tilde: float
    u1: float
    uopt: float
    u1_tilde: float
    u2_tilde: float
    uopt_tilde: float
    iep_dep: float
    iep_indep: float
    best_ordering_eur: tuple
    best_cover: PairCover


def compute_report(state, ms):
    """Evaluate all bounds in one pass over the orderings and covers."""
    h_ab = conditional_entropy(state)
    s_b = von_neumann_entropy(state.rho_b)
    n, d = ms.n, ms.dim
    log_d = float(np.log2(d))

    dists = [outcome_distribution(state, m) for m in ms]
    h_shannon = [shannon_entropy(p) for p in dists]
    h_cond = [von_neumann_entropy(measure_channel(state, m).rho) - s_b for m in ms]
    v_lhs_eur = float(sum(h_cond))
    v_lhs_iep = float(sum(h_shannon) - sum(h_cond))

    best_ell, best_ell_tilde, best_u2 = None, None, None
    best_ordering = None
    for ordering in _all_orderings(ms):
        b = chain_coefficients(ordering)
        p = dists[ordering.last]
        ell = float(-np.sum(p * np.log2(b)))
        if best_ell is None or ell > best_ell:
            best_ell, best_ordering = ell, ordering
        ell_t = float(-np.log2(b.max()))
        if best_ell_tilde is None or ell_t > best_ell_tilde:
            best_ell_tilde = ell_t
        u2 = float(np.log2(b.sum()))
        if best_u2 is None or u2 < best_u2:
            best_u2 = u2

    l1 = (n - 1) * h_ab + best_ell
    b_tilde = (n - 1) * h_ab + best_ell_tilde

    pv = _pair_values(state, ms)
    floors = {
        (i, j): pair_complementarity_floor(ms[i], ms[j])
        for i, j in itertools.combinations(range(n), 2)
    }
    best_avg, best_cover = None, None
    best_floor_avg = None
    for cover in enumerate_pair_covers(n):
        v = _cover_average(cover, pv)
        if best_avg is None or v > best_avg:
            best_avg, best_cover = v, cover
        fv = _cover_average(cover, floors)
        if best_floor_avg is None or fv > best_floor_avg:
            best_floor_avg = fv
    lopt = n / 2.0 * h_ab + best_avg

    u1 = sum(h_shannon) - l1
    uopt = sum(h_shannon) - lopt
    u1_tilde = n * log_d - b_tilde
    u2_tilde = (n - 1) * (log_d - h_ab) + best_u2
    uopt_tilde = n * log_d - (n / 2.0 * h_ab + best_floor_avg)

    return BoundReport(
        h_ab_cond=float(h_ab),
        lhs_eur=v_lhs_eur,
        lhs_iep=v_lhs_iep,
        l1=float(l1),
        lopt=float(lopt),
        eur_total=float(max(l1, lopt, 0.0)),
        b_tilde=float(b_tilde),
        u1=float(u1),
        uopt=float(uopt),
        u1_tilde=float(u1_tilde),
        u2_tilde=float(u2_tilde),
        uopt_tilde=float(uopt_tilde),
        iep_dep=float(min(u1, uopt)),
        iep_indep=float(min(u1_tilde, u2_tilde, uopt_tilde)),
        best_ordering_eur=best_ordering.permutation,
        best_cover=best_cover,
    )
