"""Independent oracles and randomized validity suites.

The oracles here deliberately avoid the optimized code paths in bounds.py:
chain coefficients are re-derived by literal tuple enumeration, and the
inequality behind all the bounds is checked directly through the relative
entropy of the explicitly assembled reference operator.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .linalg import kron
from .states import (
    MeasurementSet,
    conditional_b_state,
    conditional_entropy,
    measurement_conditional_entropy,
    random_basis,
    random_state,
    relative_entropy,
)
from .bounds import (
    MeasurementOrdering,
    chain_coefficients,
    compute_report,
    lhs_eur,
    lhs_iep,
)

BRUTEFORCE_CAP = 10**6


def chain_bruteforce(ordering):
    """Chain coefficients by explicit enumeration over all index tuples.

    For each (a_2, ..., a_N) the product of consecutive overlaps is
    maximized over a_1 and summed over the intermediate indices.
    """
    n = ordering.n
    d = ordering.overlaps[0].shape[0]
    if d**n > BRUTEFORCE_CAP:
        raise ValueError(f"d^N = {d**n} exceeds brute-force cap {BRUTEFORCE_CAP}")
    b = np.zeros(d)
    for a_last in range(d):
        total = 0.0
        for mid in itertools.product(range(d), repeat=n - 2):
            path = mid + (a_last,)
            best = 0.0
            for a1 in range(d):
                idx = (a1,) + path
                w = 1.0
                for k in range(n - 1):
                    w *= ordering.overlaps[k][idx[k], idx[k + 1]]
                best = max(best, w)
            total += best
        b[a_last] = total
    return b


def lemma_sigma(state, ms, ordering):
    """The reference operator of the underlying inequality.

    sigma = sum over all index tuples of the overlap-product weight times
    |e_N^{a_N}><e_N^{a_N}| (x) rho_B^{a_1}, with rho_B^{a_1} the
    unnormalized conditioned B operator of the first measurement.
    """
    perm = ordering.permutation
    first = ms[perm[0]]
    last = ms[perm[-1]]
    d = ms.dim
    # full chain weight from a_1 to a_N: product of the overlap matrices
    t = ordering.overlaps[0]
    for m in ordering.overlaps[1:]:
        t = t @ m
    cond_b = [conditional_b_state(state, first.vectors[a]) for a in range(d)]
    sigma = np.zeros_like(state.rho)
    for a_n in range(d):
        block = sum(t[a1, a_n] * cond_b[a1] for a1 in range(d))
        proj = np.outer(last.vectors[a_n], np.conj(last.vectors[a_n]))
        sigma += kron(proj, block)
    return sigma


def lemma_check(state, ms, ordering, tolerance=1e-9):
    """Check sum_i H(Pi_i|B) - N H(A|B) >= S(rho_AB || sigma).

    Returns (lhs, rhs, holds); rhs may be +inf when the support of rho_AB
    escapes sigma, in which case the inequality is vacuous and holds is
    reported False only if lhs is finite (callers count these separately).
    """
    lhs = sum(measurement_conditional_entropy(state, m) for m in ms) - \
        ms.n * conditional_entropy(state)
    sigma = lemma_sigma(state, ms, ordering)
    rhs = relative_entropy(state.rho, sigma, allow_subnormalized=True)
    holds = bool(lhs >= rhs - tolerance)
    return lhs, rhs, holds


@dataclass(frozen=True)
class SuiteConfig:
    trials: int = 10_000
    seed: int = 0
    dims: tuple = ((2, 2),)
    n_measurements: tuple = (3,)
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass
class SuiteReport:
    total: int
    violations: list = field(default_factory=list)
    worst_margin: float = float("inf")
    infinite_rhs: int = 0

    def record(self, margin, seed, descr, tolerance):
        self.worst_margin = min(self.worst_margin, margin)
        if margin < -tolerance:
            self.violations.append((seed, descr, margin))


def _check_instance(report, state, ms, seed, tol):
    rep = compute_report(state, ms)
    descr = f"d={ms.dim} N={ms.n}"
    report.record(rep.lhs_eur - rep.eur_total, seed, f"{descr} eur", tol)
    for name, val in (
        ("u1", rep.u1),
        ("uopt", rep.uopt),
        ("u1_tilde", rep.u1_tilde),
        ("u2_tilde", rep.u2_tilde),
        ("uopt_tilde", rep.uopt_tilde),
    ):
        report.record(val - rep.lhs_iep, seed, f"{descr} iep {name}", tol)
    # distribution-free term never exceeds the state-dependent one
    for ordering in (MeasurementOrdering.from_set(ms, p)
                     for p in itertools.permutations(range(ms.n))):
        gap = bounds.ell_u(state, ordering, ms) - bounds.ell_u_tilde(ordering)
        report.record(gap, seed, f"{descr} ell_tilde {ordering.permutation}", tol)
    if ms.n == 2:
        l1, _ = bounds.eur_l1(state, ms)
        pc = bounds.pair_complementarity(state, ms[0], ms[1])
        collapse = conditional_entropy(state) + pc.value
        report.record(
            1e-12 - abs(l1 - collapse), seed, f"{descr} n2-collapse", tol
        )
    # oracle equivalence and the relative-entropy inequality on one ordering
    ordering = MeasurementOrdering.from_set(ms, tuple(range(ms.n)))
    if ms.dim**ms.n <= 4096:
        diff = np.max(np.abs(chain_coefficients(ordering) - chain_bruteforce(ordering)))
        report.record(1e-12 - diff, seed, f"{descr} chain-oracle", tol)
    lhs, rhs, holds = lemma_check(state, ms, ordering, tol)
    if np.isinf(rhs):
        report.infinite_rhs += 1
    else:
        report.record(lhs - rhs, seed, f"{descr} lemma", tol)


def run_suite(config):
    """Randomized validity sweep; violations are collected, never raised."""
    report = SuiteReport(total=0)
    rng = np.random.default_rng(config.seed)
    for _ in range(config.trials):
        for d_a, d_b in config.dims:
            for n in config.n_measurements:
                seed = int(rng.integers(0, 2**63 - 1))
                state = random_state(d_a, d_b, seed)
                ms = MeasurementSet(
                    tuple(random_basis(d_a, seed + k + 1) for k in range(n))
                )
                _check_instance(report, state, ms, seed, config.tolerance)
                report.total += 1
    report.violations.sort(key=lambda v: v[0])
    if not np.isfinite(report.worst_margin):
        report.worst_margin = 0.0
    return report
