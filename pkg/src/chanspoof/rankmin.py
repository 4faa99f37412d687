"""Alternating-projection search for a minimal-Kraus-rank class member.

The iteration alternates between (a) truncation of the Choi matrix to its d
largest eigenvalues, (b) resetting the diagonal blocks to the original
channel's (the class constraint), (c) in paper-strict mode, projecting each
off-diagonal block onto the traceless subspace, and (d) Hermitian
symmetrization.  It stops when the pivot eigenvalue ``lambda_{d+1}`` falls
below ``epsilon`` relative to ``lambda_1``.

The rank cannot drop below the rank of any diagonal block, so for a generic
channel (full-rank blocks) the target rank d is optimal.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from chanspoof import chanrep, spoofing
from chanspoof.chanrep import _isqrt, diagonal_blocks


def rank_lower_bound(j: np.ndarray, tol: float = 1e-8) -> int:
    """Max numerical rank over the diagonal Choi blocks."""
    bound = 0
    for b in diagonal_blocks(j):
        w = np.linalg.eigvalsh((b + b.conj().T) / 2)
        top = w.max()
        if top > 0:
            bound = max(bound, int(np.count_nonzero(w > tol * top)))
    return bound


@dataclass(frozen=True)
class MinimizerConfig:
    """Knobs for :func:`sinkhorn_minimize`.

    ``epsilon`` is the pivot tolerance relative to the largest eigenvalue.
    ``init_perturbation`` adds a seeded Hermitian perturbation to the
    off-diagonal blocks before iterating, to probe non-uniqueness of the
    minimizer; 0 keeps the procedure deterministic.
    """

    epsilon: float = 1e-10
    max_iters: int = 10_000
    mode: str = "paper-strict"
    seed: int = 0
    init_perturbation: float = 0.0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        spoofing._check_mode(self.mode)


@dataclass
class ConvergenceTrace:
    """Per-iteration eigenvalue record of a minimization run."""

    dim: int
    mode: str
    eigenvalues: list[np.ndarray] = field(default_factory=list)
    pivots: list[float] = field(default_factory=list)
    iterations: int = 0
    wall_time: float = 0.0
    converged: bool = False


class NonConvergenceError(RuntimeError):
    """Raised by callers that require convergence; carries the best iterate."""

    def __init__(self, j: np.ndarray, trace: ConvergenceTrace):
        super().__init__(
            f"rank minimization did not converge in {trace.iterations} iterations "
            f"(pivot {trace.pivots[-1]:.3e})"
        )
        self.choi = j
        self.trace = trace


def _traceless_offdiag(j: np.ndarray, d: int) -> None:
    for i in range(d):
        for k in range(d):
            if i != k:
                blk = j[i * d:(i + 1) * d, k * d:(k + 1) * d]
                blk -= np.eye(d) * (np.trace(blk) / d)


def sinkhorn_minimize(
    j: np.ndarray, cfg: MinimizerConfig = MinimizerConfig()
) -> tuple[np.ndarray, ConvergenceTrace]:
    """Find a rank-d member of the spoofing class of ``j``.

    Returns the best iterate and the convergence trace; check
    ``trace.converged`` (the trace is returned rather than raising because
    no convergence guarantee exists for arbitrary inputs).
    """
    j = np.asarray(j, dtype=complex)
    d = _isqrt(j.shape[0])
    rep = chanrep.validate_cptp(j, tol=1e-8)
    if not rep.valid:
        raise ValueError(f"input is not a valid CPTP Choi matrix: {rep}")
    orig_blocks = [b.copy() for b in diagonal_blocks(j)]
    cur = j.copy()
    if cfg.init_perturbation > 0:
        rng = np.random.default_rng(cfg.seed)
        h = rng.standard_normal((d * d, d * d)) + 1j * rng.standard_normal((d * d, d * d))
        h = (h + h.conj().T) / 2
        for q in range(d):
            h[q * d:(q + 1) * d, q * d:(q + 1) * d] = 0.0
        if cfg.mode == "paper-strict":
            _traceless_offdiag(h, d)
        cur = cur + cfg.init_perturbation * h

    trace = ConvergenceTrace(dim=d, mode=cfg.mode)
    start = time.perf_counter()
    for it in range(cfg.max_iters):
        w, v = np.linalg.eigh(cur)
        order = np.argsort(w)[::-1]
        w, v = w[order], v[:, order]
        trace.eigenvalues.append(w.copy())
        pivot = float(w[d] / w[0]) if w[0] > 0 else 0.0
        trace.pivots.append(pivot)
        trace.iterations = it + 1
        if pivot <= cfg.epsilon:
            trace.converged = True
            break
        top = np.clip(w[:d], 0.0, None)
        cur = (v[:, :d] * top) @ v[:, :d].conj().T
        for q in range(d):
            cur[q * d:(q + 1) * d, q * d:(q + 1) * d] = orig_blocks[q]
        if cfg.mode == "paper-strict":
            _traceless_offdiag(cur, d)
        cur = (cur + cur.conj().T) / 2
    trace.wall_time = time.perf_counter() - start
    return cur, trace


def is_minimal_member(
    j_original: np.ndarray, j_candidate: np.ndarray, tol: float = 1e-8
) -> bool:
    """True iff the candidate is in-class and meets the block rank bound."""
    report = spoofing.same_class(j_original, j_candidate, tol=tol)
    if not report.same_class:
        return False
    return chanrep.kraus_rank(j_candidate, tol=tol) == rank_lower_bound(j_original, tol=tol)
