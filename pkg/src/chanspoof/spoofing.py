"""Type-I and Type-II spoofing families and equivalence-class checks.

Two channels are in the same spoofing class when every computational-basis
outcome distribution agrees on every input state, which holds iff the
diagonal d x d blocks of their Choi matrices coincide.

* A Type-I spoofer post-composes the channel with a map whose natural
  representation is diagonal; it is parametrized here by a d x d "gauge
  core" A (Hermitian, PSD, unit diagonal) that multiplies Choi block (i, k)
  by ``A[i, k]``.  No knowledge of the original channel is needed.
* A Type-II spoofer is any channel with the same diagonal Choi blocks;
  off-diagonal blocks are free up to positivity (and, in ``paper-strict``
  mode, a traceless condition on each off-diagonal block).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from chanspoof import chanrep
from chanspoof.chanrep import DEFAULT_TOL, _isqrt, diagonal_blocks

MODES = ("paper-strict", "operational")


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def probe_states(d: int, n_random: int = 50, seed: int = 0) -> list[np.ndarray]:
    """Deterministic probe set spanning all observable directions.

    Basis states, the pairwise coherence probes ``(|i> + |j>)/sqrt(2)`` and
    ``(|i> + i|j>)/sqrt(2)``, plus ``n_random`` random full-rank states.
    """
    states = []
    for i in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[i, i] = 1.0
        states.append(e)
    for i in range(d):
        for j in range(i + 1, d):
            for phase in (1.0, 1j):
                v = np.zeros(d, dtype=complex)
                v[i] = 1.0
                v[j] = phase
                v /= np.sqrt(2)
                states.append(np.outer(v, v.conj()))
    for t in range(n_random):
        states.append(chanrep.random_density(d, seed=seed * 7919 + t))
    return states


def type1_validate(core: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``core`` is Hermitian, unit-diagonal, and PSD within ``tol``."""
    a = np.asarray(core, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"gauge core must be square, got shape {a.shape}")
    if np.abs(a - a.conj().T).max() > tol:
        return False
    if np.abs(np.diag(a) - 1.0).max() > tol:
        return False
    w = np.linalg.eigvalsh((a + a.conj().T) / 2)
    return bool(w.min() >= -tol)


def type1_apply(j: np.ndarray, core: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Post-compose a channel with the Type-I spoofer of gauge core ``core``.

    Choi block (i, k) is multiplied by ``A[i, k]``; the diagonal blocks
    (``A[i, i] = 1``) are untouched, so the output stays in the class.  The
    output is PSD by the Schur product theorem since ``A (x) ones`` is PSD.
    """
    j = np.asarray(j, dtype=complex)
    d = _isqrt(j.shape[0])
    a = np.asarray(core, dtype=complex)
    if a.shape != (d, d):
        raise ValueError(f"gauge core shape {a.shape} does not match dimension {d}")
    if not type1_validate(a, tol):
        raise ValueError("invalid gauge core: must be Hermitian, PSD, unit-diagonal")
    return np.kron(a, np.ones((d, d))) * j


def random_gauge_core(d: int, seed: int, strength: float = 1.0) -> np.ndarray:
    """Random valid gauge core: convex mixture of a random pure coherence
    pattern with the all-ones core.

    ``strength = 0`` returns the all-ones core (identity spoofer).
    """
    rng = np.random.default_rng(seed)
    v = np.exp(2j * np.pi * rng.random(d))
    pure = np.outer(v, v.conj())  # PSD, unit diagonal
    t = strength * rng.random()
    return (1 - t) * np.ones((d, d)) + t * pure


@dataclass(frozen=True)
class TypeIIFamily:
    """A spoofing equivalence class, fixed by the diagonal Choi blocks."""

    dim: int
    fixed_blocks: tuple[np.ndarray, ...]
    mode: str = "paper-strict"

    def __post_init__(self):
        _check_mode(self.mode)
        s = sum(self.fixed_blocks)
        if np.abs(s - np.eye(self.dim)).max() > 1e-8:
            raise ValueError("fixed diagonal blocks must sum to the identity")


def type2_family(j: np.ndarray, mode: str = "paper-strict") -> TypeIIFamily:
    """The spoofing class of the channel with Choi matrix ``j``."""
    rep = chanrep.validate_cptp(j)
    if not rep.valid:
        raise ValueError(f"input is not a valid CPTP Choi matrix: {rep}")
    blocks = tuple(b.copy() for b in diagonal_blocks(j))
    return TypeIIFamily(dim=rep.dim, fixed_blocks=blocks, mode=mode)


def type2_member(
    family: TypeIIFamily,
    offdiag: dict[tuple[int, int], np.ndarray],
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Assemble a class member from off-diagonal block content.

    ``offdiag[(i, k)]`` with ``i < k`` supplies Choi block (i, k); block
    (k, i) is its conjugate transpose, so the result is Hermitian by
    construction.  Raises ValueError if the assembled matrix is not PSD
    within ``tol`` or, in paper-strict mode, if any supplied block has a
    trace of modulus above ``tol``.
    """
    d = family.dim
    j = np.zeros((d * d, d * d), dtype=complex)
    for q in range(d):
        j[q * d:(q + 1) * d, q * d:(q + 1) * d] = family.fixed_blocks[q]
    for (i, k), block in offdiag.items():
        if not 0 <= i < k < d:
            raise ValueError(f"off-diagonal block index ({i}, {k}) must satisfy 0 <= i < k < {d}")
        b = np.asarray(block, dtype=complex)
        if b.shape != (d, d):
            raise ValueError(f"block ({i}, {k}) has shape {b.shape}, expected ({d}, {d})")
        if family.mode == "paper-strict" and abs(np.trace(b)) > tol:
            raise ValueError(
                f"paper-strict mode requires traceless off-diagonal blocks; "
                f"block ({i}, {k}) has trace {np.trace(b):.3g}"
            )
        j[i * d:(i + 1) * d, k * d:(k + 1) * d] = b
        j[k * d:(k + 1) * d, i * d:(i + 1) * d] = b.conj().T
    w = np.linalg.eigvalsh(j)
    if w.min() < -tol:
        raise ValueError(f"assembled Choi matrix is not PSD (min eigenvalue {w.min():.2e})")
    return j


@dataclass(frozen=True)
class SpoofReport:
    """Outcome of a class-membership comparison of two channels."""

    same_class: bool
    choi_differ: bool
    max_block_deviation: float
    max_distribution_deviation: float


def same_class(
    j1: np.ndarray,
    j2: np.ndarray,
    tol: float = 1e-10,
    n_random_states: int = 50,
    seed: int = 0,
) -> SpoofReport:
    """Compare two channels for spoofing-class membership.

    Class membership is decided from the diagonal Choi blocks;
    ``choi_differ`` flags whether the full Choi matrices differ entrywise
    beyond ``tol``.  The distribution deviation is the max disagreement of
    exact outcome distributions over the deterministic probe set plus
    ``n_random_states`` random states.
    """
    j1 = np.asarray(j1, dtype=complex)
    j2 = np.asarray(j2, dtype=complex)
    if j1.shape != j2.shape:
        raise ValueError(f"dimension mismatch: {j1.shape} vs {j2.shape}")
    d = _isqrt(j1.shape[0])
    b1, b2 = diagonal_blocks(j1), diagonal_blocks(j2)
    block_dev = max(float(np.abs(x - y).max()) for x, y in zip(b1, b2))
    choi_dev = float(np.abs(j1 - j2).max())
    dist_dev = 0.0
    for rho in probe_states(d, n_random_states, seed):
        p1 = chanrep.outcome_distribution_choi(j1, rho)
        p2 = chanrep.outcome_distribution_choi(j2, rho)
        dist_dev = max(dist_dev, float(np.abs(p1 - p2).max()))
    return SpoofReport(
        same_class=block_dev <= tol,
        choi_differ=choi_dev > tol,
        max_block_deviation=block_dev,
        max_distribution_deviation=dist_dev,
    )


def adjoint_basis_images(ops) -> list[np.ndarray]:
    """Adjoint-channel images of the basis projectors.

    Returns ``E^dag(|i><i|) = sum_r K_r^dag |i><i| K_r`` for each i; two
    channels in the same class agree on all of these.
    """
    ks = chanrep._as_kraus(ops)
    d = ks.shape[1]
    return [np.einsum("rn,rm->nm", ks[:, i, :].conj(), ks[:, i, :]) for i in range(d)]


def count_free_params(kind: str, size: int, mode: str = "paper-strict") -> int:
    """Closed-form count of free real parameters of a spoofing family.

    ``kind`` is one of ``type1``, ``type2`` (``size`` = qudit dimension d) or
    ``type1-pauli``, ``type2-pauli`` (``size`` = number of qubits N).  In
    operational mode the Type-II count drops the traceless off-diagonal-block
    condition and becomes ``d^4 - d^3``.
    """
    _check_mode(mode)
    if size < 1:
        raise ValueError(f"size must be positive, got {size}")
    if kind == "type1":
        d = size
        return d * d - d
    if kind == "type2":
        d = size
        if mode == "operational":
            return d**4 - d**3
        return d**4 - d**3 - d**2 + d
    if kind == "type1-pauli":
        return (4**size - 2**size) // 2
    if kind == "type2-pauli":
        return 4**size - 2**size
    raise ValueError(f"unknown family kind {kind!r}")


def numeric_class_dimension(dim: int, mode: str = "paper-strict") -> int:
    """Dimension of the class as the nullity of its linear constraint system.

    Parametrizes Hermitian perturbations of the Choi matrix by the standard
    real Hermitian basis (d^4 elements) and stacks the constraints: all
    diagonal-block entries vanish, plus (paper-strict) vanishing traces of
    the off-diagonal blocks.  Independent oracle for
    :func:`count_free_params`.
    """
    _check_mode(mode)
    d = dim
    n = d * d
    basis = []
    for a in range(n):
        h = np.zeros((n, n), dtype=complex)
        h[a, a] = 1.0
        basis.append(h)
    for a in range(n):
        for b in range(a + 1, n):
            h = np.zeros((n, n), dtype=complex)
            h[a, b] = h[b, a] = 1.0 / np.sqrt(2)
            basis.append(h)
            h = np.zeros((n, n), dtype=complex)
            h[a, b] = 1j / np.sqrt(2)
            h[b, a] = -1j / np.sqrt(2)
            basis.append(h)

    rows = []
    for h in basis:
        row = []
        for q in range(d):
            blk = h[q * d:(q + 1) * d, q * d:(q + 1) * d]
            row.extend(blk.real.ravel())
            row.extend(blk.imag.ravel())
        if mode == "paper-strict":
            for i in range(d):
                for k in range(i + 1, d):
                    tr = np.trace(h[i * d:(i + 1) * d, k * d:(k + 1) * d])
                    row.extend([tr.real, tr.imag])
        rows.append(row)
    constraint = np.array(rows).T  # constraints x parameters
    return int(d**4 - np.linalg.matrix_rank(constraint))
