"""Channel representations: Kraus, Choi, and natural (superoperator) forms.

Conventions used throughout:

* Vectorization is row-major: ``vec(|i><j|) = |i>|j>``, i.e. ``m.reshape(-1)``
  on a C-ordered array.
* The Choi matrix is ``J = sum_r vec(K_r) vec(K_r)^dag``, equal to the
  reshuffled superoperator ``S = sum_r K_r (x) conj(K_r)``.  With this
  normalization ``Tr J = d`` and the d diagonal d x d blocks of J sum to the
  identity for a trace-preserving channel.
* Trace preservation is ``sum_r K_r^dag K_r = I``.

Double-index bookkeeping: entry ``(i*d + j, k*d + l)`` of a d^2 x d^2 matrix
is written ``M_{(ij),(kl)}``.  Reshuffling swaps the inner indices:
``M^R_{(ij),(kl)} = M_{(ik),(jl)}``, an involution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


def vec(m: np.ndarray) -> np.ndarray:
    """Row-major vectorization of a matrix."""
    return np.asarray(m, dtype=complex).reshape(-1)


def devec(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vec`; requires a length-d^2 vector."""
    v = np.asarray(v, dtype=complex)
    d = _isqrt(v.size, what="vector length")
    return v.reshape(d, d)


def _isqrt(n: int, what: str = "dimension") -> int:
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise ValueError(f"{what} {n} is not a perfect square")
    return d


def _as_kraus(ops) -> np.ndarray:
    """Stack Kraus operators into an (R, d, d) array, checking shapes."""
    ops = [np.asarray(k, dtype=complex) for k in ops]
    if not ops:
        raise ValueError("a Kraus set needs at least one operator")
    d = ops[0].shape[0]
    for k in ops:
        if k.shape != (d, d):
            raise ValueError(
                f"Kraus operators must all be {d}x{d}, got {k.shape}"
            )
    return np.stack(ops)


def validate_kraus(ops, tol: float = DEFAULT_TOL) -> None:
    """Raise ValueError unless ``sum_r K_r^dag K_r = I`` within ``tol``."""
    ks = _as_kraus(ops)
    d = ks.shape[1]
    s = np.einsum("rji,rjk->ik", ks.conj(), ks)
    defect = np.abs(s - np.eye(d)).max()
    if defect > tol:
        raise ValueError(f"Kraus set is not trace preserving (defect {defect:.2e})")


def validate_density(rho: np.ndarray, tol: float = DEFAULT_TOL) -> None:
    """Raise ValueError unless ``rho`` is a density matrix within ``tol``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > tol:
        raise ValueError(f"density matrix not Hermitian (defect {herm:.2e})")
    tr = abs(np.trace(rho) - 1.0)
    if tr > tol:
        raise ValueError(f"density matrix trace differs from 1 by {tr:.2e}")
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    if w.min() < -tol:
        raise ValueError(f"density matrix has negative eigenvalue {w.min():.2e}")


def kraus_to_superop(ops) -> np.ndarray:
    """Natural representation ``S = sum_r K_r (x) conj(K_r)``."""
    ks = _as_kraus(ops)
    return sum(np.kron(k, k.conj()) for k in ks)


def reshuffle(m: np.ndarray) -> np.ndarray:
    """Index permutation ``M^R_{(ij),(kl)} = M_{(ik),(jl)}``.

    Converts between the natural and Choi representations; an involution.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    d = _isqrt(m.shape[0])
    return m.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def kraus_to_choi(ops) -> np.ndarray:
    """Choi matrix ``J = sum_r vec(K_r) vec(K_r)^dag`` (so ``Tr J = d``)."""
    ks = _as_kraus(ops)
    vs = ks.reshape(ks.shape[0], -1)
    return vs.T @ vs.conj()


def choi_to_kraus(j: np.ndarray, tol: float = 1e-10) -> list[np.ndarray]:
    """Extract Kraus operators from a Choi matrix by eigendecomposition.

    Keeps one operator ``sqrt(lam) * devec(v)`` per eigenvalue ``lam > tol``.
    Raises ValueError if any eigenvalue is below ``-tol`` (not completely
    positive).
    """
    j = np.asarray(j, dtype=complex)
    herm = np.abs(j - j.conj().T).max()
    if herm > tol:
        raise ValueError(f"Choi matrix not Hermitian (defect {herm:.2e})")
    w, v = np.linalg.eigh((j + j.conj().T) / 2)
    if w.min() < -tol:
        raise ValueError(f"Choi matrix has negative eigenvalue {w.min():.2e}")
    ops = [np.sqrt(lam) * devec(v[:, r]) for r, lam in enumerate(w) if lam > tol]
    if not ops:
        raise ValueError("Choi matrix has no eigenvalue above tolerance")
    return ops


def apply_channel(ops, rho: np.ndarray) -> np.ndarray:
    """Operator-sum action ``sum_r K_r rho K_r^dag``."""
    ks = _as_kraus(ops)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != ks.shape[1:]:
        raise ValueError(
            f"state shape {rho.shape} does not match channel dimension {ks.shape[1]}"
        )
    return np.einsum("rij,jk,rlk->il", ks, rho, ks.conj())


def outcome_distribution(ops, rho: np.ndarray) -> np.ndarray:
    """Computational-basis outcome probabilities of the channel output."""
    out = apply_channel(ops, rho)
    return np.real(np.diag(out)).copy()


def outcome_distribution_choi(j: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Outcome probabilities from the diagonal Choi blocks alone.

    ``p_q = sum_{nm} [B_q]_{nm} rho_{nm}`` with ``B_q`` the q-th diagonal
    block; equal to the Kraus-action route for any valid channel.
    """
    rho = np.asarray(rho, dtype=complex)
    return np.array(
        [float(np.real(np.sum(b * rho))) for b in diagonal_blocks(j)]
    )


def diagonal_blocks(j: np.ndarray) -> list[np.ndarray]:
    """The d diagonal d x d blocks ``B_q[n, m] = J_{(qn),(qm)}``."""
    j = np.asarray(j, dtype=complex)
    d = _isqrt(j.shape[0])
    return [j[q * d:(q + 1) * d, q * d:(q + 1) * d] for q in range(d)]


def kraus_rank(j: np.ndarray, tol: float = 1e-8) -> int:
    """Number of Choi eigenvalues above ``tol`` relative to the largest."""
    w = np.linalg.eigvalsh((np.asarray(j, dtype=complex) + np.asarray(j).conj().T) / 2)
    top = w.max()
    if top <= 0:
        return 0
    return int(np.count_nonzero(w > tol * top))


@dataclass(frozen=True)
class CPTPReport:
    """Validity report for a candidate Choi matrix."""

    dim: int
    hermiticity_defect: float
    min_eigenvalue: float
    block_sum_deviation: float
    tol: float

    @property
    def valid(self) -> bool:
        return (
            self.hermiticity_defect <= self.tol
            and self.min_eigenvalue >= -self.tol
            and self.block_sum_deviation <= self.tol
        )


def validate_cptp(j: np.ndarray, tol: float = DEFAULT_TOL) -> CPTPReport:
    """Report Hermiticity, positivity, and trace-preservation defects.

    Trace preservation is checked as ``sum_q B_q = I`` over the diagonal
    Choi blocks, equivalent to the unit partial trace condition.
    """
    j = np.asarray(j, dtype=complex)
    if j.ndim != 2 or j.shape[0] != j.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {j.shape}")
    d = _isqrt(j.shape[0])
    herm = float(np.abs(j - j.conj().T).max())
    w = np.linalg.eigvalsh((j + j.conj().T) / 2)
    block_sum = sum(diagonal_blocks(j))
    dev = float(np.abs(block_sum - np.eye(d)).max())
    return CPTPReport(
        dim=d,
        hermiticity_defect=herm,
        min_eigenvalue=float(w.min()),
        block_sum_deviation=dev,
        tol=tol,
    )


def random_channel(d: int, rank: int, seed: int) -> list[np.ndarray]:
    """Random channel from right-normalized complex-Gaussian Kraus operators.

    Generically of Kraus rank ``rank``; ``rank = 1`` gives a Haar-like
    unitary channel.  Deterministic per seed.
    """
    if not 1 <= rank <= d * d:
        raise ValueError(f"rank must be in [1, {d * d}], got {rank}")
    rng = np.random.default_rng(seed)
    ks = rng.standard_normal((rank, d, d)) + 1j * rng.standard_normal((rank, d, d))
    s = np.einsum("rji,rjk->ik", ks.conj(), ks)
    w, v = np.linalg.eigh(s)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    return [k @ inv_sqrt for k in ks]


def random_density(d: int, seed: int) -> np.ndarray:
    """Random full-rank density matrix ``G G^dag / Tr(G G^dag)``."""
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
