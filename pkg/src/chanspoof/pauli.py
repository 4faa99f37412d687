"""N-qubit Pauli channels, pattern grouping, and the analytic rank reduction.

Pauli strings are indexed in base 4 with per-qubit digits 0=I, 1=X, 2=Y,
3=Z, so the one-qubit coefficient vector is ``(alpha_I, alpha_X, alpha_Y,
alpha_Z)``.  Each digit carries bits (x, z) with ``P = i^{x.z} X^x Z^z``;
the phase convention never reaches the Choi matrix.

The vec-support of ``P`` depends only on the x-bits, so grouping strings by
x-component partitions the 4^N indices into 2^N groups whose members share a
non-zero pattern in the Choi matrix.  Moving all of a group's weight onto
its z = 0 representative keeps the diagonal Choi blocks (hence the class)
exactly while dropping the Kraus rank to at most 2^N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from chanspoof import chanrep

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SINGLE = (_I, _X, _Y, _Z)

SIMPLEX_TOL = 1e-10


def pauli_string(index: int, n_qubits: int) -> np.ndarray:
    """The Pauli operator for a base-4 string index (digit order 0=I,1=X,2=Y,3=Z)."""
    digits = _digits(index, n_qubits)
    op = np.array([[1.0 + 0j]])
    for dig in digits:
        op = np.kron(op, _SINGLE[dig])
    return op


def _digits(index: int, n_qubits: int) -> list[int]:
    if not 0 <= index < 4**n_qubits:
        raise ValueError(f"Pauli index {index} out of range for {n_qubits} qubits")
    digits = []
    for _ in range(n_qubits):
        digits.append(index % 4)
        index //= 4
    return digits[::-1]


def _x_bits(index: int, n_qubits: int) -> tuple[int, ...]:
    return tuple(1 if dig in (1, 2) else 0 for dig in _digits(index, n_qubits))


@dataclass(frozen=True)
class PauliChannel:
    """Probabilistic mixture of Pauli-string conjugations."""

    n_qubits: int
    alphas: np.ndarray

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def kraus_ops(self) -> list[np.ndarray]:
        """Kraus set ``{sqrt(alpha_j) P_j}`` over the non-zero coefficients."""
        return [
            np.sqrt(a) * pauli_string(jx, self.n_qubits)
            for jx, a in enumerate(self.alphas)
            if a > 0
        ]

    def choi(self) -> np.ndarray:
        """Choi matrix ``sum_j alpha_j vec(P_j) vec(P_j)^dag``."""
        d2 = self.dim**2
        j = np.zeros((d2, d2), dtype=complex)
        for jx, a in enumerate(self.alphas):
            if a > 0:
                v = chanrep.vec(pauli_string(jx, self.n_qubits))
                j += a * np.outer(v, v.conj())
        return j


def pauli_channel(alphas) -> PauliChannel:
    """Build a Pauli channel, validating simplex membership of ``alphas``."""
    alphas = np.asarray(alphas, dtype=float)
    n = alphas.size
    n_qubits = int(round(np.log(n) / np.log(4)))
    if 4**n_qubits != n:
        raise ValueError(f"alphas length must be a power of 4, got {n}")
    if alphas.min() < -SIMPLEX_TOL:
        raise ValueError(f"negative Pauli coefficient {alphas.min():.3g}")
    if abs(alphas.sum() - 1.0) > 1e-8:
        raise ValueError(f"Pauli coefficients sum to {alphas.sum():.6g}, expected 1")
    return PauliChannel(n_qubits=n_qubits, alphas=np.clip(alphas, 0.0, None))


def pattern_groups(n_qubits: int) -> list[list[int]]:
    """Partition of Pauli indices into 2^N groups with equal x-component.

    All members of a group have identical vec-support in the Choi matrix.
    """
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    groups: dict[tuple[int, ...], list[int]] = {}
    for jx in range(4**n_qubits):
        groups.setdefault(_x_bits(jx, n_qubits), []).append(jx)
    return [groups[key] for key in sorted(groups)]


def group_representative(group: list[int], n_qubits: int) -> int:
    """The z = 0 member of a pattern group (I or a pure-X string)."""
    digits = [1 if bit else 0 for bit in _x_bits(group[0], n_qubits)]
    rep = 0
    for dig in digits:
        rep = rep * 4 + dig
    return rep


def analytic_reduce(channel: PauliChannel) -> PauliChannel:
    """Collapse each pattern group onto its representative string.

    The output is in the same spoofing class (exactly) and has Kraus rank
    at most 2^N.
    """
    out = np.zeros_like(channel.alphas)
    for group in pattern_groups(channel.n_qubits):
        rep = group_representative(group, channel.n_qubits)
        out[rep] = channel.alphas[group].sum()
    return PauliChannel(n_qubits=channel.n_qubits, alphas=out)


def pauli_type1(alphas, beta: float) -> np.ndarray:
    """One-qubit Type-I spoof: scale both coefficient differences by ``beta``.

    Solves ``alpha_0 - alpha_3 -> beta (alpha_0 - alpha_3)`` and
    ``alpha_1 - alpha_2 -> beta (alpha_1 - alpha_2)`` with both pairwise
    sums preserved; stays on the simplex whenever ``|beta| <= 1``.
    """
    a = np.asarray(alphas, dtype=float)
    if a.size != 4:
        raise ValueError("Type-I Pauli transform is defined for one qubit (4 alphas)")
    if abs(beta) > 1:
        raise ValueError(f"|beta| must be at most 1, got {beta}")
    s03, d03 = a[0] + a[3], a[0] - a[3]
    s12, d12 = a[1] + a[2], a[1] - a[2]
    return np.array(
        [
            (s03 + beta * d03) / 2,
            (s12 + beta * d12) / 2,
            (s12 - beta * d12) / 2,
            (s03 - beta * d03) / 2,
        ]
    )


def pauli_type2(alphas, beta: float, gamma: float) -> np.ndarray:
    """One-qubit Type-II spoof by coefficient increments.

    ``alpha' = (a0 + gamma/2, a1 + beta/2, a2 - beta/2, a3 - gamma/2)``.
    Raises ValueError on simplex violation; clipping to the feasible
    rectangle (see :func:`type2_feasible_region`) is the caller's job.
    """
    a = np.asarray(alphas, dtype=float)
    if a.size != 4:
        raise ValueError("Type-II Pauli transform is defined for one qubit (4 alphas)")
    out = a + np.array([gamma / 2, beta / 2, -beta / 2, -gamma / 2])
    if out.min() < -SIMPLEX_TOL:
        raise ValueError(
            f"transform leaves the probability simplex (min coefficient {out.min():.3g})"
        )
    return np.clip(out, 0.0, None)


def type2_feasible_region(alphas) -> tuple[tuple[float, float], tuple[float, float]]:
    """The (beta, gamma) increment rectangle keeping the simplex valid."""
    a = np.asarray(alphas, dtype=float)
    return (-2 * a[1], 2 * a[2]), (-2 * a[0], 2 * a[3])


# Regular-tetrahedron embedding of the one-qubit Pauli simplex: signed
# corners of the cube, one per Pauli vertex, in the order (I, X, Y, Z).
TETRA_VERTICES = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
)


def embed(alphas) -> np.ndarray:
    """Barycentric-to-3D embedding of a one-qubit Pauli channel."""
    return np.asarray(alphas, dtype=float) @ TETRA_VERTICES


def tetrahedron_data(alphas, resolution: int = 25) -> list[tuple]:
    """Plot dataset for the one-qubit spoofing geometry.

    Rows are ``(label, a0, a1, a2, a3, x, y, z)`` covering: the original
    channel, the Type-I line over beta in [-1, 1], the Type-II plane over
    the feasible increment rectangle, the line of Type-I-invariant channels
    joining the (I, Z) and (X, Y) balanced mixtures, and the simplex
    vertices.
    """
    a = np.asarray(alphas, dtype=float)
    if a.size != 4:
        raise ValueError("tetrahedron data is defined for one qubit (4 alphas)")
    rows: list[tuple] = []

    def add(label, coeffs):
        x, y, z = embed(coeffs)
        rows.append((label, *np.asarray(coeffs, dtype=float), x, y, z))

    for name, vertex in zip("IXYZ", np.eye(4)):
        add(f"vertex-{name}", vertex)
    add("original", a)
    for beta in np.linspace(-1.0, 1.0, resolution):
        add("type1-line", pauli_type1(a, beta))
    (b_lo, b_hi), (g_lo, g_hi) = type2_feasible_region(a)
    for beta in np.linspace(b_lo, b_hi, resolution):
        for gamma in np.linspace(g_lo, g_hi, resolution):
            add("type2-plane", pauli_type2(a, beta, gamma))
    iz = np.array([0.5, 0.0, 0.0, 0.5])
    xy = np.array([0.0, 0.5, 0.5, 0.0])
    for t in np.linspace(0.0, 1.0, resolution):
        add("invariant-line", (1 - t) * iz + t * xy)
    return rows
