"""Matplotlib rendering of the datasets emitted by the CLI."""

from __future__ import annotations

import itertools

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from chanspoof.pauli import TETRA_VERTICES


def convergence_figure(trace, path: str) -> None:
    """Semilog plot of the Choi eigenvalues per iteration.

    The d retained eigenvalues plateau while the rest decay exponentially;
    the pivot lambda_{d+1} is highlighted.
    """
    d = trace.dim
    eigs = np.array(trace.eigenvalues)
    floor = 1e-18
    fig, ax = plt.subplots(figsize=(7, 4.5))
    its = np.arange(eigs.shape[0])
    for i in range(eigs.shape[1]):
        color = "tab:blue" if i < d else "0.7"
        ax.semilogy(its, np.clip(eigs[:, i], floor, None), color=color, lw=0.6)
    ax.semilogy(its, np.clip(eigs[:, d], floor, None), color="tab:red", lw=1.5,
                label=rf"pivot $\lambda_{{{d + 1}}}$")
    ax.set_xlabel("iteration")
    ax.set_ylabel("Choi eigenvalue")
    ax.set_title(f"rank minimization, d={d}, mode={trace.mode}")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def tetrahedron_figure(rows, path: str) -> None:
    """3D rendering of the one-qubit spoofing geometry dataset."""
    fig = plt.figure(figsize=(6.5, 6))
    ax = fig.add_subplot(projection="3d")
    for i, j in itertools.combinations(range(4), 2):
        seg = TETRA_VERTICES[[i, j]]
        ax.plot(seg[:, 0], seg[:, 1], seg[:, 2], color="0.75", lw=0.8)
    by_label: dict[str, list] = {}
    for row in rows:
        label = str(row[0])
        key = "vertex" if label.startswith("vertex") else label
        by_label.setdefault(key, []).append(row[5:8])
    styles = {
        "type2-plane": dict(color="#869cbd", s=4, alpha=0.35, label="Type-II plane"),
        "type1-line": dict(color="#85413b", s=12, label="Type-I line"),
        "invariant-line": dict(color="black", s=12, label="invariant line"),
        "original": dict(color="#c9872d", s=70, label="original channel"),
        "vertex": dict(color="0.3", s=25),
    }
    order = ["type2-plane", "type1-line", "invariant-line", "original", "vertex"]
    for label in order:
        pts = np.array(by_label.get(label, []))
        if pts.size:
            ax.scatter(pts[:, 0], pts[:, 1], pts[:, 2], **styles[label])
    for name, v in zip("IXYZ", TETRA_VERTICES):
        ax.text(*v * 1.08, name)
    ax.legend(loc="upper left", fontsize=8)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def detection_figure(result, path: str) -> None:
    """Per-comparison statistic vs threshold for a detection run."""
    stats = [s for _, s, _ in result.per_comparison]
    thresholds = [t for _, _, t in result.per_comparison]
    x = np.arange(len(stats))
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(x, stats, ".", ms=3, label="empirical TVD")
    ax.plot(x, thresholds, color="tab:red", lw=0.8, label="threshold")
    ax.set_xlabel("comparison")
    ax.set_ylabel("total variation distance")
    ax.set_title("detected" if result.detected else "not detected")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
