"""File formats: channel files, family descriptors, logs, reports, manifests.

Complex numbers are encoded as ``[re, im]`` pairs of IEEE doubles; matrices
are row-major nested lists.  JSON round-trips doubles exactly via Python's
shortest-representation float printing.  All writes are atomic (temp file +
rename in the target directory).
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from typing import Callable

import numpy as np

import chanspoof

REPRESENTATIONS = ("kraus", "choi", "superop")


def _atomic_write(path: str, writer: Callable) -> None:
    """Write via ``writer(file_object)`` to a temp file, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer(fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _encode_matrix(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def _decode_matrix(data) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data])


def save_channel(path: str, dim: int, representation: str, entries) -> None:
    """Write a channel file {dim, representation, entries}.

    ``entries`` is a list of Kraus matrices for ``kraus``, or a single
    d^2 x d^2 matrix for ``choi`` / ``superop``.
    """
    if representation not in REPRESENTATIONS:
        raise ValueError(f"representation must be one of {REPRESENTATIONS}")
    if representation == "kraus":
        encoded = [_encode_matrix(k) for k in entries]
    else:
        encoded = _encode_matrix(entries)
    doc = {"dim": int(dim), "representation": representation, "entries": encoded}
    _atomic_write(path, lambda fh: json.dump(doc, fh, indent=1))


def load_channel(path: str) -> tuple[int, str, object]:
    """Read a channel file; returns (dim, representation, entries)."""
    with open(path) as fh:
        doc = json.load(fh)
    dim = int(doc["dim"])
    rep = doc["representation"]
    if rep not in REPRESENTATIONS:
        raise ValueError(f"unknown representation {rep!r} in {path}")
    if rep == "kraus":
        entries = [_decode_matrix(k) for k in doc["entries"]]
        for k in entries:
            if k.shape != (dim, dim):
                raise ValueError(f"Kraus operator shape {k.shape} does not match dim {dim}")
    else:
        entries = _decode_matrix(doc["entries"])
        if entries.shape != (dim * dim, dim * dim):
            raise ValueError(f"matrix shape {entries.shape} does not match dim {dim}")
    return dim, rep, entries


def load_channel_as_choi(path: str) -> tuple[int, np.ndarray]:
    """Read a channel file and convert its contents to a Choi matrix."""
    from chanspoof import chanrep

    dim, rep, entries = load_channel(path)
    if rep == "kraus":
        return dim, chanrep.kraus_to_choi(entries)
    if rep == "superop":
        return dim, chanrep.reshuffle(entries)
    return dim, entries


def save_family(path: str, dim: int, mode: str, fixed_blocks) -> None:
    """Write a Type-II family descriptor {dim, mode, fixed_blocks}."""
    doc = {
        "dim": int(dim),
        "mode": mode,
        "fixed_blocks": [_encode_matrix(b) for b in fixed_blocks],
    }
    _atomic_write(path, lambda fh: json.dump(doc, fh, indent=1))


def load_family(path: str) -> tuple[int, str, list[np.ndarray]]:
    with open(path) as fh:
        doc = json.load(fh)
    return (
        int(doc["dim"]),
        doc["mode"],
        [_decode_matrix(b) for b in doc["fixed_blocks"]],
    )


def write_convergence_log(path: str, trace) -> None:
    """CSV convergence log: header with d and mode, then one row per
    iteration: index, descending eigenvalues, pivot."""
    d = trace.dim

    def writer(fh):
        w = csv.writer(fh)
        w.writerow([f"d={d}", f"mode={trace.mode}"])
        w.writerow(
            ["iteration"] + [f"lambda_{i + 1}" for i in range(d * d)] + ["pivot"]
        )
        for it, (eigs, pivot) in enumerate(zip(trace.eigenvalues, trace.pivots)):
            w.writerow([it] + [repr(float(x)) for x in eigs] + [repr(float(pivot))])

    _atomic_write(path, writer)


def write_detection_report(path: str, result) -> None:
    """Structured detection report with per-comparison statistics."""
    doc = {
        "statistic": float(result.statistic),
        "threshold": float(result.threshold),
        "detected": bool(result.detected),
        "bases_used": int(result.bases_used),
        "shots_per_basis": int(result.shots_per_basis),
        "exact_deviation": float(result.exact_deviation),
        "per_comparison": [
            {"label": label, "statistic": float(s), "threshold": float(t)}
            for label, s, t in result.per_comparison
        ],
    }
    _atomic_write(path, lambda fh: json.dump(doc, fh, indent=1))


def write_dataset(path: str, header: list[str], rows) -> None:
    """Delimiter-separated dataset with a header row."""

    def writer(fh):
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow(
                [x if isinstance(x, str) else repr(float(x)) for x in row]
            )

    _atomic_write(path, writer)


def write_manifest(output_path: str, subcommand: str, params: dict) -> str:
    """Write a run manifest next to ``output_path``; returns its path."""
    manifest_path = output_path + ".manifest.json"
    doc = {
        "tool": "chanspoof",
        "version": chanspoof.__version__,
        "subcommand": subcommand,
        "params": params,
        "output": os.path.basename(output_path),
    }
    _atomic_write(manifest_path, lambda fh: json.dump(doc, fh, indent=1))
    return manifest_path
