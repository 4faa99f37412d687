"""Spoofing equivalence classes of quantum channels under fixed-basis measurement.

A channel's computational-basis outcome distributions are determined by the
diagonal d x d blocks of its Choi matrix.  Channels sharing those blocks form
an equivalence class ("spoofing class") whose members can have Kraus rank
anywhere from d to d^2.  This package constructs and verifies such classes,
finds a minimal-rank member via alternating projections (analytically for
Pauli channels), and runs shot-based detection experiments.
"""

__version__ = "0.1.0"

from chanspoof import chanrep, detect, pauli, rankmin, serialize, spoofing

__all__ = ["chanrep", "spoofing", "rankmin", "pauli", "detect", "serialize"]
