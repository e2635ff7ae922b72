"""Deterministic per-component seeds derived from one run seed."""

from __future__ import annotations

import hashlib


def derive_seed(seed: int, *labels) -> int:
    """63-bit seed for the component named by ``labels`` under ``seed``."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(seed)).encode())
    for label in labels:
        h.update(b"\x00" + str(label).encode())
    return int.from_bytes(h.digest(), "big") >> 1
