"""Deterministic seed derivation."""

from __future__ import annotations

import hashlib


def derive_seed(*parts: object) -> int:
    """A 63-bit seed from any sequence of printable parts.

    Uses BLAKE2b rather than ``hash()`` so seeds do not depend on the
    interpreter's string hash randomisation.
    """
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1
