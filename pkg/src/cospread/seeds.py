"""Deterministic seed derivation.

All randomness in a run flows from one master seed. Subcomponents ask for
named sub-seeds so that, e.g., adding replicates never perturbs the streams
of earlier ones and results do not depend on execution order.

Derivation: ``sha256("cospread|<master>|<part>|<part>...")``, first 8 bytes
little-endian, giving a 64-bit seed for ``numpy.random.default_rng``.
"""

import hashlib


def derive_seed(master: int, *parts) -> int:
    """Return a 64-bit sub-seed for the given master seed and name path."""
    text = "cospread|" + str(int(master)) + "|" + "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")
