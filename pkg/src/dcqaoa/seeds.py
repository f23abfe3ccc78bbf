"""Deterministic seed derivation.

Every stochastic step draws from a seed derived by hashing the master seed
together with a stable description of the step, so results are identical
across runs, recursion orders, and thread schedules.
"""

import hashlib


def derive_seed(*parts) -> int:
    """Hash the given parts into a non-negative 63-bit seed."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1
