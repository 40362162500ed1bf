"""Named affine-structure families on concrete groups."""

from __future__ import annotations

import numpy as np

from .affine import AffineStructure, trivial_structure
from .errors import InputError
from .groups import (FiniteGroup, direct_product, is_idempotent_endomorphism, make_cyclic,
                     make_symmetric)

__all__ = [
    "trivial_structure", "inverse_translation", "constant_endomorphism", "conjugation",
    "sign_flip", "parity_twist", "parity_twist_squared", "parity_projection",
    "c2_times_s3", "c2_s3_parity_endomorphism",
]


def inverse_translation(G: FiniteGroup) -> AffineStructure:
    """sigma_a(b) = a^- o b."""
    return AffineStructure(G, G.table[G.inverse], name="inverse-translation")


def constant_endomorphism(G: FiniteGroup, f) -> AffineStructure:
    """sigma_a = f for an idempotent endomorphism f."""
    f = np.asarray(f, dtype=np.int64)
    if not is_idempotent_endomorphism(G, f):
        raise InputError("f must be an idempotent endomorphism")
    return AffineStructure(G, np.tile(f, (G.order, 1)), name="constant-endomorphism")


def conjugation(G: FiniteGroup, f) -> AffineStructure:
    """sigma_a(b) = f(a)^- o b o f(a) for an idempotent endomorphism f."""
    f = np.asarray(f, dtype=np.int64)
    if not is_idempotent_endomorphism(G, f):
        raise InputError("f must be an idempotent endomorphism")
    t, inv = G.table, G.inverse
    sigma = t[t[inv[f]], f[:, None]]
    return AffineStructure(G, sigma, name="conjugation")


def _even_cyclic(m: int) -> FiniteGroup:
    if m < 2 or m % 2:
        raise InputError(f"needs an even cyclic order, got {m}")
    return make_cyclic(m)


def sign_flip(m: int) -> AffineStructure:
    """On C_m, m even: sigma_{g^k}(g^l) = g^{(-1)^k l}."""
    G = _even_cyclic(m)
    k = np.arange(m)[:, None]
    l = np.arange(m)[None, :]
    return AffineStructure(G, np.where(k % 2 == 0, l, -l) % m, name=f"sign-flip@C{m}")


def parity_twist(m: int) -> AffineStructure:
    """On C_m, m even: sigma_{g^k}(g^l) = g^{k(-1 + (-1)^l) + l}."""
    G = _even_cyclic(m)
    k = np.arange(m)[:, None]
    l = np.arange(m)[None, :]
    return AffineStructure(G, (k * np.where(l % 2 == 0, 0, -2) + l) % m, name=f"parity-twist@C{m}")


def parity_twist_squared(m: int) -> AffineStructure:
    """omega_{g^k}^2 for the parity twist omega, written out directly."""
    G = _even_cyclic(m)
    k = np.arange(m)[:, None]
    l = np.arange(m)[None, :]
    # omega preserves the parity of l, so squaring doubles the shift on odd l
    return AffineStructure(G, (l - 4 * k * (l % 2)) % m, name=f"parity-twist^2@C{m}")


def c2_times_s3() -> FiniteGroup:
    return direct_product(make_cyclic(2), make_symmetric(3), name="C2xS3")


def _s3_parity() -> np.ndarray:
    S3 = make_symmetric(3)
    # transpositions are exactly the involutions of S3
    return np.array([0 if (o != 2) else 1 for o in S3.element_orders])


def c2_s3_parity_endomorphism() -> np.ndarray:
    """f(x^i, pi) = (x^{parity(pi)}, pi) on C2 x S3."""
    par = _s3_parity()
    return np.array([par[p] * 6 + p for i in range(2) for p in range(6)])


def parity_projection() -> np.ndarray:
    """S3 -> <(1 2)>, pi -> (1 2)^{parity(pi)}: an idempotent endomorphism of S3."""
    S3 = make_symmetric(3)
    t12 = S3.labels.index("(1 2)")
    return np.where(_s3_parity() == 1, t12, 0)
