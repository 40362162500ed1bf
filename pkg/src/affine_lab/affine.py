"""Affine structures on a finite group.

``sigma[a, b]`` stores sigma_a(b). The anti-homomorphism law reads

    sigma_{a o b} = sigma_b o sigma_a,   i.e.  sigma[a*b, x] == sigma[b, sigma[a, x]]

so sigma_a is applied first. This is the only reading under which the
identity sigma_{a o b} sigma_{a^-} = sigma_b, used when the associated
semi-brace is shown to satisfy its defining law, holds; the
semibrace round-trip tests pin it down.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from .errors import AxiomError, Check, ConsistencyError, InputError, first_witness
from .groups import (FiniteGroup, GroupHom, automorphisms, identity_map, inverse_map,
                     is_bijective)


@dataclass(frozen=True)
class Flags:
    anti_hom: bool
    affine: bool
    cancellative: bool
    groupal: bool
    abelian: bool

    @property
    def valid(self) -> bool:
        return self.anti_hom and self.affine

    def to_dict(self) -> dict:
        return {**asdict(self), "valid": self.valid}


class AffineStructure:
    """A group together with a full sigma table. Flags are computed on demand."""

    def __init__(self, group: FiniteGroup, sigma, name: str = ""):
        sigma = np.array(sigma, dtype=np.int64)
        n = group.order
        if sigma.shape != (n, n):
            raise InputError(f"sigma table must be {n}x{n}, got {sigma.shape}")
        if sigma.min() < 0 or sigma.max() >= n:
            raise InputError("sigma entries must lie in 0..n-1")
        sigma.setflags(write=False)
        self.group = group
        self.sigma = sigma
        self.name = name

    @property
    def order(self) -> int:
        return self.group.order

    def __repr__(self) -> str:
        return f"AffineStructure({self.name or '?'} on {self.group.name or '?'})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, AffineStructure) and self.group == other.group
                and np.array_equal(self.sigma, other.sigma))

    def __hash__(self) -> int:
        return hash((self.group, self.sigma.tobytes()))

    def key(self) -> tuple[int, ...]:
        return tuple(self.sigma.ravel().tolist())

    @cached_property
    def flags(self) -> Flags:
        return classify(self)

    def to_json(self) -> dict:
        return {"schema": "affine-lab/affine@1", "name": self.name,
                "group": self.group.to_json(), "sigma": self.sigma.tolist()}


def verify_affine(group: FiniteGroup, sigma, name: str = "") -> AffineStructure:
    A = AffineStructure(group, sigma, name)
    for check in (check_anti_hom(A), check_affine_identity(A)):
        if not check:
            raise AxiomError(check)
    return A


# ----------------------------------------------------------------- checks

def check_anti_hom(A: AffineStructure) -> Check:
    """sigma_{a o b}(x) == sigma_b(sigma_a(x)); witness (a, b, x)."""
    s, t = A.sigma, A.group.table
    n = A.order
    lhs = s[t]                                   # [a, b, x] -> sigma_{ab}(x)
    rhs = s[np.arange(n)[None, :, None], s[:, None, :]]  # sigma_b(sigma_a(x))
    return first_witness("anti_hom", lhs != rhs)


def check_affine_identity(A: AffineStructure) -> Check:
    """sigma_a(b o sigma_b(c)) == sigma_a(b) o sigma_{sigma_a(b)}(sigma_a(c)); witness (a, b, c)."""
    s, t = A.sigma, A.group.table
    bc = t[np.arange(A.order)[:, None], s]       # b o sigma_b(c)
    lhs = s[:, bc]                               # [a, b, c]
    sab = s[:, :, None]
    sac = s[:, None, :]
    rhs = t[sab, s[sab, sac]]
    return first_witness("affine_identity", lhs != rhs)


def check_abelian_identity(A: AffineStructure) -> Check:
    """a o sigma_a(b) == b o sigma_b(a); witness (a, b)."""
    t = A.group.table
    add = t[np.arange(A.order)[:, None], A.sigma]
    return first_witness("abelian_identity", add != add.T)


def check_sigma0_fixes_zero(A: AffineStructure) -> bool:
    e = A.group.identity
    return int(A.sigma[e, e]) == e


def classify(A: AffineStructure) -> Flags:
    e = A.group.identity
    cancellative = all(is_bijective(row) for row in A.sigma)
    groupal = cancellative and bool((A.sigma[:, e] == e).all())
    abelian = cancellative and bool(check_abelian_identity(A))
    return Flags(anti_hom=bool(check_anti_hom(A)), affine=bool(check_affine_identity(A)),
                 cancellative=cancellative, groupal=groupal, abelian=abelian)


# ------------------------------------------------------------ morphisms

def _images(f) -> np.ndarray:
    return f.images if isinstance(f, GroupHom) else np.asarray(f, dtype=np.int64)


def transport(A: AffineStructure, f: GroupHom) -> AffineStructure:
    """phi_u = f sigma_{f^-1(u)} f^-1 on the target group of the isomorphism f."""
    if not isinstance(f, GroupHom):
        raise InputError("transport needs a GroupHom")
    if f.source != A.group:
        raise InputError("isomorphism source differs from the structure's group")
    if not f.is_bijective:
        raise InputError("transport needs a bijective homomorphism")
    fi = inverse_map(f.images)
    phi = f.images[A.sigma[fi][:, fi]]
    return AffineStructure(f.target, phi, name=A.name)


def is_homomorphic_via(A: AffineStructure, B: AffineStructure, f) -> Check:
    """phi_{f(a)}(f(x)) == f(sigma_a(x)) for all a, x; witness (a, x)."""
    f = _images(f)
    lhs = B.sigma[f[:, None], f[None, :]]
    rhs = f[A.sigma]
    return first_witness("homomorphic_via", lhs != rhs)


def _act(sigma: np.ndarray, f: np.ndarray) -> np.ndarray:
    fi = inverse_map(f)
    return f[sigma[fi][:, fi]]


@dataclass
class EquivalenceClass:
    representative: AffineStructure
    members: list[int]
    orbit_size: int


def canonical_sigma(A: AffineStructure, auts: list[np.ndarray] | None = None) -> np.ndarray:
    """Lexicographically least sigma table in the Aut(G)-orbit of A."""
    if auts is None:
        auts = automorphisms(A.group)
    best = None
    for f in auts:
        cand = _act(A.sigma, f)
        if best is None or cand.ravel().tolist() < best.ravel().tolist():
            best = cand
    return best


def equivalence_classes(structures: list[AffineStructure]) -> list[EquivalenceClass]:
    """Partition by the Aut(G)-action; classes sorted by canonical table."""
    if not structures:
        return []
    G = structures[0].group
    if any(A.group != G for A in structures):
        raise InputError("all structures must live on the same group")
    auts = automorphisms(G)
    groups: dict[tuple, list[int]] = {}
    canon: dict[tuple, np.ndarray] = {}
    orbit: dict[tuple, int] = {}
    for i, A in enumerate(structures):
        images = {}
        for f in auts:
            img = _act(A.sigma, f)
            images[img.tobytes()] = img
        best = min(images.values(), key=lambda s: s.ravel().tolist())
        key = tuple(best.ravel().tolist())
        groups.setdefault(key, []).append(i)
        canon[key] = best
        orbit[key] = len(images)
    return [EquivalenceClass(AffineStructure(G, canon[k], name=f"class{j}"), groups[k], orbit[k])
            for j, k in enumerate(sorted(groups))]


# ----------------------------------------------------------- composition

def composition_conditions(phi: AffineStructure, omega: AffineStructure) -> dict[str, Check]:
    """Evaluate (c1), (c2) and, for cancellative inputs, (c2').

    (c2) at (a, b) is (c2') at (a, omega_a(b)), so when both inputs are
    cancellative the two are compared pair by pair under that reindexing.
    """
    if phi.group != omega.group:
        raise InputError("phi and omega must share a group")
    G = phi.group
    t, inv = G.table, G.inverse
    P, W = phi.sigma, omega.sigma
    n = G.order
    # (c1) phi_a omega_b == omega_b phi_a, witness (a, b, x)
    lhs = P[np.arange(n)[:, None, None], W[None, :, :]]     # phi_a(omega_b(x))
    rhs = W[np.arange(n)[None, :, None], P[:, None, :]]     # omega_b(phi_a(x))
    c1 = first_witness("c1", lhs != rhs)
    # (c2) phi_{b o omega_a(b)^-} == omega_{phi_a omega_a(b) o omega_a(b)^-}, witness (a, b)
    w = W                                         # w[a, b] = omega_a(b)
    left = t[np.arange(n)[None, :], inv[w]]
    right = t[P[np.arange(n)[:, None], w], inv[w]]
    c2_bad = (P[left] != W[right]).any(axis=2)
    out = {"c1": c1, "c2": first_witness("c2", c2_bad)}
    if phi.flags.cancellative and omega.flags.cancellative:
        # (c2') phi_{omega_{a^-}(b) o b^-} == omega_{phi_a(b) o b^-}
        left2 = t[W[inv][:, :], inv[None, :]]
        right2 = t[P, inv[None, :]]
        c2p_bad = (P[left2] != W[right2]).any(axis=2)
        out["c2'"] = first_witness("c2'", c2p_bad)
        reindexed = c2p_bad[np.arange(n)[:, None], w]
        if not np.array_equal(reindexed, c2_bad):
            raise ConsistencyError("(c2) and (c2') disagree under b -> omega_a(b)")
    return out


class CompositionError(Exception):
    def __init__(self, conditions: dict[str, Check]):
        failed = [c for c in conditions.values() if not c]
        super().__init__("; ".join(str(c) for c in failed))
        self.conditions = conditions


def compose_affine(phi: AffineStructure, omega: AffineStructure, name: str = "") -> AffineStructure:
    """sigma_a = phi_a o omega_a, after checking (c1) and (c2); re-verified in full."""
    conds = composition_conditions(phi, omega)
    if not all(conds.values()):
        raise CompositionError(conds)
    sigma = phi.sigma[np.arange(phi.order)[:, None], omega.sigma]
    A = AffineStructure(phi.group, sigma, name=name or f"{phi.name}*{omega.name}")
    if not A.flags.valid:
        raise ConsistencyError(f"composition passed (c1)/(c2) but is not affine: {A.flags}")
    if phi.flags.groupal and omega.flags.groupal and not A.flags.groupal:
        raise ConsistencyError("composition of groupal structures is not groupal")
    return A


def trivial_structure(G: FiniteGroup) -> AffineStructure:
    return AffineStructure(G, np.tile(identity_map(G.order), (G.order, 1)), name="trivial")
