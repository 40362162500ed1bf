"""Semi-braces, skew braces and braces on a finite carrier.

A semi-brace stores its multiplicative group and its full addition table.
Every flag is computed from the tables; nothing is declared.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from .affine import AffineStructure
from .errors import AxiomError, Check, ConsistencyError, InputError, first_witness
from .groups import (FiniteGroup, check_group, extend_hom, identify, is_bijective,
                     is_isomorphic)

ISOMORPHISM_BOUND = 64


@dataclass(frozen=True)
class SemiBraceFlags:
    semibrace: bool
    left_cancellative: bool
    skew: bool
    brace: bool
    biskew: bool
    lambda_homomorphic: bool

    def to_dict(self) -> dict:
        return asdict(self)


class SemiBrace:
    def __init__(self, mul: FiniteGroup, add, name: str = ""):
        add = np.array(add, dtype=np.int64)
        n = mul.order
        if add.shape != (n, n):
            raise InputError(f"addition table must be {n}x{n}, got {add.shape}")
        if add.min() < 0 or add.max() >= n:
            raise InputError("addition entries must lie in 0..n-1")
        add.setflags(write=False)
        self.mul = mul
        self.add = add
        self.name = name

    @property
    def order(self) -> int:
        return self.mul.order

    def __repr__(self) -> str:
        return f"SemiBrace({self.name or '?'}, order={self.order})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, SemiBrace) and self.mul == other.mul
                and np.array_equal(self.add, other.add))

    def __hash__(self) -> int:
        return hash((self.mul, self.add.tobytes()))

    @cached_property
    def lam(self) -> np.ndarray:
        """lam[a, b] = a o (a^- + b)."""
        t, inv = self.mul.table, self.mul.inverse
        return t[np.arange(self.order)[:, None], self.add[inv]]

    @cached_property
    def rho(self) -> np.ndarray:
        """rho[b, a] = (a^- + b)^- o b."""
        t, inv = self.mul.table, self.mul.inverse
        s = self.add[inv]                    # s[a, b] = a^- + b
        return t[inv[s.T], np.arange(self.order)[:, None]]

    @cached_property
    def additive_group(self) -> FiniteGroup | None:
        """(B, +) as a group with identity 0, or None."""
        e = self.mul.identity
        ar = np.arange(self.order)
        if not (np.array_equal(self.add[e], ar) and np.array_equal(self.add[:, e], ar)):
            return None
        if not check_group(self.add):
            return None
        return FiniteGroup(self.add, name=f"({self.name},+)", labels=self.mul.labels, identity=e)

    @cached_property
    def opposite_of(self) -> np.ndarray | None:
        """-a for every a when (B, +) is a group."""
        G = self.additive_group
        return None if G is None else G.inverse

    @cached_property
    def checks(self) -> dict[str, Check]:
        return semibrace_checks(self)

    @property
    def is_semibrace(self) -> bool:
        return bool(self.checks["add_associative"]) and bool(self.checks["semibrace_identity"])

    @cached_property
    def flags(self) -> SemiBraceFlags:
        rep = self.checks
        semi = self.is_semibrace
        lc = bool(rep["left_cancellative"])
        skew = semi and self.additive_group is not None
        brace = skew and bool(np.array_equal(self.add, self.add.T))
        biskew = skew and bool(is_biskew(self))
        lh = skew and bool(is_lambda_homomorphic(self))
        return SemiBraceFlags(semi, lc, skew, brace, biskew, lh)

    def to_json(self) -> dict:
        return {"schema": "affine-lab/semibrace@1", "name": self.name, "order": self.order,
                "mul": self.mul.table.tolist(), "add": self.add.tolist(),
                "labels": list(self.mul.labels)}


# --------------------------------------------------------------- axioms

def semibrace_checks(S: SemiBrace) -> dict[str, Check]:
    t, inv, add = S.mul.table, S.mul.inverse, S.add
    n = S.order
    e = S.mul.identity
    out = {"add_associative": first_witness("add_associative", add[add] != add[:, add])}
    # a o (b + c) == a o b + a o (a^- + c)
    lhs = t[np.arange(n)[:, None, None], add[None, :, :]]
    right = t[np.arange(n)[:, None], add[inv]]             # a o (a^- + c), [a, c]
    rhs = add[t[:, :, None], right[:, None, :]]
    out["semibrace_identity"] = first_witness("semibrace_identity", lhs != rhs)
    lc_bad = [a for a in range(n) if not is_bijective(add[a])]
    if lc_bad:
        a = lc_bad[0]
        row = add[a].tolist()
        b = next(i for i in range(n) if row.count(row[i]) > 1)
        c = next(j for j in range(b + 1, n) if row[j] == row[b])
        out["left_cancellative"] = Check("left_cancellative", False, (a, b, c))
    else:
        out["left_cancellative"] = Check("left_cancellative", True)
    out["zero_idempotent"] = Check("zero_idempotent", int(add[e, e]) == e)
    out["zero_left_identity"] = first_witness("zero_left_identity", add[e] != np.arange(n))
    ag = S.additive_group
    out["additive_group"] = Check("additive_group", ag is not None)
    if ag is not None:
        # a o (b + c) == a o b - a + a o c
        neg = ag.inverse
        rhs2 = add[add[t[:, :, None], neg[:, None, None]], t[:, None, :]]
        skew = first_witness("skew_identity", lhs != rhs2)
        if bool(skew) != bool(out["semibrace_identity"]):
            raise ConsistencyError("(*) and (**) disagree on a skew candidate")
        out["skew_identity"] = skew
    return out


def verify_semibrace(mul: FiniteGroup, add, name: str = "") -> SemiBrace:
    S = SemiBrace(mul, add, name)
    rep = S.checks
    for key in ("add_associative", "semibrace_identity"):
        if not rep[key]:
            raise AxiomError(rep[key])
    if not rep["zero_idempotent"]:
        raise ConsistencyError("0 + 0 != 0 in a verified semi-brace")
    if rep["left_cancellative"] and not rep["zero_left_identity"]:
        raise ConsistencyError("0 is not a left identity in a left cancellative semi-brace")
    return S


# ---------------------------------------------------- affine correspondence

def from_affine(A: AffineStructure, name: str = "") -> SemiBrace:
    """a + b := a o sigma_a(b)."""
    G = A.group
    add = G.table[np.arange(G.order)[:, None], A.sigma]
    S = verify_semibrace(G, add, name=name or f"B[{A.name}]")
    f = A.flags
    if f.cancellative and not S.flags.left_cancellative:
        raise ConsistencyError("cancellative structure gave a non-cancellative semi-brace")
    if f.groupal:
        if not S.flags.skew:
            raise ConsistencyError("groupal structure gave a non-skew semi-brace")
        inv = G.inverse
        expected = A.sigma[inv, inv]               # -a = sigma_{a^-}(a^-)
        if not np.array_equal(S.opposite_of, expected):
            raise ConsistencyError("additive opposite differs from sigma_{a^-}(a^-)")
    return S


def to_affine(S: SemiBrace, name: str = "") -> AffineStructure:
    """sigma_a = lambda_{a^-}."""
    A = AffineStructure(S.mul, S.lam[S.mul.inverse], name=name or f"sigma[{S.name}]")
    if not A.flags.valid:
        raise ConsistencyError(f"semi-brace produced an invalid affine structure: {A.flags}")
    if A.flags.cancellative != S.flags.left_cancellative or A.flags.groupal != S.flags.skew:
        raise ConsistencyError("flag correspondence broken between semi-brace and affine structure")
    return A


# ---------------------------------------------------------- lambda / rho

@dataclass
class LambdaRho:
    lam: np.ndarray
    rho: np.ndarray
    properties: dict[str, bool]
    expected: dict[str, bool]

    @property
    def consistent(self) -> bool:
        return all(self.properties[k] for k, v in self.expected.items() if v)


def lambda_rho(S: SemiBrace) -> LambdaRho:
    lam, rho, add, t = S.lam, S.rho, S.add, S.mul.table
    n = S.order
    ar = np.arange(n)
    props = {
        # lambda_a(b + c) == lambda_a(b) + lambda_a(c)
        "lambda_endomorphism": bool(np.array_equal(
            lam[ar[:, None, None], add[None, :, :]], add[lam[:, :, None], lam[:, None, :]])),
        # lambda_{a o b} == lambda_a o lambda_b
        "lambda_homomorphism": bool(np.array_equal(lam[t], lam[ar[:, None, None], lam[None, :, :]])),
        "lambda_bijective": all(is_bijective(r) for r in lam),
        # rho_{a o b} == rho_b o rho_a
        "rho_anti_homomorphism": bool(np.array_equal(rho[t], rho[ar[None, :, None], rho[:, None, :]])),
        "rho_bijective": all(is_bijective(r) for r in rho),
    }
    f = S.flags
    expected = {"lambda_endomorphism": True, "lambda_homomorphism": True,
                "lambda_bijective": f.left_cancellative, "rho_anti_homomorphism": f.left_cancellative,
                "rho_bijective": f.skew}
    return LambdaRho(lam, rho, props, expected)


# --------------------------------------------------------------- bi-skew

def _require_skew(S: SemiBrace) -> None:
    if S.additive_group is None or not S.is_semibrace:
        raise InputError("operation needs a skew brace")


def biskew_checks(S: SemiBrace) -> dict[str, Check]:
    _require_skew(S)
    t, inv, add, lam = S.mul.table, S.mul.inverse, S.add, S.lam
    neg = S.opposite_of
    n = S.order
    ar = np.arange(n)
    # lambda_a(b o c) == lambda_a(b) o lambda_a(c)
    aut = first_witness("lambda_automorphism", lam[:, t] != t[lam[:, :, None], lam[:, None, :]])
    lhs = add[ar[:, None, None], t[None, :, :]]            # a + b o c
    ab = add[:, :, None]
    ac = add[:, None, :]
    star1 = first_witness("biskew_star1", lhs != t[t[ab, inv[ar][:, None, None]], ac])
    # (a + b) o (a + (-a) o c)
    star2 = first_witness("biskew_star2", lhs != t[ab, add[ar[:, None], t[neg]][:, None, :]])
    sigma = lam[inv]
    # sigma_{a + b} == sigma_{b o a}
    cor = first_witness("sigma_add_eq_sigma_swapped_mul", (sigma[add] != sigma[t.T]).any(axis=2))
    answers = {bool(aut), bool(star1), bool(star2), bool(cor)}
    if len(answers) != 1:
        raise ConsistencyError(f"bi-skew criteria disagree: {aut}, {star1}, {star2}, {cor}")
    return {"lambda_automorphism": aut, "star1": star1, "star2": star2, "sigma_sum_rule": cor}


def is_biskew(S: SemiBrace) -> Check:
    """lambda_a in Aut(B, o) for all a; cross-checked against the other three criteria."""
    checks = biskew_checks(S)
    aut = checks["lambda_automorphism"]
    if aut:
        sigma = S.lam[S.mul.inverse]
        if not np.array_equal(sigma[S.mul.inverse], sigma[S.opposite_of]):
            raise ConsistencyError("bi-skew brace with sigma_{a^-} != sigma_{-a}")
    return Check("biskew", aut.ok, aut.witness)


def biskew_dual_affine(S: SemiBrace) -> AffineStructure:
    """psi_a = lambda_a as a groupal affine structure on (B, +)."""
    if not is_biskew(S):
        raise InputError("biskew_dual_affine needs a bi-skew brace")
    psi = AffineStructure(S.additive_group, S.lam, name=f"psi[{S.name}]")
    if not psi.flags.valid or not psi.flags.groupal:
        raise ConsistencyError(f"dual of a bi-skew brace is not groupal affine: {psi.flags}")
    swapped = from_affine(psi)
    if not np.array_equal(swapped.add, S.mul.table) or not swapped.flags.skew:
        raise ConsistencyError("swapped structure (B, +, o) is not the expected skew brace")
    return psi


def swapped(S: SemiBrace) -> SemiBrace:
    """(B, +, o): the old addition becomes the multiplication."""
    _require_skew(S)
    return verify_semibrace(S.additive_group, S.mul.table, name=f"swap[{S.name}]")


def is_lambda_homomorphic(S: SemiBrace) -> Check:
    """lambda_{a + b} == lambda_a o lambda_b; witness (a, b, c) with c the evaluation point."""
    _require_skew(S)
    lam, add = S.lam, S.add
    ar = np.arange(S.order)
    return first_witness("lambda_homomorphic",
                         lam[add] != lam[ar[:, None, None], lam[None, :, :]])


def opposite(S: SemiBrace) -> SemiBrace:
    _require_skew(S)
    out = verify_semibrace(S.mul, S.add.T, name=f"op[{S.name}]")
    if not out.flags.skew:
        raise ConsistencyError("opposite of a skew brace is not skew")
    return out


# ----------------------------------------------------------- isomorphism

def _add_profile(S: SemiBrace) -> tuple:
    """Cheap invariant: per element (mul order, a + a == a o a, |{b : a + b == a o b}|)."""
    t, add = S.mul.table, S.add
    rows = [(int(S.mul.element_orders[a]), int(add[a, a] == t[a, a]), int((add[a] == t[a]).sum()))
            for a in range(S.order)]
    return tuple(sorted(rows))


def isomorphic(S: SemiBrace, T: SemiBrace, bound: int = ISOMORPHISM_BOUND) -> np.ndarray | None:
    """A bijection preserving both operations, or None."""
    if S.order != T.order:
        return None
    if S.order > bound:
        raise InputError(f"semi-brace isomorphism search limited to order <= {bound}")
    if S.mul.profile() != T.mul.profile() or _add_profile(S) != _add_profile(T):
        return None
    G, H = S.mul, T.mul
    gens = G.generators
    choices = [[h for h in range(H.order) if H.element_orders[h] == G.element_orders[s]]
               for s in gens]
    for imgs in itertools.product(*choices):
        f = extend_hom(G, H, gens, imgs)
        if f is None or not is_bijective(f):
            continue
        if np.array_equal(f[S.add], T.add[f[:, None], f[None, :]]):
            return f
    return None


# ---------------------------------------------------------------- report

@dataclass
class AdditiveReport:
    is_group: bool
    abelian: bool
    iso_type: str | None

    def to_dict(self) -> dict:
        return asdict(self)


def additive_report(S: SemiBrace) -> AdditiveReport:
    ag = S.additive_group
    commutative = bool(np.array_equal(S.add, S.add.T))
    if ag is None:
        return AdditiveReport(False, commutative, None)
    return AdditiveReport(True, commutative, identify(ag))


def additive_isomorphic_to(S: SemiBrace, H: FiniteGroup) -> bool:
    ag = S.additive_group
    return ag is not None and is_isomorphic(ag, H)


def trivial_skew_brace(G: FiniteGroup) -> SemiBrace:
    return verify_semibrace(G, G.table, name=f"trivial[{G.name}]")


def almost_trivial_skew_brace(G: FiniteGroup) -> SemiBrace:
    return verify_semibrace(G, G.table.T, name=f"almost-trivial[{G.name}]")
