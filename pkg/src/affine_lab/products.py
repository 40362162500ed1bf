"""Zappa-Szep products, matched product systems and the two product constructions.

Pairs (a, u) in S x T are encoded row-major as a*|T| + u, the same layout
:func:`affine_lab.groups.direct_product` uses.

Bar notation inside condition (III): for the pair (b, v) we take
v_bar = beta_b^{-1}(v) and b_bar = alpha_v^{-1}(b), which is what falls out
of expanding (b, v) o sigma_{(b, v)}(c, w) with the product law.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .affine import AffineStructure
from .errors import AxiomError, Check, ConsistencyError, InputError, first_witness
from .groups import FiniteGroup, check_group, identity_map, inverse_map, is_bijective
from .semibrace import SemiBrace, from_affine, isomorphic, verify_semibrace


def _pairs(S: FiniteGroup, T: FiniteGroup, name: str, table: np.ndarray) -> FiniteGroup:
    labels = [f"({S.label(a)},{T.label(u)})" for a in range(S.order) for u in range(T.order)]
    return FiniteGroup(table, name=name, labels=labels)


def _encode(m: int, a, u):
    return a * m + u


# ------------------------------------------------------------------ Zappa

@dataclass(frozen=True, eq=False)
class ZappaSystem:
    """eta[u, a] = ^u a and delta[a, u] = u^a."""

    S: FiniteGroup
    T: FiniteGroup
    eta: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        eta = np.array(self.eta, dtype=np.int64)
        delta = np.array(self.delta, dtype=np.int64)
        if eta.shape != (self.T.order, self.S.order) or delta.shape != (self.S.order, self.T.order):
            raise InputError("eta must be |T|x|S| and delta |S|x|T|")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "delta", delta)

    def product_table(self) -> np.ndarray:
        """(a, u) o (b, v) = (a o ^u b, u^b o v)."""
        S, T, eta, delta = self.S, self.T, self.eta, self.delta
        m = T.order
        a = np.repeat(np.arange(S.order), m)
        u = np.tile(np.arange(m), S.order)
        first = S.table[a[:, None], eta[u[:, None], a[None, :]]]
        second = T.table[delta[a[None, :], u[:, None]], u[None, :]]
        return _encode(m, first, second)


def zappa_checks(Z: ZappaSystem) -> dict[str, Check]:
    S, T, eta, delta = Z.S, Z.T, Z.eta, Z.delta
    st, tt = S.table, T.table
    nS, nT = S.order, T.order
    u = np.arange(nT)[:, None, None]
    a = np.arange(nS)[None, :, None]
    b = np.arange(nS)[None, None, :]
    # ^u(a o b) == ^u a o ^{u^a} b            witness (u, a, b)
    z1a = eta[u, st[a, b]] != st[eta[u, a], eta[delta[a, u], b]]
    # ^{u o v} a == ^u(^v a)                 witness (u, v, a)
    uu, vv, aa = (np.arange(nT)[:, None, None], np.arange(nT)[None, :, None],
                  np.arange(nS)[None, None, :])
    z1b = eta[tt[uu, vv], aa] != eta[uu, eta[vv, aa]]
    # (u o v)^a == u^{^v a} o v^a             witness (u, v, a)
    z2a = delta[aa, tt[uu, vv]] != tt[delta[eta[vv, aa], uu], delta[aa, vv]]
    # u^{a o b} == (u^a)^b                    witness (u, a, b)
    z2b = delta[st[a, b], u] != delta[b, delta[a, u]]
    return {"Z1_left": first_witness("Z1_left", z1a), "Z1_right": first_witness("Z1_right", z1b),
            "Z2_left": first_witness("Z2_left", z2a), "Z2_right": first_witness("Z2_right", z2b)}


def verify_zappa(Z: ZappaSystem) -> FiniteGroup | None:
    """Check (Z1), (Z2); return the product group when eta, delta land in bijections."""
    for c in zappa_checks(Z).values():
        if not c:
            raise AxiomError(c)
    if not (all(is_bijective(r) for r in Z.eta) and all(is_bijective(r) for r in Z.delta)):
        return None
    table = Z.product_table()
    check = check_group(table)
    if not check:
        raise ConsistencyError(f"Zappa product with bijective actions is not a group: {check}")
    return _pairs(Z.S, Z.T, f"{Z.S.name}|x|{Z.T.name}", table)


def affine_to_zappa(A: AffineStructure) -> ZappaSystem:
    """^u a = sigma_{u^-}(a), u^a = (^u a)^- o u o a."""
    if not A.flags.cancellative:
        raise InputError("affine_to_zappa needs a cancellative structure")
    G = A.group
    t, inv = G.table, G.inverse
    eta = A.sigma[inv]
    ar = np.arange(G.order)
    delta = t[inv[eta.T], t[ar[None, :], ar[:, None]]]   # delta[a, u]
    Z = ZappaSystem(G, G, eta, delta)
    compat = compatibility_check(Z)
    if not compat:
        raise ConsistencyError(f"u o a != ^u a o u^a by construction: {compat}")
    return Z


def compatibility_check(Z: ZappaSystem) -> Check:
    """u o a == ^u a o u^a; witness (u, a)."""
    if Z.S != Z.T:
        raise InputError("compatibility needs S == T")
    t = Z.S.table
    return first_witness("compatibility", t != t[Z.eta, Z.delta.T])


def zappa_to_affine(Z: ZappaSystem) -> AffineStructure:
    """sigma_u(a) = ^{u^-} a."""
    compat = compatibility_check(Z)
    if not compat:
        raise AxiomError(compat)
    for c in zappa_checks(Z).values():
        if not c:
            raise AxiomError(c)
    A = AffineStructure(Z.S, Z.eta[Z.S.inverse], name="zappa")
    if not A.flags.valid:
        raise ConsistencyError(f"Zappa system gave an invalid affine structure: {A.flags}")
    return A


# --------------------------------------------------------- matched system

@dataclass(frozen=True, eq=False)
class MatchedSystem:
    """alpha[u] is a permutation of S, beta[a] a permutation of T."""

    S: FiniteGroup
    T: FiniteGroup
    alpha: np.ndarray
    beta: np.ndarray
    name: str = ""

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=np.int64)
        beta = np.array(self.beta, dtype=np.int64)
        if alpha.shape != (self.T.order, self.S.order) or beta.shape != (self.S.order, self.T.order):
            raise InputError("alpha must be |T|x|S| and beta |S|x|T|")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def actions_bijective(self) -> bool:
        return all(is_bijective(r) for r in self.alpha) and all(is_bijective(r) for r in self.beta)

    @property
    def alpha_inv(self) -> np.ndarray:
        return np.array([inverse_map(r) for r in self.alpha])

    @property
    def beta_inv(self) -> np.ndarray:
        return np.array([inverse_map(r) for r in self.beta])

    def to_json(self) -> dict:
        return {"schema": "affine-lab/matched@1", "name": self.name, "S": self.S.to_json(),
                "T": self.T.to_json(), "alpha": self.alpha.tolist(), "beta": self.beta.tolist()}


def mps_checks(M: MatchedSystem) -> dict[str, Check]:
    S, T = M.S, M.T
    st, tt = S.table, T.table
    nS, nT = S.order, T.order
    out: dict[str, Check] = {}
    if not M.actions_bijective:
        bad_a = [u for u in range(nT) if not is_bijective(M.alpha[u])]
        bad_b = [a for a in range(nS) if not is_bijective(M.beta[a])]
        w = (bad_a[0],) if bad_a else (bad_b[0],)
        out["bijective_actions"] = Check("bijective_actions", False, w,
                                         {"alpha": bool(not bad_a), "beta": bool(not bad_b)})
        return out
    out["bijective_actions"] = Check("bijective_actions", True)
    al, be = M.alpha, M.beta
    ali, bei = M.alpha_inv, M.beta_inv
    # alpha_{u o v} == alpha_u o alpha_v          witness (u, v, a)
    out["alpha_hom"] = first_witness("alpha_hom", al[tt] != al[np.arange(nT)[:, None, None], al[None]])
    out["beta_hom"] = first_witness("beta_hom", be[st] != be[np.arange(nS)[:, None, None], be[None]])
    if not (out["alpha_hom"] and out["beta_hom"]):
        return out
    a = np.arange(nS)[:, None, None]
    b = np.arange(nS)[None, :, None]
    u = np.arange(nT)[None, None, :]
    # alpha_u(alpha_u^{-1}(a) o b) == a o alpha_{beta_a^{-1}(u)}(b)     witness (a, b, u)
    lhs = al[u, st[ali[u, a], b]]
    rhs = st[a, al[bei[a, u], b]]
    out["mps_alpha"] = first_witness("mps_alpha", lhs != rhs)
    a = np.arange(nS)[:, None, None]
    uu = np.arange(nT)[None, :, None]
    v = np.arange(nT)[None, None, :]
    # beta_a(beta_a^{-1}(u) o v) == u o beta_{alpha_u^{-1}(a)}(v)       witness (a, u, v)
    lhs = be[a, tt[bei[a, uu], v]]
    rhs = tt[uu, be[ali[uu, a], v]]
    out["mps_beta"] = first_witness("mps_beta", lhs != rhs)
    return out


def verify_mps(M: MatchedSystem) -> Check:
    for c in mps_checks(M).values():
        if not c:
            return c
    return Check("mps", True)


def bowtie_table(M: MatchedSystem) -> np.ndarray:
    """(a, u) o (b, v) = (a o alpha_{beta_a^{-1}(u)}(b), u o beta_{alpha_u^{-1}(a)}(v))."""
    S, T = M.S, M.T
    m = T.order
    ali, bei = M.alpha_inv, M.beta_inv
    a = np.repeat(np.arange(S.order), m)
    u = np.tile(np.arange(m), S.order)
    first = S.table[a[:, None], M.alpha[bei[a, u][:, None], a[None, :]]]
    second = T.table[u[:, None], M.beta[ali[u, a][:, None], u[None, :]]]
    return _encode(m, first, second)


def bowtie_group(M: MatchedSystem) -> FiniteGroup:
    check = verify_mps(M)
    if not check:
        raise AxiomError(check)
    table = bowtie_table(M)
    gcheck = check_group(table)
    if not gcheck:
        raise ConsistencyError(f"bowtie product of a matched system is not a group: {gcheck}")
    G = _pairs(M.S, M.T, M.name or f"{M.S.name}><{M.T.name}", table)
    m = M.T.order
    if G.identity != 0:
        raise ConsistencyError("bowtie identity is not (0, 0)")
    S, T = M.S, M.T
    ali, bei = M.alpha_inv, M.beta_inv
    for a in range(S.order):
        for u in range(m):
            expected = _encode(m, S.inverse[ali[u, a]], T.inverse[bei[a, u]])
            if G.inverse[_encode(m, a, u)] != expected:
                raise ConsistencyError(f"inverse formula fails at {(a, u)}")
    return G


def bowtie_zappa(M: MatchedSystem) -> ZappaSystem:
    """^u a = alpha_u(a), u^a = beta^{-1}_{alpha_u(a)}(u)."""
    bei = M.beta_inv
    delta = np.empty((M.S.order, M.T.order), dtype=np.int64)
    for a in range(M.S.order):
        for u in range(M.T.order):
            delta[a, u] = bei[M.alpha[u, a], u]
    return ZappaSystem(M.S, M.T, M.alpha, delta)


def check_bowtie_zappa_iso(M: MatchedSystem) -> Check:
    """(a, u) -> (a, beta_a^{-1}(u)) carries the bowtie table onto the Zappa table."""
    G = bowtie_group(M)
    Zt = verify_zappa(bowtie_zappa(M))
    if Zt is None:
        return Check("bowtie_zappa_iso", False, None, {"reason": "actions not bijective"})
    m = M.T.order
    a = np.repeat(np.arange(M.S.order), m)
    u = np.tile(np.arange(m), M.S.order)
    phi = _encode(m, a, M.beta_inv[a, u])
    bad = phi[G.table] != Zt.table[phi[:, None], phi[None, :]]
    return first_witness("bowtie_zappa_iso", bad)


# ------------------------------------------------------ product conditions

def _rho(A: AffineStructure) -> np.ndarray:
    return from_affine(A).rho if A.flags.valid else _raw_rho(A)


def _raw_rho(A: AffineStructure) -> np.ndarray:
    G = A.group
    t, inv = G.table, G.inverse
    s = t[np.arange(G.order)[:, None], A.sigma][inv]     # a^- + b
    return t[inv[s.T], np.arange(G.order)[:, None]]


def _condition_III(sigma_x, rho_x, act, sigma_y, act_other_inv,
                   nx: int, ny: int, inv_x) -> np.ndarray:
    """Evaluate one half of (III) for the action ``act`` of the second factor on the first.

    Returns bad[a, b, u, v]: act_{vbar} sigma_{r} != sigma_{r} act_{Vbar} as maps, with
    r = rho_b(a^-), vbar = (beta_b)^{-1}(v), Vbar = (beta_{sigma_a(b)})^{-1}(sigma_u(v)).
    """
    a = np.arange(nx)[:, None, None, None]
    b = np.arange(nx)[None, :, None, None]
    u = np.arange(ny)[None, None, :, None]
    v = np.arange(ny)[None, None, None, :]
    r = rho_x[b, inv_x[a]]                                     # rho_b(a^-)
    vbar = act_other_inv[b, v]
    Vbar = act_other_inv[sigma_x[a, b], sigma_y[u, v]]
    lhs = act[vbar[..., None], sigma_x[r][..., :]]           # act_{vbar}(sigma_r(c))
    rhs = sigma_x[r[..., None], act[Vbar][..., :]]            # sigma_r(act_{Vbar}(c))
    return (lhs != rhs).any(axis=-1)


@dataclass
class ProductConditions:
    checks: dict[str, Check] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {k: c.to_dict() for k, c in self.checks.items()}


def check_product_conditions(M: MatchedSystem, AS: AffineStructure,
                             AT: AffineStructure) -> ProductConditions:
    """(I), (II), (III) for sigma^S x sigma^T on S bowtie T; witnesses per condition."""
    mps = verify_mps(M)
    if not mps:
        raise InputError(f"not a matched product system: {mps}")
    if AS.group != M.S or AT.group != M.T:
        raise InputError("affine structures must live on the system's groups")
    S, T = M.S, M.T
    nS, nT = S.order, T.order
    sS, sT = AS.sigma, AT.sigma
    al, be, ali, bei = M.alpha, M.beta, M.alpha_inv, M.beta_inv
    out = ProductConditions()
    e_S, e_T = S.identity, T.identity
    # (I) sigma_0 alpha_u == alpha_u sigma_0 ; sigma_0 beta_a == beta_a sigma_0
    out.checks["I_alpha"] = first_witness("I_alpha", sS[e_S][al] != al[:, sS[e_S]])
    out.checks["I_beta"] = first_witness("I_beta", sT[e_T][be] != be[:, sT[e_T]])
    if AS.flags.cancellative and AT.flags.cancellative:
        if not (out.checks["I_alpha"] and out.checks["I_beta"]):
            raise ConsistencyError("(I) fails although both structures are cancellative")
    # (II) sigma_{alpha_u(a)} == sigma_a ; sigma_{beta_a(u)} == sigma_u
    out.checks["II_alpha"] = first_witness("II_alpha", (sS[al] != sS[None, :, :]).any(axis=2))
    out.checks["II_beta"] = first_witness("II_beta", (sT[be] != sT[None, :, :]).any(axis=2))
    rS, rT = _rho(AS), _rho(AT)
    # (III) alpha_{vbar} sigma_{rho_b(a^-)} == sigma_{rho_b(a^-)} alpha_{Vbar}, witness (a, b, u, v)
    out.checks["III_alpha"] = first_witness(
        "III_alpha", _condition_III(sS, rS, al, sT, bei, nS, nT, S.inverse))
    # beta_{bbar} sigma_{rho_v(u^-)} == sigma_{rho_v(u^-)} beta_{Bbar}, witness (u, v, a, b)
    out.checks["III_beta"] = first_witness(
        "III_beta", _condition_III(sT, rT, be, sS, ali, nT, nS, T.inverse))
    return out


def product_sigma(M: MatchedSystem, AS: AffineStructure, AT: AffineStructure,
                  G: FiniteGroup | None = None) -> AffineStructure:
    """sigma_{(a,u)}(b, v) = (sigma_a(b), sigma_u(v)) on S bowtie T, without any checks."""
    G = G or bowtie_group(M)
    m = M.T.order
    a = np.repeat(np.arange(M.S.order), m)
    u = np.tile(np.arange(m), M.S.order)
    sigma = _encode(m, AS.sigma[a[:, None], a[None, :]], AT.sigma[u[:, None], u[None, :]])
    return AffineStructure(G, sigma, name=f"{AS.name}x{AT.name}")


class ProductConditionError(Exception):
    def __init__(self, report: ProductConditions):
        failed = [str(c) for c in report.checks.values() if not c]
        super().__init__("; ".join(failed))
        self.report = report


def product_affine(M: MatchedSystem, AS: AffineStructure, AT: AffineStructure) -> AffineStructure:
    report = check_product_conditions(M, AS, AT)
    if not report:
        raise ProductConditionError(report)
    A = product_sigma(M, AS, AT)
    if not A.flags.valid:
        raise ConsistencyError(f"conditions hold but the product is not affine: {A.flags}")
    if AS.flags.cancellative and AT.flags.cancellative and not A.flags.cancellative:
        raise ConsistencyError("product of cancellative structures is not cancellative")
    if AS.flags.groupal and AT.flags.groupal and not A.flags.groupal:
        raise ConsistencyError("product of groupal structures is not groupal")
    return A


# ------------------------------------------------ matched product of semi-braces

def _aut_add(name: str, act: np.ndarray, add: np.ndarray) -> Check:
    """act_x(p + q) == act_x(p) + act_x(q); witness (x, p, q)."""
    return first_witness(name, act[:, add] != add[act[:, :, None], act[:, None, :]])


def matched_semibrace_checks(M: MatchedSystem, SB: SemiBrace, TB: SemiBrace) -> dict[str, Check]:
    if SB.mul != M.S or TB.mul != M.T:
        raise InputError("semi-braces must have the system's groups as multiplicative groups")
    out = dict(mps_checks(M))
    if not all(out.values()):
        return out
    out["alpha_in_aut_add"] = _aut_add("alpha_in_aut_add", M.alpha, SB.add)
    out["beta_in_aut_add"] = _aut_add("beta_in_aut_add", M.beta, TB.add)
    out.update(mps_old_checks(M, SB, TB))
    return out


def mps_old_checks(M: MatchedSystem, SB: SemiBrace, TB: SemiBrace) -> dict[str, Check]:
    """lambda_a alpha_{ubar} == alpha_u lambda_{abar}; lambda_u beta_{abar} == beta_a lambda_{ubar}."""
    al, be, ali, bei = M.alpha, M.beta, M.alpha_inv, M.beta_inv
    lS, lT = SB.lam, TB.lam
    nS, nT = M.S.order, M.T.order
    a = np.arange(nS)[:, None]
    u = np.arange(nT)[None, :]
    ubar = bei[a, u]                                        # [a, u]
    abar = ali[u, a]                                        # [a, u]
    lhs = lS[a[..., None], al[ubar][..., :]]                # lambda_a(alpha_ubar(x))
    rhs = al[u[..., None], lS[abar][..., :]]                # alpha_u(lambda_abar(x))
    first = first_witness("mps_old_alpha", (lhs != rhs).any(axis=-1))
    lhs = lT[u[..., None], be[abar][..., :]]                # lambda_u(beta_abar(y))
    rhs = be[a[..., None], lT[ubar][..., :]]                # beta_a(lambda_ubar(y))
    second = first_witness("mps_old_beta", (lhs != rhs).any(axis=-1))
    return {"mps_old_alpha": first, "mps_old_beta": second}


class MatchedProductError(Exception):
    def __init__(self, checks: dict[str, Check]):
        super().__init__("; ".join(str(c) for c in checks.values() if not c))
        self.checks = checks


def matched_product_semibrace(M: MatchedSystem, SB: SemiBrace, TB: SemiBrace) -> SemiBrace:
    """(a, u) + (b, v) = (a + b, u + v) with the bowtie multiplication."""
    checks = matched_semibrace_checks(M, SB, TB)
    if not all(checks.values()):
        raise MatchedProductError(checks)
    G = bowtie_group(M)
    m = M.T.order
    a = np.repeat(np.arange(M.S.order), m)
    u = np.tile(np.arange(m), M.S.order)
    add = _encode(m, SB.add[a[:, None], a[None, :]], TB.add[u[:, None], u[None, :]])
    return verify_semibrace(G, add, name=f"{SB.name}(+){TB.name}")


def matched_sigma_bar(M: MatchedSystem, AS: AffineStructure, AT: AffineStructure,
                      G: FiniteGroup | None = None) -> AffineStructure:
    """sigma_bar_{(a,u)}(b, v) = (alpha^{-1}_{ubar} sigma_a(b), beta^{-1}_{abar} sigma_u(v))."""
    G = G or bowtie_group(M)
    m = M.T.order
    ali, bei = M.alpha_inv, M.beta_inv
    a = np.repeat(np.arange(M.S.order), m)
    u = np.tile(np.arange(m), M.S.order)
    ubar = bei[a, u]
    abar = ali[u, a]
    first = ali[ubar[:, None], AS.sigma[a[:, None], a[None, :]]]
    second = bei[abar[:, None], AT.sigma[u[:, None], u[None, :]]]
    return AffineStructure(G, _encode(m, first, second), name="sigma_bar")


# -------------------------------------------------------------- comparisons

@dataclass
class ConfrontoReport:
    mps_old: bool
    actions_in_aut_add: bool
    checks: dict[str, Check]

    def to_dict(self) -> dict:
        return {"mps_old": self.mps_old, "actions_in_aut_add": self.actions_in_aut_add,
                "checks": {k: c.to_dict() for k, c in self.checks.items()}}


def confronto_check(M: MatchedSystem, SB: SemiBrace, TB: SemiBrace) -> ConfrontoReport:
    """Both sides of: the lambda/action exchange law holds
    iff alpha_u in Aut(S, +) and beta_a in Aut(T, +)."""
    mps = verify_mps(M)
    if not mps:
        raise InputError(f"not a matched product system: {mps}")
    old = mps_old_checks(M, SB, TB)
    aut = {"alpha_in_aut_add": _aut_add("alpha_in_aut_add", M.alpha, SB.add),
           "beta_in_aut_add": _aut_add("beta_in_aut_add", M.beta, TB.add)}
    left = all(old.values())
    right = all(aut.values())
    if left != right:
        raise ConsistencyError(f"mps-old={left} but actions-in-Aut(+)={right}")
    return ConfrontoReport(left, right, {**old, **aut})


@dataclass
class Comparison:
    isomorphic: bool
    certificate: list[int] | None
    identical_sums: bool
    product: SemiBrace | None = None
    matched: SemiBrace | None = None
    failure: str | None = None

    def to_dict(self) -> dict:
        return {"isomorphic": self.isomorphic, "certificate": self.certificate,
                "identical_sums": self.identical_sums, "failure": self.failure}


def compare_constructions(M: MatchedSystem, AS: AffineStructure, AT: AffineStructure,
                          SB: SemiBrace | None = None, TB: SemiBrace | None = None) -> Comparison:
    """Semi-brace from sigma^S x sigma^T against the matched product of SB and TB.

    SB and TB default to the semi-braces associated to AS and AT.
    """
    SB = SB if SB is not None else from_affine(AS)
    TB = TB if TB is not None else from_affine(AT)
    try:
        P = from_affine(product_affine(M, AS, AT), name="product")
    except ProductConditionError as exc:
        return Comparison(False, None, False, failure=f"product_affine: {exc}")
    try:
        Q = matched_product_semibrace(M, SB, TB)
    except MatchedProductError as exc:
        return Comparison(False, None, False, product=P, failure=f"matched_product: {exc}")
    iso = isomorphic(P, Q)
    return Comparison(iso is not None, None if iso is None else iso.tolist(),
                      bool(np.array_equal(P.add, Q.add)), P, Q)


def trivial_system(S: FiniteGroup, T: FiniteGroup) -> MatchedSystem:
    return MatchedSystem(S, T, np.tile(identity_map(S.order), (T.order, 1)),
                         np.tile(identity_map(T.order), (S.order, 1)), name="trivial")
