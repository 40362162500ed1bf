"""Finite groups as Cayley tables.

Elements are the dense indices ``0..n-1``. Every canonical constructor puts
the identity at index 0. Self-maps of the carrier (the sigma_a, lambda_a,
rho_b, alpha_u, beta_a of the rest of the package) are plain integer arrays
of length ``n``; a map is a permutation when its image array is a bijection.

Composition is always ``compose(f, g)(x) == f(g(x))``.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import AxiomError, Check, InputError, first_witness

AUTOMORPHISM_BOUND = 16
SYMMETRIC_BOUND = 5

SelfMap = np.ndarray


def _as_table(table) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InputError(f"Cayley table must be a non-empty square array, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise InputError("Cayley table entries must lie in 0..n-1")
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class FiniteGroup:
    """A validated finite group.

    Build one with a constructor (:func:`make_cyclic`, ...) or
    :func:`verify_group`; the initializer trusts its input.
    """

    def __init__(self, table, name: str = "", labels: Sequence[str] | None = None,
                 identity: int | None = None):
        self.table = _frozen(table)
        n = self.table.shape[0]
        if identity is None:
            identity = _find_identity(self.table)
            if identity is None:
                raise InputError("table has no identity")
        self.identity = int(identity)
        inv = np.argmax(self.table == self.identity, axis=1)
        self.inverse = _frozen(inv)
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def label(self, a: int) -> str:
        return self.labels[a]

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for a in range(self.order):
            x, k = a, 1
            while x != self.identity:
                x = int(self.table[x, a])
                k += 1
            orders[a] = k
        return _frozen(orders)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def center(self) -> list[int]:
        t = self.table
        return [a for a in range(self.order) if np.array_equal(t[a], t[:, a])]

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, picked greedily from high-order elements."""
        gens: list[int] = []
        span = {self.identity}
        for a in sorted(range(self.order), key=lambda x: (-self.element_orders[x], x)):
            if a in span:
                continue
            gens.append(a)
            span = set(subgroup_closure(self, gens))
            if len(span) == self.order:
                break
        return tuple(gens)

    @cached_property
    def fingerprint(self) -> str:
        return hashlib.sha256(self.table.tobytes()).hexdigest()[:16]

    def profile(self) -> tuple:
        """Isomorphism invariant used to prune searches."""
        return (self.order, self.is_abelian, tuple(sorted(self.element_orders.tolist())))

    def to_json(self) -> dict:
        return {"schema": "affine-lab/group@1", "name": self.name, "order": self.order,
                "table": self.table.tolist(), "labels": list(self.labels)}


def _find_identity(table: np.ndarray) -> int | None:
    n = table.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
            return e
    return None


def subgroup_closure(G: FiniteGroup, gens: Sequence[int]) -> list[int]:
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = int(G.table[x, s])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


# ---------------------------------------------------------------- validation

def check_group(table) -> Check:
    """Check closure, identity, inverses, then associativity; first failure wins."""
    try:
        t = _as_table(table)
    except InputError as exc:
        return Check("closure", False, None, {"error": str(exc)})
    n = t.shape[0]
    e = _find_identity(t)
    if e is None:
        # candidate 0 is reported together with the first element it fails on
        ar = np.arange(n)
        bad = np.flatnonzero((t[0] != ar) | (t[:, 0] != ar))
        return Check("identity", False, (0, int(bad[0])))
    has_inv = (t == e).any(axis=1) & (t == e).any(axis=0)
    if not has_inv.all():
        return Check("inverse", False, (int(np.flatnonzero(~has_inv)[0]),))
    # t[t][a, b, c] = (ab)c and t[:, t][a, b, c] = a(bc)
    assoc = first_witness("associativity", t[t] != t[:, t])
    if not assoc:
        return assoc
    return Check("group", True)


def verify_group(table, name: str = "", labels: Sequence[str] | None = None) -> FiniteGroup:
    check = check_group(table)
    if not check:
        raise AxiomError(check)
    return FiniteGroup(_as_table(table), name=name, labels=labels)


# -------------------------------------------------------------- constructors

def make_cyclic(m: int) -> FiniteGroup:
    """C_m; index k stands for g^k."""
    if m < 1:
        raise InputError("cyclic group needs m >= 1")
    ar = np.arange(m)
    labels = ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, m)]
    return FiniteGroup((ar[:, None] + ar[None, :]) % m, name=f"C{m}", labels=labels, identity=0)


def make_dihedral(l: int) -> FiniteGroup:
    """Dihedral group of order 2l; index r + l*s encodes r^r s^s."""
    if l < 1:
        raise InputError("dihedral group needs l >= 1")
    n = 2 * l
    table = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        r1, s1 = x % l, x // l
        for y in range(n):
            r2, s2 = y % l, y // l
            r = (r1 + (r2 if s1 == 0 else -r2)) % l
            table[x, y] = r + l * ((s1 + s2) % 2)
    labels = []
    for x in range(n):
        r, s = x % l, x // l
        rot = "1" if r == 0 else ("r" if r == 1 else f"r^{r}")
        labels.append(rot if s == 0 else ("s" if r == 0 else rot + "s"))
    return FiniteGroup(table, name=f"D{l}", labels=labels, identity=0)


def _cycle_notation(p: Sequence[int]) -> str:
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            seen.add(start)
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "id"


def make_symmetric(n: int) -> FiniteGroup:
    """S_n over lexicographically ordered permutations, (p q)(x) = p(q(x))."""
    if n < 1:
        raise InputError("symmetric group needs n >= 1")
    if n > SYMMETRIC_BOUND:
        raise InputError(f"symmetric group S{n} exceeds bound n <= {SYMMETRIC_BOUND}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return FiniteGroup(table, name=f"S{n}", labels=[_cycle_notation(p) for p in perms], identity=0)


def make_quaternion() -> FiniteGroup:
    """Q8 with indices 0..7 = 1, i, j, k, -1, -i, -j, -k."""
    unit = {(0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
            (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
            (2, 2): (0, -1), (2, 3): (1, 1), (3, 3): (0, -1)}
    for a in range(4):
        unit[(a, 0)] = (a, 1)
    for (a, b), (c, s) in list(unit.items()):
        if a != b and a and b and (b, a) not in unit:
            unit[(b, a)] = (c, -s)
    table = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            c, s = unit[(x % 4, y % 4)]
            if (x >= 4) != (y >= 4):
                s = -s
            table[x, y] = c + (4 if s < 0 else 0)
    labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return FiniteGroup(table, name="Q8", labels=labels, identity=0)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """G x H with (g, h) encoded row-major as g*|H| + h."""
    m = H.order
    gt, ht = G.table, H.table
    table = (gt[:, None, :, None] * m + ht[None, :, None, :]).reshape(G.order * m, G.order * m)
    labels = [f"({G.label(g)},{H.label(h)})" for g in range(G.order) for h in range(m)]
    return FiniteGroup(table, name=name or f"{G.name}x{H.name}", labels=labels,
                       identity=G.identity * m + H.identity)


def make_abelian(invariants: Sequence[int]) -> FiniteGroup:
    G = make_cyclic(invariants[0])
    for k in invariants[1:]:
        G = direct_product(G, make_cyclic(k))
    return G


def relabel(G: FiniteGroup, perm: Sequence[int], name: str | None = None) -> FiniteGroup:
    """Isomorphic copy of G whose element ``perm[x]`` plays the role of ``x``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = inverse_map(perm)
    table = perm[G.table[inv][:, inv]]
    labels = [G.labels[inv[i]] for i in range(G.order)]
    return FiniteGroup(table, name=name or G.name, labels=labels, identity=int(perm[G.identity]))


# ---------------------------------------------------------------- self maps

def identity_map(n: int) -> SelfMap:
    return np.arange(n, dtype=np.int64)


def compose(f, g) -> SelfMap:
    """(f o g)(x) = f(g(x))."""
    f = np.asarray(f, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    if f.shape != g.shape:
        raise InputError(f"cannot compose maps on {len(f)} and {len(g)} points")
    return f[g]


def is_bijective(f) -> bool:
    f = np.asarray(f)
    return len(np.unique(f)) == len(f)


def inverse_map(f) -> SelfMap:
    f = np.asarray(f, dtype=np.int64)
    if not is_bijective(f):
        raise InputError("map is not a bijection")
    inv = np.empty_like(f)
    inv[f] = np.arange(len(f))
    return inv


def conjugation_map(G: FiniteGroup, a: int) -> SelfMap:
    """x -> a^- x a."""
    return G.table[G.table[G.inverse[a]], a]


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, f) -> bool:
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (G.order,):
        raise InputError("map length does not match source group")
    return bool(np.array_equal(f[G.table], H.table[f[:, None], f[None, :]]))


def is_endomorphism(G: FiniteGroup, f) -> bool:
    return is_homomorphism(G, G, f)


def is_idempotent_endomorphism(G: FiniteGroup, f) -> bool:
    f = np.asarray(f, dtype=np.int64)
    return is_endomorphism(G, f) and bool(np.array_equal(f[f], f))


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "images", _frozen(self.images))
        if not is_homomorphism(self.source, self.target, self.images):
            raise InputError("map is not a group homomorphism")

    @property
    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and is_bijective(self.images)

    def inverse(self) -> "GroupHom":
        return GroupHom(self.target, self.source, inverse_map(self.images))


# ---------------------------------------------------------- homomorphisms

def extend_hom(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int],
               images: Sequence[int]) -> np.ndarray | None:
    """Extend generator images to a homomorphism G -> H, or None if inconsistent.

    Consistency along every Cayley-graph edge x -> x*s makes the result a
    homomorphism.
    """
    f = np.full(G.order, -1, dtype=np.int64)
    f[G.identity] = H.identity
    queue = deque([G.identity])
    gt, ht = G.table, H.table
    while queue:
        x = queue.popleft()
        fx = f[x]
        for s, t in zip(gens, images):
            y = gt[x, s]
            fy = ht[fx, t]
            if f[y] < 0:
                f[y] = fy
                queue.append(y)
            elif f[y] != fy:
                return None
    if (f < 0).any():
        return None
    return f


def homomorphisms(G: FiniteGroup, H: FiniteGroup) -> list[np.ndarray]:
    """All homomorphisms G -> H (generator images constrained by element order)."""
    gens = G.generators
    choices = [[h for h in range(H.order) if G.element_orders[s] % H.element_orders[h] == 0]
               for s in gens]
    found = {}
    for imgs in itertools.product(*choices):
        f = extend_hom(G, H, gens, imgs)
        if f is not None:
            found[f.tobytes()] = f
    return sorted(found.values(), key=lambda a: a.tolist())


def _isomorphisms(G: FiniteGroup, H: FiniteGroup, first_only: bool):
    if G.profile() != H.profile():
        return
    gens = G.generators
    choices = [[h for h in range(H.order) if H.element_orders[h] == G.element_orders[s]]
               for s in gens]
    for imgs in itertools.product(*choices):
        f = extend_hom(G, H, gens, imgs)
        if f is not None and is_bijective(f):
            yield f
            if first_only:
                return


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> np.ndarray | None:
    return next(_isomorphisms(G, H, True), None)


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


def automorphisms(G: FiniteGroup, bound: int = AUTOMORPHISM_BOUND) -> list[np.ndarray]:
    """Aut(G) as image arrays sorted lexicographically."""
    if G.order > bound:
        raise InputError(f"automorphism search limited to order <= {bound}, got {G.order}")
    found = {f.tobytes(): f for f in _isomorphisms(G, G, False)}
    return sorted(found.values(), key=lambda a: a.tolist())


# ---------------------------------------------------------- identification

def _library(order: int) -> list[FiniteGroup]:
    out = [make_cyclic(order)]
    # abelian groups as invariant-factor products (k1 | k2 | ...)
    def factorisations(n, smallest):
        if n == 1:
            yield []
            return
        for k in range(smallest, n + 1):
            if n % k == 0:
                for rest in factorisations(n // k, k):
                    if not rest or rest[0] % k == 0:
                        yield [k] + rest
    for inv in factorisations(order, 2):
        if len(inv) > 1:
            out.append(make_abelian(inv))
    if order % 2 == 0 and order >= 6:
        out.append(make_dihedral(order // 2))
    if order == 8:
        out.append(make_quaternion())
    if order in (12, 16):
        out.append(direct_product(make_cyclic(2), make_dihedral(order // 4)))
    return out


def identify(G: FiniteGroup, max_order: int = 16) -> str | None:
    """Name of G's isomorphism type from a small fixed library, if present."""
    if G.order > max_order:
        return None
    if G.order == 1:
        return "C1"
    for cand in _library(G.order):
        if is_isomorphic(G, cand):
            return cand.name
    return None


# ------------------------------------------------------------------ specs

def parse_group_spec(spec: str) -> FiniteGroup:
    """``cyclic:6``, ``dihedral:3``, ``symmetric:3``, ``quaternion``, ``klein``,
    ``abelian:2,4``; factors joined by ``*`` form a direct product."""
    parts = [p.strip() for p in spec.split("*")]
    groups = [_parse_one(p) for p in parts]
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H)
    return G


def _parse_one(spec: str) -> FiniteGroup:
    kind, _, arg = spec.partition(":")
    kind = kind.lower()
    try:
        if kind in ("cyclic", "c"):
            return make_cyclic(int(arg))
        if kind in ("dihedral", "d"):
            return make_dihedral(int(arg))
        if kind in ("symmetric", "s", "sym"):
            return make_symmetric(int(arg))
        if kind in ("quaternion", "q8"):
            return make_quaternion()
        if kind in ("klein", "v4"):
            return make_abelian([2, 2])
        if kind == "abelian":
            return make_abelian([int(x) for x in arg.split(",")])
    except ValueError as exc:
        raise InputError(f"bad group spec {spec!r}: {exc}") from None
    raise InputError(f"unknown group spec {spec!r}")


def group_from_json(data: dict) -> FiniteGroup:
    try:
        table = data["table"]
    except (KeyError, TypeError):
        raise InputError("group JSON needs a 'table' field") from None
    if "order" in data and int(data["order"]) != len(table):
        raise InputError("group JSON 'order' does not match table size")
    return verify_group(table, name=data.get("name", ""), labels=data.get("labels"))
