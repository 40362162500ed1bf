"""Exhaustive search for affine structures on small groups.

Two independent searches are provided. ``enumerate_naive`` walks every
sigma table row by row and discards a partial table only once some
instance of the defining identities is fully determined and false.
``enumerate_structures`` exploits the shape of an anti-homomorphism:
with e = sigma_0 idempotent, every sigma_a equals pi_a o e for a
permutation pi_a of im(e), and a -> pi_a is an anti-homomorphism, so it is
enough to choose pi on generators and propagate.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .affine import AffineStructure, equivalence_classes
from .errors import InputError
from .groups import FiniteGroup, subgroup_closure

KINDS = ("all", "cancellative", "groupal", "abelian")
NAIVE_BOUND = 4
ENUMERATION_BOUND = 8
CENSUS_VERSION = "1"
_CHUNK = 1 << 14


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def _keep(A: AffineStructure, kind: str) -> bool:
    f = A.flags
    if not f.valid:
        return False
    return {"all": True, "cancellative": f.cancellative, "groupal": f.groupal,
            "abelian": f.abelian}[kind]


def _finish(G: FiniteGroup, tables, kind: str) -> list[AffineStructure]:
    out = [AffineStructure(G, s) for s in tables]
    out = [A for A in out if _keep(A, kind)]
    out.sort(key=AffineStructure.key)
    for i, A in enumerate(out):
        A.name = f"{G.name or 'G'}#{i}"
    return out


# ------------------------------------------------------------- vectorized laws

def _batch_anti_hom_ok(G: FiniteGroup, S: np.ndarray, elems=None, gens=None) -> np.ndarray:
    """For a batch S[m, n, n], True where sigma_{a o b} == sigma_b sigma_a for a in elems, b in gens.

    Restricting b to a generating set of <elems> is enough: the law for
    products of generators follows by induction on word length. Pairs that
    are edges of the propagation tree hold by construction and are skipped.
    """
    idx = np.arange(G.order) if elems is None else np.asarray(elems)
    gen = idx if gens is None else np.asarray(gens)
    tree = set() if gens is None else {(x, s) for x, s, _ in _spanning_tree(G, list(gens))}
    pairs = np.array([(a, b) for a in idx for b in gen if (a, b) not in tree], dtype=np.int64)
    if not len(pairs):
        return np.ones(len(S), dtype=bool)
    a, b = pairs[:, 0], pairs[:, 1]
    rows = np.arange(len(S))[:, None, None]
    lhs = S[:, G.table[a, b]]                                    # [m, pair, x]
    rhs = S[rows, b[None, :, None], S[:, a]]
    return (lhs == rhs).all(axis=(1, 2))


def _batch_affine_ok(G: FiniteGroup, S: np.ndarray) -> np.ndarray:
    """sigma_a(b o sigma_b(c)) == sigma_a(b) o sigma_{sigma_a(b)}(sigma_a(c)) for the whole batch.

    Evaluated one value of a at a time so that early failures shrink the batch.
    """
    t = G.table
    n = G.order
    alive = np.arange(len(S))
    bc_all = t[np.arange(n)[:, None], S]                         # [m, b, c] = b o sigma_b(c)
    for a in range(n):
        if not len(alive):
            break
        T = S[alive]
        rows = np.arange(len(alive))[:, None, None]
        lhs = T[rows, a, bc_all[alive]]                          # [m, b, c]
        sab = T[:, a, :, None]                                   # [m, b, 1]
        rhs = t[sab, T[rows, sab, T[:, a][:, None, :]]]
        alive = alive[(lhs == rhs).all(axis=(1, 2))]
    ok = np.zeros(len(S), dtype=bool)
    ok[alive] = True
    return ok


# ---------------------------------------------------------------- naive oracle

@lru_cache(maxsize=None)
def _all_maps(n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(n), repeat=n)), dtype=np.int64)


def _determined_ok(G: FiniteGroup, S: np.ndarray, k: int) -> np.ndarray:
    """Check every identity instance that only reads rows 0..k of the partial tables S."""
    t = G.table
    m = len(S)
    rows = np.arange(m)[:, None]
    ok = np.ones(m, dtype=bool)
    for a in range(k + 1):
        for b in range(k + 1):
            ab = t[a, b]
            if ab <= k and (a == k or b == k or ab == k):
                ok &= (S[:, ab] == S[rows, b, S[:, a]]).all(axis=1)
    # affine identity instances (a, b, c) need rows a, b and sigma_a(b) assigned
    for a in range(k + 1):
        for b in range(k + 1):
            sab = S[:, a, b]
            live = sab <= k
            if not (a == k or b == k):
                live &= sab == k
            if not live.any():
                continue
            sel = np.nonzero(live)[0]
            Ss = S[sel]
            r = np.arange(len(sel))[:, None]
            bc = t[b, Ss[:, b]]
            lhs = Ss[r, a, bc]
            rhs = t[sab[sel][:, None], Ss[r, sab[sel][:, None], Ss[:, a]]]
            ok[sel] &= (lhs == rhs).all(axis=1)
    return ok


def enumerate_naive(G: FiniteGroup, kind: str = "all", bound: int = NAIVE_BOUND) -> list[AffineStructure]:
    """Every sigma table on G, searched row by row over all maps G -> G.

    Nothing about anti-homomorphisms is used beyond rejecting a partial table
    once one of its fully determined identity instances fails.
    """
    _check_kind(kind)
    n = G.order
    if n > bound:
        raise InputError(f"enumerate_naive is limited to order <= {bound}, got {n}")
    maps = _all_maps(n)
    partial = np.zeros((1, n, n), dtype=np.int64)
    for k in range(n):
        grown = np.repeat(partial, len(maps), axis=0)
        grown[:, k] = np.tile(maps, (len(partial), 1))
        partial = grown[_determined_ok(G, grown, k)]
    return _finish(G, partial, kind)


# ------------------------------------------------------- generator search

def idempotent_maps(n: int, cancellative: bool = False) -> list[np.ndarray]:
    """All e with e o e == e, ordered by image size; the identity alone when cancellative."""
    if cancellative:
        return [np.arange(n)]
    out = []
    for r in range(1, n + 1):
        for image in itertools.combinations(range(n), r):
            others = [x for x in range(n) if x not in image]
            for vals in itertools.product(image, repeat=len(others)):
                e = np.arange(n)
                e[others] = vals
                out.append(e)
    return out


@lru_cache(maxsize=None)
def _perms_of_order_dividing(r: int, k: int) -> np.ndarray:
    P = np.array(list(itertools.permutations(range(r))), dtype=np.int64)
    Q = np.tile(np.arange(r), (len(P), 1))
    rows = np.arange(len(P))[:, None]
    for _ in range(k):
        Q = P[rows, Q]
    return P[(Q == np.arange(r)).all(axis=1)]


def _spanning_tree(G: FiniteGroup, gens) -> list[tuple[int, int, int]]:
    """(x, s, x o s) edges reaching every element of <gens> from 0 in BFS order."""
    seen = {G.identity}
    order = [G.identity]
    edges = []
    for x in order:
        for s in gens:
            y = int(G.table[x, s])
            if y not in seen:
                seen.add(y)
                order.append(y)
                edges.append((x, s, y))
    return edges


def _propagate(G: FiniteGroup, e: np.ndarray, gens, images: np.ndarray) -> np.ndarray:
    """Fill sigma on <gens> along a spanning tree: sigma_{x o s} = sigma_s o sigma_x.

    ``e`` holds sigma_0 per row, ``images[:, j]`` sigma of ``gens[j]``.
    """
    m = len(images)
    S = np.zeros((m, G.order, G.order), dtype=np.int64)
    S[:, G.identity] = e
    rows = np.arange(m)[:, None]
    for j, s in enumerate(gens):
        S[:, s] = images[:, j]
    for x, s, y in _spanning_tree(G, gens):
        if y in gens:
            continue
        S[:, y] = S[rows, s, S[:, x]]
    return S


def _lifted(E: np.ndarray, P: np.ndarray) -> np.ndarray:
    """maps[i, p] = pi_p o e_i, with pi_p permuting im(e_i) listed in increasing order."""
    images = np.array([np.unique(e) for e in E])                  # [i, r]
    rows = np.arange(len(E))[:, None]
    pos = np.zeros_like(E)
    pos[rows, images] = np.arange(images.shape[1])
    pe = np.take_along_axis(pos, E, axis=1)                      # slot of e_i(x) in im(e_i)
    local = P[np.arange(len(P))[None, :, None], pe[:, None, :]]  # [i, p, x]
    return images[rows[:, :, None], local]


def _partial_affine_ok(G: FiniteGroup, S: np.ndarray, elems) -> np.ndarray:
    """Affine identity on the instances (a, b, c) with a, b, sigma_a(b) in elems.

    Only rows of S indexed by elems are read, so S may be filled on a subgroup only.
    """
    t = G.table
    n = G.order
    H = np.asarray(elems)
    member = np.zeros(n, dtype=bool)
    member[H] = True
    bc = t[H[:, None], S[:, H]]                                  # [m, b, c] = b o sigma_b(c)
    alive = np.arange(len(S))
    for a in H:
        if not len(alive):
            break
        T = S[alive]
        rows = np.arange(len(alive))[:, None, None]
        sab = T[:, a, H]                                         # [m, b]
        lhs = T[rows, a, bc[alive]]
        rhs = t[sab[:, :, None], T[rows, sab[:, :, None], T[:, a][:, None, :]]]
        good = ((lhs == rhs).all(axis=2) | ~member[sab]).all(axis=1)
        alive = alive[good]
    ok = np.zeros(len(S), dtype=bool)
    ok[alive] = True
    return ok


def _options(G: FiniteGroup, E: np.ndarray, s: int, r: int, kind: str):
    """Admissible sigma_s for each idempotent, as flat (maps, owner) arrays sorted by owner."""
    lifted = _lifted(E, _perms_of_order_dividing(r, int(G.element_orders[s])))
    k = lifted.shape[1]
    maps = lifted.reshape(-1, G.order)
    owner = np.repeat(np.arange(len(E)), k)
    if kind in ("groupal", "abelian"):
        fix = maps[:, G.identity] == G.identity
        maps, owner = maps[fix], owner[fix]
    elems = subgroup_closure(G, [s])
    keep = np.zeros(len(maps), dtype=bool)
    for start in range(0, len(maps), _CHUNK):
        sl = slice(start, start + _CHUNK)
        S = _propagate(G, E[owner[sl]], [s], maps[sl][:, None, :])
        keep[sl] = _partial_affine_ok(G, S, elems)
    return maps[keep], owner[keep]


def _search_batch(G: FiniteGroup, E: np.ndarray, kind: str) -> list[np.ndarray]:
    """Search all idempotents in E at once; they must share the image size.

    Generators are added one at a time; after each step the candidates are
    filtered by the anti-homomorphism law and the affine identity on the
    subgroup generated so far.
    """
    n = G.order
    r = len(np.unique(E[0]))
    gens = list(G.generators)
    if kind in ("groupal", "abelian"):
        E = E[E[:, G.identity] == G.identity]
        if not len(E):
            return []
    eidx = np.arange(len(E))
    partial = np.zeros((len(E), 0, n), dtype=np.int64)
    for j, s in enumerate(gens):
        maps, owner = _options(G, E, s, r, kind)
        counts = np.bincount(owner, minlength=len(E))
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        sub = gens[: j + 1]
        elems = subgroup_closure(G, sub)
        kept, kept_idx = [], []
        per_row = counts[eidx]
        bounds = np.searchsorted(np.cumsum(per_row), np.arange(_CHUNK, per_row.sum() + _CHUNK, _CHUNK))
        lo = 0
        for hi in list(bounds) + [len(partial)]:
            hi = max(hi, lo + 1)
            if lo >= len(partial):
                break
            rows = np.arange(lo, min(hi, len(partial)))
            rep = np.repeat(rows, per_row[rows])
            if not len(rep):
                lo = hi
                continue
            offs = np.arange(len(rep)) - np.repeat(np.cumsum(per_row[rows]) - per_row[rows], per_row[rows])
            pick = starts[eidx[rep]] + offs
            cand = np.concatenate([partial[rep], maps[pick][:, None, :]], axis=1)
            cidx = eidx[rep]
            S = _propagate(G, E[cidx], sub, cand)
            ok = _batch_anti_hom_ok(G, S, elems, sub)
            ok[ok] = _partial_affine_ok(G, S[ok], elems)
            kept.append(cand[ok])
            kept_idx.append(cidx[ok])
            lo = hi
        partial = np.concatenate(kept) if kept else partial[:0]
        eidx = np.concatenate(kept_idx) if kept_idx else eidx[:0]
        if not len(partial):
            return []
    found: list[np.ndarray] = []
    for start in range(0, len(partial), _CHUNK):
        S = _propagate(G, E[eidx[start:start + _CHUNK]], gens, partial[start:start + _CHUNK])
        found.extend(S[_batch_affine_ok(G, S)])
    return found


def _worker(args):
    G, batches, kind = args
    out = []
    for E in batches:
        out.extend(_search_batch(G, E, kind))
    return out


def _batches(es: list[np.ndarray]) -> list[np.ndarray]:
    by_size: dict[int, list[np.ndarray]] = {}
    for e in es:
        by_size.setdefault(len(np.unique(e)), []).append(e)
    out = []
    for r in sorted(by_size):
        group = np.array(by_size[r])
        out.extend(group[i:i + 512] for i in range(0, len(group), 512))
    return out


def enumerate_structures(G: FiniteGroup, kind: str = "all", bound: int = ENUMERATION_BOUND,
                         jobs: int | None = 1) -> list[AffineStructure]:
    """All affine structures of the given kind on G, in lexicographic table order."""
    _check_kind(kind)
    if G.order > bound:
        raise InputError(f"enumerate is limited to order <= {bound}, got {G.order}")
    batches = _batches(idempotent_maps(G.order, cancellative=kind != "all"))
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(batches) < 2:
        tables = _worker((G, batches, kind))
    else:
        parts = [batches[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            tables = [s for chunk in pool.map(_worker, [(G, p, kind) for p in parts]) for s in chunk]
    return _finish(G, tables, kind)


# ------------------------------------------------------------------- census

@dataclass
class CensusClass:
    representative: AffineStructure
    orbit_size: int
    flags: dict
    semibrace: dict
    additive: dict
    solution: dict

    def to_dict(self) -> dict:
        return {"sigma": self.representative.sigma.tolist(), "orbit_size": self.orbit_size,
                "flags": self.flags, "semibrace": self.semibrace, "additive": self.additive,
                "solution": self.solution}


@dataclass
class Census:
    group: str
    fingerprint: str
    kind: str
    structures: int
    classes: list[CensusClass]

    def to_dict(self) -> dict:
        return {"schema": "affine-lab/census@1", "group": self.group,
                "fingerprint": self.fingerprint, "kind": self.kind,
                "structures": self.structures, "class_count": len(self.classes),
                "classes": [c.to_dict() for c in self.classes]}


def _describe(rep: AffineStructure, orbit: int) -> CensusClass:
    from .semibrace import additive_report, from_affine
    from .ybe import solution_from, solution_report

    B = from_affine(rep)
    return CensusClass(rep, orbit, rep.flags.to_dict(), B.flags.to_dict(),
                       additive_report(B).to_dict(), solution_report(solution_from(B)))


def cache_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    d = explicit or os.environ.get("AFFINE_LAB_CACHE")
    return Path(d) if d else None


def census(G: FiniteGroup, kind: str = "groupal", cache: str | os.PathLike | None = None,
           jobs: int | None = 1) -> Census:
    """Aut(G)-classes of affine structures with per-class invariants.

    Results are stored as JSON under (fingerprint, kind, version) when a cache
    directory is configured.
    """
    _check_kind(kind)
    d = cache_dir(cache)
    path = d / f"census-{G.fingerprint}-{kind}-v{CENSUS_VERSION}.json" if d else None
    if path is not None and path.exists():
        return _census_from_dict(G, json.loads(path.read_text()))
    structures = enumerate_structures(G, kind, jobs=jobs)
    classes = [_describe(c.representative, c.orbit_size) for c in equivalence_classes(structures)]
    result = Census(G.name, G.fingerprint, kind, len(structures), classes)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(result.to_dict(), sort_keys=True))
    return result


def _census_from_dict(G: FiniteGroup, data: dict) -> Census:
    classes = [CensusClass(AffineStructure(G, c["sigma"]), c["orbit_size"], c["flags"],
                           c["semibrace"], c["additive"], c["solution"]) for c in data["classes"]]
    return Census(data["group"], data["fingerprint"], data["kind"], data["structures"], classes)
