"""Set-theoretic solutions r(a, b) = (lambda_a(b), rho_b(a)) derived from semi-braces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Check, InputError, first_witness
from .groups import is_bijective
from .semibrace import SemiBrace


@dataclass(frozen=True, eq=False)
class SetSolution:
    """r stored flat: row a*n + b holds (lambda_a(b), rho_b(a))."""

    size: int
    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=np.int64)
        n = self.size
        if r.shape != (n * n, 2) or r.min() < 0 or r.max() >= n:
            raise InputError(f"solution table must be ({n * n}, 2) over 0..{n - 1}")
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @property
    def flat(self) -> np.ndarray:
        """r as a self-map of encoded pairs."""
        return self.r[:, 0] * self.size + self.r[:, 1]

    @property
    def lam(self) -> np.ndarray:
        return self.r[:, 0].reshape(self.size, self.size)

    @property
    def rho(self) -> np.ndarray:
        """rho[b, a]."""
        return self.r[:, 1].reshape(self.size, self.size).T

    def to_json(self) -> dict:
        return {"schema": "affine-lab/solution@1", "size": self.size, "r": self.r.tolist()}


def solution_from(S: SemiBrace) -> SetSolution:
    n = S.order
    lam, rho = S.lam, S.rho
    r = np.stack([lam.ravel(), rho.T.ravel()], axis=1)
    return SetSolution(n, r)


def _apply_left(R: np.ndarray, n: int, x, y, z):
    p = R[x * n + y]
    return p // n, p % n, z


def _apply_right(R: np.ndarray, n: int, x, y, z):
    p = R[y * n + z]
    return x, p // n, p % n


def check_ybe(sol: SetSolution) -> Check:
    """(r x id)(id x r)(r x id) == (id x r)(r x id)(id x r) on all triples; witness (x, y, z)."""
    n, R = sol.size, sol.flat
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    lhs = _apply_left(R, n, *_apply_right(R, n, *_apply_left(R, n, x, y, z)))
    rhs = _apply_right(R, n, *_apply_left(R, n, *_apply_right(R, n, x, y, z)))
    bad = np.zeros(x.shape, dtype=bool)
    for u, v in zip(lhs, rhs):
        bad |= u != v
    return first_witness("ybe", bad)


def check_left_nondeg(sol: SetSolution) -> bool:
    return all(is_bijective(row) for row in sol.lam)


def check_right_nondeg(sol: SetSolution) -> bool:
    return all(is_bijective(row) for row in sol.rho)


def check_bijective(sol: SetSolution) -> bool:
    return is_bijective(sol.flat)


def check_involutive(sol: SetSolution) -> bool:
    R = sol.flat
    return bool(np.array_equal(R[R], np.arange(len(R))))


def check_cubic(sol: SetSolution) -> bool:
    R = sol.flat
    return bool(np.array_equal(R[R[R]], R))


CHECKS = {
    "ybe": lambda s: bool(check_ybe(s)),
    "left_nondeg": check_left_nondeg,
    "right_nondeg": check_right_nondeg,
    "bijective": check_bijective,
    "involutive": check_involutive,
    "cubic": check_cubic,
}


def solution_report(sol: SetSolution, which=None) -> dict[str, bool]:
    names = list(CHECKS) if which is None else list(which)
    unknown = [w for w in names if w not in CHECKS]
    if unknown:
        raise InputError(f"unknown solution checks: {unknown}")
    return {w: CHECKS[w](sol) for w in names}
