"""Vectorised helpers for the exhaustive oracles.

Everything here works on stacks of endomorphism matrices of shape
(n, r, r), int64.  Only used under the enumeration guard, where
entries are tiny, so int64 products cannot overflow.
"""

from __future__ import annotations

import itertools

import numpy as np

from .endo import Endo, end_order, entry_values
from .errors import guard_endos
from .groups import GroupElement, PGroup, Subgroup


def _check_width(A: PGroup):
    if A.rank * (A.p**A.top) ** 2 >= 1 << 62:
        raise OverflowError(f"{A} too large for batched int64 arithmetic")


def endo_array(A: PGroup) -> np.ndarray:
    """All endomorphisms, in the same order as ``enumerate_endos``."""
    guard_endos(end_order(A))
    _check_width(A)
    r = A.rank
    ranges = [list(entry_values(A, i, j)) for i in range(r) for j in range(r)]
    flat = np.array(list(itertools.product(*ranges)), dtype=np.int64)
    return flat.reshape(-1, r, r)


def to_array(endos) -> np.ndarray:
    return np.array([f.matrix for f in endos], dtype=np.int64)


def to_endos(A: PGroup, arr: np.ndarray) -> list[Endo]:
    return [Endo(A, tuple(tuple(int(x) for x in row) for row in m)) for m in arr]


def row_mods(A: PGroup) -> np.ndarray:
    return np.array(A.moduli, dtype=np.int64)[:, None]


def compose(F: np.ndarray, G: np.ndarray, A: PGroup) -> np.ndarray:
    """Broadcast F o G reduced row-wise."""
    return np.matmul(F, G) % row_mods(A)


def full_rank_mod_p(S: np.ndarray, p: int) -> np.ndarray:
    """Which square matrices in the stack are invertible over F_p."""
    S = S % p
    n, r, _ = S.shape
    ok = np.ones(n, dtype=bool)
    inv = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    idx = np.arange(n)
    for c in range(r):
        nz = S[:, c:, c] != 0
        ok &= nz.any(axis=1)
        prow = c + nz.argmax(axis=1)
        top = S[idx, c].copy()
        S[idx, c] = S[idx, prow]
        S[idx, prow] = top
        S[idx, c] = (S[idx, c] * inv[S[idx, c, c]][:, None]) % p
        f = S[:, c + 1:, c]
        S[:, c + 1:, :] = (S[:, c + 1:, :] - f[:, :, None] * S[:, c, None, :]) % p
    return ok


def socle_matrices(F: np.ndarray, A: PGroup) -> np.ndarray:
    """Matrices over F_p of the restrictions to A[p], in the basis p^{k_i - 1} theta_i.

    Restriction to the fully invariant subgroup A[p] is a ring
    homomorphism End(A) -> M_r(F_p).
    """
    p = A.p
    ks = np.array(A.exponents, dtype=np.int64)
    col_scale = (p ** (ks - 1))[None, None, :]
    mods = (p**ks)[None, :, None]
    low = (p ** (ks - 1))[None, :, None]
    return ((F * col_scale) % mods) // low


def injective(F: np.ndarray, A: PGroup) -> np.ndarray:
    """An endo of a finite p-group is injective iff its restriction to A[p] is."""
    return full_rank_mod_p(socle_matrices(F, A), A.p)


def radices(A: PGroup) -> np.ndarray:
    w, out = 1, []
    for m in A.moduli:
        out.append(w)
        w *= m
    return np.array(out, dtype=np.int64)


def element_code(a: GroupElement) -> int:
    return int(np.dot(radices(a.parent), np.array(a.coords, dtype=np.int64)))


def subgroup_table(S: Subgroup) -> np.ndarray:
    """Boolean lookup table indexed by element code."""
    table = np.zeros(S.parent.order, dtype=bool)
    for a in S.elements():
        table[element_code(a)] = True
    return table


def images_in(F: np.ndarray, table: np.ndarray, A: PGroup) -> np.ndarray:
    """Which endos map every generator (hence all of A) into the tabulated subgroup."""
    codes = np.einsum("nij,i->nj", F, radices(A))
    return table[codes].all(axis=1)


def kills(F: np.ndarray, vectors, A: PGroup) -> np.ndarray:
    """Which endos vanish on every listed element."""
    ok = np.ones(len(F), dtype=bool)
    mods = np.array(A.moduli, dtype=np.int64)
    for v in vectors:
        img = np.einsum("nij,j->ni", F, np.array(v.coords, dtype=np.int64)) % mods
        ok &= ~img.any(axis=1)
    return ok


def matrix_keys(F: np.ndarray) -> list[bytes]:
    return [m.tobytes() for m in np.ascontiguousarray(F)]
