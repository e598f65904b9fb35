"""Jacobson radical of End(A): quasi-regularity, the layer criterion, oracles."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _batch
from .endo import (
    Endo,
    elementary,
    end_order,
    entry_step,
    enumerate_endos,
    inverse,
    is_invertible,
    kernel,
    restrict_block,
)
from .errors import NotQuasiInjective, guard_endos
from .groups import GroupElement, PGroup, is_essential, span


@dataclass(frozen=True)
class QuasiInverseResult:
    exists: bool
    witness: Endo | None = None


@dataclass(frozen=True)
class LayerDecomposition:
    """Summands grouped by exponent, largest exponent first."""

    parent: PGroup
    layers: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def multiplicities(self) -> dict[int, int]:
        return {e: len(idx) for e, idx in self.layers}

    @property
    def quotient_order(self) -> int:
        """|End(A)/J| = p^(sum of squared multiplicities)."""
        return self.parent.p ** sum(len(idx) ** 2 for _, idx in self.layers)


def layer_decomposition(A: PGroup) -> LayerDecomposition:
    layers = []
    for e in sorted(set(A.exponents), reverse=True):
        layers.append((e, tuple(i for i, k in enumerate(A.exponents) if k == e)))
    return LayerDecomposition(A, tuple(layers))


def nilpotency_certificate(x: Endo) -> int | None:
    """Least s with x^s = 0, or None when x is not nilpotent.

    A nilpotent endo of a module of composition length L satisfies x^L = 0,
    and A has length sum(k_i).
    """
    A = x.parent
    power = Endo.identity(A)
    for s in range(1, sum(A.exponents) + 1):
        power = power @ x
        if power.is_zero():
            return s
    return None


def quasi_inverse(x: Endo) -> QuasiInverseResult:
    """Solve x + w + x w = 0 for w."""
    A = x.parent
    s = nilpotency_certificate(x)
    if s is not None:
        w, term = Endo.zero(A), Endo.identity(A)
        for i in range(1, s):
            term = term @ x
            w = w + (term if i % 2 == 0 else -term)
    else:
        one_plus = Endo.identity(A) + x
        if not is_invertible(one_plus):
            return QuasiInverseResult(False, None)
        w = inverse(one_plus) @ (-x)
    if not (x + w + x @ w).is_zero():
        raise ArithmeticError(f"quasi-inverse check failed for {x}")
    return QuasiInverseResult(True, w)


def semisimple_quotient(x: Endo) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Per exponent layer, the diagonal block of x reduced mod p."""
    p = x.parent.p
    out = []
    for _, idx in layer_decomposition(x.parent).layers:
        out.append(tuple(tuple(x.matrix[i][j] % p for j in idx) for i in idx))
    return tuple(out)


def radical_membership(x: Endo) -> bool:
    """Layer criterion: every same-exponent diagonal block vanishes mod p."""
    return not any(any(row) for block in semisimple_quotient(x) for row in block)


def _oracle_mask_direct(E: np.ndarray, A: PGroup, seed: int = 0) -> np.ndarray:
    """Mask of {x : 1 + y x injective for all y}, testing every pair (x, y).

    Candidates y are scanned in a fixed shuffled order in chunks so that
    non-members are usually rejected on the first chunk.
    """
    n, r = len(E), A.rank
    Y = E[np.random.default_rng(seed).permutation(n)]
    eye = np.eye(r, dtype=np.int64)
    mods = _batch.row_mods(A)
    chunk = 512
    mask = np.zeros(n, dtype=bool)
    for t in range(n):
        good = True
        for start in range(0, n, chunk):
            Q = (eye + np.matmul(Y[start:start + chunk], E[t])) % mods
            if not _batch.injective(Q, A).all():
                good = False
                break
        mask[t] = good
    return mask


def _oracle_mask_socle(E: np.ndarray, A: PGroup) -> np.ndarray:
    """Same mask, pushed through the restriction map to A[p].

    1 + y x is injective iff I + s(y) s(x) is nonsingular over F_p, where s
    is restriction to A[p]; it suffices to range over the distinct s(y).
    """
    p, r = A.p, A.rank
    S = _batch.socle_matrices(E, A) % p
    U, inv = np.unique(S.reshape(len(S), -1), axis=0, return_inverse=True)
    U = U.reshape(-1, r, r)
    eye = np.eye(r, dtype=np.int64)
    good = np.array([_batch.full_rank_mod_p((eye + U @ u) % p, p).all() for u in U])
    return good[np.asarray(inv).reshape(-1)]


def radical_oracle_mask(A: PGroup, method: str = "socle") -> tuple[np.ndarray, np.ndarray]:
    """All endos (as an array) and the brute-force mask of J(End A) over them."""
    E = _batch.endo_array(A)
    if method == "socle":
        return E, _oracle_mask_socle(E, A)
    if method == "direct":
        return E, _oracle_mask_direct(E, A)
    raise ValueError(f"unknown oracle method {method!r}")


def radical_oracle(A: PGroup, method: str = "socle") -> frozenset[Endo]:
    """J(End A) by brute force: x is in J iff 1 + y x is invertible for every y."""
    E, mask = radical_oracle_mask(A, method)
    return frozenset(_batch.to_endos(A, E[mask]))


def radical_order(A: PGroup) -> int:
    return end_order(A) // layer_decomposition(A).quotient_order


def radical_generators(A: PGroup) -> list[Endo]:
    """Additive generators of J: p E_ij inside a layer, the least cross-layer entries elsewhere."""
    gens = []
    r = A.rank
    for i in range(r):
        for j in range(r):
            if A.exponents[i] == A.exponents[j]:
                gens.append(elementary(A, i, j, A.p))
            else:
                gens.append(elementary(A, i, j))
    return [g for g in gens if not g.is_zero()]


def additive_group(A: PGroup) -> PGroup:
    """(End A, +) as a p-group, entry (i, j) contributing Z(p^min(k_i, k_j))."""
    return PGroup(A.p, tuple(min(a, b) for a in A.exponents for b in A.exponents))


def _as_vector(f: Endo, G: PGroup) -> GroupElement:
    A = f.parent
    r = A.rank
    return G.element([f.matrix[i][j] // entry_step(A, i, j) for i in range(r) for j in range(r)])


def _from_vector(v: GroupElement, A: PGroup) -> Endo:
    r = A.rank
    return Endo(
        A,
        tuple(tuple(v.coords[i * r + j] * entry_step(A, i, j) for j in range(r)) for i in range(r)),
    )


def ideal_power_orders(A: PGroup, gens: Iterable[Endo] | None = None) -> list[int]:
    """Orders of J, J^2, ... up to the first zero power.

    J^{t+1} is additively spanned by products g h with g an additive
    generator of J and h one of J^t.
    """
    gens = radical_generators(A) if gens is None else list(gens)
    G = additive_group(A)
    cur = span(G, [_as_vector(g, G) for g in gens])
    orders = [cur.order]
    while not cur.is_zero():
        basis = [_from_vector(v, A) for v in cur.basis]
        cur = span(G, [_as_vector(g @ h, G) for g in gens for h in basis])
        orders.append(cur.order)
    return orders


def nilpotency_index(A: PGroup, gens: Iterable[Endo] | None = None) -> int:
    """Least t with J^t = 0 (1 when J itself is zero)."""
    return len(ideal_power_orders(A, gens))


def large_kernel_radical(A: PGroup) -> frozenset[Endo]:
    """{x : ker x essential}; only defined for homogeneous (quasi-injective) A."""
    if not A.is_homogeneous:
        raise NotQuasiInjective(f"{A} has {len(set(A.exponents))} exponent layers")
    guard_endos(end_order(A))
    return frozenset(x for x in enumerate_endos(A) if is_essential(kernel(x)))


def _block_homs(A: PGroup, rows: tuple[int, ...], cols: tuple[int, ...]) -> list[Endo]:
    """All endos of A supported on the (rows, cols) block."""
    r = A.rank
    cells = [(i, j) for i in rows for j in cols]
    ranges = [range(0, A.moduli[i], entry_step(A, i, j)) for i, j in cells]
    out = []
    for vals in itertools.product(*ranges):
        m = [[0] * r for _ in range(r)]
        for (i, j), v in zip(cells, vals):
            m[i][j] = v
        out.append(Endo(A, tuple(tuple(x) for x in m)))
    return out


def _block_size(A: PGroup, rows, cols) -> int:
    return A.p ** sum(min(A.exponents[i], A.exponents[j]) for i in rows for j in cols)


def block_inclusion_check(
    A: PGroup, split_index: int, exhaustive: bool | None = None, samples: int = 200, seed: int = 0
) -> bool:
    """Check Hom(C,B)Hom(B,C) in J(End B) and Hom(B,C)Hom(C,B) in J(End C).

    B is summands 0..split_index, C the rest; B must carry strictly larger
    exponents than C.
    """
    r = A.rank
    if not 0 <= split_index < r:
        raise IndexError(f"split index {split_index} out of range")
    B = tuple(range(split_index + 1))
    C = tuple(range(split_index + 1, r))
    if not C:
        return True
    if min(A.exponents[i] for i in B) <= max(A.exponents[j] for j in C):
        raise ValueError("B must carry strictly larger exponents than C")
    n_cb, n_bc = _block_size(A, B, C), _block_size(A, C, B)
    if exhaustive is None:
        exhaustive = n_cb * n_bc <= 1 << 14
    if exhaustive:
        guard_endos(n_cb * n_bc, "block products")
        pairs = itertools.product(_block_homs(A, B, C), _block_homs(A, C, B))
    else:
        rng = random.Random(seed)
        cb, bc = _block_homs_sampler(A, B, C, rng), _block_homs_sampler(A, C, B, rng)
        pairs = ((cb(), bc()) for _ in range(samples))
    for a, b in pairs:
        # a: C -> B, b: B -> C
        if not radical_membership(restrict_block(a @ b, B)):
            return False
        if not radical_membership(restrict_block(b @ a, C)):
            return False
    return True


def _block_homs_sampler(A: PGroup, rows, cols, rng: random.Random):
    r = A.rank

    def draw() -> Endo:
        m = [[0] * r for _ in range(r)]
        for i in rows:
            for j in cols:
                m[i][j] = rng.randrange(0, A.moduli[i], entry_step(A, i, j))
        return Endo(A, tuple(tuple(x) for x in m))

    return draw


def radical_report(A: PGroup, oracle: bool = False, index: bool = True) -> dict:
    """Summary used by the CLI ``radical`` command."""
    out = {
        "order_end": end_order(A),
        "order_radical": radical_order(A),
        "nilpotency_index": nilpotency_index(A) if index else None,
        "criterion_agrees_oracle": "skipped",
    }
    if oracle:
        E, mask = radical_oracle_mask(A)
        crit = np.array([radical_membership(f) for f in _batch.to_endos(A, E)], dtype=bool)
        out["criterion_agrees_oracle"] = bool((crit == mask).all())
        out["order_radical"] = int(mask.sum())
    return out
