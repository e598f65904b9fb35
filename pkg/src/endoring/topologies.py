"""Neighbourhoods of zero in End(A) for the finite, Liebert, right-annihilator
and functorial P(V) topologies, with containment decisions and witnesses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

import numpy as np

from . import _batch
from .endo import Endo, end_order, enumerate_endos, image, is_idempotent, kernel, random_endo
from .errors import (
    EnumerationGuardExceeded,
    NotElementary,
    NotIdempotent,
    ParentMismatch,
    ZeroElement,
    ZeroSubgroup,
    endo_cap,
    guard_elements,
    guard_endos,
)
from .groups import (
    GroupElement,
    PGroup,
    Subgroup,
    all_subgroups,
    intersection,
    socle,
    span,
)


@dataclass(frozen=True)
class FiniteSet:
    """T(K) = {x : x kills every element of K}."""

    K: tuple[GroupElement, ...]


@dataclass(frozen=True)
class Socle:
    """T(A_n) = {x : x kills A[p^n]}."""

    n: int


@dataclass(frozen=True)
class AnnRight:
    """Ann_r(e) = {x : e o x = 0}."""

    e: Endo


@dataclass(frozen=True)
class FunctorialP:
    """P(V) = {x : x(A) in V}."""

    V: Subgroup


Kind = Union[FiniteSet, Socle, AnnRight, FunctorialP]


@dataclass(frozen=True)
class NeighborhoodIdeal:
    parent: PGroup
    kind: Kind

    def contains(self, x: Endo) -> bool:
        return nbhd_contains(self, x)

    def __contains__(self, x: Endo) -> bool:
        return nbhd_contains(self, x)

    def members(self) -> Iterator[Endo]:
        """Materialise the ideal (guarded)."""
        return (x for x in enumerate_endos(self.parent) if nbhd_contains(self, x))


def finite_set(A: PGroup, K: Sequence[GroupElement]) -> NeighborhoodIdeal:
    if any(a.parent != A for a in K):
        raise ParentMismatch("K must lie in A")
    return NeighborhoodIdeal(A, FiniteSet(tuple(K)))


def socle_nbhd(A: PGroup, n: int) -> NeighborhoodIdeal:
    if n < 0:
        raise ValueError("n must be >= 0")
    return NeighborhoodIdeal(A, Socle(n))


def ann_right(e: Endo) -> NeighborhoodIdeal:
    return NeighborhoodIdeal(e.parent, AnnRight(e))


def functorial_p(V: Subgroup) -> NeighborhoodIdeal:
    return NeighborhoodIdeal(V.parent, FunctorialP(V))


def nbhd_contains(N: NeighborhoodIdeal, x: Endo) -> bool:
    if x.parent != N.parent:
        raise ParentMismatch("endo and neighbourhood live over different groups")
    kind = N.kind
    if isinstance(kind, FiniteSet):
        return all(not x(a) for a in kind.K)
    if isinstance(kind, Socle):
        return all(not x(s) for s in socle(N.parent, kind.n).basis)
    if isinstance(kind, AnnRight):
        return (kind.e @ x).is_zero()
    if isinstance(kind, FunctorialP):
        return image(x) <= kind.V
    raise TypeError(f"unknown neighbourhood kind {kind!r}")


@dataclass(frozen=True)
class ContainmentVerdict:
    contained: bool
    exact: bool
    samples: int
    witness: Endo | None = None

    @property
    def label(self) -> str:
        if not self.contained:
            return "not contained"
        return "contained" if self.exact else "probably contained"


def decide_containment(
    N1: NeighborhoodIdeal, N2: NeighborhoodIdeal, samples: int = 2000, seed: int = 0
) -> ContainmentVerdict:
    """Is N1 a subset of N2?  Exhaustive under the guard, randomised above it.

    Above the guard, random endos are drawn and kept when they land in N1
    (P(V) members are drawn directly), so "probably contained" means no
    witness among ``samples`` tries.
    """
    if N1.parent != N2.parent:
        raise ParentMismatch("neighbourhoods live over different groups")
    A = N1.parent
    if end_order(A) <= endo_cap():
        n = 0
        for x in enumerate_endos(A):
            n += 1
            if nbhd_contains(N1, x) and not nbhd_contains(N2, x):
                return ContainmentVerdict(False, True, n, x)
        return ContainmentVerdict(True, True, n)
    rng = random.Random(seed)
    for n in range(1, samples + 1):
        if isinstance(N1.kind, FunctorialP):
            x = random_endo_in_pv(N1.kind.V, rng)
        else:
            x = random_endo(A, rng)
        if nbhd_contains(N1, x) and not nbhd_contains(N2, x):
            return ContainmentVerdict(False, True, n, x)
    return ContainmentVerdict(True, False, samples)


# -- exhaustive masks over endo_array(A) -------------------------------------


def finite_set_mask(E: np.ndarray, A: PGroup, K: Sequence[GroupElement]) -> np.ndarray:
    return _batch.kills(E, K, A)


def socle_mask(E: np.ndarray, A: PGroup, n: int) -> np.ndarray:
    return _batch.kills(E, socle(A, n).basis, A)


def socle_intersection_identity(A: PGroup, n: int) -> bool:
    """T(A_n) equals the intersection of T({a}) over a in A[p^n], checked over all of End(A)."""
    guard_elements(A.order)
    E = _batch.endo_array(A)
    lhs = socle_mask(E, A, n)
    rhs = np.ones(len(E), dtype=bool)
    for a in socle(A, n).elements():
        rhs &= _batch.kills(E, [a], A)
    return bool((lhs == rhs).all())


def least_killing_exponent(A: PGroup, K: Sequence[GroupElement]) -> int:
    n = 0
    while any(A.p**n * a for a in K):
        n += 1
    return n


def liebert_refines_finite(A: PGroup, K: Sequence[GroupElement], certify: bool = True) -> int:
    """Least n with p^n K = 0; T(A_n) is contained in T(K).

    The containment follows from K lying in A[p^n] (checked by canonical
    form).  With ``certify`` it is also checked over every endomorphism,
    which needs End(A) under the guard.
    """
    if any(a.parent != A for a in K):
        raise ParentMismatch("K must lie in A")
    n = least_killing_exponent(A, K)
    S = socle(A, n)
    if not all(S.contains(a) for a in K):
        raise ArithmeticError(f"{K} not inside A[p^{n}]")
    if certify:
        E = _batch.endo_array(A)
        inside = socle_mask(E, A, n)
        if (inside & ~finite_set_mask(E, A, K)).any():
            raise ArithmeticError(f"T(A_{n}) not contained in T(K) for K={K}")
    return n


def cyclic_generator_sets(A: PGroup) -> list[list[GroupElement]]:
    """Singletons {a} for every a, plus every subset of the standard generators."""
    Ks = [[a] for a in A.elements()]
    Ks += [[A.theta(i) for i in range(A.rank) if mask >> i & 1] for mask in range(1 << A.rank)]
    return Ks


def admissibility_sweep(A: PGroup) -> dict:
    """Liebert-below-finite containment for every cyclic-generator set, plus the socle identity."""
    Ks = cyclic_generator_sets(A)
    failures, levels = [], []
    for K in Ks:
        try:
            levels.append(liebert_refines_finite(A, K))
        except ArithmeticError:
            failures.append([list(a.coords) for a in K])
    return {
        "finite_sets_checked": len(Ks),
        "liebert_contained_in_finite": not failures,
        "failures": failures,
        "max_level": max(levels, default=0),
        "socle_intersection_identity": {
            str(n): socle_intersection_identity(A, n) for n in range(A.top + 1)
        },
    }


# -- summable families --------------------------------------------------------


@dataclass(frozen=True)
class SummableFamily:
    parent: PGroup
    members: tuple[Endo, ...] = field(default=())

    def support(self, a: GroupElement) -> frozenset[int]:
        """Indices i with x_i(a) != 0."""
        return frozenset(i for i, x in enumerate(self.members) if x(a))


def is_summable(F: SummableFamily) -> tuple[bool, Endo]:
    """Every finite family is summable; returns the pointwise sum."""
    total = Endo.zero(F.parent)
    for x in F.members:
        if x.parent != F.parent:
            raise ParentMismatch("family member over a different group")
        total = total + x
    return True, total


# -- witnesses ----------------------------------------------------------------


def _functional_index(a: GroupElement) -> int:
    for t, c in enumerate(a.coords):
        if c:
            return t
    raise ZeroElement("a must be nonzero")


def _rank_one(A: PGroup, t: int, w: GroupElement) -> Endo:
    """x -> x_t w over an elementary group."""
    r = A.rank
    return Endo(A, tuple(tuple(w.coords[i] if j == t else 0 for j in range(r)) for i in range(r)))


def witness_nonadmissible_annr(A: PGroup, e: Endo, a: GroupElement) -> Endo | None:
    """alpha with e o alpha = 0 and alpha(a) != 0, so Ann_r(e) is not inside T({a}).

    None when e is the identity (Ann_r(1) = 0).
    """
    if not A.is_elementary:
        raise NotElementary(f"{A} is not elementary")
    if e.parent != A or a.parent != A:
        raise ParentMismatch("e and a must live over A")
    if not is_idempotent(e):
        raise NotIdempotent(f"{e} is not idempotent")
    if not a:
        raise ZeroElement("a must be nonzero")
    if e.is_zero():
        return Endo.identity(A)
    ker = kernel(e)
    if ker.is_zero():
        return None
    alpha = _rank_one(A, _functional_index(a), ker.basis[0])
    assert (e @ alpha).is_zero() and alpha(a)
    return alpha


def witness_nonadmissible_pv(A: PGroup, V: Subgroup, a: GroupElement) -> Endo:
    """alpha with alpha(A) in V and alpha(a) != 0, so P(V) is not inside T({a})."""
    if not A.is_elementary:
        raise NotElementary(f"{A} is not elementary")
    if V.parent != A or a.parent != A:
        raise ParentMismatch("V and a must live over A")
    if V.is_zero():
        raise ZeroSubgroup("V must be nonzero")
    if not a:
        raise ZeroElement("a must be nonzero")
    alpha = _rank_one(A, _functional_index(a), V.basis[0])
    assert image(alpha) <= V and alpha(a)
    return alpha


# -- P(V) calculus ------------------------------------------------------------


def random_element(S: Subgroup, rng: random.Random) -> GroupElement:
    """Uniform element of S (uniform coefficients on the canonical generators)."""
    A = S.parent
    out = A.zero()
    for b in S.basis:
        out = out + rng.randrange(A.p**A.top) * b
    return out


def random_endo_in_pv(V: Subgroup, rng: random.Random) -> Endo:
    """Random x with x(A) in V: column j is drawn from V meet A[p^{k_j}]."""
    A = V.parent
    cols = [random_element(intersection(V, socle(A, k)), rng).coords for k in A.exponents]
    return Endo(A, tuple(zip(*cols)))


def random_subgroup(S: Subgroup, rng: random.Random, gens: int = 2) -> Subgroup:
    return span(S.parent, [random_element(S, rng) for _ in range(gens)])


def pv_right_ideal_check(A: PGroup, V: Subgroup, samples: int = 200, seed: int = 0) -> bool:
    """Sampled check of the P(V) calculus around a given V.

    alpha in P(V) and arbitrary beta give alpha o beta in P(V); for sampled
    V1 in V2, P(V1) lies in P(V2); for sampled V3 in V1 meet V2, P(V3)
    lies in P(V1) meet P(V2).
    """
    if V.parent != A:
        raise ParentMismatch("V must be a subgroup of A")
    rng = random.Random(seed)
    PV = functorial_p(V)
    whole = A.whole()
    for _ in range(samples):
        alpha = random_endo_in_pv(V, rng)
        beta = random_endo(A, rng)
        if not (nbhd_contains(PV, alpha) and nbhd_contains(PV, alpha @ beta)):
            return False
        V2 = V if rng.random() < 0.5 else random_subgroup(whole, rng)
        V1 = random_subgroup(V2, rng)
        x = random_endo_in_pv(V1, rng)
        if not nbhd_contains(functorial_p(V2), x):
            return False
        W1, W2 = V, random_subgroup(whole, rng)
        V3 = random_subgroup(intersection(W1, W2), rng)
        y = random_endo_in_pv(V3, rng)
        if not (nbhd_contains(functorial_p(W1), y) and nbhd_contains(functorial_p(W2), y)):
            return False
    return True


@dataclass
class PVReport:
    subgroups: int
    right_ideal: bool
    monotone: bool
    directed: bool
    hausdorff: bool

    @property
    def ok(self) -> bool:
        return self.right_ideal and self.monotone and self.directed and self.hausdorff


def pv_exhaustive_check(A: PGroup) -> PVReport:
    """The P(V) calculus over every subgroup V and every endomorphism.

    Right-ideal closure: P(V) o End(A) in P(V).  Monotonicity: V1 <= V2
    implies P(V1) <= P(V2).  Directedness: P(V1 meet V2) <= P(V1) meet P(V2).
    Hausdorff: the intersection of all P(V) is {0}.
    """
    E = _batch.endo_array(A)
    subs = all_subgroups(A)
    guard_endos(len(subs) * len(E), "subgroup x endo table")
    tables = {V: _batch.subgroup_table(V) for V in subs}
    masks = {V: _batch.images_in(E, t, A) for V, t in tables.items()}

    right_ideal = True
    for V in subs:
        members = E[masks[V]]
        for start in range(0, len(members), 64):
            prods = _batch.compose(members[start:start + 64, None], E[None], A)
            flat = prods.reshape(-1, A.rank, A.rank)
            if not _batch.images_in(flat, tables[V], A).all():
                right_ideal = False
                break
        if not right_ideal:
            break

    monotone = all(
        not (masks[V1] & ~masks[V2]).any() for V1 in subs for V2 in subs if V1 <= V2
    )
    directed = all(
        not (masks[intersection(V1, V2)] & ~(masks[V1] & masks[V2])).any() for V1 in subs for V2 in subs
    )
    common = np.logical_and.reduce([masks[V] for V in subs])
    zero_key = np.zeros((A.rank, A.rank), dtype=np.int64).tobytes()
    hausdorff = [k for k, c in zip(_batch.matrix_keys(E), common) if c] == [zero_key]
    return PVReport(len(subs), right_ideal, monotone, directed, hausdorff)


def annl_identity_check(A: PGroup, e: Endo) -> bool:
    """{x : x o e = 0} equals {x - x o e : x in End(A)}, checked over all of End(A)."""
    if e.parent != A:
        raise ParentMismatch("e must be an endo of A")
    if not is_idempotent(e):
        raise NotIdempotent(f"{e} is not idempotent")
    E = _batch.endo_array(A)
    emat = np.array(e.matrix, dtype=np.int64)
    xe = _batch.compose(E, emat, A)
    lhs = set(_batch.matrix_keys(E[~xe.reshape(len(E), -1).any(axis=1)]))
    rhs = set(_batch.matrix_keys((E - xe) % _batch.row_mods(A)))
    return lhs == rhs


def idempotents(A: PGroup) -> list[Endo]:
    return [f for f in enumerate_endos(A) if is_idempotent(f)]


def left_ideal_check(N: NeighborhoodIdeal, samples: int = 100, seed: int = 0) -> bool:
    """Sampled closure of N under addition and left multiplication by arbitrary endos."""
    A = N.parent
    rng = random.Random(seed)
    try:
        members = list(N.members())
    except EnumerationGuardExceeded:
        members = [x for x in (random_endo(A, rng) for _ in range(20 * samples)) if nbhd_contains(N, x)]
    if not members:
        return True
    for _ in range(samples):
        x, y, b = rng.choice(members), rng.choice(members), random_endo(A, rng)
        if not (nbhd_contains(N, x + y) and nbhd_contains(N, b @ x)):
            return False
    return True


def right_ideal_check(N: NeighborhoodIdeal, samples: int = 100, seed: int = 0) -> bool:
    """Sampled closure of N under addition and right multiplication by arbitrary endos."""
    A = N.parent
    rng = random.Random(seed)
    try:
        members = list(N.members())
    except EnumerationGuardExceeded:
        members = [x for x in (random_endo(A, rng) for _ in range(20 * samples)) if nbhd_contains(N, x)]
    if not members:
        return True
    for _ in range(samples):
        x, y, b = rng.choice(members), rng.choice(members), random_endo(A, rng)
        if not (nbhd_contains(N, x + y) and nbhd_contains(N, x @ b)):
            return False
    return True
