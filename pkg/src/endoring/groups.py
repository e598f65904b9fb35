"""Finite abelian p-groups A = Z(p^k0) + ... + Z(p^k_{r-1}) and their subgroups.

Subgroups are stored in canonical form: coordinates are scaled into the
common ring Z/p^K (K = max k_i) by multiplying coordinate i with
p^(K - k_i), and the resulting row span is put into Howell form.
"""

from __future__ import annotations

import itertools
import re
from math import gcd
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ParentMismatch, guard_elements
from .howell import howell_form, pivot_col, reduce_vector, span_order

_LITERAL_TERM = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PGroup:
    """The group Z(p^k0) + ... + Z(p^k_{r-1})."""

    p: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(k) for k in self.exponents))
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if not self.exponents:
            raise ValueError("a PGroup needs at least one cyclic summand")
        if any(k < 1 for k in self.exponents):
            raise ValueError(f"exponents must be >= 1, got {self.exponents}")
        if self.p ** max(self.exponents) >= 1 << 63:
            raise ValueError("p^max(k) must fit in 64-bit arithmetic")

    @classmethod
    def parse(cls, literal: str) -> "PGroup":
        """Parse a literal such as ``2^1+2^2+2^3``."""
        primes, ks = set(), []
        for term in literal.split("+"):
            m = _LITERAL_TERM.match(term)
            if not m:
                raise ValueError(f"bad group literal term {term!r} in {literal!r}")
            primes.add(int(m.group(1)))
            ks.append(int(m.group(2)))
        if len(primes) != 1:
            raise ValueError(f"group literal {literal!r} must use a single prime")
        return cls(primes.pop(), tuple(ks))

    @property
    def literal(self) -> str:
        return "+".join(f"{self.p}^{k}" for k in self.exponents)

    def __str__(self):
        return self.literal

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @cached_property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.p**k for k in self.exponents)

    @property
    def top(self) -> int:
        """Largest exponent K; p^K annihilates A."""
        return max(self.exponents)

    @property
    def order(self) -> int:
        return self.p ** sum(self.exponents)

    @property
    def is_elementary(self) -> bool:
        return all(k == 1 for k in self.exponents)

    @property
    def is_homogeneous(self) -> bool:
        return len(set(self.exponents)) == 1

    def element(self, coords: Sequence[int]) -> "GroupElement":
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return GroupElement(self, tuple(int(c) % m for c, m in zip(coords, self.moduli)))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def theta(self, i: int) -> "GroupElement":
        """Standard generator of the i-th cyclic summand."""
        c = [0] * self.rank
        c[i] = 1
        return GroupElement(self, tuple(c))

    def generators(self) -> tuple["GroupElement", ...]:
        return tuple(self.theta(i) for i in range(self.rank))

    def elements(self) -> Iterator["GroupElement"]:
        guard_elements(self.order)
        for coords in itertools.product(*(range(m) for m in self.moduli)):
            yield GroupElement(self, coords)

    def whole(self) -> "Subgroup":
        return span(self, self.generators())

    def trivial(self) -> "Subgroup":
        return span(self, ())

    # scaled embedding into (Z/p^K)^r
    def scale(self, coords: Sequence[int]) -> tuple[int, ...]:
        K = self.top
        return tuple(c * self.p ** (K - k) for c, k in zip(coords, self.exponents))

    def unscale(self, row: Sequence[int]) -> tuple[int, ...]:
        K = self.top
        return tuple(x // self.p ** (K - k) for x, k in zip(row, self.exponents))


@dataclass(frozen=True)
class GroupElement:
    parent: PGroup
    coords: tuple[int, ...]

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.parent != self.parent:
            raise ParentMismatch("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.parent,
            tuple((a + b) % m for a, b, m in zip(self.coords, other.coords, self.parent.moduli)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.parent, tuple((-a) % m for a, m in zip(self.coords, self.parent.moduli)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, n: int) -> "GroupElement":
        return GroupElement(self.parent, tuple((n * a) % m for a, m in zip(self.coords, self.parent.moduli)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    @property
    def order(self) -> int:
        """Additive order of the element."""
        o = 1
        for c, m in zip(self.coords, self.parent.moduli):
            if c:
                o = max(o, m // gcd(c, m))
        return o

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"{self.parent.literal}{list(self.coords)}"


def elem_add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def elem_scale(n: int, a: GroupElement) -> GroupElement:
    return n * a


@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as its canonical generator matrix.

    Build instances with :func:`span`; two subgroups compare equal exactly
    when their canonical matrices coincide.
    """

    parent: PGroup
    rows: tuple[tuple[int, ...], ...] = field(repr=False)  # Howell form, scaled coordinates

    @property
    def basis(self) -> tuple[GroupElement, ...]:
        return tuple(GroupElement(self.parent, self.parent.unscale(r)) for r in self.rows)

    @property
    def order(self) -> int:
        return span_order(self.rows, self.parent.p, self.parent.top)

    def is_zero(self) -> bool:
        return not self.rows

    def contains(self, a: GroupElement) -> bool:
        if a.parent != self.parent:
            raise ParentMismatch("element and subgroup belong to different groups")
        A = self.parent
        return not any(reduce_vector(self.rows, A.scale(a.coords), A.p, A.top))

    def __contains__(self, a: GroupElement) -> bool:
        return self.contains(a)

    def __le__(self, other: "Subgroup") -> bool:
        if other.parent != self.parent:
            raise ParentMismatch("subgroups belong to different groups")
        return all(other.contains(b) for b in self.basis)

    def __ge__(self, other: "Subgroup") -> bool:
        return other <= self

    def elements(self) -> Iterator[GroupElement]:
        """Enumerate the subgroup (guarded on its order)."""
        guard_elements(self.order, "subgroup")
        A = self.parent
        N = A.p**A.top
        ranges = [range(N // r[pivot_col(r)]) for r in self.rows]
        for cs in itertools.product(*ranges):
            row = [0] * A.rank
            for c, r in zip(cs, self.rows):
                row = [(x + c * y) % N for x, y in zip(row, r)]
            yield GroupElement(A, A.unscale(row))

    def __repr__(self):
        gens = ", ".join(str(list(b.coords)) for b in self.basis)
        return f"Subgroup({self.parent.literal}; <{gens}>)"


def span(parent: PGroup, gens: Iterable[GroupElement]) -> Subgroup:
    """Smallest subgroup of ``parent`` containing ``gens``, in canonical form."""
    scaled = []
    for g in gens:
        if g.parent != parent:
            raise ParentMismatch("generator does not belong to the parent group")
        scaled.append(parent.scale(g.coords))
    return Subgroup(parent, howell_form(scaled, parent.p, parent.top, parent.rank))


def contains(S: Subgroup, a: GroupElement) -> bool:
    return S.contains(a)


def socle(A: PGroup, n: int) -> Subgroup:
    """A[p^n] = {a : p^n a = 0}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return A.trivial()
    return span(A, [A.p ** max(0, k - n) * A.theta(i) for i, k in enumerate(A.exponents)])


def multiple_subgroup(A: PGroup, n: int) -> Subgroup:
    """p^n A."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return span(A, [A.p**n * t for t in A.generators()])


def intersection(S: Subgroup, T: Subgroup) -> Subgroup:
    """S meet T via the Zassenhaus trick on rows (s|s), (t|0)."""
    if S.parent != T.parent:
        raise ParentMismatch("subgroups belong to different groups")
    A = S.parent
    r = A.rank
    rows = [tuple(s) + tuple(s) for s in S.rows] + [tuple(t) + (0,) * r for t in T.rows]
    form = howell_form(rows, A.p, A.top, 2 * r)
    meet = [row[r:] for row in form if pivot_col(row) >= r]
    return Subgroup(A, howell_form(meet, A.p, A.top, r)) if meet else Subgroup(A, ())


def subgroup_sum(S: Subgroup, T: Subgroup) -> Subgroup:
    if S.parent != T.parent:
        raise ParentMismatch("subgroups belong to different groups")
    return span(S.parent, S.basis + T.basis)


def cyclic_subgroups(A: PGroup) -> list[Subgroup]:
    """All nonzero cyclic subgroups, deduplicated (guarded)."""
    seen = {}
    for a in A.elements():
        if a:
            C = span(A, [a])
            seen.setdefault(C, None)
    return list(seen)


def all_subgroups(A: PGroup) -> list[Subgroup]:
    """Every subgroup of A, grown one generator at a time from {0} (guarded)."""
    elems = [a for a in A.elements() if a]
    found = {A.trivial(): None}
    frontier = list(found)
    while frontier:
        nxt = []
        for S in frontier:
            for a in elems:
                if S.contains(a):
                    continue
                T = span(A, S.basis + (a,))
                if T not in found:
                    found[T] = None
                    nxt.append(T)
        frontier = nxt
    return list(found)


def is_essential(S: Subgroup) -> bool:
    """True iff S meets every nonzero cyclic subgroup of the parent."""
    A = S.parent
    guard_elements(A.order)
    done = set()
    for a in A.elements():
        if not a:
            continue
        # the unique minimal subgroup of <a> is generated by its element of order p
        low = (a.order // A.p) * a
        if low in done:
            continue
        done.add(low)
        if not S.contains(low):
            return False
    return True
