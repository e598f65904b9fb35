"""The ring End(A) as divisibility-constrained integer matrices.

Column j holds the image of the generator theta_j; entry m[i][j] is a
residue mod p^{k_i} and must be divisible by p^{k_i - k_j} when
k_i > k_j.  Composition f o g is the matrix product f . g.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DivisibilityViolation, ExponentOrder, ParentMismatch, guard_endos
from .groups import GroupElement, PGroup, Subgroup, span
from .howell import howell_form, pivot_col, reduce_vector

Matrix = tuple[tuple[int, ...], ...]


def entry_step(A: PGroup, i: int, j: int) -> int:
    """Smallest positive value allowed at position (i, j)."""
    return A.p ** max(0, A.exponents[i] - A.exponents[j])


@dataclass(frozen=True)
class Endo:
    parent: PGroup
    matrix: Matrix

    @classmethod
    def identity(cls, A: PGroup) -> "Endo":
        r = A.rank
        return cls(A, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))

    @classmethod
    def zero(cls, A: PGroup) -> "Endo":
        return cls(A, ((0,) * A.rank,) * A.rank)

    def _check(self, other: "Endo"):
        if not isinstance(other, Endo) or other.parent != self.parent:
            raise ParentMismatch("endomorphisms of different groups")

    def apply(self, a: GroupElement) -> GroupElement:
        if a.parent != self.parent:
            raise ParentMismatch("element is not in the domain")
        mods = self.parent.moduli
        return GroupElement(
            self.parent,
            tuple(sum(m * c for m, c in zip(row, a.coords)) % mods[i] for i, row in enumerate(self.matrix)),
        )

    __call__ = apply

    def compose(self, g: "Endo") -> "Endo":
        """self o g (g applied first)."""
        self._check(g)
        mods = self.parent.moduli
        cols = list(zip(*g.matrix))
        return Endo(
            self.parent,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % mods[i] for col in cols)
                for i, row in enumerate(self.matrix)
            ),
        )

    __matmul__ = compose

    def __add__(self, g: "Endo") -> "Endo":
        self._check(g)
        mods = self.parent.moduli
        return Endo(
            self.parent,
            tuple(tuple((a + b) % mods[i] for a, b in zip(r1, r2)) for i, (r1, r2) in enumerate(zip(self.matrix, g.matrix))),
        )

    def __neg__(self) -> "Endo":
        mods = self.parent.moduli
        return Endo(self.parent, tuple(tuple((-a) % mods[i] for a in row) for i, row in enumerate(self.matrix)))

    def __sub__(self, g: "Endo") -> "Endo":
        return self + (-g)

    def scaled(self, n: int) -> "Endo":
        mods = self.parent.moduli
        return Endo(self.parent, tuple(tuple((n * a) % mods[i] for a in row) for i, row in enumerate(self.matrix)))

    def power(self, n: int) -> "Endo":
        out = Endo.identity(self.parent)
        for _ in range(n):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)

    def column(self, j: int) -> GroupElement:
        """Image of theta_j."""
        return GroupElement(self.parent, tuple(row[j] for row in self.matrix))

    def to_json(self) -> dict:
        return {"group": self.parent.literal, "matrix": [list(r) for r in self.matrix]}

    def __repr__(self):
        return f"Endo({self.parent.literal}, {[list(r) for r in self.matrix]})"


def endo_validate(m: Sequence[Sequence[int]], A: PGroup) -> Endo:
    """Reduce entries and check the divisibility constraint."""
    r = A.rank
    if len(m) != r or any(len(row) != r for row in m):
        raise ValueError(f"matrix must be {r}x{r}")
    mods = A.moduli
    rows = []
    for i, row in enumerate(m):
        red = []
        for j, x in enumerate(row):
            x = int(x) % mods[i]
            step = entry_step(A, i, j)
            if x % step:
                raise DivisibilityViolation(i, j, step)
            red.append(x)
        rows.append(tuple(red))
    return Endo(A, tuple(rows))


def endo_from_json(obj: Mapping | str, A: PGroup | None = None) -> Endo:
    """Parse ``{"group": ..., "matrix": [[...]]}`` (or a bare matrix when A is given)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, Mapping):
        G = PGroup.parse(obj["group"])
        if A is not None and A != G:
            raise ParentMismatch(f"endo group {G} differs from {A}")
        return endo_validate(obj["matrix"], G)
    if A is None:
        raise ValueError("a bare matrix needs an explicit group")
    return endo_validate(obj, A)


def identity(A: PGroup) -> Endo:
    return Endo.identity(A)


def zero(A: PGroup) -> Endo:
    return Endo.zero(A)


def apply(f: Endo, a: GroupElement) -> GroupElement:
    return f.apply(a)


def compose(f: Endo, g: Endo) -> Endo:
    return f.compose(g)


def endo_add(f: Endo, g: Endo) -> Endo:
    return f + g


def endo_neg(f: Endo) -> Endo:
    return -f


def elementary(A: PGroup, i: int, j: int, value: int | None = None) -> Endo:
    """Endo with a single entry at (i, j); defaults to the smallest allowed value."""
    r = A.rank
    v = entry_step(A, i, j) if value is None else value
    return endo_validate([[v if (a, b) == (i, j) else 0 for b in range(r)] for a in range(r)], A)


def alpha_mn(A: PGroup, i: int, j: int) -> Endo:
    """theta_i -> p^{k_j - k_i} theta_j, everything else -> 0 (needs k_i < k_j)."""
    ki, kj = A.exponents[i], A.exponents[j]
    if ki >= kj:
        raise ExponentOrder(f"alpha_mn needs k_i < k_j, got k_{i}={ki}, k_{j}={kj}")
    return elementary(A, j, i, A.p ** (kj - ki))


def projection(A: PGroup, indices: Iterable[int]) -> Endo:
    idx = set(indices)
    if any(not 0 <= i < A.rank for i in idx):
        raise IndexError(f"projection indices {sorted(idx)} out of range for rank {A.rank}")
    r = A.rank
    return Endo(A, tuple(tuple(int(a == b and a in idx) for b in range(r)) for a in range(r)))


def psi_embed(f: Endo, A: PGroup, position: Sequence[int]) -> Endo:
    """Corner embedding of End(B) into e End(A) e, summand b of B going to position[b]."""
    B = f.parent
    if len(position) != B.rank or len(set(position)) != B.rank:
        raise ValueError("position must be an injective map of B's summands")
    for b, a in enumerate(position):
        if not 0 <= a < A.rank:
            raise IndexError(f"position {a} out of range")
        if A.exponents[a] != B.exponents[b] or A.p != B.p:
            raise ExponentOrder(f"summand {b} of {B} does not match summand {a} of {A}")
    m = [[0] * A.rank for _ in range(A.rank)]
    for bi, ai in enumerate(position):
        for bj, aj in enumerate(position):
            m[ai][aj] = f.matrix[bi][bj]
    return Endo(A, tuple(tuple(r) for r in m))


def restrict_block(f: Endo, indices: Sequence[int]) -> Endo:
    """The corner block of f on the listed summands, as an endo of that sub-sum."""
    A = f.parent
    B = PGroup(A.p, tuple(A.exponents[i] for i in indices))
    return Endo(B, tuple(tuple(f.matrix[i][j] for j in indices) for i in indices))


def _graph_form(f: Endo):
    """Howell form of {(f(a), a)} in scaled coordinates, f-block first."""
    A = f.parent
    rows = [A.scale(f.column(j).coords) + A.scale(A.theta(j).coords) for j in range(A.rank)]
    return howell_form(rows, A.p, A.top, 2 * A.rank)


def kernel(f: Endo) -> Subgroup:
    """{a : f(a) = 0}, read off the rows of the graph form pivoting in the second block."""
    A = f.parent
    r = A.rank
    form = _graph_form(f)
    ker = [row[r:] for row in form if pivot_col(row) >= r]
    return Subgroup(A, howell_form(ker, A.p, A.top, r))


def kernel_by_enumeration(f: Endo) -> frozenset[GroupElement]:
    return frozenset(a for a in f.parent.elements() if not f(a))


def image(f: Endo) -> Subgroup:
    return span(f.parent, [f.column(j) for j in range(f.parent.rank)])


def solve(f: Endo, b: GroupElement) -> GroupElement | None:
    """Some a with f(a) = b, or None."""
    A = f.parent
    r = A.rank
    form = _graph_form(f)
    rem = reduce_vector(form, A.scale(b.coords) + (0,) * r, A.p, A.top)
    if any(rem[:r]):
        return None
    a = A.element(A.unscale(rem[r:]))
    return -a


def is_invertible(f: Endo) -> bool:
    return kernel(f).is_zero()


def inverse(f: Endo) -> Endo:
    A = f.parent
    cols = []
    for j in range(A.rank):
        a = solve(f, A.theta(j))
        if a is None:
            raise ValueError(f"{f} is not invertible")
        cols.append(a.coords)
    return Endo(A, tuple(zip(*cols)))


def end_order(A: PGroup) -> int:
    """|End(A)| = prod_{i,j} p^{min(k_i, k_j)}."""
    return A.p ** sum(min(a, b) for a in A.exponents for b in A.exponents)


@dataclass(frozen=True)
class EndoRingCard:
    parent: PGroup
    order: int

    @classmethod
    def of(cls, A: PGroup) -> "EndoRingCard":
        return cls(A, end_order(A))


def entry_values(A: PGroup, i: int, j: int) -> range:
    return range(0, A.moduli[i], entry_step(A, i, j))


def enumerate_endos(A: PGroup) -> Iterator[Endo]:
    """Every endomorphism exactly once, row-major over entries (guarded)."""
    guard_endos(end_order(A))
    r = A.rank
    ranges = [entry_values(A, i, j) for i in range(r) for j in range(r)]
    for flat in itertools.product(*ranges):
        yield Endo(A, tuple(tuple(flat[i * r:(i + 1) * r]) for i in range(r)))


def random_endo(A: PGroup, rng: random.Random) -> Endo:
    r = A.rank
    return Endo(A, tuple(tuple(rng.choice(entry_values(A, i, j)) for j in range(r)) for i in range(r)))


def is_idempotent(e: Endo) -> bool:
    return e @ e == e
