"""Finite stages A_N = Z(p^k0) + ... + Z(p^kN) of an unbounded tower.

At each stage the sum beta_N of the adjacent embeddings gamma_i is
nilpotent, so it has a quasi-inverse, and that quasi-inverse moves the
first generator onto every later summand.  The support grows with N,
which is the finite-stage trace of beta failing to be quasi-regular in
the infinite sum.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

from .endo import Endo, alpha_mn, psi_embed, restrict_block
from .errors import ExponentOrder, StageError
from .groups import PGroup
from .radical import nilpotency_certificate, quasi_inverse, radical_membership

_RULE = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?i\s*(?:\+\s*(\d+))?\s*$")


class BoundedTower(ExponentOrder):
    """Raised when the exponent rule is not strictly increasing."""


def parse_rule(text: str) -> Callable[[int], int]:
    """``rule:i+1``, ``rule:2*i+1``, ``rule:3`` (constant), or a comma list ``1,3,7``."""
    if text.startswith("rule:"):
        body = text[5:].strip()
        if body.isdigit():
            c = int(body)
            return lambda i: c
        m = _RULE.match(body)
        if not m:
            raise ValueError(f"unsupported exponent rule {text!r}")
        a = int(m.group(1) or 1)
        b = int(m.group(2) or 0)
        return lambda i: a * i + b
    ks = [int(x) for x in text.split(",") if x.strip()]
    if not ks:
        raise ValueError("empty exponent list")

    def explicit(i: int) -> int:
        if i >= len(ks):
            raise StageError(f"explicit exponent list has only {len(ks)} entries")
        return ks[i]

    return explicit


@dataclass(frozen=True)
class TowerSpec:
    p: int
    exponents: Callable[[int], int]
    stages: int
    label: str = ""

    @classmethod
    def from_text(cls, p: int, ks: str, stages: int) -> "TowerSpec":
        return cls(p, parse_rule(ks), stages, ks)

    def k(self, i: int) -> int:
        return self.exponents(i)

    @property
    def strictly_increasing(self) -> bool:
        return all(self.k(i) < self.k(i + 1) for i in range(self.stages))


@dataclass
class StageReport:
    stage: int
    radical_member: bool
    nilpotency: int
    quasi_inverse_support: int
    coordinates: tuple[int, ...]
    invariant_ok: bool = True

    def as_row(self) -> dict:
        return {
            "stage": self.stage,
            "radical_member": self.radical_member,
            "nilpotency": self.nilpotency,
            "support": self.quasi_inverse_support,
            "coordinates": ";".join(str(c) for c in self.coordinates),
        }


def build_stage(T: TowerSpec, N: int) -> PGroup:
    if not 0 <= N <= T.stages:
        raise StageError(f"stage {N} outside 0..{T.stages}")
    return PGroup(T.p, tuple(T.k(i) for i in range(N + 1)))


def gamma_family(T: TowerSpec, N: int) -> list[Endo]:
    """gamma_i: the embedding of summand i into summand i+1, placed in the stage group."""
    if N < 1:
        raise StageError("gamma_family needs N >= 1")
    A = build_stage(T, N)
    out = []
    for i in range(N):
        B = PGroup(T.p, (A.exponents[i], A.exponents[i + 1]))
        try:
            beta = alpha_mn(B, 0, 1)
        except ExponentOrder as exc:
            raise BoundedTower(f"k_{i}={B.exponents[0]} is not below k_{i+1}={B.exponents[1]}") from exc
        out.append(psi_embed(beta, A, (i, i + 1)))
    return out


def partial_sum(T: TowerSpec, N: int) -> Endo:
    """beta_N = gamma_0 + ... + gamma_{N-1}."""
    gammas = gamma_family(T, N)
    total = Endo.zero(gammas[0].parent)
    for g in gammas:
        total = total + g
    return total


def quasi_inverse_trace(T: TowerSpec, N: int) -> StageReport:
    """Apply the quasi-inverse of beta_N to (theta, 0, ..., 0) and record the coordinates."""
    if N == 0:
        build_stage(T, 0)
        return StageReport(0, True, 1, 0, (0,))
    beta = partial_sum(T, N)
    A = beta.parent
    w = quasi_inverse(beta).witness
    theta = A.theta(0)
    x = w(theta)
    if not (beta(theta) + x + beta(w(theta))).is_zero():
        raise ArithmeticError("quasi-inverse trace violates beta + beta' + beta beta' = 0")
    support = sum(1 for c in x.coords if c)
    return StageReport(
        stage=N,
        radical_member=radical_membership(beta),
        nilpotency=nilpotency_certificate(beta) or 0,
        quasi_inverse_support=support,
        coordinates=x.coords,
        invariant_ok=support == N,
    )


def expected_coordinates(T: TowerSpec, N: int) -> tuple[int, ...]:
    """(-1)^j p^{k_j - k_0} in coordinate j >= 1, reduced mod p^{k_j}."""
    out = [0]
    for j in range(1, N + 1):
        m = T.p ** T.k(j)
        out.append(((-1) ** j * T.p ** (T.k(j) - T.k(0))) % m)
    return tuple(out)


def stage_restriction(f: Endo, n: int) -> tuple[tuple[int, ...], ...]:
    """Images of the canonical generators of A[p^n]: the class of f modulo T(A_n)."""
    A = f.parent
    gens = [A.p ** max(0, k - n) * A.theta(i) for i, k in enumerate(A.exponents)]
    return tuple(f(g).coords for g in gens)


def truncate(f: Endo, size: int) -> Endo:
    """Corner block of f on the first ``size`` summands."""
    return restrict_block(f, tuple(range(size)))


def divergence_report(T: TowerSpec) -> list[StageReport]:
    """Stage reports for N = 1..stages; raises BoundedTower for a non-increasing rule."""
    if T.stages < 1:
        raise StageError("need at least one stage")
    reports = [quasi_inverse_trace(T, N) for N in range(1, T.stages + 1)]
    prev = 0
    for rep in reports:
        rep.invariant_ok = rep.invariant_ok and rep.quasi_inverse_support > prev
        prev = rep.quasi_inverse_support
    return reports


CSV_COLUMNS = ("stage", "radical_member", "nilpotency", "support", "coordinates")


def reports_to_csv(reports: Sequence[StageReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for rep in reports:
        w.writerow(rep.as_row())
    return buf.getvalue()


def reports_to_json(reports: Sequence[StageReport]) -> list[dict]:
    out = []
    for rep in reports:
        d = asdict(rep)
        d["coordinates"] = list(rep.coordinates)
        out.append(d)
    return out
