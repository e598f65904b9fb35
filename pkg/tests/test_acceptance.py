"""Acceptance suite: exact small-instance checks, one per criterion.

Each test records its verdict in ACCEPTANCE_RESULTS; the conftest prints
one PASS/FAIL line per criterion at the end of the run.  All comparisons
are exact (integer arithmetic, set equality), so the tolerance is zero.
"""

import math
import random

import pytest

from endoring.endo import (
    Endo,
    alpha_mn,
    end_order,
    enumerate_endos,
    identity,
    image,
    inverse,
    is_invertible,
    random_endo,
)
from endoring.groups import PGroup, all_subgroups
from endoring.radical import (
    large_kernel_radical,
    layer_decomposition,
    nilpotency_index,
    quasi_inverse,
    radical_membership,
    radical_oracle,
)
from endoring.topologies import (
    admissibility_sweep,
    annl_identity_check,
    idempotents,
    pv_exhaustive_check,
    socle_intersection_identity,
    witness_nonadmissible_annr,
    witness_nonadmissible_pv,
)
from endoring.tower import TowerSpec, expected_coordinates, partial_sum, quasi_inverse_trace

from .conftest import ACCEPTANCE_RESULTS, BATTERY

pytestmark = pytest.mark.acceptance


def record(n: int, ok: bool, desc: str):
    ACCEPTANCE_RESULTS[n] = (ok, desc)
    assert ok, desc


def homogeneous_groups():
    out = []
    for p in (2, 3):
        for n in (1, 2, 3):
            for m in (1, 2):
                A = PGroup(p, (n,) * m)
                if end_order(A) <= 2**14:
                    out.append(A)
    return out


def test_homogeneous_radical_law():
    failures = []
    groups = homogeneous_groups()
    for A in groups:
        n = A.exponents[0]
        p_entries = frozenset(f for f in enumerate_endos(A) if all(x % A.p == 0 for row in f.matrix for x in row))
        if radical_oracle(A) != p_entries:
            failures.append((A.literal, "J != pEnd"))
        if nilpotency_index(A) != n:
            failures.append((A.literal, "index"))
        if n >= 2 and identity(A).scaled(A.p).power(n - 1).is_zero():
            failures.append((A.literal, "J^(n-1) = 0"))
    record(1, not failures, f"homogeneous J = pEnd(A), index n on {len(groups)} groups {failures or ''}".strip())


def test_layer_criterion_matches_brute_force():
    failures = []
    checked = 0
    for A in BATTERY:
        J = radical_oracle(A)
        for x in enumerate_endos(A):
            checked += 1
            if radical_membership(x) != (x in J):
                failures.append((A.literal, x.matrix))
                break
        if end_order(A) // len(J) != layer_decomposition(A).quotient_order:
            failures.append((A.literal, "quotient count"))
    record(2, not failures, f"layer criterion = oracle on {checked} endos of {len(BATTERY)} groups {failures or ''}".strip())


def test_alpha_maps_generate_nilpotent_left_ideals():
    rng = random.Random(2024)
    failures = []
    pairs = 0
    for A in BATTERY:
        if len(set(A.exponents)) < 2:
            continue
        J = radical_oracle(A)
        for i in range(A.rank):
            for j in range(A.rank):
                ki, kj = A.exponents[i], A.exponents[j]
                if ki >= kj:
                    continue
                pairs += 1
                al = alpha_mn(A, i, j)
                if al not in J:
                    failures.append((A.literal, i, j, "not in J"))
                s = math.ceil(kj / (kj - ki))
                for _ in range(100):
                    beta = random_endo(A, rng)
                    if not (beta @ al).power(s).is_zero():
                        failures.append((A.literal, i, j, beta.matrix))
                        break
    record(3, not failures and pairs > 0, f"alpha_mn in J, (beta alpha)^s = 0 over {pairs} pairs {failures or ''}".strip())


def test_large_kernels_are_the_radical():
    failures = []
    homog = [A for A in BATTERY if A.is_homogeneous]
    for A in homog:
        if large_kernel_radical(A) != radical_oracle(A):
            failures.append(A.literal)
    record(4, not failures, f"essential-kernel set = oracle J on {len(homog)} homogeneous groups {failures or ''}".strip())


def test_tower_divergence():
    T = TowerSpec.from_text(2, "rule:i+1", 6)
    failures = []
    for N in range(1, 7):
        beta = partial_sum(T, N)
        if not radical_membership(beta) or not quasi_inverse(beta).exists:
            failures.append((N, "beta not in J"))
        if end_order(beta.parent) <= 2**14 and beta not in radical_oracle(beta.parent):
            failures.append((N, "oracle"))
        if not beta.power(N + 1).is_zero() or beta.power(N).is_zero():
            failures.append((N, "nilpotency"))
        rep = quasi_inverse_trace(T, N)
        if rep.quasi_inverse_support != N:
            failures.append((N, "support", rep.quasi_inverse_support))
        if rep.coordinates != expected_coordinates(T, N):
            failures.append((N, "coordinates", rep.coordinates))
        # sign pattern: coordinate j is -(coordinate j-1) pushed one summand up
        for j in range(2, N + 1):
            if (-2 * rep.coordinates[j - 1] - rep.coordinates[j]) % 2 ** T.k(j):
                failures.append((N, "sign", j))
    record(5, not failures, f"tower p=2 rule i+1 stages 1..6: beta in J, beta^(N+1)=0, support N {failures or ''}".strip())


def test_liebert_neighbourhoods_are_admissible():
    failures = []
    sets = 0
    for A in BATTERY:
        rep = admissibility_sweep(A)
        sets += rep["finite_sets_checked"]
        if not rep["liebert_contained_in_finite"]:
            failures.append((A.literal, rep["failures"]))
        if end_order(A) <= 2**14:
            for n in range(A.top + 1):
                if not socle_intersection_identity(A, n):
                    failures.append((A.literal, "socle identity", n))
    record(6, not failures, f"T(A_n) in T(K) for {sets} generator sets, socle identity exhaustive {failures or ''}".strip())


def sample_idempotents(A: PGroup, count: int, rng: random.Random) -> list[Endo]:
    """Conjugates u d u^-1 of random 0/1 diagonals over an elementary group."""
    out = set()
    r = A.rank
    while len(out) < count:
        u = random_endo(A, rng)
        if not is_invertible(u):
            continue
        d = Endo(A, tuple(tuple(int(i == j and rng.random() < 0.5) for j in range(r)) for i in range(r)))
        e = u @ d @ inverse(u)
        if e != identity(A):
            out.add(e)
    return sorted(out, key=lambda f: f.matrix)


def test_nonadmissibility_witnesses():
    rng = random.Random(7)
    failures = []
    n_annr = n_pv = 0
    for n in (2, 3, 4):
        A = PGroup(2, (1,) * n)
        nonzero = [a for a in A.elements() if a]
        if n <= 3:
            es = [e for e in idempotents(A) if e != identity(A)]
        else:
            es = sample_idempotents(A, 60, rng)
        for e in es:
            for a in nonzero:
                n_annr += 1
                w = witness_nonadmissible_annr(A, e, a)
                if w is None or not (e @ w).is_zero() or not w(a):
                    failures.append(("annr", A.literal, e.matrix, a.coords))
        for V in all_subgroups(A):
            if V.is_zero():
                continue
            for a in nonzero:
                n_pv += 1
                w = witness_nonadmissible_pv(A, V, a)
                if not w(a) or not all(V.contains(w(b)) for b in A.generators()) or not image(w) <= V:
                    failures.append(("pv", A.literal, V.basis, a.coords))
    record(
        7,
        not failures,
        f"witnesses valid for {n_annr} (e, a) and {n_pv} (V, a) pairs over F2^2..F2^4 {failures[:3] or ''}".strip(),
    )


def test_pv_calculus_exhaustive():
    reports = {A.literal: pv_exhaustive_check(A) for A in (PGroup(2, (1, 1, 1)), PGroup(2, (1, 2)))}
    bad = [k for k, r in reports.items() if not r.ok]
    subs = sum(r.subgroups for r in reports.values())
    record(8, not bad, f"P(V) right ideal, monotone, directed, Hausdorff over {subs} subgroups {bad or ''}".strip())


def test_left_annihilator_identity():
    A = PGroup(2, (1, 2))
    es = idempotents(A)
    bad = [e.matrix for e in es if not annl_identity_check(A, e)]
    record(9, not bad and len(es) > 2, f"Ann_l(e) = End(1-e) for all {len(es)} idempotents of {A.literal} {bad or ''}".strip())
