"""Howell normal form over the chain ring Z/p^K.

Rows are tuples of canonical residues.  The form is unique for a given
row span, which is what makes subgroup equality and membership decidable
without enumeration.  Reference: Howell (1986), Storjohann (2000).
"""

from __future__ import annotations

from typing import Iterable, Sequence

Row = tuple[int, ...]


def valuation(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def pivot_col(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def howell_form(rows: Iterable[Sequence[int]], p: int, K: int, ncols: int) -> tuple[Row, ...]:
    """Return the Howell form of the span of ``rows`` in (Z/p^K)^ncols.

    Pivots are powers of p, entries above a pivot are reduced into
    [0, pivot), and zero rows are dropped.
    """
    N = p**K
    work = [[x % N for x in r] for r in rows]
    work = [r for r in work if any(r)]
    out: list[list[int]] = []
    for j in range(ncols):
        idx = [t for t, r in enumerate(work) if r[j]]
        if not idx:
            continue
        best = min(idx, key=lambda t: valuation(work[t][j], p))
        v = valuation(work[best][j], p)
        pv = p**v
        u_inv = pow(work[best][j] // pv, -1, N)
        piv = [(x * u_inv) % N for x in work[best]]
        nxt = []
        for t, r in enumerate(work):
            if t == best:
                continue
            if r[j]:
                q = r[j] // pv
                r = [(a - q * b) % N for a, b in zip(r, piv)]
            if any(r):
                nxt.append(r)
        # p^(K-v) * pivot vanishes in column j; keeping it is what gives
        # the Howell property for vectors that vanish on columns <= j
        ann = [(x * p ** (K - v)) % N for x in piv]
        if any(ann):
            nxt.append(ann)
        out.append(piv)
        work = nxt
    for i, row in enumerate(out):
        j = pivot_col(row)
        pv = row[j]
        for h in range(i):
            q = out[h][j] // pv
            if q:
                out[h] = [(a - q * b) % N for a, b in zip(out[h], row)]
    return tuple(tuple(r) for r in out)


def reduce_vector(form: Sequence[Row], vec: Sequence[int], p: int, K: int) -> tuple[int, ...]:
    """Reduce ``vec`` against a Howell form; the remainder is zero iff vec is in the span."""
    N = p**K
    v = [x % N for x in vec]
    for row in form:
        j = pivot_col(row)
        if v[j] % row[j]:
            continue
        q = v[j] // row[j]
        if q:
            v = [(a - q * b) % N for a, b in zip(v, row)]
    return tuple(v)


def span_order(form: Sequence[Row], p: int, K: int) -> int:
    """Number of elements in the span of a Howell form."""
    n = 1
    for row in form:
        n *= p**K // row[pivot_col(row)]
    return n
