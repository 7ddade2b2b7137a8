"""Exact dense linear algebra over QQ or a prime field.

Matrices are plain sequences of rows.  Over GF(p) elimination runs on int64
numpy arrays (p < 2**31 keeps every product below 2**62).  Over QQ rows are
cleared of denominators and reduced with fraction-free (Bareiss) elimination;
only the final back-substitution uses fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .fields import QQ, PrimeField

Vector = tuple
Rows = Sequence[Sequence]


def _as_rows(m: Rows, ncols: int | None) -> tuple[list[list], int]:
    rows = [list(r) for r in m]
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for a matrix without rows")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a matrix with {ncols} columns")
    return rows, ncols


# ---------------------------------------------------------------------------
# elimination kernels


def _rref_modp(rows: list[list], ncols: int, p: int):
    if not rows or ncols == 0:
        return [], []
    A = np.array([[int(x) % p for x in r] for r in rows], dtype=np.int64)
    m = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r]) % p) % p
        pivots.append(c)
        r += 1
    return [tuple(int(x) for x in A[i]) for i in range(r)], pivots


def _integer_rows(rows: list[list]) -> list[list[int]]:
    out = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def bareiss_echelon(rows: list[list[int]], ncols: int):
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon rows, pivot columns).  Entries stay integral; each
    division by the previous pivot is exact.
    """
    A = [list(r) for r in rows]
    m = len(A)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        pv = pr[c]
        for i in range(r + 1, m):
            row = A[i]
            f = row[c]
            if f == 0:
                if pv != prev:
                    A[i] = [(pv * x) // prev for x in row]
                continue
            A[i] = [(pv * x - f * y) // prev for x, y in zip(row, pr)]
        prev = pv
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rref_qq(rows: list[list], ncols: int):
    if not rows or ncols == 0:
        return [], []
    ech, pivots = bareiss_echelon(_integer_rows(rows), ncols)
    R = []
    for row, c in zip(ech, pivots):
        pv = row[c]
        R.append([Fraction(x, pv) for x in row])
    for k in range(len(R) - 1, -1, -1):
        c = pivots[k]
        pr = R[k]
        for i in range(k):
            f = R[i][c]
            if f:
                R[i] = [x - f * y for x, y in zip(R[i], pr)]
    return [tuple(r) for r in R], pivots


def rref(m: Rows, field=QQ, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots, rank)`` where ``rows`` holds only the nonzero rows.
    """
    rows, ncols = _as_rows(m, ncols)
    if isinstance(field, PrimeField):
        R, piv = _rref_modp(rows, ncols, field.p)
    else:
        R, piv = _rref_qq(rows, ncols)
    return R, piv, len(piv)


def rank(m: Rows, field=QQ, ncols: int | None = None) -> int:
    rows, ncols = _as_rows(m, ncols) if (m or ncols is not None) else ([], 0)
    if not rows or ncols == 0:
        return 0
    if isinstance(field, PrimeField):
        return len(_rref_modp(rows, ncols, field.p)[1])
    return len(bareiss_echelon(_integer_rows(rows), ncols)[1])


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of field^ambient_dim stored by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]
    field: object = dc_field(default=QQ, compare=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vec: Sequence) -> bool:
        return not any(_reduce_against(self, vec))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field!r})"


def span(vectors: Rows, ambient_dim: int, field=QQ) -> Subspace:
    rows, _ = _as_rows(vectors, ambient_dim)
    R, piv, _ = rref(rows, field, ambient_dim)
    return Subspace(ambient_dim, tuple(tuple(r) for r in R), tuple(piv), field)


def zero_subspace(ambient_dim: int, field=QQ) -> Subspace:
    return Subspace(ambient_dim, (), (), field)


def full_space(ambient_dim: int, field=QQ) -> Subspace:
    one, zero = field.reduce(1), field.reduce(0)
    basis = tuple(
        tuple(one if j == i else zero for j in range(ambient_dim)) for i in range(ambient_dim)
    )
    return Subspace(ambient_dim, basis, tuple(range(ambient_dim)), field)


def subspace_equal(u: Subspace, v: Subspace) -> bool:
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}")
    if u.field != v.field:
        raise ValueError(f"fields differ: {u.field!r} vs {v.field!r}")
    return u.pivots == v.pivots and u.basis == v.basis


def kernel_basis(m: Rows, field=QQ, ncols: int | None = None) -> Subspace:
    """Right null space {v : m v = 0}."""
    rows, ncols = _as_rows(m, ncols)
    R, piv, _ = rref(rows, field, ncols)
    one, zero = field.reduce(1), field.reduce(0)
    pivset = set(piv)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, c in zip(R, piv):
            v[c] = field.reduce(-row[f])
        vecs.append(v)
    return span(vecs, ncols, field)


def _reduce_against(u: Subspace, vec: Sequence) -> list:
    f = u.field
    v = [f.reduce(x) for x in vec]
    if len(v) != u.ambient_dim:
        raise ValueError(f"vector of length {len(v)} in ambient dimension {u.ambient_dim}")
    for row, c in zip(u.basis, u.pivots):
        t = v[c]
        if t:
            v = [f.reduce(x - t * y) for x, y in zip(v, row)]
    return v


@dataclass(frozen=True)
class Complement:
    """Coordinate complement of a subspace: representatives of ambient/u."""

    subspace: Subspace
    free_columns: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.free_columns)

    @property
    def basis(self) -> tuple[Vector, ...]:
        f = self.subspace.field
        n = self.subspace.ambient_dim
        one, zero = f.reduce(1), f.reduce(0)
        return tuple(
            tuple(one if j == c else zero for j in range(n)) for c in self.free_columns
        )

    def project(self, vec: Sequence) -> tuple:
        """Coordinates of the class of ``vec`` in the complement basis."""
        v = _reduce_against(self.subspace, vec)
        return tuple(v[c] for c in self.free_columns)


def complement_coords(u: Subspace) -> Complement:
    pivset = set(u.pivots)
    free = tuple(c for c in range(u.ambient_dim) if c not in pivset)
    return Complement(u, free)


# ---------------------------------------------------------------------------
# small helpers


def mat_vec(m: Rows, v: Sequence, field=QQ) -> tuple:
    return tuple(field.reduce(sum(a * b for a, b in zip(row, v))) for row in m)


def transpose(m: Rows, ncols: int | None = None) -> list[list]:
    rows, ncols = _as_rows(m, ncols) if (m or ncols is not None) else ([], 0)
    return [[r[j] for r in rows] for j in range(ncols)]


# ---------------------------------------------------------------------------
# rank certification


@dataclass(frozen=True)
class RankCertificate:
    """Outcome of the mod-p-first rank protocol for an integer matrix.

    ``rank`` is always a lower bound for the rational rank.  ``certified``
    means it is the rational rank: either full (mod-p rank cannot exceed the
    rational rank, which cannot exceed min(rows, cols)) or confirmed exactly.
    """

    rank: int
    upper: int
    certified: bool
    route: tuple[str, ...]


def certify_rank(
    m: Rows,
    ncols: int | None = None,
    primes: Sequence[int] = (2147483647,),
    fallback: str = "rational",
) -> RankCertificate:
    """Rank of an integer/rational matrix via primes, escalating on deficiency.

    ``fallback`` is ``"rational"`` (exact recomputation over QQ),
    ``"second-prime"`` (one more prime from ``primes``; stays uncertified if
    still deficient) or ``"none"``.
    """
    rows, ncols = _as_rows(m, ncols) if (m or ncols is not None) else ([], 0)
    upper = min(len(rows), ncols)
    route = []
    best = 0
    budget = 1 if fallback != "second-prime" else 2
    for p in list(primes)[:budget]:
        try:
            r = rank(rows, PrimeField(p), ncols)
        except ZeroDivisionError:
            route.append(f"GF({p}):bad-reduction")
            continue
        route.append(f"GF({p})")
        best = max(best, r)
        if best == upper:
            return RankCertificate(best, upper, True, tuple(route))
    if fallback == "rational":
        route.append("QQ")
        r = rank(rows, QQ, ncols)
        return RankCertificate(r, upper, True, tuple(route))
    return RankCertificate(best, upper, False, tuple(route))
