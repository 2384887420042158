"""Sparse exact linear algebra over Z and prime fields F_p.

Ranks, kernels, Smith normal form and exact linear solves on sparse
matrices with arbitrary-precision integer arithmetic.  No floating point
anywhere.  All operations are pure functions of immutable inputs and are
deterministic (fixed reduction order of the row basis).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional


class SparseMatrix:
    """Immutable sparse matrix over Z (p=None) or F_p (p prime).

    Entries are stored column-major as {col: {row: value}} with no zero
    values kept.  Values over F_p are normalized to 0..p-1.
    """

    __slots__ = ("n_rows", "n_cols", "p", "cols")

    def __init__(self, n_rows: int, n_cols: int,
                 entries: Iterable[tuple[int, int, int]] = (), p: Optional[int] = None):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("negative dimensions")
        if p is not None and p < 2:
            raise ValueError("modulus must be >= 2")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.p = p
        cols: dict[int, dict[int, int]] = {}
        for i, j, v in entries:
            if not (0 <= i < n_rows and 0 <= j < n_cols):
                raise ValueError(f"index ({i},{j}) out of range")
            if p is not None:
                v %= p
            if v == 0:
                continue
            col = cols.setdefault(j, {})
            if i in col:
                raise ValueError(f"duplicate entry at ({i},{j})")
            col[i] = v
        self.cols = cols

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_dense(cls, rows: list[list[int]], p: Optional[int] = None) -> "SparseMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        ent = [(i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row) if v]
        return cls(n_rows, n_cols, ent, p)

    @classmethod
    def identity(cls, n: int, p: Optional[int] = None) -> "SparseMatrix":
        return cls(n, n, [(i, i, 1) for i in range(n)], p)

    # -- basic queries --------------------------------------------------------

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def entries(self) -> list[tuple[int, int, int]]:
        out = []
        for j in sorted(self.cols):
            col = self.cols[j]
            for i in sorted(col):
                out.append((i, j, col[i]))
        return out

    def column(self, j: int) -> dict[int, int]:
        return dict(self.cols.get(j, ()))

    def transpose(self) -> "SparseMatrix":
        ent = [(j, i, v) for i, j, v in self.entries()]
        return SparseMatrix(self.n_cols, self.n_rows, ent, self.p)

    def to_dense(self) -> list[list[int]]:
        rows = [[0] * self.n_cols for _ in range(self.n_rows)]
        for i, j, v in self.entries():
            rows[i][j] = v
        return rows

    def mul_vector(self, x: list[int]) -> list[int]:
        if len(x) != self.n_cols:
            raise ValueError("dimension mismatch")
        out = [0] * self.n_rows
        for j, col in self.cols.items():
            xj = x[j]
            if xj:
                for i, v in col.items():
                    out[i] += v * xj
        if self.p is not None:
            out = [v % self.p for v in out]
        return out

    # -- text dump ("coordinate" format) --------------------------------------

    def dump(self) -> str:
        domain = "Z" if self.p is None else f"F{self.p}"
        lines = [f"{self.n_rows} {self.n_cols} {self.nnz()} {domain}"]
        for i, j, v in self.entries():
            lines.append(f"{i} {j} {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if len(head) != 4:
            raise ValueError("bad coordinate header")
        n_rows, n_cols, nnz = int(head[0]), int(head[1]), int(head[2])
        dom = head[3]
        p = None if dom == "Z" else int(dom[1:])
        ent = []
        for ln in lines[1:]:
            i, j, v = ln.split()
            ent.append((int(i), int(j), int(v)))
        if len(ent) != nnz:
            raise ValueError("nnz mismatch in coordinate dump")
        return cls(n_rows, n_cols, ent, p)


# ---------------------------------------------------------------------------
# Echelon engine: a growing basis of sparse vectors with pivot = least
# nonzero coordinate.  Streaming columns into this basis is the rank/solve
# workhorse for the very wide boundary matrices.
# ---------------------------------------------------------------------------


class Echelon:
    """Echelon basis of a subspace (F_p) or sublattice (Z) of Z^N.

    Vectors are sparse dicts {index: value} with pivot at their least
    nonzero coordinate; by construction every basis vector has zeros at all
    earlier pivots, so membership testing by successive pivot division is
    exact, over Z as well.  All updates are unimodular, so the spanned
    lattice is preserved exactly.
    """

    __slots__ = ("p", "basis")

    def __init__(self, p: Optional[int] = None):
        self.p = p
        self.basis: dict[int, dict[int, int]] = {}  # pivot index -> vector

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        """Canonical residue of vec modulo the spanned lattice (without
        inserting): coordinates at pivot positions are fully eliminated over
        F_p and floor-reduced over Z, sweeping in increasing position.  The
        residue is zero exactly when vec lies in the span."""
        p = self.p
        vec = {k: (v % p if p is not None else v) for k, v in vec.items()
               if (v % p if p is not None else v)}
        lo = -1
        while vec:
            pending = [k for k in vec if k > lo]
            if not pending:
                break
            piv = min(pending)
            row = self.basis.get(piv)
            if row is None:
                lo = piv
                continue
            a = row[piv]
            b = vec[piv]
            if p is not None:
                q = (b * pow(a, p - 2, p)) % p
                _axpy(vec, row, -q, p)
            else:
                q = b // a  # floor: leaves vec[piv] = b mod a in [0, a)
                if q:
                    _axpy(vec, row, -q, None)
                if vec.get(piv):
                    lo = piv
        return vec

    def add(self, vec: dict[int, int]) -> bool:
        """Insert vec into the spanned lattice.  Returns True if rank grew."""
        p = self.p
        vec = {k: (v % p if p is not None else v) for k, v in vec.items()
               if (v % p if p is not None else v)}
        while vec:
            piv = min(vec)
            row = self.basis.get(piv)
            if row is None:
                self._store(piv, vec)
                return True
            a = row[piv]
            b = vec[piv]
            if p is not None:
                q = (b * pow(a, p - 2, p)) % p
                _axpy(vec, row, -q, p)
            elif b % a == 0:
                _axpy(vec, row, -(b // a), None)
            elif a % b == 0:
                self._store(piv, vec)
                q = a // b
                _axpy(row, vec, -q, None)
                vec = row
            else:
                g, x, y = _xgcd(a, b)
                new_row = _combine(row, vec, x, y)
                new_vec = _combine(row, vec, -(b // g), a // g)
                self._store(piv, new_row)
                vec = new_vec
        return False

    def _store(self, piv: int, vec: dict[int, int]) -> None:
        """Install vec as the basis row with pivot piv, keeping the basis
        size-reduced over Z (coordinates sitting at other pivots reduced
        modulo that pivot's value) to tame integer growth."""
        if self.p is not None:
            self.basis[piv] = vec
            return
        if vec[piv] < 0:
            vec = {k: -v for k, v in vec.items()}
        self.basis[piv] = vec
        self._size_reduce(piv)
        for other in list(self.basis):
            if other != piv and piv in self.basis[other]:
                self._size_reduce(other)

    def _size_reduce(self, piv: int) -> None:
        row = self.basis[piv]
        for k in sorted(self.basis):
            if k == piv:
                continue
            v = row.get(k)
            if not v:
                continue
            other = self.basis[k]
            q = v // other[k]
            if q:
                _axpy(row, other, -q, None)

    @property
    def rank(self) -> int:
        return len(self.basis)


def _axpy(vec: dict[int, int], row: dict[int, int], c: int, p: Optional[int]) -> None:
    """vec += c * row, in place, dropping zeros."""
    if c == 0:
        return
    for k, v in row.items():
        nv = vec.get(k, 0) + c * v
        if p is not None:
            nv %= p
        if nv:
            vec[k] = nv
        else:
            vec.pop(k, None)


def _combine(u: dict[int, int], v: dict[int, int], a: int, b: int) -> dict[int, int]:
    out: dict[int, int] = {}
    if a:
        for k, x in u.items():
            out[k] = a * x
    if b:
        for k, x in v.items():
            nv = out.get(k, 0) + b * x
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithReport:
    elementary_divisors: tuple[int, ...]
    rank: int

    def __post_init__(self):
        divs = self.elementary_divisors
        for a, b in zip(divs, divs[1:]):
            if b % a != 0:
                raise ValueError("divisor chain violated")
        if len(divs) != self.rank:
            raise ValueError("rank must equal number of divisors")

    @property
    def torsion(self) -> tuple[int, ...]:
        """Divisors > 1 (the cokernel torsion is the direct sum of Z/d)."""
        return tuple(d for d in self.elementary_divisors if d > 1)


def rank_mod_p(M: SparseMatrix) -> int:
    """Rank of M as an F_p linear map (streaming column reduction)."""
    if M.p is None:
        raise ValueError("rank_mod_p requires a matrix over F_p")
    ech = Echelon(p=M.p)
    for j in sorted(M.cols):
        ech.add(M.cols[j])
    return ech.rank


def _augmented_echelon(M: SparseMatrix) -> Echelon:
    """Echelon of the columns of [M ; I]: row coordinates 0..n_rows-1,
    then one bookkeeping coordinate per column."""
    n = M.n_rows
    ech = Echelon(p=M.p)
    for j in range(M.n_cols):
        vec = dict(M.cols.get(j, ()))
        vec[n + j] = 1
        ech.add(vec)
    return ech


def _kernel_from_augmented(M: SparseMatrix, ech: Echelon) -> list[list[int]]:
    n = M.n_rows
    kern = []
    for piv in sorted(ech.basis):
        if piv >= n:
            vec = ech.basis[piv]
            dense = [0] * M.n_cols
            for k, v in vec.items():
                dense[k - n] = v
            kern.append(dense)
    return kern


def kernel_mod_p(M: SparseMatrix) -> list[list[int]]:
    """Basis of the right kernel of M over F_p, as dense vectors."""
    if M.p is None:
        raise ValueError("kernel_mod_p requires a matrix over F_p")
    return _kernel_from_augmented(M, _augmented_echelon(M))


def kernel_z(M: SparseMatrix) -> list[list[int]]:
    """Basis of the integer right-kernel lattice of M (complete over Z)."""
    if M.p is not None:
        raise ValueError("kernel_z requires a matrix over Z")
    return _kernel_from_augmented(M, _augmented_echelon(M))


def solve(M: SparseMatrix, b: list[int]) -> Optional[list[int]]:
    """Some x with Mx = b, or None.  Exact over Z (no rational relaxation)."""
    if len(b) != M.n_rows:
        raise ValueError("dimension mismatch")
    n = M.n_rows
    ech = _augmented_echelon(M)
    target = {i: v for i, v in enumerate(b) if v}
    res = ech.reduce(target)
    if any(k < n for k in res):
        return None
    x = [0] * M.n_cols
    p = M.p
    for k, v in res.items():
        x[k - n] = (-v) % p if p is not None else -v
    return x


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(M: SparseMatrix) -> SmithReport:
    """Elementary divisors of an integer matrix.

    Sparse elimination; pivots preferred by (|value|, Markowitz fill
    estimate) via a lazily validated heap, which keeps coefficient growth
    small on the +-1 boundary matrices this serves.
    """
    if M.p is not None:
        raise ValueError("smith_normal_form requires a matrix over Z")
    rows: dict[int, dict[int, int]] = {}
    for i, j, v in M.entries():
        rows.setdefault(i, {})[j] = v
    col_rows: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            col_rows.setdefault(j, set()).add(i)

    heap: list[tuple[int, int, int, int]] = []

    def push(i: int, j: int) -> None:
        v = rows.get(i, {}).get(j)
        if v is not None:
            fill = (len(rows[i]) - 1) * (len(col_rows[j]) - 1)
            heapq.heappush(heap, (abs(v), fill, i, j))

    def set_entry(i: int, j: int, v: int) -> None:
        r = rows.get(i)
        if v:
            if r is None:
                r = rows[i] = {}
            if j not in r:
                col_rows.setdefault(j, set()).add(i)
            r[j] = v
            push(i, j)
        elif r is not None and j in r:
            del r[j]
            col_rows[j].discard(i)
            if not col_rows[j]:
                del col_rows[j]
            if not r:
                del rows[i]

    def row_axpy(dst: int, src: int, c: int) -> None:
        """row[dst] += c * row[src]"""
        for j, v in list(rows.get(src, {}).items()):
            set_entry(dst, j, rows.get(dst, {}).get(j, 0) + c * v)

    def row_combine(i1: int, i2: int, a: int, b: int, c: int, d: int) -> None:
        """(row i1, row i2) <- (a*r1 + b*r2, c*r1 + d*r2); ad-bc = +-1."""
        r1 = dict(rows.get(i1, {}))
        r2 = dict(rows.get(i2, {}))
        support = set(r1) | set(r2)
        for j in support:
            u, w = r1.get(j, 0), r2.get(j, 0)
            set_entry(i1, j, a * u + b * w)
            set_entry(i2, j, c * u + d * w)

    def col_combine(j1: int, j2: int, a: int, b: int, c: int, d: int) -> None:
        support = set(col_rows.get(j1, ())) | set(col_rows.get(j2, ()))
        for i in support:
            r = rows.get(i, {})
            u, w = r.get(j1, 0), r.get(j2, 0)
            set_entry(i, j1, a * u + b * w)
            set_entry(i, j2, c * u + d * w)

    for i in list(rows):
        for j in rows[i]:
            fill = (len(rows[i]) - 1) * (len(col_rows[j]) - 1)
            heapq.heappush(heap, (abs(rows[i][j]), fill, i, j))

    diagonal: list[int] = []

    def pop_pivot() -> Optional[tuple[int, int]]:
        while heap:
            v, fill, i, j = heapq.heappop(heap)
            cur = rows.get(i, {}).get(j)
            if cur is None:
                continue
            cur_fill = (len(rows[i]) - 1) * (len(col_rows[j]) - 1)
            if abs(cur) != v or cur_fill > fill:
                heapq.heappush(heap, (abs(cur), cur_fill, i, j))
                continue
            return i, j
        return None

    while True:
        piv = pop_pivot()
        if piv is None:
            break
        pi, pj = piv

        while True:
            a = rows[pi][pj]
            # clear column pj with row operations
            for r in sorted(col_rows.get(pj, set()) - {pi}):
                b = rows[r].get(pj)
                if b is None:
                    continue
                if b % a == 0:
                    row_axpy(r, pi, -(b // a))
                else:
                    g, x, y = _xgcd(a, b)
                    row_combine(pi, r, x, y, -(b // g), a // g)
                    a = rows[pi][pj]
            # clear row pi with column operations
            a = rows[pi][pj]
            done = True
            for j in sorted(set(rows[pi]) - {pj}):
                b = rows[pi].get(j)
                if b is None:
                    continue
                if b % a == 0:
                    q = b // a
                    for r in list(col_rows.get(pj, ())):
                        set_entry(r, j, rows[r].get(j, 0) - q * rows[r][pj])
                else:
                    g, x, y = _xgcd(a, b)
                    col_combine(pj, j, x, y, -(b // g), a // g)
                    a = rows[pi][pj]
                    done = False
            if done and col_rows.get(pj, set()) == {pi}:
                break
        diagonal.append(abs(rows[pi][pj]))
        set_entry(pi, pj, 0)

    divisors = _divisor_chain(diagonal)
    return SmithReport(tuple(divisors), len(divisors))


def _divisor_chain(diagonal: list[int]) -> list[int]:
    vals = [abs(d) for d in diagonal if d != 0]
    ones = sum(1 for d in vals if d == 1)
    rest = [d for d in vals if d != 1]
    changed = True
    while changed:
        changed = False
        rest.sort()
        for a in range(len(rest)):
            if rest[a] == 1:
                continue
            for b in range(a + 1, len(rest)):
                if rest[b] % rest[a] != 0:
                    g = gcd(rest[a], rest[b])
                    rest[a], rest[b] = g, rest[a] * rest[b] // g
                    changed = True
        if changed:
            ones += sum(1 for d in rest if d == 1)
            rest = [d for d in rest if d != 1]
    return [1] * ones + sorted(rest)
