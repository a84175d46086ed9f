"""Exact integer linear algebra: sparse matrices, Smith normal form, lattice quotients.

Everything here is arbitrary-precision; no floating point anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == x*a + y*b."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


class SparseIntMatrix:
    """Integer matrix stored as {(row, col): value}; zeros are never stored."""

    def __init__(self, rows: int, cols: int, entries: Optional[dict] = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], int] = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __setitem__(self, key: tuple[int, int], value: int) -> None:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {key} out of range for {self.rows}x{self.cols}")
        if value:
            self.entries[key] = value
        else:
            self.entries.pop(key, None)

    @classmethod
    def from_dense(cls, dense: list[list[int]]) -> "SparseIntMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        m = cls(rows, cols)
        for i, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                m[i, j] = v
        return m

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_vectors(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def permute_cols(self, perm: list[int]) -> "SparseIntMatrix":
        """New matrix with column j taken from old column perm[j]."""
        if sorted(perm) != list(range(self.cols)):
            raise ValueError("not a permutation")
        inv = [0] * self.cols
        for j, p in enumerate(perm):
            inv[p] = j
        m = SparseIntMatrix(self.rows, self.cols)
        for (i, j), v in self.entries.items():
            m[i, inv[j]] = v
        return m

    def __repr__(self):
        return f"SparseIntMatrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"


@dataclass(frozen=True)
class SNFResult:
    """Diagonal of the Smith normal form, with optional unimodular transforms.

    With transforms: row_transform * A * col_transform equals the diagonal
    matrix diag(diagonal) (padded with zeros).
    """
    diagonal: tuple[int, ...]
    rank: int
    row_transform: Optional[list[list[int]]] = None
    col_transform: Optional[list[list[int]]] = None

    def diagonal_padded(self, length: int) -> list[int]:
        d = list(self.diagonal)
        return d + [0] * (length - len(d))


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf(A: SparseIntMatrix, want_transforms: bool = False) -> SNFResult:
    """Smith normal form over Z with min-|pivot| selection.

    Dense elimination; intended for the small matrices arising from relation
    tails and homology lattice bases (hundreds of rows at most).
    """
    m, n = A.rows, A.cols
    D = A.to_dense()
    P = _identity(m) if want_transforms else None
    Q = _identity(n) if want_transforms else None

    def swap_rows(i1, i2):
        D[i1], D[i2] = D[i2], D[i1]
        if P is not None:
            P[i1], P[i2] = P[i2], P[i1]

    def swap_cols(j1, j2):
        for row in D:
            row[j1], row[j2] = row[j2], row[j1]
        if Q is not None:
            for row in Q:
                row[j1], row[j2] = row[j2], row[j1]

    def add_row(src, dst, q):
        # row dst += q * row src
        Dsrc, Ddst = D[src], D[dst]
        for j in range(n):
            if Dsrc[j]:
                Ddst[j] += q * Dsrc[j]
        if P is not None:
            Psrc, Pdst = P[src], P[dst]
            for j in range(m):
                if Psrc[j]:
                    Pdst[j] += q * Psrc[j]

    def add_col(src, dst, q):
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        if Q is not None:
            for row in Q:
                if row[src]:
                    row[dst] += q * row[src]

    def negate_row(i):
        D[i] = [-v for v in D[i]]
        if P is not None:
            P[i] = [-v for v in P[i]]

    t = 0
    size = min(m, n)
    while t < size:
        # locate minimal |value| pivot in the trailing submatrix
        pivot = None
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)
        if D[t][t] < 0:
            negate_row(t)

        dirty = False
        d = D[t][t]
        for i in range(t + 1, m):
            v = D[i][t]
            if v:
                q = v // d
                if q:
                    add_row(t, i, -q)
                if D[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            v = D[t][j]
            if v:
                q = v // d
                if q:
                    add_col(t, j, -q)
                if D[t][j]:
                    dirty = True
        if dirty:
            continue  # pivot shrank somewhere; pick again

        # enforce divisibility of the trailing block by the pivot
        bad = None
        for i in range(t + 1, m):
            row = D[i]
            for j in range(t + 1, n):
                if row[j] % d:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1

    diagonal = tuple(D[i][i] for i in range(size) if D[i][i])
    return SNFResult(
        diagonal=diagonal,
        rank=len(diagonal),
        row_transform=P,
        col_transform=Q,
    )


class LatticeBasis:
    """Triangular (pivot-indexed) basis of a sublattice of Z^dim, built by
    inserting sparse generator vectors one at a time.

    Vectors are dicts {coordinate: value}. After all insertions, ``pivots``
    maps each pivot coordinate to a basis vector whose first nonzero entry
    (smallest coordinate) is that pivot, with positive pivot value.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @staticmethod
    def _axpy(vec: dict[int, int], q: int, other: dict[int, int]) -> None:
        # vec += q * other, in place
        if not q:
            return
        for j, v in other.items():
            new = vec.get(j, 0) + q * v
            if new:
                vec[j] = new
            else:
                vec.pop(j, None)

    def add(self, vec: dict[int, int]) -> None:
        import heapq

        pivots = self.pivots
        work = [dict(vec)]
        while work:
            v = work.pop()
            # during reduction the minimum coordinate never decreases, so a
            # lazily-deleted heap of candidate coordinates replaces min scans
            heap = list(v)
            heapq.heapify(heap)
            while v:
                i = heap[0] if heap else min(v)
                if i not in v:
                    heapq.heappop(heap)
                    continue
                c = v[i]
                b = pivots.get(i)
                if b is None:
                    if c < 0:
                        v = {j: -x for j, x in v.items()}
                    pivots[i] = v
                    break
                a = b[i]
                if c % a == 0:
                    q = -(c // a)
                    get = v.get
                    for j, x in b.items():
                        nv = get(j, 0) + q * x
                        if nv:
                            if j not in v and j != i:
                                heapq.heappush(heap, j)
                            v[j] = nv
                        else:
                            del v[j]
                else:
                    g, x, y = xgcd(a, c)
                    new = {}
                    for j in set(b) | set(v):
                        val = x * b.get(j, 0) + y * v.get(j, 0)
                        if val:
                            new[j] = val
                    # new has entry g at i; re-reduce the displaced vectors
                    pivots[i] = new
                    self._axpy(b, -(a // g), new)
                    self._axpy(v, -(c // g), new)
                    for j in new:
                        heapq.heappush(heap, j)
                    if b:
                        work.append(b)
                    # v continues through the loop

    def contains(self, vec: dict[int, int]) -> bool:
        return self.reduce(vec) == {}

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        """Remainder of vec after subtracting basis vectors (no insertions)."""
        v = dict(vec)
        while v:
            i = min(v)
            b = self.pivots.get(i)
            if b is None:
                return v
            c = v[i]
            a = b[i]
            if c % a:
                return v
            self._axpy(v, -(c // a), b)
        return v

    def quotient_invariants(self) -> tuple[tuple[int, ...], int]:
        """Invariants of Z^dim modulo this lattice: (torsion chain, free rank)."""
        vectors = [dict(v) for v in self.pivots.values()]
        free_rank = self.dim - len(vectors)

        # Peel off coordinates whose pivot value is 1: they contribute trivial
        # invariant factors and shrink the matrix handed to dense SNF.
        changed = True
        while changed:
            changed = False
            for idx, v in enumerate(vectors):
                if not v:
                    raise RuntimeError("zero vector in triangular basis")
                piv = min(v)
                if v[piv] == 1:
                    for w in vectors:
                        if w is not v and piv in w:
                            self._axpy(w, -w[piv], v)
                    vectors.pop(idx)
                    changed = True
                    break

        if not vectors:
            return (), free_rank
        coords = sorted(set().union(*vectors))
        col_of = {c: j for j, c in enumerate(coords)}
        m = SparseIntMatrix(len(vectors), len(coords))
        for i, v in enumerate(vectors):
            for c, val in v.items():
                m[i, col_of[c]] = val
        result = snf(m)
        torsion = tuple(d for d in result.diagonal if d > 1)
        return torsion, free_rank


def quotient_invariants(dim: int, generators: Iterable[dict[int, int]]) -> tuple[tuple[int, ...], int]:
    """Invariants of Z^dim modulo the lattice spanned by the generators."""
    basis = LatticeBasis(dim)
    for g in generators:
        basis.add(g)
    return basis.quotient_invariants()


class IntegerSolver:
    """Solve A x = b exactly over Z for a fixed set of integer columns.

    Columns are sparse dicts over row coordinates < dim.  Build once, solve
    many targets.  Raises ValueError when no integer solution exists.
    """

    def __init__(self, dim: int, columns: list[dict[int, int]]):
        self.dim = dim
        self.ncols = len(columns)
        self.basis = LatticeBasis(dim + self.ncols)
        for k, col in enumerate(columns):
            aug = dict(col)
            aug[dim + k] = 1
            self.basis.add(aug)

    def solve(self, target: dict[int, int]) -> list[int]:
        v = dict(target)
        while v:
            i = min(v)
            if i >= self.dim:
                break  # only bookkeeping coordinates remain
            b = self.basis.pivots.get(i)
            if b is None:
                raise ValueError(f"no integer solution (unreachable coordinate {i})")
            c = v[i]
            a = b[i]
            if c % a:
                raise ValueError(f"no integer solution (non-divisible pivot at {i})")
            LatticeBasis._axpy(v, -(c // a), b)
        coeffs = [0] * self.ncols
        for j, val in v.items():
            if j < self.dim:
                raise ValueError("no integer solution (residual in main coordinates)")
            coeffs[j - self.dim] = -val
        return coeffs
