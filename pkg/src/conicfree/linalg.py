"""Exact linear algebra over the rationals for sparse matrices.

Two engines with identical contracts:

* a fraction-free (Bareiss-style) elimination over the integers, the exact
  baseline for ranks, plus an exact reduced-echelon kernel over Fraction;
* a certified modular engine that eliminates modulo word-size primes and
  accepts a rank only once it holds an exact certificate in both directions:
  a nonzero minor modulo some prime (rank lower bound over the rationals)
  and a rationally reconstructed kernel whose vectors are re-verified to
  annihilate the matrix exactly (rank upper bound).  On any reconstruction
  or verification failure the engine falls back to the exact baseline, so
  results never depend on the choice of primes.

All operations are pure and deterministic: fixed prime list, fixed pivot
rules, no randomness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

_MOD_THRESHOLD = 24  # below this size the exact baseline is used directly
_MAX_PRIMES = 24


def _is_probable_prime(n: int) -> bool:
    # Deterministic Miller-Rabin for n < 3.3e24 with the standard base set.
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below_2_31(count: int) -> tuple[int, ...]:
    out = []
    n = 2**31 - 1
    while len(out) < count:
        if _is_probable_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


_PRIMES = _primes_below_2_31(_MAX_PRIMES)


class RatMatrix:
    """Sparse rational matrix keyed by (row, col)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], Fraction | int]):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        clean: dict[tuple[int, int], Fraction] = {}
        for (r, c), v in entries.items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry index {(r, c)} out of range")
            f = Fraction(v)
            if f != 0:
                clean[(r, c)] = f
        self.rows = rows
        self.cols = cols
        self.entries = clean

    @classmethod
    def from_dense(cls, dense: list[list[Fraction | int]]) -> "RatMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = {
            (r, c): v
            for r, row in enumerate(dense)
            for c, v in enumerate(row)
            if v != 0
        }
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: list[dict[int, Fraction | int]]) -> "RatMatrix":
        entries = {
            (r, c): v for c, col in enumerate(columns) for r, v in col.items() if v != 0
        }
        return cls(rows, len(columns), entries)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def to_dense(self) -> list[list[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense

    def mul_vector(self, vec: list[Fraction]) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    def row_lists(self) -> list[list[tuple[int, Fraction]]]:
        rows: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r].append((c, v))
        for row in rows:
            row.sort()
        return rows

    def integer_rows(self) -> list[list[tuple[int, int]]]:
        """Rows scaled to integers (each row by the lcm of its denominators)."""
        out: list[list[tuple[int, int]]] = []
        for row in self.row_lists():
            m = 1
            for _, v in row:
                m = m * v.denominator // gcd(m, v.denominator)
            out.append([(c, int(v * m)) for c, v in row])
        return out

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


@dataclass(frozen=True)
class KernelBasis:
    """An exact basis of the right kernel; vectors annihilate the matrix."""

    dimension: int
    vectors: tuple[tuple[Fraction, ...], ...]


# ---------------------------------------------------------------------------
# Exact baseline


def rank(matrix: RatMatrix) -> int:
    """Exact rank over the rationals via fraction-free elimination.

    Bareiss updates: after pivoting on p_k, every remaining entry becomes a
    (k+1)-minor of the original matrix and the division by the previous pivot
    is exact.  Rows with a zero in the pivot column still get rescaled by
    pivot/prev_pivot; skipping them would break the exact-division property.
    """
    rows = [dict(r) for r in matrix.integer_rows()]
    rows = [r for r in rows if r]
    prev_pivot = 1
    rk = 0
    while rows:
        col_counts: dict[int, int] = {}
        for r in rows:
            for c in r:
                col_counts[c] = col_counts.get(c, 0) + 1
        if not col_counts:
            break
        pc = min(col_counts, key=lambda c: (col_counts[c], c))
        candidates = [i for i, r in enumerate(rows) if pc in r]
        pi = min(candidates, key=lambda i: (abs(rows[i][pc]).bit_length(), i))
        pivot_row = rows.pop(pi)
        pivot = pivot_row[pc]
        rk += 1
        next_rows = []
        for r in rows:
            factor = r.pop(pc, 0)
            new_r: dict[int, int] = {}
            if factor:
                keys = set(r) | set(pivot_row)
                keys.discard(pc)
                for c in keys:
                    v = (r.get(c, 0) * pivot - factor * pivot_row.get(c, 0)) // prev_pivot
                    if v:
                        new_r[c] = v
            else:
                for c, v in r.items():
                    new_r[c] = v * pivot // prev_pivot
            if new_r:
                next_rows.append(new_r)
        rows = next_rows
        prev_pivot = pivot
    return rk


def _integer_ref(matrix: RatMatrix) -> tuple[list[dict[int, int]], list[int]]:
    """Row echelon form over the integers with per-row content stripping.

    Columns are processed left to right so the pivot column set is canonical.
    Returns the echelon rows (as sparse dicts) and their pivot columns.
    """
    rows = [dict(r) for r in matrix.integer_rows() if r]
    echelon: list[dict[int, int]] = []
    pivot_cols: list[int] = []
    for col in range(matrix.cols):
        candidates = [i for i, r in enumerate(rows) if col in r]
        if not candidates:
            continue
        pi = min(candidates, key=lambda i: (abs(rows[i][col]).bit_length(), i))
        pivot_row = rows.pop(pi)
        pivot = pivot_row[col]
        next_rows = []
        for r in rows:
            factor = r.pop(col, 0)
            if factor:
                keys = set(r) | set(pivot_row)
                keys.discard(col)
                new_r: dict[int, int] = {}
                content = 0
                for c in keys:
                    v = r.get(c, 0) * pivot - factor * pivot_row.get(c, 0)
                    if v:
                        new_r[c] = v
                        content = gcd(content, v)
                if content > 1:
                    new_r = {c: v // content for c, v in new_r.items()}
                r = new_r
            if r:
                next_rows.append(r)
        rows = next_rows
        echelon.append(pivot_row)
        pivot_cols.append(col)
    return echelon, pivot_cols


def kernel_basis(matrix: RatMatrix) -> KernelBasis:
    """Exact basis of the right kernel, one vector per free column.

    Each vector has entry 1 in its free column and 0 in the other free
    columns, so the basis is independent by construction.
    """
    echelon, pivot_cols = _integer_ref(matrix)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(matrix.cols) if c not in pivot_set]
    vectors = []
    for fc in free_cols:
        v = [Fraction(0)] * matrix.cols
        v[fc] = Fraction(1)
        for i in range(len(echelon) - 1, -1, -1):
            pc = pivot_cols[i]
            if pc > fc:
                continue
            s = Fraction(0)
            for c, val in echelon[i].items():
                if c != pc and v[c]:
                    s += val * v[c]
            v[pc] = -s / echelon[i][pc]
        vectors.append(tuple(v))
    return KernelBasis(dimension=len(vectors), vectors=tuple(vectors))


# ---------------------------------------------------------------------------
# Certified modular engine


def _int_dense(matrix: RatMatrix) -> list[list[int]]:
    dense = [[0] * matrix.cols for _ in range(matrix.rows)]
    for r, row in enumerate(matrix.integer_rows()):
        for c, v in row:
            dense[r][c] = v
    return dense


def _mod_array(dense: list[list[int]], p: int) -> np.ndarray:
    if dense and max((max(map(abs, row), default=0) for row in dense)) < 2**62:
        a = np.array(dense, dtype=np.int64)
        return np.mod(a, p)
    return np.array([[v % p for v in row] for row in dense], dtype=np.int64)


def _rref_mod(a: np.ndarray, p: int) -> tuple[int, tuple[int, ...], np.ndarray]:
    """Reduced row echelon form of a mod p.  Pivot rule: first nonzero row."""
    a = a.copy()
    nrows, ncols = a.shape
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivot_cols.append(c)
        r += 1
    return r, tuple(pivot_cols), a[:r]


def _kernel_mod(
    rref: np.ndarray, pivot_cols: tuple[int, ...], ncols: int, p: int
) -> list[list[int]]:
    """Kernel vectors mod p in standard form, one per free column."""
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    vectors = []
    for fc in free_cols:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivot_cols):
            v[pc] = (-int(rref[i, fc])) % p
        vectors.append(v)
    return vectors


def _crt_merge(
    combined: list[list[int]], modulus: int, vecs: list[list[int]], p: int
) -> list[list[int]]:
    """Merge residues mod p into residues mod modulus*p, in place."""
    inv = pow(modulus % p, -1, p)
    for v1, v2 in zip(combined, vecs):
        for i, (a1, a2) in enumerate(zip(v1, v2)):
            v1[i] = a1 + modulus * (((a2 - a1) * inv) % p)
    return combined


def _rat_reconstruct(a: int, m: int) -> Fraction | None:
    """Rational number with numerator and denominator below sqrt(m/2)."""
    bound = isqrt(m // 2)
    if bound == 0:
        return None
    r0, r1 = m, a % m
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    num, den = r1, t1
    if den < 0:
        num, den = -num, -den
    if gcd(num, den) != 1:
        return None
    if (num - a * den) % m != 0:
        return None
    return Fraction(num, den)


def _verify_kernel(matrix_int_rows: list[list[tuple[int, int]]], vec: tuple[Fraction, ...]) -> bool:
    """Exact check that an integer-scaled copy of the matrix kills vec."""
    denom_lcm = 1
    for v in vec:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in vec]
    for row in matrix_int_rows:
        if sum(coef * ints[c] for c, coef in row) != 0:
            return False
    return True


@dataclass
class _CertifiedResult:
    rank: int
    kernel: KernelBasis | None  # kernel of the oriented matrix, when requested


def _certified(matrix: RatMatrix, want_kernel: bool) -> _CertifiedResult | None:
    """Modular rank (and optionally kernel) with an exact certificate.

    Returns None when reconstruction keeps failing within the prime budget;
    the caller is expected to fall back to the exact baseline.
    """
    dense = _int_dense(matrix)
    int_rows = [
        [(c, v) for c, v in enumerate(row) if v] for row in dense
    ]
    best_rank = -1
    group_size = 0
    group_pivots: tuple[int, ...] = ()
    combined: list[list[int]] | None = None
    modulus = 1
    for p in _PRIMES:
        a = _mod_array(dense, p)
        rk, pivots, rref = _rref_mod(a, p)
        if rk > best_rank:
            best_rank = rk
            group_size = 0
            group_pivots = pivots
            combined = None
            modulus = 1
        if rk == best_rank and pivots == group_pivots:
            kdim = matrix.cols - best_rank
            if kdim == 0:
                if group_size >= 1:
                    # full column rank mod two primes; a nonzero maximal minor
                    # mod p already certifies the rank, the kernel is empty
                    return _CertifiedResult(
                        best_rank, KernelBasis(0, ()) if want_kernel else None
                    )
                group_size += 1
                continue
            vecs = _kernel_mod(rref, pivots, matrix.cols, p)
            if combined is None:
                combined = [list(v) for v in vecs]
                modulus = p
            else:
                combined = _crt_merge(combined, modulus, vecs, p)
                modulus *= p
            group_size += 1
        if group_size < 2:
            continue
        vectors: list[tuple[Fraction, ...]] = []
        ok = True
        for v in combined:
            rec = [_rat_reconstruct(x, modulus) for x in v]
            if any(r is None for r in rec):
                ok = False
                break
            vectors.append(tuple(rec))
        if ok:
            for v in vectors:
                if not _verify_kernel(int_rows, v):
                    ok = False
                    break
        if ok:
            kernel = KernelBasis(matrix.cols - best_rank, tuple(vectors)) if want_kernel else None
            return _CertifiedResult(best_rank, kernel)
        # otherwise keep adding primes for a larger modulus
    return None


def rank_certified(matrix: RatMatrix) -> int:
    """Exact rank; fast modular path with certification, exact fallback."""
    if matrix.rows == 0 or matrix.cols == 0 or not matrix.entries:
        return 0
    if max(matrix.rows, matrix.cols) <= _MOD_THRESHOLD:
        return rank(matrix)
    # The kernel certificate is cheapest on the orientation with fewer
    # columns, and rank is invariant under transposition.
    oriented = matrix.transpose() if matrix.cols > matrix.rows else matrix
    result = _certified(oriented, want_kernel=False)
    if result is not None:
        return result.rank
    return rank(matrix)


def kernel_basis_certified(matrix: RatMatrix) -> KernelBasis:
    """Kernel basis through the certified modular path, exact fallback."""
    if matrix.cols == 0:
        return KernelBasis(0, ())
    if matrix.rows == 0 or not matrix.entries:
        vectors = []
        for c in range(matrix.cols):
            v = [Fraction(0)] * matrix.cols
            v[c] = Fraction(1)
            vectors.append(tuple(v))
        return KernelBasis(matrix.cols, tuple(vectors))
    if max(matrix.rows, matrix.cols) <= _MOD_THRESHOLD:
        return kernel_basis(matrix)
    result = _certified(matrix, want_kernel=True)
    if result is not None and result.kernel is not None:
        return result.kernel
    return kernel_basis(matrix)


@dataclass(frozen=True)
class LinalgPolicy:
    """Chooses between the exact baseline and the certified modular engine."""

    modular: bool = True

    def rank(self, matrix: RatMatrix) -> int:
        return rank_certified(matrix) if self.modular else rank(matrix)

    def kernel(self, matrix: RatMatrix) -> KernelBasis:
        return kernel_basis_certified(matrix) if self.modular else kernel_basis(matrix)


DEFAULT_POLICY = LinalgPolicy(modular=True)
EXACT_POLICY = LinalgPolicy(modular=False)
