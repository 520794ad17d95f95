"""Dense square matrices over F_q.

Matrices act on row vectors from the right: the image of e_i under ``m`` is
row i of ``m``, and the permutation matrix of a permutation s sends e_i to
e_{s(i)}.  Conjugation ``g^h`` is ``h^-1 g h`` and the commutator ``[x, y]``
is ``x^-1 y^-1 x y``.

Internally a matrix over F_{p^a} is kept as its (n*a) x (n*a) image over F_p
under the regular representation (each entry becomes the a x a matrix of
multiplication by it on the power basis), so products and inverses are plain
numpy arithmetic mod p.  Basis vectors are labelled 1..n as in e_1..e_n
wherever an API takes basis labels.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ff import FieldElement, FieldMismatch, FieldSpec
from .perm import Permutation


class MatrixError(ValueError):
    pass


class Singular(MatrixError):
    pass


class DimensionMismatch(MatrixError):
    pass


class OrderExceedsCap(MatrixError):
    def __init__(self, cap):
        super().__init__(f"element order exceeds cap {cap}")
        self.cap = cap


class NotMonomial(MatrixError):
    pass


class NotInvariant(MatrixError):
    pass


class BadPartition(MatrixError):
    pass


def _dtype(p: int, dim: int):
    # products summed over dim terms must fit in int64
    return np.int64 if p * p * max(dim, 1) < 2**62 else object


@lru_cache(maxsize=None)
def _regular_basis(spec: FieldSpec) -> np.ndarray:
    """R(u^k) for k < a; row r of R(v) holds the coefficients of u^r * v."""
    a = spec.a
    u = spec.gen() if a > 1 else spec.one
    out = np.zeros((a, a, a), dtype=np.int64)
    for k in range(a):
        for r in range(a):
            out[k, r] = (u ** (r + k)).coeffs if a > 1 else (1,)
    return out


def _inverse_mod_p(m: np.ndarray, p: int) -> np.ndarray:
    d = m.shape[0]
    aug = np.concatenate([m % p, np.eye(d, dtype=m.dtype)], axis=1)
    for col in range(d):
        nz = np.nonzero(aug[col:, col])[0]
        if nz.size == 0:
            raise Singular("matrix is singular")
        piv = col + int(nz[0])
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), p - 2, p) % p
        factors = aug[:, col].copy()
        factors[col] = 0
        aug = (aug - np.outer(factors, aug[col])) % p
    return aug[:, d:]


class Matrix:
    """Immutable n x n matrix over a FieldSpec."""

    __slots__ = ("spec", "n", "_m", "__weakref__")

    def __init__(self, spec: FieldSpec, n: int, big: np.ndarray):
        self.spec = spec
        self.n = n
        self._m = big
        big.flags.writeable = False

    # -- construction ------------------------------------------------------
    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence]) -> Matrix:
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        a = spec.a
        coeffs = np.zeros((n, n, a), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                coeffs[i, j] = spec(v).coeffs
        return cls._from_coeffs(spec, coeffs)

    @classmethod
    def _from_coeffs(cls, spec: FieldSpec, coeffs: np.ndarray) -> Matrix:
        n, a = coeffs.shape[0], spec.a
        dtype = _dtype(spec.p, n * a)
        if a == 1:
            big = coeffs[:, :, 0].astype(dtype) % spec.p
        else:
            blocks = np.einsum("ijk,krs->irjs", coeffs, _regular_basis(spec)) % spec.p
            big = blocks.reshape(n * a, n * a).astype(dtype)
        return cls(spec, n, big)

    @classmethod
    def from_prime_matrix(cls, spec: FieldSpec, n: int, big) -> Matrix:
        """Wrap an (n*a) x (n*a) matrix already in regular-representation form."""
        big = np.asarray(big) % spec.p
        return cls(spec, n, big.astype(_dtype(spec.p, n * spec.a)))

    # -- access -------------------------------------------------------------
    @property
    def prime_matrix(self) -> np.ndarray:
        """The F_p-linear form of the matrix (read-only)."""
        return self._m

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        a = self.spec.a
        return FieldElement(self.spec, tuple(int(c) for c in self._m[i * a, j * a:(j + 1) * a]))

    def rows(self) -> list[list[FieldElement]]:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def nonzero_pattern(self) -> np.ndarray:
        """Boolean n x n array marking nonzero entries."""
        a = self.spec.a
        rows0 = self._m[::a].reshape(self.n, self.n, a)
        return np.any(rows0 != 0, axis=2)

    def to_lists(self) -> list[list[list[int]]]:
        return [[list(e.coeffs) for e in row] for row in self.rows()]

    # -- arithmetic ---------------------------------------------------------
    def _same(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec!r} vs {other.spec!r}")
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._same(other)
        return Matrix(self.spec, self.n, (self._m @ other._m) % self.spec.p)

    __mul__ = __matmul__

    def __add__(self, other: Matrix) -> Matrix:
        self._same(other)
        return Matrix(self.spec, self.n, (self._m + other._m) % self.spec.p)

    def __sub__(self, other: Matrix) -> Matrix:
        self._same(other)
        return Matrix(self.spec, self.n, (self._m - other._m) % self.spec.p)

    def __neg__(self) -> Matrix:
        return Matrix(self.spec, self.n, (-self._m) % self.spec.p)

    def scale(self, c) -> Matrix:
        return scalar(self.spec, self.n, c) @ self

    def inverse(self) -> Matrix:
        return Matrix(self.spec, self.n, _inverse_mod_p(self._m, self.spec.p))

    def __pow__(self, e: int) -> Matrix:
        if e < 0:
            return self.inverse() ** (-e)
        result = identity(self.spec, self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def det(self) -> FieldElement:
        """Determinant over F_q by Gaussian elimination."""
        rows = self.rows()
        n = self.n
        det = self.spec.one
        for col in range(n):
            piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
            if piv is None:
                return self.spec.zero
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = -det
            pv = rows[col][col]
            det = det * pv
            pinv = pv.inverse()
            for r in range(col + 1, n):
                f = rows[r][col]
                if not f.is_zero():
                    f = f * pinv
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
        return det

    def transpose(self) -> Matrix:
        return Matrix.from_rows(self.spec, [list(r) for r in zip(*self.rows())])

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._m, np.eye(self._m.shape[0], dtype=np.int64)))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.spec == other.spec and self.n == other.n and np.array_equal(self._m, other._m)

    def __hash__(self):
        return hash((self.spec, self.n, self._m.astype(np.int64).tobytes()))

    def __repr__(self):
        body = "\n".join(" ".join(f"{e!r:>3}" for e in row) for row in self.rows())
        return f"Matrix over {self.spec!r}:\n{body}"

    def in_prime_field(self) -> bool:
        a = self.spec.a
        if a == 1:
            return True
        coeffs = self._m[::a].reshape(self.n, self.n, a)
        return not np.any(coeffs[:, :, 1:])

    def over(self, target: FieldSpec) -> Matrix:
        """Re-express a matrix with entries in F_p over another field of characteristic p."""
        if target.p != self.spec.p:
            raise FieldMismatch("characteristics differ")
        if not self.in_prime_field():
            raise FieldMismatch("entries are not in the prime subfield")
        a = self.spec.a
        ints = self._m[::a, ::a]
        return Matrix.from_rows(target, [[int(v) for v in row] for row in ints])


# -- builders ---------------------------------------------------------------

def identity(spec: FieldSpec, n: int) -> Matrix:
    d = n * spec.a
    return Matrix(spec, n, np.eye(d, dtype=_dtype(spec.p, d)))


def scalar(spec: FieldSpec, n: int, c) -> Matrix:
    c = spec(c)
    return Matrix.from_rows(spec, [[c if i == j else 0 for j in range(n)] for i in range(n)])


def _check_label(n, *labels):
    for k in labels:
        if not 1 <= k <= n:
            raise IndexError(f"basis label {k} outside 1..{n}")


def elementary(spec: FieldSpec, n: int, i: int, j: int) -> Matrix:
    """E_{i,j}: 1 at position (i, j) (labels 1..n), 0 elsewhere."""
    _check_label(n, i, j)
    rows = [[0] * n for _ in range(n)]
    rows[i - 1][j - 1] = 1
    return Matrix.from_rows(spec, rows)


def diag(spec: FieldSpec, values: Sequence) -> Matrix:
    n = len(values)
    return Matrix.from_rows(spec, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])


def block_diag(*blocks: Matrix) -> Matrix:
    spec = blocks[0].spec
    n = sum(b.n for b in blocks)
    rows = [[spec.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        if b.spec != spec:
            raise FieldMismatch("blocks over different fields")
        for i, row in enumerate(b.rows()):
            rows[off + i][off:off + b.n] = row
        off += b.n
    return Matrix.from_rows(spec, rows)


def permutation_matrix(spec: FieldSpec, perm: Permutation) -> Matrix:
    n = perm.degree
    rows = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm.images):
        rows[i][j] = 1
    return Matrix.from_rows(spec, rows)


def perm_matrix(spec: FieldSpec, n: int, cycles) -> Matrix:
    """Permutation matrix from cycles on basis labels 1..n, e.g. ``[(1, 2, 3)]``."""
    return permutation_matrix(spec, Permutation.from_cycles(n, cycles))


def embed(block: Matrix, n: int, labels: Sequence[int]) -> Matrix:
    """Identity on C^n except ``block`` acting on the listed basis labels."""
    spec = block.spec
    _check_label(n, *labels)
    rows = [[spec.one if i == j else spec.zero for j in range(n)] for i in range(n)]
    for r, li in enumerate(labels):
        for c, lj in enumerate(labels):
            rows[li - 1][lj - 1] = block[r, c]
    return Matrix.from_rows(spec, rows)


# -- group-theoretic helpers --------------------------------------------------

def commutator(x: Matrix, y: Matrix) -> Matrix:
    """[x, y] = x^-1 y^-1 x y."""
    return x.inverse() @ y.inverse() @ x @ y


def conjugate(g: Matrix, h: Matrix) -> Matrix:
    """g^h = h^-1 g h."""
    return h.inverse() @ g @ h


def element_order(m: Matrix, cap: int = 10**6) -> int:
    """Least k >= 1 with m^k = I, by iterated multiplication."""
    d = m._m.shape[0]
    eye = np.eye(d, dtype=np.int64)
    p = m.spec.p
    base = m._m
    cur = base
    for k in range(1, cap + 1):
        if np.array_equal(cur, eye):
            return k
        cur = (cur @ base) % p
    raise OrderExceedsCap(cap)


@dataclass(frozen=True)
class SignedPermutation:
    """Monomial matrix data: e_i maps to coeffs[i] * e_{targets[i]} (0-based)."""

    targets: tuple[int, ...]
    coeffs: tuple[FieldElement, ...]

    def is_plain(self) -> bool:
        return all(c == c.spec.one for c in self.coeffs)

    def permutation(self) -> Permutation:
        return Permutation(self.targets)

    def cycles(self) -> list[tuple[int, ...]]:
        return self.permutation().cycles()

    def __repr__(self):
        signs = {i + 1: c for i, c in enumerate(self.coeffs) if c != c.spec.one}
        return f"SignedPermutation({self.permutation()!r}, coeffs={signs})"


def as_signed_permutation(m: Matrix) -> SignedPermutation:
    pattern = m.nonzero_pattern()
    targets = []
    for i, row in enumerate(pattern):
        nz = np.nonzero(row)[0]
        if nz.size != 1:
            raise NotMonomial(f"row {i + 1} has {nz.size} nonzero entries")
        targets.append(int(nz[0]))
    if len(set(targets)) != m.n:
        raise NotMonomial("column pattern is not a permutation")
    return SignedPermutation(tuple(targets), tuple(m[i, j] for i, j in enumerate(targets)))


def is_plain_permutation(m: Matrix) -> bool:
    try:
        return as_signed_permutation(m).is_plain()
    except NotMonomial:
        return False


def restrict(m: Matrix, labels: Sequence[int]) -> Matrix:
    """The action of ``m`` on the coordinate subspace spanned by e_l, l in labels."""
    _check_label(m.n, *labels)
    idx = [l - 1 for l in labels]
    pattern = m.nonzero_pattern()
    outside = np.ones(m.n, dtype=bool)
    outside[idx] = False
    for i in idx:
        if np.any(pattern[i, outside]):
            raise NotInvariant(f"e_{i + 1} is mapped outside span{tuple(labels)}")
    return Matrix.from_rows(m.spec, [[m[i, j] for j in idx] for i in idx])


def block_diagonal_check(m: Matrix, partition: Sequence[Sequence[int]]) -> bool:
    """True iff every block of the partition (labels 1..n) is m-invariant."""
    flat = [l for block in partition for l in block]
    if sorted(flat) != list(range(1, m.n + 1)):
        raise BadPartition(f"{partition} is not a partition of 1..{m.n}")
    pattern = m.nonzero_pattern()
    for block in partition:
        idx = [l - 1 for l in block]
        outside = np.ones(m.n, dtype=bool)
        outside[idx] = False
        if np.any(pattern[np.ix_(idx, np.nonzero(outside)[0])]):
            return False
    return True
