"""Exact linear algebra over prime fields F_p and the rationals.

Matrices are dense and immutable.  Over F_p the entries live in an ``int64``
numpy array reduced into ``[0, p)``; over Q they are exact rationals
(``gmpy2.mpq`` when available, ``fractions.Fraction`` otherwise) in an object
array.  Every elimination uses the same fixed pivot rule
(first nonzero entry, scanning columns left to right), so all results are
reproducible bit for bit.
"""

from __future__ import annotations

import functools
import numbers
from fractions import Fraction

import numpy as np

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Q = Fraction

from .errors import DimensionError

__all__ = [
    "Field",
    "PrimeField",
    "RationalField",
    "GF",
    "QQ",
    "Matrix",
    "rank",
    "rref",
    "kernel_basis",
    "image_basis",
    "solve",
    "complement_basis",
    "inverse",
    "left_inverse",
    "cokernel_projection",
    "hstack",
    "vstack",
    "block_diag",
    "kron",
]

_P_MAX = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class Field:
    """Coefficient field.  Subclasses fix the scalar representation."""

    kind: str
    dtype: object

    def normalize(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def asarray(self, data, shape=None) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def random(self, rng, shape) -> np.ndarray:
        raise NotImplementedError

    def scalar_to_json(self, x):
        raise NotImplementedError

    def scalar_from_json(self, v):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class PrimeField(Field):
    kind = "fp"
    dtype = np.int64

    def __init__(self, p: int):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= _P_MAX:
            raise ValueError(f"prime {p} too large (must be < 2**31)")
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    @property
    def characteristic(self) -> int:
        return self.p

    def normalize(self, a):
        return np.mod(a, self.p)

    def coerce(self, x):
        if isinstance(x, numbers.Rational) and not isinstance(x, numbers.Integral):
            return (int(x.numerator) * pow(int(x.denominator), -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(x, -1, self.p)

    def asarray(self, data, shape=None):
        if isinstance(data, np.ndarray) and data.dtype == np.int64:
            a = data
        else:
            a = np.asarray(data, dtype=object)
            if a.size:
                a = np.array([self.coerce(x) for x in a.flat], dtype=np.int64).reshape(a.shape)
            else:
                a = np.zeros(a.shape, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        return np.mod(a, self.p)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def matmul(self, a, b):
        inner = a.shape[1]
        if inner * (self.p - 1) ** 2 < 2**63:
            return np.mod(a @ b, self.p)
        out = (a.astype(object) @ b.astype(object)) % self.p
        return np.asarray(out, dtype=np.int64).reshape(a.shape[0], b.shape[1])

    def random(self, rng, shape):
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def scalar_to_json(self, x):
        return int(x)

    def scalar_from_json(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValueError(f"F_{self.p} entry must be an integer, got {v!r}")
        if not 0 <= v < self.p:
            raise ValueError(f"F_{self.p} entry {v} outside [0, {self.p})")
        return v

    def to_json(self):
        return {"kind": "fp", "p": self.p}


class RationalField(Field):
    kind = "q"
    dtype = object
    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def normalize(self, a):
        return a

    def coerce(self, x):
        return _rational(x)

    def inv(self, x):
        return 1 / _rational(x)

    def asarray(self, data, shape=None):
        if isinstance(data, np.ndarray) and data.dtype.kind in "iu":
            out = _int_to_q(data) if data.size else np.empty(data.shape, dtype=object)
            return out.reshape(shape) if shape is not None else out
        a = np.asarray(data, dtype=object)
        out = np.empty(a.shape, dtype=object)
        for idx, x in enumerate(a.flat):
            out.flat[idx] = _rational(x)
        if shape is not None:
            out = out.reshape(shape)
        return out

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(_Q(0))
        return out

    def matmul(self, a, b):
        if a.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        return a @ b

    def random(self, rng, shape):
        nums = rng.integers(-3, 4, size=shape)
        dens = rng.integers(1, 3, size=shape)
        out = np.empty(shape, dtype=object)
        for idx, (n, d) in enumerate(zip(nums.flat, dens.flat)):
            out.flat[idx] = _Q(int(n), int(d))
        return out

    def scalar_to_json(self, x):
        x = _rational(x)
        return f"{int(x.numerator)}/{int(x.denominator)}"

    def scalar_from_json(self, v):
        if isinstance(v, bool):
            raise ValueError(f"rational entry must be a string 'num/den', got {v!r}")
        if isinstance(v, int):
            return _Q(v)
        if not isinstance(v, str):
            raise ValueError(f"rational entry must be a string 'num/den', got {v!r}")
        return _rational(Fraction(v))

    def to_json(self):
        return {"kind": "q"}


_int_to_q = np.frompyfunc(lambda v: _Q(int(v)), 1, 1)


def _rational(x):
    if isinstance(x, _Q):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not rational scalars")
    if isinstance(x, numbers.Integral):
        return _Q(int(x))
    if isinstance(x, numbers.Rational):
        return _Q(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return _rational(Fraction(x))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


QQ = RationalField()


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "_a")

    def __init__(self, field: Field, data, shape=None):
        a = field.asarray(data, shape)
        if a.ndim != 2:
            raise DimensionError(f"matrix data must be two-dimensional, got shape {a.shape}")
        self._set(field, a)

    def _set(self, field, a):
        a.flags.writeable = False
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_a", a)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _wrap(cls, field, a):
        m = cls.__new__(cls)
        m._set(field, a)
        return m

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls._wrap(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field, n):
        return _identity(field, n)

    @classmethod
    def from_entries(cls, field, rows, cols, entries):
        if len(entries) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls(field, list(entries) if entries else field.zeros((rows, cols)), (rows, cols))

    @classmethod
    def random(cls, field, rows, cols, rng):
        return cls._wrap(field, field.random(rng, (rows, cols)))

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self):
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def entries(self) -> list:
        return list(self._a.flat)

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(self.field, self._a.T.copy())

    def _check(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise DimensionError(f"field mismatch: {self.field} vs {other.field}")
        return other

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix._wrap(self.field, self.field.matmul(self._a, other._a))

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(self.field, self.field.normalize(self._a + other._a))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._wrap(self.field, self.field.normalize(self._a - other._a))

    def __neg__(self):
        return Matrix._wrap(self.field, self.field.normalize(-self._a))

    def scale(self, c) -> Matrix:
        c = self.field.coerce(c)
        return Matrix._wrap(self.field, self.field.normalize(self._a * c))

    def __rmul__(self, c):
        if isinstance(c, (numbers.Rational, np.integer)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self._a, other._a))
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self._a != 0) if self._a.size else True

    def __getitem__(self, key):
        a = self._a[key]
        if not isinstance(a, np.ndarray) or a.ndim != 2:
            raise IndexError("Matrix indexing must produce a 2-d block; use .array for scalars")
        return Matrix._wrap(self.field, a.copy())

    def columns(self, idx) -> Matrix:
        return Matrix._wrap(self.field, self._a[:, list(idx)].copy())

    def __repr__(self):
        rows = [[self.field.scalar_to_json(x) for x in row] for row in self._a]
        return f"Matrix({self.field!r}, {self.rows}x{self.cols}, {rows})"


@functools.lru_cache(maxsize=256)
def _identity(field: Field, n: int) -> Matrix:
    a = field.zeros((n, n))
    for k in range(n):
        a[k, k] = field.coerce(1)
    return Matrix._wrap(field, a)


def hstack(*mats: Matrix) -> Matrix:
    if not mats:
        raise ValueError("hstack needs at least one matrix")
    field = mats[0].field
    if len({m.rows for m in mats}) > 1:
        raise DimensionError(f"hstack row mismatch: {[m.shape for m in mats]}")
    return Matrix._wrap(field, np.concatenate([m.array for m in mats], axis=1))


def vstack(*mats: Matrix) -> Matrix:
    if not mats:
        raise ValueError("vstack needs at least one matrix")
    field = mats[0].field
    if len({m.cols for m in mats}) > 1:
        raise DimensionError(f"vstack column mismatch: {[m.shape for m in mats]}")
    return Matrix._wrap(field, np.concatenate([m.array for m in mats], axis=0))


def block_diag(field: Field, *mats: Matrix) -> Matrix:
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    a = field.zeros((r, c))
    i = j = 0
    for m in mats:
        a[i : i + m.rows, j : j + m.cols] = m.array
        i += m.rows
        j += m.cols
    return Matrix._wrap(field, a)


def kron(A: Matrix, B: Matrix) -> Matrix:
    a = A.array[:, None, :, None] * B.array[None, :, None, :]
    a = a.reshape(A.rows * B.rows, A.cols * B.cols)
    return Matrix._wrap(A.field, A.field.normalize(a))


def _rref(field: Field, a: np.ndarray, limit: int | None = None):
    R = a.copy()
    m, n = R.shape
    limit = n if limit is None else limit
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        piv = R[r, c]
        if piv != 1:
            R[r, c:] = field.normalize(R[r, c:] * field.inv(piv))
        col = R[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            R[rows, c:] = field.normalize(R[rows, c:] - np.outer(col[rows], R[r, c:]))
        pivots.append(c)
        r += 1
    return R, pivots


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R, piv = _rref(A.field, A.array)
    return Matrix._wrap(A.field, R), piv


def rank(A: Matrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    # eliminate along the shorter side
    a = A.array if A.rows <= A.cols else A.array.T
    return len(_rref(A.field, a)[1])


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form a basis of ``{v : A v = 0}`` (one per free column)."""
    field = A.field
    n = A.cols
    R, piv = _rref(field, A.array)
    free = [c for c in range(n) if c not in set(piv)]
    K = field.zeros((n, len(free)))
    if free:
        if piv:
            K[piv, :] = field.normalize(-R[: len(piv)][:, free])
        K[free, range(len(free))] = field.coerce(1)
    return Matrix._wrap(field, K)


def image_basis(A: Matrix) -> Matrix:
    """Pivot columns of ``A``; a basis of its column space."""
    if A.rows == 0 or A.cols == 0:
        return Matrix.zeros(A.field, A.rows, 0)
    _, piv = _rref(A.field, A.array)
    return A.columns(piv)


def solve(A: Matrix, b: Matrix) -> Matrix | None:
    """Some ``x`` with ``A x = b``, or ``None`` when inconsistent.

    ``b`` may carry several columns; the result then has one solution column per
    right-hand side and ``None`` is returned if any of them is inconsistent.
    Free variables are set to zero.
    """
    if not isinstance(b, Matrix):
        b = Matrix(A.field, [[x] for x in b], (len(b), 1)) if len(b) else Matrix.zeros(A.field, 0, 1)
    if b.rows != A.rows:
        raise DimensionError(f"right-hand side has {b.rows} rows, matrix has {A.rows}")
    field = A.field
    n, k = A.cols, b.cols
    aug = np.concatenate([A.array, b.array], axis=1)
    R, piv = _rref(field, aug, limit=n)
    r = len(piv)
    if R[r:, n:].size and np.any(R[r:, n:] != 0):
        return None
    x = field.zeros((n, k))
    if r:
        x[piv, :] = R[:r, n:]
    return Matrix._wrap(field, x)


def complement_basis(U: Matrix, V: Matrix) -> Matrix:
    """Columns of ``V`` extending a basis of span(U) to a basis of span(V).

    Greedy: scanning ``V``'s columns in order, keep each one that is not in
    the span of ``U`` and the columns kept so far.
    """
    if U.rows != V.rows:
        raise DimensionError(f"ambient dimension mismatch: {U.rows} vs {V.rows}")
    field = V.field
    aug = np.concatenate([U.array, V.array], axis=1)
    _, piv = _rref(field, aug)
    if len(piv) != rank(V):
        raise DimensionError("span(U) is not contained in span(V)")
    keep = [c - U.cols for c in piv if c >= U.cols]
    return V.columns(keep)


def inverse(A: Matrix) -> Matrix:
    if A.rows != A.cols:
        raise DimensionError(f"cannot invert non-square {A.shape} matrix")
    n = A.rows
    field = A.field
    aug = np.concatenate([A.array, Matrix.identity(field, n).array], axis=1)
    R, piv = _rref(field, aug, limit=n)
    if len(piv) != n:
        raise DimensionError("matrix is singular")
    return Matrix._wrap(field, R[:, n:].copy())


def left_inverse(A: Matrix) -> Matrix:
    """``L`` with ``L A = I`` for ``A`` of full column rank."""
    x = solve(A.T, Matrix.identity(A.field, A.cols))
    if x is None:
        raise DimensionError("matrix does not have full column rank")
    return x.T


def cokernel_projection(A: Matrix) -> Matrix:
    """Rows spanning the annihilator of the column space of ``A``.

    ``W`` has full row rank, ``W A = 0`` and ``ker W = im A``.
    """
    return kernel_basis(A.T).T
