"""Independent reference implementations used to check the library.

Everything here works on plain Python lists of ints or Fractions and shares
no code with ``contrmodel.linalg``.
"""

from fractions import Fraction
from itertools import product


def to_rows(m):
    """Matrix -> list of lists of Fractions (or ints mod p)."""
    return [[x if isinstance(x, int) else Fraction(int(x.numerator), int(x.denominator)) for x in row]
            for row in m.array.tolist()]


def field_ops(p):
    if p is None:
        return (lambda x: Fraction(x)), (lambda x: 1 / Fraction(x))
    return (lambda x: int(x) % p), (lambda x: pow(int(x) % p, -1, p))


def rank(rows, p=None):
    """Plain Gaussian elimination; ``p=None`` means rationals."""
    norm, inv = field_ops(p)
    a = [[norm(x) for x in r] for r in rows]
    if not a or not a[0]:
        return 0
    r = 0
    ncols = len(a[0])
    for c in range(ncols):
        piv = next((k for k in range(r, len(a)) if a[k][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = inv(a[r][c])
        a[r] = [norm(x * s) for x in a[r]]
        for k in range(len(a)):
            if k != r and a[k][c] != 0:
                t = a[k][c]
                a[k] = [norm(x - t * y) for x, y in zip(a[k], a[r])]
        r += 1
    return r


def matvec(rows, v, p=None):
    norm, _ = field_ops(p)
    return [norm(sum(x * y for x, y in zip(r, v))) for r in rows]


def all_vectors(n, p):
    return product(range(p), repeat=n)


def brute_kernel_dim(rows, ncols, p):
    """Count kernel vectors by enumeration and take log_p."""
    count = sum(1 for v in all_vectors(ncols, p) if not any(matvec(rows, v, p)))
    dim = 0
    while p**dim < count:
        dim += 1
    assert p**dim == count
    return dim


def betti(X, p=None):
    """dim ker d_i - rank d_{i-1}, using :func:`rank` only."""
    out = {}
    for i in X.degrees:
        n = X.dim(i)
        r_out = rank(to_rows(X.d(i)), p) if X.dim(i + 1) and n else 0
        r_in = rank(to_rows(X.d(i - 1)), p) if X.dim(i - 1) and n else 0
        out[i] = n - r_out - r_in
    return out


def char(field):
    return None if field.kind == "q" else field.p
