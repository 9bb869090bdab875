"""Cochain complexes with finite support, graded maps between them, cohomology,
model-structure predicates, finite (co)limits and the path object.

Conventions: ``X.d(i)`` is the differential ``X^i -> X^{i+1}`` as a matrix of
shape ``dim(i+1) x dim(i)``.  A :class:`GradedMap` of degree ``n`` has blocks
``X^i -> Y^{i+n}``.  Composition of graded maps is written ``g @ f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionError
from .linalg import (
    Field,
    Matrix,
    block_diag,
    complement_basis,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    left_inverse,
    rank,
    vstack,
)
from .report import Report


class Complex:
    """Finite-support cochain complex over a field.

    Zero-dimensional degrees are dropped, so ``lo``/``hi`` always bound the
    nonzero part (``lo = 0, hi = -1`` for the zero complex).  Differentials
    that are not supplied are zero.  No validation happens here; see
    :func:`validate_complex`.
    """

    def __init__(self, field: Field, dims: Mapping[int, int], diff: Mapping[int, Matrix] | None = None):
        self.field = field
        clean = {}
        for i, n in dims.items():
            n = int(n)
            if n < 0:
                raise DimensionError(f"negative dimension {n} in degree {i}")
            if n:
                clean[int(i)] = n
        self._dims = clean
        if clean:
            self.lo, self.hi = min(clean), max(clean)
        else:
            self.lo, self.hi = 0, -1
        self._diff = {}
        for i, m in (diff or {}).items():
            i = int(i)
            if m.field != field:
                raise DimensionError(f"differential in degree {i} is over {m.field}, complex over {field}")
            if m.rows and m.cols:
                self._diff[i] = m
        self._cache: dict = {}

    @classmethod
    def zero(cls, field: Field) -> Complex:
        return cls(field, {})

    @property
    def dims(self) -> dict[int, int]:
        return dict(self._dims)

    def dim(self, i: int) -> int:
        return self._dims.get(i, 0)

    def d(self, i: int) -> Matrix:
        m = self._diff.get(i)
        if m is not None:
            return m
        return Matrix.zeros(self.field, self.dim(i + 1), self.dim(i))

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def total_dim(self) -> int:
        return sum(self._dims.values())

    def is_zero(self) -> bool:
        return not self._dims

    @property
    def d_map(self) -> GradedMap:
        if "d" not in self._cache:
            self._cache["d"] = GradedMap(self, self, 1, {i: self.d(i) for i in self.degrees})
        return self._cache["d"]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Complex):
            return NotImplemented
        if self.field != other.field or self._dims != other._dims:
            return False
        return all(self.d(i) == other.d(i) for i in range(self.lo, self.hi))

    __hash__ = object.__hash__

    def __repr__(self):
        return f"Complex({self.field!r}, dims={self._dims})"


def _add(a, b):
    return a + b


def _sub(a, b):
    return a - b


def _same(X: Complex, Y: Complex) -> bool:
    return X is Y or X == Y


class GradedMap:
    """Family of matrices ``src^i -> tgt^{i+degree}``; missing blocks are zero."""

    def __init__(self, src: Complex, tgt: Complex, degree: int = 0, blocks: Mapping[int, Matrix] | None = None):
        if src.field != tgt.field:
            raise DimensionError(f"field mismatch: {src.field} vs {tgt.field}")
        self.src = src
        self.tgt = tgt
        self.degree = int(degree)
        self._blocks: dict[int, Matrix] = {}
        for i, m in (blocks or {}).items():
            i = int(i)
            shape = (tgt.dim(i + self.degree), src.dim(i))
            if m.shape != shape:
                if m.rows * m.cols == 0 and shape[0] * shape[1] == 0:
                    continue
                raise DimensionError(f"block {i} has shape {m.shape}, expected {shape}")
            if shape[0] and shape[1]:
                self._blocks[i] = m

    @classmethod
    def _make(cls, src, tgt, degree, blocks):
        """Trusted constructor: ``blocks`` already have the right nonzero shapes."""
        g = cls.__new__(cls)
        g.src, g.tgt, g.degree, g._blocks = src, tgt, degree, blocks
        return g

    @property
    def field(self) -> Field:
        return self.src.field

    def block(self, i: int) -> Matrix:
        m = self._blocks.get(i)
        if m is not None:
            return m
        return Matrix.zeros(self.field, self.tgt.dim(i + self.degree), self.src.dim(i))

    def __getitem__(self, i: int) -> Matrix:
        return self.block(i)

    @property
    def blocks(self) -> dict[int, Matrix]:
        return dict(self._blocks)

    def degrees(self) -> list[int]:
        """Source degrees where the block has nonzero size."""
        n = self.degree
        return [i for i in self.src.degrees if self.tgt.dim(i + n)]

    def __matmul__(self, other: GradedMap) -> GradedMap:
        if not isinstance(other, GradedMap):
            return NotImplemented
        if not _same(other.tgt, self.src):
            raise DimensionError("cannot compose: target of the right map is not the source of the left map")
        n = other.degree
        blocks = {}
        mine = self._blocks
        for i, b in other._blocks.items():
            a = mine.get(i + n)
            if a is not None:
                blocks[i] = a @ b
        return GradedMap._make(other.src, self.tgt, n + self.degree, blocks)

    def _binary(self, other: GradedMap, op) -> GradedMap:
        if not isinstance(other, GradedMap):
            return NotImplemented
        if other.degree != self.degree or not _same(self.src, other.src) or not _same(self.tgt, other.tgt):
            raise DimensionError("graded maps must share source, target and degree")
        mine, theirs = self._blocks, other._blocks
        blocks = {}
        for i in mine.keys() | theirs.keys():
            a, b = mine.get(i), theirs.get(i)
            if a is None:
                blocks[i] = op(self.block(i), b)
            elif b is None:
                blocks[i] = a if op is _add else op(a, other.block(i))
            else:
                blocks[i] = op(a, b)
        return GradedMap._make(self.src, self.tgt, self.degree, blocks)

    def __add__(self, other):
        return self._binary(other, _add)

    def __sub__(self, other):
        return self._binary(other, _sub)

    def __neg__(self):
        return GradedMap._make(self.src, self.tgt, self.degree, {i: -m for i, m in self._blocks.items()})

    def scale(self, c) -> GradedMap:
        return GradedMap._make(self.src, self.tgt, self.degree, {i: m.scale(c) for i, m in self._blocks.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        if self.degree != other.degree or not _same(self.src, other.src) or not _same(self.tgt, other.tgt):
            return False
        mine, theirs = self._blocks, other._blocks
        for i in mine.keys() | theirs.keys():
            a, b = mine.get(i), theirs.get(i)
            if a is None:
                if not b.is_zero():
                    return False
            elif b is None:
                if not a.is_zero():
                    return False
            elif a != b:
                return False
        return True

    __hash__ = None

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self._blocks.values())

    def __repr__(self):
        return f"GradedMap(degree={self.degree}, {self.src!r} -> {self.tgt!r})"


def identity(X: Complex) -> GradedMap:
    if "id" not in X._cache:
        X._cache["id"] = GradedMap(X, X, 0, {i: Matrix.identity(X.field, X.dim(i)) for i in X.degrees})
    return X._cache["id"]


def zero_map(X: Complex, Y: Complex, degree: int = 0) -> GradedMap:
    return GradedMap(X, Y, degree, {})


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    return g @ f


def graded_commutator(f: GradedMap) -> GradedMap:
    """``d f - (-1)^n f d`` for ``f`` of degree ``n``."""
    lhs = f.tgt.d_map @ f
    rhs = f @ f.src.d_map
    return lhs - rhs if f.degree % 2 == 0 else lhs + rhs


def d_commutator(f: GradedMap) -> GradedMap:
    """``D(h) = d h + h d`` in degree -1; ``d f - f d`` in degree 0."""
    if f.degree not in (-1, 0):
        raise ValueError(f"d_commutator supports degrees -1 and 0, got {f.degree}")
    return graded_commutator(f)


def is_chain_map(f: GradedMap) -> bool:
    return f.degree == 0 and graded_commutator(f).is_zero()


def validate_complex(X: Complex) -> Report:
    rep = Report("complex")
    for i, m in X._diff.items():
        if m.shape != (X.dim(i + 1), X.dim(i)):
            rep.fail("shape", i)
    if not rep.ok:
        return rep
    for i in range(X.lo, X.hi - 1):
        rep.check((X.d(i + 1) @ X.d(i)).is_zero(), "d^2=0", i)
    return rep


def check_chain_map(f: GradedMap) -> Report:
    rep = Report("chain map")
    rep.check(f.degree == 0, "degree=0")
    c = graded_commutator(f)
    for i in c.degrees():
        rep.check(c.block(i).is_zero(), "df=fd", i)
    return rep


# ----------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True)
class CohomologyData:
    """Cocycle representatives for ``H^i`` and a way to read off classes."""

    complex: Complex
    reps: dict[int, Matrix]
    boundaries: dict[int, Matrix]
    _left: dict[int, Matrix]

    def dim(self, i: int) -> int:
        r = self.reps.get(i)
        return 0 if r is None else r.cols

    def classes(self, i: int, z: Matrix) -> Matrix:
        """Coordinates (in ``reps[i]``) of the classes of the cocycle columns ``z``."""
        X = self.complex
        if X.dim(i) == 0:
            return Matrix.zeros(X.field, 0, z.cols)
        nb = self.boundaries[i].cols
        return (self._left[i] @ z)[nb:, :]


def cohomology(X: Complex) -> CohomologyData:
    if "H" in X._cache:
        return X._cache["H"]
    reps, bnds, left = {}, {}, {}
    for i in X.degrees:
        Z = kernel_basis(X.d(i))
        B = image_basis(X.d(i - 1))
        R = complement_basis(B, Z)
        reps[i], bnds[i] = R, B
        basis = hstack(B, R)
        left[i] = left_inverse(basis) if basis.cols else Matrix.zeros(X.field, 0, X.dim(i))
    H = CohomologyData(X, reps, bnds, left)
    X._cache["H"] = H
    return H


def betti(X: Complex) -> dict[int, int]:
    H = cohomology(X)
    return {i: H.dim(i) for i in X.degrees if H.dim(i)}


def _window(*cs: Complex) -> range:
    nz = [c for c in cs if not c.is_zero()]
    if not nz:
        return range(0)
    return range(min(c.lo for c in nz), max(c.hi for c in nz) + 1)


def induced_map(f: GradedMap) -> dict[int, Matrix]:
    """Matrix of ``H(f)`` in the representative bases, per degree."""
    if f.degree != 0:
        raise ValueError("induced_map needs a degree-0 map")
    Hs, Ht = cohomology(f.src), cohomology(f.tgt)
    out = {}
    for i in _window(f.src, f.tgt):
        hs, ht = Hs.dim(i), Ht.dim(i)
        if hs == 0 or ht == 0:
            out[i] = Matrix.zeros(f.field, ht, hs)
        else:
            out[i] = Ht.classes(i, f.block(i) @ Hs.reps[i])
    return out


def is_quasi_iso(f: GradedMap) -> bool:
    Hs, Ht = cohomology(f.src), cohomology(f.tgt)
    for i, m in induced_map(f).items():
        if Hs.dim(i) != Ht.dim(i):
            return False
        if Hs.dim(i) and rank(m) != Hs.dim(i):
            return False
    return True


def is_fibration(f: GradedMap) -> bool:
    """Degreewise surjective."""
    return all(rank(f.block(i)) == f.tgt.dim(i) for i in f.tgt.degrees)


def is_cofibration(f: GradedMap) -> bool:
    """Degreewise injective (over a field with finite support this is exactly
    injective with projective cokernel, which characterizes cofibrations)."""
    return all(rank(f.block(i)) == f.src.dim(i) for i in f.src.degrees)


def is_trivial_fibration(f: GradedMap) -> bool:
    return is_fibration(f) and is_quasi_iso(f)


def is_trivial_cofibration(f: GradedMap) -> bool:
    return is_cofibration(f) and is_quasi_iso(f)


# ----------------------------------------------------------------------------
# constructions


def shift(X: Complex, n: int) -> Complex:
    """``X[n]^i = X^{i+n}`` with differential ``(-1)^n d``."""
    sign = -1 if n % 2 else 1
    return Complex(
        X.field,
        {i - n: X.dim(i) for i in X.degrees},
        {i - n: X.d(i).scale(sign) for i in X.degrees},
    )


@dataclass(frozen=True)
class DirectSum:
    obj: Complex
    inclusions: tuple[GradedMap, ...]
    projections: tuple[GradedMap, ...]

    def into(self, *maps: GradedMap) -> GradedMap:
        """The map ``(m_1, ..., m_k)`` into the sum."""
        out = None
        for inc, m in zip(self.inclusions, maps, strict=True):
            t = inc @ m
            out = t if out is None else out + t
        return out

    def out_of(self, *maps: GradedMap) -> GradedMap:
        """The map ``[m_1, ..., m_k]`` out of the sum."""
        out = None
        for pr, m in zip(self.projections, maps, strict=True):
            t = m @ pr
            out = t if out is None else out + t
        return out


def direct_sum(*cs: Complex) -> DirectSum:
    if not cs:
        raise ValueError("direct_sum needs at least one complex")
    field = cs[0].field
    for c in cs:
        if c.field != field:
            raise DimensionError("field mismatch in direct sum")
    degrees = _window(*cs)
    dims = {i: sum(c.dim(i) for c in cs) for i in degrees}
    diff = {i: block_diag(field, *(c.d(i) for c in cs)) for i in degrees}
    S = Complex(field, dims, diff)
    incs, prs = [], []
    offsets = {i: 0 for i in degrees}
    for c in cs:
        inc, pr = {}, {}
        for i in c.degrees:
            n, off = c.dim(i), offsets[i]
            e = Matrix.identity(field, S.dim(i))[:, off : off + n]
            inc[i] = e
            pr[i] = e.T
            offsets[i] = off + n
        incs.append(GradedMap(c, S, 0, inc))
        prs.append(GradedMap(S, c, 0, pr))
    return DirectSum(S, tuple(incs), tuple(prs))


def direct_sum_maps(f: GradedMap, g: GradedMap, src: DirectSum | None = None, tgt: DirectSum | None = None) -> GradedMap:
    """``f (+) g`` between the sums of the sources and of the targets."""
    src = src or direct_sum(f.src, g.src)
    tgt = tgt or direct_sum(f.tgt, g.tgt)
    return tgt.into(f @ src.projections[0], g @ src.projections[1])


@dataclass(frozen=True)
class Subcomplex:
    """Subcomplex spanned degreewise by the columns of ``basis``."""

    obj: Complex
    inclusion: GradedMap
    _left: dict[int, Matrix]

    def restrict(self, m: GradedMap) -> GradedMap:
        """Factor a map landing in the subcomplex through the inclusion."""
        blocks = {i: self._left[i + m.degree] @ m.block(i) for i in m.degrees() if self.obj.dim(i + m.degree)}
        return GradedMap(m.src, self.obj, m.degree, blocks)


def subcomplex(X: Complex, basis: Mapping[int, Matrix]) -> Subcomplex:
    """``basis[i]`` must have independent columns and ``d`` must preserve the span."""
    left = {i: left_inverse(b) for i, b in basis.items() if b.cols}
    dims = {i: b.cols for i, b in basis.items()}
    diff = {}
    for i, b in basis.items():
        nb = basis.get(i + 1)
        if b.cols and nb is not None and nb.cols:
            diff[i] = left[i + 1] @ (X.d(i) @ b)
    S = Complex(X.field, dims, diff)
    inc = GradedMap(S, X, 0, {i: b for i, b in basis.items() if b.cols})
    return Subcomplex(S, inc, left)


def kernel_complex(f: GradedMap) -> Subcomplex:
    return subcomplex(f.src, {i: kernel_basis(f.block(i)) for i in f.src.degrees})


@dataclass(frozen=True)
class Quotient:
    """Quotient ``X -> X/U`` with a degreewise (non-chain) section."""

    obj: Complex
    projection: GradedMap
    section: GradedMap


def quotient(X: Complex, sub: Mapping[int, Matrix]) -> Quotient:
    """Quotient of ``X`` by the span of ``sub[i]`` (which ``d`` must preserve)."""
    field = X.field
    q, s = {}, {}
    for i in X.degrees:
        U = sub.get(i)
        if U is None:
            U = Matrix.zeros(field, X.dim(i), 0)
        U = image_basis(U)
        comp = complement_basis(U, Matrix.identity(field, X.dim(i)))
        T = inverse(hstack(U, comp))
        q[i] = T[U.cols :, :]
        s[i] = comp
    dims = {i: s[i].cols for i in X.degrees}
    diff = {i: q[i + 1] @ X.d(i) @ s[i] for i in X.degrees if i + 1 in q}
    Qc = Complex(field, dims, diff)
    return Quotient(Qc, GradedMap(X, Qc, 0, q), GradedMap(Qc, X, 0, s))


@dataclass(frozen=True)
class Pushout:
    """``P +_A B`` for ``P <-g- A -i-> B``; ``g_bar: B -> obj``, ``i_bar: P -> obj``."""

    obj: Complex
    g_bar: GradedMap
    i_bar: GradedMap
    g: GradedMap
    i: GradedMap
    _sum: DirectSum
    _section: GradedMap

    def mediate(self, on_p: GradedMap, on_b: GradedMap) -> GradedMap:
        """Unique ``m`` with ``m i_bar = on_p`` and ``m g_bar = on_b``."""
        if on_p @ self.g != on_b @ self.i:
            raise DimensionError("cocone does not commute: on_p g != on_b i")
        return self._sum.out_of(on_p, on_b) @ self._section


def pushout(g: GradedMap, i: GradedMap) -> Pushout:
    if not _same(g.src, i.src):
        raise DimensionError("pushout legs must share their source")
    S = direct_sum(g.tgt, i.tgt)
    u = S.into(g, -i)
    q = quotient(S.obj, {k: u.block(k) for k in u.src.degrees})
    return Pushout(
        q.obj,
        q.projection @ S.inclusions[1],
        q.projection @ S.inclusions[0],
        g,
        i,
        S,
        q.section,
    )


@dataclass(frozen=True)
class Pullback:
    """``N x_M P`` for ``N -p-> M <-h- P``; ``p_bar: obj -> P``, ``h_bar: obj -> N``."""

    obj: Complex
    p_bar: GradedMap
    h_bar: GradedMap
    p: GradedMap
    h: GradedMap
    _sum: DirectSum
    _sub: Subcomplex

    def mediate(self, to_n: GradedMap, to_p: GradedMap) -> GradedMap:
        """Unique ``m`` with ``h_bar m = to_n`` and ``p_bar m = to_p``."""
        if self.p @ to_n != self.h @ to_p:
            raise DimensionError("cone does not commute: p to_n != h to_p")
        return self._sub.restrict(self._sum.into(to_n, to_p))


def pullback(p: GradedMap, h: GradedMap) -> Pullback:
    if not _same(p.tgt, h.tgt):
        raise DimensionError("pullback legs must share their target")
    S = direct_sum(p.src, h.src)
    u = S.out_of(p, -h)
    sub = kernel_complex(u)
    inc = sub.inclusion
    return Pullback(sub.obj, S.projections[1] @ inc, S.projections[0] @ inc, p, h, S, sub)


# ----------------------------------------------------------------------------
# path object


@dataclass(frozen=True)
class PathObject:
    """``P(B)^i = B^i + B^i + B^{i-1}`` with ``delta(a,b,c) = (da, db, a - b - dc)``."""

    obj: Complex
    base: Complex
    incl: GradedMap
    proj: GradedMap
    square: DirectSum

    def _slots(self, i):
        n0, n1 = self.base.dim(i), self.base.dim(i - 1)
        return n0, n1

    def lift(self, f: GradedMap, g: GradedMap, h: GradedMap) -> GradedMap:
        """The map ``a -> (f a, g a, h a)``; a chain map iff ``f - g = dh + hd``."""
        blocks = {}
        for i in f.src.degrees:
            if self.obj.dim(i):
                blocks[i] = vstack(f.block(i), g.block(i), h.block(i))
        return GradedMap(f.src, self.obj, 0, blocks)

    def components(self, m: GradedMap) -> tuple[GradedMap, GradedMap, GradedMap]:
        """Inverse of :meth:`lift`."""
        B = self.base
        fb, gb, hb = {}, {}, {}
        for i in m.src.degrees:
            n0, n1 = self._slots(i)
            blk = m.block(i)
            fb[i], gb[i], hb[i] = blk[:n0, :], blk[n0 : 2 * n0, :], blk[2 * n0 : 2 * n0 + n1, :]
        return (
            GradedMap(m.src, B, 0, fb),
            GradedMap(m.src, B, 0, gb),
            GradedMap(m.src, B, -1, {i: hb[i] for i in hb if B.dim(i - 1)}),
        )


def path_object(B: Complex) -> PathObject:
    if "path" in B._cache:
        return B._cache["path"]
    field = B.field
    degrees = range(B.lo, B.hi + 2) if not B.is_zero() else range(0)
    dims = {i: 2 * B.dim(i) + B.dim(i - 1) for i in degrees}
    diff = {}
    for i in degrees:
        n0, n1 = B.dim(i), B.dim(i - 1)
        m0 = B.dim(i + 1)
        d0, d1 = B.d(i), B.d(i - 1)
        Z = lambda r, c: Matrix.zeros(field, r, c)  # noqa: E731
        I = Matrix.identity(field, n0)
        diff[i] = vstack(
            hstack(d0, Z(m0, n0), Z(m0, n1)),
            hstack(Z(m0, n0), d0, Z(m0, n1)),
            hstack(I, -I, -d1),
        )
    P = Complex(field, dims, diff)
    sq = direct_sum(B, B)
    incl, proj = {}, {}
    for i in degrees:
        n0, n1 = B.dim(i), B.dim(i - 1)
        I = Matrix.identity(field, n0)
        incl[i] = vstack(I, I, Matrix.zeros(field, n1, n0))
        proj[i] = Matrix.identity(field, P.dim(i))[: 2 * n0, :]
    po = PathObject(P, B, GradedMap(B, P, 0, incl), GradedMap(P, sq.obj, 0, proj), sq)
    B._cache["path"] = po
    return po


def path_map(f: GradedMap) -> GradedMap:
    """``P(f)(a, b, c) = (f a, f b, f c)``."""
    PS, PT = path_object(f.src), path_object(f.tgt)
    blocks = {}
    for i in PS.obj.degrees:
        if PT.obj.dim(i):
            blocks[i] = block_diag(f.field, f.block(i), f.block(i), f.block(i - 1))
    return GradedMap(PS.obj, PT.obj, 0, blocks)


def sdr_as_path_map(x) -> GradedMap:
    """``N -> P(N), x -> (iota pi x, x, h x)``; a chain map iff ``iota pi - Id = dh + hd``."""
    N = x.iota.tgt
    return path_object(N).lift(x.iota @ x.pi, identity(N), x.h)


@dataclass(frozen=True)
class PathSequence:
    """``0 -> C[-1] -> P(Q) -> (Q+Q) x_{N+N} P(N) -> 0`` for a surjection ``Q -> N``."""

    kernel: Complex
    left: GradedMap
    right: GradedMap


def path_exact_sequence(q: GradedMap) -> PathSequence:
    Q, N = q.src, q.tgt
    C = kernel_complex(q)
    Cm = shift(C.obj, -1)
    PQ, PN = path_object(Q), path_object(N)
    SQ, SN = PQ.square, PN.square
    q2 = SN.into(q @ SQ.projections[0], q @ SQ.projections[1])
    pb = pullback(q2, PN.proj)
    field = q.field
    left = {}
    for i in Cm.degrees:
        if PQ.obj.dim(i):
            n0 = Q.dim(i)
            left[i] = vstack(Matrix.zeros(field, 2 * n0, Cm.dim(i)), C.inclusion.block(i - 1))
    a = GradedMap(Cm, PQ.obj, 0, left)
    b = pb.mediate(PQ.proj, path_map(q))
    return PathSequence(Cm, a, b)


def check_path_exact_sequence(q: GradedMap) -> Report:
    rep = Report("path exact sequence")
    rep.check(is_fibration(q), "q surjective")
    if not rep.ok:
        return rep
    seq = path_exact_sequence(q)
    a, b = seq.left, seq.right
    rep.check(is_chain_map(a), "left chain map")
    rep.check(is_chain_map(b), "right chain map")
    rep.check((b @ a).is_zero(), "composite zero")
    rep.check(is_cofibration(a), "left injective")
    rep.check(is_fibration(b), "right surjective")
    for i in _window(a.src, a.tgt, b.tgt):
        rep.check(a.tgt.dim(i) == a.src.dim(i) + b.tgt.dim(i), "dimension count", i)
    return rep


# ----------------------------------------------------------------------------
# splittings


@dataclass(frozen=True)
class Splitting:
    """Basis ``[spheres | bottoms | d(bottoms of degree i-1)]`` of every ``X^i``.

    Spheres are cocycles representing the cohomology, bottoms span a
    complement of the cocycles.
    """

    complex: Complex
    spheres: dict[int, Matrix]
    bottoms: dict[int, Matrix]

    def tops(self, i: int) -> Matrix:
        X = self.complex
        b = self.bottoms.get(i - 1)
        if b is None:
            return Matrix.zeros(X.field, X.dim(i), 0)
        return X.d(i - 1) @ b

    def basis(self, i: int) -> Matrix:
        return hstack(self.spheres[i], self.bottoms[i], self.tops(i))


def splitting(X: Complex) -> Splitting:
    if "split" in X._cache:
        return X._cache["split"]
    field = X.field
    spheres, bottoms = {}, {}
    for i in X.degrees:
        Z = kernel_basis(X.d(i))
        bottoms[i] = complement_basis(Z, Matrix.identity(field, X.dim(i)))
    s = Splitting(X, spheres, bottoms)
    for i in X.degrees:
        Z = kernel_basis(X.d(i))
        spheres[i] = complement_basis(s.tops(i), Z)
    X._cache["split"] = s
    return s
