"""Semifree extensions, the lifting and factorization algorithms built on them,
the disk-based (trivial cofibration, fibration) factorization, a generic linear
lifting solver and the retract presentation of cofibrations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .complex import (
    Complex,
    GradedMap,
    Pushout,
    _window,
    identity,
    is_chain_map,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
)
from .errors import DimensionError, FactorizationError, InvariantViolation, PreconditionError
from .linalg import (
    Matrix,
    cokernel_projection,
    complement_basis,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    kron,
    rank,
    solve,
    vstack,
)
from .report import Report
from .retract import Contraction

# ----------------------------------------------------------------------------
# cell data


def _cols(P: Complex, m: Mapping[int, Matrix], i: int) -> Matrix:
    c = m.get(i)
    return c if c is not None else Matrix.zeros(P.field, P.dim(i), 0)


@dataclass(frozen=True, eq=False)
class SemifreeExtension:
    """Injective chain map ``f: C -> P`` with a cell filtration.

    ``stages[n][i]`` holds the columns (in ``P^i`` coordinates) spanning the
    free summand ``A_n^i``; ``P_0 = f(C)`` and ``P_{n+1} = P_n + A_n`` with
    ``d(A_n) inside P_n``.
    """

    f: GradedMap
    stages: tuple[dict[int, Matrix], ...] = ()

    @property
    def source(self) -> Complex:
        return self.f.src

    @property
    def target(self) -> Complex:
        return self.f.tgt

    def cells(self, n: int, i: int) -> Matrix:
        return _cols(self.target, self.stages[n], i)

    def basis(self, i: int) -> Matrix:
        return hstack(self.f.block(i), *(self.cells(n, i) for n in range(len(self.stages))))

    def cell_counts(self) -> list[dict[int, int]]:
        return [{i: m.cols for i, m in st.items() if m.cols} for st in self.stages]

    def check(self) -> Report:
        rep = Report("semifree extension")
        P = self.target
        rep.check(is_chain_map(self.f), "f chain map")
        rep.check(is_cofibration(self.f), "f injective")
        for i in P.degrees:
            b = self.basis(i)
            rep.check(b.cols == P.dim(i) and rank(b) == P.dim(i), "stages span P", i)
        for n in range(len(self.stages)):
            for i in P.degrees:
                a = self.cells(n, i)
                if not a.cols or not P.dim(i + 1):
                    continue
                prev = hstack(self.f.block(i + 1), *(self.cells(m, i + 1) for m in range(n)))
                da = P.d(i) @ a
                rep.check(rank(hstack(prev, da)) == rank(prev), f"d(A_{n}) in P_{n}", i)
        return rep

    def transport(self, po: Pushout) -> SemifreeExtension:
        """Cells of the pushout ``g_bar`` of ``f`` (``po`` must be built on ``f``)."""
        if po.g is not self.f and po.g != self.f:
            raise DimensionError("pushout is not taken along this extension")
        ib = po.i_bar
        stages = tuple({i: ib.block(i) @ a for i, a in st.items() if a.cols} for st in self.stages)
        return SemifreeExtension(po.g_bar, stages)

    def then(self, other: SemifreeExtension) -> SemifreeExtension:
        """Cells of ``other.f @ self.f``: ours pushed forward, then ``other``'s."""
        g = other.f
        pushed = tuple({i: g.block(i) @ a for i, a in st.items() if a.cols} for st in self.stages)
        return SemifreeExtension(g @ self.f, pushed + tuple(other.stages))

    def to_semifree(self) -> SemifreeExtension:
        return self


@dataclass(frozen=True, eq=False)
class DiskExtension:
    """Inclusion ``f: C -> P`` with ``P = f(C) + span(bottoms) + d(span(bottoms))``.

    The disks form a contractible subcomplex complementary to ``f(C)``, so
    ``f`` is a trivial cofibration with an explicit contraction of ``P`` onto
    ``C``; lifting it against any fibration needs no cohomological argument.
    """

    f: GradedMap
    bottoms: dict[int, Matrix] = field(default_factory=dict)

    @property
    def source(self) -> Complex:
        return self.f.src

    @property
    def target(self) -> Complex:
        return self.f.tgt

    def tops(self, i: int) -> Matrix:
        P = self.target
        return P.d(i - 1) @ _cols(P, self.bottoms, i - 1)

    def basis(self, i: int) -> Matrix:
        return hstack(self.f.block(i), _cols(self.target, self.bottoms, i), self.tops(i))

    def check(self) -> Report:
        rep = Report("disk extension")
        P = self.target
        rep.check(is_chain_map(self.f), "f chain map")
        for i in P.degrees:
            b = self.basis(i)
            rep.check(b.cols == P.dim(i) and rank(b) == P.dim(i), "disks complement f(C)", i)
        return rep

    def to_semifree(self) -> SemifreeExtension:
        P = self.target
        tops = {i: self.tops(i) for i in P.degrees}
        return SemifreeExtension(self.f, (tops, dict(self.bottoms)))

    def contraction(self) -> Contraction:
        """Contraction of ``P`` onto ``C``: ``h`` sends each top ``dx`` to ``-x``."""
        C, P = self.source, self.target
        pi, h = {}, {}
        for i in P.degrees:
            binv = inverse(self.basis(i))
            pi[i] = binv[: C.dim(i), :]
            nb = _cols(P, self.bottoms, i).cols
            prev = _cols(P, self.bottoms, i - 1)
            img = hstack(Matrix.zeros(P.field, P.dim(i - 1), C.dim(i) + nb), -prev)
            h[i] = img @ binv
        return Contraction(self.f, GradedMap(P, C, 0, pi), GradedMap(P, P, -1, h))

    def transport(self, po: Pushout) -> DiskExtension:
        if po.g is not self.f and po.g != self.f:
            raise DimensionError("pushout is not taken along this extension")
        ib = po.i_bar
        return DiskExtension(po.g_bar, {i: ib.block(i) @ b for i, b in self.bottoms.items() if b.cols})

    def then(self, other: DiskExtension) -> DiskExtension:
        g = other.f
        bottoms = {}
        for i in set(self.bottoms) | set(other.bottoms):
            parts = []
            if i in self.bottoms:
                parts.append(g.block(i) @ self.bottoms[i])
            if i in other.bottoms:
                parts.append(other.bottoms[i])
            bottoms[i] = hstack(*parts)
        return DiskExtension(g @ self.f, bottoms)


# ----------------------------------------------------------------------------
# cellwise extension engine
#
# Solve for a map ``phi: P -> X`` of degree ``n`` with
#     phi f = F,   p phi = G,   d phi - (-1)^n phi d = R,
# one cell at a time.


def _blk(m: GradedMap | None, i: int, rows: int, cols: int, field) -> Matrix:
    if m is None:
        return Matrix.zeros(field, rows, cols)
    return m.block(i)


def _extend_semifree(ext: SemifreeExtension, F: GradedMap, p: GradedMap, G: GradedMap, R: GradedMap | None) -> GradedMap:
    n = F.degree
    sign = -1 if n % 2 else 1
    P, X = ext.target, p.src
    fld = P.field
    binv = {i: inverse(ext.basis(i)) for i in P.degrees}
    vals = {i: F.block(i) for i in P.degrees}
    for stage in ext.stages:
        known = {i: vals[i].cols for i in P.degrees}
        new = {}
        for i, A in stage.items():
            k = A.cols
            if not k:
                continue
            if P.dim(i + 1):
                coords = binv[i + 1] @ (P.d(i) @ A)
                kn = known[i + 1]
                if not coords[kn:, :].is_zero():
                    raise InvariantViolation(f"cell in degree {i} attaches outside the earlier stages")
                phi_dA = vals[i + 1] @ coords[:kn, :]
            else:
                phi_dA = Matrix.zeros(fld, X.dim(i + 1 + n), k)
            rhs_d = _blk(R, i, X.dim(i + n + 1), P.dim(i), fld) @ A + phi_dA.scale(sign)
            rhs_p = G.block(i) @ A
            W = solve(vstack(X.d(i + n), p.block(i + n)), vstack(rhs_d, rhs_p))
            if W is None:
                raise InvariantViolation(f"no extension over the cells in degree {i}")
            new[i] = W
        for i, W in new.items():
            vals[i] = hstack(vals[i], W)
    return GradedMap(P, X, n, {i: vals[i] @ binv[i] for i in P.degrees if X.dim(i + n)})


def _extend_disks(ext: DiskExtension, F: GradedMap, p: GradedMap, G: GradedMap, R: GradedMap | None) -> GradedMap:
    n = F.degree
    sign = -1 if n % 2 else 1
    P, X = ext.target, p.src
    fld = P.field
    W = {}
    for i in P.degrees:
        b = _cols(P, ext.bottoms, i)
        w = solve(p.block(i + n), G.block(i) @ b)
        if w is None:
            raise InvariantViolation(f"target map is not surjective in degree {i + n}")
        W[i] = w
    blocks = {}
    for i in P.degrees:
        if not X.dim(i + n):
            continue
        prev = _cols(P, ext.bottoms, i - 1)
        if prev.cols:
            Wp = W.get(i - 1, Matrix.zeros(fld, X.dim(i - 1 + n), prev.cols))
            top_vals = (X.d(i - 1 + n) @ Wp - _blk(R, i - 1, X.dim(i + n), P.dim(i - 1), fld) @ prev).scale(sign)
        else:
            top_vals = Matrix.zeros(fld, X.dim(i + n), 0)
        vals = hstack(F.block(i), W[i], top_vals)
        blocks[i] = vals @ inverse(ext.basis(i))
    return GradedMap(P, X, n, blocks)


def extend_over_cells(ext, F, p, G, R=None) -> GradedMap:
    if isinstance(ext, DiskExtension):
        return _extend_disks(ext, F, p, G, R)
    return _extend_semifree(ext, F, p, G, R)


# ----------------------------------------------------------------------------
# lifting


@dataclass(frozen=True, eq=False)
class LiftingProblem:
    """Square ``p f = g i`` with ``i: A -> B``, ``f: A -> X``, ``p: X -> Y``, ``g: B -> Y``."""

    i: GradedMap
    f: GradedMap
    p: GradedMap
    g: GradedMap

    def commutes(self) -> bool:
        return self.p @ self.f == self.g @ self.i

    def is_lift(self, h: GradedMap) -> bool:
        return is_chain_map(h) and h @ self.i == self.f and self.p @ h == self.g


def _require_square(prob: LiftingProblem):
    if not prob.commutes():
        raise PreconditionError("lifting square does not commute")


def lift_semifree(prob: LiftingProblem, cells: SemifreeExtension) -> GradedMap:
    """Lift a semifree extension against a surjective quasi-isomorphism.

    Per cell ``a`` the value ``w = h(a)`` solves ``d w = h(da)`` and
    ``p w = g(a)`` as one linear system.
    """
    _require_square(prob)
    if cells.f is not prob.i and cells.f != prob.i:
        raise PreconditionError("cell data does not describe the left map")
    if not (is_fibration(prob.p) and is_quasi_iso(prob.p)):
        raise PreconditionError("right map is not a surjective quasi-isomorphism")
    h = _extend_semifree(cells, prob.f, prob.p, prob.g, None)
    if not prob.is_lift(h):
        raise InvariantViolation("cellwise lift fails the lifting equations")
    return h


def lift_disks(prob: LiftingProblem, cells: DiskExtension) -> GradedMap:
    """Lift a disk extension (trivial cofibration) against a fibration."""
    _require_square(prob)
    if cells.f is not prob.i and cells.f != prob.i:
        raise PreconditionError("disk data does not describe the left map")
    if not is_fibration(prob.p):
        raise PreconditionError("right map is not degreewise surjective")
    h = _extend_disks(cells, prob.f, prob.p, prob.g, None)
    if not prob.is_lift(h):
        raise InvariantViolation("disk lift fails the lifting equations")
    return h


def lift_linear(prob: LiftingProblem) -> GradedMap | None:
    """Solve ``h i = f``, ``p h = g``, ``d h = h d`` directly; ``None`` if inconsistent."""
    _require_square(prob)
    sol = solve_graded(prob.i.tgt, prob.p.src, 0, pre=[(prob.i, prob.f)], post=[(prob.p, prob.g)])
    return sol.particular


def lift(prob: LiftingProblem, cells=None) -> GradedMap:
    """Structured lift when cell data is given, the linear solver otherwise."""
    if isinstance(cells, DiskExtension):
        return lift_disks(prob, cells)
    if isinstance(cells, SemifreeExtension):
        return lift_semifree(prob, cells)
    h = lift_linear(prob)
    if h is None:
        raise InvariantViolation("lifting problem has no solution")
    return h


# ----------------------------------------------------------------------------
# generic solver for graded maps under linear constraints


@dataclass
class GradedSolution:
    particular: GradedMap | None
    homogeneous: list[GradedMap]


def _vec(m: Matrix) -> np.ndarray:
    return m.array.reshape(-1, 1)


def _left_mult(fld, A: Matrix, K: np.ndarray, r: int, c: int) -> np.ndarray:
    """Columns ``vec(Y)`` of ``K`` (``Y`` is ``r x c``) mapped to ``vec(A Y)``."""
    k = K.shape[1]
    out = fld.matmul(A.array, K.reshape(r, c * k))
    return out.reshape(A.rows * c, k)


def _right_mult(fld, K: np.ndarray, B: Matrix, r: int, c: int) -> np.ndarray:
    """Columns ``vec(Y)`` of ``K`` mapped to ``vec(Y B)``."""
    k = K.shape[1]
    arr = K.reshape(r, c, k).transpose(0, 2, 1).reshape(r * k, c)
    out = fld.matmul(arr, B.array)
    c2 = B.cols
    return out.reshape(r, k, c2).transpose(0, 2, 1).reshape(r * c2, k)


def solve_graded(src: Complex, tgt: Complex, degree: int, pre=(), post=(), comm: GradedMap | None = None,
                 homogeneous: bool = False) -> GradedSolution:
    """Find ``X: src -> tgt`` of the given degree with

    * ``X V = W`` for every ``(V, W)`` in ``pre``,
    * ``U X = W`` for every ``(U, W)`` in ``post``,
    * ``d X - (-1)^n X d = comm`` (zero when ``comm`` is None).

    Degreewise constraints are solved first; the chain condition is then
    imposed on the remaining free parameters.
    """
    fld = src.field
    n = degree
    sign = -1 if n % 2 else 1
    active = [i for i in src.degrees if tgt.dim(i + n)]
    shape = {i: (tgt.dim(i + n), src.dim(i)) for i in active}
    none = GradedSolution(None, [])

    rows: dict[int, list[Matrix]] = {i: [] for i in active}
    rhs: dict[int, list[Matrix]] = {i: [] for i in active}
    for V, W in pre:
        for j in V.src.degrees:
            i = j + V.degree
            if i in shape:
                r, _ = shape[i]
                rows[i].append(kron(Matrix.identity(fld, r), V.block(j).T))
                rhs[i].append(Matrix(fld, _vec(W.block(j))))
            elif not W.block(j).is_zero():
                return none
    for U, W in post:
        for i in src.degrees:
            if i in shape:
                _, c = shape[i]
                rows[i].append(kron(U.block(i + n), Matrix.identity(fld, c)))
                rhs[i].append(Matrix(fld, _vec(W.block(i))))
            elif not W.block(i).is_zero():
                return none

    x0, K = {}, {}
    for i in active:
        r, c = shape[i]
        if rows[i]:
            A, b = vstack(*rows[i]), vstack(*rhs[i])
            x = solve(A, b)
            if x is None:
                return none
            x0[i], K[i] = x.array, kernel_basis(A).array
        else:
            x0[i] = fld.zeros((r * c, 1))
            K[i] = Matrix.identity(fld, r * c).array

    offs, total = {}, 0
    for i in active:
        offs[i] = total
        total += K[i].shape[1]

    eq_blocks, eq_rhs = [], []
    for i in src.degrees:
        rr = tgt.dim(i + n + 1)
        c = src.dim(i)
        if not rr or not c:
            continue
        m = rr * c
        row = fld.zeros((m, total))
        const = fld.zeros((m, 1))
        if i in shape:
            r, _ = shape[i]
            dT = tgt.d(i + n)
            row[:, offs[i] : offs[i] + K[i].shape[1]] += _left_mult(fld, dT, K[i], r, c)
            const = const + _left_mult(fld, dT, x0[i], r, c)
        if i + 1 in shape:
            r1, c1 = shape[i + 1]
            dS = src.d(i)
            term = _right_mult(fld, K[i + 1], dS, r1, c1)
            row[:, offs[i + 1] : offs[i + 1] + K[i + 1].shape[1]] -= sign * term
            const = const - sign * _right_mult(fld, x0[i + 1], dS, r1, c1)
        target = _vec(comm.block(i)) if comm is not None else fld.zeros((m, 1))
        eq_blocks.append(fld.normalize(row))
        eq_rhs.append(fld.normalize(target - const))

    if eq_blocks:
        A = Matrix(fld, np.concatenate(eq_blocks, axis=0))
        b = Matrix(fld, np.concatenate(eq_rhs, axis=0))
        t = solve(A, b)
        if t is None:
            return none
        kern = kernel_basis(A) if homogeneous else None
    else:
        t = Matrix.zeros(fld, total, 1)
        kern = Matrix.identity(fld, total) if homogeneous else None

    def assemble(tvec: np.ndarray, base: bool) -> GradedMap:
        blocks = {}
        for i in active:
            r, c = shape[i]
            ki = K[i].shape[1]
            v = fld.matmul(K[i], tvec[offs[i] : offs[i] + ki, :])
            if base:
                v = fld.normalize(v + x0[i])
            blocks[i] = Matrix(fld, v.reshape(r, c))
        return GradedMap(src, tgt, n, blocks)

    part = assemble(t.array, True)
    homs = [assemble(kern.array[:, j : j + 1], False) for j in range(kern.cols)] if homogeneous else []
    return GradedSolution(part, homs)


# ----------------------------------------------------------------------------
# factorizations in coCh


class _Tower:
    """Complex ``P = C + A_0 + A_1 + ...`` in block coordinates with a map ``g: P -> D``."""

    def __init__(self, alpha: GradedMap):
        C, D = alpha.src, alpha.tgt
        self.field = C.field
        self.C, self.D = C, D
        self.dims = {i: C.dim(i) for i in C.degrees}
        self.d = {i: C.d(i) for i in C.degrees}
        self.g = {i: alpha.block(i) for i in C.degrees}
        self.stages: list[dict[int, tuple[int, int]]] = []

    def dim(self, i):
        return self.dims.get(i, 0)

    def complex(self) -> Complex:
        fld = self.field
        degs = [i for i, n in self.dims.items() if n]
        diff = {}
        for i in degs:
            m = self.d.get(i)
            if m is not None and m.shape == (self.dim(i + 1), self.dim(i)):
                diff[i] = m
        return Complex(fld, self.dims, diff)

    def g_map(self, P: Complex) -> GradedMap:
        return GradedMap(P, self.D, 0, {i: self.gblock(i) for i in P.degrees if self.D.dim(i)})

    def gblock(self, i):
        m = self.g.get(i)
        return m if m is not None else Matrix.zeros(self.field, self.D.dim(i), self.dim(i))

    def dblock(self, i):
        m = self.d.get(i)
        if m is not None and m.shape == (self.dim(i + 1), self.dim(i)):
            return m
        return Matrix.zeros(self.field, self.dim(i + 1), self.dim(i))

    def add_stage(self, cells: dict[int, tuple[Matrix, Matrix]]):
        """``cells[i] = (differential columns in old P^{i+1}, values in D^i)``."""
        fld = self.field
        cells = {i: v for i, v in cells.items() if v[0].cols}
        if not cells:
            return False
        old = dict(self.dims)
        k = {i: v[0].cols for i, v in cells.items()}
        touched = set(old) | set(k) | {i - 1 for i in k}
        new_d = {}
        for i in touched:
            oi, oi1 = old.get(i, 0), old.get(i + 1, 0)
            ki, ki1 = k.get(i, 0), k.get(i + 1, 0)
            base = self.d.get(i)
            if base is None or base.shape != (oi1, oi):
                base = Matrix.zeros(fld, oi1, oi)
            right = cells[i][0] if i in cells else Matrix.zeros(fld, oi1, 0)
            top = hstack(base, right)
            new_d[i] = vstack(top, Matrix.zeros(fld, ki1, oi + ki))
        self.d = new_d
        for i, (_, vals) in cells.items():
            self.g[i] = hstack(self.gblock(i), vals)
        self.stages.append({i: (old.get(i, 0), k[i]) for i in k})
        for i in k:
            self.dims[i] = old.get(i, 0) + k[i]
        return True

    def extension(self, P: Complex) -> SemifreeExtension:
        fld = self.field
        C = self.C
        f = GradedMap(C, P, 0, {i: Matrix.identity(fld, P.dim(i))[:, : C.dim(i)] for i in C.degrees})
        stages = []
        for st in self.stages:
            stages.append({i: Matrix.identity(fld, P.dim(i))[:, s : s + k] for i, (s, k) in st.items()})
        return SemifreeExtension(f, tuple(stages))


def default_stage_cap(C: Complex, D: Complex) -> int:
    return 2 * len(_window(C, D)) + 6


def factor_coch_c_fw(alpha: GradedMap, max_stages: int | None = None) -> tuple[SemifreeExtension, GradedMap]:
    """Factor ``alpha = g f`` with ``f`` semifree and ``g`` a surjective quasi-isomorphism.

    Stage 1 adds one closed cell per basis cocycle of ``D``; stage 2 adds one
    cell per basis vector of ``D`` whose differential hits a preimage of its
    coboundary; later stages kill the cocycles of ``P`` mapping to
    coboundaries of ``D`` that are not yet coboundaries in ``P``.
    """
    C, D = alpha.src, alpha.tgt
    fld = C.field
    cap = default_stage_cap(C, D) if max_stages is None else max_stages
    tw = _Tower(alpha)

    # stage 1: surjective on cocycles
    cells = {}
    for i in D.degrees:
        Z = kernel_basis(D.d(i))
        cells[i] = (Matrix.zeros(fld, tw.dim(i + 1), Z.cols), Z)
    tw.add_stage(cells)

    # stage 2: surjective
    cells = {}
    for i in D.degrees:
        k = D.dim(i)
        if not tw.dim(i + 1):
            if not D.d(i).is_zero():
                raise InvariantViolation("stage 2: coboundary has no cocycle preimage")
            cells[i] = (Matrix.zeros(fld, 0, k), Matrix.identity(fld, k))
            continue
        ZP = kernel_basis(tw.dblock(i + 1))
        T = solve(tw.gblock(i + 1) @ ZP, D.d(i))
        if T is None:
            raise InvariantViolation("stage 2: coboundary has no cocycle preimage")
        cells[i] = (ZP @ T, Matrix.identity(fld, k))
    # cells in the top degree need an explicit zero-row differential
    tw.add_stage(cells)

    # later stages: injective in cohomology
    done = False
    while len(tw.stages) < cap:
        cells = {}
        degs = [i for i, n in tw.dims.items() if n]
        for j in degs:
            dj = tw.dblock(j)
            ZP = kernel_basis(dj)
            gj = tw.gblock(j)
            W = cokernel_projection(D.d(j - 1)) if D.dim(j) else Matrix.zeros(fld, 0, 0)
            S = ZP @ kernel_basis(W @ gj @ ZP) if W.rows else ZP
            Bp = image_basis(tw.dblock(j - 1))
            reps = complement_basis(Bp, S)
            if not reps.cols:
                continue
            c = solve(D.d(j - 1), gj @ reps)
            if c is None:
                raise InvariantViolation("kernel class does not map to a coboundary")
            cells[j - 1] = (reps, c)
        if not tw.add_stage(cells):
            done = True
            break
    P = tw.complex()
    ext = tw.extension(P)
    g = tw.g_map(P)
    if not done:
        raise FactorizationError(f"semifree tower did not stabilize within {cap} stages", partial=(ext, g))
    _verify_factorization(alpha, ext, g, trivial_left=False)
    return ext, g


def factor_coch_cw_f(alpha: GradedMap) -> tuple[DiskExtension, GradedMap]:
    """Factor ``alpha = q j`` with ``Q = C + disks``: one disk per basis vector of each ``D^i``.

    ``j`` is the inclusion (a trivial cofibration) and ``q`` is ``alpha`` on
    ``C``, sends the bottom of each disk to its basis vector and the top to
    that vector's coboundary.
    """
    C, D = alpha.src, alpha.tgt
    fld = C.field
    win = _window(C, D)
    degs = range(win.start, win.stop + 1) if len(win) else range(0)
    dims, diff, q, bottoms, jb = {}, {}, {}, {}, {}
    sizes = {i: (C.dim(i), D.dim(i), D.dim(i - 1)) for i in degs}
    for i in degs:
        dims[i] = sum(sizes[i])
    for i in degs:
        c0, x0, y0 = sizes[i]
        c1, x1, y1 = sizes.get(i + 1, (0, 0, 0))
        Z = lambda r, c: Matrix.zeros(fld, r, c)  # noqa: E731
        diff[i] = vstack(
            hstack(C.d(i), Z(c1, x0), Z(c1, y0)),
            Z(x1, c0 + x0 + y0),
            hstack(Z(y1, c0), Matrix.identity(fld, x0), Z(y1, y0)),
        )
        q[i] = hstack(alpha.block(i), Matrix.identity(fld, x0), D.d(i - 1))
        I = Matrix.identity(fld, dims[i])
        bottoms[i] = I[:, c0 : c0 + x0]
        jb[i] = I[:, :c0]
    Q = Complex(fld, dims, diff)
    ext = DiskExtension(GradedMap(C, Q, 0, jb), {i: b for i, b in bottoms.items() if b.cols})
    qmap = GradedMap(Q, D, 0, {i: q[i] for i in degs if D.dim(i) and Q.dim(i)})
    _verify_factorization(alpha, ext, qmap, trivial_left=True)
    return ext, qmap


def _verify_factorization(alpha, ext, g, trivial_left: bool):
    rep = ext.check()
    if not rep.ok:
        raise InvariantViolation(f"factorization left leg: {rep.failures}")
    if g @ ext.f != alpha:
        raise InvariantViolation("factorization does not compose to the input")
    if not is_chain_map(g) or not is_fibration(g):
        raise InvariantViolation("factorization right leg is not a fibration")
    if trivial_left:
        if not is_quasi_iso(ext.f):
            raise InvariantViolation("factorization left leg is not a quasi-isomorphism")
    elif not is_quasi_iso(g):
        raise InvariantViolation("factorization right leg is not a quasi-isomorphism")


def factor_coch(alpha: GradedMap, flavor: str = "c-fw"):
    """Dispatch on flavor: ``"c-fw"`` or ``"cw-f"``; returns ``(cells, right leg)``."""
    if flavor == "c-fw":
        return factor_coch_c_fw(alpha)
    if flavor == "cw-f":
        return factor_coch_cw_f(alpha)
    raise ValueError(f"unknown flavor {flavor!r}")


def semifree_from_injective(g: GradedMap) -> SemifreeExtension:
    """Cells for a degreewise injective ``g``: complements of the image, top degree first."""
    if not is_cofibration(g):
        raise PreconditionError("map is not degreewise injective")
    D = g.tgt
    fld = D.field
    comps = {}
    for i in D.degrees:
        comps[i] = complement_basis(image_basis(g.block(i)), Matrix.identity(fld, D.dim(i)))
    stages = tuple({i: comps[i]} for i in reversed(D.degrees))
    return SemifreeExtension(g, stages)


@dataclass(frozen=True, eq=False)
class RetractPresentation:
    """``g`` as a retract of the semifree extension ``f``."""

    g: GradedMap
    f: SemifreeExtension
    section: GradedMap
    retraction: GradedMap

    def check(self) -> Report:
        rep = Report("retract presentation")
        rep.check(is_chain_map(self.section), "section chain map")
        rep.check(is_chain_map(self.retraction), "retraction chain map")
        rep.check(self.retraction @ self.section == identity(self.g.tgt), "retraction section = Id")
        rep.check(self.section @ self.g == self.f.f, "section g = f")
        rep.check(self.retraction @ self.f.f == self.g, "retraction f = g")
        rep.extend(self.f.check(), "f: ")
        return rep


def exhibit_retract(g: GradedMap) -> RetractPresentation:
    """Present a cofibration as a retract of a semifree extension."""
    if not is_chain_map(g) or not is_cofibration(g):
        raise PreconditionError("exhibit_retract needs a degreewise injective chain map")
    ext, q = factor_coch_c_fw(g)
    prob = LiftingProblem(g, ext.f, q, identity(g.tgt))
    section = lift_semifree(prob, semifree_from_injective(g))
    pres = RetractPresentation(g, ext, section, q)
    rep = pres.check()
    if not rep.ok:
        raise InvariantViolation(f"retract presentation: {rep.failures}")
    return pres
