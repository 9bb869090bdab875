"""Seeded random generators and the fuzzing campaigns.

Generated objects are valid by construction: complexes are sums of spheres
and disks conjugated by a random automorphism, contractions are ``M (+)
disks`` conjugated the same way, and morphisms are block maps in those
frames.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

import numpy as np

from .complex import (
    Complex,
    GradedMap,
    check_path_exact_sequence,
    direct_sum,
    direct_sum_maps,
    graded_commutator,
    identity,
    induced_map,
    is_chain_map,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
    path_object,
    quotient,
    Splitting,
    sdr_as_path_map,
    splitting,
    subcomplex,
    validate_complex,
    zero_map,
)
from .errors import ContrModelError, FactorizationError
from .linalg import GF, Field, Matrix, hstack, image_basis, inverse, kernel_basis
from .perturb import nullhomotopy_witness, trick2, trick2_functoriality_check, trick2_proof_identities, trick3
from .report import Report
from .retract import (
    SDR,
    AcyclicRetraction,
    Contraction,
    Morphism,
    check_ar_morphism,
    check_contr_morphism,
    check_contraction,
    check_sdr,
    induces_zero,
    trick1,
    trick1_defect,
)

# ----------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    field: Field = field(default_factory=lambda: GF(5))
    support: tuple[int, int] = (-3, 3)
    max_dim: int = 6
    density: Fraction = Fraction(1, 2)

    def __post_init__(self):
        lo, hi = self.support
        if lo > hi:
            raise ValueError(f"empty support {self.support}")
        if self.max_dim < 0:
            raise ValueError("max_dim must be nonnegative")
        if not 0 <= self.density <= 1:
            raise ValueError("density must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "field": self.field.to_json(),
            "support": list(self.support),
            "max_dim": self.max_dim,
            "density": str(self.density),
        }


def _sparse(field: Field, rng, rows: int, cols: int, density) -> Matrix:
    a = field.random(rng, (rows, cols))
    if density < 1:
        mask = rng.random((rows, cols)) < float(density)
        a = np.where(mask, a, field.zeros((rows, cols)))
    return Matrix(field, a)


def _nonzero_scalar(field: Field, rng):
    while True:
        x = field.random(rng, (1, 1))[0, 0]
        if x != 0:
            return x


def random_automorphism(field: Field, n: int, rng, density=Fraction(1, 2)) -> tuple[Matrix, Matrix]:
    """``P L U`` with unit lower ``L``, invertible upper ``U``; returns it and its inverse.

    Over Q the factors are integral with diagonal entries +-1, which keeps
    the inverse integral and the entries of conjugated data small.  The
    factors are built and inverted on plain int64 arrays (reduced mod p over
    F_p) and only converted to field scalars at the end.
    """
    p = None if field.kind == "q" else field.p
    mask = rng.random((2, n, n)) < float(density)
    if p is None:
        raw = rng.integers(-1, 2, size=(2, n, n))
        diag = rng.choice(np.array([-1, 1]), size=n)
    else:
        raw = rng.integers(0, p, size=(2, n, n))
        diag = rng.integers(1, p, size=n)
    raw = raw * mask
    L = np.tril(raw[0], -1) + np.eye(n, dtype=np.int64)
    U = np.triu(raw[1], 1) + np.diag(diag).astype(np.int64)
    P = np.eye(n, dtype=np.int64)[rng.permutation(n)]
    Linv = _triangular_inverse(L, p, lower=True)
    Uinv = _triangular_inverse(U, p, lower=False)
    A, Ainv = P @ L @ U, Uinv @ Linv @ P.T
    if p is not None:
        A, Ainv = A % p, Ainv % p
    return Matrix(field, A), Matrix(field, Ainv)


def _triangular_inverse(T: np.ndarray, p, lower: bool) -> np.ndarray:
    """Row-by-row substitution on an integer triangular matrix.

    ``p`` is the modulus, or None for an integral inverse (diagonal +-1).
    """
    n = T.shape[0]
    X = np.zeros((n, n), dtype=np.int64)
    order = range(n) if lower else range(n - 1, -1, -1)
    for i in order:
        row = np.zeros(n, dtype=np.int64)
        row[i] = 1
        known = slice(0, i) if lower else slice(i + 1, n)
        row -= T[i, known] @ X[known, :]
        inv = int(T[i, i]) if p is None else pow(int(T[i, i]), -1, p)
        row *= inv
        X[i] = row if p is None else row % p
    return X


def random_graded_map(X: Complex, Y: Complex, degree: int, rng, density=Fraction(1, 2)) -> GradedMap:
    blocks = {i: _sparse(X.field, rng, Y.dim(i + degree), X.dim(i), density) for i in X.degrees}
    return GradedMap(X, Y, degree, blocks)


def random_chain_map(X: Complex, Y: Complex, rng, density=Fraction(1, 2)) -> GradedMap:
    """Spheres go to random cocycles, bottoms to random vectors, tops are then forced."""
    fld = X.field
    sp = splitting(X)
    bottom_vals = {}
    for i in X.degrees:
        bottom_vals[i] = _sparse(fld, rng, Y.dim(i), sp.bottoms[i].cols, density)
    blocks = {}
    for i in X.degrees:
        if not Y.dim(i):
            continue
        Z = kernel_basis(Y.d(i))
        ns = sp.spheres[i].cols
        sph = Z @ _sparse(fld, rng, Z.cols, ns, density)
        prev = bottom_vals.get(i - 1)
        tops = Y.d(i - 1) @ prev if prev is not None else Matrix.zeros(fld, Y.dim(i), 0)
        vals = hstack(sph, bottom_vals[i], tops)
        blocks[i] = vals @ inverse(sp.basis(i))
    return GradedMap(X, Y, 0, blocks)


# ----------------------------------------------------------------------------
# structured complexes


@dataclass(frozen=True)
class Frame:
    """Complex ``X = phi(S)`` with ``S`` the structured sum of spheres and disks.

    Degree ``i`` of ``S`` has basis ``[spheres | bottoms | tops]`` where the
    tops of degree ``i`` are the differentials of the bottoms of degree ``i-1``.
    """

    spheres: dict[int, int]
    disks: dict[int, int]
    structured: Complex
    complex: Complex
    phi: GradedMap
    phi_inv: GradedMap

    def offsets(self, i: int) -> tuple[int, int, int]:
        return self.spheres.get(i, 0), self.disks.get(i, 0), self.disks.get(i - 1, 0)


def _structured(field: Field, spheres: dict[int, int], disks: dict[int, int]) -> Complex:
    degs = set(spheres) | set(disks) | {i + 1 for i in disks}
    dims = {i: spheres.get(i, 0) + disks.get(i, 0) + disks.get(i - 1, 0) for i in degs}
    diff = {}
    for i in degs:
        s0, b0 = spheres.get(i, 0), disks.get(i, 0)
        s1, b1, t1 = spheres.get(i + 1, 0), disks.get(i + 1, 0), b0
        if not dims.get(i + 1):
            continue
        m = np.zeros((s1 + b1 + t1, dims[i]), dtype=object)
        m[...] = 0
        for k in range(b0):
            m[s1 + b1 + k, s0 + k] = 1
        diff[i] = Matrix(field, m)
    S = Complex(field, dims, diff)
    sph, bot = {}, {}
    for i in S.degrees:
        I = Matrix.identity(field, S.dim(i))
        s0, b0 = spheres.get(i, 0), disks.get(i, 0)
        sph[i], bot[i] = I[:, :s0], I[:, s0 : s0 + b0]
    _remember_splitting(S, sph, bot)
    return S


def _remember_splitting(X: Complex, spheres: dict, bottoms: dict):
    """Record a known splitting so :func:`splitting` does not recompute one."""
    X._cache["split"] = Splitting(X, spheres, bottoms)


def _transport_splitting(S: Complex, X: Complex, A: dict):
    sp = S._cache.get("split")
    if sp is not None:
        _remember_splitting(X, {i: A[i] @ m for i, m in sp.spheres.items()}, {i: A[i] @ m for i, m in sp.bottoms.items()})


def _sum_splitting(ds):
    """Splitting of a direct sum from splittings of the summands."""
    S = ds.obj
    parts = [splitting(inc.src) for inc in ds.inclusions]
    sph, bot = {}, {}
    for i in S.degrees:
        sph[i] = hstack(*(inc.block(i) @ sp.spheres.get(i, Matrix.zeros(S.field, inc.src.dim(i), 0))
                          for inc, sp in zip(ds.inclusions, parts)))
        bot[i] = hstack(*(inc.block(i) @ sp.bottoms.get(i, Matrix.zeros(S.field, inc.src.dim(i), 0))
                          for inc, sp in zip(ds.inclusions, parts)))
    _remember_splitting(S, sph, bot)


def _conjugate(S: Complex, rng, density) -> tuple[Complex, GradedMap, GradedMap]:
    fld = S.field
    A, Ainv = {}, {}
    for i in S.degrees:
        A[i], Ainv[i] = random_automorphism(fld, S.dim(i), rng, density)
    diff = {i: A[i + 1] @ S.d(i) @ Ainv[i] for i in S.degrees if S.dim(i + 1)}
    X = Complex(fld, S.dims, diff)
    _transport_splitting(S, X, A)
    return X, GradedMap(S, X, 0, A), GradedMap(X, S, 0, Ainv)


def _shape(cfg: GenConfig, rng, cap: dict[int, int] | None = None, spheres=True, disks=True):
    lo, hi = cfg.support
    sph, dsk = {}, {}
    prev = 0
    for i in range(lo, hi + 1):
        room = cfg.max_dim - prev if cap is None else min(cfg.max_dim, cap.get(i, cfg.max_dim)) - prev
        room = max(room, 0)
        b = int(rng.integers(0, room + 1)) if disks and i < hi else 0
        if b and cap is not None and cap.get(i + 1, cfg.max_dim) < b:
            b = cap.get(i + 1, cfg.max_dim)
        s = int(rng.integers(0, room - b + 1)) if spheres else 0
        if s:
            sph[i] = s
        if b:
            dsk[i] = b
        prev = b
    return sph, dsk


def _frame(cfg: GenConfig, rng, spheres: dict[int, int], disks: dict[int, int]) -> Frame:
    S = _structured(cfg.field, spheres, disks)
    X, phi, phi_inv = _conjugate(S, rng, cfg.density)
    return Frame(spheres, disks, S, X, phi, phi_inv)


def random_frame(cfg: GenConfig, rng=None, spheres=True, disks=True) -> Frame:
    rng = cfg.rng() if rng is None else rng
    sph, dsk = _shape(cfg, rng, spheres=spheres, disks=disks)
    return _frame(cfg, rng, sph, dsk)


def generate_random_complex(cfg: GenConfig, rng=None) -> Complex:
    return random_frame(cfg, rng).complex


# ----------------------------------------------------------------------------
# contractions


@dataclass(frozen=True)
class ContractionFrame:
    """``N = phi(M (+) E)`` with ``E`` a sum of disks; ``h`` sends each top to minus its bottom."""

    contraction: Contraction
    M: Frame
    disks: dict[int, int]
    E: Complex
    sum_inc: tuple[GradedMap, GradedMap]
    sum_proj: tuple[GradedMap, GradedMap]
    phi: GradedMap
    phi_inv: GradedMap


def _disk_homotopy(E: Complex, disks: dict[int, int]) -> GradedMap:
    fld = E.field
    blocks = {}
    for i in E.degrees:
        b_prev = disks.get(i - 1, 0)
        if not b_prev:
            continue
        m = fld.zeros((E.dim(i - 1), E.dim(i)))
        b_here = disks.get(i, 0)
        for k in range(b_prev):
            m[k, b_here + k] = fld.coerce(-1)
        blocks[i] = Matrix(fld, m)
    return GradedMap(E, E, -1, blocks)


def contraction_frame(cfg: GenConfig, rng=None) -> ContractionFrame:
    rng = cfg.rng() if rng is None else rng
    Mf = random_frame(cfg, rng)
    caps = {i: cfg.max_dim - Mf.complex.dim(i) for i in range(cfg.support[0], cfg.support[1] + 1)}
    _, dsk = _shape(cfg, rng, cap=caps, spheres=False)
    E = _structured(cfg.field, {}, dsk)
    ds = direct_sum(Mf.complex, E)
    _sum_splitting(ds)
    S = ds.obj
    N, phi, phi_inv = _conjugate(S, rng, cfg.density)
    hE = _disk_homotopy(E, dsk)
    inc_M, inc_E = ds.inclusions
    pr_M, pr_E = ds.projections
    relabel = lambda m, s, t: GradedMap(s, t, m.degree, m.blocks)  # noqa: E731
    iota = relabel(phi @ inc_M, Mf.complex, N)
    pi = relabel(pr_M @ phi_inv, N, Mf.complex)
    h = relabel(phi @ inc_E @ hE @ pr_E @ phi_inv, N, N)
    return ContractionFrame(Contraction(iota, pi, h), Mf, dsk, E, (inc_M, inc_E), (pr_M, pr_E), phi, phi_inv)


def generate_random_contraction(cfg: GenConfig, rng=None) -> Contraction:
    return contraction_frame(cfg, rng).contraction


def perturb_homotopy(x: SDR, xi: GradedMap) -> SDR:
    """``h + d xi - xi d`` keeps C1 for any ``xi`` of degree -2."""
    d = x.N.d_map
    return SDR(x.iota, x.pi, x.h + d @ xi - xi @ d)


def generate_random_sdr(cfg: GenConfig, rng=None) -> SDR:
    rng = cfg.rng() if rng is None else rng
    c = generate_random_contraction(cfg, rng)
    xi = random_graded_map(c.N, c.N, -2, rng, cfg.density)
    return perturb_homotopy(c, xi)


def _disk_map(src: dict[int, int], tgt: dict[int, int], Es: Complex, Et: Complex, rng, density, contr: bool) -> GradedMap:
    """Chain map between disk sums; with ``contr`` it commutes with the disk homotopies."""
    fld = Es.field
    if not contr:
        return random_chain_map(Es, Et, rng, density)
    C = {i: _sparse(fld, rng, tgt.get(i, 0), n, density) for i, n in src.items()}
    blocks = {}
    for i in Es.degrees:
        if not Et.dim(i):
            continue
        m = fld.zeros((Et.dim(i), Es.dim(i)))
        bs, bt = src.get(i, 0), tgt.get(i, 0)
        if i in C and bt:
            m[:bt, :bs] = C[i].array
        ps, pt = src.get(i - 1, 0), tgt.get(i - 1, 0)
        if i - 1 in C and pt:
            m[bt : bt + pt, bs : bs + ps] = C[i - 1].array
        blocks[i] = Matrix(fld, m)
    return GradedMap(Es, Et, 0, blocks)


def random_morphism(a: ContractionFrame, b: ContractionFrame, rng, kind: str = "contr", density=Fraction(1, 2),
                    base: GradedMap | None = None) -> Morphism:
    """Block morphism ``base (+) e`` in the frames, transported to ``a.N -> b.N``.

    ``kind="ar"`` gives an AR morphism, ``kind="contr"`` a contraction morphism.
    """
    Ma, Mb = a.contraction.M, b.contraction.M
    if base is None:
        base = random_chain_map(Ma, Mb, rng, density)
    e = _disk_map(a.disks, b.disks, a.E, b.E, rng, density, contr=(kind == "contr"))
    inner = b.sum_inc[0] @ base @ a.sum_proj[0] + b.sum_inc[1] @ e @ a.sum_proj[1]
    f = b.phi @ inner @ a.phi_inv
    f = GradedMap(a.contraction.N, b.contraction.N, 0, f.blocks)
    return Morphism(a.contraction, b.contraction, f)


# ----------------------------------------------------------------------------
# surjections and injections


@dataclass(frozen=True)
class SplitSurjection:
    """Surjective quasi-isomorphism ``p: X -> Y`` with a chain section and its acyclic kernel."""

    p: GradedMap
    section: GradedMap
    kernel_inc: GradedMap


def generate_surjective_qis(cfg: GenConfig, rng=None, target: Complex | None = None) -> SplitSurjection:
    """``X = Y (+) disks``, ``p`` the projection, conjugated on both sides."""
    rng = cfg.rng() if rng is None else rng
    Y = generate_random_complex(cfg, rng) if target is None else target
    _, dsk = _shape(cfg, rng, spheres=False)
    E = _structured(cfg.field, {}, dsk)
    ds = direct_sum(Y, E)
    _sum_splitting(ds)
    X, phi, phi_inv = _conjugate(ds.obj, rng, cfg.density)
    relabel = lambda m, s, t: GradedMap(s, t, m.degree, m.blocks)  # noqa: E731
    p = relabel(ds.projections[0] @ phi_inv, X, Y)
    s = relabel(phi @ ds.inclusions[0], Y, X)
    k = relabel(phi @ ds.inclusions[1], E, X)
    return SplitSurjection(p, s, k)


def random_subcomplex_basis(X: Complex, rng, density=Fraction(1, 2)) -> dict[int, Matrix]:
    """Span of random vectors together with their differentials."""
    fld = X.field
    vecs = {i: _sparse(fld, rng, X.dim(i), int(rng.integers(0, X.dim(i) + 1)), density) for i in X.degrees}
    basis = {}
    for i in X.degrees:
        parts = [vecs[i]]
        if i - 1 in vecs:
            parts.append(X.d(i - 1) @ vecs[i - 1])
        basis[i] = image_basis(hstack(*parts))
    return basis


def generate_surjection(cfg: GenConfig, rng=None) -> GradedMap:
    """Quotient map by a random subcomplex (degreewise surjective, generally not a quasi-iso)."""
    rng = cfg.rng() if rng is None else rng
    X = generate_random_complex(cfg, rng)
    return quotient(X, random_subcomplex_basis(X, rng, cfg.density)).projection


def generate_injection(cfg: GenConfig, rng=None) -> GradedMap:
    """Inclusion of a random subcomplex of a random complex."""
    rng = cfg.rng() if rng is None else rng
    D = generate_random_complex(cfg, rng)
    sub = subcomplex(D, random_subcomplex_basis(D, rng, cfg.density))
    return sub.inclusion


# ----------------------------------------------------------------------------
# campaigns


@dataclass
class FuzzFailure:
    seed: int
    input: dict
    identity: str

    def to_json(self) -> dict:
        return {"seed": self.seed, "input": self.input, "identity": self.identity}


@dataclass
class FuzzReport:
    campaign: str
    trials: int
    failures: list[FuzzFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "campaign": self.campaign,
            "trials": self.trials,
            "failures": [f.to_json() for f in sorted(self.failures, key=lambda f: f.seed)],
        }


class _Trial:
    """Collects the first violated identity of one trial plus its inputs."""

    def __init__(self, cfg: GenConfig):
        self.cfg = cfg
        self.rng = cfg.rng()
        self.inputs: dict = {}
        self.failed: str | None = None

    def record(self, name: str, obj):
        self.inputs[name] = obj

    def inputs_json(self) -> dict:
        from . import jsonio

        out = {}
        for name, obj in self.inputs.items():
            if isinstance(obj, Complex):
                out[name] = jsonio.complex_to_json(obj)
            elif isinstance(obj, GradedMap):
                out[name] = jsonio.map_to_json(obj, standalone=True)
            elif isinstance(obj, Morphism):
                out[name] = jsonio.morphism_to_json(obj)
            else:
                out[name] = jsonio.diagram_to_json(obj)
        return out

    def check(self, cond: bool, identity: str):
        if not cond and self.failed is None:
            self.failed = identity

    def report(self, rep: Report, prefix: str = ""):
        if rep.failures and self.failed is None:
            self.failed = prefix + rep.failures[0]


def _trick3_sign_flipped(m: Morphism) -> Morphism:
    f, h, k = m.f, m.src.h, m.tgt.h
    return Morphism(m.src, m.tgt, f + m.tgt.N.d_map @ k @ f @ h @ m.src.N.d_map)


def _camp_tricks(t: _Trial, mutation):
    rng, cfg = t.rng, t.cfg
    fx, fy, fz = (contraction_frame(cfg, rng) for _ in range(3))
    X, Y, Z = fx.contraction, fy.contraction, fz.contraction
    for name, c in (("X", X), ("Y", Y), ("Z", Z)):
        t.record(name, c)
        t.report(check_contraction(c, check_qis=False), f"generator {name}: ")
    g0 = random_chain_map(X.N, Y.N, rng, cfg.density)
    t.record("g0", g0)
    # first trick
    m = trick1(g0, X, Y)
    t.check(check_ar_morphism(m), "trick1 AR morphism")
    t.check(induces_zero(g0 - m.f), "trick1 defect induces zero")
    t.check(g0 - m.f == trick1_defect(g0, X, Y), "trick1 defect formula")
    t.check(trick1(m.f, X, Y).f == m.f, "trick1 idempotent")
    a = random_morphism(fx, fy, rng, "ar", cfg.density)
    t.check(trick1(a.f, X, Y).f == a.f, "trick1 fixed point")
    b = random_morphism(fy, fz, rng, "ar", cfg.density)
    c_yz = random_chain_map(Y.N, Z.N, rng, cfg.density)
    t.check(trick1(c_yz @ a.f, X, Z).f == trick1(c_yz, Y, Z).f @ a.f, "trick1 functoriality (fg)^ = f^g")
    t.check(trick1(b.f @ g0, X, Z).f == b.f @ m.f, "trick1 functoriality (gf)^ = gf^")
    # second trick
    sigma = random_graded_map(Y.N, X.N, -2, rng, cfg.density)
    cm = random_morphism(fx, fy, rng, "contr", cfg.density)
    Xs = perturb_homotopy(X, sigma @ cm.f)
    Ys = perturb_homotopy(Y, cm.f @ sigma)
    t.report(check_sdr(Xs, check_qis=False), "generator SDR: ")
    cX = trick2(Xs)
    t.report(check_contraction(cX, check_qis=False), "trick2 ")
    t.check(trick2(X).h == X.h, "trick2 fixed point")
    t.check(trick2(cX).h == cX.h, "trick2 idempotent")
    for name, ok in trick2_proof_identities(Xs).items():
        t.check(ok, f"trick2 proof identity {name}")
    t.check(trick2_functoriality_check(Morphism(Xs, Ys, cm.f)), "trick2 functoriality")
    # third trick
    t3 = _trick3_sign_flipped if mutation == "trick3-sign" else trick3
    a3 = t3(a)
    t.check(check_contr_morphism(a3), "trick3 Contr morphism")
    t.check(check_ar_morphism(a3), "trick3 AR morphism")
    t.check(check_contr_morphism(t3(m)), "trick3 Contr morphism after trick1")
    t.check(t3(cm).f == cm.f, "trick3 fixed point")
    ba = Morphism(X, Z, b.f @ a.f)
    t.check(t3(ba).f == t3(b).f @ a3.f, "trick3 composition")
    try:
        nullhomotopy_witness(a, a3)
    except ContrModelError:
        t.check(False, "trick3 null-homotopy witness")


def _camp_contractions(t: _Trial, mutation):
    cf = contraction_frame(t.cfg, t.rng)
    c = cf.contraction
    if mutation == "drop-side-condition":
        xi = random_graded_map(c.N, c.N, -2, t.rng, t.cfg.density)
        c = perturb_homotopy(c, xi)
    t.record("x", c)
    t.report(check_contraction(c))
    h, d = c.h, c.N.d_map
    t.check(h @ d @ h == -h, "hdh = -h")


def _camp_path(t: _Trial, mutation):
    rng, cfg = t.rng, t.cfg
    B = generate_random_complex(cfg, rng)
    t.record("B", B)
    P = path_object(B)
    t.report(validate_complex(P.obj), "path ")
    t.check(is_chain_map(P.incl), "incl chain map")
    t.check(is_quasi_iso(P.incl), "incl quasi-iso")
    t.check(is_chain_map(P.proj) and is_fibration(P.proj), "proj surjective")
    t.check(P.proj @ P.incl == P.square.into(identity(B), identity(B)), "proj incl = diagonal")
    c = generate_random_contraction(cfg, rng)
    t.check(is_chain_map(sdr_as_path_map(c)), "SDR as path map")
    q = generate_surjection(cfg, rng)
    t.record("q", q)
    t.report(check_path_exact_sequence(q), "path sequence ")


def _camp_semifree(t: _Trial, mutation):
    from .semifree import LiftingProblem, exhibit_retract, factor_coch_c_fw, factor_coch_cw_f, lift_linear, lift_semifree

    rng, cfg = t.rng, t.cfg
    C = generate_random_complex(cfg, rng)
    D = generate_random_complex(cfg, rng)
    alpha = random_chain_map(C, D, rng, cfg.density)
    t.record("alpha", alpha)
    try:
        ext, g = factor_coch_c_fw(alpha)
    except FactorizationError:
        t.check(False, "c-fw stage cap")
        return
    t.report(ext.check(), "c-fw cells ")
    t.check(g @ ext.f == alpha, "c-fw composition")
    t.check(is_cofibration(ext.f), "c-fw left cofibration")
    t.check(is_fibration(g) and is_quasi_iso(g), "c-fw right trivial fibration")
    j, q = factor_coch_cw_f(alpha)
    t.check(q @ j.f == alpha, "cw-f composition")
    t.check(is_cofibration(j.f) and is_quasi_iso(j.f), "cw-f left trivial cofibration")
    t.check(is_fibration(q), "cw-f right fibration")
    t.report(check_contraction(j.contraction()), "cw-f contraction ")
    # lifting: i = ext.f against a split surjective quasi-iso
    P = ext.target
    sq = generate_surjective_qis(cfg, rng)
    Y = sq.p.tgt
    gmap = random_chain_map(P, Y, rng, cfg.density)
    K = sq.kernel_inc.src
    f = sq.section @ gmap @ ext.f + sq.kernel_inc @ random_chain_map(C, K, rng, cfg.density)
    prob = LiftingProblem(ext.f, f, sq.p, gmap)
    t.check(prob.commutes(), "generator square commutes")
    h = lift_semifree(prob, ext)
    t.check(prob.is_lift(h), "lift_semifree equations")
    t.check(lift_linear(prob) is not None, "lift_linear solvability agreement")
    # retract presentation
    inj = generate_injection(cfg, rng)
    t.record("g", inj)
    t.report(exhibit_retract(inj).check(), "retract ")


def _mc_common(t: _Trial, kind: str):
    rng, cfg = t.rng, t.cfg
    fx, fy, fz = (contraction_frame(cfg, rng) for _ in range(3))
    X, Y, Z = fx.contraction, fy.contraction, fz.contraction
    v = random_morphism(fx, fy, rng, kind, cfg.density)
    u = random_morphism(fy, fz, rng, kind, cfg.density)
    t.record("v", v)
    t.record("u", u)
    # MC1: two out of three
    qa, qb, qc = is_quasi_iso(v.f), is_quasi_iso(u.f), is_quasi_iso(u.f @ v.f)
    t.check(qa + qb + qc != 2, "MC1 two out of three")
    # MC2: v is a retract of v (+) u in Map
    w = direct_sum_maps(v.f, u.f)
    for pred, name in ((is_cofibration, "cofibration"), (is_fibration, "fibration"), (is_quasi_iso, "weak equivalence")):
        if pred(w):
            t.check(pred(v.f), f"MC2 retract of {name}")
    return fx, fy, fz, v, u


def _camp_mc_ar(t: _Trial, mutation):
    from .model import MorphismSquare, factor_ar, lift_ar

    fx, fy, fz, v, u = _mc_common(t, "ar")
    for flavor in ("c-fw", "cw-f"):
        fa = factor_ar(v, flavor)
        t.report(fa.check(), f"MC4 {flavor} ")
        fb = factor_ar(Morphism(v.src, u.tgt, u.f @ v.f), flavor)
        sq = MorphismSquare(fa.left, fb.left, fb.right, u @ fa.right)
        lifted = lift_ar(sq, fa.cells)
        t.check(lifted.f @ sq.i.f == sq.f.f and sq.p.f @ lifted.f == sq.g.f, f"MC3 {flavor} lift equations")
        t.check(check_ar_morphism(lifted), f"MC3 {flavor} AR morphism")


def _camp_mc_contr(t: _Trial, mutation):
    from .model import MorphismSquare, factor_contr, factorization_naturality, lift_contr

    fx, fy, fz, v, u = _mc_common(t, "contr")
    for flavor in ("c-fw", "cw-f"):
        fa = factor_contr(v, flavor)
        t.report(fa.check(), f"MC4 {flavor} ")
        uv = Morphism(v.src, u.tgt, u.f @ v.f)
        fb = factor_contr(uv, flavor)
        sq = MorphismSquare(fa.left, fb.left, fb.right, Morphism(fa.middle, u.tgt, u.f @ fa.right.f))
        lifted = lift_contr(sq, fa.ar.cells)
        t.check(lifted.f @ sq.i.f == sq.f.f and sq.p.f @ lifted.f == sq.g.f, f"MC3 {flavor} lift equations")
        t.check(check_contr_morphism(lifted), f"MC3 {flavor} Contr morphism")
        # square (v, uv) -> (uv, ...) with identity top and bottom u
        psi = factorization_naturality(fa, fb, Morphism(v.src, v.src, identity(v.src.N)), u)
        t.check(psi.f @ fa.left.f == fb.left.f, f"naturality {flavor} top square")
        t.check(fb.right.f @ psi.f == u.f @ fa.right.f, f"naturality {flavor} bottom square")
        # square uv -> u with top v and identity bottom
        fu = factor_contr(u, flavor)
        Z = u.tgt
        psi2 = factorization_naturality(fb, fu, v, Morphism(Z, Z, identity(Z.N)))
        t.check(psi2.f @ fb.left.f == fu.left.f @ v.f, f"naturality {flavor} top square (random top)")
        t.check(fu.right.f @ psi2.f == fb.right.f, f"naturality {flavor} bottom square (random top)")
        t.check(check_contr_morphism(psi2), f"naturality {flavor} Contr morphism")


CAMPAIGNS: dict[str, Callable] = {
    "tricks": _camp_tricks,
    "contractions": _camp_contractions,
    "path": _camp_path,
    "semifree": _camp_semifree,
    "mc-ar": _camp_mc_ar,
    "mc-contr": _camp_mc_contr,
}

MUTATIONS = ("trick3-sign", "drop-side-condition")


def default_config(name: str, field: Field | None = None, seed: int = 0) -> GenConfig:
    fld = GF(5) if field is None else field
    if name in ("semifree",):
        return GenConfig(seed, fld, (-2, 1), 5)
    if name in ("mc-ar", "mc-contr"):
        return GenConfig(seed, fld, (-1, 1), 3)
    return GenConfig(seed, fld, (-3, 3), 6)


def trial_seed(seed: int, trial: int) -> int:
    a, b = np.random.SeedSequence([seed, trial]).generate_state(2, np.uint32)
    return (int(a) << 32) | int(b)


def run_trial(name: str, cfg: GenConfig, mutation: str | None = None) -> _Trial:
    t = _Trial(cfg)
    try:
        CAMPAIGNS[name](t, mutation)
    except ContrModelError as e:
        t.check(False, f"raised {type(e).__name__}: {e}")
    return t


def _shrink(name: str, cfg: GenConfig, mutation, identity_name: str, inputs: dict) -> dict:
    """Halve ``max_dim`` and the support while the same identity keeps failing."""
    cur, best = cfg, inputs
    while True:
        lo, hi = cur.support
        cands = []
        if cur.max_dim > 1:
            cands.append(replace(cur, max_dim=cur.max_dim // 2))
        if hi > lo:
            mid = (lo + hi) // 2
            cands.append(replace(cur, support=(lo, mid)))
            cands.append(replace(cur, support=(mid + 1, hi)))
        for c in cands:
            t = run_trial(name, c, mutation)
            if t.failed == identity_name:
                cur, best = c, t.inputs_json()
                break
        else:
            return best


def run_campaign(name: str, trials: int, cfg: GenConfig | None = None, mutation: str | None = None,
                 shrink: bool = True) -> FuzzReport:
    if name not in CAMPAIGNS:
        raise ValueError(f"unknown campaign {name!r}; choose from {sorted(CAMPAIGNS)}")
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    cfg = default_config(name) if cfg is None else cfg
    rep = FuzzReport(name, trials)
    for k in range(trials):
        sub = replace(cfg, seed=trial_seed(cfg.seed, k))
        t = run_trial(name, sub, mutation)
        if t.failed is not None:
            inputs = t.inputs_json()
            if shrink:
                inputs = _shrink(name, sub, mutation, t.failed, inputs)
            rep.failures.append(FuzzFailure(sub.seed, inputs, t.failed))
    rep.failures.sort(key=lambda f: f.seed)
    return rep
