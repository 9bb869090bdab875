"""Factorizations and liftings in the categories of acyclic retractions and of
contractions.

A morphism of diagrams is classified through its underlying chain map
``N -> B``: cofibration = degreewise injective, fibration = degreewise
surjective, weak equivalence = quasi-isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import (
    GradedMap,
    Pullback,
    Pushout,
    identity,
    is_chain_map,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
    pullback,
    pushout,
)
from .errors import InvariantViolation, PreconditionError
from .perturb import trick2, trick3
from .report import Report
from .retract import (
    SDR,
    AcyclicRetraction,
    Contraction,
    Morphism,
    _c1,
    base_morphism,
    check_ar,
    check_ar_morphism,
    check_contr_morphism,
    check_contraction,
    trick1,
)
from .semifree import (
    DiskExtension,
    LiftingProblem,
    SemifreeExtension,
    extend_over_cells,
    factor_coch,
    lift,
    lift_linear,
    solve_graded,
)

FLAVORS = ("c-fw", "cw-f")


def classify(f: GradedMap) -> dict[str, bool]:
    cof, fib, we = is_cofibration(f), is_fibration(f), is_quasi_iso(f)
    return {
        "cofibration": cof,
        "fibration": fib,
        "weak_equivalence": we,
        "trivial_cofibration": cof and we,
        "trivial_fibration": fib and we,
    }


def _expected_flags(flavor: str) -> tuple[str, str]:
    if flavor == "c-fw":
        return "cofibration", "trivial_fibration"
    if flavor == "cw-f":
        return "trivial_cofibration", "fibration"
    raise ValueError(f"unknown flavor {flavor!r}")


# ----------------------------------------------------------------------------
# factorization in AR


@dataclass(frozen=True, eq=False)
class ARFactorization:
    """``input = right @ left`` through the middle retraction ``(P, Q, gamma i_bar, p_bar delta)``.

    The remaining fields are the pieces of the construction, kept so that
    connecting maps between two factorizations can be built from them.
    """

    input: Morphism
    middle: AcyclicRetraction
    left: Morphism
    right: Morphism
    flavor: str
    cells: SemifreeExtension | DiskExtension
    g_cells: SemifreeExtension | DiskExtension
    h: GradedMap
    po: Pushout
    pb: Pullback
    phi: GradedMap
    gamma_cells: SemifreeExtension | DiskExtension
    delta: GradedMap
    flags: dict = field(default_factory=dict)

    @property
    def gamma(self) -> GradedMap:
        return self.gamma_cells.f

    def check(self) -> Report:
        rep = Report(f"AR factorization ({self.flavor})")
        rep.check(self.right.f @ self.left.f == self.input.f, "right left = f")
        rep.extend(check_ar(self.middle), "middle: ")
        rep.check(self.middle.pi @ self.middle.iota == identity(self.middle.M), "p_bar delta gamma i_bar = Id_P")
        rep.check(check_ar_morphism(self.left), "left AR morphism")
        rep.check(check_ar_morphism(self.right), "right AR morphism")
        lflag, rflag = _expected_flags(self.flavor)
        rep.check(classify(self.left.f)[lflag], f"left {lflag}")
        rep.check(classify(self.right.f)[rflag], f"right {rflag}")
        return rep


def factor_ar(f: Morphism, flavor: str = "c-fw", check: bool = True) -> ARFactorization:
    """Factor an AR morphism through a pushout along ``iota`` and a pullback along ``p``.

    With ``f^ = p f iota = h g``, ``phi`` is the map from ``P +_M N`` to
    ``B x_A P`` determined by ``(Id_P, g pi)`` and ``(i h, f)``; factoring
    ``phi = delta gamma`` gives legs ``gamma g_bar`` and ``h_bar delta``.
    The same flavor is used at both inner factorizations.
    """
    _expected_flags(flavor)
    src, tgt = f.src, f.tgt
    if check:
        rep = check_ar(src)
        rep.extend(check_ar(tgt))
        if not rep.ok or not check_ar_morphism(f):
            raise PreconditionError("factor_ar needs a morphism of acyclic retractions", rep)
    fbase = base_morphism(f)
    g_cells, h = factor_coch(fbase, flavor)
    g = g_cells.f
    po = pushout(g, src.iota)
    pb = pullback(tgt.pi, h)
    psi1 = po.mediate(identity(g.tgt), g @ src.pi)
    psi2 = po.mediate(tgt.iota @ h, f.f)
    phi = pb.mediate(psi2, psi1)
    gamma_cells, delta = factor_coch(phi, flavor)
    gamma = gamma_cells.f
    middle = AcyclicRetraction(gamma @ po.i_bar, pb.p_bar @ delta)
    left = Morphism(src, middle, gamma @ po.g_bar)
    right = Morphism(middle, tgt, pb.h_bar @ delta)
    cells = g_cells.transport(po).then(gamma_cells)
    lflag, rflag = _expected_flags(flavor)
    flags = {"left": lflag, "right": rflag, "inner_flavor": flavor, "inner_sites": "both"}
    fa = ARFactorization(f, middle, left, right, flavor, cells, g_cells, h, po, pb, phi, gamma_cells, delta, flags)
    rep = fa.check()
    rep.extend(cells.check(), "cells: ")
    if not rep.ok:
        raise InvariantViolation(f"AR factorization failed: {rep.failures}")
    return fa


def factor_ar_c_fw(f: Morphism) -> ARFactorization:
    return factor_ar(f, "c-fw")


def factor_ar_cw_f(f: Morphism) -> ARFactorization:
    return factor_ar(f, "cw-f")


# ----------------------------------------------------------------------------
# lifting in AR and Contr


@dataclass(frozen=True, eq=False)
class MorphismSquare:
    """Square of diagram morphisms ``p f = g i``."""

    i: Morphism
    f: Morphism
    p: Morphism
    g: Morphism

    def underlying(self) -> LiftingProblem:
        return LiftingProblem(self.i.f, self.f.f, self.p.f, self.g.f)


def _coch_lift(prob: LiftingProblem, cells=None) -> GradedMap:
    if isinstance(cells, DiskExtension) and is_fibration(prob.p):
        return lift(prob, cells)
    if isinstance(cells, SemifreeExtension) and is_fibration(prob.p) and is_quasi_iso(prob.p):
        return lift(prob, cells)
    h = lift_linear(prob)
    if h is None:
        raise InvariantViolation("no chain-level lift exists for this square")
    return h


def lift_ar(sq: MorphismSquare, cells=None) -> Morphism:
    """Chain-level lift corrected by the first trick."""
    prob = sq.underlying()
    if not prob.commutes():
        raise PreconditionError("lifting square does not commute")
    h = _coch_lift(prob, cells)
    lifted = trick1(h, sq.i.tgt, sq.f.tgt)
    if lifted.f @ sq.i.f != sq.f.f or sq.p.f @ lifted.f != sq.g.f:
        raise InvariantViolation("corrected lift breaks the lifting equations")
    if not check_ar_morphism(lifted):
        raise InvariantViolation("corrected lift is not a morphism of acyclic retractions")
    return lifted


def lift_contr(sq: MorphismSquare, cells=None) -> Morphism:
    """:func:`lift_ar` followed by the third trick."""
    m = lift_ar(sq, cells)
    lifted = trick3(m)
    if lifted.f @ sq.i.f != sq.f.f or sq.p.f @ lifted.f != sq.g.f:
        raise InvariantViolation("straightened lift breaks the lifting equations")
    if not check_contr_morphism(lifted):
        raise InvariantViolation("straightened lift is not a morphism of contractions")
    return lifted


# ----------------------------------------------------------------------------
# contraction homotopy on the middle object


def lift_contraction_homotopy(alpha: Morphism, beta: Morphism, cells=None) -> GradedMap:
    """Homotopy ``l`` on the middle of ``beta alpha`` making both legs contraction morphisms.

    ``l`` solves ``dl + ld = iota pi - Id``, ``l alpha = alpha k`` and
    ``h beta = beta l``; this is the third component of a lift into the path
    object. The result is then normalized by the second trick.
    """
    src, mid, tgt = alpha.src, alpha.tgt, beta.tgt
    if beta.src is not mid:
        raise PreconditionError("alpha and beta are not composable")
    for x, role in ((src, "source"), (tgt, "target")):
        if not isinstance(x, SDR) or not check_contraction(x, check_qis=False).ok:
            raise PreconditionError(f"{role} is not a contraction")
    Q = mid.N
    k, h = src.h, tgt.h
    F = alpha.f @ k
    G = h @ beta.f
    R = mid.projector - identity(Q)
    l = None
    if cells is not None and (cells.f is alpha.f or cells.f == alpha.f):
        try:
            l = extend_over_cells(cells, F, beta.f, G, R)
        except InvariantViolation:
            l = None
    if l is None:
        l = solve_graded(Q, Q, -1, pre=[(alpha.f, F)], post=[(beta.f, G)], comm=R).particular
    if l is None:
        raise InvariantViolation("no homotopy on the middle object satisfies the lifting equations")
    sdr = SDR(mid.iota, mid.pi, l)
    if not _c1(sdr) or l @ alpha.f != F or beta.f @ l != G:
        raise InvariantViolation("middle homotopy fails C1 or the leg compatibilities")
    return trick2(sdr, check=False).h


@dataclass(frozen=True, eq=False)
class ContrFactorization:
    """Factorization in Contr: the AR factorization plus a contraction homotopy on the middle."""

    ar: ARFactorization
    middle: Contraction
    left: Morphism
    right: Morphism

    @property
    def input(self) -> Morphism:
        return self.ar.input

    @property
    def flavor(self) -> str:
        return self.ar.flavor

    def check(self) -> Report:
        rep = Report(f"Contr factorization ({self.flavor})")
        rep.check(self.right.f @ self.left.f == self.input.f, "right left = f")
        rep.extend(check_contraction(self.middle), "middle: ")
        rep.check(self.middle.pi @ self.middle.iota == identity(self.middle.M), "p_bar delta gamma i_bar = Id_P")
        rep.check(check_contr_morphism(self.left), "left Contr morphism")
        rep.check(check_contr_morphism(self.right), "right Contr morphism")
        lflag, rflag = _expected_flags(self.flavor)
        rep.check(classify(self.left.f)[lflag], f"left {lflag}")
        rep.check(classify(self.right.f)[rflag], f"right {rflag}")
        return rep


def factor_contr(f: Morphism, flavor: str = "c-fw") -> ContrFactorization:
    for x, role in ((f.src, "source"), (f.tgt, "target")):
        if not isinstance(x, SDR) or not check_contraction(x).ok:
            raise PreconditionError(f"{role} is not a contraction")
    if not check_contr_morphism(f):
        raise PreconditionError("input is not a morphism of contractions")
    fa = factor_ar(f, flavor)
    l = lift_contraction_homotopy(fa.left, fa.right, fa.cells)
    middle = Contraction(fa.middle.iota, fa.middle.pi, l)
    left = Morphism(f.src, middle, fa.left.f)
    right = Morphism(middle, f.tgt, fa.right.f)
    fc = ContrFactorization(fa, middle, left, right)
    rep = fc.check()
    if not rep.ok:
        raise InvariantViolation(f"Contr factorization failed: {rep.failures}")
    return fc


# ----------------------------------------------------------------------------
# naturality


def _lift_prefer_identity(prob: LiftingProblem, cells) -> GradedMap:
    X, B = prob.p.src, prob.i.tgt
    if X is B or X == B:
        I = identity(B)
        if prob.is_lift(I):
            return I
    return _coch_lift(prob, cells)


def connecting_map(fa1: ARFactorization, fa2: ARFactorization, top: Morphism, bottom: Morphism) -> Morphism:
    """AR morphism between the middles induced by a square ``bottom fa1.input = fa2.input top``.

    Built through the construction: a lift ``w`` between the inner
    factorizations, the induced maps of pushouts and pullbacks, and a lift
    ``psi`` between the factorizations of ``phi``; the first trick makes it a
    morphism of acyclic retractions.
    """
    v1, v2 = fa1.input, fa2.input
    if bottom.f @ v1.f != v2.f @ top.f:
        raise PreconditionError("square of morphisms does not commute")
    a_base, b_base = base_morphism(top), base_morphism(bottom)
    g1, g2 = fa1.g_cells.f, fa2.g_cells.f
    w = _lift_prefer_identity(LiftingProblem(g1, g2 @ a_base, fa2.h, b_base @ fa1.h), fa1.g_cells)
    po1, po2, pb1, pb2 = fa1.po, fa2.po, fa1.pb, fa2.pb
    po_map = po1.mediate(po2.i_bar @ w, po2.g_bar @ top.f)
    pb_map = pb2.mediate(bottom.f @ pb1.h_bar, w @ pb1.p_bar)
    prob = LiftingProblem(fa1.gamma, fa2.gamma @ po_map, fa2.delta, pb_map @ fa1.delta)
    psi = _lift_prefer_identity(prob, fa1.gamma_cells)
    m = trick1(psi, fa1.middle, fa2.middle)
    if m.f @ fa1.left.f != fa2.left.f @ top.f or fa2.right.f @ m.f != bottom.f @ fa1.right.f:
        raise InvariantViolation("connecting map does not make the squares commute")
    return m


def factorization_naturality(fc1: ContrFactorization, fc2: ContrFactorization, top: Morphism, bottom: Morphism) -> Morphism:
    """Contraction morphism ``fc1.middle -> fc2.middle`` commuting with both legs."""
    for m, role in ((top, "top"), (bottom, "bottom")):
        if not check_contr_morphism(m):
            raise PreconditionError(f"{role} edge is not a morphism of contractions")
    m = connecting_map(fc1.ar, fc2.ar, top, bottom)
    psi = trick3(Morphism(fc1.middle, fc2.middle, m.f))
    if psi.f @ fc1.left.f != fc2.left.f @ top.f or fc2.right.f @ psi.f != bottom.f @ fc1.right.f:
        raise InvariantViolation("naturality squares do not commute")
    if not check_contr_morphism(psi):
        raise InvariantViolation("connecting map is not a morphism of contractions")
    return psi
