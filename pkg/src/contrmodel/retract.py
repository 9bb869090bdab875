"""Acyclic retractions, strong deformation retractions, contractions and their
morphisms, together with the first basic trick.

The diagram types are plain containers: they may hold data that violates their
defining identities, and validity is queried with the ``check_*`` functions.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, replace

from .complex import (
    Complex,
    GradedMap,
    graded_commutator,
    identity,
    induced_map,
    is_chain_map,
    is_quasi_iso,
    zero_map,
)
from .errors import DimensionError
from .linalg import Matrix
from .report import Report


@dataclass(frozen=True, eq=False)
class AcyclicRetraction:
    """``iota: M -> N`` and ``pi: N -> M`` with ``pi iota = Id_M``."""

    iota: GradedMap
    pi: GradedMap

    @property
    def M(self) -> Complex:
        return self.iota.src

    @property
    def N(self) -> Complex:
        return self.iota.tgt

    @property
    def projector(self) -> GradedMap:
        """``iota pi``."""
        return self.iota @ self.pi

    def forget(self) -> AcyclicRetraction:
        return AcyclicRetraction(self.iota, self.pi)


@dataclass(frozen=True, eq=False)
class SDR(AcyclicRetraction):
    """Acyclic retraction with ``h`` of degree -1 and ``iota pi - Id = dh + hd``."""

    h: GradedMap


@dataclass(frozen=True, eq=False)
class Contraction(SDR):
    """SDR that also satisfies ``pi h = 0``, ``h iota = 0`` and ``h h = 0``."""


@dataclass(frozen=True, eq=False)
class Morphism:
    """Morphism of diagrams, given by a chain map ``f: src.N -> tgt.N``.

    Whether it is a morphism of acyclic retractions, SDRs or contractions
    depends on the endpoints; see :func:`check_ar_morphism` and
    :func:`check_contr_morphism`.
    """

    src: AcyclicRetraction
    tgt: AcyclicRetraction
    f: GradedMap

    def __post_init__(self):
        if self.f.src is not self.src.N and self.f.src != self.src.N:
            raise DimensionError("morphism source does not match the source diagram")
        if self.f.tgt is not self.tgt.N and self.f.tgt != self.tgt.N:
            raise DimensionError("morphism target does not match the target diagram")

    def __matmul__(self, other: Morphism) -> Morphism:
        return Morphism(other.src, self.tgt, self.f @ other.f)


def trivial_contraction(X: Complex) -> Contraction:
    """``iota = pi = Id``, ``h = 0``."""
    I = identity(X)
    return Contraction(I, I, zero_map(X, X, -1))


def identity_morphism(x: AcyclicRetraction) -> Morphism:
    return Morphism(x, x, identity(x.N))


def disk_contraction(field, n: int = 1) -> Contraction:
    """Contraction of the disk with generators in degrees ``n-1, n`` onto 0."""
    one = Matrix.identity(field, 1)
    N = Complex(field, {n - 1: 1, n: 1}, {n - 1: one})
    Z = Complex.zero(field)
    h = GradedMap(N, N, -1, {n: -one})
    return Contraction(zero_map(Z, N), zero_map(N, Z), h)


def _check_common(x: AcyclicRetraction, rep: Report, check_qis: bool) -> None:
    rep.check(is_chain_map(x.iota), "iota chain map")
    rep.check(is_chain_map(x.pi), "pi chain map")
    rep.check(x.pi @ x.iota == identity(x.M), "pi iota = Id")
    if check_qis and rep.ok:
        rep.check(is_quasi_iso(x.iota), "iota quasi-iso")
        rep.check(is_quasi_iso(x.pi), "pi quasi-iso")


# Diagrams are immutable, so validator results can be memoized per object.
_memo: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def _memoized(fn):
    def wrapper(x, check_qis: bool = True) -> Report:
        key = (fn.__name__, check_qis)
        slot = _memo.setdefault(x, {})
        if key not in slot:
            slot[key] = fn(x, check_qis)
        rep = slot[key]
        return replace(rep, failures=list(rep.failures))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


@_memoized
def check_ar(x: AcyclicRetraction, check_qis: bool = True) -> Report:
    rep = Report("acyclic retraction")
    _check_common(x, rep, check_qis)
    return rep


def _c1(x: SDR) -> bool:
    return x.projector - identity(x.N) == graded_commutator(x.h)


@_memoized
def check_sdr(x: SDR, check_qis: bool = True) -> Report:
    rep = Report("SDR")
    rep.check(x.h.degree == -1, "h degree -1")
    if not rep.ok:
        return rep
    _check_common(x, rep, check_qis)
    rep.check(_c1(x), "C1")
    return rep


@_memoized
def check_contraction(x: SDR, check_qis: bool = True) -> Report:
    rep = check_sdr(x, check_qis)
    rep.subject = "contraction"
    if x.h.degree != -1:
        return rep
    rep.check((x.pi @ x.h).is_zero(), "C2 pi h = 0")
    rep.check((x.h @ x.iota).is_zero(), "C2 h iota = 0")
    rep.check((x.h @ x.h).is_zero(), "C3 h h = 0")
    return rep


def check_ar_morphism(m: Morphism) -> bool:
    """``f iota pi = i p f``."""
    return is_chain_map(m.f) and m.f @ m.src.projector == m.tgt.projector @ m.f


def check_contr_morphism(m: Morphism) -> bool:
    """``f h = k f`` on top of being a chain map."""
    return is_chain_map(m.f) and m.f @ m.src.h == m.tgt.h @ m.f


def base_morphism(m: Morphism) -> GradedMap:
    """``p f iota: M -> A``."""
    return m.tgt.pi @ m.f @ m.src.iota


def trick1(f: GradedMap, src: AcyclicRetraction, tgt: AcyclicRetraction) -> Morphism:
    """``f - ipf - f iota pi + 2 ipf iota pi``, a morphism of acyclic retractions."""
    e_src, e_tgt = src.projector, tgt.projector
    ef = e_tgt @ f
    fhat = f - ef - f @ e_src + (ef @ e_src).scale(2)
    return Morphism(src, tgt, fhat)


def trick1_defect(f: GradedMap, src: AcyclicRetraction, tgt: AcyclicRetraction) -> GradedMap:
    """``ipf (Id - iota pi) + (Id - ip) f iota pi``, which equals ``f - trick1(f)``."""
    e_src, e_tgt = src.projector, tgt.projector
    return e_tgt @ f @ (identity(src.N) - e_src) + (identity(tgt.N) - e_tgt) @ f @ e_src


def induces_zero(f: GradedMap) -> bool:
    return all(m.is_zero() for m in induced_map(f).values())
