import pytest
from hypothesis import given, settings

from gen import configs, disk, frames, sphere
from contrmodel.complex import Complex, identity, is_quasi_iso, zero_map
from contrmodel.errors import PreconditionError
from contrmodel.harness import GenConfig, random_morphism
from contrmodel.linalg import GF, QQ
from contrmodel.model import (
    FLAVORS,
    MorphismSquare,
    classify,
    factor_ar,
    factor_contr,
    factorization_naturality,
    lift_ar,
    lift_contr,
    lift_contraction_homotopy,
)
from contrmodel.retract import (
    Morphism,
    check_ar,
    check_ar_morphism,
    check_contr_morphism,
    check_contraction,
    disk_contraction,
    identity_morphism,
    trivial_contraction,
)

F3, F5 = GF(3), GF(5)
mc_cfgs = configs(fields=[F3, F5, QQ], support=(-1, 1), max_dim=3)
flavors = pytest.mark.parametrize("flavor", FLAVORS)


def _pair(cfg, kind):
    rng, (a, b, c) = frames(cfg, 3)
    return random_morphism(a, b, rng, kind), random_morphism(b, c, rng, kind)


# ----------------------------------------------------------------------------
# factorization in AR


@flavors
def test_factor_ar_identity_on_sphere(flavor):
    c = trivial_contraction(sphere(F5))
    fa = factor_ar(identity_morphism(c), flavor)
    assert fa.check().ok
    flags = classify(fa.left.f)
    assert flags["cofibration"]
    assert check_ar(fa.middle).ok


@flavors
def test_factor_ar_zero(flavor):
    c = trivial_contraction(Complex.zero(F5))
    fa = factor_ar(identity_morphism(c), flavor)
    assert fa.middle.N.is_zero() and fa.middle.M.is_zero()


@flavors
@given(cfg=mc_cfgs)
@settings(max_examples=15)
def test_factor_ar_random(flavor, cfg):
    v, _ = _pair(cfg, "ar")
    fa = factor_ar(v, flavor)
    assert fa.right.f @ fa.left.f == v.f
    assert check_ar(fa.middle).ok
    assert fa.middle.pi @ fa.middle.iota == identity(fa.middle.M)
    left, right = classify(fa.left.f), classify(fa.right.f)
    if flavor == "c-fw":
        assert left["cofibration"] and right["trivial_fibration"]
    else:
        assert left["trivial_cofibration"] and right["fibration"]
    assert fa.flags["inner_sites"] == "both"
    assert fa.cells.check().ok


def test_factor_ar_rejects_non_morphisms():
    c = trivial_contraction(disk(F5))
    d = disk_contraction(F5)
    # Id does not intertwine the projector Id of c with the projector 0 of d
    m = Morphism(c, d, identity(d.N))
    assert not check_ar_morphism(m)
    with pytest.raises(PreconditionError):
        factor_ar(m)


# ----------------------------------------------------------------------------
# lifting


def test_lift_ar_trivial_squares():
    c = trivial_contraction(disk(F5))
    I = identity_morphism(c)
    sq = MorphismSquare(I, I, I, I)
    assert lift_ar(sq).f == identity(c.N)
    assert lift_contr(sq).f == identity(c.N)


@flavors
@given(cfg=mc_cfgs)
@settings(max_examples=10)
def test_lift_ar_on_factorization_legs(flavor, cfg):
    v, u = _pair(cfg, "ar")
    fa = factor_ar(v, flavor)
    fb = factor_ar(Morphism(v.src, u.tgt, u.f @ v.f), flavor)
    sq = MorphismSquare(fa.left, fb.left, fb.right, u @ fa.right)
    lifted = lift_ar(sq, fa.cells)
    assert lifted.f @ sq.i.f == sq.f.f and sq.p.f @ lifted.f == sq.g.f
    assert check_ar_morphism(lifted)


@flavors
@given(cfg=mc_cfgs)
@settings(max_examples=8)
def test_lift_contr_on_factorization_legs(flavor, cfg):
    v, u = _pair(cfg, "contr")
    fa = factor_contr(v, flavor)
    fb = factor_contr(Morphism(v.src, u.tgt, u.f @ v.f), flavor)
    sq = MorphismSquare(fa.left, fb.left, fb.right, Morphism(fa.middle, u.tgt, u.f @ fa.right.f))
    lifted = lift_contr(sq, fa.ar.cells)
    assert lifted.f @ sq.i.f == sq.f.f and sq.p.f @ lifted.f == sq.g.f
    assert check_contr_morphism(lifted)


# ----------------------------------------------------------------------------
# contractions on the middle object


def test_contraction_homotopy_with_identity_alpha():
    c = disk_contraction(F5)
    I = identity_morphism(c)
    assert lift_contraction_homotopy(I, I) == c.h


@flavors
@given(cfg=mc_cfgs)
@settings(max_examples=8)
def test_factor_contr_random(flavor, cfg):
    v, _ = _pair(cfg, "contr")
    fc = factor_contr(v, flavor)
    assert fc.check().ok
    assert fc.right.f @ fc.left.f == v.f
    assert check_contraction(fc.middle).ok
    assert check_contr_morphism(fc.left) and check_contr_morphism(fc.right)


# ----------------------------------------------------------------------------
# naturality


@flavors
def test_naturality_of_identity_square(flavor):
    cfg = GenConfig(17, F5, (-1, 1), 3)
    v, _ = _pair(cfg, "contr")
    fc = factor_contr(v, flavor)
    psi = factorization_naturality(fc, fc, identity_morphism(v.src), identity_morphism(v.tgt))
    assert psi.f == identity(fc.middle.N)


@flavors
@given(cfg=mc_cfgs)
@settings(max_examples=6)
def test_naturality_squares_commute(flavor, cfg):
    v, u = _pair(cfg, "contr")
    fv = factor_contr(v, flavor)
    fuv = factor_contr(Morphism(v.src, u.tgt, u.f @ v.f), flavor)
    fu = factor_contr(u, flavor)
    # identity on top, u on the bottom
    psi = factorization_naturality(fv, fuv, identity_morphism(v.src), u)
    assert psi.f @ fv.left.f == fuv.left.f
    assert fuv.right.f @ psi.f == u.f @ fv.right.f
    # v on top, identity on the bottom
    psi2 = factorization_naturality(fuv, fu, v, identity_morphism(u.tgt))
    assert psi2.f @ fuv.left.f == fu.left.f @ v.f
    assert fu.right.f @ psi2.f == fuv.right.f
    assert check_contr_morphism(psi) and check_contr_morphism(psi2)


# ----------------------------------------------------------------------------
# MC1 and MC2 samples


@given(mc_cfgs)
def test_two_out_of_three(cfg):
    v, u = _pair(cfg, "contr")
    count = is_quasi_iso(v.f) + is_quasi_iso(u.f) + is_quasi_iso(u.f @ v.f)
    assert count != 2


def test_classify_zero_map():
    D = disk(F5)
    flags = classify(zero_map(D, Complex.zero(F5)))
    assert flags["trivial_fibration"] and not flags["cofibration"]
