import pytest
from hypothesis import given

from gen import configs, disk, frames
from contrmodel.complex import GradedMap, identity, induced_map, is_chain_map, zero_map
from contrmodel.harness import (
    generate_random_contraction,
    random_chain_map,
    random_graded_map,
    random_morphism,
)
from contrmodel.linalg import GF, QQ, Matrix
from contrmodel.retract import (
    SDR,
    AcyclicRetraction,
    Contraction,
    Morphism,
    base_morphism,
    check_ar,
    check_ar_morphism,
    check_contr_morphism,
    check_contraction,
    check_sdr,
    disk_contraction,
    identity_morphism,
    induces_zero,
    trick1,
    trick1_defect,
    trivial_contraction,
)

F5 = GF(5)


def _blockwise_trick1(f, src, tgt):
    """The first trick written out degree by degree on bare matrices."""
    out = {}
    for i in f.src.degrees:
        if not f.tgt.dim(i):
            continue
        F = f.block(i)
        E = src.iota.block(i) if src.M.dim(i) else None
        e_src = src.iota.block(i) @ src.pi.block(i) if E is not None else Matrix.zeros(F.field, F.cols, F.cols)
        e_tgt = tgt.iota.block(i) @ tgt.pi.block(i) if tgt.M.dim(i) else Matrix.zeros(F.field, F.rows, F.rows)
        out[i] = F - e_tgt @ F - F @ e_src + (e_tgt @ F @ e_src).scale(2)
    return GradedMap(f.src, f.tgt, 0, out)


# ----------------------------------------------------------------------------
# validators


def test_trivial_contraction_passes():
    assert check_contraction(trivial_contraction(disk(F5))).ok


def test_disk_contraction_passes():
    c = disk_contraction(F5)
    assert c.h.block(1) == Matrix(F5, [[-1]])
    assert check_contraction(c).ok


def test_disk_with_positive_homotopy_fails_c1():
    c = disk_contraction(F5)
    rep = check_sdr(SDR(c.iota, c.pi, -c.h))
    assert "C1" in rep.failures


def test_side_condition_failures_are_itemized():
    c = disk_contraction(QQ)
    N = c.N
    # make pi iota = Id fail
    bad = AcyclicRetraction(identity(N), zero_map(N, N))
    assert "pi iota = Id" in check_ar(bad).failures


@given(configs())
def test_generated_contractions_pass(cfg):
    c = generate_random_contraction(cfg)
    assert check_contraction(c).ok


@given(configs())
def test_hdh_equals_minus_h(cfg):
    c = generate_random_contraction(cfg)
    d = c.N.d_map
    assert c.h @ d @ c.h == -c.h


@given(configs())
def test_check_ar_ignores_qis_flag_on_valid_input(cfg):
    c = generate_random_contraction(cfg)
    assert check_ar(c, check_qis=True).ok == check_ar(c, check_qis=False).ok


# ----------------------------------------------------------------------------
# morphisms


def test_identity_morphism_is_both():
    c = disk_contraction(F5)
    m = identity_morphism(c)
    assert check_ar_morphism(m) and check_contr_morphism(m)


def test_base_morphism_of_identity():
    c = trivial_contraction(disk(F5))
    assert base_morphism(identity_morphism(c)) == identity(c.M)


def test_base_morphism_of_zero():
    c = trivial_contraction(disk(F5))
    assert base_morphism(Morphism(c, c, zero_map(c.N, c.N))).is_zero()


@given(configs())
def test_base_morphism_squares_commute(cfg):
    rng, (a, b) = frames(cfg, 2)
    m = random_morphism(a, b, rng, "ar")
    fhat = base_morphism(m)
    assert m.tgt.iota @ fhat == m.f @ m.src.iota
    assert fhat @ m.src.pi == m.tgt.pi @ m.f


@given(configs())
def test_every_contr_morphism_is_ar_morphism(cfg):
    rng, (a, b) = frames(cfg, 2)
    m = random_morphism(a, b, rng, "contr")
    assert check_contr_morphism(m)
    assert check_ar_morphism(m)


def test_morphism_rejects_wrong_complexes():
    from contrmodel.errors import DimensionError

    c, t = disk_contraction(F5), trivial_contraction(disk(F5, 2))
    with pytest.raises(DimensionError):
        Morphism(c, t, identity(c.N))


# ----------------------------------------------------------------------------
# first trick


def test_trick1_fixes_ar_morphisms():
    c = disk_contraction(F5)
    assert trick1(identity(c.N), c, c).f == identity(c.N)


def test_trick1_of_zero():
    c = disk_contraction(F5)
    assert trick1(zero_map(c.N, c.N), c, c).f.is_zero()


@given(configs())
def test_trick1_on_random_chain_map(cfg):
    rng, (a, b) = frames(cfg, 2)
    X, Y = a.contraction, b.contraction
    f = random_chain_map(X.N, Y.N, rng)
    m = trick1(f, X, Y)
    assert m.f == _blockwise_trick1(f, X, Y)
    assert check_ar_morphism(m)
    assert induces_zero(f - m.f)
    assert f - m.f == trick1_defect(f, X, Y)
    assert trick1(m.f, X, Y).f == m.f


@given(configs())
def test_trick1_fixed_point_on_ar_morphisms(cfg):
    rng, (a, b) = frames(cfg, 2)
    m = random_morphism(a, b, rng, "ar")
    assert trick1(m.f, m.src, m.tgt).f == m.f


@given(configs())
def test_trick1_functoriality(cfg):
    rng, (a, b, c) = frames(cfg, 3)
    X, Y, Z = a.contraction, b.contraction, c.contraction
    f = random_chain_map(X.N, Y.N, rng)
    g = random_morphism(b, c, rng, "ar")
    assert trick1(g.f @ f, X, Z).f == g.f @ trick1(f, X, Y).f
    g2 = random_morphism(a, b, rng, "ar")
    f2 = random_chain_map(Y.N, Z.N, rng)
    assert trick1(f2 @ g2.f, X, Z).f == trick1(f2, Y, Z).f @ g2.f


@given(configs())
def test_first_trick_defect_is_trivial_in_cohomology(cfg):
    rng, (a, b) = frames(cfg, 2)
    f = random_chain_map(a.contraction.N, b.contraction.N, rng)
    defect = trick1_defect(f, a.contraction, b.contraction)
    assert is_chain_map(defect)
    assert all(m.is_zero() for m in induced_map(defect).values())


@given(configs())
def test_corrupted_homotopy_breaks_c1(cfg):
    c = generate_random_contraction(cfg)
    xi = random_graded_map(c.N, c.N, -1, cfg.rng())
    if (c.N.d_map @ xi + xi @ c.N.d_map).is_zero():
        return
    assert "C1" in check_sdr(SDR(c.iota, c.pi, c.h + xi)).failures
