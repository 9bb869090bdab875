import pytest
from hypothesis import given

import oracles
from gen import configs, disk, sphere
from contrmodel.complex import (
    Complex,
    GradedMap,
    betti,
    check_path_exact_sequence,
    cohomology,
    compose,
    d_commutator,
    direct_sum,
    identity,
    induced_map,
    is_chain_map,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
    path_map,
    path_object,
    pullback,
    pushout,
    sdr_as_path_map,
    shift,
    validate_complex,
    zero_map,
)
from contrmodel.errors import DimensionError
from contrmodel.harness import (
    generate_injection,
    generate_random_complex,
    generate_surjection,
    generate_surjective_qis,
    random_chain_map,
    random_frame,
    random_graded_map,
)
from contrmodel.linalg import GF, QQ, Matrix
from contrmodel.retract import SDR, disk_contraction, trivial_contraction

F2, F5 = GF(2), GF(5)


# ----------------------------------------------------------------------------
# validation and composition


def test_disk_is_valid():
    assert validate_complex(disk(F5)).ok


def test_nonzero_square_is_reported_at_its_degree():
    one = Matrix.identity(F5, 1)
    X = Complex(F5, {0: 1, 1: 1, 2: 1}, {0: one, 1: one})
    rep = validate_complex(X)
    assert not rep.ok
    assert any(f.endswith("@0") for f in rep.failures)


@given(configs())
def test_generated_complexes_are_valid(cfg):
    assert validate_complex(generate_random_complex(cfg)).ok


@given(configs())
def test_generator_is_deterministic(cfg):
    a, b = generate_random_complex(cfg), generate_random_complex(cfg)
    assert a == b and a.d_map == b.d_map


def test_zero_max_dim_gives_zero_complex():
    from contrmodel.harness import GenConfig

    assert generate_random_complex(GenConfig(3, F5, (-2, 2), 0)).is_zero()


@given(configs())
def test_identity_and_zero_composition(cfg):
    X = generate_random_complex(cfg)
    f = random_graded_map(X, X, 1, cfg.rng())
    assert compose(identity(X), f) == f
    assert (f @ zero_map(X, X)).is_zero()


def test_disk_homotopy_squares_to_zero():
    h = disk_contraction(F5).h
    hh = h @ h
    assert hh.degree == -2 and hh.is_zero()


def test_composition_rejects_mismatched_complexes():
    with pytest.raises(DimensionError):
        identity(disk(F5)) @ identity(sphere(F5))


# ----------------------------------------------------------------------------
# D(h) and cohomology


def test_d_commutator_of_chain_map_vanishes():
    X = disk(F5)
    assert d_commutator(identity(X)).is_zero()


def test_d_commutator_of_disk_homotopy_is_minus_identity():
    c = disk_contraction(F5)
    assert d_commutator(c.h) == -identity(c.N)


def test_d_commutator_of_zero_homotopy():
    X = disk(QQ)
    assert d_commutator(zero_map(X, X, -1)).is_zero()


def test_d_commutator_rejects_other_degrees():
    X = disk(F5)
    with pytest.raises(ValueError):
        d_commutator(zero_map(X, X, 2))


def test_sphere_and_disk_cohomology():
    assert betti(sphere(F5)) == {0: 1}
    assert betti(disk(F5)) == {}


def test_small_f2_cohomology():
    X = Complex(F2, {0: 2, 1: 1}, {0: Matrix(F2, [[1, 0]])})
    H = cohomology(X)
    assert (H.dim(0), H.dim(1)) == (1, 0)
    # enumerate cocycles in degree 0: ker [1 0] = {(0,0), (0,1)}
    cocycles = [v for v in oracles.all_vectors(2, 2) if v[0] % 2 == 0]
    assert len(cocycles) == 2


@given(configs())
def test_cohomology_matches_plain_rank_computation(cfg):
    fr = random_frame(cfg)
    X = fr.complex
    expected = oracles.betti(X, oracles.char(cfg.field))
    got = betti(X)
    assert {i: n for i, n in expected.items() if n} == got
    # and the structured presentation predicts the same numbers
    assert {i: n for i, n in fr.spheres.items() if n} == got


@given(configs())
def test_representatives_are_independent_cocycles(cfg):
    X = generate_random_complex(cfg)
    H = cohomology(X)
    for i in X.degrees:
        R = H.reps[i]
        assert (X.d(i) @ R).is_zero()
        assert H.classes(i, R) == Matrix.identity(X.field, R.cols)


@given(configs())
def test_induced_map_of_identity(cfg):
    X = generate_random_complex(cfg)
    for i, m in induced_map(identity(X)).items():
        assert m == Matrix.identity(X.field, m.rows)


@given(configs())
def test_induced_map_into_acyclic_is_zero(cfg):
    X = generate_random_complex(cfg)
    f = random_chain_map(X, disk(cfg.field, 0), cfg.rng())
    assert all(m.is_zero() for m in induced_map(f).values())


# ----------------------------------------------------------------------------
# predicates


def test_identity_is_everything():
    f = identity(disk(F5))
    assert is_quasi_iso(f) and is_fibration(f) and is_cofibration(f)


def test_disk_to_zero_is_trivial_fibration():
    D = disk(F5)
    f = zero_map(D, Complex.zero(F5))
    assert is_fibration(f) and is_quasi_iso(f) and not is_cofibration(f)


def test_zero_to_sphere_is_cofibration_only():
    S = sphere(F5)
    f = zero_map(Complex.zero(F5), S)
    assert is_cofibration(f) and not is_quasi_iso(f)


@given(configs())
def test_surjective_qis_generator(cfg):
    s = generate_surjective_qis(cfg)
    assert is_fibration(s.p) and is_quasi_iso(s.p)
    # the kernel is acyclic
    from contrmodel.complex import kernel_complex

    assert betti(kernel_complex(s.p).obj) == {}


# ----------------------------------------------------------------------------
# shift and sums


def test_shift_by_zero():
    X = disk(F5)
    assert shift(X, 0) == X


def test_shift_support():
    Y = shift(disk(F5), -1)
    assert (Y.lo, Y.hi) == (1, 2)


@given(configs())
def test_shift_composition_law(cfg):
    X = generate_random_complex(cfg)
    assert shift(shift(X, -1), 2) == shift(X, 1)
    assert shift(shift(X, 3), -3) == X
    assert validate_complex(shift(X, 1)).ok


@given(configs(), configs())
def test_direct_sum_cohomology(c1, c2):
    X = generate_random_complex(c1)
    Y = generate_random_complex(c2.__class__(c2.seed, c1.field, c2.support, c2.max_dim))
    S = direct_sum(X, Y)
    bx, by, bs = betti(X), betti(Y), betti(S.obj)
    for i in set(bx) | set(by) | set(bs):
        assert bs.get(i, 0) == bx.get(i, 0) + by.get(i, 0)
    assert all(S.obj.dim(i) == X.dim(i) + Y.dim(i) for i in S.obj.degrees)


def test_sum_with_zero():
    X = disk(F5)
    S = direct_sum(X, Complex.zero(F5))
    assert S.obj == X


def test_direct_sum_field_mismatch():
    with pytest.raises(DimensionError):
        direct_sum(disk(F5), disk(F2))


# ----------------------------------------------------------------------------
# pushouts and pullbacks


def test_pushout_along_zero_is_sum():
    P, B = disk(F5), sphere(F5, 1)
    A = Complex.zero(F5)
    po = pushout(zero_map(A, P), zero_map(A, B))
    assert po.obj.dims == direct_sum(P, B).obj.dims


def test_pushout_of_identities():
    A = disk(F5)
    po = pushout(identity(A), identity(A))
    assert po.obj.dims == A.dims
    assert is_quasi_iso(po.g_bar) and is_cofibration(po.g_bar)


@given(configs())
def test_pushout_of_cofibration_is_cofibration(cfg):
    g = generate_injection(cfg)
    A = g.src
    i = random_chain_map(A, generate_random_complex(cfg.__class__(cfg.seed ^ 1, cfg.field, cfg.support, cfg.max_dim)), cfg.rng())
    po = pushout(g, i)
    assert validate_complex(po.obj).ok
    assert is_chain_map(po.g_bar) and is_chain_map(po.i_bar)
    assert po.i_bar @ g == po.g_bar @ i
    assert is_cofibration(po.g_bar)
    # universal property: mediating the legs themselves gives the identity
    m = po.mediate(po.i_bar, po.g_bar)
    assert m == identity(po.obj)


def test_pullback_over_zero_is_product():
    N, P = disk(F5), sphere(F5)
    M = Complex.zero(F5)
    pb = pullback(zero_map(N, M), zero_map(P, M))
    assert pb.obj.dims == direct_sum(N, P).obj.dims


def test_pullback_of_identities():
    N = disk(F5)
    pb = pullback(identity(N), identity(N))
    assert pb.obj.dims == N.dims


@given(configs())
def test_pullback_of_trivial_fibration(cfg):
    s = generate_surjective_qis(cfg)
    p = s.p
    h = random_chain_map(generate_random_complex(cfg.__class__(cfg.seed ^ 7, cfg.field, cfg.support, cfg.max_dim)), p.tgt, cfg.rng())
    pb = pullback(p, h)
    assert validate_complex(pb.obj).ok
    assert p @ pb.h_bar == h @ pb.p_bar
    assert is_fibration(pb.p_bar) and is_quasi_iso(pb.p_bar)
    assert pb.mediate(pb.h_bar, pb.p_bar) == identity(pb.obj)


def test_mediate_rejects_noncommuting_cone():
    N = disk(F5)
    pb = pullback(identity(N), identity(N))
    with pytest.raises(DimensionError):
        pb.mediate(identity(N), zero_map(N, N))


# ----------------------------------------------------------------------------
# path object


def test_path_of_zero():
    assert path_object(Complex.zero(F5)).obj.is_zero()


def test_path_of_sphere():
    P = path_object(sphere(F5))
    assert P.obj.dims == {0: 2, 1: 1}
    assert betti(P.obj) == {0: 1}
    # delta(a, b) = a - b in the third slot
    assert P.obj.d(0) == Matrix(F5, [[1, -1]])


def test_path_projection_surjective_on_disk():
    assert is_fibration(path_object(disk(F5)).proj)


@given(configs())
def test_path_object_properties(cfg):
    B = generate_random_complex(cfg)
    P = path_object(B)
    assert validate_complex(P.obj).ok
    assert is_chain_map(P.incl) and is_quasi_iso(P.incl)
    assert is_chain_map(P.proj) and is_fibration(P.proj)


@given(configs())
def test_path_object_functorial(cfg):
    rng = cfg.rng()
    X = generate_random_complex(cfg)
    Y = generate_random_complex(cfg.__class__(cfg.seed ^ 3, cfg.field, cfg.support, cfg.max_dim))
    f = random_chain_map(X, Y, rng)
    g = random_chain_map(Y, X, rng)
    assert path_map(g @ f) == path_map(g) @ path_map(f)
    assert path_map(identity(X)) == identity(path_object(X).obj)


def test_sdr_as_path_map():
    assert is_chain_map(sdr_as_path_map(trivial_contraction(disk(F5))))
    c = disk_contraction(F5)
    assert is_chain_map(sdr_as_path_map(c))
    broken = SDR(c.iota, c.pi, -c.h)
    assert not is_chain_map(sdr_as_path_map(broken))


@given(configs())
def test_path_exact_sequence(cfg):
    q = generate_surjection(cfg)
    assert check_path_exact_sequence(q).ok


def test_graded_map_block_shape_checked():
    X = disk(F5)
    with pytest.raises(DimensionError):
        GradedMap(X, X, 0, {0: Matrix.identity(F5, 2)})
