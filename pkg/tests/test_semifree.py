import pytest
from hypothesis import given

from gen import configs, disk, small, sphere
from contrmodel.complex import (
    Complex,
    identity,
    is_chain_map,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
    pushout,
    validate_complex,
    zero_map,
)
from contrmodel.errors import FactorizationError, PreconditionError
from contrmodel.harness import (
    generate_injection,
    generate_random_complex,
    generate_surjective_qis,
    random_chain_map,
)
from contrmodel.linalg import GF, QQ, Matrix
from contrmodel.retract import check_contraction
from contrmodel.semifree import (
    LiftingProblem,
    SemifreeExtension,
    default_stage_cap,
    exhibit_retract,
    factor_coch,
    factor_coch_c_fw,
    factor_coch_cw_f,
    lift,
    lift_linear,
    lift_semifree,
    semifree_from_injective,
    solve_graded,
)

F2, F3, F5 = GF(2), GF(3), GF(5)

semifree_cfgs = configs(fields=[F3, F5, QQ], support=(-2, 1), max_dim=3)


def _pair(cfg):
    rng = cfg.rng()
    C = generate_random_complex(cfg, rng)
    D = generate_random_complex(small(cfg, 11), None)
    return C, D, random_chain_map(C, D, rng)


# ----------------------------------------------------------------------------
# (cofibration, trivial fibration)


def test_c_fw_of_zero_map_between_zero_complexes():
    Z = Complex.zero(F5)
    ext, g = factor_coch_c_fw(zero_map(Z, Z))
    assert ext.target.is_zero() and all(not st for st in ext.cell_counts())


def test_c_fw_zero_to_sphere_f2():
    Z, S = Complex.zero(F2), sphere(F2)
    ext, g = factor_coch_c_fw(zero_map(Z, S))
    counts = ext.cell_counts()
    assert counts[0] == {0: 1}  # one cocycle generator onto Z^0(D)
    assert counts[1] == {0: 1}  # one generator onto D^0
    assert sum(n for st in counts[2:] for n in st.values()) == 1  # the kernel is killed once
    assert is_fibration(g) and is_quasi_iso(g)
    assert ext.check().ok


def test_c_fw_identity():
    C = disk(F5)
    ext, g = factor_coch_c_fw(identity(C))
    assert g @ ext.f == identity(C)
    assert is_cofibration(ext.f) and is_fibration(g) and is_quasi_iso(g)


@given(semifree_cfgs)
def test_c_fw_properties(cfg):
    C, D, alpha = _pair(cfg)
    ext, g = factor_coch_c_fw(alpha)
    assert validate_complex(ext.target).ok
    assert ext.check().ok
    assert g @ ext.f == alpha
    assert is_cofibration(ext.f) and is_fibration(g) and is_quasi_iso(g)
    assert len(ext.stages) <= default_stage_cap(C, D)


def test_stage_cap_is_enforced():
    Z, S = Complex.zero(F2), sphere(F2)
    with pytest.raises(FactorizationError) as err:
        factor_coch_c_fw(zero_map(Z, S), max_stages=1)
    assert err.value.partial is not None


# ----------------------------------------------------------------------------
# (trivial cofibration, fibration)


def test_cw_f_identity():
    C = disk(F5)
    j, q = factor_coch_cw_f(identity(C))
    assert q @ j.f == identity(C)
    assert is_fibration(q)


def test_cw_f_to_zero():
    C = sphere(F5)
    j, q = factor_coch_cw_f(zero_map(C, Complex.zero(F5)))
    assert j.target.dims == C.dims and is_fibration(q)


@given(semifree_cfgs)
def test_cw_f_properties(cfg):
    _, _, alpha = _pair(cfg)
    j, q = factor_coch_cw_f(alpha)
    assert q @ j.f == alpha
    assert is_cofibration(j.f) and is_quasi_iso(j.f) and is_fibration(q)
    assert j.check().ok
    assert check_contraction(j.contraction()).ok
    assert j.to_semifree().check().ok


def test_factor_dispatch_rejects_unknown_flavor():
    with pytest.raises(ValueError):
        factor_coch(identity(disk(F5)), "both")


# ----------------------------------------------------------------------------
# lifting


def _square(cfg):
    """Cells from a c-fw factorization against a split surjective quasi-iso."""
    rng = cfg.rng()
    C, D, alpha = _pair(cfg)
    ext, _ = factor_coch_c_fw(alpha)
    sq = generate_surjective_qis(small(cfg, 5), None)
    gmap = random_chain_map(ext.target, sq.p.tgt, rng)
    K = sq.kernel_inc.src
    f = sq.section @ gmap @ ext.f + sq.kernel_inc @ random_chain_map(C, K, rng)
    return ext, LiftingProblem(ext.f, f, sq.p, gmap)


def test_lift_along_identity_with_no_cells():
    C = disk(F5)
    ext = SemifreeExtension(identity(C), ())
    f = identity(C)
    prob = LiftingProblem(identity(C), f, identity(C), identity(C))
    assert lift_semifree(prob, ext) == f


def test_lift_one_cell_against_disk_to_zero():
    # B = C (+) one degree-0 cell; p: D(1) -> 0 is a trivial fibration
    C = Complex.zero(F5)
    B = sphere(F5)
    ext = SemifreeExtension(zero_map(C, B), ({0: Matrix.identity(F5, 1)},))
    X = disk(F5)
    prob = LiftingProblem(ext.f, zero_map(C, X), zero_map(X, C), zero_map(B, C))
    h = lift_semifree(prob, ext)
    assert prob.is_lift(h) and is_chain_map(h)


@given(semifree_cfgs)
def test_lift_semifree_and_linear_agree(cfg):
    ext, prob = _square(cfg)
    assert prob.commutes()
    h = lift_semifree(prob, ext)
    assert prob.is_lift(h)
    k = lift_linear(prob)
    assert k is not None and prob.is_lift(k)


def test_lift_semifree_requires_trivial_fibration():
    S = sphere(F5)
    Z = Complex.zero(F5)
    ext = SemifreeExtension(zero_map(Z, S), ({0: Matrix.identity(F5, 1)},))
    p = zero_map(S, Z)  # surjective but not a quasi-iso
    prob = LiftingProblem(ext.f, zero_map(Z, S), p, zero_map(S, Z))
    with pytest.raises(PreconditionError):
        lift_semifree(prob, ext)


def test_lift_linear_forced_solutions():
    C = disk(F5)
    f = identity(C)
    prob = LiftingProblem(identity(C), f, zero_map(C, Complex.zero(F5)), zero_map(C, Complex.zero(F5)))
    assert lift_linear(prob) == f
    g = identity(C)
    prob = LiftingProblem(zero_map(Complex.zero(F5), C), zero_map(Complex.zero(F5), C), identity(C), g)
    assert lift_linear(prob) == g


def test_lift_linear_reports_inconsistency():
    # Id of S(0) cannot factor through the zero complex
    S = sphere(F5)
    Z = Complex.zero(F5)
    prob = LiftingProblem(zero_map(Z, S), zero_map(Z, Z), zero_map(Z, S), identity(S))
    assert lift_linear(prob) is None


@given(configs(fields=[F3, F5], support=(-1, 1), max_dim=3))
def test_cw_f_cells_lift_against_fibrations(cfg):
    _, _, alpha = _pair(cfg)
    j, q = factor_coch_cw_f(alpha)
    # lift j against q itself: the square (alpha, identity) always commutes
    prob = LiftingProblem(j.f, j.f, q, q)
    h = lift(prob, j)
    assert prob.is_lift(h)


@given(semifree_cfgs)
def test_transport_through_pushout(cfg):
    C, D, alpha = _pair(cfg)
    ext, _ = factor_coch_c_fw(alpha)
    other = random_chain_map(C, generate_random_complex(small(cfg, 9)), cfg.rng())
    po = pushout(ext.f, other)
    moved = ext.transport(po)
    assert moved.check().ok
    assert moved.cell_counts() == ext.cell_counts()


# ----------------------------------------------------------------------------
# graded solver and retracts


@given(semifree_cfgs)
def test_solve_graded_chain_maps(cfg):
    C, D, alpha = _pair(cfg)
    sol = solve_graded(C, D, 0)
    assert sol.particular is not None and sol.particular.is_zero()
    for m in sol.homogeneous:
        assert is_chain_map(m)


def test_exhibit_retract_identity():
    C = disk(F5)
    pres = exhibit_retract(identity(C))
    assert pres.check().ok


def test_exhibit_retract_zero_to_sphere():
    pres = exhibit_retract(zero_map(Complex.zero(F5), sphere(F5)))
    assert pres.check().ok
    assert pres.retraction @ pres.section == identity(sphere(F5))


@given(configs(fields=[F3], support=(-2, 1), max_dim=4))
def test_exhibit_retract_random_injections(cfg):
    g = generate_injection(cfg)
    pres = exhibit_retract(g)
    assert pres.check().ok
    assert semifree_from_injective(g).check().ok


def test_exhibit_retract_needs_injective():
    C = sphere(F5)
    with pytest.raises(PreconditionError):
        exhibit_retract(zero_map(C, Complex.zero(F5)))
