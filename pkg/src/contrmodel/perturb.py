"""Second and third basic tricks.

``trick2`` turns an SDR into a contraction with the same ``iota, pi``;
``trick3`` straightens a morphism of acyclic retractions between two
contractions into a morphism of contractions.
"""

from __future__ import annotations

from .complex import GradedMap, graded_commutator, identity
from .errors import InvariantViolation, PreconditionError
from .retract import (
    SDR,
    Contraction,
    Morphism,
    check_ar_morphism,
    check_contraction,
    check_sdr,
)


def trick2(x: SDR, check: bool = True) -> Contraction:
    """Replace ``h`` by ``-D h D d D h D`` where ``D = iota pi - Id``.

    With ``k = D h D`` the new homotopy is ``-k d k``; the identities
    ``-kdk = k + k^2 d`` and ``k^2 d = d k^2`` are verified on the way.
    """
    if check:
        rep = check_sdr(x, check_qis=False)
        if not rep.ok:
            raise PreconditionError("trick2 needs a strong deformation retraction", rep)
    N = x.N
    d = N.d_map
    D = x.projector - identity(N)
    k = D @ x.h @ D
    h_new = -(k @ d @ k)
    k2 = k @ k
    if h_new != k + k2 @ d or k2 @ d != d @ k2:
        raise InvariantViolation("second trick: k^2 d = d k^2 failed")
    return Contraction(x.iota, x.pi, h_new)


def trick2_proof_identities(x: SDR) -> dict[str, bool]:
    """The intermediate identities used to justify :func:`trick2`."""
    N = x.N
    d = N.d_map
    D = x.projector - identity(N)
    k = D @ x.h @ D
    return {
        "dD = Dd": d @ D == D @ d,
        "Dd = dhd": D @ d == d @ x.h @ d,
        "D^2 = -D": D @ D == -D,
        "D iota = 0": (D @ x.iota).is_zero(),
        "pi D = 0": (x.pi @ D).is_zero(),
        "dk + kd = D": graded_commutator(k) == D,
    }


def trick2_functoriality_check(m: Morphism) -> bool:
    """For ``f`` with ``f h = k f`` check that ``k~ f = f h~``."""
    src, tgt = m.src, m.tgt
    if m.f @ src.h != tgt.h @ m.f:
        raise PreconditionError("not a morphism of strong deformation retractions")
    return trick2(tgt).h @ m.f == m.f @ trick2(src).h


def _require_contr(x, role):
    if not isinstance(x, SDR):
        raise PreconditionError(f"{role} diagram carries no homotopy")
    rep = check_contraction(x, check_qis=False)
    if not rep.ok:
        raise PreconditionError(f"{role} diagram is not a contraction", rep)


def trick3(m: Morphism, check: bool = True) -> Morphism:
    """``f - d k f h d``, a morphism of contractions.

    Cross-checked against the equivalent form ``f + dkf - fdh``.
    """
    if check:
        _require_contr(m.src, "source")
        _require_contr(m.tgt, "target")
        if not check_ar_morphism(m):
            raise PreconditionError("trick3 needs a morphism of acyclic retractions")
    f, h, k = m.f, m.src.h, m.tgt.h
    dN, dB = m.src.N.d_map, m.tgt.N.d_map
    f_new = f - dB @ k @ f @ h @ dN
    alt = f + dB @ k @ f - f @ dN @ h
    if f_new != alt:
        raise InvariantViolation("third trick: the two closed forms disagree")
    return Morphism(m.src, m.tgt, f_new)


def nullhomotopy_witness(m: Morphism, m_tilde: Morphism) -> GradedMap:
    """``s = k f h d`` with ``f - f~ = ds + sd``."""
    f, h, k = m.f, m.src.h, m.tgt.h
    s = k @ f @ h @ m.src.N.d_map
    if f - m_tilde.f != graded_commutator(s):
        raise InvariantViolation("f - f~ is not ds + sd for s = kfhd")
    return s
