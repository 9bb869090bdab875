"""Hypothesis strategies producing harness configurations and small fixtures."""

from hypothesis import strategies as st

from contrmodel.complex import Complex
from contrmodel.harness import GenConfig
from contrmodel.linalg import GF, QQ, Matrix

FIELDS = [GF(2), GF(3), GF(5), QQ]


def configs(fields=FIELDS, support=(-2, 2), max_dim=4):
    return st.builds(
        GenConfig,
        seed=st.integers(0, 2**64 - 1),
        field=st.sampled_from(fields),
        support=st.just(support),
        max_dim=st.just(max_dim),
    )


def sphere(field, i=0, n=1):
    return Complex(field, {i: n})


def disk(field, n=1):
    """Generators in degrees n-1 and n, d = [1]."""
    return Complex(field, {n - 1: 1, n: 1}, {n - 1: Matrix.identity(field, 1)})


def small(cfg, seed_offset):
    """A sibling configuration with the same field and sizes."""
    return cfg.__class__(cfg.seed ^ seed_offset, cfg.field, cfg.support, cfg.max_dim, cfg.density)


def frames(cfg, n):
    from contrmodel.harness import contraction_frame

    rng = cfg.rng()
    return rng, [contraction_frame(cfg, rng) for _ in range(n)]
