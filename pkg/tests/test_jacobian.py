"""Gradient-ideal analysis: Hilbert window, Tjurina numbers, relations."""

import pytest

from conicfree.jacobian import (
    AtLeast,
    JacobianContext,
    SyzygyWitness,
    UnstableWindowError,
    hilbert_profile,
    mdr,
    milnor_dim,
    syzygy_space_dimension,
    total_tjurina,
    verify_witness,
)
from conicfree.linalg import EXACT_POLICY
from conicfree.poly import HomogeneousPolynomial, parse_polynomial

PERSSON = "(x^2+y^2-z^2)*(2*x^2+y^2+2*x*z)*(2*x^2+y^2-2*x*z)"
CELAL = "(-3*x^2+x*y+y*z+z*x)*(-3*y^2+x*y+y*z+z*x)*(-3*z^2+x*y+y*z+z*x)"


def _ctx(text):
    return JacobianContext.for_curve(parse_polynomial(text))


def test_milnor_dim_smooth_conic():
    ctx = _ctx("x^2+y^2-z^2")
    assert milnor_dim(ctx, 2) == 0
    assert milnor_dim(ctx, 1) == 0
    assert milnor_dim(ctx, 0) == 1


def test_milnor_dim_stabilizes_at_local_tjurina_sum():
    # two tangential A7 points (tau 7 each), one tacnode (3), two nodes (1+1)
    ctx = _ctx(PERSSON)
    assert milnor_dim(ctx, 14) == 19
    ctx2 = _ctx(CELAL)
    assert milnor_dim(ctx2, 14) == 19


def test_total_tjurina_examples():
    assert total_tjurina(_ctx(PERSSON)) == 19
    # x^k*y^k + z^(2k) with k = 2: two points with local number 3 each
    assert total_tjurina(_ctx("x^2*y^2+z^4")) == 6
    # moustache curve with m = 2: (2m-1)^2 - (2m-2) = 7
    assert total_tjurina(_ctx("(x*z+x^2+y^2)*(x*z+2*x^2+y^2)")) == 7
    # octic with four A7 and eight nodes
    assert (
        total_tjurina(
            _ctx(
                "(x^2+y^2-z^2)*(2*x^2+y^2+2*x*z)*(x^2+y^2+2*x*z)"
                "*(4*x^2+6*y^2+4*x*z-8*z^2)"
            )
        )
        == 36
    )


def test_total_tjurina_smooth_signature():
    assert total_tjurina(_ctx("x^2+y^2-z^2")) == 0
    profile = hilbert_profile(_ctx("x^2+y^2-z^2"))
    assert profile.smooth
    assert [v for _, v in profile.window] == [1, 0, 0]


def test_total_tjurina_unstable_on_nonreduced():
    with pytest.raises(UnstableWindowError):
        total_tjurina(_ctx("x^2*y"))


def test_window_equal_values_on_singular_curves():
    for text in (PERSSON, CELAL, "x^2*y^2+z^4"):
        profile = hilbert_profile(_ctx(text))
        values = [v for _, v in profile.window]
        assert values[0] == values[1] == values[2]
        assert profile.stabilized_value == values[0]


def test_mdr_moustache_degree_one():
    for m in (2, 3):
        comps = "*".join(f"(x*z+{i}*x^2+y^2)" for i in range(1, m + 1))
        w = mdr(_ctx(comps))
        assert isinstance(w, SyzygyWitness) and w.r == 1


def test_mdr_pencil_witness_is_the_symmetric_triple():
    fF = parse_polynomial("3*x^2+y^2-4*z^2")
    gG = parse_polynomial("x^2+3*y^2-4*z^2")
    prod = fF * gG * (fF + gG) * (fF + gG.scale(2))
    ctx = JacobianContext.for_curve(prod)
    w = mdr(ctx)
    assert isinstance(w, SyzygyWitness) and w.r == 2
    assert w.a == parse_polynomial("y*z")
    assert w.b == parse_polynomial("x*z")
    assert w.c == parse_polynomial("x*y")


def test_mdr_smooth_conic_exhausts_search():
    w = mdr(_ctx("x^2+y^2-z^2"))
    assert w == AtLeast(1)


def test_mdr_minimality_reasserted():
    ctx = _ctx(PERSSON)
    w = mdr(ctx)
    assert isinstance(w, SyzygyWitness) and w.r == 2
    for r in range(w.r):
        assert syzygy_space_dimension(ctx, r) == 0


def test_syzygy_space_dimension_monotone_from_mdr():
    ctx = _ctx(CELAL)
    w = mdr(ctx)
    dims = [syzygy_space_dimension(ctx, r) for r in range(w.r, ctx.d - 1)]
    assert all(a <= b for a, b in zip(dims, dims[1:]))
    assert dims[0] >= 1


def test_verify_witness_examples():
    ctx = _ctx("x^2*y^2+z^4")
    x = HomogeneousPolynomial.variable("x")
    y = HomogeneousPolynomial.variable("y")
    zero1 = HomogeneousPolynomial.zero(1)
    good = SyzygyWitness(r=1, a=x, b=-y, c=zero1)
    assert verify_witness(ctx, good)

    fF = parse_polynomial("3*x^2+y^2-4*z^2")
    gG = parse_polynomial("x^2+3*y^2-4*z^2")
    prod = fF * gG * (fF + gG) * (fF + gG.scale(2))
    ctx2 = JacobianContext.for_curve(prod)
    triple = SyzygyWitness(
        r=2,
        a=parse_polynomial("y*z"),
        b=parse_polynomial("x*z"),
        c=parse_polynomial("x*y"),
    )
    assert verify_witness(ctx2, triple)

    ctx3 = _ctx(PERSSON)
    one = HomogeneousPolynomial(0, {(0, 0, 0): 1})
    zero0 = HomogeneousPolynomial.zero(0)
    assert not verify_witness(ctx3, SyzygyWitness(r=0, a=one, b=zero0, c=zero0))


def test_hilbert_function_matches_resolution_prediction():
    """Graded dimensions against the closed homological formulas.

    A free curve with exponents (d1, d2 = d-1-d1) has
    dim M(f)_t = C(t) - 3C(t-d+1) + C(t-d+1-d1) + C(t-d+1-d2),
    and a nearly free one (d1, d2 = d3 = d-d1, e1 = d+d2) has
    dim M(f)_t = C(t) - 3C(t-d+1) + C(t-d+1-d1) + 2C(t-d+1-d2) - C(t-e1),
    writing C(s) for the dimension of the degree-s graded piece.
    """
    from conicfree.poly import degree_dimension as C

    ctx = _ctx(PERSSON)  # free, d = 6, exponents (2, 3)
    d, d1 = 6, 2
    d2 = d - 1 - d1
    for t in range(16):
        predicted = C(t) - 3 * C(t - d + 1) + C(t - d + 1 - d1) + C(t - d + 1 - d2)
        assert milnor_dim(ctx, t) == predicted, t

    ctx = _ctx(
        "(x^2+y^2-z^2)*(2*x^2+y^2+2*x*z)*(x^2+y^2+2*x*z)"
        "*(4*x^2+6*y^2+4*x*z-8*z^2)"
    )  # nearly free, d = 8, d1 = 3
    d, d1 = 8, 3
    d2 = d - d1
    e1 = d + d2
    for t in range(22):
        predicted = (
            C(t)
            - 3 * C(t - d + 1)
            + C(t - d + 1 - d1)
            + 2 * C(t - d + 1 - d2)
            - C(t - e1)
        )
        assert milnor_dim(ctx, t) == predicted, t


def test_exact_policy_agrees_with_certified():
    ctx = _ctx(PERSSON)
    assert total_tjurina(ctx, EXACT_POLICY) == total_tjurina(ctx) == 19
    w1, w2 = mdr(ctx, EXACT_POLICY), mdr(ctx)
    assert isinstance(w1, SyzygyWitness) and isinstance(w2, SyzygyWitness)
    assert w1.r == w2.r == 2


def test_context_rejects_degenerate_input():
    with pytest.raises(ValueError):
        JacobianContext.for_curve(parse_polynomial("x"))
    with pytest.raises(ValueError):
        JacobianContext.for_curve(HomogeneousPolynomial.zero(3))
