import random
from fractions import Fraction

import pytest

from lndkit import Derivation, PresentedAlgebra, cylinder, lift
from lndkit.errors import NotASlice, NotVerifiedLND, ReservedVariable
from lndkit.poly import Polynomial, parse_poly

from helpers import (
    corpus,
    plane_algebra,
    plane_ddx,
    rand_poly,
    rand_rational,
    w1_algebra,
    w1_canonical,
)


@pytest.fixture(scope="module")
def w1():
    return w1_algebra()


@pytest.fixture(scope="module")
def w1_lnd(w1):
    return w1_canonical(w1)


@pytest.fixture(scope="module")
def w1_cyl(w1):
    return cylinder(w1)


@pytest.fixture(scope="module")
def ddu(w1_cyl):
    images = [Polynomial.zero(4)] * 3 + [Polynomial.constant(4, 1)]
    return Derivation(w1_cyl, images)


# ---- apply -------------------------------------------------------------


def test_apply_kills_relation_representative(w1, w1_lnd):
    assert w1_lnd.apply(parse_poly("x*y - z^2 + 1", w1.vars)).is_zero()


def test_apply_slice_variable(ddu, w1_cyl):
    assert ddu.apply(w1_cyl.parse("u")) == Polynomial.constant(4, 1)


def test_apply_constant_is_zero(w1_lnd, w1):
    assert w1_lnd.apply(Polynomial.constant(w1.arity, 5)).is_zero()


def test_leibniz_on_corpus():
    rng = random.Random(17)
    for name, algebra, D in corpus():
        for _ in range(30):
            f = rand_poly(rng, algebra.arity)
            g = rand_poly(rng, algebra.arity)
            lhs = D.apply(algebra.normal(f * g))
            rhs = algebra.normal(f * D.apply(g) + g * D.apply(f))
            assert lhs == rhs, name


# ---- well-definedness -------------------------------------------------------


def test_w1_lnd_well_defined(w1_lnd):
    ok, cert = w1_lnd.is_well_defined()
    assert ok
    assert all(image.is_zero() for _, image in cert)


def test_suspension_lnd_well_defined():
    vars = ["z", "y1", "y2"]
    algebra = PresentedAlgebra(vars, [parse_poly("y1*y2 - z^2 + 1", vars)])
    delta = Derivation.from_strings(
        algebra, {"z": "y2", "y1": "2*z", "y2": "0"}
    )
    assert delta.is_well_defined()[0]


def test_not_well_defined_counterexample():
    algebra = PresentedAlgebra(["x", "y"], [parse_poly("x^2", ["x", "y"])])
    D = Derivation.from_strings(algebra, {"x": "1", "y": "0"})
    ok, cert = D.is_well_defined()
    assert not ok
    # D(x^2) = 2x, which is nonzero modulo (x^2)
    assert cert[0][1] == algebra.parse("2*x")


# ---- nilpotency -------------------------------------------------------------


def test_slice_derivation_verdict(ddu):
    verdict = ddu.nilpotency_check(4)
    assert verdict.verified and verdict.max_order == 2


def test_w1_lnd_verdict(w1_lnd):
    verdict = w1_lnd.nilpotency_check(8)
    assert verdict.verified and verdict.max_order <= 8


def test_euler_derivation_witness():
    algebra = PresentedAlgebra(["x"])
    euler = Derivation.from_strings(algebra, {"x": "x"})
    verdict = euler.nilpotency_check(10)
    assert verdict.status == "not_nilpotent"
    assert verdict.witness_var == "x"
    assert verdict.witness_order == 2


def test_inconclusive_without_witness():
    # x -> x^2 grows without a proportional repeat
    algebra = PresentedAlgebra(["x"])
    D = Derivation.from_strings(algebra, {"x": "x^2"})
    assert D.nilpotency_check(5).status == "inconclusive"


# ---- slices -------------------------------------------------------------


def test_check_slice(ddu, w1_cyl, w1_lnd, w1):
    assert ddu.check_slice(w1_cyl.parse("u"))
    assert ddu.check_slice(w1_cyl.parse("u + y"))
    assert not w1_lnd.check_slice(w1.parse("z"))
    assert w1_lnd.apply(w1.parse("z")) == w1.parse("x")


# ---- exponentials -------------------------------------------------------------


def test_exp_formal_binomial():
    Kx = PresentedAlgebra(["x"])
    D = Derivation.from_strings(Kx, {"x": "1"})
    result, ext = D.exp_action(Kx.parse("x^2"), None)
    assert result == parse_poly("x^2 + 2*_s*x + _s^2", ["x", "_s"])


def test_exp_fixes_kernel(w1_lnd, w1):
    f = w1.parse("x^3 - 2*x")
    assert w1_lnd.kernel_membership(f)
    assert w1_lnd.exp_action(f, Fraction(3, 2)) == f


def test_exp_group_law_w1(w1_lnd, w1):
    rng = random.Random(23)
    for _ in range(25):
        s, t = rand_rational(rng), rand_rational(rng)
        for j in range(w1.arity):
            xj = Polynomial.variable(w1.arity, j)
            both = w1_lnd.exp_action(xj, s + t)
            composed = w1_lnd.exp_action(w1_lnd.exp_action(xj, t), s)
            assert both == composed


def test_exp_homomorphism_on_corpus():
    rng = random.Random(29)
    for name, algebra, D in corpus():
        for _ in range(15):
            f = rand_poly(rng, algebra.arity)
            g = rand_poly(rng, algebra.arity)
            s = rand_rational(rng)
            lhs = D.exp_action(algebra.normal(f * g), s)
            rhs = algebra.normal(D.exp_action(f, s) * D.exp_action(g, s))
            assert lhs == rhs, name


def test_exp_requires_verified_lnd():
    algebra = PresentedAlgebra(["x"])
    euler = Derivation.from_strings(algebra, {"x": "x"})
    with pytest.raises(NotVerifiedLND):
        euler.exp_action(algebra.parse("x"), Fraction(1))


def test_exp_reserved_variable_collision():
    algebra = PresentedAlgebra(["x", "_s"])
    D = Derivation.from_strings(algebra, {"x": "1", "_s": "0"})
    with pytest.raises(ReservedVariable):
        D.exp_action(algebra.parse("x"), None)


def test_exp_leaves_relation_invariant(w1_lnd, w1):
    # the relation ideal is stable under the one-parameter action
    rel = w1.relations[0]
    result, ext = w1_lnd.exp_action(rel, None)
    assert result.is_zero()


# ---- kernels -------------------------------------------------------------


def test_kernel_membership(ddu, w1_cyl, w1_lnd, w1):
    assert w1_lnd.kernel_membership(w1.parse("x"))
    assert ddu.kernel_membership(w1_cyl.parse("x*y^2 - z"))
    assert not ddu.kernel_membership(w1_cyl.parse("u"))


def test_kernel_is_subalgebra(w1_lnd, w1):
    a, b = w1.parse("x"), w1.parse("x^2 - 3*x")
    assert w1_lnd.kernel_membership(a + b)
    assert w1_lnd.kernel_membership(a * b)


def test_kernel_projection_strips_slice_part(ddu, w1_cyl):
    u = w1_cyl.parse("u")
    f = w1_cyl.parse("y*u + y^2")
    assert ddu.kernel_projection(u, f) == w1_cyl.parse("y^2")
    assert ddu.kernel_projection(u, u).is_zero()


def test_kernel_projection_fixes_kernel(ddu, w1_cyl):
    f = w1_cyl.parse("x^2*z - y")
    assert ddu.kernel_projection(w1_cyl.parse("u"), f) == w1_cyl.normal(f)


def test_kernel_projection_requires_slice(w1_lnd, w1):
    with pytest.raises(NotASlice):
        w1_lnd.kernel_projection(w1.parse("z"), w1.parse("y"))


def test_slice_reconstruction_identity():
    # f = sum_i rho(D^i(f)/i!) * s^i for D = d/dx, s = x on K[x,y]
    rng = random.Random(31)
    algebra = plane_algebra()
    D = plane_ddx(algebra)
    s = algebra.parse("x")
    from math import factorial

    for _ in range(40):
        f = rand_poly(rng, 2, max_deg=4, max_terms=4)
        total = Polynomial.zero(2)
        for i, df in enumerate(D.iterate(f)):
            rho = D.kernel_projection(s, df.scale(Fraction(1, factorial(i))))
            assert D.kernel_membership(rho)
            total = total + rho * s**i
        assert total == f


# ---- image ideals and cylinders ------------------------------------------


def test_image_ideal_w1(w1_lnd, w1):
    gens = w1_lnd.image_ideal().generators
    assert set(gens) == {w1.parse("2*z"), w1.parse("x")}


def test_image_ideal_zero_derivation(w1):
    D = Derivation(w1, [Polynomial.zero(3)] * 3)
    assert D.image_ideal().generators == ()


def test_image_ideal_slice_derivation(ddu):
    assert ddu.image_ideal().generators == (Polynomial.constant(4, 1),)


def test_cylinder_appends_fresh_variable():
    Kz = PresentedAlgebra(["z"])
    cz = cylinder(Kz)
    assert cz.vars == ("z", "u")
    assert cz.relations == ()
    again = cylinder(cz)
    assert again.vars == ("z", "u", "u1")


def test_lift_multiplies_by_u_power():
    Kz = PresentedAlgebra(["z"])
    ddz = Derivation.from_strings(Kz, {"z": "1"})
    cz = cylinder(Kz)
    lifted = lift(ddz, 2, cz)
    assert lifted.apply(cz.parse("z")) == cz.parse("u^2")
    assert lifted.apply(cz.parse("u")).is_zero()


def test_lift_preserves_verified_status(w1_lnd):
    assert w1_lnd.nilpotency_check(8).verified
    lifted = lift(w1_lnd, 3)
    assert lifted.nilpotency_check(8).verified
