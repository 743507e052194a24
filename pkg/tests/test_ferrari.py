import pytest
from hypothesis import given, strategies as st

from adecas.cases import PTERM_SOURCE, make_case
from adecas.ferrari import (
    PTERM_RING,
    Superpotential,
    ak_coordinate_change_identity,
    auxiliary_coordinates,
    bundle_change_transform,
    case_superpotential,
    contributes,
    field_ring,
    hessian_corank,
    integrate_pterm,
    parse_pterm,
    perturbation_from_superpotential,
    polar_constraints,
    satisfies_weights,
    solve_weights,
    superpotential_from_geometric,
    xy_swap,
)
from adecas.polyring import Polynomial, VarTable, qi

from strategies import rationals

XY = field_ring(2)
x, y = XY.gens()


def W2(p):
    return Superpotential(p, 2)


def nine_cases():
    out = []
    for name in PTERM_SOURCE:
        if name == "A_k":
            out += [make_case(name, k) for k in (1, 2, 3, 4)]
        elif name == "D_k":
            out += [make_case(name, k) for k in (2, 3, 4)]
        else:
            out.append(make_case(name))
    return out


class TestResidue:
    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_one_matrix(self, k):
        E = Polynomial(PTERM_RING, {(1, k + 1): qi(2, 0) / (k + 1)})
        W = superpotential_from_geometric(E, 1)
        assert W.W == field_ring(1).monomial([k + 1], qi(2, 0) / (k + 1))

    def test_zero(self):
        assert superpotential_from_geometric(PTERM_RING.zero(), 2).W.is_zero()

    @pytest.mark.parametrize("k", [1, 3])
    def test_two_matrix(self, k):
        E = Polynomial(PTERM_RING, {(2, k + 1): qi(1, 0) / (k + 1)})
        assert superpotential_from_geometric(E, 2).W == x ** (k + 1) / (k + 1)


class TestPerturbation:
    @pytest.mark.parametrize("k", [1, 2, 4])
    def test_a_k(self, k):
        W = W2(x ** (k + 1) / (k + 1) + y * y / 2)
        assert perturbation_from_superpotential(W) == parse_pterm(f"g^2*w1^{k} + w1")

    def test_dhat(self):
        assert perturbation_from_superpotential(W2(x * y * y)) == parse_pterm("w1^2")

    def test_zero(self):
        assert perturbation_from_superpotential(W2(XY.zero())).is_zero()

    def test_three_fields_rejected(self):
        with pytest.raises(ValueError):
            perturbation_from_superpotential(Superpotential(field_ring(3).var("x1"), 3))

    @pytest.mark.parametrize("j,k", [(j, k) for j in range(7) for k in range(7) if 1 <= j + k <= 6])
    def test_round_trip_monomials(self, j, k):
        W = W2(x ** j * y ** k)
        back = superpotential_from_geometric(integrate_pterm(perturbation_from_superpotential(W)), 2)
        assert back.W == W.W

    @given(st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda t: 1 <= sum(t) <= 6), rationals, max_size=5))
    def test_round_trip_sums(self, terms):
        W = W2(Polynomial(XY, terms))
        back = superpotential_from_geometric(integrate_pterm(perturbation_from_superpotential(W)), 2)
        assert back.W == W.W


def brute_contributes(n, m, M):
    """Residue of gamma^n w1^(m+1)/(m+1) on the section w1 = sum x_i gamma^(i-1)."""
    names = [f"x{i}" for i in range(1, M + 1)]
    ring = VarTable(["g", *names], invertible=["g"])
    g = ring.var("g")
    section = ring.zero()
    for i, name in enumerate(names):
        section = section + ring.var(name) * g ** i
    E = g ** n * section ** (m + 1)
    return not E.laurent_coeff("g", M).is_zero()


class TestContributes:
    def test_examples(self):
        assert contributes(1, 5, 1)
        assert not contributes(3, 2, 2)
        assert contributes(0, 1, 2)

    @pytest.mark.parametrize("M", [1, 2])
    def test_brute_force(self, M):
        for n in range(-6, 4):
            for m in range(0, 7):
                assert contributes(n, m, M) == brute_contributes(n, m, M), (n, m, M)

    @given(st.integers(-6, 3), st.integers(0, 6))
    def test_non_contributing_terms_are_invisible(self, n, m):
        base = parse_pterm("g^2*w1^3 + w1")
        extra = Polynomial(PTERM_RING, {(n, m): 1})
        W0 = superpotential_from_geometric(integrate_pterm(base), 2).W
        W1 = superpotential_from_geometric(integrate_pterm(base + extra), 2).W
        assert (W0 == W1) == (not contributes(n, m, 2))


class TestSwap:
    def test_examples(self):
        assert xy_swap(parse_pterm("g^2*w1")) == parse_pterm("w1")
        assert xy_swap(parse_pterm("g*w1^2")) == parse_pterm("w1^2")
        assert xy_swap(PTERM_RING.zero()).is_zero()

    @given(st.dictionaries(st.tuples(st.integers(-6, 2), st.integers(0, 6)).filter(lambda t: 1 - t[1] <= t[0]), rationals, max_size=5))
    def test_involution_and_exchanges_fields(self, terms):
        p = Polynomial(PTERM_RING, terms)
        assert xy_swap(xy_swap(p)) == p
        W = superpotential_from_geometric(integrate_pterm(p), 2).W
        Ws = superpotential_from_geometric(integrate_pterm(xy_swap(p)), 2).W
        assert Ws == W.substitute({"x": y, "y": x})


class TestBundleChange:
    def test_m2_r1(self):
        bc = bundle_change_transform(2, 1)
        assert bc.W.W == x * x / 2 and bc.bundle_after == (0, -2) and bc.corank == 1

    def test_m2_r0(self):
        bc = bundle_change_transform(2, 0)
        assert bc.W.W == x * y and bc.bundle_after == (-1, -1) and hessian_corank(bc.W) == 0

    def test_r_equals_m(self):
        bc = bundle_change_transform(3, 3)
        assert bc.W.W.is_zero() and bc.bundle_after == bc.bundle_before

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            bundle_change_transform(2, 3)

    @pytest.mark.parametrize("M,r", [(M, r) for M in range(1, 5) for r in range(-M, M + 1)])
    def test_identities_and_corank(self, M, r):
        bc = bundle_change_transform(M, r)
        assert bc.verified
        assert bc.bundle_after == (r - 1, -r - 1)
        assert hessian_corank(bc.W) == abs(r)


class TestHessian:
    def test_zero(self):
        assert hessian_corank(W2(XY.zero())) == 2

    def test_half_square(self):
        assert hessian_corank(W2(x * x / 2)) == 1

    def test_off_origin(self):
        assert hessian_corank(W2(x ** 3 + y * y), [1, 0]) == 0


class TestWeights:
    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_a_k(self, k):
        paper = [k - 1, k + 1, 2, 1 - k, 2, 3 * k - 1]
        g = 2 if k % 2 else 1
        assert solve_weights(parse_pterm(f"g^2*w1^{k} + w1")) == [tuple(v // g for v in paper)]

    def test_e6(self):
        assert solve_weights(parse_pterm("b*w1^2 + g^2*w1^3")) == [(1, 4, 7, -1, 3, 10)]

    @given(st.integers(-5, 10))
    def test_ahat_family(self, d):
        pt = parse_pterm("g^2*w1")
        basis = solve_weights(pt)
        assert len(basis) == 2
        assert satisfies_weights(pt, (1, d + 1, d - 2, -1, d, d + 1))

    @given(st.integers(-5, 5), st.integers(-5, 5))
    def test_lattice_points_satisfy(self, a, b):
        for name in ("Ahat", "Dhat", "Ehat", "Ohat"):
            case = make_case(name)
            basis = solve_weights(case)
            coeffs = [a, b, 1][: len(basis)]
            v = tuple(sum(c * w[i] for c, w in zip(coeffs, basis)) for i in range(6))
            assert satisfies_weights(case.pterm, v)


class TestPolar:
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_d(self, k):
        _, c2, c1 = polar_constraints(make_case("D_k", k))
        X, Y = c2.ring.gens()
        assert c2 == X ** k + Y * Y and c1 == 2 * X * Y

    def test_e7(self):
        _, c2, c1 = polar_constraints(make_case("E7"))
        X, Y = c2.ring.gens()
        assert c2 == 3 * X * X * Y and c1 == X ** 3 + Y * Y

    def test_ohat(self):
        _, c2, c1 = polar_constraints(make_case("Ohat"))
        assert c2.is_zero() and c1.is_zero()

    @pytest.mark.parametrize("case", nine_cases(), ids=lambda c: c.name)
    def test_gradient_law(self, case):
        W = case_superpotential(case).W
        _, c2, c1 = polar_constraints(case)
        assert c2 == W.diff("x").to_ring(c2.ring)
        assert c1 == W.diff("y").to_ring(c1.ring)


class TestCoordinateChanges:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_a_k_beyond_linear(self, k):
        assert ak_coordinate_change_identity(k)

    @pytest.mark.parametrize("case", [c for c in nine_cases() if not c.pterm.is_zero()], ids=lambda c: c.name)
    def test_auxiliary(self, case):
        assert auxiliary_coordinates(case)[-1]
