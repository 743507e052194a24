from itertools import product

import pytest
from hypothesis import given, strategies as st

from adecas.blowdown import (
    BETA_RING,
    RING,
    Fraction,
    SearchState,
    TransitionIdeal,
    Unsolved,
    build_ideal,
    chart_roundtrip,
    find_relations,
    invert_chart,
    is_new,
    monomials_of_weight,
    polysearch,
    run_case,
    xreduce,
    y_ring,
)
from adecas.cases import make_case
from adecas.ferrari import CaseSpec, parse_pterm
from adecas.groebner import GRevLex, buchberger
from adecas.polyring import NotHomogeneous, VarTable

P = RING.parse
B = BETA_RING.parse


def ideal_of(name, k=None):
    return TransitionIdeal(make_case(name, k))


def reduced(polys):
    ring = polys[0].ring
    return buchberger(polys, GRevLex(), ring).generators


def vanishes(rel, ghfs, ideal):
    """Substitute the beta-chart ghfs for y_i; the result must be 0 modulo the ideal."""
    n = len(ghfs)
    R = VarTable(list(RING.names) + list(y_ring(n).names))
    bind = {f"y{i + 1}": g.beta.to_ring(R) for i, g in enumerate(ghfs)}
    val = rel.to_ring(R).substitute(bind).to_ring(RING)
    return ideal.nf(val).is_zero()


class TestBuildIdeal:
    def test_e6(self):
        assert build_ideal(make_case("E6")).generators == [P("b*g - 1"), P("v1 - b*w1"), P("v2 - g^3*w2 - g^2*w1^3 - b*w1^2")]

    def test_ohat(self):
        assert build_ideal(make_case("Ohat")).generators[2] == P("v2 - g^3*w2")

    def test_a1(self):
        assert build_ideal(make_case("A_k", 1)).generators[2] == P("v2 - g^3*w2 - g^2*w1 - w1")


class TestMonomials:
    def test_e6_degree_8(self):
        # beta has weight 1, so pure beta powers also land in the slice
        got = set(monomials_of_weight((1, 4, 7), 8))
        assert got == {(1, 0, 1), (0, 2, 0), (8, 0, 0), (4, 1, 0)}

    def test_degree_zero(self):
        assert monomials_of_weight((1, 4, 7), 0) == [(0, 0, 0)]

    def test_a2(self):
        got = set(monomials_of_weight((1, 3, 2), 6))
        assert got == {(6, 0, 0), (3, 1, 0), (4, 0, 1), (0, 2, 0), (1, 1, 1), (0, 0, 3), (2, 0, 2)}

    def test_zero_weight_cap(self):
        got = monomials_of_weight((0, 1, 1), 1, cap=2)
        assert set(got) == {(i, 1, 0) for i in range(3)} | {(i, 0, 1) for i in range(3)}

    def test_enumeration_order(self):
        got = monomials_of_weight((1, 3, 2), 6)
        assert got == sorted(got, key=lambda e: (e[2], e[1], e[0]))

    @given(st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5)), st.integers(0, 14))
    def test_brute_force(self, w, d):
        brute = {e for e in product(range(d + 1), repeat=3) if sum(a * b for a, b in zip(e, w)) == d}
        assert set(monomials_of_weight(w, d)) == brute


class TestXreduce:
    def test_e6_y1(self):
        ideal = ideal_of("E6")
        f = xreduce(P("b*v2"), [], ideal)
        assert f == P("b*v2 - v1^2")
        assert ideal.split(f)[2].is_zero()

    def test_pure_unchanged(self):
        ideal = ideal_of("E6")
        f = P("b*v2 - v1^2")
        assert xreduce(f, [], ideal) == f

    def test_a_k_y3(self):
        ideal = ideal_of("A_k", 2)
        f = xreduce(P("b^2*v2"), [], ideal)
        assert f == P("b^2*v2 - b*v1")
        assert ideal.split(f)[2].is_zero()


class TestPolysearch:
    def test_e6_slice(self):
        ideal = ideal_of("E6")
        w = (1, 4, 7, -1, 3, 10)
        state = SearchState()
        for d in range(1, 9):
            polysearch(monomials_of_weight(w, d), state, ideal, w)
        assert [g.beta for g in state.ghfs] == [B("b*v2 - v1^2")]

    def test_empty_slice(self):
        state = SearchState()
        assert polysearch([], state, ideal_of("E6"), (1, 4, 7, -1, 3, 10)) is state
        assert state.ghfs == []

    def test_ahat_v2(self):
        case = make_case("Ahat")
        w = case.weights
        state = SearchState()
        polysearch(monomials_of_weight(w, w[2]), state, TransitionIdeal(case), w)
        assert state.ghfs[0].beta == B("v2")


class TestIsNew:
    def test_beta_times_y1(self):
        y1 = B("b*v2 - v1^2")
        assert is_new(B("b") * y1, [y1])

    def test_square(self):
        y1 = B("b*v2 - v1^2")
        assert not is_new(y1 * y1, [y1])

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_a_k_y4(self, k):
        ys = [B("v2"), B("b*v2 - v1"), B("b^2*v2 - b*v1")]
        y4 = B(f"v2^{k - 1}*v1 - b^3*v2 + b^2*v1")
        assert is_new(y4, ys)


class TestFindRelations:
    def test_dhat(self):
        ghfs = [B(t) for t in ("v2", "b*v2", "v1*v2", "b^3*v2 - v1^2")]
        rels = find_relations(ghfs)
        Y = y_ring(4)
        assert reduced(rels) == reduced([Y.parse("y3^2 - y2^3 + y1^2*y4")])

    def test_single(self):
        assert find_relations([B("v2")]) == []

    @pytest.mark.parametrize("name,k,md", [("A_k", 2, 8), ("D_k", 3, 16), ("Dhat", None, 8), ("Ahat", None, 8)])
    def test_two_routes_agree(self, name, k, md):
        case = make_case(name, k)
        r = run_case(case, md, charts=False)
        betas = [g.beta for g in r.ghfs]
        a = find_relations(betas)
        b = find_relations(betas, TransitionIdeal(case), via_transition_ideal=True)
        assert reduced(a) == reduced(b)

    def test_transition_route_needs_ideal(self):
        with pytest.raises(ValueError):
            find_relations([B("v2"), B("b*v2")], via_transition_ideal=True)


class TestInvertChart:
    def test_a_k_beta(self):
        r = run_case(make_case("A_k", 2), 8)
        Y = y_ring(4)
        beta = r.charts["beta"]
        assert (beta["b"].num, beta["b"].den) == (Y.parse("y3"), Y.parse("y2"))
        assert (beta["v2"].num, beta["v2"].den) == (Y.parse("y1"), Y.one())
        # v1 = beta*y1 - y2
        assert (beta["v1"].num, beta["v1"].den) == (Y.parse("y1*y3 - y2^2"), Y.parse("y2"))

    def test_ohat_beta(self):
        r = run_case(make_case("Ohat"), 4)
        frac = r.charts["beta"]["b"]
        num, den = (r.ghfs[int(str(p)[2:-1]) - 1].beta for p in (frac.num, frac.den))
        # any ratio X_{i+1,j}/X_{ij} represents beta
        assert num == B("b") * den

    def test_e6_partial_unsolved(self):
        r = run_case(make_case("E6"), 9)
        assert any(isinstance(v, Unsolved) for c in r.charts.values() for v in c.values())
        assert not r.complete_charts

    def test_unknown_chart(self):
        with pytest.raises(ValueError):
            invert_chart([], "delta")


class TestRunCase:
    def test_a2(self):
        r = run_case(make_case("A_k", 2), 8)
        assert len(r.ghfs) == 4 and len(r.relations) == 1

    def test_ohat(self):
        r = run_case(make_case("Ohat"), 4)
        assert {g.beta for g in r.ghfs} == {B(f"b^{i}*v1^{j}*v2") for i in range(4) for j in range(4 - i)}

    def test_weight_pick_required(self):
        case = CaseSpec("Ahat", parse_pterm("g^2*w1"))
        with pytest.raises(ValueError):
            run_case(case, 4)

    def test_bad_weight_pick(self):
        with pytest.raises(ValueError):
            run_case(make_case("Ahat"), 4, weight_pick=(1, 1, 1, 1, 1, 1))

    def test_explicit_pick(self):
        case = CaseSpec("Ahat", parse_pterm("g^2*w1"))
        r = run_case(case, 8, weight_pick=(1, 4, 1, -1, 3, 4))
        assert r.weights == (1, 4, 1, -1, 3, 4)

    @pytest.mark.parametrize("name,k,md", [
        ("A_k", 1, 6), ("A_k", 3, 11), ("D_k", 2, 8), ("D_k", 4, 14),
        ("Ahat", None, 8), ("Dhat", None, 8), ("Ohat", None, 4), ("Ehat", None, 14),
    ])
    def test_certification(self, name, k, md):
        case = make_case(name, k)
        ideal = TransitionIdeal(case)
        r = run_case(case, md)
        for g in r.ghfs:
            assert ideal.is_ghf(g.beta)
            assert ideal.nf(g.beta) == ideal.nf(g.gamma.to_ring(RING))
            d = g.beta.to_ring(RING).grade(r.weights)
            assert not isinstance(d, NotHomogeneous) and d == g.degree
        for rel in r.relations:
            assert vanishes(rel, r.ghfs, ideal)
        assert r.complete_charts and chart_roundtrip(r.ghfs, r.charts, ideal)
        assert all(isinstance(v, Fraction) for c in r.charts.values() for v in c.values())
