import pytest
from hypothesis import given, strategies as st

from adecas.matfact import (
    PluckerContext,
    PolyMatrix,
    SizeMismatch,
    build_A_factorization,
    build_D_relations,
    build_length3_factorization,
    check_deformed_D,
    delta_free_equation,
    distinguished,
    divisible,
    family_report,
    plucker,
    residual_chart_checks,
    row_pair,
    t_names,
    tyurina_check,
    undeformed_PQ,
    verify_factorization,
    verify_plucker_relations,
    _deformed_R,
)
from adecas.polyring import VarTable

from strategies import polynomials, rationals

XYZ = VarTable(["X", "Y", "Z"])
X, Y, Z = XYZ.gens()


def at_t0(M, n):
    zero = {t: 0 for t in t_names(n)}
    return PolyMatrix([[e.evaluate(zero).to_ring(XYZ) for e in row] for row in M.entries], XYZ)


class TestVerifyFactorization:
    def test_a_case(self):
        n, m = 5, 2
        R = PolyMatrix([[Y, -Z ** m], [Z ** (n - m), -X]])
        S = PolyMatrix([[X, -Z ** m], [Z ** (n - m), -Y]])
        assert verify_factorization(R, S, X * Y - Z ** n)

    def test_identity(self):
        one = PolyMatrix.identity(3, XYZ)
        assert verify_factorization(one, one, XYZ.one())

    def test_witness(self):
        R = PolyMatrix([[Y, -Z], [Z, -X]])
        v = verify_factorization(R, R, X * Y - Z ** 2)
        assert not v and v.witness == ("RS", 0, 0)

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            verify_factorization(PolyMatrix.identity(2, XYZ), PolyMatrix.identity(3, XYZ), XYZ.one())


class TestAFactorization:
    def test_plain_3_1(self):
        R, S, f = build_A_factorization(3, 1)
        assert R == PolyMatrix([[Y, -Z], [Z ** 2, -X]])
        assert f == X * Y - Z ** 3

    def test_deformed_limit(self):
        R, S, f = build_A_factorization(4, 2, deformed=True)
        zero = {t: 0 for t in t_names(4)}
        Rp, Sp, fp = build_A_factorization(4, 2)
        assert at_t0(R, 4) == Rp
        assert f.evaluate(zero).to_ring(XYZ) == fp

    def test_deformed_4_2(self):
        assert verify_factorization(*build_A_factorization(4, 2, deformed=True))

    @pytest.mark.parametrize("n,m", [(1, 1), (3, 0), (3, 3)])
    def test_bad_split(self, n, m):
        with pytest.raises(ValueError):
            build_A_factorization(n, m)


class TestDRelations:
    def test_odd(self):
        R, S, e = build_D_relations(3, 1)
        assert e == -X * X - Y * Y * Z + Z ** 4
        assert verify_factorization(R, S, e)

    def test_even(self):
        assert verify_factorization(*build_D_relations(4, 2))

    def test_deformed_has_no_syzygies(self):
        R, S, e = build_D_relations(3, 1, deformed=True)
        assert S is None and R.rows == 4

    def test_bad_split(self):
        with pytest.raises(ValueError):
            build_D_relations(2, 3)

    @pytest.mark.parametrize("n,m", [(2, 1), (3, 1), (3, 2), (4, 3)])
    def test_deformed_determinant_structure(self, n, m):
        # the deformed relation matrix carries no delta' entries; its determinant
        # is the square of the equation with the delta'-linear part removed
        d = distinguished(n, m)
        R = _deformed_R(d)
        E0 = delta_free_equation(d)
        assert R.det() == E0 * E0
        assert all(divisible(c, E0) for row in R.cofactors().entries for c in row)
        rep = check_deformed_D(n, m)
        assert rep["eqn = shifted original"] and rep["t=0 limit"]

    def test_deformed_reduces_to_plain_at_t0(self):
        n, m = 3, 1
        R, _, e = build_D_relations(n, m, deformed=True)
        zero = {t: 0 for t in t_names(n + 2)}
        R0 = at_t0(R, n + 2)
        e0 = e.evaluate(zero).to_ring(XYZ)
        assert R0.det() == e0 * e0


class TestPlucker:
    def test_plain_odd_top(self):
        n = 3
        R, _, _ = build_D_relations(n, 1)
        pm = plucker(row_pair(R, "top"))
        assert pm.p12 == X * X - Z ** (n + 1) and pm.p34 == Y * Y

    def test_rank_one(self):
        u = [X, Y, Z, X + Y]
        M = PolyMatrix([u, [2 * e for e in u]])
        assert all(p.is_zero() for p in plucker(M).numbered())

    def test_deformed_three_equals_four(self):
        R, _, _ = build_D_relations(3, 2, deformed=True)
        for rows in ("top", "bottom"):
            pm = plucker(row_pair(R, rows))
            assert pm.p14 == pm.p23

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            plucker(PolyMatrix.identity(2, XYZ))

    @pytest.mark.parametrize("n,m", [(3, 1), (4, 3), (4, 2), (5, 2)])
    def test_plain_relations(self, n, m):
        R, _, e = build_D_relations(n, m)
        for rows in ("top", "bottom"):
            assert verify_plucker_relations(plucker(row_pair(R, rows)), PluckerContext(m, n, e, rows=rows))

    @pytest.mark.parametrize("n,m", [(2, 1), (3, 2), (4, 3)])
    def test_deformed_relations(self, n, m):
        d = distinguished(n, m)
        R, _, e = build_D_relations(n, m, deformed=True)
        for rows in ("top", "bottom"):
            ctx = PluckerContext(m, n, e, True, rows, d.h1, d.delta1)
            assert verify_plucker_relations(plucker(row_pair(R, rows)), ctx)

    @given(st.lists(polynomials(XYZ, max_terms=3, max_exp=2), min_size=8, max_size=8))
    def test_quadric(self, entries):
        M = PolyMatrix([entries[:4], entries[4:]], XYZ)
        assert plucker(M).grassmannian().is_zero()


class TestDistinguished:
    def test_n1_expansion(self):
        d = distinguished(1, 1)
        t1, t2, t3 = (d.ring.var(t) for t in t_names(3))
        Zr = d.ring.var("Z")
        s1 = t1 ** 2 + t2 ** 2 + t3 ** 2
        s2 = t1 ** 2 * t2 ** 2 + t1 ** 2 * t3 ** 2 + t2 ** 2 * t3 ** 2
        s3 = t1 ** 2 * t2 ** 2 * t3 ** 2
        assert d.g == Zr ** 3 + s1 * Zr ** 2 + s2 * Zr + s3

    def test_delta(self):
        d = distinguished(2, 1)
        prod = d.ring.one()
        for t in t_names(4):
            prod = prod * d.ring.var(t)
        assert d.delta == prod and d.f.evaluate({"U": 0}) == d.delta

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_undeformed_table(self, n):
        d = distinguished(n, n)
        P0, Q0 = undeformed_PQ(n)
        assert d.at_zero(d.P) == P0.to_ring(d.ring)
        assert d.at_zero(d.Q) == Q0.to_ring(d.ring)

    def test_n0_mod_4_pattern(self):
        P0, Q0 = undeformed_PQ(4)
        Zr = P0.ring.var("Z")
        assert P0.is_zero() and Q0 == -(Zr ** 3)

    @pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 5) for m in range(1, n + 1)])
    def test_symbolic(self, n, m):
        assert family_report("distinguished", n, m) == {"identities": True}

    @given(st.lists(rationals, min_size=5, max_size=5))
    def test_random_specialization(self, ts):
        n, m = 3, 2
        d = distinguished(n, m)
        at = dict(zip(t_names(n + 2), ts))
        f, g, P, Q = (p.evaluate(at) for p in (d.f, d.g, d.P, d.Q))
        U, Zr = d.ring.var("U"), d.ring.var("Z")
        assert g.substitute({"Z": -(U * U)}) == f * f.substitute({"U": -U})
        assert g == Zr * P * P + Q * Q
        assert Q == d.S.evaluate(at) * Zr + d.delta.evaluate(at)
        assert U * P + Q == (Zr + U * U) * d.G.evaluate(at) + f

    def test_bad_split(self):
        with pytest.raises(ValueError):
            distinguished(2, 3)


class TestTyurina:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_identity(self, n):
        assert tyurina_check(n)


class TestLength3:
    def test_phi_psi(self):
        A, B, f, phi, psi = build_length3_factorization()
        x, y, z, t = f.ring.gens()
        f3 = -y ** 3 + z ** 5 + 3 * t * y * z * z + t ** 3 * z
        assert phi * psi == PolyMatrix.identity(3, f.ring, f3)
        assert psi * phi == PolyMatrix.identity(3, f.ring, f3)

    def test_full(self):
        A, B, f, _, _ = build_length3_factorization()
        assert verify_factorization(A, B, f)

    def test_t0_slice(self):
        A, B, f, _, _ = build_length3_factorization()
        x, y, z, t = f.ring.gens()
        A0, B0 = (M.map(lambda e: e.evaluate({"t": 0})) for M in (A, B))
        assert verify_factorization(A0, B0, x * x - y ** 3 + z ** 5)


class TestCharts:
    def test_a_case(self):
        assert residual_chart_checks("A-plain", 4, 2)

    def test_a_deformed(self):
        assert residual_chart_checks("A-deformed", 4, 2)

    @pytest.mark.parametrize("n,m", [(3, 1), (4, 2), (5, 3)])
    def test_d_plain(self, n, m):
        assert residual_chart_checks("D-plain", n, m)

    @pytest.mark.parametrize("n,m", [(2, 1), (3, 2), (3, 3)])
    def test_d_deformed(self, n, m):
        assert residual_chart_checks("D-deformed", n, m)

    def test_unknown(self):
        with pytest.raises(ValueError):
            residual_chart_checks("E", 1, 1)


class TestFamilyReport:
    def test_needs_n(self):
        with pytest.raises(ValueError):
            family_report("A")

    def test_unknown(self):
        with pytest.raises(ValueError):
            family_report("B", 1, 1)
