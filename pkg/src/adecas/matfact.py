"""Matrix factorizations of ADE hypersurfaces and the identities around them.

Covers the 2x2 A-type factorizations (plain and deformed), the 4x4 D-type
relation matrices (plain odd/even and the deformed one), Pluecker minors of
their row pairs, the distinguished polynomials that parameterize deformed D
equations, Tyurina's factorization, a length-3 6x6 factorization, and the
residual-chart identities of the resulting blowups.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .polyring import I, Polynomial, VarTable, exact_divide, i_power


class SizeMismatch(ValueError):
    pass


class PolyMatrix:
    """Dense matrix of polynomials over one variable table."""

    def __init__(self, entries: Sequence[Sequence[Polynomial]], ring: Optional[VarTable] = None):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        if ring is None:
            ring = next(e.ring for r in rows for e in r if isinstance(e, Polynomial))
        self.ring = ring
        self.entries = [[e if isinstance(e, Polynomial) else ring.const(e) for e in r] for r in rows]
        for r in self.entries:
            for e in r:
                if e.ring != ring:
                    raise ValueError("entries over different variable tables")
        self.rows = len(rows)
        self.cols = ncols

    @classmethod
    def identity(cls, n: int, ring: VarTable, scalar=None) -> "PolyMatrix":
        s = ring.one() if scalar is None else (scalar if isinstance(scalar, Polynomial) else ring.const(scalar))
        return cls([[s if i == j else ring.zero() for j in range(n)] for i in range(n)], ring)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence["PolyMatrix"]]) -> "PolyMatrix":
        rows = []
        for brow in grid:
            for i in range(brow[0].rows):
                rows.append([e for b in brow for e in b.entries[i]])
        return cls(rows, grid[0][0].ring)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"

    def __neg__(self):
        return PolyMatrix([[-e for e in r] for r in self.entries], self.ring)

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return PolyMatrix([[e * other for e in r] for r in self.entries], self.ring)
        if self.cols != other.rows:
            raise SizeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.ring.zero()
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.ring)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in r] for r in self.entries], self.ring)

    def substitute(self, bindings) -> "PolyMatrix":
        return self.map(lambda e: e.substitute(bindings))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.ring)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
        return self.submatrix(rows, cols).det()

    def det(self) -> Polynomial:
        """Laplace expansion along rows, memoized on column subsets."""
        if self.rows != self.cols:
            raise SizeMismatch("determinant of a non-square matrix")
        n = self.rows
        memo: Dict[Tuple[int, ...], Polynomial] = {}

        def rec(cols: Tuple[int, ...]) -> Polynomial:
            r = n - len(cols)
            if not cols:
                return self.ring.one()
            got = memo.get(cols)
            if got is not None:
                return got
            acc = self.ring.zero()
            for pos, c in enumerate(cols):
                e = self.entries[r][c]
                if not e.terms:
                    continue
                sub = rec(cols[:pos] + cols[pos + 1:])
                term = e * sub
                acc = acc + term if pos % 2 == 0 else acc - term
            memo[cols] = acc
            return acc

        return rec(tuple(range(n)))

    def cofactors(self) -> "PolyMatrix":
        n = self.rows
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                rs = [k for k in range(n) if k != i]
                cs = [k for k in range(n) if k != j]
                m = self.minor(rs, cs)
                row.append(m if (i + j) % 2 == 0 else -m)
            out.append(row)
        return PolyMatrix(out, self.ring)

    def adjugate(self) -> "PolyMatrix":
        c = self.cofactors()
        return PolyMatrix([[c.entries[j][i] for j in range(self.rows)] for i in range(self.cols)], self.ring)


@dataclass
class Verification:
    ok: bool
    witness: Optional[Tuple[str, int, int]] = None

    def __bool__(self):
        return self.ok


def verify_factorization(R: PolyMatrix, S: PolyMatrix, f: Polynomial) -> Verification:
    """RS = SR = f*identity, with the first offending entry as witness."""
    if R.rows != R.cols or S.rows != S.cols or R.rows != S.rows:
        raise SizeMismatch("factorization needs square matrices of equal size")
    target = PolyMatrix.identity(R.rows, R.ring, f)
    for label, prod in (("RS", R * S), ("SR", S * R)):
        for i in range(R.rows):
            for j in range(R.cols):
                if prod.entries[i][j] != target.entries[i][j]:
                    return Verification(False, (label, i, j))
    return Verification(True)


def divisible(f: Polynomial, g: Polynomial) -> bool:
    if f.is_zero():
        return True
    try:
        exact_divide(f, g)
        return True
    except ValueError:
        return False


def t_names(n: int) -> List[str]:
    return [f"t{i}" for i in range(1, n + 1)]


def _prod(factors: Sequence[Polynomial], ring: VarTable) -> Polynomial:
    out = ring.one()
    for f in factors:
        out = out * f
    return out


# ---------------------------------------------------------------------------
# A type


def build_A_factorization(n: int, m: int, deformed: bool = False):
    """(R, S, f) for XY - Z^n split as Z^(n-m) * Z^m, optionally deformed by t1..tn."""
    if not 1 <= m <= n - 1:
        raise ValueError("need 1 <= m <= n-1")
    ts = t_names(n) if deformed else []
    ring = VarTable(["X", "Y", "Z", *ts])
    X, Y, Z = ring.var("X"), ring.var("Y"), ring.var("Z")
    if deformed:
        roots = [Z + ring.var(t) for t in ts]
        fp = _prod(roots[: n - m], ring)
        fpp = _prod(roots[n - m:], ring)
    else:
        fp, fpp = Z ** (n - m), Z ** m
    R = PolyMatrix([[Y, -fpp], [fp, -X]], ring)
    S = PolyMatrix([[X, -fpp], [fp, -Y]], ring)
    return R, S, X * Y - fp * fpp


# ---------------------------------------------------------------------------
# distinguished polynomials


def even_odd_parts(f: Polynomial, var: str, target: VarTable, zname: str = "Z"):
    """Write f(U) = U*P(-U^2) + Q(-U^2); return (P, Q) in ``target``."""
    i = f.ring.index(var)
    P, Q = {}, {}
    zi = target.index(zname)
    for m, c in f.terms.items():
        k = m[i]
        e = [0] * len(target)
        for name, x in zip(f.ring.names, m):
            if name != var and x:
                e[target.index(name)] = x
        half = k // 2
        e[zi] = half
        sign = -1 if half % 2 else 1
        (Q if k % 2 == 0 else P)[tuple(e)] = c * sign
    return Polynomial(target, P), Polynomial(target, Q)


@dataclass
class DistinguishedPolys:
    n: int
    m: int
    ring: VarTable
    f: Polynomial
    g: Polynomial
    P: Polynomial
    Q: Polynomial
    S: Polynomial
    h: Polynomial
    G: Polynomial
    delta: Polynomial
    f1: Polynomial
    f2: Polynomial
    g1: Polynomial
    g2: Polynomial
    h1: Polynomial
    h2: Polynomial
    P2: Polynomial
    Q2: Polynomial
    S2: Polynomial
    delta1: Polynomial
    delta2: Polynomial

    def at_zero(self, poly: Polynomial) -> Polynomial:
        return poly.evaluate({t: 0 for t in t_names(self.n + 2)})


def distinguished(n: int, m: Optional[int] = None, extra: Sequence[str] = ()) -> DistinguishedPolys:
    """All distinguished polynomials for D_{n+2} with split m, symbolic in t1..t_{n+2}.

    f = f'f'' with deg f' = n-m+1 and deg f'' = m+1; primed objects use one
    factor, double-primed the other.  Internal identities are checked and a
    ValueError is raised if any fails.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if m is None:
        m = n
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    ts = t_names(n + 2)
    ring = VarTable(["X", "Y", "Z", "U", *extra, *ts])
    Z, U = ring.var("Z"), ring.var("U")
    tv = [ring.var(t) for t in ts]
    f = _prod([U + t for t in tv], ring)
    g = _prod([Z + t * t for t in tv], ring)
    k1 = n - m + 1
    f1 = _prod([U + t for t in tv[:k1]], ring)
    f2 = _prod([U + t for t in tv[k1:]], ring)
    g1 = _prod([Z + t * t for t in tv[:k1]], ring)
    g2 = _prod([Z + t * t for t in tv[k1:]], ring)
    delta = _prod(tv, ring)
    delta1 = _prod(tv[:k1], ring)
    delta2 = _prod(tv[k1:], ring)
    P, Q = even_odd_parts(f, "U", ring)
    P2, Q2 = even_odd_parts(f2, "U", ring)
    S = exact_divide(Q - delta, Z)
    S2 = exact_divide(Q2 - delta2, Z)
    h = exact_divide(g - delta * delta, Z)
    h1 = exact_divide(g1 - delta1 * delta1, Z)
    h2 = P2 * P2 + Z * S2 * S2 + 2 * delta2 * S2
    G = exact_divide(U * P + Q - f, Z + U * U)
    mU2 = {"Z": -(U * U)}
    fneg = f.substitute({"U": -U})
    checks = [
        g.substitute(mU2) == f * fneg,
        g == Z * P * P + Q * Q,
        Q == S * Z + delta,
        U * P + Q == (Z + U * U) * G + f,
        f == f1 * f2,
        g == g1 * g2,
        delta == delta1 * delta2,
        h == Z * h1 * h2 + h1 * delta2 * delta2 + h2 * delta1 * delta1,
        h == P * P + Z * S * S + 2 * delta * S,
        f2 == U * P2.substitute(mU2) + Q2.substitute(mU2),
    ]
    if not all(checks):
        raise ValueError(f"distinguished polynomial identity failed: {checks}")
    return DistinguishedPolys(n, m, ring, f, g, P, Q, S, h, G, delta, f1, f2, g1, g2, h1, h2, P2, Q2, S2, delta1, delta2)


def undeformed_PQ(n: int) -> Tuple[Polynomial, Polynomial]:
    """P(Z), Q(Z) for f = U^(n+2), by n mod 4."""
    ring = VarTable(["Z"])
    Z = ring.var("Z")
    r = n % 4
    if r == 0:
        return ring.zero(), -(Z ** ((n + 2) // 2))
    if r == 1:
        return -(Z ** ((n + 1) // 2)), ring.zero()
    if r == 2:
        return ring.zero(), Z ** ((n + 2) // 2)
    return Z ** ((n + 1) // 2), ring.zero()


def tyurina_check(n: int) -> bool:
    """Tyurina's factorization of the deformed D_{n+2} equation and its blowup chart."""
    d = distinguished(n, n)
    ring = d.ring
    X, Y, Z, U = (ring.var(v) for v in ("X", "Y", "Z", "U"))
    P, S, delta = d.P, d.S, d.delta
    Phi = X * X + Y * Y * Z - d.h + 2 * delta * Y
    fact = (X + P) * (X - P) + (Y - S) * (Y * Z + S * Z + 2 * delta)
    if Phi != fact:
        return False
    # chart X - P = (Y - S)U of the blowup along (X - P, Y - S)
    on_chart = {"X": P + (Y - S) * U}
    bracket = ((X + P) * U + Y * Z + S * Z + 2 * delta).substitute(on_chart)
    if Phi.substitute(on_chart) != (Y - S) * bracket:
        return False
    Zt = Z + U * U
    Yt = Y - S + 2 * d.G
    if bracket != Yt * Zt + 2 * d.f:
        return False
    # t -> 0 limit
    zero = {t: 0 for t in t_names(n + 2)}
    P0, Q0 = undeformed_PQ(n)
    if d.P.evaluate(zero) != P0.to_ring(ring) or d.Q.evaluate(zero) != Q0.to_ring(ring):
        return False
    return fact.evaluate(zero) == X * X + Y * Y * Z - Z ** (n + 1)


# ---------------------------------------------------------------------------
# D type


def d_equation(n: int, ring: VarTable) -> Polynomial:
    X, Y, Z = ring.var("X"), ring.var("Y"), ring.var("Z")
    return -(X * X) - Y * Y * Z + Z ** (n + 1)


def _plain_D(n: int, m: int, ring: VarTable):
    X, Y, Z = ring.var("X"), ring.var("Y"), ring.var("Z")
    iX = X * I
    O = ring.zero()
    if m % 2:
        a = (m + 1) // 2
        b = n + 1 - a
        R = [
            [-iX, Z ** a, -Y, O],
            [Z ** b, iX, O, -Y],
            [-Y * Z, O, -iX, Z ** a],
            [O, -Y * Z, Z ** b, iX],
        ]
        S = [
            [-iX, Z ** a, Y, O],
            [Z ** b, iX, O, Y],
            [Y * Z, O, -iX, Z ** a],
            [O, Y * Z, Z ** b, iX],
        ]
    else:
        a = m // 2
        R = [
            [-iX, O, -Y, Z ** a],
            [O, iX, Z ** (n - a), -Y],
            [-Y * Z, Z ** (a + 1), -iX, O],
            [Z ** (n + 1 - a), -Y * Z, O, iX],
        ]
        S = [
            [-iX, O, Y, Z ** a],
            [O, iX, Z ** (n - a), Y],
            [Y * Z, Z ** (a + 1), -iX, O],
            [Z ** (n + 1 - a), Y * Z, O, iX],
        ]
    return PolyMatrix(R, ring), PolyMatrix(S, ring)


@dataclass
class DeformedD:
    R: PolyMatrix
    eqn: Polynomial
    dist: DistinguishedPolys


def deformed_D_equation(d: DistinguishedPolys) -> Polynomial:
    """eqn in the shifted coordinates (X, Y stand for the tilde variables)."""
    ring = d.ring
    X, Y, Z = ring.var("X"), ring.var("Y"), ring.var("Z")
    m = d.m
    sgn = -1 if (m + 1) % 2 else 1
    return (
        X * X
        + Y * Y * Z
        - d.h1 * (Z * d.P2 * d.P2 + d.Q2 * d.Q2)
        + 2 * d.delta1 * (Y * d.Q2 + X * d.P2 * sgn)
    )


def _deformed_R(d: DistinguishedPolys) -> PolyMatrix:
    ring = d.ring
    X, Y, Z = ring.var("X"), ring.var("Y"), ring.var("Z")
    m = d.m
    h1, P2, Q2 = d.h1, d.P2, d.Q2
    iX = X * I
    rows = [
        [-iX, Q2 * i_power(-(m + 1)), -Y, P2 * i_power(m)],
        [h1 * Q2 * i_power(m + 1), iX, h1 * P2 * i_power(-m), -Y],
        [-Y * Z, P2 * Z * i_power(m), -iX, Q2 * i_power(-(m + 1))],
        [h1 * P2 * Z * i_power(-m), -Y * Z, h1 * Q2 * i_power(m + 1), iX],
    ]
    return PolyMatrix(rows, ring)


def build_D_relations(n: int, m: int, deformed: bool = False):
    """Plain: (R, S, eqn) with RS = eqn*I.  Deformed: (R, None, eqn)."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    if not deformed:
        ring = VarTable(["X", "Y", "Z"])
        R, S = _plain_D(n, m, ring)
        return R, S, d_equation(n, ring)
    d = distinguished(n, m)
    return _deformed_R(d), None, deformed_D_equation(d)


def original_deformed_equation(d: DistinguishedPolys) -> Polynomial:
    """X^2 + Y^2 Z - h + 2 delta Y in the unshifted coordinates."""
    ring = d.ring
    X, Y, Z = ring.var("X"), ring.var("Y"), ring.var("Z")
    return X * X + Y * Y * Z - d.h + 2 * d.delta * Y


def coordinate_shift(d: DistinguishedPolys) -> Dict[str, Polynomial]:
    """Original X, Y written in the tilde coordinates (X, Y here stand for the tildes)."""
    ring = d.ring
    X, Y = ring.var("X"), ring.var("Y")
    sign = 1 if d.m % 2 == 0 else -1
    return {"X": X - d.delta1 * d.P2 * sign, "Y": Y + d.delta1 * d.S2}


def delta_free_equation(d: DistinguishedPolys) -> Polynomial:
    """The shifted equation with its delta'-linear part dropped."""
    ring = d.ring
    X, Y, Z = ring.var("X"), ring.var("Y"), ring.var("Z")
    return X * X + Y * Y * Z - d.h1 * (Z * d.P2 * d.P2 + d.Q2 * d.Q2)


def check_deformed_D(n: int, m: int) -> Dict[str, bool]:
    """det R = eqn^2, cofactors divisible by eqn, eqn equals the shifted original, t=0 limit.

    The "det R = (delta-free eqn)^2" entry records whether det R is instead the square of
    the equation with delta' set to zero.
    """
    d = distinguished(n, m)
    R = _deformed_R(d)
    eqn = deformed_D_equation(d)
    out = {}
    out["eqn = shifted original"] = original_deformed_equation(d).substitute(coordinate_shift(d)) == eqn
    det = R.det()
    out["det R = eqn^2"] = det == eqn * eqn
    # what the determinant actually squares: R carries no delta' entries
    out["det R = (delta-free eqn)^2"] = det == delta_free_equation(d) ** 2
    cof = R.cofactors()
    out["cofactors divisible by eqn"] = all(divisible(e, eqn) for r in cof.entries for e in r)
    zero = {t: 0 for t in t_names(n + 2)}
    ring = d.ring
    Z = ring.var("Z")
    if m % 2 == 0:
        lim = (Z ** (n - m), Z ** (m // 2) * i_power(m), ring.zero())
    else:
        lim = (Z ** (n - m), ring.zero(), Z ** ((m + 1) // 2) * i_power(m + 1))
    out["t=0 limit"] = (d.h1.evaluate(zero), d.P2.evaluate(zero), d.Q2.evaluate(zero)) == lim
    return out


# ---------------------------------------------------------------------------
# Pluecker minors


PLUCKER_LABELS = {"p12": "gamma", "p13": "beta", "p14": "delta", "p23": "alpha", "p24": "epsilon", "p34": "phi"}


@dataclass
class PluckerMinors:
    p12: Polynomial
    p13: Polynomial
    p14: Polynomial
    p23: Polynomial
    p24: Polynomial
    p34: Polynomial

    @property
    def gamma(self):
        return self.p12

    @property
    def beta(self):
        return self.p13

    @property
    def delta(self):
        return self.p14

    @property
    def alpha(self):
        return self.p23

    @property
    def epsilon(self):
        return self.p24

    @property
    def phi(self):
        return self.p34

    def numbered(self) -> List[Polynomial]:
        """Minors [1]..[6] in the order 12, 13, 14, 23, 24, 34."""
        return [self.p12, self.p13, self.p14, self.p23, self.p24, self.p34]

    def grassmannian(self) -> Polynomial:
        return self.p12 * self.p34 + self.p14 * self.p23 - self.p13 * self.p24


def plucker(rows: PolyMatrix) -> PluckerMinors:
    if rows.rows != 2 or rows.cols != 4:
        raise SizeMismatch("Pluecker coordinates need a 2x4 matrix")
    vals = {}
    for i, j in combinations(range(4), 2):
        vals[f"p{i + 1}{j + 1}"] = rows.minor([0, 1], [i, j])
    return PluckerMinors(**vals)


def row_pair(R: PolyMatrix, which: str) -> PolyMatrix:
    if which == "top":
        return R.submatrix([0, 1], range(4))
    if which == "bottom":
        return R.submatrix([2, 3], range(4))
    raise ValueError("row pair must be 'top' or 'bottom'")


@dataclass
class PluckerContext:
    m: int
    n: int
    eqn: Polynomial
    deformed: bool = False
    rows: str = "top"
    h1: Optional[Polynomial] = None
    delta1: Optional[Polynomial] = None


def verify_plucker_relations(minors: PluckerMinors, ctx: PluckerContext) -> bool:
    """The three row-pair identities, exact or modulo eqn as appropriate."""
    ring = ctx.eqn.ring
    Z = ring.var("Z")
    m, n = ctx.m, ctx.n
    p = minors.numbered()
    if not ctx.deformed:
        sign = -1 if m % 2 else 1
        return (
            p[2] == p[3]
            and p[1] == p[4] * Z ** (n - m) * sign
            and divisible(p[0] + Z * p[5], ctx.eqn)
        )
    h1, d1 = ctx.h1, ctx.delta1
    sgn = 1 if m % 2 == 0 else -1
    if ctx.rows == "top":
        third = p[0] + Z * p[5] + 2 * d1 * p[4] * i_power(m - 1) == ctx.eqn
    else:
        third = p[0] + Z * p[5] + 2 * d1 * p[4] * i_power(m + 1) == Z * ctx.eqn
    return p[2] == p[3] and p[1] == h1 * p[4] * sgn and third


def grassmannian_relation(minors: PluckerMinors, ctx: PluckerContext) -> Polynomial:
    """alpha^2 - phi^2 Z + (-1)^(m+1) h' eps^2 + 2 i^(m+1) delta' eps phi (plain: h' = Z^(n-m), delta' = 0)."""
    ring = ctx.eqn.ring
    Z = ring.var("Z")
    m = ctx.m
    a, e, f = minors.alpha, minors.epsilon, minors.phi
    sgn = -1 if (m + 1) % 2 else 1
    if not ctx.deformed:
        return a * a - f * f * Z + e * e * Z ** (ctx.n - ctx.m) * sgn
    return a * a - f * f * Z + ctx.h1 * e * e * sgn + 2 * ctx.delta1 * e * f * i_power(m + 1)


# ---------------------------------------------------------------------------
# length 3


def build_length3_factorization():
    """(A, B, f) with A = [[psi, -xI], [xI, phi]] and B = [[phi, xI], [-xI, psi]]."""
    ring = VarTable(["x", "y", "z", "t"])
    x, y, z, t = ring.gens()
    phi = PolyMatrix([[-y, z * z, t * z], [t, -y, z * z], [z, t, -y]], ring)
    psi = PolyMatrix(
        [
            [y * y - t * z * z, y * z * z + t * t * z, z ** 4 + t * y * z],
            [z ** 3 + t * y, y * y - t * z * z, y * z * z + t * t * z],
            [y * z + t * t, z ** 3 + t * y, y * y - t * z * z],
        ],
        ring,
    )
    xI = PolyMatrix.identity(3, ring, x)
    A = PolyMatrix.blocks([[psi, -xI], [xI, phi]])
    B = PolyMatrix.blocks([[phi, xI], [-xI, psi]])
    f = x * x - y ** 3 + z ** 5 + 3 * t * y * z * z + t ** 3 * z
    return A, B, f, phi, psi


# ---------------------------------------------------------------------------
# residual charts


def _a_case_charts(n: int, m: int, deformed: bool) -> bool:
    R, S, f = build_A_factorization(n, m, deformed)
    base = f.ring
    ring = base.extend(["nu", "mu"])
    f = f.to_ring(ring)
    X, Y = ring.var("X"), ring.var("Y")
    nu, mu = ring.var("nu"), ring.var("mu")
    fpp = (-R.entries[0][1]).to_ring(ring)
    fp = R.entries[1][0].to_ring(ring)
    ok = f.substitute({"Y": nu * fpp}) == fpp * (X * nu - fp)
    ok = ok and f.substitute({"X": mu * fp}) == fp * (mu * Y - fpp)
    if not deformed:
        Z = ring.var("Z")
        ok = ok and fp == Z ** (n - m) and fpp == Z ** m
    return ok


def clear_chart(poly: Polynomial, subs: Dict[str, Polynomial], den: Polynomial, K: int) -> Polynomial:
    """den^K * poly with each chart variable v replaced by subs[v]/den (total degree in them <= K)."""
    names = list(subs)
    idx = [poly.ring.index(v) for v in names]
    out = poly.ring.zero()
    for mono, c in poly.terms.items():
        e = list(mono)
        k = 0
        factor = poly.ring.one()
        for v, i in zip(names, idx):
            if e[i]:
                factor = factor * subs[v] ** e[i]
                k += e[i]
                e[i] = 0
        if k > K:
            raise ValueError("chart polynomial exceeds the clearing degree")
        out = out + Polynomial(poly.ring, {tuple(e): c}) * factor * den ** (K - k)
    return out


def _plain_D_charts(n: int, m: int) -> bool:
    ring = VarTable(["X", "Y", "Z", "a1", "e1", "p2", "a2"])
    R, _, eqn = build_D_relations(n, m)
    pm = plucker(row_pair(R, "top"))
    rel = grassmannian_relation(pm, PluckerContext(m, n, eqn))
    if not divisible(rel, eqn):
        return False
    rel = rel.to_ring(ring)
    alpha, eps, phi = (p.to_ring(ring) for p in (pm.alpha, pm.epsilon, pm.phi))
    Z, Y = ring.var("Z"), ring.var("Y")
    a1, e1, p2, a2 = (ring.var(v) for v in ("a1", "e1", "p2", "a2"))
    sgn = -1 if (m + 1) % 2 else 1
    # phi = 1 chart
    chart = a1 * a1 - Z + e1 * e1 * Z ** (n - m) * sgn
    if clear_chart(chart, {"a1": alpha, "e1": eps}, phi, 2) != rel:
        return False
    if m % 2:
        linear = -(Z ** ((m + 1) // 2)) - e1 * Y
        G = exact_divide(Z ** ((m + 1) // 2) - a1 ** (m + 1), Z - a1 * a1)
        Yt = Y + e1 * Z ** (n - m) * G
        combo = linear + (Z - a1 * a1 - e1 * e1 * Z ** (n - m)) * G
    else:
        linear = -(Z ** (m // 2)) * a1 - e1 * Y
        G = exact_divide(Z ** (m // 2) - a1 ** m, Z - a1 * a1)
        Yt = Y - a1 * e1 * Z ** (n - m) * G
        combo = linear + a1 * (Z - a1 * a1 + e1 * e1 * Z ** (n - m)) * G
    if not clear_chart(linear, {"a1": alpha, "e1": eps}, phi, 1).is_zero():
        return False
    # on the chart, -a1^(m+1) = e1 * Yt
    if -(a1 ** (m + 1)) - e1 * Yt != combo:
        return False
    # eps = 1 chart
    eps_chart = a2 * a2 - p2 * p2 * Z + Z ** (n - m) * sgn
    return clear_chart(eps_chart, {"a2": alpha, "p2": phi}, eps, 2) == rel


def _deformed_D_charts(n: int, m: int) -> bool:
    d = distinguished(n, m, extra=("a1", "e1", "p2", "a2"))
    ring = d.ring
    R = _deformed_R(d)
    eqn = deformed_D_equation(d)
    pm = plucker(row_pair(R, "top"))
    rel = grassmannian_relation(pm, PluckerContext(m, n, eqn, True, "top", d.h1, d.delta1))
    if rel != -(pm.phi * eqn):
        return False
    Z, Y = ring.var("Z"), ring.var("Y")
    a1, e1, p2, a2 = (ring.var(v) for v in ("a1", "e1", "p2", "a2"))
    sgn = -1 if (m + 1) % 2 else 1
    im1 = i_power(m + 1)
    # phi = 1 chart: Z - a1^2 = e1 * k
    k = d.h1 * e1 * sgn + 2 * d.delta1 * im1
    chart = a1 * a1 - Z + d.h1 * e1 * e1 * sgn + 2 * d.delta1 * e1 * im1
    if clear_chart(chart, {"a1": pm.alpha, "e1": pm.epsilon}, pm.phi, 2) != rel:
        return False
    ia1 = a1 * I
    f2 = d.f2.substitute({"U": ia1})
    G2 = exact_divide(ia1 * d.P2 + d.Q2 - f2, Z - a1 * a1)
    if m % 2 == 0:
        linear = ia1 * d.P2 + d.Q2 - Y * e1 * i_power(m + 3)
        if not clear_chart(linear, {"a1": pm.alpha, "e1": pm.epsilon}, pm.phi, 1).is_zero():
            return False
        Yhat = Y * i_power(m + 3) - k * G2
        combo = -linear + (Z - a1 * a1 - e1 * k) * G2
        if Yhat * e1 - f2 != combo:
            return False
    # eps = 1 chart
    eps_chart = a2 * a2 - p2 * p2 * Z + d.h1 * sgn + 2 * d.delta1 * p2 * im1
    return clear_chart(eps_chart, {"a2": pm.alpha, "p2": pm.phi}, pm.epsilon, 2) == rel


def residual_chart_checks(family: str, n: int, m: int) -> bool:
    if family == "A-plain":
        return _a_case_charts(n, m, False)
    if family == "A-deformed":
        return _a_case_charts(n, m, True)
    if family == "D-plain":
        return _plain_D_charts(n, m)
    if family == "D-deformed":
        return _deformed_D_charts(n, m)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# per-family reports

FAMILIES = ("A", "A-deformed", "D", "D-deformed", "length3", "tyurina", "distinguished")


def _distinguished_ok(n: int, m: int) -> bool:
    try:
        distinguished(n, m)
    except ValueError:
        return False
    return True


def family_report(family: str, n: Optional[int] = None, m: Optional[int] = None) -> Dict[str, bool]:
    """Named pass/fail checks for one factorization family and size."""
    if family == "length3":
        A, B, f, phi, psi = build_length3_factorization()
        return {"AB = BA = f*I": bool(verify_factorization(A, B, f)), "psi = adj(phi)": phi.adjugate() == psi}
    if n is None:
        raise ValueError(f"{family} needs n")
    if family == "tyurina":
        return {"tyurina": tyurina_check(n)}
    if m is None:
        raise ValueError(f"{family} needs m")
    if family == "distinguished":
        return {"identities": _distinguished_ok(n, m)}
    if family in ("A", "A-deformed"):
        deformed = family == "A-deformed"
        R, S, f = build_A_factorization(n, m, deformed)
        return {
            "RS = SR = f*I": bool(verify_factorization(R, S, f)),
            "charts": residual_chart_checks("A-deformed" if deformed else "A-plain", n, m),
        }
    if family == "D":
        R, S, e = build_D_relations(n, m)
        out = {"RS = SR = eqn*I": bool(verify_factorization(R, S, e))}
        out["det R = eqn^2"] = R.det() == e * e
        out["cofactors divisible by eqn"] = all(divisible(x, e) for r in R.cofactors().entries for x in r)
        for rows in ("top", "bottom"):
            ctx = PluckerContext(m, n, e, rows=rows)
            out[f"plucker {rows}"] = verify_plucker_relations(plucker(row_pair(R, rows)), ctx)
        out["charts"] = residual_chart_checks("D-plain", n, m)
        return out
    if family == "D-deformed":
        d = distinguished(n, m)
        R, _, e = build_D_relations(n, m, True)
        out = check_deformed_D(n, m)
        for rows in ("top", "bottom"):
            ctx = PluckerContext(m, n, e, True, rows, d.h1, d.delta1)
            out[f"plucker {rows}"] = verify_plucker_relations(plucker(row_pair(R, rows)), ctx)
        out["grassmannian = -phi*eqn"] = grassmannian_relation(plucker(row_pair(R, "top")), PluckerContext(m, n, e, True, "top", d.h1, d.delta1)) == -plucker(row_pair(R, "top")).phi * e
        out["charts"] = residual_chart_checks("D-deformed", n, m)
        return out
    raise ValueError(f"unknown family {family!r}")
