"""Superpotential <-> geometry dictionary.

A two-chart geometry over P^1 has transition functions

    beta = 1/gamma,  v1 = gamma^(1-M) w1,  v2 = gamma^(M+1) w2 + dE/dw1(gamma, w1)

and its superpotential is the gamma^M coefficient of E(gamma, sum x_i gamma^(i-1)).
This module implements that residue, its inverse on monomials, the
contribution rule, the x<->y symmetry, bundle-changing linear terms, the
weight lattice that makes a case quasi-homogeneous, and the polar
constraints that locate the exceptional curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .polyring import Polynomial, VarTable, coeff

# gamma is invertible; w1 is the fibre coordinate the perturbation depends on.
PTERM_RING = VarTable(["g", "w1"], invertible=["g"])
WEIGHT_NAMES = ("b", "v1", "v2", "g", "w1", "w2")


def field_names(M: int) -> Tuple[str, ...]:
    if M == 1:
        return ("x",)
    if M == 2:
        return ("x", "y")
    return tuple(f"x{i}" for i in range(1, M + 1))


def field_ring(M: int) -> VarTable:
    return VarTable(field_names(M))


@dataclass(frozen=True)
class Superpotential:
    W: Polynomial
    M: int

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be positive")
        if self.W.ring != field_ring(self.M):
            object.__setattr__(self, "W", self.W.to_ring(field_ring(self.M)))

    def __str__(self):
        return str(self.W)


@dataclass
class CaseSpec:
    """A named geometry: M fields, bundle exponents (n, m) and the perturbation dE/dw1."""

    name: str
    pterm: Polynomial
    M: int = 2
    n: int = 1
    m: int = -3
    weights: Optional[Tuple[int, ...]] = None
    expected: Optional[object] = None
    params: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not (self.M == self.n + 1 == -self.m - 1):
            raise ValueError("isolated curve needs M = n+1 = -m-1")
        self.pterm = as_pterm(self.pterm)


def as_pterm(p: Polynomial) -> Polynomial:
    """Move a perturbation into the (gamma, w1) Laurent ring, rejecting other variables."""
    if p.ring == PTERM_RING:
        return p
    extra = p.free_vars() - {"g", "w1"}
    if extra:
        raise ValueError(f"perturbation may only involve g and w1, found {sorted(extra)}")
    out = {}
    for m, c in p.terms.items():
        e = dict(zip(p.ring.names, m))
        out[(e.get("g", 0), e.get("w1", 0))] = c
    return Polynomial(PTERM_RING, out)


def parse_pterm(text: str) -> Polynomial:
    """Parse a perturbation written with g, w1 and optionally b (= 1/g)."""
    ring = VarTable(["b", "g", "w1"], invertible=["g"])
    p = ring.parse(text)
    out = {}
    for m, c in p.terms.items():
        bb, gg, ww = m
        key = (gg - bb, ww)
        out[key] = out.get(key, 0) + c
    return Polynomial(PTERM_RING, out)


# ---------------------------------------------------------------------------
# residue and its inverse


def superpotential_from_geometric(E: Polynomial, M: int) -> Superpotential:
    """W(x) = coefficient of gamma^M in E(gamma, sum_i x_i gamma^(i-1))."""
    if M < 1:
        raise ValueError("M must be positive")
    names = field_names(M)
    ring = VarTable(["g", "w1", *names], invertible=["g"])
    E = as_pterm(E).to_ring(ring)
    g = ring.var("g")
    section = ring.zero()
    for i, n in enumerate(names):
        section = section + ring.var(n) * g ** i
    W = E.substitute({"w1": section}).laurent_coeff("g", M)
    return Superpotential(W.to_ring(field_ring(M)), M)


def integrate_pterm(pterm: Polynomial) -> Polynomial:
    """Minimal geometric potential E with dE/dw1 = pterm."""
    pterm = as_pterm(pterm)
    return Polynomial(PTERM_RING, {(a, b + 1): c / (b + 1) for (a, b), c in pterm.terms.items()})


def differentiate_potential(E: Polynomial) -> Polynomial:
    return as_pterm(E).diff("w1")


def perturbation_from_superpotential(W: Superpotential) -> Polynomial:
    """Perturbation dE/dw1 whose residue reproduces W (M = 1 or 2 only)."""
    M = W.M
    if M > 2:
        raise ValueError("only one- and two-matrix models are supported")
    out: Dict[Tuple[int, int], object] = {}
    for mono, c in W.W.terms.items():
        if M == 1:
            (p,) = mono
            if p == 0:
                raise ValueError("constant terms have no perturbation")
            key, val = (1, p - 1), c * p
        else:
            j, k = mono
            s = j + k
            if s == 0:
                raise ValueError("constant terms have no perturbation")
            key, val = (2 - k, s - 1), c * mpq(s, comb(s, k))
        out[key] = out.get(key, 0) + val
    return Polynomial(PTERM_RING, out)


def contributes(n: int, m: int, M: int) -> bool:
    """Whether the perturbation gamma^n w1^m changes the superpotential."""
    if M == 1:
        return n == 1
    if M == 2:
        return 1 - m <= n <= 2
    raise ValueError("only M = 1, 2 are classified")


def xy_swap(pterm: Polynomial) -> Polynomial:
    """gamma^n w1^m -> gamma^(3-n-m) w1^m (the x<->y symmetry of two-matrix models)."""
    pterm = as_pterm(pterm)
    out: Dict[Tuple[int, int], object] = {}
    for (n, m), c in pterm.terms.items():
        key = (3 - n - m, m)
        out[key] = out.get(key, 0) + c
    return Polynomial(PTERM_RING, out)


# ---------------------------------------------------------------------------
# bundle-changing linear terms


def bundle_change_superpotential(M: int, r: int) -> Superpotential:
    """Closed form of W_r for the perturbation gamma^(r+1) w1."""
    ring = field_ring(M)
    xs = ring.gens()
    W = ring.zero()
    lo, hi = (1, M - r) if r >= 0 else (1 - r, M)
    for i in range(lo, hi + 1):
        j = M - r + 1 - i
        W = W + xs[i - 1] * xs[j - 1]
    return Superpotential(W / 2, M)


@dataclass
class BundleChange:
    M: int
    r: int
    bundle_before: Tuple[int, int]
    bundle_after: Tuple[int, int]
    transition: Dict[str, Polynomial]
    new_coordinates: Dict[str, Polynomial]
    W: Superpotential
    corank: int
    verified: bool


def bundle_change_transform(M: int, r: int) -> BundleChange:
    """Coordinate change turning O(M-1)+O(-M-1) with gamma^(r+1) w1 into O(r-1)+O(-r-1)."""
    if not -M <= r <= M:
        raise ValueError(f"r must lie in [-{M}, {M}]")
    ring = VarTable(["g", "w1", "w2"], invertible=["g"])
    g, w1, w2 = ring.gens()
    beta = g ** -1
    # primed coordinates live on the beta chart
    w1p = g ** (1 - M) * w1
    w2p = g ** (M + 1) * w2 + g ** (r + 1) * w1
    v1 = w1 + g ** (M - r) * w2
    v2 = w2
    v1p = w2p
    v2p = -w1p + beta ** (M + r) * w2p
    ok = (v1p == g ** (r + 1) * v1) and (v2p == g ** (1 - r) * v2)
    # holomorphy of the change on each chart
    ok = ok and v1.min_degree("g") >= 0 and v2.min_degree("g") >= 0
    ok = ok and (M + r) >= 0 and (M - r) >= 0
    W = bundle_change_superpotential(M, r)
    E = Polynomial(PTERM_RING, {(r + 1, 2): mpq(1, 2)})
    ok = ok and superpotential_from_geometric(E, M).W == W.W
    return BundleChange(
        M=M,
        r=r,
        bundle_before=(M - 1, -M - 1),
        bundle_after=(r - 1, -r - 1),
        transition={"w1'": w1p, "w2'": w2p},
        new_coordinates={"v1": v1, "v2": v2, "v1'": v1p, "v2'": v2p},
        W=W,
        corank=abs(r),
        verified=bool(ok),
    )


def _rank(rows: List[List[object]]) -> int:
    """Exact rank over Q(i) by fraction-free elimination."""
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for i in range(rank + 1, len(mat)):
            if mat[i][col]:
                f = mat[i][col] / p
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def hessian_corank(W: Superpotential, point: Sequence[object] | None = None) -> int:
    """M minus the rank of the exact Hessian of W at ``point`` (origin by default)."""
    names = field_names(W.M)
    if point is None:
        point = [0] * W.M
    if len(point) != W.M:
        raise ValueError("point dimension must equal M")
    at = {n: coeff(v) for n, v in zip(names, point)}
    rows = []
    for a in names:
        da = W.W.diff(a)
        rows.append([da.diff(b).evaluate(at).constant_coeff() for b in names])
    return W.M - _rank(rows)


# ---------------------------------------------------------------------------
# weights


def weight_constraints(pterm: Polynomial) -> List[List[int]]:
    """Integer rows A with A.d = 0 for d = (d_b, d_v1, d_v2, d_g, d_w1, d_w2)."""
    rows = [
        [1, 0, 0, 1, 0, 0],
        [0, 1, 0, 1, -1, 0],
        [0, 0, 1, -3, 0, -1],
    ]
    for (a, b) in sorted(as_pterm(pterm).terms):
        rows.append([0, 0, 1, -a, -b, 0])
    return rows


def satisfies_weights(pterm: Polynomial, d: Sequence[int]) -> bool:
    return all(sum(x * y for x, y in zip(row, d)) == 0 for row in weight_constraints(pterm))


def _integer_kernel(rows: List[List[int]], n: int) -> List[List[int]]:
    """Z-basis of {d in Z^n : rows . d = 0} via unimodular row reduction of [A^T | I]."""
    aug = [[rows[r][c] for r in range(len(rows))] + [1 if i == c else 0 for i in range(n)] for c in range(n)]
    m = len(rows)
    pivot_row = 0
    for col in range(m):
        # gcd-reduce the column below pivot_row
        while True:
            nz = [i for i in range(pivot_row, n) if aug[i][col]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(aug[i][col]))
            aug[pivot_row], aug[best] = aug[best], aug[pivot_row]
            done = True
            for i in range(pivot_row + 1, n):
                if aug[i][col]:
                    q = aug[i][col] // aug[pivot_row][col]
                    aug[i] = [a - q * b for a, b in zip(aug[i], aug[pivot_row])]
                    if aug[i][col]:
                        done = False
            if done:
                pivot_row += 1
                break
        if pivot_row >= n:
            break
    return [row[m:] for row in aug if not any(row[:m])]


def _hermite(basis: List[List[int]]) -> List[List[int]]:
    """Row Hermite normal form of an integer lattice basis."""
    mat = [list(r) for r in basis]
    ncols = len(mat[0]) if mat else 0
    r = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][col]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(mat[i][col]))
            mat[r], mat[best] = mat[best], mat[r]
            clean = True
            for i in range(r + 1, len(mat)):
                if mat[i][col]:
                    q = mat[i][col] // mat[r][col]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][col]:
                        clean = False
            if clean:
                break
        if r < len(mat) and mat[r][col]:
            if mat[r][col] < 0:
                mat[r] = [-a for a in mat[r]]
            for i in range(r):
                q = mat[i][col] // mat[r][col]
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
            r += 1
            if r == len(mat):
                break
    return [row for row in mat if any(row)]


def _normalize_sign(v: List[int]) -> Tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    first = next((x for x in v if x), 0)
    if first < 0:
        v = [-x for x in v]
    return tuple(v)


def solve_weights(case_or_pterm) -> List[Tuple[int, ...]]:
    """Lattice basis of weight assignments (d_b, d_v1, d_v2, d_g, d_w1, d_w2)."""
    pterm = case_or_pterm.pterm if isinstance(case_or_pterm, CaseSpec) else case_or_pterm
    rows = weight_constraints(pterm)
    kernel = _integer_kernel(rows, 6)
    if not kernel:
        return [(0,) * 6]
    return [_normalize_sign(v) for v in _hermite(kernel)]


# ---------------------------------------------------------------------------
# locating the exceptional curve


def case_superpotential(case_or_pterm) -> Superpotential:
    pterm = case_or_pterm.pterm if isinstance(case_or_pterm, CaseSpec) else case_or_pterm
    return superpotential_from_geometric(integrate_pterm(pterm), 2)


def polar_constraints(case_or_pterm):
    """Return (w2 choice, c2, c1) for the section w1 = x + gamma*y.

    v2 = gamma^3 w2 + pterm(gamma, x + gamma*y) is holomorphic in beta = 1/gamma
    once w2 cancels every gamma^j with j >= 3; the gamma^2 and gamma^1
    coefficients (c2, c1) cannot be cancelled and must vanish.
    """
    pterm = case_or_pterm.pterm if isinstance(case_or_pterm, CaseSpec) else as_pterm(case_or_pterm)
    ring = VarTable(["g", "w1", "x", "y"], invertible=["g"])
    g, _, x, y = ring.gens()
    P = pterm.to_ring(ring).substitute({"w1": x + g * y})
    parts = P.coefficients_in("g")
    w2 = ring.zero()
    for j, c in parts.items():
        if j >= 3:
            w2 = w2 - c * g ** (j - 3)
    target = VarTable(["x", "y"])
    c2 = parts.get(2, ring.zero()).to_ring(target)
    c1 = parts.get(1, ring.zero()).to_ring(target)
    w2_ring = VarTable(["g", "x", "y"], invertible=["g"])
    return w2.to_ring(w2_ring), c2, c1


# ---------------------------------------------------------------------------
# auxiliary coordinates


def auxiliary_exponents(pterm: Polynomial) -> Tuple[int, int]:
    """(a, b) = max over terms gamma^n w1^m of (2 - n, m - 1 + n)."""
    terms = list(as_pterm(pterm).terms)
    if not terms:
        raise ValueError("auxiliary coordinates need a nonzero perturbation")
    a = max(2 - n for n, _ in terms)
    b = max(m - 1 + n for n, m in terms)
    return a, b


def auxiliary_coordinates(case_or_pterm):
    """w3 on the gamma chart and v3 on the beta chart, with their identity check.

    Returns (a, b, w3, v3, ok) where ok certifies v2 = gamma^(2-a) w3 and
    v3 = gamma^(2-b) w2 as Laurent identities.
    """
    pterm = case_or_pterm.pterm if isinstance(case_or_pterm, CaseSpec) else as_pterm(case_or_pterm)
    a, b = auxiliary_exponents(pterm)
    ring = VarTable(["b", "v1", "v2", "g", "w1", "w2"], invertible=["b", "g"])
    bb, v1, v2, g, w1, w2 = ring.gens()
    P = pterm_in_ring(pterm, ring)
    w3 = g ** (a + 1) * w2 + g ** (a - 2) * P
    # express the perturbation through beta-chart coordinates: gamma^n w1^m = beta^-(n+m) v1^m
    Pv = ring.zero()
    for (n, m), c in pterm.terms.items():
        Pv = Pv + bb ** (-(n + m)) * v1 ** m * c
    v3 = bb ** (b + 1) * v2 - bb ** (b + 1) * Pv
    # check on the gamma chart: beta = 1/g, v1 = w1/g, v2 = g^3 w2 + P
    to_gamma = {"b": g ** -1, "v1": g ** -1 * w1, "v2": g ** 3 * w2 + P}
    v2_g = to_gamma["v2"]
    v3_g = v3.substitute(to_gamma)
    ok = (v2_g == g ** (2 - a) * w3) and (v3_g == g ** (2 - b) * w2)
    return a, b, w3, v3, ok


def pterm_in_ring(pterm: Polynomial, ring: VarTable) -> Polynomial:
    g = ring.var("g")
    w1 = ring.var("w1")
    out = ring.zero()
    for (n, m), c in as_pterm(pterm).terms.items():
        out = out + g ** n * w1 ** m * c
    return out


def ak_coordinate_change_identity(k: int) -> bool:
    """Check the A_k change of coordinates beyond the linear bundle change.

    With v1 = beta w1 and v2 = gamma^3 w2 + gamma^2 w1^k + w1, the new
    coordinates v~1 = v2, w~1 = w1 + gamma^3 w2 + gamma^2 w1^k,
    v~2 = -v1 + beta v2 and w~2 = w2 - [(w~1)^k - w1^k]/gamma satisfy
    v~1 = w~1 and v~2 = gamma^2 w~2 + gamma w~1^k.
    """
    ring = VarTable(["g", "w1", "w2"], invertible=["g"])
    g, w1, w2 = ring.gens()
    beta = g ** -1
    v1 = beta * w1
    v2 = g ** 3 * w2 + g ** 2 * w1 ** k + w1
    vt1 = v2
    wt1 = w1 + g ** 3 * w2 + g ** 2 * w1 ** k
    vt2 = -v1 + beta * v2
    wt2 = w2 - beta * (wt1 ** k - w1 ** k)
    holomorphic = wt2.min_degree("g") >= 0 and wt1.min_degree("g") >= 0
    return holomorphic and vt1 == wt1 and vt2 == g ** 2 * wt2 + g * wt1 ** k
