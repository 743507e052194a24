"""Blow-down search: global holomorphic functions of a two-chart geometry.

The geometry is glued by

    beta*gamma = 1,  v1 = beta*w1,  v2 = gamma^3 w2 + pterm(gamma, w1).

A polynomial in (beta, v1, v2) is a global holomorphic function (ghf) when
its normal form modulo the transition ideal only involves (gamma, w1, w2).
The search walks quasi-homogeneous slices of increasing weighted degree,
cancels mixed terms against earlier candidates of the same degree, keeps
the candidates whose mixed part vanishes and are not already generated by
the earlier ghfs, and finally eliminates to find the relations among them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .ferrari import CaseSpec, as_pterm, satisfies_weights, solve_weights
from .groebner import GroebnerBasis, Lex, buchberger, eliminate, lexdeg, weighted
from .polyring import Monomial, Polynomial, VarTable, exact_divide
from .wire import format_polynomial

A_VARS = ("b", "v1", "v2")
B_VARS = ("g", "w1", "w2")
RING = VarTable(["b", "v1", "v2", "g", "w1", "w2"])
BETA_RING = VarTable(list(A_VARS))
GAMMA_RING = VarTable(list(B_VARS))
BETA_LAURENT = VarTable(list(A_VARS), invertible=["b"])
GAMMA_LAURENT = VarTable(list(B_VARS), invertible=["g"])

BLOCK_ORDER = lexdeg(["v2"], ["w2", "v1", "w1", "b", "g"])
# ranks mixed terms; gamma has negative weight, so this is not a monomial order
TP_ORDER = weighted(
    {"b": 1, "v1": 1, "v2": 1, "g": -1, "w1": 0, "w2": 0},
    Lex(("b", "v1", "v2", "g", "w1", "w2")),
)
# block order used to make reported ghfs monic
GHF_ORDER = lexdeg(["v2"], ["v1", "b"])

DEFAULT_ZERO_WEIGHT_CAP = 3


def y_names(n: int) -> List[str]:
    return [f"y{i}" for i in range(1, n + 1)]


def y_ring(n: int) -> VarTable:
    return VarTable(y_names(n))


def pterm_polynomial(pterm: Polynomial, ring: VarTable, beta: str = "b") -> Polynomial:
    """pterm as a true polynomial of ``ring``: gamma^-k is written beta^k."""
    out = ring.zero()
    g, w1, b = ring.var("g"), ring.var("w1"), ring.var(beta)
    for (a, c), co in as_pterm(pterm).terms.items():
        t = (g ** a if a >= 0 else b ** (-a)) * w1 ** c
        out = out + t * co
    return out


class TransitionIdeal:
    """Generators of the gluing ideal and a Groebner basis under BLOCK_ORDER."""

    def __init__(self, case: CaseSpec):
        self.case = case
        self.pterm = as_pterm(case.pterm)
        b, v1, v2, g, w1, w2 = RING.gens()
        P = pterm_polynomial(self.pterm, RING)
        self.generators = [b * g - 1, v1 - b * w1, v2 - g ** 3 * w2 - P]
        self.basis: GroebnerBasis = buchberger(self.generators, BLOCK_ORDER)

    def nf(self, f: Polynomial) -> Polynomial:
        return self.basis.reduce(f.to_ring(RING))

    def split(self, f: Polynomial):
        """(pureA, pureB, mixed) parts of the normal form; constants go to pureA."""
        return self.nf(f).split_pure_mixed(A_VARS, B_VARS)

    def mix(self, f: Polynomial) -> Polynomial:
        return self.split(f)[2]

    def shift(self, f: Polynomial) -> Polynomial:
        return f.to_ring(RING) - self.split(f)[0]

    def is_ghf(self, f: Polynomial) -> bool:
        """True when the normal form involves only (gamma, w1, w2) and constants."""
        pa, _, mx = self.split(f)
        return mx.is_zero() and pa.is_constant()

    def gamma_side(self, f: Polynomial) -> Polynomial:
        pa, pb, mx = self.split(f)
        if not mx.is_zero() or not pa.is_constant():
            raise ValueError("not a global holomorphic function")
        return (pa + pb).to_ring(GAMMA_RING)

    # transition functions, expressed in each chart's Laurent ring
    def beta_side_of(self, name: str) -> Polynomial:
        R = BETA_LAURENT
        b, v1, v2 = R.gens()
        if name in A_VARS:
            return R.var(name)
        gamma = b ** -1
        w1 = gamma * v1
        if name == "g":
            return gamma
        if name == "w1":
            return w1
        P = R.zero()
        for (a, c), co in self.pterm.terms.items():
            P = P + gamma ** a * w1 ** c * co
        return b ** 3 * (v2 - P)

    def gamma_side_of(self, name: str) -> Polynomial:
        R = GAMMA_LAURENT
        g, w1, w2 = R.gens()
        if name in B_VARS:
            return R.var(name)
        if name == "b":
            return g ** -1
        if name == "v1":
            return g ** -1 * w1
        P = R.zero()
        for (a, c), co in self.pterm.terms.items():
            P = P + g ** a * w1 ** c * co
        return g ** 3 * w2 + P


def build_ideal(case: CaseSpec) -> TransitionIdeal:
    return TransitionIdeal(case)


@dataclass
class GhfEntry:
    """A reduced candidate and the TP-leading term of its mixed part (None if holomorphic)."""

    poly: Polynomial
    mixed_lead: Optional[Monomial]
    mixed_lead_coeff: object
    nf: Polynomial = field(repr=False, default=None)


def _tp_leading(h: Polynomial):
    m = max(h.terms, key=TP_ORDER.keyer(h.ring))
    return m, h.terms[m]


def monomials_of_weight(weights: Sequence[int], d: int, cap: int = DEFAULT_ZERO_WEIGHT_CAP) -> List[Monomial]:
    """Exponents (i, j, k) of beta^i v1^j v2^k with weighted degree d.

    A zero weight makes the slice infinite; its exponent is then capped at
    ``cap``.  Output is in ascending lexicographic order of (k, j, i), i.e.
    fewest v2 first, then fewest v1.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    db, dv1, dv2 = weights[:3]
    if min(db, dv1, dv2) < 0:
        raise ValueError("beta, v1 and v2 need non-negative weights")

    def rng(w):
        return range(0, cap + 1) if w == 0 else range(0, d // w + 1)

    out = []
    for k in rng(dv2):
        for j in rng(dv1):
            rest = d - k * dv2 - j * dv1
            if rest < 0:
                continue
            if db == 0:
                if rest == 0:
                    out.extend((i, j, k) for i in range(cap + 1))
            elif rest % db == 0:
                out.append((rest // db, j, k))
    return sorted(set(out), key=lambda e: (e[2], e[1], e[0]))


def xreduce(f: Polynomial, table: List[GhfEntry], ideal: TransitionIdeal, max_steps: int = 100000) -> Polynomial:
    """Cancel mixed terms of f against same-degree table entries.

    The TP-leading mixed term is cancelled by the latest table entry with the
    same mixed lead; a term that no entry can cancel is skipped and the next
    lower one is examined.
    """
    pa, pb, mx = ideal.split(f)
    f = f.to_ring(RING) - pa
    nf_f = pb + mx
    h = mx
    steps = 0
    while not h.is_zero():
        steps += 1
        if steps > max_steps:
            raise RuntimeError("xreduce did not terminate")
        lt, lc = _tp_leading(h)
        for entry in reversed(table):
            if entry.mixed_lead == lt:
                c = lc / entry.mixed_lead_coeff
                f = f - entry.poly.scale(c)
                nf_f = nf_f - entry.nf.scale(c)
                h = nf_f.split_pure_mixed(A_VARS, B_VARS)[2]
                break
        else:
            h = h - Polynomial(RING, {lt: lc}, _trusted=True)
    return f


def _elimination_basis(exprs: Sequence[Polynomial], chart_vars: Sequence[str]) -> Tuple[GroebnerBasis, VarTable]:
    ys = y_names(len(exprs))
    R = VarTable(list(chart_vars) + ys)
    gens = [R.var(y) - e.to_ring(R) for y, e in zip(ys, exprs)]
    return buchberger(gens, lexdeg(list(chart_vars), ys), R), R


def is_new(f: Polynomial, ghfs: Sequence[Polynomial]) -> bool:
    """Whether f is not generated by ``ghfs`` (tested via linear terms at y = 0)."""
    polys = [p.to_ring(BETA_RING) for p in ghfs] + [f.to_ring(BETA_RING)]
    G, R = _elimination_basis(polys, ["v2", "v1", "b"])
    ys = y_names(len(polys))
    last = ys[-1]
    zero = {y: 0 for y in ys}
    for e in eliminate(G, ys):
        if not e.diff(last).evaluate(zero).is_zero():
            return False
    return True


@dataclass
class Ghf:
    beta: Polynomial
    gamma: Polynomial
    degree: int


@dataclass
class SearchState:
    ghfs: List[Ghf] = field(default_factory=list)
    tables: Dict[int, List[GhfEntry]] = field(default_factory=dict)


def _monic(p: Polynomial, order=GHF_ORDER) -> Polynomial:
    m = max(p.terms, key=order.keyer(p.ring))
    return p / p.terms[m]


def polysearch(monomials: Sequence[Monomial], state: SearchState, ideal: TransitionIdeal, weights: Sequence[int]) -> SearchState:
    """Process one weighted-degree slice, extending ``state`` in place."""
    if not monomials:
        return state
    d = sum(a * b for a, b in zip(monomials[0], weights[:3]))
    table = state.tables.setdefault(d, [])
    for e in monomials:
        mono = Polynomial(RING, {tuple(e) + (0, 0, 0): 1}, _trusted=True)
        f = xreduce(mono, table, ideal)
        if f.is_zero():
            continue
        nf_f = ideal.nf(f)
        mx = nf_f.split_pure_mixed(A_VARS, B_VARS)[2]
        if mx.is_zero():
            table.append(GhfEntry(f, None, None, nf_f))
            if is_new(f, [g.beta for g in state.ghfs]):
                beta = _monic(f.to_ring(BETA_RING))
                state.ghfs.append(Ghf(beta, ideal.gamma_side(beta), d))
        else:
            lt, lc = _tp_leading(mx)
            table.append(GhfEntry(f, lt, lc, nf_f))
    return state


def find_relations(ghfs: Sequence[Polynomial], ideal: Optional[TransitionIdeal] = None, via_transition_ideal: bool = False) -> List[Polynomial]:
    """Reduced Groebner basis of the relations among the ghfs, in y1..yN.

    By default the elimination runs in k[beta, v1, v2, y]; since the
    (beta, v1, v2) chart embeds in the glued ring this gives the same ideal as
    eliminating every chart variable from the transition ideal.  The second
    route is kept for cross-checking.
    """
    n = len(ghfs)
    if n < 2:
        return []
    ys = y_names(n)
    Y = y_ring(n)
    if not via_transition_ideal:
        G, _ = _elimination_basis([p.to_ring(BETA_RING) for p in ghfs], ["v2", "v1", "b"])
        return [e.to_ring(Y) for e in eliminate(G, ys)]
    if ideal is None:
        raise ValueError("the transition-ideal route needs the ideal")
    chart = ["v2", "w2", "v1", "w1", "b", "g"]
    R = VarTable(chart + ys)
    gens = [g.to_ring(R) for g in ideal.generators]
    gens += [R.var(y) - p.to_ring(R) for y, p in zip(ys, ghfs)]
    G = buchberger(gens, lexdeg(chart, ys), R)
    return [e.to_ring(Y) for e in eliminate(G, ys)]


class Unsolved:
    """Marker for a chart coordinate with no linear solving basis element."""

    def __repr__(self):
        return "Unsolved"

    def __eq__(self, other):
        return isinstance(other, Unsolved)

    def __hash__(self):
        return hash("Unsolved")


UNSOLVED = Unsolved()


@dataclass
class Fraction:
    num: Polynomial
    den: Polynomial

    def __str__(self):
        if self.den == 1:
            return format_polynomial(self.num)
        def wrap(p):
            text = format_polynomial(p)
            return text if len(p) == 1 else f"({text})"

        return f"{wrap(self.num)}/{wrap(self.den)}"


def _monomial_content(p: Polynomial) -> Tuple[int, ...]:
    ms = list(p.terms)
    return tuple(min(m[i] for m in ms) for i in range(len(p.ring)))


def _simplify(num: Polynomial, den: Polynomial) -> Fraction:
    if num.is_zero():
        return Fraction(num, den.ring.one())
    try:
        return Fraction(exact_divide(num, den), den.ring.one())
    except ValueError:
        pass
    cn, cd = _monomial_content(num), _monomial_content(den)
    common = tuple(min(a, b) for a, b in zip(cn, cd))
    if any(common):
        inv = tuple(-a for a in common)
        num = num.mul_monomial(inv)
        den = den.mul_monomial(inv)
    lc = den.terms[max(den.terms)]
    return Fraction(num / lc, den / lc)


CHART_VARS = {"beta": ("v2", "v1", "b"), "gamma": ("w2", "w1", "g")}


def invert_chart(ghfs: Sequence[Ghf], chart: str) -> Dict[str, object]:
    """Express each coordinate of one chart as a fraction of y-polynomials.

    Basis elements linear in a coordinate are used; other coordinates may
    appear in them once they have been solved.  Coordinates that no element
    solves are reported as UNSOLVED.
    """
    if chart not in CHART_VARS:
        raise ValueError(f"unknown chart {chart!r}")
    cvars = CHART_VARS[chart]
    exprs = [g.beta if chart == "beta" else g.gamma for g in ghfs]
    n = len(exprs)
    G, R = _elimination_basis(exprs, cvars)
    Y = y_ring(n)
    key = G.order.keyer(R)
    elements = sorted(G.generators, key=lambda e: key(max(e.terms, key=key)))
    solved: Dict[str, Fraction] = {}
    progress = True
    while progress:
        progress = False
        for var in reversed(cvars):
            if var in solved:
                continue
            for e in elements:
                if e.degree(var) != 1:
                    continue
                others = [c for c in cvars if c != var and e.degree(c) > 0]
                if any(c not in solved for c in others):
                    continue
                parts = e.coefficients_in(var)
                p, q = parts.get(1, R.zero()), parts.get(0, R.zero())
                frac = _substitute_fractions(p, q, others, solved, R, Y)
                if frac is None:
                    continue
                solved[var] = frac
                progress = True
                break
    return {v: solved.get(v, UNSOLVED) for v in reversed(cvars)}


def _substitute_fractions(p, q, others, solved, R, Y) -> Optional[Fraction]:
    """Solve p*var + q = 0 after replacing solved coordinates by their fractions."""
    pn, qn = p, q
    for c in others:
        fr = solved[c]
        N, D = fr.num.to_ring(R), fr.den.to_ring(R)
        K = max(pn.degree(c), qn.degree(c))
        pn = _homogenize(pn, c, N, D, K)
        qn = _homogenize(qn, c, N, D, K)
    pn, qn = pn.to_ring(Y), qn.to_ring(Y)
    if pn.is_zero():
        return None
    return _simplify(-qn, pn)


def _homogenize(f: Polynomial, c: str, N: Polynomial, D: Polynomial, K: int) -> Polynomial:
    out = f.ring.zero()
    for k, coef in f.coefficients_in(c).items():
        out = out + coef * N ** k * D ** (K - k)
    return out


def chart_roundtrip(ghfs: Sequence[Ghf], charts: Dict[str, Dict[str, object]], ideal: TransitionIdeal) -> bool:
    """Check every solved coordinate against the transition functions on both charts.

    For a solved coordinate c = N(y)/D(y), substituting the ghfs in either
    chart must give N = c*D as a Laurent identity, where c is written in
    that chart's coordinates via the gluing maps.
    """
    n = len(ghfs)
    Y = y_ring(n)
    for chart in ("beta", "gamma"):
        for var, frac in charts[chart].items():
            if not isinstance(frac, Fraction):
                return False
            for side, L, expected in (
                ("beta", BETA_LAURENT, ideal.beta_side_of(var)),
                ("gamma", GAMMA_LAURENT, ideal.gamma_side_of(var)),
            ):
                binds = {}
                ext = Y.extend(L.names, invertible=[n for n, f in zip(L.names, L.invertible) if f])
                for y, g in zip(Y.names, ghfs):
                    binds[y] = (g.beta if side == "beta" else g.gamma).to_ring(ext)
                N = frac.num.to_ring(ext).substitute(binds).to_ring(L)
                D = frac.den.to_ring(ext).substitute(binds).to_ring(L)
                if D.is_zero() or N != expected * D:
                    return False
    return True


@dataclass
class BlowdownResult:
    case: str
    weights: Tuple[int, ...]
    max_degree: int
    ghfs: List[Ghf]
    relations: List[Polynomial]
    charts: Dict[str, Dict[str, object]]
    seconds: float = 0.0

    @property
    def complete_charts(self) -> bool:
        if not self.charts:
            return False
        return all(isinstance(v, Fraction) for c in self.charts.values() for v in c.values())


def resolve_weights(case: CaseSpec, weight_pick: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    if weight_pick is not None:
        w = tuple(int(x) for x in weight_pick)
        if len(w) != 6 or not satisfies_weights(case.pterm, w):
            raise ValueError(f"{w} is not a valid weight assignment for {case.name}")
        return w
    if case.weights is not None:
        return tuple(case.weights)
    basis = solve_weights(case)
    if len(basis) != 1:
        raise ValueError(f"{case.name} has a {len(basis)}-dimensional weight lattice; a weight pick is required")
    return basis[0]


def run_case(
    case: CaseSpec,
    max_degree: int,
    weight_pick: Optional[Sequence[int]] = None,
    zero_weight_cap: int = DEFAULT_ZERO_WEIGHT_CAP,
    charts: bool = True,
) -> BlowdownResult:
    """Search slices 1..max_degree, then compute relations and chart inversions."""
    t0 = time.perf_counter()
    weights = resolve_weights(case, weight_pick)
    ideal = build_ideal(case)
    state = SearchState()
    for d in range(1, max_degree + 1):
        polysearch(monomials_of_weight(weights, d, zero_weight_cap), state, ideal, weights)
    betas = [g.beta for g in state.ghfs]
    relations = find_relations(betas)
    inv = {}
    if charts and state.ghfs:
        inv = {c: invert_chart(state.ghfs, c) for c in ("beta", "gamma")}
    return BlowdownResult(case.name, weights, max_degree, state.ghfs, relations, inv, time.perf_counter() - t0)
