"""Term orders, multivariate division and Buchberger's algorithm.

Orders are described by small immutable objects and turned into sort keys
for a given variable table.  A larger key means a larger monomial.  The
Groebner routines work on raw ``{exponent tuple: coefficient}`` dicts and
only wrap results back into :class:`Polynomial` at the boundary.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .polyring import Monomial, Polynomial, VarTable

Key = Callable[[Monomial], tuple]


class Cmp(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


class NonAdmissibleOrder(ValueError):
    """Raised when a weighted order with negative weights reaches Buchberger."""


class TermOrder:
    admissible = True

    def _raw_key(self, ring: VarTable) -> Key:
        raise NotImplementedError

    def variables(self, ring: VarTable) -> Tuple[str, ...]:
        return ring.names

    def keyer(self, ring: VarTable) -> Key:
        """Memoized sort key for monomials of ``ring``."""
        cache = self.__dict__.setdefault("_keyers", {})
        k = cache.get(ring)
        if k is None:
            raw = self._raw_key(ring)
            memo: Dict[Monomial, tuple] = {}

            def k(m, _memo=memo, _raw=raw):
                v = _memo.get(m)
                if v is None:
                    v = _raw(m)
                    _memo[m] = v
                return v

            cache[ring] = k
        return k


def _indices(ring: VarTable, names: Optional[Sequence[str]]) -> List[int]:
    if names is None:
        return list(range(len(ring)))
    return [ring.index(n) for n in names]


@dataclass(frozen=True)
class Lex(TermOrder):
    """Lexicographic order; ``vars`` lists variables from most to least significant."""

    vars: Optional[Tuple[str, ...]] = None

    def _raw_key(self, ring):
        idx = _indices(ring, self.vars)
        return lambda m: tuple([m[i] for i in idx])

    def variables(self, ring):
        return tuple(self.vars) if self.vars is not None else ring.names


@dataclass(frozen=True)
class GRevLex(TermOrder):
    """Graded reverse lexicographic order over ``vars`` (largest variable first)."""

    vars: Optional[Tuple[str, ...]] = None

    def _raw_key(self, ring):
        idx = _indices(ring, self.vars)
        rev = idx[::-1]
        return lambda m: (sum([m[i] for i in idx]), tuple([-m[i] for i in rev]))

    def variables(self, ring):
        return tuple(self.vars) if self.vars is not None else ring.names


@dataclass(frozen=True)
class Weighted(TermOrder):
    """Compare weighted degree first, then fall back to ``tiebreak``.

    With a negative weight this is not a monomial order; it is used only to
    rank terms and is rejected by :func:`buchberger`.
    """

    weights: Tuple[Tuple[str, int], ...]
    tiebreak: TermOrder

    @property
    def admissible(self):
        return all(w >= 0 for _, w in self.weights) and self.tiebreak.admissible

    def _raw_key(self, ring):
        pairs = [(ring.index(n), w) for n, w in self.weights if w]
        tb = self.tiebreak._raw_key(ring)
        return lambda m: (sum([m[i] * w for i, w in pairs]), tb(m))


@dataclass(frozen=True)
class Block(TermOrder):
    """Elimination order: earlier blocks dominate, each block ordered by its own order."""

    blocks: Tuple[Tuple[Tuple[str, ...], TermOrder], ...]

    @property
    def admissible(self):
        return all(o.admissible for _, o in self.blocks)

    def _raw_key(self, ring):
        seen = set()
        for names, _ in self.blocks:
            for n in names:
                if n in seen:
                    raise ValueError(f"variable {n!r} appears in two blocks")
                seen.add(n)
        missing = set(ring.names) - seen
        if missing:
            raise ValueError(f"block order does not cover {sorted(missing)}")
        keys = [o._raw_key(ring) for _, o in self.blocks]
        return lambda m: tuple([k(m) for k in keys])

    def variables(self, ring):
        return tuple(n for names, _ in self.blocks for n in names)

    @property
    def last_block(self) -> Tuple[str, ...]:
        return tuple(self.blocks[-1][0])


def weighted(weights: Dict[str, int] | Sequence[Tuple[str, int]], tiebreak: TermOrder) -> Weighted:
    items = tuple(weights.items()) if isinstance(weights, dict) else tuple(weights)
    return Weighted(items, tiebreak)


def lexdeg(*blocks: Sequence[str]) -> Block:
    """Block order with graded reverse lex inside each block."""
    return Block(tuple((tuple(b), GRevLex(tuple(b))) for b in blocks))


def compare(order: TermOrder, a: Monomial, b: Monomial, ring: VarTable) -> Cmp:
    k = order.keyer(ring)
    ka, kb = k(tuple(a)), k(tuple(b))
    if ka == kb:
        return Cmp.EQ
    return Cmp.GT if ka > kb else Cmp.LT


def leading_monomial(f: Polynomial, order: TermOrder) -> Monomial:
    if f.is_zero():
        raise ValueError("zero polynomial has no leading term")
    return max(f.terms, key=order.keyer(f.ring))


def leading_term(f: Polynomial, order: TermOrder):
    """(monomial, coefficient) of the largest term under ``order``."""
    m = leading_monomial(f, order)
    return m, f.terms[m]


# ---------------------------------------------------------------------------
# raw dict helpers


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Reducer:
    __slots__ = ("lt", "lc", "terms", "tail")

    def __init__(self, lt, terms):
        self.lt = lt
        self.lc = terms[lt]
        self.terms = terms
        self.tail = [(m, c) for m, c in terms.items() if m != lt]


def _reduce(p: dict, reducers: List[_Reducer], key: Key, quotients: Optional[List[dict]] = None) -> dict:
    """Full reduction of ``p`` by ``reducers``; returns the remainder dict."""
    p = dict(p)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        for idx, r in enumerate(reducers):
            lt = r.lt
            ok = True
            for x, y in zip(lt, m):
                if x > y:
                    ok = False
                    break
            if not ok:
                continue
            q = c / r.lc if r.lc != 1 else c
            shift = tuple([x - y for x, y in zip(m, lt)])
            if quotients is not None:
                qd = quotients[idx]
                v = qd.get(shift, 0) + q
                if v:
                    qd[shift] = v
                else:
                    qd.pop(shift, None)
            get = p.get
            for e, gc in r.tail:
                t = tuple([x + y for x, y in zip(e, shift)])
                v = get(t)
                if v is None:
                    p[t] = -q * gc
                else:
                    v = v - q * gc
                    if v:
                        p[t] = v
                    else:
                        del p[t]
            break
        else:
            rem[m] = c
    return rem


def _monic(terms: dict, key: Key) -> dict:
    lt = max(terms, key=key)
    lc = terms[lt]
    if lc == 1:
        return terms
    inv = 1 / lc
    return {m: c * inv for m, c in terms.items()}


# ---------------------------------------------------------------------------
# public API


def normal_form(f: Polynomial, G: Sequence[Polynomial] | "GroebnerBasis", order: TermOrder | None = None) -> Polynomial:
    """Remainder of multivariate division of f by G (every term fully reduced)."""
    if isinstance(G, GroebnerBasis):
        order = G.order if order is None else order
        G = G.generators
    if order is None:
        raise ValueError("an order is required")
    if not order.admissible:
        raise NonAdmissibleOrder("division needs an admissible order")
    key = order.keyer(f.ring)
    reducers = [_Reducer(max(g.terms, key=key), g.terms) for g in G if g.terms]
    for g in G:
        if g.ring != f.ring:
            raise ValueError("divisor over a different variable table")
    return Polynomial(f.ring, _reduce(f.terms, reducers, key), _trusted=True)


def divide(f: Polynomial, G: Sequence[Polynomial], order: TermOrder) -> Tuple[List[Polynomial], Polynomial]:
    """Quotients and remainder with f = sum(q_i * G_i) + r."""
    if not order.admissible:
        raise NonAdmissibleOrder("division needs an admissible order")
    key = order.keyer(f.ring)
    G = [g for g in G]
    reducers = [_Reducer(max(g.terms, key=key), g.terms) for g in G]
    quots: List[dict] = [{} for _ in G]
    rem = _reduce(f.terms, reducers, key, quots)
    return [Polynomial(f.ring, q) for q in quots], Polynomial(f.ring, rem, _trusted=True)


@dataclass
class GroebnerBasis:
    generators: List[Polynomial]
    order: TermOrder
    ring: VarTable

    def __post_init__(self):
        key = self.order.keyer(self.ring)
        self._reducers = [_Reducer(max(g.terms, key=key), g.terms) for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def leading_monomials(self) -> List[Monomial]:
        return [r.lt for r in self._reducers]

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("polynomial over a different variable table")
        key = self.order.keyer(self.ring)
        return Polynomial(self.ring, _reduce(f.terms, self._reducers, key), _trusted=True)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()


def buchberger(gens: Iterable[Polynomial], order: TermOrder, ring: VarTable | None = None) -> GroebnerBasis:
    """Reduced, monic Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first) with the
    coprime-leading-term criterion and Gebauer-Moeller pair pruning.
    """
    if not order.admissible:
        raise NonAdmissibleOrder("Buchberger's algorithm needs an admissible term order")
    gens = [g for g in gens]
    if ring is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators over different variable tables")
        if any(k < 0 for m in g.terms for k in m):
            raise ValueError("Groebner bases need true polynomials (no negative exponents)")
    key = order.keyer(ring)

    def pair_key(lcm):
        return (sum(lcm), key(lcm))

    polys: List[dict] = []
    lts: List[Monomial] = []
    alive: List[int] = []
    pairs: Dict[Tuple[int, int], Monomial] = {}

    def reducers():
        return [_Reducer(lts[i], polys[i]) for i in alive]

    def update(h_terms: dict):
        nonlocal alive
        h = len(polys)
        polys.append(h_terms)
        lth = max(h_terms, key=key)
        lts.append(lth)
        # Gebauer-Moeller: new pairs
        cands = [(g, _lcm(lth, lts[g])) for g in alive]
        kept = []
        for n, (g, l) in enumerate(cands):
            if _coprime(lth, lts[g]):
                kept.append((g, l))
                continue
            redundant = False
            for g2, l2 in cands[n + 1:]:
                if _divides(l2, l):
                    redundant = True
                    break
            if not redundant:
                for g2, l2 in kept:
                    if _divides(l2, l):
                        redundant = True
                        break
            if not redundant:
                kept.append((g, l))
        new_pairs = {(g, h): l for g, l in kept if not _coprime(lth, lts[g])}
        # prune old pairs
        for (a, b), l in list(pairs.items()):
            if _divides(lth, l) and _lcm(lts[a], lth) != l and _lcm(lts[b], lth) != l:
                del pairs[(a, b)]
        pairs.update(new_pairs)
        alive = [g for g in alive if not _divides(lth, lts[g])] + [h]

    # interreduce input generators first for a cleaner start
    start = []
    for g in gens:
        if g.terms:
            start.append(_monic(dict(g.terms), key))
    start.sort(key=lambda t: key(max(t, key=key)))
    for t in start:
        r = _reduce(t, reducers(), key)
        if r:
            update(_monic(r, key))

    while pairs:
        (a, b) = min(pairs, key=lambda p: (pair_key(pairs[p]), p))
        l = pairs.pop((a, b))
        fa, fb = polys[a], polys[b]
        la, lb = lts[a], lts[b]
        sa = tuple([x - y for x, y in zip(l, la)])
        sb = tuple([x - y for x, y in zip(l, lb)])
        s = {}
        for m, c in fa.items():
            if m == la:
                continue
            s[tuple([x + y for x, y in zip(m, sa)])] = c
        for m, c in fb.items():
            if m == lb:
                continue
            t = tuple([x + y for x, y in zip(m, sb)])
            v = s.get(t, 0) - c
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        if not s:
            continue
        r = _reduce(s, reducers(), key)
        if r:
            update(_monic(r, key))

    # minimal then reduced basis
    final = [i for i in alive]
    final.sort(key=lambda i: key(lts[i]))
    minimal = []
    for i in final:
        if not any(_divides(lts[j], lts[i]) for j in minimal):
            minimal.append(i)
    out = []
    for i in minimal:
        others = [_Reducer(lts[j], polys[j]) for j in minimal if j != i]
        tail = {m: c for m, c in polys[i].items() if m != lts[i]}
        red = _reduce(tail, others, key)
        red[lts[i]] = polys[i][lts[i]]
        out.append(red)
    out.sort(key=lambda t: key(max(t, key=key)), reverse=True)
    return GroebnerBasis([Polynomial(ring, t, _trusted=True) for t in out], order, ring)


def eliminate(G: GroebnerBasis, keep: Iterable[str]) -> List[Polynomial]:
    """Basis elements supported on ``keep``: a Groebner basis of the elimination ideal."""
    keep = tuple(keep)
    order = G.order
    if not isinstance(order, Block) or set(order.last_block) != set(keep):
        raise ValueError("eliminate needs a block order whose last block is exactly the kept variables")
    drop = [G.ring.index(n) for n in G.ring.names if n not in set(keep)]
    return [g for g in G.generators if all(not m[i] for m in g.terms for i in drop)]


def elimination_ideal(gens: Sequence[Polynomial], eliminate_vars: Sequence[str], keep: Sequence[str]) -> List[Polynomial]:
    """Generators of the ideal intersected with k[keep], via lexdeg(eliminate_vars, keep)."""
    order = lexdeg(tuple(eliminate_vars), tuple(keep))
    G = buchberger(gens, order)
    return eliminate(G, keep)
