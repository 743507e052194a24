"""Sparse multivariate (Laurent) polynomials over the Gaussian rationals Q(i).

Polynomials are immutable maps from exponent tuples to coefficients.  Real
coefficients are stored as ``gmpy2.mpq``; a coefficient with nonzero
imaginary part is a :class:`GaussianRational`.  Keeping the real case on the
fast native type matters because almost every computation in this package is
over Q, and the Groebner engine is coefficient-bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from gmpy2 import mpq

Monomial = Tuple[int, ...]


class GaussianRational:
    """re + im*i with exact rational parts.  Never constructed with im == 0
    by the canonicalizing helper :func:`qi`; direct construction is allowed."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _as_pair(other)
        if o is None:
            return NotImplemented
        return qi(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_pair(other)
        if o is None:
            return NotImplemented
        return qi(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = _as_pair(other)
        if o is None:
            return NotImplemented
        return qi(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = _as_pair(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return qi(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_pair(other)
        if o is None:
            return NotImplemented
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.re, self.im
        return qi((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = _as_pair(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) / self

    def __neg__(self):
        return qi(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** (-n))
        result = mpq(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return qi(self.re, -self.im)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        o = _as_pair(other)
        if o is None:
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_coeff(self)


Coeff = Union[mpq, GaussianRational]


def _to_mpq(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not supported")
    return mpq(x)


def _as_pair(x):
    if isinstance(x, GaussianRational):
        return x.re, x.im
    if isinstance(x, (int, Fraction)) or type(x).__name__ == "mpq" or type(x).__name__ == "mpz":
        return _to_mpq(x), mpq(0)
    return None


def qi(re, im=0) -> Coeff:
    """Canonical coefficient: mpq when real, GaussianRational otherwise."""
    re = _to_mpq(re)
    im = _to_mpq(im)
    if im == 0:
        return re
    return GaussianRational(re, im)


def coeff(x) -> Coeff:
    """Coerce ints, Fractions, strings, mpq or GaussianRational to a canonical coefficient."""
    if isinstance(x, GaussianRational):
        return qi(x.re, x.im)
    if isinstance(x, complex):
        raise TypeError("floating-point coefficients are not supported")
    return _to_mpq(x)


I = GaussianRational(0, 1)


def i_power(k: int) -> Coeff:
    """i**k for any integer k."""
    return [mpq(1), I, mpq(-1), -I][k % 4]


def format_coeff(c) -> str:
    if isinstance(c, GaussianRational):
        re, im = c.re, c.im
        if im == 0:
            return str(re)
        if im == 1:
            ims = "I"
        elif im == -1:
            ims = "-I"
        else:
            ims = f"{im}*I"
        if re == 0:
            return f"({ims})"
        sign = "" if ims.startswith("-") else "+"
        return f"({re}{sign}{ims})"
    return str(c)


# ---------------------------------------------------------------------------
# variable tables


class VarTable:
    """Ordered, named variables; some may be flagged invertible (Laurent)."""

    __slots__ = ("names", "invertible", "_index", "_key")

    def __init__(self, names: Sequence[str], invertible: Iterable[str] = ()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        inv = frozenset(invertible)
        unknown = inv - set(names)
        if unknown:
            raise ValueError(f"invertible flags on unknown variables {sorted(unknown)}")
        self.names = names
        self.invertible = tuple(n in inv for n in names)
        self._index = {n: i for i, n in enumerate(names)}
        self._key = (self.names, self.invertible)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarTable) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        inv = [n for n, f in zip(self.names, self.invertible) if f]
        return f"VarTable({list(self.names)}, invertible={inv})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in {self.names}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    # constructors ---------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = coeff(c)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * len(self.names): c}, _trusted=True)

    def var(self, name: str) -> "Polynomial":
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): mpq(1)}, _trusted=True)

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)

    def monomial(self, exps: Mapping[str, int] | Sequence[int], c=1) -> "Polynomial":
        if isinstance(exps, Mapping):
            e = [0] * len(self.names)
            for n, k in exps.items():
                e[self.index(n)] = k
            exps = e
        return Polynomial(self, {tuple(exps): coeff(c)})

    def parse(self, text: str) -> "Polynomial":
        from .wire import parse_polynomial

        return parse_polynomial(text, self)

    def extend(self, names: Sequence[str], invertible: Iterable[str] = ()) -> "VarTable":
        inv = {n for n, f in zip(self.names, self.invertible) if f} | set(invertible)
        return VarTable(list(self.names) + list(names), inv)


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class NotHomogeneous:
    """Result of :meth:`Polynomial.grade` when two terms have different weights."""

    first: Monomial
    first_degree: int
    second: Monomial
    second_degree: int


class RingMismatch(ValueError):
    pass


class NegativeExponentError(ValueError):
    pass


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: VarTable, terms: Mapping[Monomial, object] | None = None, *, _trusted=False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean: Dict[Monomial, Coeff] = {}
        n = len(ring.names)
        inv = ring.invertible
        for m, c in (terms or {}).items():
            m = tuple(int(k) for k in m)
            if len(m) != n:
                raise ValueError(f"monomial {m} does not match {n} variables")
            for k, flag in zip(m, inv):
                if k < 0 and not flag:
                    raise NegativeExponentError(f"negative exponent in {m} on a non-invertible variable")
            c = coeff(c)
            if c:
                prev = clean.get(m)
                if prev is not None:
                    c = prev + c
                    if not c:
                        del clean[m]
                        continue
                clean[m] = c
        self.terms = clean

    # basic protocol ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Coeff]]:
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            c = coeff(other)
        except (TypeError, ValueError):
            return NotImplemented
        if not c:
            return not self.terms
        return len(self.terms) == 1 and self.terms.get((0,) * len(self.ring)) == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .wire import format_polynomial

        return format_polynomial(self)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"variable tables differ: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            a, b = o.terms, self.terms
        else:
            a, b = self.terms, o.terms
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out, _trusted=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                c = coeff(other)
            except (TypeError, ValueError):
                return NotImplemented
            return self.scale(c)
        o = self._coerce(other)
        out: Dict[Monomial, Coeff] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple([a + b for a, b in zip(m1, m2)])
                v = get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = coeff(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()}, _trusted=True)

    def mul_monomial(self, mono: Monomial, c=1) -> "Polynomial":
        c = coeff(c)
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple([a + b for a, b in zip(m, mono)]): v * c for m, v in self.terms.items()},
        )

    def __truediv__(self, other):
        c = coeff(other)
        return self.scale(1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self.terms) != 1:
                raise NegativeExponentError("only monomials can be raised to negative powers")
            (m, c), = self.terms.items()
            return Polynomial(self.ring, {tuple(k * n for k in m): c ** n})
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # inspection -------------------------------------------------------
    def monomials(self) -> list:
        return list(self.terms)

    def coefficient(self, mono: Monomial | Mapping[str, int]) -> Coeff:
        if isinstance(mono, Mapping):
            e = [0] * len(self.ring)
            for n, k in mono.items():
                e[self.ring.index(n)] = k
            mono = tuple(e)
        return self.terms.get(tuple(mono), mpq(0))

    def constant_coeff(self) -> Coeff:
        return self.terms.get((0,) * len(self.ring), mpq(0))

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, var: str) -> int:
        i = self.ring.index(var)
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def min_degree(self, var: str) -> int:
        i = self.ring.index(var)
        return min((m[i] for m in self.terms), default=0)

    def free_vars(self) -> frozenset:
        used = set()
        for m in self.terms:
            for n, k in zip(self.ring.names, m):
                if k:
                    used.add(n)
        return frozenset(used)

    def is_real(self) -> bool:
        return not any(isinstance(c, GaussianRational) for c in self.terms.values())

    # ring changes -----------------------------------------------------
    def to_ring(self, ring: VarTable) -> "Polynomial":
        """Re-express over another variable table by matching names."""
        if ring == self.ring:
            return self
        used = [False] * len(self.ring)
        for m in self.terms:
            for i, k in enumerate(m):
                if k:
                    used[i] = True
        idx = []
        for i, n in enumerate(self.ring.names):
            if used[i]:
                if n not in ring:
                    raise RingMismatch(f"variable {n!r} not present in target {ring}")
                idx.append((i, ring.index(n)))
        size = len(ring)
        out = {}
        for m, c in self.terms.items():
            e = [0] * size
            for i, j in idx:
                e[j] = m[i]
            out[tuple(e)] = c
        return Polynomial(ring, out)

    # operations -------------------------------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "Polynomial":
        """Simultaneously replace variables by polynomials (or constants) of the same ring."""
        ring = self.ring
        subs = {}
        for name, val in bindings.items():
            i = ring.index(name)
            subs[i] = val if isinstance(val, Polynomial) else ring.const(val)
            if subs[i].ring != ring:
                raise RingMismatch("substituted polynomial must share the variable table")
        if not subs:
            return self
        cache: Dict[Tuple[int, int], Polynomial] = {}

        def power(i, k):
            key = (i, k)
            p = cache.get(key)
            if p is None:
                val = subs[i]
                if k < 0 and len(val.terms) != 1:
                    raise NegativeExponentError(
                        f"negative power of {ring.names[i]} needs a monomial replacement"
                    )
                p = val ** k
                cache[key] = p
            return p

        sub_idx = sorted(subs)
        groups: Dict[Monomial, Dict[Monomial, Coeff]] = {}
        for m, c in self.terms.items():
            key = tuple(m[i] for i in sub_idx)
            rest = list(m)
            for i in sub_idx:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        result = ring.zero()
        for key, rest in groups.items():
            factor = ring.one()
            for i, k in zip(sub_idx, key):
                if k:
                    factor = factor * power(i, k)
            result = result + factor * Polynomial(ring, rest, _trusted=True)
        return result

    def replace_inverse(self, var: str, by: "Polynomial") -> "Polynomial":
        """Replace var**-k by by**k (e.g. rewrite gamma^-1 as beta); positive powers stay."""
        i = self.ring.index(var)
        result = self.ring.zero()
        for m, c in self.terms.items():
            if m[i] < 0:
                e = list(m)
                k = -e[i]
                e[i] = 0
                result = result + Polynomial(self.ring, {tuple(e): c}, _trusted=True) * by ** k
            else:
                result = result + Polynomial(self.ring, {m: c}, _trusted=True)
        return result

    def laurent_coeff(self, var: str, k: int) -> "Polynomial":
        """Coefficient of var**k, returned with var's exponent cleared."""
        i = self.ring.index(var)
        out = {}
        for m, c in self.terms.items():
            if m[i] == k:
                e = list(m)
                e[i] = 0
                out[tuple(e)] = c
        return Polynomial(self.ring, out, _trusted=True)

    def coefficients_in(self, var: str) -> Dict[int, "Polynomial"]:
        """All Laurent coefficients with respect to one variable."""
        i = self.ring.index(var)
        buckets: Dict[int, Dict[Monomial, Coeff]] = {}
        for m, c in self.terms.items():
            e = list(m)
            k = e[i]
            e[i] = 0
            buckets.setdefault(k, {})[tuple(e)] = c
        return {k: Polynomial(self.ring, t, _trusted=True) for k, t in buckets.items()}

    def diff(self, var: str) -> "Polynomial":
        i = self.ring.index(var)
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Polynomial(self.ring, out, _trusted=True)

    def evaluate(self, values: Mapping[str, object]) -> "Polynomial":
        """Substitute constants for some variables."""
        return self.substitute({n: coeff(v) for n, v in values.items()})

    def grade(self, weights: Sequence[int] | Mapping[str, int]) -> int | NotHomogeneous:
        """Common weighted degree of all terms, or a NotHomogeneous witness.

        The zero polynomial has no degree; it is reported as degree 0.
        """
        if isinstance(weights, Mapping):
            w = [weights.get(n, 0) for n in self.ring.names]
        else:
            w = list(weights)
            if len(w) != len(self.ring):
                raise ValueError("weights must align with the variable table")
        first = None
        for m in sorted(self.terms):
            d = sum(a * b for a, b in zip(m, w))
            if first is None:
                first = (m, d)
            elif d != first[1]:
                return NotHomogeneous(first[0], first[1], m, d)
        return 0 if first is None else first[1]

    def split_pure_mixed(self, block_a: Iterable[str], block_b: Iterable[str]):
        """Return (pureA, pureB, mixed); constants count as pure A."""
        ring = self.ring
        a_idx = [ring.index(n) for n in block_a]
        b_idx = [ring.index(n) for n in block_b]
        covered = set(a_idx) | set(b_idx)
        pa, pb, mx = {}, {}, {}
        for m, c in self.terms.items():
            for i, k in enumerate(m):
                if k and i not in covered:
                    raise ValueError(f"variable {ring.names[i]!r} is in neither block")
            in_a = any(m[i] for i in a_idx)
            in_b = any(m[i] for i in b_idx)
            if in_a and in_b:
                mx[m] = c
            elif in_b:
                pb[m] = c
            else:
                pa[m] = c
        mk = lambda t: Polynomial(ring, t, _trusted=True)  # noqa: E731
        return mk(pa), mk(pb), mk(mx)


def split_pure_mixed(f: Polynomial, block_a, block_b):
    return f.split_pure_mixed(block_a, block_b)


def laurent_coeff(f: Polynomial, var: str, k: int) -> Polynomial:
    return f.laurent_coeff(var, k)


def grade(f: Polynomial, weights) -> int | NotHomogeneous:
    return f.grade(weights)


def substitute(f: Polynomial, bindings: Mapping[str, object]) -> Polynomial:
    return f.substitute(bindings)


def arith(a: Polynomial, b: Polynomial, kind: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatch("variable tables differ")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient q with f == q*g, or ValueError when g does not divide f.

    Division runs under lex on the ring's variable order; a zero remainder
    certifies divisibility.  Laurent exponents are not supported here.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.ring != g.ring:
        raise RingMismatch("variable tables differ")
    lt = max(g.terms)
    lc = g.terms[lt]
    rem = dict(f.terms)
    quot: Dict[Monomial, Coeff] = {}
    while rem:
        m = max(rem)
        c = rem[m]
        shift = tuple(a - b for a, b in zip(m, lt))
        if any(k < 0 for k in shift):
            raise ValueError("polynomial division is not exact")
        q = c / lc
        quot[shift] = q
        for e, gc in g.terms.items():
            t = tuple(a + b for a, b in zip(e, shift))
            v = rem.get(t, 0) - q * gc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial(f.ring, quot)


def poly_sum(items: Iterable[Polynomial], ring: VarTable) -> Polynomial:
    out = ring.zero()
    for p in items:
        out = out + p
    return out
