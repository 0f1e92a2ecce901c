"""Truncated multivariate power series in yhat_1..yhat_n with exact rational coefficients.

A series of order K lives in k[[yhat]] / m^{K+1}, where m is the ideal of
series without constant term and the grading is total degree.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from operator import add
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]
Coeff = Rational  # int or Fraction


def normalize(c) -> Rational:
    """Collapse integral Fractions to int so the fast integer path is used."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return normalize(Fraction(c.numerator, c.denominator))
    raise TypeError(f"non-rational coefficient {c!r}")


def exact_div(p, q) -> Rational:
    if isinstance(p, int) and isinstance(q, int):
        if p % q == 0:
            return p // q
        return Fraction(p, q)
    return normalize(Fraction(p) / Fraction(q))


class SeriesError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    n: int
    order: int
    terms: Mapping[Exponent, Coeff] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1 or self.order < 0:
            raise SeriesError("need n >= 1 and order >= 0")
        clean: Dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.n or min(e) < 0:
                raise SeriesError(f"bad exponent {e} for n={self.n}")
            if sum(e) > self.order:
                continue
            c = normalize(c)
            if c != 0:
                clean[e] = c
        object.__setattr__(self, "terms", clean)

    # construction -----------------------------------------------------
    @classmethod
    def _raw(cls, n: int, order: int, terms: Dict[Exponent, Coeff]) -> "TruncatedSeries":
        # trusted constructor: terms already clean
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def constant(cls, n: int, order: int, c=1) -> "TruncatedSeries":
        return cls(n, order, {(0,) * n: c})

    @classmethod
    def one(cls, n: int, order: int) -> "TruncatedSeries":
        return cls.constant(n, order, 1)

    @classmethod
    def zero(cls, n: int, order: int) -> "TruncatedSeries":
        return cls._raw(n, order, {})

    @classmethod
    def monomial(cls, exponent: Sequence[int], order: int, c=1) -> "TruncatedSeries":
        return cls(len(exponent), order, {tuple(exponent): c})

    @classmethod
    def variable(cls, i: int, n: int, order: int) -> "TruncatedSeries":
        e = [0] * n
        e[i] = 1
        return cls(n, order, {tuple(e): 1})

    # basic queries ----------------------------------------------------
    def coefficient(self, e: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(e), 0)

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * self.n, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Largest total degree of a stored term (-1 for zero)."""
        return max((sum(e) for e in self.terms), default=-1)

    def items(self) -> Iterator[Tuple[Exponent, Coeff]]:
        return iter(sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])))

    def homogeneous(self) -> List[List[Tuple[Exponent, Coeff]]]:
        parts: List[List[Tuple[Exponent, Coeff]]] = [[] for _ in range(self.order + 1)]
        for e, c in self.terms.items():
            parts[sum(e)].append((e, c))
        return parts

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError("cannot raise truncation order")
        return TruncatedSeries._raw(
            self.n, order, {e: c for e, c in self.terms.items() if sum(e) <= order}
        )

    def with_order(self, order: int) -> "TruncatedSeries":
        """Reinterpret the stored terms at a different order (drops terms above it)."""
        return TruncatedSeries(self.n, order, dict(self.terms))

    def _check(self, other: "TruncatedSeries"):
        if self.n != other.n or self.order != other.order:
            raise SeriesError(
                f"mismatch: (n={self.n},K={self.order}) vs (n={other.n},K={other.order})"
            )

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries.constant(self.n, self.order, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = normalize(v)
            else:
                out.pop(e, None)
        return TruncatedSeries._raw(self.n, self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.n, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        c = normalize(c)
        if c == 0:
            return TruncatedSeries.zero(self.n, self.order)
        return TruncatedSeries._raw(
            self.n, self.order, {e: normalize(v * c) for e, v in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        return TruncatedSeries._raw(self.n, self.order, _mul_terms(self.terms, other.terms, self.order))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.n == other.n and self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.order, frozenset(self.terms.items())))

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise SeriesError("use pow_rational for non-integer exponents")
        return pow_rational(self, e)

    def shift(self, e: Sequence[int]) -> "TruncatedSeries":
        """Multiply by the monomial yhat^e."""
        e = tuple(e)
        return TruncatedSeries(self.n, self.order, {tuple(map(add, k, e)): c for k, c in self.terms.items()})

    # presentation -----------------------------------------------------
    def to_text(self) -> str:
        return format_terms(self.items(), self.n)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"TruncatedSeries(n={self.n}, order={self.order}, '{self.to_text()}')"


def _mul_terms(a: Mapping[Exponent, Coeff], b: Mapping[Exponent, Coeff], K: int) -> Dict[Exponent, Coeff]:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    bydeg: List[List[Tuple[Exponent, Coeff]]] = [[] for _ in range(K + 1)]
    for e, c in b.items():
        bydeg[sum(e)].append((e, c))
    out: Dict[Exponent, Coeff] = {}
    get = out.get
    two = len(next(iter(a))) == 2
    for ea, ca in a.items():
        room = K - sum(ea)
        if two:
            a0, a1 = ea
            for d in range(room + 1):
                for (b0, b1), cb in bydeg[d]:
                    k = (a0 + b0, a1 + b1)
                    out[k] = get(k, 0) + ca * cb
        else:
            for d in range(room + 1):
                for eb, cb in bydeg[d]:
                    k = tuple(map(add, ea, eb))
                    out[k] = get(k, 0) + ca * cb
    return {e: normalize(c) for e, c in out.items() if c}


def _mul_homog(a: List[Tuple[Exponent, Coeff]], b: List[Tuple[Exponent, Coeff]], acc: Dict[Exponent, Coeff], scale):
    get = acc.get
    for ea, ca in a:
        cs = ca * scale
        for eb, cb in b:
            k = tuple(map(add, ea, eb))
            acc[k] = get(k, 0) + cs * cb


def _unit_power(f: TruncatedSeries, e) -> TruncatedSeries:
    """(f)^e for f with constant term 1, via the Euler-operator recurrence.

    With g = f^e and E the total-degree operator, f*E(g) = e*E(f)*g, which gives
    d*g_d = sum_{j=1..d} (e*j - (d - j)) f_j g_{d-j} on homogeneous parts.
    """
    K, n = f.order, f.n
    fh = f.homogeneous()
    gh: List[List[Tuple[Exponent, Coeff]]] = [[((0,) * n, 1)]]
    e = normalize(e)
    for d in range(1, K + 1):
        acc: Dict[Exponent, Coeff] = {}
        for j in range(1, d + 1):
            if not fh[j] or not gh[d - j]:
                continue
            w = e * j - (d - j)
            if w == 0:
                continue
            _mul_homog(fh[j], gh[d - j], acc, w)
        gh.append([(k, exact_div(v, d)) if isinstance(v, int) else (k, normalize(v / d)) for k, v in acc.items() if v])
    out = {k: v for part in gh for k, v in part}
    return TruncatedSeries._raw(n, K, out)


def invert(a: TruncatedSeries) -> TruncatedSeries:
    c0 = a.constant_term()
    if c0 == 0:
        raise SeriesError("series with zero constant term is not invertible")
    return pow_rational(a, -1)


def pow_rational(a: TruncatedSeries, e) -> TruncatedSeries:
    """Binomial-series power a^e for rational e.

    Non-integer e needs constant term 1; integer e allows any nonzero constant
    (and e >= 0 allows anything, computed by squaring).
    """
    e = normalize(Fraction(e))
    if e == 0:
        return TruncatedSeries.one(a.n, a.order)
    c0 = a.constant_term()
    if isinstance(e, int):
        if c0 == 0:
            if e < 0:
                raise SeriesError("negative power of a non-unit")
            return _power_by_squaring(a, e)
        unit = a.scale(exact_div(1, c0)) if c0 != 1 else a
        return _unit_power(unit, e).scale(Fraction(c0) ** e)
    if c0 != 1:
        raise SeriesError("rational powers need constant term 1")
    return _unit_power(a, e)


def _power_by_squaring(a: TruncatedSeries, e: int) -> TruncatedSeries:
    result = TruncatedSeries.one(a.n, a.order)
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def sqrt(a: TruncatedSeries) -> TruncatedSeries:
    c0 = Fraction(a.constant_term())
    if c0 <= 0:
        raise SeriesError("square root needs a positive square constant term")
    rn, rd = math.isqrt(c0.numerator), math.isqrt(c0.denominator)
    if rn * rn != c0.numerator or rd * rd != c0.denominator:
        raise SeriesError(f"constant term {c0} is not a rational square")
    r = Fraction(rn, rd)
    return _unit_power(a.scale(1 / c0), Fraction(1, 2)).scale(r)


def restrict_exponent_ray(a: TruncatedSeries, d: Sequence[int]) -> TruncatedSeries:
    """Keep the terms whose exponent is k*d for some integer k >= 0."""
    d = tuple(d)
    if len(d) != a.n or min(d) < 0 or not any(d):
        raise SeriesError("direction must be a nonzero non-negative vector")
    out = {}
    for e, c in a.terms.items():
        k = None
        ok = True
        for ei, di in zip(e, d):
            if di == 0:
                if ei != 0:
                    ok = False
                    break
                continue
            if ei % di:
                ok = False
                break
            if k is None:
                k = ei // di
            elif k != ei // di:
                ok = False
                break
        if ok:
            out[e] = c
    return TruncatedSeries._raw(a.n, a.order, out)


def exact_quotient(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """num / den for a division known to be exact.

    Works at the common order; asserts the product reproduces num, which catches
    sign or indexing slips in the recursions that feed it.
    """
    q = num * invert(den)
    if q * den != num:
        raise SeriesError("division not exact at this order")
    return q


def exact_polynomial_quotient(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """Exact polynomial division: the orders must be large enough to hold num whole.

    An exact quotient has degree deg(num) - deg(den), so it is computed at that
    order and then required to reproduce num when multiplied back.
    """
    dn, dd = num.degree(), den.degree()
    D = dn - dd
    if D < 0:
        raise SeriesError("polynomial division is not exact")
    q = num.with_order(D) * invert(den.with_order(D))
    big = max(dn, 0)
    prod = q.with_order(big) * den.with_order(big)
    if prod != num.with_order(big):
        raise SeriesError("polynomial division is not exact")
    return q


def compose(a: TruncatedSeries, images: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Substitute yhat_i -> images[i]; images need zero constant term."""
    if len(images) != a.n:
        raise SeriesError("need one image per variable")
    m = images[0].n
    K = images[0].order
    for im in images:
        if im.n != m or im.order != K:
            raise SeriesError("images must share n and order")
        if im.constant_term() != 0:
            raise SeriesError("images must lie in the maximal ideal")
    powers: List[List[TruncatedSeries]] = []
    for im in images:
        row = [TruncatedSeries.one(m, K)]
        for _ in range(a.order):
            row.append(row[-1] * im)
        powers.append(row)
    out = TruncatedSeries.zero(m, K)
    for e, c in a.terms.items():
        if sum(e) > K:
            continue
        t = TruncatedSeries.constant(m, K, c)
        for i, ei in enumerate(e):
            if ei:
                t = t * powers[i][ei]
        out = out + t
    return out


# text form ----------------------------------------------------------------

def format_monomial(e: Sequence[int], var: str = "y") -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"{var}{i + 1}")
        elif k:
            parts.append(f"{var}{i + 1}^{k}")
    return "*".join(parts)


def format_terms(items: Iterable[Tuple[Exponent, Coeff]], n: int, var: str = "y") -> str:
    out = []
    for e, c in items:
        mono = format_monomial(e, var)
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag} * {mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?((?:[a-z]\d+(?:\^\d+)?\*?)*)\s*")


def parse_series(text: str, n: int, order: int, var: str = "y") -> TruncatedSeries:
    """Inverse of to_text."""
    terms: Dict[Exponent, Coeff] = {}
    s = text.strip()
    if s == "0":
        return TruncatedSeries.zero(n, order)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise SeriesError(f"cannot parse series near {s[pos:]!r}")
        sign, num, mono = m.group(1), m.group(2), m.group(3)
        if not first and sign is None:
            raise SeriesError(f"missing sign near {s[pos:]!r}")
        first = False
        c = Fraction(num) if num else Fraction(1)
        if not num and not mono:
            raise SeriesError(f"empty term near {s[pos:]!r}")
        if sign == "-":
            c = -c
        e = [0] * n
        for tok in filter(None, mono.split("*")):
            mm = re.fullmatch(rf"{var}(\d+)(?:\^(\d+))?", tok)
            if not mm:
                raise SeriesError(f"bad factor {tok!r}")
            e[int(mm.group(1)) - 1] += int(mm.group(2) or 1)
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
        pos = m.end()
    return TruncatedSeries(n, order, terms)
