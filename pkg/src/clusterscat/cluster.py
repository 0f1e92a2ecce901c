"""Rank-2 cluster algebras with principal coefficients.

Exchange matrix B = [[0, b], [a, 0]].  Cluster variables x_i (i in Z) with x_1,
x_2 initial and x_{i-1} x_{i+1} exchanged across x_i.  Each x_i equals
x^{g_i} F_i(yhat).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .rootdata import RootData, primitive
from .scat import CCW, CW, LaurentElement, PathSpec, ScatteringDiagram, path_ordered_product
from .series import (
    TruncatedSeries,
    exact_polynomial_quotient,
    exact_quotient,
    pow_rational,
    restrict_exponent_ray,
    sqrt,
)


class ClusterError(ValueError):
    pass


@dataclass(frozen=True)
class Rank2Params:
    a: int
    b: int

    def __post_init__(self):
        if not ((self.a < 0 < self.b) or (self.a == 0 and self.b == 0)):
            raise ClusterError("need a < 0 < b (or a = b = 0 for A1 x A1)")

    @property
    def data(self) -> RootData:
        return RootData.rank2(self.a, self.b)

    @property
    def is_finite(self) -> bool:
        return self.a * self.b >= -3

    @property
    def is_affine(self) -> bool:
        return self.a * self.b == -4

    @property
    def num_cluster_variables(self) -> Optional[int]:
        """h + 2 in finite type, None otherwise."""
        return {0: 4, -1: 5, -2: 6, -3: 8}.get(self.a * self.b)


# ---------------------------------------------------------------------------
# P and Q sequences

@lru_cache(maxsize=None)
def _P(m: int, ab: int) -> int:
    if m == -2:
        return -1
    if m == -1:
        return 0
    if m % 2 == 0:
        return -ab * _P(m - 1, ab) - _P(m - 2, ab)
    return _P(m - 1, ab) - _P(m - 2, ab)


def poly_P(m: int, params: Rank2Params) -> int:
    if m < -2:
        raise ClusterError("P_m needs m >= -2")
    for k in range(-2, m):  # warm the cache bottom-up
        _P(k, params.a * params.b)
    return _P(m, params.a * params.b)


@lru_cache(maxsize=None)
def _Q(m: int, a: int, b: int) -> int:
    if m == 0:
        return 1
    if m == 1:
        return -1
    if m % 2 == 0:
        return b * _Q(m - 1, a, b) - _Q(m - 2, a, b)
    return -a * _Q(m - 1, a, b) - _Q(m - 2, a, b)


def poly_Q(m: int, params: Rank2Params) -> int:
    if m < 0:
        raise ClusterError("Q_m needs m >= 0")
    for k in range(0, m):
        _Q(k, params.a, params.b)
    return _Q(m, params.a, params.b)


# ---------------------------------------------------------------------------
# g-vectors and c-roots

def g_vector(i: int, params: Rank2Params) -> Tuple[int, int]:
    a, b = params.a, params.b
    P = lambda m: poly_P(m, params)
    if i <= 0:
        if i % 2:
            return (-P(-i - 1), -a * P(-i - 2))
        return (-b * P(-i - 1), P(-i - 2))
    if i == 1:
        return (1, 0)
    if i % 2:
        return (-P(i - 3), -a * P(i - 2))
    return (-b * P(i - 3), P(i - 2))


def c_root(i: int, params: Rank2Params) -> Tuple[Tuple[int, int], Tuple[int, ...]]:
    """(c_i, c_i^vee): the positive root orthogonal to g_i and its co-root."""
    a, b = params.a, params.b
    P = lambda m: poly_P(m, params)
    if i == 0:
        c = (1, 0)
    elif i == 1:
        c = (0, 1)
    elif i < 0:
        c = (P(-i - 2), -a * P(-i - 1)) if i % 2 == 0 else (b * P(-i - 2), P(-i - 1))
    else:
        c = (P(i - 2), -a * P(i - 3)) if i % 2 == 0 else (b * P(i - 2), P(i - 3))
    return c, params.data.coroot(primitive(c)) if any(c) else (0, 0)


def _exponent(j: int, params: Rank2Params) -> int:
    # power of F_j in the exchange relation through x_j
    return params.b if j % 2 else -params.a


# ---------------------------------------------------------------------------
# F-polynomials

def _poly_mul(p: TruncatedSeries, q: TruncatedSeries) -> TruncatedSeries:
    """Exact product of polynomials stored as series."""
    top = max(p.degree(), 0) + max(q.degree(), 0)
    return p.with_order(top) * q.with_order(top)


def _poly_pow(p: TruncatedSeries, e: int) -> TruncatedSeries:
    top = max(p.degree(), 0) * e
    return pow_rational(p.with_order(top), e) if e else TruncatedSeries.one(2, 0)


def _poly_add(p: TruncatedSeries, q: TruncatedSeries) -> TruncatedSeries:
    top = max(p.order, q.order)
    return p.with_order(top) + q.with_order(top)


class FSequence:
    """F-polynomials F_i computed by the exchange recursion, exact or truncated.

    order=None keeps exact polynomials (every division is checked to leave no
    remainder); an integer order works mod m^{order+1}.
    """

    def __init__(self, params: Rank2Params, order: Optional[int] = None):
        self.params = params
        self.order = order
        self._F: Dict[int, TruncatedSeries] = {}
        one = self._series({(0, 0): 1}, 0)
        self._F[1] = one
        self._F[2] = one
        self._F[0] = self._series({(0, 0): 1, (0, 1): 1}, 1)
        # F_{-1} = 1 + yhat_1 (1 + yhat_2)^{-a}
        e = -params.a
        terms = {(0, 0): 1}
        for k in range(e + 1):
            terms[(1, k)] = math.comb(e, k)
        self._F[-1] = self._series(terms, 1 + e)

    def _series(self, terms, degree) -> TruncatedSeries:
        K = degree if self.order is None else self.order
        return TruncatedSeries(2, K, terms)

    def _mono(self, c) -> TruncatedSeries:
        return self._series({tuple(c): 1}, sum(c))

    def _step(self, far: TruncatedSeries, mid: TruncatedSeries, e: int, c) -> TruncatedSeries:
        if self.order is None:
            num = _poly_add(_poly_pow(mid, e), self._mono(c))
            top = num.order
            return exact_polynomial_quotient(num, far.with_order(top)).with_order(
                num.degree() - far.degree()
            )
        num = pow_rational(mid, e) + self._mono(c)
        return exact_quotient(num, far)

    def __getitem__(self, i: int) -> TruncatedSeries:
        if i in self._F:
            return self._F[i]
        p = self.params
        if p.is_finite:
            N = p.num_cluster_variables
            # the window 3-N..2 holds every cluster variable once
            j = (i - (3 - N)) % N + (3 - N)
            if j != i:
                return self[j]
        if i < 0:
            lo = min(k for k in self._F)
            for k in range(lo - 1, i - 1, -1):
                c, _ = c_root(k + 1, p)
                self._check_root(c, k)
                self._F[k] = self._step(self._F[k + 2], self._F[k + 1], _exponent(k + 1, p), c)
        else:
            hi = max(k for k in self._F)
            for k in range(hi + 1, i + 1):
                c, _ = c_root(k - 1, p)
                self._check_root(c, k)
                self._F[k] = self._step(self._F[k - 2], self._F[k - 1], _exponent(k - 1, p), c)
        return self._F[i]

    @staticmethod
    def _check_root(c, k):
        if min(c) < 0 or not any(c):
            raise ClusterError(f"exchange monomial for F_{k} is not a positive root: {c}")


_SEQ_CACHE: Dict[Tuple[int, int, Optional[int]], FSequence] = {}


def f_sequence(params: Rank2Params, K: Optional[int] = None) -> FSequence:
    key = (params.a, params.b, K)
    if key not in _SEQ_CACHE:
        _SEQ_CACHE[key] = FSequence(params, K)
    return _SEQ_CACHE[key]


def f_polynomial(i: int, params: Rank2Params, K: Optional[int] = None) -> TruncatedSeries:
    """F_i mod m^{K+1}, or the exact polynomial when K is None."""
    return f_sequence(params, K)[i]


def cluster_index(i: int, params: Rank2Params) -> int:
    """Canonical index for x_i (reduces finite-type periodicity into 3-N..2)."""
    if params.is_finite:
        N = params.num_cluster_variables
        return (i - (3 - N)) % N + (3 - N)
    return i


def cluster_variable(i: int, params: Rank2Params, K: int) -> LaurentElement:
    j = cluster_index(i, params)
    return LaurentElement(g_vector(j, params), (0, 0), f_polynomial(j, params, K))


def cluster_indices(params: Rank2Params, span: int = 5) -> List[int]:
    """All cluster variables in finite type, else indices with |i| <= span."""
    if params.is_finite:
        N = params.num_cluster_variables
        return list(range(3 - N, 3))
    return [i for i in range(-span, span + 1)]


def chamber_point(i: int, params: Rank2Params) -> Tuple[int, int]:
    """Interior point g_i + g_{i+1} of the cone C_i."""
    g, h = g_vector(i, params), g_vector(i + 1, params)
    return (g[0] + h[0], g[1] + h[1])


def pop_cluster_variable(d: ScatteringDiagram, i: int, params: Rank2Params) -> LaurentElement:
    """x^{g_i} transported from C_i (or C_{i-1}) to the dominant chamber along an arc."""
    j = cluster_index(i, params)
    m = LaurentElement.monomial(g_vector(j, params), d.order)
    if j in (1, 2):
        return m
    if j <= 0:
        q = chamber_point(j, params)
        return path_ordered_product(d, PathSpec(q, (1, 1), CCW), m)
    q = chamber_point(j - 1, params)
    return path_ordered_product(d, PathSpec(q, (1, 1), CW), m)


# ---------------------------------------------------------------------------
# limiting walls in affine type

def limiting_slope(params: Rank2Params) -> Tuple[int, int]:
    """(q, p): the limiting ray is spanned by q rho_1 + p rho_2 (affine type)."""
    if not params.is_affine:
        raise ClusterError("limiting ray is rational only in affine type")
    return primitive((-2, -params.a))


def limiting_root(params: Rank2Params) -> Tuple[int, int]:
    q, p = limiting_slope(params)
    return primitive((params.b * p, params.a * q))


def limit_product(params: Rank2Params, m: int, K: int) -> TruncatedSeries:
    """F_m^{Q_{-m-1}} * F_{m+1}^{-Q_{-m}} mod m^{K+1} (m <= -1)."""
    F = f_sequence(params, K)
    return pow_rational(F[m], poly_Q(-m - 1, params)) * pow_rational(F[m + 1], -poly_Q(-m, params))


def limiting_wall_function(params: Rank2Params, K: int) -> TruncatedSeries:
    """Function on the affine limiting wall, as a series in yhat_1, yhat_2, mod m^{K+1}."""
    if not params.is_affine:
        raise ClusterError("limiting wall function is only asserted in affine type")
    q, p = limiting_slope(params)
    m = -(K + 2)
    m -= m % 2  # even indices, as required in the asymmetric case
    prod = limit_product(params, m, K)
    if prod != limit_product(params, m - 2, K):
        raise ClusterError("limit product not yet stable at the chosen depth")
    f = pow_rational(prod, Fraction(1, p - q))
    return restrict_exponent_ray(f, limiting_root(params))


# ---------------------------------------------------------------------------
# Narayana numbers and the series N

def narayana_number(i: int, j: int) -> int:
    if i < 0 or j < 0:
        raise ClusterError("Narayana indices must be non-negative")
    if i == 0 and j == 0:
        return 1
    if i * j == 0:
        return 0
    return math.comb(i, j) * math.comb(i, j - 1) // i


def gbinom(z: int, w: int) -> int:
    """Binomial coefficient C(z, w) for any integer z and w >= 0 (zero for w < 0)."""
    if w < 0:
        return 0
    num = 1
    for t in range(w):
        num *= z - t
    return num // math.factorial(w)


NARAYANA = Rank2Params(-2, 2)


def narayana_limit(K: int) -> TruncatedSeries:
    F = f_sequence(NARAYANA, K)
    i = -(K + 2)
    n1 = exact_quotient(F[i - 1], F[i])
    if n1 != exact_quotient(F[i - 2], F[i - 1]):
        raise ClusterError("Narayana limit not stable at the chosen depth")
    return n1


def narayana_closed_form(K: int) -> TruncatedSeries:
    y1 = TruncatedSeries.variable(0, 2, K)
    y2 = TruncatedSeries.variable(1, 2, K)
    s = 1 + y1 + y1 * y2
    return (s + sqrt(s * s - 4 * y1 * y2)) * Fraction(1, 2)


def narayana_recursion(K: int) -> TruncatedSeries:
    """Solve sum_k n_ik C(1-2i, j-k) = sum_k n_jk C(1-2j, i-k) row by row."""
    n: Dict[Tuple[int, int], int] = {(0, 0): 1}
    get = lambda i, j: n.get((i, j), 0)
    for i in range(1, K + 1):
        for j in range(0, i):
            if i + j > K:
                break
            rhs = sum(get(j, k) * gbinom(1 - 2 * j, i - k) for k in range(i + 1))
            lhs_rest = sum(get(i, k) * gbinom(1 - 2 * i, j - k) for k in range(j))
            n[(i, j)] = rhs - lhs_rest
    return TruncatedSeries(2, K, n)


def narayana_canakci_schiffler(K: int) -> TruncatedSeries:
    """The cross-check closed form after y_1 = yhat_1 x_2^2, x_0 = (1 + yhat_2)/x_2.

    With u = yhat_1 (1 + yhat_2) the x's cancel and the expression becomes
    (1 + u + sqrt((1 - u)^2 + 4 yhat_1)) / 2.
    """
    y1 = TruncatedSeries.variable(0, 2, K)
    y2 = TruncatedSeries.variable(1, 2, K)
    u = y1 * (1 + y2)
    return (1 + u + sqrt((1 - u) * (1 - u) + 4 * y1)) * Fraction(1, 2)


def narayana_series(route: str, K: int) -> TruncatedSeries:
    routes = {
        "limit": narayana_limit,
        "recursion": narayana_recursion,
        "closed_form": narayana_closed_form,
        "canakci_schiffler": narayana_canakci_schiffler,
    }
    if route not in routes:
        raise ClusterError(f"unknown route {route!r}")
    return routes[route](K)


def narayana_expected(K: int) -> TruncatedSeries:
    """1 + yhat_1 * sum (-1)^{i+j} Nar(i,j) yhat_1^i yhat_2^j."""
    terms = {(0, 0): 1}
    for i in range(K):
        for j in range(K - i):
            v = narayana_number(i, j)
            if v:
                terms[(i + 1, j)] = (-1) ** (i + j) * v
    return TruncatedSeries(2, K, terms)


def narayana_functional_residual(N: TruncatedSeries) -> TruncatedSeries:
    """N(y1 (1+y2)^-2, y2)(1+y2) - N(y2 (1+y1)^-2, y1)(1+y1)."""
    from .series import compose

    K = N.order
    y1 = TruncatedSeries.variable(0, 2, K)
    y2 = TruncatedSeries.variable(1, 2, K)
    left = compose(N, [y1 * pow_rational(1 + y2, -2), y2]) * (1 + y2)
    right = compose(N, [y2 * pow_rational(1 + y1, -2), y1]) * (1 + y1)
    return left - right


def _rising(x, k: int):
    out = Fraction(1)
    for t in range(k):
        out *= x + t
    return out


def _hyper_side(i: int, j: int) -> Fraction:
    total = Fraction(0)
    for k in range(1, j + 1):
        den = _rising(2, k - 1) * _rising(-2 * i - j + 3, k - 1) * math.factorial(k - 1)
        if den == 0:
            raise ClusterError(f"zero denominator at i={i}, j={j}, k={k}")
        total += _rising(2 - i, k - 1) * _rising(1 - i, k - 1) * _rising(1 - j, k - 1) / den
    return (-1) ** i * gbinom(-2 * i + 1, j - 1) * total


def hypergeometric_closed_form(i: int, j: int) -> Fraction:
    return Fraction((-1) ** (i + j - 1) * math.comb(i + j - 2, j - 1) * math.comb(i + j, j), i + j)


def hypergeometric_identity_check(i: int, j: int) -> bool:
    if not (i > j > 1):
        raise ClusterError("need i > j > 1")
    left, right = _hyper_side(i, j), _hyper_side(j, i)
    closed = hypergeometric_closed_form(i, j)
    return left == right == closed


# ---------------------------------------------------------------------------
# coefficient lemmas for F_i in the two affine types

@dataclass
class LemmaCheck:
    label: str
    index: int
    ok: bool
    detail: str = ""


def _leading_in_y1(F: TruncatedSeries) -> Tuple[int, Dict[int, object]]:
    top = max(e[0] for e in F.terms)
    return top, {e[1]: c for e, c in F.terms.items() if e[0] == top}


def _binomial_row(e: int) -> Dict[int, int]:
    return {k: math.comb(e, k) for k in range(e + 1)}


def _terms_where(F: TruncatedSeries, pred) -> Dict[Tuple[int, int], object]:
    return {e: c for e, c in F.terms.items() if pred(e)}


def _compare(label: str, index: int, got, want) -> LemmaCheck:
    ok = got == want
    return LemmaCheck(label, index, ok, "" if ok else f"got {sorted(got.items())}, want {sorted(want.items())}")


def f_lemmas_symmetric(depth: int = 10) -> List[LemmaCheck]:
    """For a = -2, b = 2 and 0 >= i >= -depth: leading term, the one super-diagonal term, diagonal terms."""
    p = Rank2Params(-2, 2)
    out = []
    for i in range(0, -depth - 1, -1):
        F = f_polynomial(i, p)
        top, lead = _leading_in_y1(F)
        out.append(LemmaCheck("(i) leading term", i, top == -i and lead == _binomial_row(-i + 1),
                              f"degree {top}, coefficients {lead}"))
        out.append(_compare("(ii) super-diagonal", i, _terms_where(F, lambda e: e[1] > e[0]),
                            {(-i, -i + 1): 1}))
        out.append(_compare("(iii) diagonal", i, _terms_where(F, lambda e: e[1] == e[0]),
                            {(j, j): j + 1 for j in range(-i + 1)}))
    return out


def f_lemmas_asymmetric(depth: int = 10) -> List[LemmaCheck]:
    """For a = -4, b = 1: even indices 2i with 0 >= i >= -depth and odd indices 2i+1 with -1 >= i >= -depth."""
    p = Rank2Params(-4, 1)
    out = []
    square = {}
    for k in range(depth + 1):
        square[k] = sum((2 * j + 1) * (2 * (k - j) + 1) for j in range(k + 1))
    for i in range(0, -depth - 1, -1):
        F = f_polynomial(2 * i, p)
        top, lead = _leading_in_y1(F)
        out.append(LemmaCheck("(i) leading term, even", 2 * i, top == -i and lead == _binomial_row(-2 * i + 1),
                              f"degree {top}, coefficients {lead}"))
        out.append(_compare("(ii) super-diagonal, even", 2 * i, _terms_where(F, lambda e: e[1] > 2 * e[0]),
                            {(-i, -2 * i + 1): 1}))
        out.append(_compare("(iii) diagonal, even", 2 * i, _terms_where(F, lambda e: e[1] == 2 * e[0]),
                            {(j, 2 * j): 2 * j + 1 for j in range(-i + 1)}))
        if i == 0:
            continue
        F = f_polynomial(2 * i + 1, p)
        top, lead = _leading_in_y1(F)
        out.append(LemmaCheck("(iv) leading term, odd", 2 * i + 1, top == -2 * i - 1 and lead == _binomial_row(-4 * i),
                              f"degree {top}, coefficients {lead}"))
        want = {(-2 * i - 1, -4 * i): 1}
        for j in range(1, -i + 1):
            key = (-i + j - 1, -2 * i + 2 * j - 1)
            want[key] = want.get(key, 0) + 4 * j
        out.append(_compare("(v) super-diagonal, odd", 2 * i + 1, _terms_where(F, lambda e: e[1] > 2 * e[0]), want))
        # agreement with the square through yhat_1^{-i} yhat_2^{-2i}, inclusive
        got = {e: c for e, c in F.terms.items() if e[1] == 2 * e[0] and e[0] <= -i}
        out.append(_compare("(vi) diagonal, odd", 2 * i + 1, got, {(k, 2 * k): square[k] for k in range(-i + 1)}))
    return out
