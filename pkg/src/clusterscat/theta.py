"""Broken lines and theta functions in rank 2.

A broken line for lambda ending at p is traced backwards from p: its final
segment carries c x^{lambda + B beta} y^beta, and walking back along
+lambda_L every wall ray met is a place where the line may have bent.  Given
the sequence of bends the geometry is forced (each bend point is the unique
hit of the backward ray with the wall ray), so realizability reduces to the
positivity of those hits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cluster import Rank2Params
from .rootdata import RootData
from .scat import (
    LaurentElement,
    NonGenericPath,
    ScatteringDiagram,
    cross2,
    dot2,
    wall_rays,
)
from .series import TruncatedSeries, pow_rational

Point = Tuple[Fraction, Fraction]
Monomials = Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], object]

# large coprime coordinates keep p off every ray spanned by a small lambda_L
DEFAULT_ENDPOINT = (Fraction(101, 127), Fraction(53, 127))


class ThetaError(ValueError):
    pass


@dataclass
class Segment:
    lam: Tuple[int, int]      # the segment runs in direction -lam
    beta: Tuple[int, int]
    coeff: object
    start: Optional[Point]    # bend point where the segment begins (None: unbounded)
    bend_normal: Optional[Tuple[int, int]] = None
    bend_power: int = 0       # k in the chosen term c_k t^k


@dataclass
class BrokenLine:
    segments: List[Segment]
    endpoint: Point

    @property
    def final(self) -> Segment:
        return self.segments[-1]

    def monomial(self) -> Tuple[Tuple[int, int], Tuple[int, int], object]:
        s = self.final
        return s.lam, s.beta, s.coeff


@dataclass
class _RayWall:
    u: Tuple[int, int]
    normal: Tuple[int, int]
    func: TruncatedSeries
    powers: Dict[int, TruncatedSeries] = field(default_factory=dict)

    def term(self, N: int, k: int):
        if N not in self.powers:
            self.powers[N] = pow_rational(self.func, N)
        return self.powers[N].coefficient((k,))


def _ray_walls(d: ScatteringDiagram, K: int) -> List[_RayWall]:
    by_ray: Dict = {}
    for w in d.walls:
        if w.is_trivial() or w.degree > K:
            continue
        for u in wall_rays(d.data, w):
            key = (u, w.normal)
            if key in by_ray:
                by_ray[key] = by_ray[key] * w.func
            else:
                by_ray[key] = w.func
    return [_RayWall(u, nrm, f) for (u, nrm), f in sorted(by_ray.items())]


def _check_generic(walls: List[_RayWall], p: Point):
    if p[0] == 0 and p[1] == 0:
        raise NonGenericPath("endpoint at the origin")
    for w in walls:
        if cross2(w.u, p) == 0 and dot2(w.u, p) > 0:
            raise NonGenericPath(f"endpoint {p} lies on the wall ray {w.u}")


def enumerate_broken_lines(
    d: ScatteringDiagram, lam: Sequence[int], p: Sequence = DEFAULT_ENDPOINT, K: Optional[int] = None
) -> List[BrokenLine]:
    data = d.data
    if data.n != 2:
        raise ThetaError("broken lines are implemented in rank 2")
    K = d.order if K is None else K
    lam = tuple(int(x) for x in lam)
    if not any(lam):
        raise ThetaError("lambda must be nonzero")
    p = (Fraction(p[0]), Fraction(p[1]))
    walls = _ray_walls(d, K)
    _check_generic(walls, p)
    coroots = {w.normal: data.coroot(w.normal) for w in walls}
    found: List[BrokenLine] = []

    def lam_of(beta):
        w = data.omega_weight(beta)
        return (lam[0] + w[0], lam[1] + w[1])

    # bends are collected from the endpoint backwards as (point, normal, k, c, beta_after)
    def back(q: Point, beta, bends):
        v = lam_of(beta)
        if not any(beta):
            found.append(_assemble(lam_of, bends, p))
            return
        if not any(v):
            return
        for w in walls:
            if beta[0] < w.normal[0] or beta[1] < w.normal[1]:
                continue
            cvu = cross2(v, w.u)
            if cvu == 0:
                continue
            s = Fraction(cross2(w.u, q), cvu)
            t = Fraction(cross2(v, q), cvu)
            if s <= 0 or t < 0:
                continue
            if t == 0:
                raise NonGenericPath("a broken line would pass through the origin")
            hit = (q[0] + s * v[0], q[1] + s * v[1])
            N = abs(data.pair_coroot(v, coroots[w.normal]))
            k = 1
            while beta[0] >= k * w.normal[0] and beta[1] >= k * w.normal[1]:
                c = w.term(N, k)
                if c:
                    nb = (beta[0] - k * w.normal[0], beta[1] - k * w.normal[1])
                    back(hit, nb, bends + [(hit, w.normal, k, c, beta)])
                k += 1

    for b1 in range(K + 1):
        for b2 in range(K + 1 - b1):
            back(p, (b1, b2), [])
    return found


def _assemble(lam_of, bends, p) -> BrokenLine:
    segs = [Segment(lam_of((0, 0)), (0, 0), 1, None)]
    c = 1
    for hit, normal, k, ck, beta in reversed(bends):
        c = c * ck
        segs.append(Segment(lam_of(beta), beta, c, hit, normal, k))
    return BrokenLine(segs, p)


def theta_function(
    d: ScatteringDiagram, lam: Sequence[int], K: Optional[int] = None, p: Sequence = DEFAULT_ENDPOINT
) -> LaurentElement:
    """Sum of final monomials, returned as x^lam * S(yhat)."""
    K = d.order if K is None else K
    lines = enumerate_broken_lines(d, lam, p, K)
    terms: Dict = {}
    for bl in lines:
        _, beta, c = bl.monomial()
        terms[beta] = terms.get(beta, 0) + c
    return LaurentElement(tuple(lam), (0, 0), TruncatedSeries(2, K, terms))


# ---------------------------------------------------------------------------
# Laurent polynomials in x, y written out explicitly

def _mono_mul(terms: Monomials, x, y, c) -> Monomials:
    out: Monomials = {}
    for (tx, ty), tc in terms.items():
        k = (tuple(a + b for a, b in zip(tx, x)), tuple(a + b for a, b in zip(ty, y)))
        out[k] = out.get(k, 0) + tc * c
    return {k: v for k, v in out.items() if v}


def _add(into: Monomials, terms: Monomials):
    for k, v in terms.items():
        into[k] = into.get(k, 0) + v
        if not into[k]:
            del into[k]


def _binomial_power(b: int, e: int) -> Monomials:
    """(1 + y2 x1^b)^e for e >= 0."""
    return {((b * k, 0), (0, k)): math.comb(e, k) for k in range(e + 1)}


def _times(terms: Monomials, other: Monomials) -> Monomials:
    out: Monomials = {}
    for (x, y), c in other.items():
        _add(out, _mono_mul(terms, x, y, c))
    return out


def comb0(top: int, k: int) -> int:
    """Combinatorial binomial: zero unless 0 <= k <= top."""
    if top < 0 or k < 0 or k > top:
        return 0
    return math.comb(top, k)


def theta_closed_form_m1b(params: Rank2Params, m1: int, m2: int) -> Monomials:
    a, b = params.a, params.b
    if not (-b <= m1 <= 0 and m2 >= 0):
        raise ThetaError("needs -b <= m1 <= 0 and m2 >= 0")
    out: Monomials = {}
    for i in range(-m1 + 1):
        base = {((m1, m2 + a * i), (i, 0)): math.comb(-m1, i)}
        _add(out, _times(base, _binomial_power(b, max(-m2 - a * i, 0))))
    return out


def theta_closed_form_m2a(params: Rank2Params, m1: int, m2: int) -> Monomials:
    a, b = params.a, params.b
    if not (m1 < -b < 0 and 0 <= m2 < -a):
        raise ThetaError("needs m1 < -b < 0 and 0 <= m2 < -a")
    out: Monomials = {((m1, m2), (0, 0)): 1}
    for i in range(1, -m1 + 1):
        for j in range(m2 + 1):
            c = comb0(-m1 - b * j, i) * math.comb(m2, j)
            if not c:
                continue
            base = {((m1 + b * j, m2 + a * i), (i, j)): c}
            _add(out, _times(base, _binomial_power(b, -m2 - a * i)))
    return out


def laurent_from_monomials(data: RootData, lam: Sequence[int], terms: Monomials, K: int) -> LaurentElement:
    """Rewrite sum c x^X y^Y as x^lam S(yhat); each X must equal lam + B Y."""
    series = {}
    for (x, y), c in terms.items():
        w = data.omega_weight(y)
        if tuple(x) != tuple(l + wi for l, wi in zip(lam, w)):
            raise ThetaError(f"monomial x^{x} y^{y} is not in x^lam k[[yhat]]")
        if sum(y) <= K:
            series[tuple(y)] = c
    return LaurentElement(tuple(lam), (0,) * data.n, TruncatedSeries(data.n, K, series))
