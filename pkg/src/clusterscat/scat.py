"""Walls, scattering diagrams, wall-crossing and path-ordered products.

Rank-2 diagrams are drawn in weight coordinates with rho_1 pointing right and
rho_2 pointing up; every wall is a ray or a full line through the origin, and
paths are arcs around the origin.  Finite-type diagrams carry a simplicial fan
whose adjacent maximal cones define the paths.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .rootdata import RootData, Vec, primitive
from .series import TruncatedSeries, format_terms, parse_series, pow_rational

CCW, CW = 1, -1


class ScatError(ValueError):
    pass


class NonGenericPath(ScatError):
    pass


# ---------------------------------------------------------------------------
# Laurent elements

@dataclass(frozen=True)
class LaurentElement:
    """x^lam * y^beta * S(yhat)."""

    lam: Tuple[int, ...]
    beta: Tuple[int, ...]
    series: TruncatedSeries

    @classmethod
    def monomial(cls, lam: Sequence[int], order: int, beta: Optional[Sequence[int]] = None, c=1):
        n = len(lam)
        beta = tuple(beta) if beta is not None else (0,) * n
        return cls(tuple(lam), beta, TruncatedSeries.constant(n, order, c))

    def __mul__(self, other: "LaurentElement") -> "LaurentElement":
        return LaurentElement(
            tuple(a + b for a, b in zip(self.lam, other.lam)),
            tuple(a + b for a, b in zip(self.beta, other.beta)),
            self.series * other.series,
        )

    def truncate(self, order: int) -> "LaurentElement":
        return LaurentElement(self.lam, self.beta, self.series.truncate(order))

    def expand(self, data: RootData) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], object]:
        """Explicit x/y monomials: c*yhat^phi -> c * x^(lam + B phi) * y^(beta + phi)."""
        out = {}
        for phi, c in self.series.terms.items():
            w = data.omega_weight(phi)
            x = tuple(l + wi for l, wi in zip(self.lam, w))
            y = tuple(b + p for b, p in zip(self.beta, phi))
            out[(x, y)] = c
        return out

    def __str__(self):
        from .series import format_monomial

        head = []
        xs = "*".join(f"x{i + 1}^{k}" if k != 1 else f"x{i + 1}" for i, k in enumerate(self.lam) if k)
        ys = format_monomial(self.beta, "y") if any(self.beta) else ""
        head = "*".join(filter(None, [xs, ys])) or "1"
        return f"{head} * ({self.series.to_text()})"


def format_laurent(terms: Dict, n: int) -> str:
    """Canonical text for an expanded Laurent polynomial {(xexp, yexp): c}."""
    items = sorted(terms.items(), key=lambda t: (sum(t[0][1]), t[0][1], t[0][0]))
    parts = []
    for (x, y), c in items:
        mono = "*".join(
            [f"y{i + 1}" + (f"^{k}" if k != 1 else "") for i, k in enumerate(y) if k]
            + [f"x{i + 1}" + (f"^{k}" if k != 1 else "") for i, k in enumerate(x) if k]
        )
        neg = c < 0
        mag = -c if neg else c
        body = mono if (mag == 1 and mono) else (f"{mag} * {mono}" if mono else str(mag))
        parts.append((("-" if neg else "") if not parts else (" - " if neg else " + ")) + body)
    return "".join(parts) or "0"


# ---------------------------------------------------------------------------
# Cones and walls

@dataclass(frozen=True)
class Cone:
    """A cone inside a hyperplane beta^perp of V*.

    kind "hyperplane" is all of beta^perp; kind "cone" is the set of points of
    beta^perp with <p, h> >= 0 for each h in ineqs (root coordinates).  rays,
    when known, are generators in weight coordinates.
    """

    kind: str
    ineqs: Tuple[Tuple[int, ...], ...] = ()
    rays: Tuple[Tuple[int, ...], ...] = ()

    @classmethod
    def hyperplane(cls) -> "Cone":
        return cls("hyperplane")

    @classmethod
    def ray(cls, u: Sequence[int]) -> "Cone":
        """Rank-2 ray spanned by u."""
        u = primitive(u)
        # a functional positive on u; the hyperplane constraint pins the rest
        h = (1, 0) if u[0] > 0 else (-1, 0) if u[0] < 0 else (0, 1) if u[1] > 0 else (0, -1)
        return cls("cone", (h,), (u,))

    def key(self):
        if self.kind == "hyperplane":
            return ("hyperplane",)
        if self.rays:
            return ("cone", tuple(sorted(self.rays)))
        return ("ineq", tuple(sorted(self.ineqs)))

    def negate(self) -> "Cone":
        if self.kind == "hyperplane":
            return self
        return Cone(
            "cone",
            tuple(tuple(-x for x in h) for h in self.ineqs),
            tuple(tuple(-x for x in r) for r in self.rays),
        )

    def to_json(self):
        if self.kind == "hyperplane":
            return {"type": "hyperplane"}
        return {"type": "cone", "ineqs": [list(h) for h in self.ineqs], "rays": [list(r) for r in self.rays]}

    @classmethod
    def from_json(cls, obj) -> "Cone":
        if obj["type"] == "hyperplane":
            return cls.hyperplane()
        return cls("cone", tuple(tuple(h) for h in obj["ineqs"]), tuple(tuple(r) for r in obj["rays"]))


@dataclass(frozen=True)
class Wall:
    normal: Vec
    cone: Cone
    func: TruncatedSeries  # univariate in t = yhat^normal

    def __post_init__(self):
        normal = tuple(int(x) for x in self.normal)
        if min(normal) < 0 or primitive(normal) != normal:
            raise ScatError(f"wall normal {normal} must be primitive and non-negative")
        if self.func.n != 1 or self.func.constant_term() != 1:
            raise ScatError("wall function must be univariate with constant term 1")
        object.__setattr__(self, "normal", normal)

    @property
    def degree(self) -> int:
        return sum(self.normal)

    def is_trivial(self) -> bool:
        return len(self.func.terms) == 1

    def function_in(self, order: int) -> TruncatedSeries:
        """The wall function as a series in yhat_1..yhat_n at the given order."""
        n = len(self.normal)
        d = self.degree
        terms = {}
        for (k,), c in self.func.terms.items():
            if k * d <= order:
                terms[tuple(k * x for x in self.normal)] = c
        return TruncatedSeries(n, order, terms)

    def function_text(self) -> str:
        n = len(self.normal)
        items = [(tuple(k * x for x in self.normal), c) for (k,), c in sorted(self.func.terms.items())]
        return format_terms(items, n)

    def contains(self, data: RootData, p: Sequence) -> bool:
        if data.pair(p, self.normal) != 0:
            return False
        return all(data.pair(p, h) >= 0 for h in self.cone.ineqs)


def univariate(coeffs: Sequence, order: int) -> TruncatedSeries:
    return TruncatedSeries(1, order, {(k,): c for k, c in enumerate(coeffs)})


def wall_order(K: int, normal: Sequence[int]) -> int:
    return K // sum(normal)


def binomial_wall(normal: Sequence[int], cone: Cone, K: int, m: int = 1) -> Wall:
    """Wall with function 1 + yhat^(m * normal)."""
    return Wall(tuple(normal), cone, TruncatedSeries(1, wall_order(K, normal), {(0,): 1, (m,): 1}))


@dataclass
class ScatteringDiagram:
    data: RootData
    order: int
    walls: List[Wall] = field(default_factory=list)
    fan: Optional["Fan"] = None

    @property
    def n(self) -> int:
        return self.data.n

    def nontrivial(self) -> List[Wall]:
        return [w for w in self.walls if not w.is_trivial()]

    def to_json(self) -> dict:
        return {
            "B": [list(r) for r in self.data.B],
            "order": self.order,
            "walls": [
                {"normal": list(w.normal), "cone": w.cone.to_json(), "function": w.function_text()}
                for w in sorted(self.walls, key=wall_sort_key)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, obj) -> "ScatteringDiagram":
        data = RootData(tuple(tuple(r) for r in obj["B"]))
        K = obj["order"]
        walls = []
        for w in obj["walls"]:
            normal = tuple(w["normal"])
            s = parse_series(w["function"], data.n, K)
            # fold yhat^(k*normal) back to t^k
            uni = {}
            d = sum(normal)
            for e, c in s.terms.items():
                k = sum(e) // d
                if tuple(k * x for x in normal) != e:
                    raise ScatError(f"function term {e} not on the normal ray {normal}")
                uni[(k,)] = c
            walls.append(Wall(normal, Cone.from_json(w["cone"]), TruncatedSeries(1, wall_order(K, normal), uni)))
        return cls(data, K, walls)

    def same_walls(self, other: "ScatteringDiagram") -> bool:
        return wall_set(self) == wall_set(other)


def wall_sort_key(w: Wall):
    return (w.degree, w.normal, w.cone.key())


def wall_set(d: ScatteringDiagram):
    return sorted(((w.normal, w.cone.key(), tuple(sorted(w.func.terms.items()))) for w in d.nontrivial()))


# ---------------------------------------------------------------------------
# wall crossing

def _power_cache(wall: Wall, order: int):
    cache: Dict[int, TruncatedSeries] = {}
    base = wall.func

    def get(e: int) -> TruncatedSeries:
        if e not in cache:
            n = len(wall.normal)
            uni = pow_rational(base, e)
            d = wall.degree
            cache[e] = TruncatedSeries._raw(
                n, order,
                {tuple(k * x for x in wall.normal): c for (k,), c in uni.terms.items() if k * d <= order},
            )
        return cache[e]

    return get


def cross_wall(data: RootData, m: LaurentElement, wall: Wall, direction_sign: int, _powers=None) -> LaurentElement:
    """Apply the wall-crossing automorphism using direction_sign * beta^vee."""
    if direction_sign not in (1, -1):
        raise ScatError("direction_sign must be +1 or -1")
    K = m.series.order
    k = tuple(direction_sign * x for x in data.coroot(wall.normal))
    power = _powers or _power_cache(wall, K)
    N = data.pair_coroot(m.lam, k)
    if not isinstance(N, int) and getattr(N, "denominator", 1) != 1:
        raise ScatError("non-integral pairing: lattice data corrupted")
    groups: Dict[int, Dict] = {}
    n = data.n
    # omega(k, phi) = k^T B phi, linear in phi
    row = [sum(k[i] * data.B[i][j] for i in range(n)) for j in range(n)]
    for phi, c in m.series.terms.items():
        e = sum(r * p for r, p in zip(row, phi))
        groups.setdefault(e, {})[phi] = c
    total = TruncatedSeries.zero(n, K)
    for e, terms in groups.items():
        part = TruncatedSeries._raw(n, K, terms)
        total = total + (part if e == 0 else part * power(e))
    if N:
        total = total * power(int(N))
    return LaurentElement(m.lam, m.beta, total)


# ---------------------------------------------------------------------------
# rank-2 geometry

def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot2(u, v):
    return u[0] * v[0] + u[1] * v[1]


def angle_key(start: Sequence, v: Sequence):
    """Sortable key for the counterclockwise angle from start to v, in [0, 2*pi)."""
    c, d = cross2(start, v), dot2(start, v)
    if c == 0:
        return (0, 0) if d > 0 else (2, 0)
    return (1 if c > 0 else 3, Fraction(-d, 1) / c)


def line_direction(data: RootData, beta: Sequence[int]) -> Vec:
    """A primitive weight vector spanning beta^perp in rank 2."""
    d1, d2 = data.delta
    return primitive((d2 * beta[1], -d1 * beta[0]))


def wall_rays(data: RootData, w: Wall) -> List[Vec]:
    if w.cone.kind == "hyperplane":
        u = line_direction(data, w.normal)
        return [u, tuple(-x for x in u)]
    if len(w.cone.rays) != 1:
        raise ScatError("rank-2 walls must be rays or lines")
    return [w.cone.rays[0]]


def ccw_sign(data: RootData, u: Sequence, normal: Sequence) -> int:
    """Crossing sign for a counterclockwise arc through the ray u."""
    tangent = (-u[1], u[0])
    return 1 if data.pair(tangent, normal) < 0 else -1


def outgoing_ray(data: RootData, beta: Sequence[int]) -> Vec:
    u = line_direction(data, beta)
    w = data.omega_weight(beta)
    if not any(w):
        raise ScatError(f"omega(., {tuple(beta)}) vanishes; every ray through it is incoming")
    # w lies on the line; the outgoing ray is the half not containing it
    return tuple(-x for x in u) if dot2(u, w) > 0 else u


def is_outgoing(data: RootData, w: Wall) -> bool:
    om = data.omega_weight(w.normal)
    if w.cone.kind == "hyperplane":
        return False
    if data.n == 2:
        u = w.cone.rays[0]
        return not (cross2(u, om) == 0 and dot2(u, om) >= 0)
    return not w.contains(data, om)


@dataclass(frozen=True)
class PathSpec:
    """A rank-2 arc around the origin, or a finite-type chain of maximal cones.

    For arcs, start == end with loop=True means one full turn.  open_ends=True
    permits endpoints lying on wall rays; those walls are then not crossed,
    which realises the limiting paths to g_{+-infinity}.
    """

    start: Optional[Tuple] = None
    end: Optional[Tuple] = None
    orientation: int = CCW
    loop: bool = False
    open_ends: bool = False
    cones: Optional[Tuple[int, ...]] = None


def _rank2_events(d: ScatteringDiagram, path: PathSpec):
    data = d.data
    s, e = path.start, path.end
    if path.loop:
        end_key = (4, 0)
    else:
        end_key = angle_key(s, e)
        if end_key == (0, 0):
            raise ScatError("arc start and end coincide; use loop=True")
    events = []
    for w in d.walls:
        if w.is_trivial() or w.degree > d.order:
            continue
        for u in wall_rays(data, w):
            k = angle_key(s, u)
            on_end = (not path.loop) and cross2(u, e) == 0 and dot2(u, e) > 0
            if k == (0, 0) or on_end:
                if path.open_ends:
                    continue
                raise NonGenericPath(f"path endpoint lies on wall ray {u}")
            if path.orientation == CCW:
                if k < end_key:
                    events.append((k, u, w, ccw_sign(data, u, w.normal)))
            else:
                if path.loop or k > end_key:
                    events.append((k, u, w, -ccw_sign(data, u, w.normal)))
    events.sort(key=lambda t: t[0], reverse=(path.orientation == CW))
    return events


def path_ordered_product(d: ScatteringDiagram, path: PathSpec, m: LaurentElement) -> LaurentElement:
    if path.cones is not None:
        if d.fan is None:
            raise ScatError("cone-chain paths need a diagram with a fan")
        return d.fan.path_product(d, list(path.cones), m)
    if d.n != 2:
        raise ScatError("arc paths are rank 2 only")
    powers = {}
    for _, u, w, sign in _rank2_events(d, path):
        key = id(w)
        if key not in powers:
            powers[key] = _power_cache(w, m.series.order)
        m = cross_wall(d.data, m, w, sign, powers[key])
    return m


@dataclass
class ConsistencyReport:
    consistent: bool
    first_failing_order: Optional[int] = None
    failures: List[str] = field(default_factory=list)
    loops_checked: int = 0


def _defect_order(m: LaurentElement, lam) -> Optional[int]:
    if tuple(m.lam) != tuple(lam):
        return 0
    diff = m.series - TruncatedSeries.one(m.series.n, m.series.order)
    if diff.is_zero():
        return None
    return min(sum(e) for e in diff.terms)


INTERIOR_D = (1, 1)


def rank2_loop(d: ScatteringDiagram, lam: Sequence[int], order: Optional[int] = None) -> LaurentElement:
    K = d.order if order is None else order
    m = LaurentElement.monomial(lam, K)
    return path_ordered_product(d, PathSpec(INTERIOR_D, INTERIOR_D, CCW, loop=True), m)


def check_consistency(d: ScatteringDiagram) -> ConsistencyReport:
    n = d.n
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if d.fan is not None:
        return d.fan.check(d)
    if n != 2:
        raise ScatError("consistency check needs rank 2 or a finite-type fan")
    rep = ConsistencyReport(True, loops_checked=1)
    for lam in basis:
        m = rank2_loop(d, lam)
        k = _defect_order(m, lam)
        if k is not None:
            rep.consistent = False
            rep.failures.append(f"loop moves x^{lam} at order {k}")
            rep.first_failing_order = k if rep.first_failing_order is None else min(k, rep.first_failing_order)
    return rep


# ---------------------------------------------------------------------------
# rank-2 completion

def initial_diagram(data: RootData, K: int) -> ScatteringDiagram:
    n = data.n
    walls = [binomial_wall(tuple(int(i == j) for j in range(n)), Cone.hyperplane(), K) for i in range(n)]
    return ScatteringDiagram(data, K, walls)


def _at_order(d: ScatteringDiagram, k: int) -> ScatteringDiagram:
    walls = []
    for w in d.walls:
        if w.degree > k:
            continue
        walls.append(Wall(w.normal, w.cone, w.func.truncate(wall_order(k, w.normal))))
    return ScatteringDiagram(d.data, k, walls)


def complete_rank2(data: RootData, K: int) -> ScatteringDiagram:
    """Consistent completion of {(alpha_i^perp, 1 + yhat_i)} by outgoing ray walls, mod m^{K+1}."""
    if data.n != 2:
        raise ScatError("complete_rank2 needs rank 2")
    init = initial_diagram(data, K)
    # ray walls keyed by primitive normal: coefficient lists of t = yhat^beta
    rays: Dict[Vec, Dict[int, object]] = {}

    def build(k: int) -> ScatteringDiagram:
        walls = list(_at_order(init, k).walls)
        for beta, coeffs in rays.items():
            if sum(beta) > k:
                continue
            ko = wall_order(k, beta)
            terms = {(0,): 1}
            terms.update({(j,): c for j, c in coeffs.items() if j <= ko})
            walls.append(Wall(beta, Cone.ray(outgoing_ray(data, beta)), TruncatedSeries(1, ko, terms)))
        return ScatteringDiagram(data, k, walls)

    for k in range(2, K + 1):
        d = build(k)
        defects: Dict[Vec, Dict[int, object]] = {}
        for j, lam in enumerate([(1, 0), (0, 1)]):
            m = rank2_loop(d, lam)
            for phi, c in m.series.terms.items():
                if sum(phi) == 0:
                    if c != 1:
                        raise ScatError("loop changed a constant term")
                    continue
                if sum(phi) < k:
                    raise ScatError(f"defect at order {sum(phi)} < {k}: completion went wrong")
                defects.setdefault(phi, {})[j] = c
        for phi in sorted(defects):
            beta = primitive(phi)
            mult = phi[0] // beta[0] if beta[0] else phi[1] // beta[1]
            u = outgoing_ray(data, beta)
            sign = ccw_sign(data, u, beta)
            kv = tuple(sign * x for x in data.coroot(beta))
            coeff = None
            for j in range(2):
                dj = defects[phi].get(j, 0)
                pj = kv[j]  # <rho_j, sign*beta^vee>
                if pj == 0:
                    if dj != 0:
                        raise ScatError(f"defect {phi} not resolvable by a wall on beta^perp")
                    continue
                cj = -Fraction(dj) / pj
                if coeff is None:
                    coeff = cj
                elif coeff != cj:
                    raise ScatError(f"defect {phi} is not of wall-crossing shape")
            if coeff:
                slot = rays.setdefault(beta, {})
                slot[mult] = slot.get(mult, 0) + coeff
                if slot[mult] == 0:
                    del slot[mult]
    out = build(K)
    out.walls = [w for w in out.walls if not w.is_trivial()]
    rep = check_consistency(out)
    if not rep.consistent:
        raise ScatError(f"completion failed certification: {rep.failures}")
    return out


def walls_on_ray(d: ScatteringDiagram, u: Sequence[int]) -> List[Wall]:
    u = primitive(u)
    return [w for w in d.walls if w.cone.kind == "cone" and w.cone.rays and w.cone.rays[0] == u]


# ---------------------------------------------------------------------------
# transforms

def antipodal_transform(d: ScatteringDiagram) -> ScatteringDiagram:
    """Diagram for -B: cones negated, functions kept as functions of yhat'^beta."""
    data = RootData(tuple(tuple(-x for x in row) for row in d.data.B))
    walls = [Wall(w.normal, w.cone.negate(), w.func) for w in d.walls]
    return ScatteringDiagram(data, d.order, walls, d.fan.negate() if d.fan is not None else None)


def merge_equivalent(d: ScatteringDiagram) -> ScatteringDiagram:
    groups: Dict = {}
    order: List = []
    for w in d.walls:
        key = (w.normal, w.cone.key())
        if key not in groups:
            groups[key] = w
            order.append(key)
        else:
            g = groups[key]
            groups[key] = Wall(g.normal, g.cone, g.func * w.func)
    walls = [groups[k] for k in order if not groups[k].is_trivial()]
    # facets with a common normal and function that tile beta^perp become one wall
    n = d.n
    bucket: Dict = {}
    for w in walls:
        if w.cone.kind == "cone" and len(w.cone.rays) == n - 1:
            bucket.setdefault((w.normal, tuple(sorted(w.func.terms.items()))), []).append(w)
    drop = set()
    extra = []
    for (normal, _), ws in bucket.items():
        if len(ws) >= 2 and tiles_hyperplane([w.cone.rays for w in ws]):
            drop.update(id(w) for w in ws)
            extra.append(Wall(normal, Cone.hyperplane(), ws[0].func))
    walls = [w for w in walls if id(w) not in drop] + extra
    return ScatteringDiagram(d.data, d.order, sorted(walls, key=wall_sort_key), d.fan)


def tiles_hyperplane(facets: Sequence[Sequence[Tuple[int, ...]]]) -> bool:
    """Simplicial (n-1)-cones in a common hyperplane whose union is that whole hyperplane.

    The union is a closed pseudo-manifold exactly when every ridge lies in two facets;
    a closed pseudo-manifold inside the sphere of the hyperplane is the whole sphere.
    """
    count: Dict = {}
    for rays in facets:
        rs = sorted(rays)
        for ridge in itertools.combinations(rs, len(rs) - 1):
            count[ridge] = count.get(ridge, 0) + 1
    return bool(count) and all(v == 2 for v in count.values())


# ---------------------------------------------------------------------------
# simplicial fans (finite type)

def _det(m: List[List[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in m]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            if f:
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
    return det


@dataclass
class FanCone:
    """Simplicial maximal cone: rays[j] is the generator opposite the facet with normal normals[j].

    normals are roots (root coordinates) with <p, normal> >= 0 on the cone.
    """

    rays: Tuple[Tuple[int, ...], ...]
    normals: Tuple[Tuple[int, ...], ...]
    label: object = None

    def interior_point(self):
        dim = len(self.rays[0])
        return tuple(sum(r[i] for r in self.rays) for i in range(dim))


@dataclass
class Fan:
    data: RootData
    cones: List[FanCone]

    def __post_init__(self):
        self._facet_index: Dict = {}
        for ci, c in enumerate(self.cones):
            for j in range(len(c.rays)):
                facet = tuple(sorted(c.rays[:j] + c.rays[j + 1:]))
                self._facet_index.setdefault(facet, []).append(ci)

    def negate(self) -> "Fan":
        data = RootData(tuple(tuple(-x for x in row) for row in self.data.B))
        return Fan(data, [
            FanCone(tuple(tuple(-x for x in r) for r in c.rays), tuple(tuple(-x for x in h) for h in c.normals), c.label)
            for c in self.cones
        ])

    def facets(self):
        return self._facet_index

    def neighbour(self, ci: int, facet) -> int:
        pair = self._facet_index[tuple(sorted(facet))]
        if len(pair) != 2:
            raise ScatError("fan facet does not separate exactly two cones")
        return pair[0] if pair[1] == ci else pair[1]

    def shared_facet(self, ci: int, cj: int):
        a, b = set(self.cones[ci].rays), set(self.cones[cj].rays)
        common = a & b
        if len(common) != len(self.cones[ci].rays) - 1:
            raise ScatError(f"cones {ci} and {cj} are not adjacent")
        return tuple(sorted(common))

    def codim2_faces(self):
        faces: Dict = {}
        for ci, c in enumerate(self.cones):
            for ridge in itertools.combinations(sorted(c.rays), len(c.rays) - 2):
                faces.setdefault(ridge, []).append(ci)
        return faces

    def loop_around(self, face, members: Sequence[int]) -> List[int]:
        """Cyclic order of the maximal cones containing a codim-2 face."""
        members = list(members)
        start = members[0]
        cyc = [start]
        prev = None
        cur = start
        fs = set(face)
        while True:
            c = self.cones[cur]
            nxt = None
            for r in c.rays:
                if r in fs:
                    continue
                facet = tuple(sorted(x for x in c.rays if x != r))
                other = self.neighbour(cur, facet)
                if other != prev and other in members:
                    nxt = other
                    break
            if nxt is None:
                raise ScatError("broken cycle around a codim-2 face")
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
            if len(cyc) > len(members):
                raise ScatError("cycle overran the star")
        if len(cyc) != len(members):
            raise ScatError("star of a codim-2 face is not a single cycle")
        return cyc

    def loops(self) -> List[Tuple[Tuple, List[int]]]:
        return [(face, self.loop_around(face, mem)) for face, mem in sorted(self.codim2_faces().items())]

    def crossing(self, d: ScatteringDiagram, ci: int, cj: int):
        """Walls of d met stepping from cone ci to cone cj, with their signs."""
        facet = self.shared_facet(ci, cj)
        q = tuple(sum(r[i] for r in facet) for i in range(d.n))
        inside = self.cones[ci].interior_point()
        out = []
        for w in d.walls:
            if w.is_trivial() or not w.contains(d.data, q):
                continue
            side = d.data.pair(inside, w.normal)
            if side == 0:
                raise ScatError("wall contains the interior of a maximal cone")
            out.append((w, 1 if side > 0 else -1))
        return out

    def path_product(self, d: ScatteringDiagram, chain: List[int], m: LaurentElement) -> LaurentElement:
        for ci, cj in zip(chain, chain[1:]):
            for w, sign in self.crossing(d, ci, cj):
                m = cross_wall(d.data, m, w, sign)
        return m

    def check(self, d: ScatteringDiagram) -> ConsistencyReport:
        n = d.n
        rep = ConsistencyReport(True)
        for face, cyc in self.loops():
            rep.loops_checked += 1
            chain = cyc + [cyc[0]]
            for i in range(n):
                lam = tuple(int(i == j) for j in range(n))
                m = self.path_product(d, chain, LaurentElement.monomial(lam, d.order))
                k = _defect_order(m, lam)
                if k is not None:
                    rep.consistent = False
                    rep.failures.append(f"loop around {face} moves x^{lam} at order {k}")
                    rep.first_failing_order = k if rep.first_failing_order is None else min(k, rep.first_failing_order)
        return rep

    def locate(self, p: Sequence) -> int:
        """Index of the maximal cone containing p in its interior."""
        for ci, c in enumerate(self.cones):
            if all(self.data.pair(p, h) > 0 for h in c.normals):
                return ci
        raise NonGenericPath(f"point {tuple(p)} is not interior to a maximal cone")
