"""Finite Coxeter groups, c-sortable elements and Cambrian scattering diagrams."""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .rootdata import ROOT, LatticeVector, RootData, RootDataError, format_matrix, parse_matrix, primitive
from .scat import (
    Cone,
    ConsistencyReport,
    Fan,
    FanCone,
    PathSpec,
    ScatteringDiagram,
    Wall,
    binomial_wall,
    is_outgoing,
    merge_equivalent,
)

Vec = Tuple[int, ...]
Mat = Tuple[Tuple[int, ...], ...]

MAX_ROOTS = 2000
MAX_ELEMENTS = 200000

# exchange matrices for the types pinned by the tests; c = s1 s2 ... sn in each
NAMED_TYPES = {
    "A1xA1": "0,0;0,0",
    "A2": "0,1;-1,0",
    "B2": "0,1;-2,0",
    "G2": "0,1;-3,0",
    "A3": "0,1,0;-1,0,1;0,-1,0",
    "B3": "0,1,0;-1,0,1;0,-2,0",
    "C3": "0,1,0;-1,0,2;0,-1,0",
    "A4": "0,1,0,0;-1,0,1,0;0,-1,0,1;0,0,-1,0",
    "D4": "0,1,0,0;-1,0,1,1;0,-1,0,0;0,-1,0,0",
}


class CambrianError(ValueError):
    pass


def named_type(name: str) -> RootData:
    try:
        return RootData(parse_matrix(NAMED_TYPES[name]))
    except KeyError:
        raise CambrianError(f"unknown type {name!r}; known: {', '.join(NAMED_TYPES)}") from None


def _matmul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _apply(m: Mat, v: Sequence) -> Tuple:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _is_negative(v: Sequence) -> bool:
    return all(x <= 0 for x in v) and any(v)


@dataclass(frozen=True)
class GroupElement:
    M: Mat      # action on V in simple-root coordinates
    N: Mat      # dual action on V* in fundamental-weight coordinates
    word: Tuple[int, ...]

    def root(self, v: Sequence[int]) -> Vec:
        return _apply(self.M, v)

    def weight(self, p: Sequence) -> Tuple:
        return _apply(self.N, p)


class CoxeterGroup:
    """The Weyl group of a finite-type RootData, enumerated as matrices."""

    def __init__(self, data: RootData):
        self.data = data
        n = self.n = data.n
        A = data.A
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self.gens_root = []
        self.gens_weight = []
        for i in range(n):
            self.gens_root.append(tuple(
                tuple(int(r == c) - (A[i][c] if r == i else 0) for c in range(n)) for r in range(n)))
            self.gens_weight.append(tuple(
                tuple(int(r == c) - (A[r][i] if c == i else 0) for c in range(n)) for r in range(n)))
        self.positive_roots = self._close_roots()
        self.identity = GroupElement(ident, ident, ())
        self.elements: Dict[Mat, GroupElement] = {ident: self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for i in range(n):
                m = _matmul(self.gens_root[i], w.M)
                if m in self.elements:
                    continue
                e = GroupElement(m, _matmul(self.gens_weight[i], w.N), (i,) + w.word)
                self.elements[m] = e
                queue.append(e)
                if len(self.elements) > MAX_ELEMENTS:
                    raise CambrianError("group enumeration did not close")
        self._length: Dict[Mat, int] = {}

    def _close_roots(self) -> List[Vec]:
        n = self.n
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            v = queue.popleft()
            for i in range(n):
                w = self.data.reflect_root(i, v)
                if min(w) < 0 or w in seen:
                    continue
                seen.add(w)
                queue.append(w)
                if len(seen) > MAX_ROOTS:
                    raise CambrianError("root system is not of finite type")
        return sorted(seen, key=lambda v: (sum(v), v))

    @property
    def order(self) -> int:
        return len(self.elements)

    def simple_root(self, i: int) -> Vec:
        return tuple(int(i == j) for j in range(self.n))

    def left(self, i: int, w: GroupElement) -> GroupElement:
        return self.elements[_matmul(self.gens_root[i], w.M)]

    def from_word(self, word: Sequence[int]) -> GroupElement:
        w = self.identity
        for i in reversed(tuple(word)):
            w = self.left(i, w)
        return w

    def inverse(self, w: GroupElement) -> GroupElement:
        return self.from_word(tuple(reversed(w.word)))

    def length(self, w: GroupElement) -> int:
        if w.M not in self._length:
            self._length[w.M] = sum(1 for b in self.positive_roots if _is_negative(w.root(b)))
        return self._length[w.M]

    def right_descents(self, w: GroupElement) -> List[int]:
        return [i for i in range(self.n) if _is_negative(w.root(self.simple_root(i)))]

    def cover_roots(self, w: GroupElement) -> List[Vec]:
        """beta_t for the cover reflections t = w s w^{-1}."""
        return sorted(tuple(-x for x in w.root(self.simple_root(i))) for i in self.right_descents(w))

    def in_parabolic(self, w: GroupElement, excluded: int) -> bool:
        """w lies in the subgroup generated by all s_j with j != excluded."""
        rho = tuple(int(j == excluded) for j in range(self.n))
        return w.weight(rho) == rho


# ---------------------------------------------------------------------------
# Coxeter elements

@dataclass(frozen=True)
class CoxeterElement:
    word: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(i) for i in self.word))
        if len(set(self.word)) != len(self.word):
            raise CambrianError("a Coxeter element word uses each generator once")

    @classmethod
    def from_exchange(cls, B: Sequence[Sequence[int]]) -> "CoxeterElement":
        """Order the generators so that s_i precedes s_j whenever b_ij > 0; ties by index."""
        n = len(B)
        indeg = [sum(1 for i in range(n) if B[i][j] > 0) for j in range(n)]
        word: List[int] = []
        ready = sorted(j for j in range(n) if indeg[j] == 0)
        while ready:
            i = ready.pop(0)
            word.append(i)
            for j in range(n):
                if B[i][j] > 0:
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        ready.append(j)
                        ready.sort()
        if len(word) != n:
            raise CambrianError("exchange matrix is not acyclic")
        return cls(tuple(word))

    def compatible_with(self, B: Sequence[Sequence[int]]) -> bool:
        pos = {s: k for k, s in enumerate(self.word)}
        n = len(B)
        return len(pos) == n and all(
            pos[i] < pos[j] for i in range(n) for j in range(n) if B[i][j] > 0)

    def exchange_matrix(self, A: Sequence[Sequence[int]]) -> Mat:
        """The exchange matrix determined by a Cartan matrix and this order."""
        pos = {s: k for k, s in enumerate(self.word)}
        n = len(A)
        return tuple(
            tuple(0 if i == j else (-A[i][j] if pos[i] < pos[j] else A[i][j]) for j in range(n))
            for i in range(n))

    def initial(self) -> int:
        return self.word[0]

    def rotate(self) -> "CoxeterElement":
        """scs for s initial."""
        return CoxeterElement(self.word[1:] + self.word[:1])

    def drop_initial(self) -> "CoxeterElement":
        """sc, a Coxeter element of the parabolic subgroup without s."""
        return CoxeterElement(self.word[1:])

    def __str__(self):
        return "".join(f"s{i + 1}" for i in self.word) or "e"


# ---------------------------------------------------------------------------
# sortable elements and their cones

@dataclass
class SortableElement:
    w: GroupElement
    sorting_word: Tuple[int, ...]
    cone_roots: Tuple[Vec, ...]          # C_c(w)
    rays: Tuple[Vec, ...]                # rays[k] pairs to zero with every cone root but cone_roots[k]

    @property
    def negative_roots(self) -> List[Vec]:
        return sorted(b for b in self.cone_roots if _is_negative(b))

    def to_json(self):
        return {
            "word": [i + 1 for i in self.sorting_word],
            "c_roots": [list(b) for b in self.cone_roots],
            "generators": [list(r) for r in self.rays],
        }


class Cambrian:
    """Sortable elements, C_c roots and the Cambrian fan for a fixed (A, c)."""

    def __init__(self, data: RootData, c: Optional[CoxeterElement] = None):
        if c is None:
            c = CoxeterElement.from_exchange(data.B)
        elif not c.compatible_with(data.B):
            raise CambrianError(f"Coxeter element {c} is not compatible with B")
        if sorted(c.word) != list(range(data.n)):
            raise CambrianError("Coxeter element must use every generator")
        self.data = data
        self.c = c
        self.group = CoxeterGroup(data)
        self._memo: Dict = {}

    def _recurse(self, v: GroupElement, c: Tuple[int, ...]):
        key = (v.M, c)
        if key in self._memo:
            return self._memo[key]
        G = self.group
        if v.M == G.identity.M:
            out = (tuple(G.simple_root(i) for i in sorted(c)), ())
        elif not c:
            out = None
        else:
            s = c[0]
            sv = G.left(s, v)
            if G.length(sv) < G.length(v):
                r = self._recurse(sv, c[1:] + (s,))
                out = None if r is None else (
                    tuple(self.data.reflect_root(s, b) for b in r[0]), (s,) + r[1])
            elif not G.in_parabolic(v, s):
                out = None
            else:
                r = self._recurse(v, c[1:])
                out = None if r is None else (r[0] + (G.simple_root(s),), r[1])
        self._memo[key] = out
        return out

    def is_sortable(self, v: GroupElement) -> bool:
        return self._recurse(v, self.c.word) is not None

    def c_roots(self, v: GroupElement) -> Tuple[Vec, ...]:
        r = self._recurse(v, self.c.word)
        if r is None:
            raise CambrianError(f"element with word {v.word} is not {self.c}-sortable")
        return tuple(sorted(r[0]))

    def sortable(self, v: GroupElement) -> SortableElement:
        r = self._recurse(v, self.c.word)
        if r is None:
            raise CambrianError(f"element with word {v.word} is not {self.c}-sortable")
        roots = tuple(sorted(r[0]))
        return SortableElement(v, r[1], roots, dual_generators(self.data, roots))

    def enumerate_sortable(self) -> List[SortableElement]:
        out = [self.sortable(v) for v in self.group.elements.values() if self.is_sortable(v)]
        return sorted(out, key=lambda s: (len(s.sorting_word), s.sorting_word))

    def fan(self) -> Fan:
        return Fan(self.data, [FanCone(s.rays, s.cone_roots, s.sorting_word) for s in self.enumerate_sortable()])


def dual_generators(data: RootData, roots: Sequence[Vec]) -> Tuple[Vec, ...]:
    """Primitive weight vectors r_k with <r_k, roots[j]> = 0 for j != k and > 0 for j = k."""
    n = data.n
    # <p, beta> = sum_j p_j delta_j beta_j, so solve G p = e_k with G[i][j] = delta_j beta_i[j]
    G = [[Fraction(data.delta[j]) * roots[i][j] for j in range(n)] for i in range(n)]
    inv = _inverse(G)
    if inv is None:
        raise CambrianError("cone roots are linearly dependent")
    return tuple(primitive([inv[j][k] for j in range(n)]) for k in range(n))


def _inverse(m: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def enumerate_sortable(data: RootData, c: Optional[CoxeterElement] = None) -> List[SortableElement]:
    return Cambrian(data, c).enumerate_sortable()


def brute_force_sortable_count(data: RootData, c: CoxeterElement) -> int:
    """Count c-sortable elements through the non-recursive definition.

    w is c-sortable when the pieces of its c-sorting word (the leftmost reduced
    subword of c c c ...), one piece per copy of c, have weakly shrinking supports.
    """
    G = CoxeterGroup(data)
    count = 0
    for w in G.elements.values():
        blocks = _sorting_blocks(G, w, c.word)
        if all(set(blocks[i + 1]) <= set(blocks[i]) for i in range(len(blocks) - 1)):
            count += 1
    return count


def _sorting_blocks(G: CoxeterGroup, w: GroupElement, c: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    blocks: List[Tuple[int, ...]] = []
    cur = w
    while G.length(cur) > 0:
        piece = []
        for s in c:
            nxt = G.left(s, cur)
            if G.length(nxt) < G.length(cur):
                piece.append(s)
                cur = nxt
        blocks.append(tuple(piece))
    return blocks


def cambrian_cone(data: RootData, v: GroupElement, c: Optional[CoxeterElement] = None) -> Tuple[Tuple[Vec, ...], Tuple[Vec, ...]]:
    """(C_c(v), generators) for a sortable v."""
    s = Cambrian(data, c).sortable(v)
    return s.cone_roots, s.rays


# ---------------------------------------------------------------------------
# the Cambrian scattering diagram

def _facet_walls(camb: Cambrian, K: int) -> Tuple[List[Wall], Fan]:
    sortables = camb.enumerate_sortable()
    fan = Fan(camb.data, [FanCone(s.rays, s.cone_roots, s.sorting_word) for s in sortables])
    walls = []
    for s in sortables:
        for k, b in enumerate(s.cone_roots):
            if not _is_negative(b):
                continue
            others = s.cone_roots[:k] + s.cone_roots[k + 1:]
            rays = tuple(sorted(s.rays[:k] + s.rays[k + 1:]))
            cone = Cone("cone", tuple(sorted(others)), rays)
            walls.append(binomial_wall(tuple(-x for x in b), cone, K))
    return walls, fan


def build_cambscat(data: RootData, c: Optional[CoxeterElement] = None, K: int = 8, merge: bool = True) -> ScatteringDiagram:
    camb = Cambrian(data, c)
    walls, fan = _facet_walls(camb, K)
    d = ScatteringDiagram(data, K, walls, fan)
    return merge_equivalent(d) if merge else d


@dataclass
class OutgoingReport:
    checked: int = 0
    exempt: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_outgoing(d: ScatteringDiagram) -> OutgoingReport:
    rep = OutgoingReport()
    n = d.n
    simple = {tuple(int(i == j) for j in range(n)) for i in range(n)}
    for w in d.nontrivial():
        if w.normal in simple:
            rep.exempt += 1
            continue
        rep.checked += 1
        if not is_outgoing(d.data, w):
            rep.violations.append(f"wall with normal {w.normal} and cone {w.cone.key()} is incoming")
    return rep


def codim2_loops(fan: Fan) -> List[Tuple[Tuple, PathSpec]]:
    """Closed cone chains around each codimension-2 face."""
    return [(face, PathSpec(cones=tuple(cyc + cyc[:1]))) for face, cyc in fan.loops()]


def check_cambrian_consistency(d: ScatteringDiagram) -> ConsistencyReport:
    if d.fan is None:
        raise CambrianError("diagram carries no fan")
    return d.fan.check(d)


# ---------------------------------------------------------------------------
# local structure around codimension-2 faces

def _crossing_normals(d: ScatteringDiagram, cyc: List[int]) -> List[Vec]:
    out = []
    for ci, cj in zip(cyc, cyc[1:] + cyc[:1]):
        ws = d.fan.crossing(d, ci, cj)
        if len(ws) != 1:
            raise CambrianError(f"expected one wall between cones {ci} and {cj}, found {len(ws)}")
        out.append(ws[0][0].normal)
    return out


def _positive(v: Vec) -> Vec:
    return tuple(-x for x in v) if _is_negative(v) else v


def _lex_positive(pairs) -> bool:
    return all(a > 0 or (a == 0 and b > 0) for a, b in pairs)


def _same_cycle(a: List, b: List) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    for seq in (b, list(reversed(b))):
        for r in range(len(seq)):
            if seq[r:] + seq[:r] == a:
                return True
    return False


@dataclass
class StarReport:
    stars: int = 0
    lengths: Dict[int, int] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_star_structure(data: RootData, c: Optional[CoxeterElement] = None) -> StarReport:
    """Each codim-2 star, read as a cycle of wall normals, is w applied to a rank-2 Cambrian cycle."""
    camb = Cambrian(data, c)
    G = camb.group
    n = data.n
    # only the supports matter here; the order just has to keep every 1 + yhat^beta nontrivial
    K = max(sum(b) for b in G.positive_roots)
    walls, fan = _facet_walls(camb, K)
    d = ScatteringDiagram(data, K, walls, fan)
    sortables = {s.sorting_word: s for s in camb.enumerate_sortable()}
    p = (1,) * n
    rep = StarReport()
    rank2_cache: Dict = {}
    for face, cyc in fan.loops():
        rep.stars += 1
        rep.lengths[len(cyc)] = rep.lengths.get(len(cyc), 0) + 1
        q = tuple(sum(r[i] for r in face) for i in range(n))
        above = [ci for ci in cyc
                 if _lex_positive((data.pair(q, h), -data.pair(p, h)) for h in fan.cones[ci].normals)]
        if len(above) != 1:
            rep.failures.append(f"face {face}: no unique sortable element above")
            continue
        v = sortables[fan.cones[above[0]].label]
        betas = [b for b in v.cone_roots if data.pair(q, b) == 0]
        a = []
        for b in betas:
            hits = [i for i in range(n) if v.w.root(G.simple_root(i)) == b]
            if len(hits) != 1 or not _is_negative(b):
                break
            a.append(hits[0])
        if len(a) != 2:
            rep.failures.append(f"face {face}: vanishing roots {betas} are not two cover roots")
            continue
        rest = [j for j in range(n) if j not in a]
        qq = tuple(sum(v.w.weight(tuple(int(i == j) for i in range(n)))[k] for j in rest) for k in range(n))
        below = [w for w in G.elements.values()
                 if _lex_positive((data.pair(qq, w.root(G.simple_root(i))), data.pair(p, w.root(G.simple_root(i))))
                                  for i in range(n))]
        if len(below) != 1:
            rep.failures.append(f"face {face}: no unique element below")
            continue
        w = below[0]
        a1, a2 = a
        r1 = _positive(w.root(G.simple_root(a1)))
        r2 = _positive(w.root(G.simple_root(a2)))
        om = data.form_omega(LatticeVector(ROOT, r1), LatticeVector(ROOT, r2))
        if om < 0:
            a1, a2 = a2, a1
        A = data.A
        sub_B = ((0, -A[a1][a2]), (A[a2][a1], 0))
        if sub_B not in rank2_cache:
            sd = build_cambscat(RootData(sub_B), CoxeterElement((0, 1)), K)
            (_, sub_cyc), = sd.fan.loops()
            rank2_cache[sub_B] = _crossing_normals(sd, sub_cyc)
        expected = []
        for x, y in rank2_cache[sub_B]:
            emb = [0] * n
            emb[a1], emb[a2] = x, y
            expected.append(_positive(w.root(tuple(emb))))
        got = _crossing_normals(d, cyc)
        if not _same_cycle(got, expected):
            rep.failures.append(f"face {face}: normals {got} do not match twisted rank-2 cycle {expected}")
    return rep


def omega_s_lemma_check(data: RootData, c: Optional[CoxeterElement] = None, samples: int = 50, seed: int = 0) -> List[str]:
    """omega_c(phi, beta) = omega_{scs}(s phi, s beta) for s initial in c, on random lattice vectors."""
    c = c or CoxeterElement.from_exchange(data.B)
    s = c.initial()
    d2 = RootData(c.rotate().exchange_matrix(data.A))
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        phi = tuple(rng.randint(-5, 5) for _ in range(data.n))
        beta = tuple(rng.randint(-5, 5) for _ in range(data.n))
        lhs = data.form_omega(LatticeVector(ROOT, phi), LatticeVector(ROOT, beta))
        rhs = d2.form_omega(LatticeVector(ROOT, data.reflect_root(s, phi)), LatticeVector(ROOT, data.reflect_root(s, beta)))
        if lhs != rhs:
            bad.append(f"phi={phi} beta={beta}: {lhs} != {rhs}")
    return bad


# ---------------------------------------------------------------------------
# shards

def _plane_coords(beta: Vec, other: Vec, root: Vec) -> Optional[Tuple[Fraction, Fraction]]:
    """(x, y) with root = x beta + y other, or None when root is outside the span."""
    n = len(beta)
    for i, j in itertools.combinations(range(n), 2):
        det = beta[i] * other[j] - beta[j] * other[i]
        if det:
            x = Fraction(root[i] * other[j] - root[j] * other[i], det)
            y = Fraction(beta[i] * root[j] - beta[j] * root[i], det)
            if all(x * beta[k] + y * other[k] == root[k] for k in range(n)):
                return x, y
            return None
    raise CambrianError("roots are parallel")


def _basic_pair(beta: Vec, other: Vec, positive: Sequence[Vec]) -> Tuple[Vec, Vec]:
    """The two simple roots of the rank-2 subsystem spanned by beta and other."""
    sub = []
    for r in positive:
        xy = _plane_coords(beta, other, r)
        if xy is not None:
            sub.append((xy, r))

    def cross(u, v):
        return u[0] * v[1] - u[1] * v[0]

    ext = []
    for u, r in sub:
        sides = [cross(u, v) for v, _ in sub if v != u]
        if all(s >= 0 for s in sides) or all(s <= 0 for s in sides):
            ext.append(r)
    if len(ext) != 2:
        raise CambrianError(f"rank-2 subsystem through {beta}, {other} has {len(ext)} extreme roots")
    return ext[0], ext[1]


def cutting_roots(data: RootData, beta: Vec, positive: Sequence[Vec]) -> List[Vec]:
    """Roots whose hyperplanes cut beta^perp into shards."""
    cuts = set()
    for other in positive:
        if other == beta:
            continue
        basic = _basic_pair(beta, other, positive)
        if beta in basic:
            continue
        cuts.update(basic)
    return sorted(cuts)


@dataclass
class Shard:
    beta: Vec
    signs: Tuple[Tuple[Vec, int], ...]   # (cutting root, +-1): the shard is where sign * <p, root> >= 0

    def ineqs(self) -> Tuple[Vec, ...]:
        return tuple(sorted(tuple(s * x for x in r) for r, s in self.signs))

    def wall_cone(self) -> Cone:
        return Cone("cone", self.ineqs()) if self.signs else Cone.hyperplane()

    def contains(self, data: RootData, p, strict: bool = False) -> bool:
        if data.pair(p, self.beta) != 0:
            return False
        vals = [data.pair(p, h) for h in self.ineqs()]
        return all(v > 0 for v in vals) if strict else all(v >= 0 for v in vals)


def gregarious_shards(data: RootData, beta: Vec, positive: Sequence[Vec]) -> List[Shard]:
    """Shards of beta^perp with -omega(., beta) in their relative interior (at most one)."""
    cuts = cutting_roots(data, beta, positive)
    om = tuple(-x for x in data.omega_weight(beta))
    vals = [data.pair(om, r) for r in cuts]
    if any(v == 0 for v in vals):
        return []
    return [Shard(beta, tuple((r, 1 if v > 0 else -1) for r, v in zip(cuts, vals)))]


def shard_of(data: RootData, beta: Vec, fan: Fan) -> List[FanCone]:
    """Sigma_c(beta) as the list of fan facets orthogonal to beta (each as a FanCone of n-1 rays)."""
    out = []
    for facet, members in sorted(fan.facets().items()):
        if all(data.pair(r, beta) == 0 for r in facet):
            out.append(FanCone(facet, (), None))
    return out


def shard_matches_facets(data: RootData, shard: Shard, facets: Sequence[FanCone]) -> bool:
    """The facets lie in the shard and tile it: every ridge is shared or lies on the shard boundary."""
    for f in facets:
        if not all(shard.contains(data, r) for r in f.rays):
            return False
        if not shard.contains(data, f.interior_point(), strict=True):
            return False
    count: Dict = {}
    for f in facets:
        rs = sorted(f.rays)
        for ridge in itertools.combinations(rs, len(rs) - 1):
            count[ridge] = count.get(ridge, 0) + 1
    for ridge, k in count.items():
        if k == 2:
            continue
        if k != 1:
            return False
        # a boundary ridge must lie in one of the shard's cutting hyperplanes
        if not any(all(data.pair(r, h) == 0 for r in ridge) for h in shard.ineqs()):
            return False
    return bool(facets)


@dataclass
class ShardReport:
    roots: int = 0
    failures: List[str] = field(default_factory=list)
    diagram: Optional[ScatteringDiagram] = None
    consistency: Optional[ConsistencyReport] = None

    @property
    def ok(self) -> bool:
        return not self.failures and (self.consistency is None or self.consistency.consistent)


def check_gregarious_shards(data: RootData, c: Optional[CoxeterElement] = None, K: int = 8) -> ShardReport:
    camb = Cambrian(data, c)
    positive = camb.group.positive_roots
    fan = camb.fan()
    rep = ShardReport()
    walls = []
    for beta in positive:
        rep.roots += 1
        greg = gregarious_shards(data, beta, positive)
        if len(greg) != 1:
            rep.failures.append(f"beta={beta}: {len(greg)} gregarious shards")
            continue
        facets = shard_of(data, beta, fan)
        if not shard_matches_facets(data, greg[0], facets):
            rep.failures.append(f"beta={beta}: gregarious shard differs from the union of Cambrian facets")
        walls.append(binomial_wall(beta, greg[0].wall_cone(), K))
    rep.diagram = ScatteringDiagram(data, K, walls, fan)
    rep.consistency = fan.check(rep.diagram)
    return rep


def fan_to_json(camb: Cambrian) -> dict:
    return {
        "B": [list(r) for r in camb.data.B],
        "B_text": format_matrix(camb.data.B),
        "c": [i + 1 for i in camb.c.word],
        "sortable": [s.to_json() for s in camb.enumerate_sortable()],
    }


__all__ = [
    "CambrianError", "CoxeterGroup", "CoxeterElement", "GroupElement", "SortableElement", "Cambrian",
    "NAMED_TYPES", "named_type", "enumerate_sortable", "brute_force_sortable_count", "cambrian_cone",
    "dual_generators", "build_cambscat", "check_outgoing", "codim2_loops", "check_cambrian_consistency",
    "check_star_structure", "omega_s_lemma_check", "cutting_roots", "Shard", "gregarious_shards",
    "shard_of", "shard_matches_facets", "check_gregarious_shards", "fan_to_json", "RootDataError",
]
