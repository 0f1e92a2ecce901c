"""Root data derived from an exchange matrix.

Coordinate conventions used throughout the package:

* vectors of V (roots) are tuples of simple-root coordinates;
* co-roots are tuples of simple co-root coordinates (alpha_i^vee = delta_i^{-1} alpha_i);
* points of V* (weights) are tuples of fundamental-weight coordinates, so that
  p_i = <p, alpha_i^vee>.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

Vec = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

ROOT, COROOT, WEIGHT, COWEIGHT = "root", "coroot", "weight", "coweight"


class RootDataError(ValueError):
    pass


def parse_matrix(text: str) -> Matrix:
    """Parse the CLI form ``"0,2;-2,0"``."""
    try:
        rows = tuple(tuple(int(x) for x in r.split(",")) for r in text.strip().split(";"))
    except ValueError as exc:
        raise RootDataError(f"cannot parse matrix {text!r}") from exc
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise RootDataError("exchange matrix must be square")
    return rows


def format_matrix(b: Sequence[Sequence[int]]) -> str:
    return ";".join(",".join(str(x) for x in row) for row in b)


def primitive(v: Sequence) -> Vec:
    """Primitive integer vector on the ray through a nonzero rational vector."""
    fr = [Fraction(x) for x in v]
    if not any(fr):
        raise RootDataError("zero vector has no primitive direction")
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (f.denominator for f in fr), 1)
    ints = [int(f * den) for f in fr]
    g = reduce(math.gcd, (abs(x) for x in ints))
    return tuple(x // g for x in ints)


def symmetrizer(b: Matrix) -> Tuple[Fraction, ...]:
    """delta with delta_i b_ij = -delta_j b_ji, delta_i^{-1} integral with gcd 1 per component."""
    n = len(b)
    for i in range(n):
        if b[i][i] != 0:
            raise RootDataError("exchange matrix needs zero diagonal")
    delta: List = [None] * n
    for start in range(n):
        if delta[start] is not None:
            continue
        comp = [start]
        delta[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or (b[i][j] == 0 and b[j][i] == 0):
                    continue
                if b[i][j] == 0 or b[j][i] == 0 or (b[i][j] > 0) == (b[j][i] > 0):
                    raise RootDataError("exchange matrix is not skew-symmetrizable")
                d = -delta[i] * b[i][j] / b[j][i]
                if delta[j] is None:
                    delta[j] = d
                    comp.append(j)
                    queue.append(j)
                elif delta[j] != d:
                    raise RootDataError("exchange matrix is not skew-symmetrizable")
        # rescale the component so the inverses are coprime integers
        inv = [1 / delta[i] for i in comp]
        den = reduce(lambda x, y: x * y // math.gcd(x, y), (f.denominator for f in inv), 1)
        ints = [int(f * den) for f in inv]
        g = reduce(math.gcd, ints)
        for i, k in zip(comp, ints):
            delta[i] = Fraction(g, k)
    return tuple(delta)


@dataclass(frozen=True)
class LatticeVector:
    tag: str
    coords: Tuple

    def __post_init__(self):
        if self.tag not in (ROOT, COROOT, WEIGHT, COWEIGHT):
            raise RootDataError(f"unknown basis tag {self.tag}")
        object.__setattr__(self, "coords", tuple(self.coords))


@dataclass(frozen=True)
class RootData:
    B: Matrix

    def __post_init__(self):
        b = tuple(tuple(int(x) for x in row) for row in self.B)
        if any(len(r) != len(b) for r in b):
            raise RootDataError("exchange matrix must be square")
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "delta", symmetrizer(b))
        n = len(b)
        a = tuple(tuple(2 if i == j else -abs(b[i][j]) for j in range(n)) for i in range(n))
        object.__setattr__(self, "A", a)

    @classmethod
    def from_string(cls, text: str) -> "RootData":
        return cls(parse_matrix(text))

    @classmethod
    def rank2(cls, a: int, b: int) -> "RootData":
        return cls(((0, b), (a, 0)))

    @property
    def n(self) -> int:
        return len(self.B)

    # conversions --------------------------------------------------------
    def root_to_coroot(self, v: Sequence) -> Tuple:
        return tuple(Fraction(x) * d for x, d in zip(v, self.delta))

    def coroot_to_root(self, k: Sequence) -> Tuple:
        return tuple(Fraction(x) / d for x, d in zip(k, self.delta))

    def weight_to_coweight(self, p: Sequence) -> Tuple:
        # rho_i^vee = delta_i^{-1} rho_i
        return tuple(Fraction(x) * d for x, d in zip(p, self.delta))

    def coweight_to_weight(self, q: Sequence) -> Tuple:
        return tuple(Fraction(x) / d for x, d in zip(q, self.delta))

    def as_root(self, v: LatticeVector) -> Tuple:
        if v.tag == ROOT:
            return v.coords
        if v.tag == COROOT:
            return self.coroot_to_root(v.coords)
        raise RootDataError(f"{v.tag} vector does not live in V")

    def as_weight(self, p: LatticeVector) -> Tuple:
        if p.tag == WEIGHT:
            return p.coords
        if p.tag == COWEIGHT:
            return self.coweight_to_weight(p.coords)
        raise RootDataError(f"{p.tag} vector does not live in V*")

    # pairings and forms --------------------------------------------------
    def pair(self, p: Sequence, v: Sequence):
        """<p, v> for p in weight coordinates and v in simple-root coordinates."""
        s = sum(Fraction(pi) * d * vi for pi, d, vi in zip(p, self.delta, v))
        return s.numerator if s.denominator == 1 else s

    def pairing(self, p: LatticeVector, v: LatticeVector):
        return self.pair(self.as_weight(p), self.as_root(v))

    def _bilinear(self, m: Matrix, u: Sequence, v: Sequence):
        n = self.n
        s = sum(
            Fraction(u[i]) * self.delta[i] * m[i][j] * v[j]
            for i in range(n) for j in range(n) if m[i][j] and u[i] and v[j]
        )
        return s.numerator if s.denominator == 1 else s

    def form_K(self, u: LatticeVector, v: LatticeVector):
        return self._bilinear(self.A, self.as_root(u), self.as_root(v))

    def form_omega(self, u: LatticeVector, v: LatticeVector):
        return self._bilinear(self.B, self.as_root(u), self.as_root(v))

    def coroot(self, beta: Sequence[int]) -> Vec:
        """beta^vee: the primitive co-root lattice vector on the ray of beta."""
        return primitive(self.root_to_coroot(beta))

    @staticmethod
    def pair_coroot(lam: Sequence, k: Sequence):
        """<lambda, k> for lambda in weight and k in co-root coordinates."""
        return sum(x * y for x, y in zip(lam, k))

    def omega_coroot(self, k: Sequence, phi: Sequence):
        """omega(k, phi) for k in co-root coordinates and phi in root coordinates."""
        n = self.n
        return sum(k[i] * self.B[i][j] * phi[j] for i in range(n) for j in range(n))

    def omega_weight(self, beta: Sequence) -> Tuple:
        """omega(., beta) as a weight vector; also the x-degree of yhat^beta."""
        n = self.n
        return tuple(sum(self.B[i][j] * beta[j] for j in range(n)) for i in range(n))

    # Weyl group action ---------------------------------------------------
    def reflect_root(self, i: int, v: Sequence) -> Tuple:
        if not 0 <= i < self.n:
            raise RootDataError(f"index {i} out of range")
        # s_i(alpha_j) = alpha_j - a_ij alpha_i
        out = list(v)
        out[i] = v[i] - sum(self.A[i][j] * v[j] for j in range(self.n))
        return tuple(out)

    def reflect_weight(self, i: int, p: Sequence) -> Tuple:
        if not 0 <= i < self.n:
            raise RootDataError(f"index {i} out of range")
        # (s_i p)_j = p_j - a_ji p_i
        return tuple(p[j] - self.A[j][i] * p[i] for j in range(self.n))

    def simple_reflection_action(self, i: int, v: LatticeVector) -> LatticeVector:
        if v.tag == ROOT:
            return LatticeVector(ROOT, self.reflect_root(i, v.coords))
        if v.tag == WEIGHT:
            return LatticeVector(WEIGHT, self.reflect_weight(i, v.coords))
        if v.tag == COROOT:
            return LatticeVector(COROOT, self.root_to_coroot(self.reflect_root(i, self.coroot_to_root(v.coords))))
        return LatticeVector(COWEIGHT, self.weight_to_coweight(self.reflect_weight(i, self.coweight_to_weight(v.coords))))

    def positive_real_roots(self, degree_bound: int) -> List[Vec]:
        """Positive roots w(alpha_i) of height <= degree_bound, sorted by (height, coords)."""
        n = self.n
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple) if degree_bound >= 1 else set()
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for i in range(n):
                w = self.reflect_root(i, v)
                if min(w) < 0 or sum(w) > degree_bound or w in seen:
                    continue
                seen.add(w)
                queue.append(w)
        return sorted(seen, key=lambda v: (sum(v), v))


def cartan_from_exchange(B: Sequence[Sequence[int]]) -> RootData:
    return RootData(tuple(tuple(r) for r in B))


def deg(v: Sequence[int]) -> int:
    return sum(v)
