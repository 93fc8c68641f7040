"""Irreducible root systems in Bourbaki numbering.

Conventions:

* ``cartan[i][j] = <alpha_j, coroot_i> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``
  (row = coroot, column = root).  The fundamental weight omega_j in the
  simple-root basis is then the solution of ``cartan @ x = e_j``.
* Long roots have squared length 2 in every type.
* Fundamental coweights are expressed in the simple-coroot basis and solve
  ``cartan.T @ y = e_j``.

Roots are generated by height, using root strings and integer Cartan
pairings only.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .lattice import IntegerMatrix, RationalVector, solve_rational

F = Fraction


class InvalidRank(ValueError):
    pass


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
MAX_RANK = 64


@dataclass(frozen=True, order=True)
class SystemType:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        if fam not in "ABCDEFG" or len(fam) != 1:
            raise InvalidRank(f"unknown family {fam!r}")
        if not isinstance(n, int) or n < 1:
            raise InvalidRank(f"rank must be a positive integer, got {n!r}")
        if fam in _MIN_RANK and n < _MIN_RANK[fam]:
            raise InvalidRank(f"{fam}{n}: rank must be >= {_MIN_RANK[fam]}")
        if fam in _FIXED_RANKS and n not in _FIXED_RANKS[fam]:
            raise InvalidRank(f"{fam}{n}: rank must be one of {_FIXED_RANKS[fam]}")

    @classmethod
    def parse(cls, text: str) -> SystemType:
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not m:
            raise InvalidRank(f"cannot parse root system type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"

    def __str__(self):
        return f"{self.family}{self.rank}"


def _diagram(st: SystemType) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Squared lengths of the simple roots and the (0-based) edges."""
    fam, n = st.family, st.rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if fam == "A":
        return [F(2)] * n, chain
    if fam == "B":
        return [F(2)] * (n - 1) + [F(1)], chain
    if fam == "C":
        return [F(1)] * (n - 1) + [F(2)], chain
    if fam == "D":
        return [F(2)] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if fam == "E":
        # 1-3-4-5-...-n with 2 hanging off 4
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        return [F(2)] * n, edges
    if fam == "F":
        return [F(2), F(2), F(1), F(1)], chain
    if fam == "G":
        return [F(2, 3), F(2)], chain
    raise InvalidRank(str(st))


def cartan_matrix(st: SystemType) -> IntegerMatrix:
    lengths, edges = _diagram(st)
    gram = _gram(lengths, edges)
    n = st.rank
    rows = [[int(2 * gram[i][j] / gram[i][i]) for j in range(n)] for i in range(n)]
    return IntegerMatrix.from_rows(rows, n)


def _gram(lengths, edges) -> list[list[Fraction]]:
    n = len(lengths)
    g = [[F(0)] * n for _ in range(n)]
    for i, d in enumerate(lengths):
        g[i][i] = d
    for i, j in edges:
        # with long roots of length 2, adjacent simple roots pair to -max/2
        g[i][j] = g[j][i] = -max(lengths[i], lengths[j]) / 2
    return g


def lengths_from_cartan(cartan: IntegerMatrix) -> list[Fraction]:
    """Squared lengths of simple roots, normalized so the longest is 2."""
    n = cartan.rows
    d = [None] * n
    if n == 0:
        return []
    d[0] = F(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i, j] and d[j] is None:
                # C[i][j] / C[j][i] = d_j / d_i
                d[j] = d[i] * F(cartan[i, j], cartan[j, i])
                stack.append(j)
    if any(x is None for x in d):
        raise ValueError("Cartan matrix is not connected")
    top = max(d)
    return [2 * x / top for x in d]


@dataclass(frozen=True)
class Root:
    coords: tuple[int, ...]
    squared_length: Fraction

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coords)


@dataclass(frozen=True, eq=False)
class RootSystem:
    system_type: SystemType
    cartan: IntegerMatrix
    roots: tuple[Root, ...]
    fundamental_weights: tuple[RationalVector, ...]
    simple_lengths: tuple[Fraction, ...]
    _dual_lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.system_type.rank

    @property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if r.is_positive)

    @property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=lambda r: r.height)

    @cached_property
    def fundamental_coweights(self) -> tuple[RationalVector, ...]:
        """omega-check_j in the simple-coroot basis."""
        ct = self.cartan.T
        n = self.rank
        return tuple(solve_rational(ct, [int(i == j) for i in range(n)]) for j in range(n))

    def pairing(self, weight_coords, i: int) -> Fraction:
        """<weight, coroot_i> for a weight given in the simple-root basis (0-based i)."""
        return sum((F(c) * self.cartan[i, j] for j, c in enumerate(weight_coords)), F(0))

    def coroot_squared_length(self, i: int) -> Fraction:
        """(coroot_i, coroot_i) = 4 / (alpha_i, alpha_i), 0-based i."""
        return 4 / self.simple_lengths[i]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.rank) if j != i and self.cartan[i, j] != 0]

    @property
    def dual(self) -> RootSystem:
        d = self.__dict__.get("_dual")
        if d is None:
            with self._dual_lock:
                d = self.__dict__.get("_dual")
                if d is None:
                    d = _build_from_cartan(_dual_type(self.system_type), self.cartan.T)
                    object.__setattr__(d, "_dual", self)
                    object.__setattr__(self, "_dual", d)
        return d

    def __repr__(self):
        return f"RootSystem({self.system_type})"


def _dual_type(st: SystemType) -> SystemType:
    if st.family == "B":
        return SystemType("C", st.rank)
    if st.family == "C":
        return SystemType("B", st.rank)
    return st


def _generate_roots(cartan: IntegerMatrix, lengths: list[Fraction]) -> tuple[Root, ...]:
    n = cartan.rows
    gram = [[cartan[i, j] * lengths[i] / 2 for j in range(n)] for i in range(n)]

    def sqlen(v):
        return sum(
            (v[i] * v[j] * gram[i][j] for i in range(n) for j in range(n) if v[i] and v[j]),
            F(0),
        )

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    positive = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                pair = sum(beta[j] * cartan[i, j] for j in range(n))
                q = p - pair
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        nxt.sort(reverse=True)
        positive.extend(nxt)
        layer = nxt
    positive.sort(key=lambda v: (sum(v), tuple(-x for x in v)))
    roots = [Root(v, sqlen(v)) for v in positive]
    roots += [Root(tuple(-x for x in v), sqlen(v)) for v in positive]
    return tuple(roots)


def _build_from_cartan(st: SystemType, cartan: IntegerMatrix) -> RootSystem:
    n = st.rank
    lengths = lengths_from_cartan(cartan)
    weights = tuple(solve_rational(cartan, [int(i == j) for i in range(n)]) for j in range(n))
    return RootSystem(
        system_type=st,
        cartan=cartan,
        roots=_generate_roots(cartan, lengths),
        fundamental_weights=weights,
        simple_lengths=tuple(lengths),
    )


_cache: dict[SystemType, RootSystem] = {}
_cache_lock = threading.Lock()


def build(system_type: SystemType | str) -> RootSystem:
    """Root system of the given type (cached; values are immutable)."""
    if isinstance(system_type, str):
        system_type = SystemType.parse(system_type)
    rs = _cache.get(system_type)
    if rs is None:
        if system_type.rank > MAX_RANK:
            raise InvalidRank(f"rank {system_type.rank} exceeds the ceiling {MAX_RANK}")
        rs = _build_from_cartan(system_type, cartan_matrix(system_type))
        with _cache_lock:
            rs = _cache.setdefault(system_type, rs)
    return rs


def dual(rs: RootSystem) -> RootSystem:
    return rs.dual


def weight_in_root_lattice(rs: RootSystem, weight_index: int) -> bool:
    """Whether omega_j (1-based) has integer simple-root coordinates."""
    if not 1 <= weight_index <= rs.rank:
        raise IndexError(f"weight index {weight_index} out of range 1..{rs.rank}")
    return rs.fundamental_weights[weight_index - 1].is_integral()


def delta_r(rs: RootSystem) -> frozenset[int]:
    return frozenset(j for j in range(1, rs.rank + 1) if weight_in_root_lattice(rs, j))


def delta_c(rs: RootSystem) -> frozenset[int]:
    """Vertices j whose coweight is minuscule for the dual system.

    Equivalent to: the alpha_j coefficient of every root lies in {-1, 0, 1}.
    """
    return frozenset(
        j + 1 for j in range(rs.rank) if all(abs(r.coords[j]) <= 1 for r in rs.roots)
    )


def diagram_automorphisms(st: SystemType) -> list[tuple[int, ...]]:
    """Nontrivial Dynkin diagram symmetries as 1-based permutations (index 0 unused)."""
    n = st.rank
    ident = list(range(n + 1))
    out = []
    if st.family == "A" and n > 1:
        out.append(tuple([0] + [n + 1 - i for i in range(1, n + 1)]))
    elif st.family == "D":
        p = ident[:]
        p[n - 1], p[n] = n, n - 1
        out.append(tuple(p))
        if n == 4:
            for perm in ((1, 3, 4), (1, 4, 3)):
                q = ident[:]
                # 3-cycles on the outer vertices 1,3,4
                q[perm[0]], q[perm[1]], q[perm[2]] = perm[1], perm[2], perm[0]
                out.append(tuple(q))
    elif st.family == "E" and n == 6:
        p = ident[:]
        p[1], p[6], p[3], p[5] = 6, 1, 5, 3
        out.append(tuple(p))
    return out
