"""The center of a simply connected group, via coweights modulo coroots.

A coweight w (simple-coroot coordinates) with denominator n gives the
cocharacter map mu_n -> Z, zeta -> prod_i h_i(zeta^{c_i}) where c = n w.
Two coweights give the same map exactly when they differ by an element of
the coroot lattice, so the center is Lambda-check / Lambda-check_r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import FiniteAbelianGroup, RationalVector, lattice_quotient
from .root_system import RootSystem, delta_c


@dataclass(frozen=True)
class CocharacterMap:
    order: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if any(not 0 <= c < self.order for c in self.exponents):
            raise ValueError("exponents must be reduced mod order")

    @property
    def support(self) -> tuple[int, ...]:
        """1-based indices i with c_i != 0."""
        return tuple(i + 1 for i, c in enumerate(self.exponents) if c)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def as_class(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.order) for c in self.exponents)

    def render(self) -> str:
        """Product of h_i, e.g. ``h_2(-1) h_5(-1) h_7(-1)`` or ``h_1(z) h_3(z^2)``."""
        if self.is_trivial:
            return "1"
        parts = []
        for i, c in enumerate(self.exponents, start=1):
            if not c:
                continue
            if self.order == 2:
                arg = "-1"
            else:
                arg = "z" if c == 1 else f"z^{c}"
            parts.append(f"h_{i}({arg})")
        return " ".join(parts)


def zmap(rs: RootSystem, coweight: Sequence) -> CocharacterMap:
    """Cocharacter map of a coweight given in the simple-coroot basis."""
    w = RationalVector(coweight)
    if len(w) != rs.rank:
        raise ValueError(f"coweight needs {rs.rank} coordinates")
    n = w.denominator
    return CocharacterMap(n, tuple(int(c * n) % n for c in w))


def reduce_class(vec: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) % 1 for c in vec)


def generated_subgroup(gens: Sequence[Sequence[Fraction]]) -> set[tuple[Fraction, ...]]:
    """All elements generated by ``gens`` in (Q/Z)^n, by closure."""
    if not gens:
        return {()}
    zero = tuple(Fraction(0) for _ in gens[0])
    seen = {zero}
    frontier = [zero]
    gens = [reduce_class(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % 1 for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class CenterPresentation:
    group: FiniteAbelianGroup
    zmaps: tuple[CocharacterMap, ...]
    source_weights: tuple[int | None, ...]

    @property
    def order(self) -> int:
        return self.group.order

    def character(self, j: int) -> tuple[int, ...]:
        """Values of omega_j (1-based) on each generator, as exponents of zeta."""
        return tuple(z.exponents[j - 1] for z in self.zmaps)


def _coweight_lattice_quotient(rs: RootSystem) -> FiniteAbelianGroup:
    # coroot_i = sum_j cartan[i][j] coweight_j: the coroot lattice is spanned
    # by the columns of cartan.T in coweight coordinates.
    return lattice_quotient(rs.cartan.T)


def center(rs: RootSystem) -> CenterPresentation:
    """Lambda-check / Lambda-check_r with fundamental-coweight generator lifts.

    Lifts are chosen among minuscule coweights when possible: the smallest
    such index for a cyclic center; for a two-factor center the pair with the
    largest indices.  Generators are listed by order, then by decreasing top
    support vertex (so for D_even, z0 carries h_l and z1 carries h_{l-1}).
    """
    group = _coweight_lattice_quotient(rs)
    factors = group.invariant_factors
    if not factors:
        return CenterPresentation(group, (), ())
    cow = rs.fundamental_coweights
    maps = [zmap(rs, w) for w in cow]
    minuscule = sorted(delta_c(rs))
    others = [j for j in range(1, rs.rank + 1) if j not in minuscule]
    k = len(factors)

    def valid(idx):
        orders = sorted(maps[j - 1].order for j in idx)
        if orders != sorted(factors):
            return False
        return len(generated_subgroup([maps[j - 1].as_class() for j in idx])) == group.order

    chosen = None
    if k == 1:
        chosen = next(((j,) for j in minuscule + others if valid((j,))), None)
    else:
        pools = [list(combinations(minuscule, k))[::-1], list(combinations(minuscule + others, k))]
        chosen = next((c for pool in pools for c in pool if valid(c)), None)

    if chosen is not None:
        pairs = [(maps[j - 1], j) for j in chosen]
    else:
        pairs = []
        for g in group.generators:
            w = sum((c * cow[j] for j, c in enumerate(g) if c), RationalVector([0] * rs.rank))
            pairs.append((zmap(rs, w), None))
    if k > 1:
        pairs.sort(key=lambda p: (p[0].order, -max(p[0].support), p[0].exponents))
    return CenterPresentation(
        group,
        tuple(p[0] for p in pairs),
        tuple(p[1] for p in pairs),
    )


def vanish_criterion(rs: RootSystem, circled: Iterable[int]) -> bool:
    """Every minuscule-coweight vertex is circled (inner type assumed)."""
    return delta_c(rs) <= frozenset(circled)
