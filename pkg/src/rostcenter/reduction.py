"""Tits indices and the semisimple subgroup G' obtained by deleting Delta_r.

G' has Dynkin diagram Delta minus Delta_r.  Its components are typed by
matching each connected piece of the ambient Cartan matrix against the
Bourbaki Cartan matrices, which also yields the component's own vertex
numbering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .center_lattice import center
from .root_system import (
    InvalidRank,
    RootSystem,
    SystemType,
    build,
    cartan_matrix,
    delta_r,
)


class IndexSyntaxError(ValueError):
    pass


class ConditionViolated(ValueError):
    def __init__(self, message, uncircled=()):
        super().__init__(message)
        self.uncircled = tuple(uncircled)


_OUTER_OK = {2: lambda st: st.family in "AD" or st == SystemType("E", 6),
             3: lambda st: st == SystemType("D", 4),
             6: lambda st: st == SystemType("D", 4)}


@dataclass(frozen=True)
class TitsIndex:
    system_type: SystemType
    circled: frozenset[int]
    outer_degree: int = 1  # 1 means inner

    def __post_init__(self):
        bad = [v for v in self.circled if not 1 <= v <= self.system_type.rank]
        if bad:
            raise IndexSyntaxError(f"circled vertices {sorted(bad)} outside 1..{self.system_type.rank}")
        d = self.outer_degree
        if d != 1:
            if d not in _OUTER_OK:
                raise IndexSyntaxError(f"unsupported outer degree {d}")
            if not _OUTER_OK[d](self.system_type) or (self.system_type.family == "A" and self.system_type.rank < 2):
                raise IndexSyntaxError(f"{self.system_type} has no outer form of degree {d}")

    @property
    def is_inner(self) -> bool:
        return self.outer_degree == 1

    @property
    def form_kind(self) -> str:
        return "inner" if self.is_inner else f"outer{self.outer_degree}"

    @classmethod
    def parse(cls, text: str) -> TitsIndex:
        """Parse ``E7 inner circled=1,3,4,6``; the kind defaults to inner."""
        m = re.fullmatch(
            r"\s*([A-Za-z]_?\d+)(?:\s+(inner|outer2|outer3|outer6))?\s+circled=([\d,\s]*?)\s*",
            text,
        )
        if not m:
            raise IndexSyntaxError(
                f"cannot parse Tits index {text!r}; expected '<type> [inner|outer2|outer3|outer6] circled=<list>'"
            )
        try:
            st = SystemType.parse(m.group(1))
        except InvalidRank as exc:
            raise IndexSyntaxError(str(exc)) from None
        kind = m.group(2) or "inner"
        items = [x.strip() for x in m.group(3).split(",") if x.strip()]
        circled = frozenset(int(x) for x in items)
        return cls(st, circled, 1 if kind == "inner" else int(kind[-1]))

    def __str__(self):
        return f"{self.system_type} {self.form_kind} circled={','.join(map(str, sorted(self.circled)))}"


def check_condition(idx: TitsIndex) -> bool:
    """Every vertex of Delta_r is circled."""
    return delta_r(build(idx.system_type)) <= idx.circled


def uncircled_delta_r(idx: TitsIndex) -> tuple[int, ...]:
    return tuple(sorted(delta_r(build(idx.system_type)) - idx.circled))


def rost_multiplier(ambient: RootSystem, component_vertex: int) -> int:
    """Squared length of coroot_i over that of the shortest coroot."""
    i = component_vertex - 1
    shortest = min(4 / r.squared_length for r in ambient.roots)
    m = ambient.coroot_squared_length(i) / shortest
    if m.denominator != 1:
        raise ArithmeticError(f"non-integral multiplier {m}")
    return int(m)


def _connected_components(rs: RootSystem, vertices: Iterable[int]) -> list[list[int]]:
    left = set(vertices)
    comps = []
    while left:
        start = min(left)
        comp, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for w in rs.neighbors(v - 1):
                if w + 1 in left and w + 1 not in comp:
                    comp.add(w + 1)
                    stack.append(w + 1)
        left -= comp
        comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def _candidate_types(k: int) -> list[SystemType]:
    out = []
    for fam in "ABCDEFG":
        try:
            out.append(SystemType(fam, k))
        except InvalidRank:
            pass
    return out


def _match(rs: RootSystem, verts: list[int], target) -> list[int] | None:
    """Ordering of ``verts`` whose sub-Cartan equals ``target``, or None.

    Dynkin diagrams are trees, so targets are visited in BFS order and each new
    vertex must be a neighbor of its parent's image.
    """
    k = len(verts)
    adj = [[b for b in range(k) if b != a and target[a, b]] for a in range(k)]
    order, parent = [0], {0: None}
    for a in order:
        for b in adj[a]:
            if b not in parent:
                parent[b] = a
                order.append(b)
    if len(order) != k:
        return None
    vset = set(verts)
    image: dict[int, int] = {}

    def ok(t, v):
        for a, w in image.items():
            if rs.cartan[w - 1, v - 1] != target[a, t] or rs.cartan[v - 1, w - 1] != target[t, a]:
                return False
        return True

    def extend(pos):
        if pos == k:
            return True
        t = order[pos]
        p = parent[t]
        used = set(image.values())
        if p is None:
            cands = sorted(vset)
        else:
            cands = sorted(w + 1 for w in rs.neighbors(image[p] - 1) if w + 1 in vset)
        for v in cands:
            if v in used or not ok(t, v):
                continue
            image[t] = v
            if extend(pos + 1):
                return True
            del image[t]
        return False

    if not extend(0):
        return None
    return [image[t] for t in range(k)]


def classify_component(rs: RootSystem, verts: list[int]) -> tuple[SystemType, list[int]]:
    """Type of the subdiagram on ``verts`` and its vertices in Bourbaki order."""
    for st in _candidate_types(len(verts)):
        ordering = _match(rs, verts, cartan_matrix(st))
        if ordering is not None:
            return st, ordering
    raise ValueError(f"vertices {verts} do not form a Dynkin diagram")


@dataclass(frozen=True)
class Component:
    system_type: SystemType
    vertices: tuple[int, ...]  # sorted ambient indices
    bourbaki_order: tuple[int, ...]  # ambient index of component vertex 1, 2, ...
    multiplier: int


@dataclass(frozen=True)
class GPrimeDecomposition:
    index: TitsIndex
    components: tuple[Component, ...]
    # center_restriction[g][c]: exponents of generator g on component c's sorted vertices
    center_restriction: tuple[tuple[tuple[int, ...], ...], ...]
    center_orders: tuple[int, ...]

    @property
    def multipliers(self) -> tuple[int, ...]:
        return tuple(c.multiplier for c in self.components)


def g_prime(idx: TitsIndex) -> GPrimeDecomposition:
    if not check_condition(idx):
        bad = uncircled_delta_r(idx)
        raise ConditionViolated(f"Delta_r vertices {list(bad)} are not circled", bad)
    rs = build(idx.system_type)
    dr = delta_r(rs)
    comps = []
    for verts in _connected_components(rs, [v for v in range(1, rs.rank + 1) if v not in dr]):
        st, order = classify_component(rs, verts)
        mult = min(rost_multiplier(rs, v) for v in verts)
        comps.append(Component(st, tuple(verts), tuple(order), mult))
    pres = center(rs)
    restriction = tuple(
        tuple(tuple(z.exponents[v - 1] for v in c.vertices) for c in comps)
        for z in pres.zmaps
    )
    return GPrimeDecomposition(idx, tuple(comps), restriction, tuple(z.order for z in pres.zmaps))
