"""Formal cup-product bookkeeping for the Rost invariant restricted to the center.

A :class:`FormalCupExpression` is a Z/n-linear combination of terms
``a ⌣ B`` where ``a`` names a class in H^1(k, Z) (one symbol per center
generator) and ``B`` is an opaque Brauer-class symbol such as ``[Q]``,
``[Q_7]`` or ``m[D]``.  Rewrite rules express one Brauer symbol through
others, e.g. ``[Q] -> [Q_3] + [Q_4]``.

Brauer symbols are attached to classes of fundamental weights modulo the
root lattice: two components whose first vertices carry the same weight class
get the same symbol, and the Tits map being additive yields the rewrite rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Iterable, Mapping, Sequence

from .center_lattice import CenterPresentation, center
from .reduction import (
    ConditionViolated,
    GPrimeDecomposition,
    TitsIndex,
    check_condition,
    g_prime,
    uncircled_delta_r,
)
from .root_system import RootSystem, SystemType, build


class CyclicRelations(ValueError):
    pass


class UnsupportedShape(ValueError):
    pass


CUP = "⌣"

Term = tuple[str, str]  # (torsor symbol, brauer symbol)
Relation = tuple[str, tuple[tuple[str, int], ...]]


@dataclass(frozen=True)
class FormalCupExpression:
    modulus: int
    terms: tuple[tuple[Term, int], ...] = ()
    relations: tuple[Relation, ...] = ()

    @classmethod
    def build(
        cls,
        modulus: int,
        terms: Mapping[Term, int] | Iterable[tuple[Term, int]] = (),
        relations: Mapping[str, Mapping[str, int]] | Iterable[Relation] = (),
    ) -> FormalCupExpression:
        if modulus < 1:
            raise ValueError("modulus must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Term, int] = {}
        for key, c in items:
            acc[key] = (acc.get(key, 0) + c) % modulus
        if isinstance(relations, Mapping):
            rels = tuple(
                (head, tuple(sorted((s, c % modulus) for s, c in body.items())))
                for head, body in relations.items()
            )
        else:
            rels = tuple((h, tuple(sorted(b))) for h, b in relations)
        return cls(
            modulus,
            tuple(sorted((k, v) for k, v in acc.items() if v)),
            tuple(sorted(rels)),
        )

    @classmethod
    def zero(cls, modulus: int, relations=()) -> FormalCupExpression:
        return cls.build(modulus, (), relations)

    def as_dict(self) -> dict[Term, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: FormalCupExpression) -> FormalCupExpression:
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")
        rels = dict(self.relations)
        for h, b in other.relations:
            if rels.setdefault(h, b) != b:
                raise ValueError(f"conflicting relations for {h}")
        return FormalCupExpression.build(self.modulus, list(self.terms) + list(other.terms), rels.items())

    def scale(self, k: int) -> FormalCupExpression:
        return FormalCupExpression.build(self.modulus, [(t, k * c) for t, c in self.terms], self.relations)

    def __rmul__(self, k: int) -> FormalCupExpression:
        return self.scale(k)

    def __str__(self):
        return render_terms(self.terms)

    def brauer_part(self, torsor: str) -> str:
        """The Brauer combination paired with ``torsor``, e.g. ``[Q]``."""
        return _render_linear([(b, c) for (t, b), c in self.terms if t == torsor])


def _render_linear(items: Sequence[tuple[str, int]]) -> str:
    if not items:
        return "0"
    return " + ".join(s if c == 1 else f"{c}{s}" for s, c in items)


def render_terms(terms) -> str:
    return _render_linear([(f"{t}{CUP}{b}", c) for (t, b), c in terms])


def _check_acyclic(relations: dict[str, tuple[tuple[str, int], ...]]):
    state: dict[str, int] = {}

    def visit(s, path):
        if state.get(s) == 2:
            return
        if state.get(s) == 1:
            raise CyclicRelations("cyclic rewrite relations: " + " -> ".join(path + [s]))
        state[s] = 1
        for t, _ in relations.get(s, ()):
            visit(t, path + [s])
        state[s] = 2

    for head in relations:
        visit(head, [])


def normalize(e: FormalCupExpression) -> FormalCupExpression:
    """Rewrite every relation head away and reduce coefficients mod n."""
    rels = dict(e.relations)
    _check_acyclic(rels)
    n = e.modulus
    acc: dict[Term, int] = {}
    work = list(e.terms)
    while work:
        (t, b), c = work.pop()
        if b in rels:
            work.extend(((t, s), c * k) for s, k in rels[b])
        else:
            acc[(t, b)] = (acc.get((t, b), 0) + c) % n
    return FormalCupExpression.build(n, acc, e.relations)


# ---------------------------------------------------------------------------
# pairings on the center and bilinear forms over F_2


HYPERBOLIC = ((0, 1), (1, 0))
DIAGONAL = ((1, 0), (0, 1))


@dataclass(frozen=True)
class PairingSpec:
    kind: str  # "D-even-hyperbolic" | "D-even-diagonal" | "standard-mu-n"
    modulus: int
    gram: tuple[tuple[int, ...], ...] | None = None
    characters: tuple[int, ...] = ()  # fundamental weights giving the coordinates

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "modulus": self.modulus,
            "gram": [list(r) for r in self.gram] if self.gram else None,
            "characters": list(self.characters),
        }


def pairing_for(st: SystemType) -> PairingSpec:
    if st.family == "D" and st.rank % 2 == 0:
        l = st.rank
        if l % 4 == 0:
            return PairingSpec("D-even-hyperbolic", 2, HYPERBOLIC, (l - 1, l))
        return PairingSpec("D-even-diagonal", 2, DIAGONAL, (l - 1, l))
    n = center(build(st)).group.exponent
    return PairingSpec("standard-mu-n", n, ((1,),))


def cup_pairing(p: PairingSpec, x, y) -> int:
    """Bilinear value of x, y (character-value pairs for D_even, residues otherwise)."""
    if p.kind == "standard-mu-n":
        return (int(x) * int(y)) % p.modulus
    g = p.gram
    return sum(x[i] * g[i][j] * y[j] for i in range(2) for j in range(2)) % 2


GL2_F2 = tuple(
    m for m in (((a, b), (c, d)) for a, b, c, d in product((0, 1), repeat=4))
    if (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % 2
)


def congruent(gram, p) -> tuple[tuple[int, int], tuple[int, int]]:
    """p^T gram p over F_2."""
    return tuple(
        tuple(sum(p[k][i] * gram[k][l] * p[l][j] for k in range(2) for l in range(2)) % 2 for j in range(2))
        for i in range(2)
    )


def classify_f2_form(gram) -> str:
    gram = tuple(tuple(int(x) % 2 for x in row) for row in gram)
    if len(gram) != 2 or any(len(r) != 2 for r in gram):
        raise ValueError("expected a 2x2 matrix")
    if gram[0][1] != gram[1][0]:
        raise ValueError("form is not symmetric")
    if (gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]) % 2 == 0:
        return "degenerate"
    orbit = {congruent(gram, p) for p in GL2_F2}
    if HYPERBOLIC in orbit:
        return "hyperbolic"
    if DIAGONAL in orbit:
        return "metabolic-not-hyperbolic"
    return "other"


# ---------------------------------------------------------------------------
# theorem table


ZERO = "Zero"
SAME = "SameAsTitsClass"


@dataclass(frozen=True)
class TheoremVerdict:
    subgroup: str
    pairing: PairingSpec
    notes: str


def theorem_verdict(family: str, rank: int) -> TheoremVerdict:
    st = SystemType(family, rank)
    p = pairing_for(st)
    if family in "BFG" or (family == "E" and rank == 8):
        trivial = family in "FG" or rank == 8
        note = "trivial center" if trivial else "type B: zero"
        return TheoremVerdict(ZERO, p, note)
    if family == "C":
        if rank % 2 == 0:
            return TheoremVerdict(ZERO, p, "type C, even rank: zero")
        return TheoremVerdict(SAME, p, "type C, odd rank: same subgroup as the Tits class")
    if family == "D" and rank % 2 == 0:
        return TheoremVerdict(SAME, p, f"type D, rank = {rank % 4} mod 4: cup product via {p.kind}")
    return TheoremVerdict(SAME, p, f"type {family}: same subgroup as the Tits class")


# ---------------------------------------------------------------------------
# restriction to G'


@dataclass
class _Symbols:
    """Brauer symbols for weight classes in Lambda / Lambda_r."""

    pres: CenterPresentation
    letter: str
    prefix: str = ""
    names: dict[tuple[int, ...], str] = field(default_factory=dict)
    relations: dict[str, dict[str, int]] = field(default_factory=dict)

    @property
    def cyclic(self) -> bool:
        return len(self.pres.zmaps) == 1

    @property
    def n(self) -> int:
        return self.pres.group.exponent


def _make_symbols(rs: RootSystem, pres: CenterPresentation, gp: GPrimeDecomposition) -> _Symbols:
    comps = gp.components
    if all(c.system_type.rank == 1 for c in comps):
        sym = _Symbols(pres, "Q")
    elif rs.system_type.family == "A":
        sym = _Symbols(pres, "A", "m")
    else:
        sym = _Symbols(pres, "D", "m")
    if sym.cyclic:
        return sym
    # Non-cyclic center: the classes dual to each generator get subscripted
    # names, remaining classes are rewritten through them.
    k = len(pres.zmaps)
    for g in range(k):
        unit = tuple(int(h == g) for h in range(k))
        js = [j for j in range(1, rs.rank + 1) if pres.character(j) == unit]
        if not js:
            raise UnsupportedShape("no fundamental weight is dual to a center generator")
        sym.names[unit] = f"[{sym.letter}_{max(js)}]"
    return sym


def _symbol_terms(sym: _Symbols, char: tuple[int, ...], base_char: tuple[int, ...] | None) -> list[tuple[str, int]]:
    """Brauer combination for the weight class with the given character values."""
    if sym.cyclic:
        (c,), (b,) = char, base_char
        n = sym.n
        if gcd(b, n) != 1:
            raise UnsupportedShape("base weight class does not generate")
        return [(f"{sym.prefix}[{sym.letter}]", c * pow(b, -1, n) % n)]
    if char in sym.names:
        return [(sym.names[char], 1)]
    name = f"[{sym.letter}]" if f"[{sym.letter}]" not in sym.names.values() else f"[{sym.letter}]'"
    sym.names[char] = name
    body = {}
    for g, c in enumerate(char):
        if c:
            unit = tuple(int(h == g) for h in range(len(char)))
            body[sym.names[unit]] = c
    sym.relations[name] = body
    return [(name, 1)]


def _torsor_names(k: int) -> list[str]:
    return ["a"] if k == 1 else [f"a{g}" for g in range(k)]


def _restriction_factor(sliced: tuple[int, ...], comp_exps: tuple[int, ...], n: int) -> int:
    for kappa in range(n):
        if all((kappa * c - s) % n == 0 for s, c in zip(sliced, comp_exps)):
            return kappa
    raise UnsupportedShape("center does not map into the component center by a power")


def _supported(rs: RootSystem, gp: GPrimeDecomposition) -> None:
    for c in gp.components:
        if c.system_type.family != "A":
            raise UnsupportedShape(f"component of type {c.system_type} is not treated")
        if c.system_type.rank > 1 and not (
            rs.system_type == SystemType("E", 6) or c.system_type == rs.system_type
        ):
            raise UnsupportedShape(
                f"{rs.system_type}: component {c.system_type} on {list(c.vertices)} is not treated"
            )


def restriction_composition(idx: TitsIndex) -> FormalCupExpression:
    """sum_i m_i (restriction of a to component i) ⌣ [Q_i], normalized."""
    rs = build(idx.system_type)
    pres = center(rs)
    if pres.group.is_trivial:
        return FormalCupExpression.zero(1)
    if not idx.is_inner:
        raise UnsupportedShape("outer forms are resolved by the theorem table only")
    if not check_condition(idx):
        bad = uncircled_delta_r(idx)
        raise ConditionViolated(f"Delta_r vertices {list(bad)} are not circled", bad)
    gp = g_prime(idx)
    _supported(rs, gp)
    sym = _make_symbols(rs, pres, gp)
    torsors = _torsor_names(len(pres.zmaps))
    base_char = pres.character(gp.components[0].bourbaki_order[0]) if sym.cyclic else None
    terms: list[tuple[Term, int]] = []
    for ci, comp in enumerate(gp.components):
        own = center(build(comp.system_type))
        if len(own.zmaps) != 1:
            raise UnsupportedShape(f"component {comp.system_type} has non-cyclic center")
        own_z = own.zmaps[0]
        brauer = _symbol_terms(sym, pres.character(comp.bourbaki_order[0]), base_char)
        for g, z in enumerate(pres.zmaps):
            if z.order != own_z.order:
                raise UnsupportedShape("center order differs from component center order")
            sliced = tuple(z.exponents[v - 1] for v in comp.bourbaki_order)
            kappa = _restriction_factor(sliced, own_z.exponents, z.order)
            for b, coeff in brauer:
                terms.append(((torsors[g], b), comp.multiplier * kappa * coeff))
    e = FormalCupExpression.build(sym.n, terms, sym.relations)
    return normalize(e)


def tits_cup_expression(idx: TitsIndex) -> FormalCupExpression:
    """Cup product with the Tits class, in the symbols of restriction_composition."""
    rs = build(idx.system_type)
    pres = center(rs)
    if pres.group.is_trivial:
        return FormalCupExpression.zero(1)
    gp = g_prime(idx)
    _supported(rs, gp)
    sym = _make_symbols(rs, pres, gp)
    torsors = _torsor_names(len(pres.zmaps))
    p = pairing_for(rs.system_type)
    terms: list[tuple[Term, int]] = []
    if sym.cyclic:
        base_char = pres.character(gp.components[0].bourbaki_order[0])
        # t_G is the class of the character taking the value zeta on the generator
        for b, c in _symbol_terms(sym, (1,), base_char):
            terms.append(((torsors[0], b.lstrip("m")), c))
    else:
        # chi_p(a) ⌣ chi_q(t_G), summed against the gram matrix
        for pi, jp in enumerate(p.characters):
            for qi, jq in enumerate(p.characters):
                if not p.gram[pi][qi]:
                    continue
                for b, c in _symbol_terms(sym, pres.character(jq), None):
                    for g, val in enumerate(pres.character(jp)):
                        if val:
                            terms.append(((torsors[g], b), val * c))
    return normalize(FormalCupExpression.build(sym.n, terms, sym.relations))


def _substitute_m(e: FormalCupExpression, mu: int) -> FormalCupExpression:
    terms = [((t, b[1:] if b.startswith("m[") else b), c * (mu if b.startswith("m[") else 1)) for (t, b), c in e.terms]
    return normalize(FormalCupExpression.build(e.modulus, terms, e.relations))


def compare_subgroups(e: FormalCupExpression, tits: FormalCupExpression) -> str:
    """ZERO, SAME, or "Other": does e generate the same subgroup as tits?"""
    e = normalize(e)
    if e.is_zero:
        return ZERO
    n = e.modulus
    units = [u for u in range(1, n) if gcd(u, n) == 1] or [0]
    for mu in units:
        em = _substitute_m(e, mu)
        if not any(em.terms == tits.scale(u).terms for u in units):
            return "Other"
    return SAME


@dataclass(frozen=True)
class RostComputation:
    index: TitsIndex
    expression: FormalCupExpression
    tits_expression: FormalCupExpression
    verdict: str
    torsors: tuple[str, ...]

    def class_rendering(self) -> str:
        """t_{R,G} for a cyclic center, else the full expression."""
        if len(self.torsors) == 1:
            return self.expression.brauer_part(self.torsors[0])
        return str(self.expression)


def compute(idx: TitsIndex) -> RostComputation:
    e = restriction_composition(idx)
    t = tits_cup_expression(idx)
    k = len(center(build(idx.system_type)).zmaps)
    return RostComputation(idx, e, t, compare_subgroups(e, t), tuple(_torsor_names(k)) if k else ())
