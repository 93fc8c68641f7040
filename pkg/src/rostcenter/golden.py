"""Golden checks: every worked example the library is expected to reproduce.

Each check returns ``(ok, detail)``.  Checks look up ``build`` through this
module so tests can substitute a deliberately broken builder.
"""

from __future__ import annotations

from fractions import Fraction as F
from typing import Callable

from . import center_lattice as center_mod
from . import engine, reduction
from .lattice import IntegerMatrix, lattice_quotient, smith_normal_form, solve_rational
from .root_system import build as _build, delta_c, delta_r, weight_in_root_lattice

build = _build

Check = tuple[str, Callable[[], tuple[bool, str]]]


def _eq(got, want) -> tuple[bool, str]:
    return got == want, f"got {got}, expected {want}"


def _index(text):
    return reduction.TitsIndex.parse(text)


def _rost(text):
    idx = _index(text)
    return engine.compute(idx)


def _zsupports(rs):
    return [z.support for z in center_mod.center(rs).zmaps]


def _d_even_supports(l):
    odd = tuple(range(1, l - 2, 2))
    return [odd + (l,), odd + (l - 1,)]


def _d_weights_tail(l):
    rs = build(f"D{l}")
    return tuple(rs.fundamental_weights[l - 2][-2:])


def checks() -> list[Check]:
    out: list[Check] = [
        ("snf A2 cartan diag (1,3)",
         lambda: _eq(smith_normal_form(build("A2").cartan).diag, (1, 3))),
        ("solve A2 omega_1 = (2/3, 1/3)",
         lambda: _eq(tuple(solve_rational(build("A2").cartan, [1, 0])), (F(2, 3), F(1, 3)))),
        ("solve E7 omega_7 = (1, 3/2, 2, 3, 5/2, 2, 3/2)",
         lambda: _eq(tuple(solve_rational(build("E7").cartan, [0] * 6 + [1])),
                     (1, F(3, 2), 2, 3, F(5, 2), 2, F(3, 2)))),
        ("quotient A2 = Z/3",
         lambda: _eq(lattice_quotient(build("A2").cartan).invariant_factors, (3,))),
        ("quotient D4 = Z/2 + Z/2",
         lambda: _eq(lattice_quotient(build("D4").cartan).invariant_factors, (2, 2))),
        ("E6 omega_1 = (4/3, 1, 5/3, 2, 4/3, 2/3)",
         lambda: _eq(tuple(build("E6").fundamental_weights[0]), (F(4, 3), 1, F(5, 3), 2, F(4, 3), F(2, 3)))),
        ("E7 omega_7 coefficients",
         lambda: _eq(tuple(build("E7").fundamental_weights[6]), (1, F(3, 2), 2, 3, F(5, 2), 2, F(3, 2)))),
        ("E7 omega_7 not in root lattice",
         lambda: _eq(weight_in_root_lattice(build("E7"), 7), False)),
        ("dual(B3) has the C3 Cartan matrix",
         lambda: _eq(build("B3").dual.cartan, build("C3").cartan)),
        ("B3 omega_2 in root lattice",
         lambda: _eq(weight_in_root_lattice(build("B3"), 2), True)),
        ("delta_r(B4) = {1,2,3}", lambda: _eq(sorted(delta_r(build("B4"))), [1, 2, 3])),
        ("delta_r(E7) = {1,3,4,6}", lambda: _eq(sorted(delta_r(build("E7"))), [1, 3, 4, 6])),
        ("delta_r(A5) empty", lambda: _eq(sorted(delta_r(build("A5"))), [])),
        ("E7 zmap support {2,5,7}",
         lambda: _eq(center_mod.zmap(build("E7"), build("E7").fundamental_coweights[6]).support, (2, 5, 7))),
        ("E7 zmap formula",
         lambda: _eq(center_mod.center(build("E7")).zmaps[0].render(), "h_2(-1) h_5(-1) h_7(-1)")),
        ("E6 zmap exponents (1,0,2,0,1,2)",
         lambda: _eq(center_mod.zmap(build("E6"), build("E6").fundamental_coweights[0]).exponents,
                     (1, 0, 2, 0, 1, 2))),
        ("E6 zmap formula",
         lambda: _eq(center_mod.center(build("E6")).zmaps[0].render(), "h_1(z) h_3(z^2) h_5(z) h_6(z^2)")),
        ("A2 zmap exponents (2,1)",
         lambda: _eq(center_mod.zmap(build("A2"), build("A2").fundamental_coweights[0]).exponents, (2, 1))),
        ("C5 zmap support {1,3,5}",
         lambda: _eq(center_mod.zmap(build("C5"), build("C5").fundamental_coweights[4]).support, (1, 3, 5))),
        ("G2 center trivial",
         lambda: _eq((center_mod.center(build("G2")).order, center_mod.center(build("G2")).zmaps), (1, ()))),
        ("E7 center Z/2 supported on {2,5,7}",
         lambda: _eq((center_mod.center(build("E7")).group.invariant_factors, _zsupports(build("E7"))),
                     ((2,), [(2, 5, 7)]))),
        ("vanish criterion B3 circled {1}",
         lambda: _eq(center_mod.vanish_criterion(build("B3"), {1}), True)),
        ("condition E7 circled {1,3,4,6}",
         lambda: _eq(reduction.check_condition(_index("E7 inner circled=1,3,4,6")), True)),
        ("condition B4 circled {4} fails",
         lambda: _eq(reduction.check_condition(_index("B4 inner circled=4")), False)),
        ("E7 G' = A1 x A1 x A1 on 2,5,7 with center -1 -> (-1,-1,-1)",
         lambda: _eq(_gprime_summary("E7 inner circled=1,3,4,6"),
                     ([("A1", (2,)), ("A1", (5,)), ("A1", (7,))], ((1,), (1,), (1,))))),
        ("C5 G' multipliers (2,2,1)",
         lambda: _eq(reduction.g_prime(_index("C5 inner circled=2,4")).multipliers, (2, 2, 1))),
        ("D6 z0 restricts to (1,1,0,1)",
         lambda: _eq(tuple(c[0] for c in reduction.g_prime(_index("D6 inner circled=2,4")).center_restriction[0]),
                     (1, 1, 0, 1))),
        ("Rost multiplier E7 = 1",
         lambda: _eq({reduction.rost_multiplier(build("E7"), i) for i in range(1, 8)}, {1})),
        ("Rost multiplier C5: alpha_1 -> 2, alpha_5 -> 1",
         lambda: _eq((reduction.rost_multiplier(build("C5"), 1), reduction.rost_multiplier(build("C5"), 5)), (2, 1))),
        ("normalize [Q] -> [Q_1] + [Q_2] mod 2",
         lambda: _eq(str(engine.normalize(engine.FormalCupExpression.build(
             2, {("a", "[Q]"): 1}, {"[Q]": {"[Q_1]": 1, "[Q_2]": 1}}))), "a⌣[Q_1] + a⌣[Q_2]")),
        ("normalize 4 a⌣[D] = a⌣[D] mod 3",
         lambda: _eq(str(engine.normalize(engine.FormalCupExpression.build(3, {("a", "[D]"): 4}))), "a⌣[D]")),
        ("E7 reduction gives the Tits class [Q]",
         lambda: _eq(_rost("E7 inner circled=1,3,4,6").class_rendering(), "[Q]")),
        ("C4 reduction is zero", lambda: _eq(str(_rost("C4 inner circled=2,4").expression), "0")),
        ("C5 reduction is a⌣[Q]", lambda: _eq(str(_rost("C5 inner circled=2,4").expression), "a⌣[Q]")),
        ("E6 reduction is a⌣m[D]", lambda: _eq(str(_rost("E6 inner circled=2,4").expression), "a⌣m[D]")),
        ("D_even reduction with the l mod 4 swap, l = 4..12", _check_d_even),
        ("D_l omega_{l-1} ends (l/4, (l-2)/4), l = 4..12",
         lambda: _eq([_d_weights_tail(l) for l in range(4, 13)],
                     [(F(l, 4), F(l - 2, 4)) for l in range(4, 13)])),
        ("D_even zmap supports, l = 4..12",
         lambda: _eq([_zsupports(build(f"D{l}")) for l in range(4, 13, 2)],
                     [_d_even_supports(l) for l in range(4, 13, 2)])),
        ("B_l delta_c = {1}, l = 2..10",
         lambda: _eq({frozenset(delta_c(build(f"B{l}"))) for l in range(2, 11)}, {frozenset({1})})),
        ("three-character form equals the l = 0 mod 4 form", _check_three_characters),
        ("hyperbolic gram classified hyperbolic",
         lambda: _eq(engine.classify_f2_form(engine.HYPERBOLIC), "hyperbolic")),
        ("identity gram classified metabolic-not-hyperbolic",
         lambda: _eq(engine.classify_f2_form(engine.DIAGONAL), "metabolic-not-hyperbolic")),
        ("theorem (E,7) same subgroup", lambda: _eq(engine.theorem_verdict("E", 7).subgroup, engine.SAME)),
        ("theorem (C,6) zero", lambda: _eq(engine.theorem_verdict("C", 6).subgroup, engine.ZERO)),
        ("theorem (G,2) zero", lambda: _eq(engine.theorem_verdict("G", 2).subgroup, engine.ZERO)),
    ]
    return out


def _gprime_summary(text):
    gp = reduction.g_prime(_index(text))
    return [(str(c.system_type), c.vertices) for c in gp.components], gp.center_restriction[0]


def _check_d_even():
    bad = []
    for l in range(4, 13, 2):
        got = str(_rost(f"D{l} inner circled={','.join(map(str, range(2, l - 1, 2)))}").expression)
        if l % 4 == 0:
            want = f"a0⌣[Q_{l - 1}] + a1⌣[Q_{l}]"
        else:
            want = f"a0⌣[Q_{l}] + a1⌣[Q_{l - 1}]"
        if got != want:
            bad.append(f"D{l}: {got} != {want}")
    return not bad, "; ".join(bad) or "ok"


def _check_three_characters():
    p = engine.pairing_for(reduction.SystemType("D", 8))
    bad = []
    for x0 in range(2):
        for x1 in range(2):
            for y0 in range(2):
                for y1 in range(2):
                    x, y = (x0, x1), (y0, y1)
                    # coordinates are (omega_{l-1}, omega_l); omega_1 is their sum
                    three = ((x0 + x1) * (y0 + y1) + x0 * y0 + x1 * y1) % 2
                    if engine.cup_pairing(p, x, y) != three:
                        bad.append((x, y))
    return not bad, f"mismatches {bad}" if bad else "16/16"


def run() -> list[tuple[str, bool, str]]:
    results = []
    for name, fn in checks():
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed report
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))
    return results
