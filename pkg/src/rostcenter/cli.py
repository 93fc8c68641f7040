"""Command-line front end.

    rostcenter info E7
    rostcenter rost "E7 inner circled=1,3,4,6"
    rostcenter zmap E6 1
    rostcenter gprime "D6 inner circled=2,4"
    rostcenter classify-form 0110
    rostcenter verify

Every command prints a report with the keys command, inputs, payload and
status.  ``--format json`` prints the same report as JSON.  Exit codes:
0 success, 1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import center_lattice as center_mod
from . import engine, golden, reduction
from .root_system import InvalidRank, SystemType, build, delta_c, delta_r

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class InputError(ValueError):
    pass


def _frac_list(vec) -> list[str]:
    return [str(c) for c in vec]


def _parse_type(text: str) -> SystemType:
    try:
        return SystemType.parse(text)
    except InvalidRank as exc:
        raise InputError(str(exc)) from None


def _parse_index(text: str) -> reduction.TitsIndex:
    try:
        return reduction.TitsIndex.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _center_payload(rs) -> dict:
    pres = center_mod.center(rs)
    gens = []
    for z, src in zip(pres.zmaps, pres.source_weights):
        gens.append({
            "coweight": src,
            "order": z.order,
            "exponents": list(z.exponents),
            "formula": z.render(),
        })
    return {
        "invariant_factors": list(pres.group.invariant_factors),
        "order": pres.order,
        "generators": gens,
    }


def cmd_info(type_string: str) -> dict:
    st = _parse_type(type_string)
    rs = build(st)
    return {
        "type": str(st),
        "rank": rs.rank,
        "cartan": rs.cartan.tolist(),
        "root_count": len(rs.roots),
        "positive_root_count": len(rs.positive_roots),
        "highest_root": list(rs.highest_root.coords),
        "fundamental_weights": [_frac_list(w) for w in rs.fundamental_weights],
        "delta_r": sorted(delta_r(rs)),
        "delta_c": sorted(delta_c(rs)),
        "center": _center_payload(rs),
    }


def cmd_zmap(type_string: str, weight_index: str) -> dict:
    st = _parse_type(type_string)
    rs = build(st)
    try:
        j = int(weight_index)
    except ValueError:
        raise InputError(f"weight index must be an integer, got {weight_index!r}") from None
    if not 1 <= j <= rs.rank:
        raise InputError(f"weight index {j} out of range 1..{rs.rank}")
    w = rs.fundamental_coweights[j - 1]
    z = center_mod.zmap(rs, w)
    return {
        "type": str(st),
        "coweight": j,
        "coroot_coordinates": _frac_list(w),
        "order": z.order,
        "exponents": list(z.exponents),
        "formula": z.render(),
    }


def _gprime_payload(gp: reduction.GPrimeDecomposition) -> dict:
    return {
        "components": [
            {
                "type": str(c.system_type),
                "vertices": list(c.vertices),
                "bourbaki_order": list(c.bourbaki_order),
                "multiplier": c.multiplier,
            }
            for c in gp.components
        ],
        "center_restriction": [
            [list(part) for part in per_gen] for per_gen in gp.center_restriction
        ],
    }


def _condition_error(idx) -> InputError:
    bad = reduction.uncircled_delta_r(idx)
    err = InputError(f"condition fails: Delta_r vertices {list(bad)} are not circled")
    err.uncircled = bad
    return err


def cmd_gprime(index_string: str) -> dict:
    idx = _parse_index(index_string)
    if not reduction.check_condition(idx):
        raise _condition_error(idx)
    return {"index": str(idx), **_gprime_payload(reduction.g_prime(idx))}


def cmd_rost(index_string: str) -> dict:
    idx = _parse_index(index_string)
    st = idx.system_type
    rs = build(st)
    table = engine.theorem_verdict(st.family, st.rank)
    cond = reduction.check_condition(idx)
    payload: dict[str, Any] = {
        "index": str(idx),
        "delta_r": sorted(delta_r(rs)),
        "delta_c": sorted(delta_c(rs)),
        "condition": cond,
        "vanish_criterion": center_mod.vanish_criterion(rs, idx.circled) if idx.is_inner else None,
        "theorem": {"subgroup": table.subgroup, "notes": table.notes},
        "pairing": table.pairing.as_dict(),
    }
    trivial = center_mod.center(rs).group.is_trivial
    if trivial:
        payload.update(verdict=engine.ZERO, via="trivial center")
    elif cond:
        payload["g_prime"] = _gprime_payload(reduction.g_prime(idx))
        try:
            comp = engine.compute(idx)
        except engine.UnsupportedShape as exc:
            payload.update(verdict=table.subgroup, via=f"theorem table ({exc})")
        else:
            payload.update(
                expression=str(comp.expression),
                rost_class=comp.class_rendering(),
                tits_expression=str(comp.tits_expression),
                verdict=comp.verdict,
                via="reduction to G'",
            )
    elif idx.is_inner and payload["vanish_criterion"]:
        payload.update(verdict=engine.ZERO, via="vanish criterion")
    elif not idx.is_inner:
        payload.update(verdict=table.subgroup, via="theorem table (outer form)")
    else:
        raise _condition_error(idx)
    payload["consistent_with_theorem"] = payload["verdict"] == table.subgroup
    return payload


def cmd_classify_form(bits: str) -> dict:
    bits = bits.strip()
    if len(bits) != 4 or set(bits) - {"0", "1"}:
        raise InputError(f"expected 4 bits (row-major 2x2 gram), got {bits!r}")
    gram = ((int(bits[0]), int(bits[1])), (int(bits[2]), int(bits[3])))
    try:
        kind = engine.classify_f2_form(gram)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {"gram": [list(r) for r in gram], "class": kind}


def cmd_verify() -> dict:
    results = golden.run()
    return {
        "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in results],
        "passed": sum(ok for _, ok, _ in results),
        "failed": sum(not ok for _, ok, _ in results),
    }


# ---------------------------------------------------------------------------
# rendering


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for k, v in report["inputs"].items():
        lines.append(f"input {k}: {v}")
    status = report["status"]
    lines.append("status: " + (status if isinstance(status, str) else f"error: {status['error']}"))
    payload = report.get("payload")
    if report["command"] == "verify" and payload:
        for c in payload["checks"]:
            lines.append(f"{'PASS' if c['ok'] else 'FAIL'}  {c['name']}" + ("" if c["ok"] else f"  ({c['detail']})"))
        lines.append(f"passed {payload['passed']}, failed {payload['failed']}")
    elif payload:
        _render_value(payload, 0, lines)
    return "\n".join(lines) + "\n"


def _is_scalar_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _render_value(obj, depth, lines):
    pad = "  " * depth
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, dict) or (isinstance(v, list) and not _is_scalar_list(v)):
                lines.append(f"{pad}{k}:")
                _render_value(v, depth + 1, lines)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                _render_value(item, depth + 1, lines)
            else:
                lines.append(f"{pad}{_scalar(item)}")


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rostcenter", description="Lie-lattice computations for the Rost invariant on the center.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("info", help="root system, Delta_r, Delta_c and center")
    p.add_argument("type")
    p = sub.add_parser("rost", help="reduce the Rost invariant on the center for a Tits index")
    p.add_argument("index", nargs="+")
    p = sub.add_parser("zmap", help="cocharacter map of a fundamental coweight")
    p.add_argument("type")
    p.add_argument("weight_index")
    p = sub.add_parser("gprime", help="components of G' with Rost multipliers")
    p.add_argument("index", nargs="+")
    p = sub.add_parser("classify-form", help="classify a symmetric 2x2 form over F_2")
    p.add_argument("bits")
    sub.add_parser("verify", help="replay every golden example")
    return ap


def _sniff_format(argv: list[str]) -> str:
    # known before parsing so that argument errors honour the requested format
    if "--format=json" in argv:
        return "json"
    if "--format" in argv and argv[argv.index("--format") + 1:][:1] == ["json"]:
        return "json"
    return "text"


def run(argv: list[str] | None = None) -> tuple[dict, int]:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = _sniff_format(argv)
    report: dict[str, Any] = {"command": None, "inputs": {}, "payload": None, "status": "ok", "format": fmt}
    code = EXIT_OK
    try:
        args = make_parser().parse_args(argv)
        report["format"] = args.format
        report["command"] = args.command
        if args.command == "info":
            report["inputs"] = {"type": args.type}
            report["payload"] = cmd_info(args.type)
        elif args.command == "zmap":
            report["inputs"] = {"type": args.type, "weight_index": args.weight_index}
            report["payload"] = cmd_zmap(args.type, args.weight_index)
        elif args.command in ("rost", "gprime"):
            text = " ".join(args.index)
            report["inputs"] = {"index": text}
            report["payload"] = (cmd_rost if args.command == "rost" else cmd_gprime)(text)
        elif args.command == "classify-form":
            report["inputs"] = {"bits": args.bits}
            report["payload"] = cmd_classify_form(args.bits)
        elif args.command == "verify":
            report["payload"] = cmd_verify()
            if report["payload"]["failed"]:
                report["status"] = {"error": f"{report['payload']['failed']} check(s) failed"}
                code = EXIT_VERIFY
    except (InputError, ValueError) as exc:
        status = {"error": str(exc)}
        if getattr(exc, "uncircled", None):
            status["uncircled"] = list(exc.uncircled)
        report["status"] = status
        code = EXIT_INPUT
    return report, code


def format_report(report: dict) -> str:
    fmt = report.get("format", "text")
    body = {k: report[k] for k in ("command", "inputs", "payload", "status")}
    if fmt == "json":
        return json.dumps(body, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    return render_text(body)


def main(argv: list[str] | None = None) -> int:
    report, code = run(argv)
    sys.stdout.write(format_report(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
