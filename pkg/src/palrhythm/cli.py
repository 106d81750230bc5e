"""Command-line interface.

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb

from palrhythm import algebra, ap, core, distance, family, render, tala
from palrhythm.errors import InvalidArgument, RhythmError, SizeLimitError

MAX_PULSES = 100_000


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _pulses(n: int) -> int:
    if n > MAX_PULSES:
        raise SizeLimitError(f"n={n} exceeds the CLI limit of {MAX_PULSES} pulses")
    return n


def _euclid(args) -> core.Rhythm:
    _pulses(args.n)
    return core.bjorklund(args.p, args.n)


def _rhythm_arg(text: str) -> core.Rhythm:
    text = text.strip()
    if text.startswith("{"):
        return core.Rhythm.from_json(json.loads(text))
    _pulses(len(text))
    return core.Rhythm.from_text(text)


def _gaps_arg(text: str) -> core.GapVector:
    if len(text) > MAX_PULSES:
        raise SizeLimitError("gap vector too long")
    g = core.GapVector.parse(text)
    _pulses(g.n)
    return g


def _rhythm_payload(r: core.Rhythm) -> dict:
    return {**r.to_json(), "text": r.to_text(), "gaps": list(core.gap_vector(r).digits)}


# ---------------------------------------------------------------- commands


def cmd_generate(args):
    r = _euclid(args)
    g = core.gap_vector(r)
    return _rhythm_payload(r), f"{r.to_text()}\ngaps {g}"


def cmd_classify(args):
    _pulses(args.n)
    res = family.classify(args.p, args.n)
    if res.is_member and res.member:
        verdict = f"member: {res.member}"
    elif res.is_member:
        verdict = "palindromic, outside the tau1/tau2 patterns"
    else:
        verdict = "not a member"
    extra = f"\nrotated palindrome at offset {res.rotation_offset}" if res.rotated_palindrome else ""
    return res.to_json(), f"E({args.p},{args.n}) gaps {res.digits}: {verdict}{extra}"


def cmd_family(args):
    if args.max_n > 5000:
        raise SizeLimitError("family enumeration is capped at max-n 5000")
    members = family.enumerate_family(args.max_n)
    payload = {"members": [m.to_json() for m in members]}
    text = "\n".join(str(m) for m in members) or "(none)"
    if args.check:
        cx = family.family_counterexamples(args.max_n)
        payload["counterexamples"] = [{"p": p, "n": n, "digits": list(g.digits)} for p, n, g in cx]
        text += f"\n{len(cx)} palindromic E(p,n) outside tau1/tau2"
        for p, n, g in cx[:20]:
            text += f"\n  E({p},{n}) {g}"
    return payload, text


def cmd_analyze(args):
    r = _euclid(args)
    h = distance.histogram(r)
    deep, witness = distance.is_erdos_deep(r)
    winograd = distance.is_almost_winograd_deep(r)
    try:
        bij = distance.deep_bijection(r)
        reason = None
    except distance.NotDeep as exc:
        bij, reason = None, exc.reason
    payload = {
        "rhythm": r.to_json(),
        "histogram": h.to_json(),
        "erdos_deep": deep,
        "witness": {str(m): d for m, d in witness.items()},
        "almost_winograd_deep": winograd,
        "bijection": {str(d): m for d, m in bij.items()} if bij else None,
        "failure": reason,
    }
    lines = [r.to_text(), "histogram " + " ".join(f"{d}:{c}" for d, c in h.counts.items()),
             f"erdos-deep {deep}", f"almost-winograd-deep {winograd}"]
    lines.append(f"bijection {bij}" if bij else f"no bijection: {reason}")
    return payload, "\n".join(lines)


def cmd_homometry(args):
    r = _euclid(args)
    if args.exhaustive:
        if comb(args.n, args.p) > distance.HOMOMETRIC_SUBSET_LIMIT:
            raise SizeLimitError("exhaustive scan too large; drop --exhaustive")
        found = distance.homometric_class(r)
    else:
        found = distance.rotations(r)
    only_rotations = {x.onsets for x in found} == {x.onsets for x in distance.rotations(r)}
    payload = {"rhythms": [x.to_json() for x in found], "count": len(found),
               "exhaustive": args.exhaustive, "rotations_only": only_rotations}
    text = "\n".join(x.to_text() for x in found)
    text += f"\n{len(found)} rhythms" + (" (exhaustive; rotations only)" if args.exhaustive and only_rotations else "")
    return payload, text


def cmd_pump(args):
    with open(args.spec) as fh:
        spec = algebra.PumpSpec.from_json(json.load(fh))
    r1 = _euclid(args)
    r2 = _rhythm_arg(args.other) if args.other else r1
    _pulses(r1.n * spec.m)
    q1, q2 = algebra.pump(r1, r2, spec)
    u = algebra.pump_union(q1, q2)
    payload = {"first": q1.to_json(), "second": q2.to_json(), "union": u.to_json(),
               "homometric": distance.are_homometric(q1, q2)}
    text = f"{q1.to_text()}\n{q2.to_text()}\nunion {u.to_text()} ({u.p} onsets)"
    return payload, text


def cmd_algebra(args):
    op = args.op
    if op in ("add", "sub", "add-aligned", "sub-aligned"):
        g1, g2 = _gaps_arg(args.a), _gaps_arg(args.b)
        if op == "add":
            out = algebra.add_same_p(g1, g2)
        elif op == "sub":
            out = algebra.subtract_same_p(g1, g2)
        else:
            off = algebra.centered_offset(g1, g2) if args.offset is None else args.offset
            fn = algebra.add_aligned if op == "add-aligned" else algebra.subtract_aligned
            out = fn(g1, g2, off)
        return out.to_json(), str(out)
    if op == "concat":
        r = core.concatenate(_rhythm_arg(args.a), _rhythm_arg(args.b))
        return _rhythm_payload(r), r.to_text()
    if op == "complement":
        r = core.complement(_rhythm_arg(args.a))
        return _rhythm_payload(r), r.to_text()
    if op == "break":
        if args.b is None:
            raise InvalidArgument("break needs the onset to split at")
        first, second = core.break_rhythm(_rhythm_arg(args.a), int(args.b))
        return {"first": first.to_json(), "second": second.to_json()}, f"{first.to_text()}\n{second.to_text()}"
    raise InvalidArgument(f"unknown algebra operation {op}")


def _decimal_arg(text: str) -> core.DecimalV:
    if not text.isdigit() or len(text) > 200:
        raise InvalidArgument(f"expected a decimal V-number, got {text!r}")
    return core.decimal_of(core.GapVector(tuple(int(c) for c in text)))


def cmd_ap(args):
    if args.ap_cmd == "matrix":
        if args.rows > 200 or args.cols > 200:
            raise SizeLimitError("matrix display capped at 200 x 200")
        m = ap.solution_matrix(args.rows, args.cols, args.which)
        return {"which": args.which, "matrix": m}, "\n".join(" ".join(f"{x:4d}" for x in row) for row in m)
    if args.ap_cmd == "primes":
        if args.count > 10_000 or args.index > 10**6:
            raise SizeLimitError("prime scan capped at 10000 primes")
        primes = ap.primes_in_line(args.axis, args.index, args.which, args.count)
        return {"primes": primes}, " ".join(map(str, primes))
    if args.ap_cmd == "construct":
        if args.difference > 10**6 or args.count > 50:
            raise SizeLimitError("construction capped at d <= 10^6 and 50 values")
        spec = ap.APSpec(_decimal_arg(args.first), args.difference)
        vals = ap.find_palindromes_in_ap(spec, args.count)
        return {"values": [str(v) for v in vals]}, "\n".join(str(v) for v in vals)
    if args.ap_cmd == "decompose":
        target = _decimal_arg(args.target)
        if target.length > 7:
            raise SizeLimitError("decomposition search is capped at 7-digit targets")
        res = ap.decompose_search(target, ap.standard_dictionary(args.max_p, target.length), args.max_terms)
        if isinstance(res, ap.NotFound):
            flag = "" if res.conditions_met else " (sufficiency conditions unmet)"
            return res.to_json(), f"no decomposition with <= {args.max_terms} terms{flag}"
        lines = [f"{'+' if t.sign > 0 else '-'} {t.digits} x 10^{t.shift}  [{t.label}]" for t in res.terms]
        return {**res.to_json(), "found": True}, "\n".join(lines) + f"\n= {res.target}"
    if args.ap_cmd == "verify":
        with open(args.file) as fh:
            dec = ap.Decomposition.from_json(json.load(fh))
        ok = ap.verify_decomposition(dec)
        return {"valid": ok}, "valid" if ok else "INVALID"
    raise InvalidArgument("unknown ap command")


def cmd_tehai(args):
    specs = tala.builtin_tehais() if args.file == "builtin" else [tala.load_tehai(args.file)]
    rows, lines = [], []
    for t in specs:
        total = tala.total_length(t)
        cycles, on_sam = tala.cycles_to_sam(t)
        row = {"label": t.label, "taal": t.taal.name, "total_length": tala.format_fraction(total),
               "cycles": cycles, "lands_on_sam": on_sam}
        line = f"{t.label or '-'} {t.taal.name}: length {tala.format_fraction(total)}, {cycles} cycles, " + (
            "lands on sam" if on_sam else "misses sam")
        if t.rest_pattern is not None:
            origin = tala.explain_rest_pattern(t.rest_pattern)
            row["rest_pattern"] = list(t.rest_pattern.digits)
            row["origin"] = origin.to_json()
            line += f"; rests {t.rest_pattern} ({origin.relation})"
        rows.append(row)
        lines.append(line)
    return {"tehais": rows}, "\n".join(lines)


def cmd_render(args):
    r = _rhythm_arg(args.rhythm) if args.rhythm else _euclid(args)
    svg = render.render_svg(r, render.RenderSpec(chords=args.chords, label_vertices=not args.no_labels,
                                                  title=f"n={r.n} {r.to_text()}"))
    if args.output == "-":
        return {"svg": svg}, svg.rstrip("\n")
    with open(args.output, "w") as fh:
        fh.write(svg)
    return {"output": args.output, "n": r.n, "onsets": list(r.onsets)}, f"wrote {args.output}"


# ---------------------------------------------------------------- parser


def build_parser() -> Parser:
    parser = Parser(prog="palrhythm", description="Euclidean rhythms with palindromic rests")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", parser_class=Parser)
    sub.required = True

    def pn(sp):
        sp.add_argument("p", type=int)
        sp.add_argument("n", type=int)

    sp = sub.add_parser("generate", help="Euclidean rhythm E(p,n)")
    pn(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("classify", help="palindromic-rest classification of E(p,n)")
    pn(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("family", help="list tau1/tau2 members")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--check", action="store_true", help="compare against the brute-force scan")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("analyze", help="distance histogram and deepness")
    pn(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("homometry", help="rhythms homometric to E(p,n)")
    pn(sp)
    sp.add_argument("--exhaustive", action="store_true")
    sp.set_defaults(func=cmd_homometry)

    sp = sub.add_parser("pump", help="pump E(p,n) with itself or another rhythm")
    sp.add_argument("--spec", required=True, help="PumpSpec JSON file")
    pn(sp)
    sp.add_argument("--other", help="second rhythm (x/. text or JSON); default E(p,n)")
    sp.set_defaults(func=cmd_pump)

    sp = sub.add_parser("algebra", help="gap-vector and rhythm operations")
    sp.add_argument("op", choices=["add", "sub", "add-aligned", "sub-aligned", "concat", "complement", "break"])
    sp.add_argument("a")
    sp.add_argument("b", nargs="?")
    sp.add_argument("--offset", type=int)
    sp.set_defaults(func=cmd_algebra)

    ap_p = sub.add_parser("ap", help="arithmetic progressions")
    ap_sub = ap_p.add_subparsers(dest="ap_cmd", parser_class=Parser)
    ap_sub.required = True
    sp = ap_sub.add_parser("matrix")
    sp.add_argument("--rows", type=int, default=6)
    sp.add_argument("--cols", type=int, default=5)
    sp.add_argument("--which", choices=["n", "p", "k"], default="n")
    sp = ap_sub.add_parser("primes")
    sp.add_argument("axis", choices=["row", "col"])
    sp.add_argument("index", type=int)
    sp.add_argument("--which", choices=["n", "p", "k"], default="n")
    sp.add_argument("--count", type=int, default=5)
    sp = ap_sub.add_parser("construct")
    sp.add_argument("first")
    sp.add_argument("difference", type=int)
    sp.add_argument("--count", type=int, default=3)
    sp = ap_sub.add_parser("decompose")
    sp.add_argument("target")
    sp.add_argument("--max-terms", type=int, default=4)
    sp.add_argument("--max-p", type=int, default=9)
    sp = ap_sub.add_parser("verify")
    sp.add_argument("file")
    ap_p.set_defaults(func=cmd_ap)

    sp = sub.add_parser("tehai", help="tehai arithmetic")
    sp.add_argument("action", choices=["verify"])
    sp.add_argument("file", help="tehai JSON file, or 'builtin' for the bundled set")
    sp.set_defaults(func=cmd_tehai)

    sp = sub.add_parser("render", help="SVG necklace diagram")
    sp.add_argument("p", type=int, nargs="?", default=1)
    sp.add_argument("n", type=int, nargs="?", default=1)
    sp.add_argument("--rhythm", help="x/. text instead of E(p,n)")
    sp.add_argument("-o", "--output", default="-")
    sp.add_argument("--chords", action="store_true")
    sp.add_argument("--no-labels", action="store_true")
    sp.set_defaults(func=cmd_render)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(str(exc))
        return 2
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 2
    try:
        payload, text = args.func(args)
    except (RhythmError, OSError, ValueError, KeyError, TypeError, RecursionError, MemoryError) as exc:
        if args.json:
            stdout.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        stderr.write(f"error: {exc}\n")
        return 1
    if args.json:
        stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        stdout.write(text + "\n")
    return 0


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
