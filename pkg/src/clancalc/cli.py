"""Command-line interface: ``clan-calc <command> ...``.

Exit status is 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import bpd as B
from . import clans as C
from . import geometry as G
from .permutations import all_permutations, parse_permutation
from .polynomials import localize
from .schubert import double_schubert, upsilon, upsilon_localization

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    max_n: int = 5
    jobs: int = 1
    output: str = "text"

    def __post_init__(self):
        if self.max_n < 2:
            raise UsageError(f"--max-n must be at least 2, got {self.max_n}")
        if self.jobs < 1:
            raise UsageError(f"--jobs must be at least 1, got {self.jobs}")


def _clan(text: str) -> C.Clan:
    try:
        return C.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _perm(text: str, n: int | None = None):
    try:
        w = parse_permutation(text)
    except ValueError as exc:
        raise UsageError(f"bad permutation {text!r}: {exc}") from None
    if n is not None and w.n != n:
        raise UsageError(f"permutation {text!r} is not in S_{n}")
    return w


def _dump(obj, out):
    out.write(json.dumps(obj, ensure_ascii=False) + "\n")


# --- clan -------------------------------------------------------------------

def clan_info(c: C.Clan) -> dict:
    u, v = C.uv_perms(c)
    shape = C.young_diagram(c)
    return {
        "clan": C.format(c),
        "p": c.p,
        "q": c.q,
        "arcs": [list(a) for a in c.arcs],
        "u": list(u.word),
        "v": list(v.word),
        "lambda": list(shape.rows),
        "complement": [list(cell) for cell in shape.complement()],
        "length": c.length,
        "matchless": c.is_matchless,
        "noncrossing": c.is_noncrossing,
        "rainbow": c == C.rainbow(c.p, c.q),
    }


def cmd_clan(args, out):
    if args.clan_cmd == "info":
        _dump(clan_info(_clan(args.notation)), out)
    else:
        if args.p < 1 or args.q < 1:
            raise UsageError("--p and --q must be positive")
        clans = C.enumerate_clans(args.p, args.q)
        if args.json:
            _dump([C.format(c) for c in clans], out)
        else:
            for c in clans:
                out.write(C.format(c) + "\n")
    return EXIT_OK


# --- bpd --------------------------------------------------------------------

def _fragments(c, oracle):
    try:
        return B.enumerate_oracle(c) if oracle else B.enumerate(c)
    except B.OracleTooLarge as exc:
        raise UsageError(str(exc)) from None


def cmd_bpd(args, out):
    c = _clan(args.notation)
    frags = _fragments(c, args.oracle)
    if args.bpd_cmd == "count":
        out.write(f"{len(frags)}\n")
    elif args.json:
        shape = C.young_diagram(c)
        _dump({"clan": C.format(c), "shape": {"p": c.p, "q": c.q, "rows": list(shape.rows)},
               "fragments": [f.to_json() for f in frags]}, out)
    else:
        out.write("\n\n".join(B.render(f) for f in frags) + "\n")
    return EXIT_OK


# --- polynomials -------------------------------------------------------------

def _emit_poly(poly, args, out):
    if getattr(args, "json", False):
        _dump(poly.to_json(), out)
    else:
        out.write(poly.to_text() + "\n")


def cmd_poly(args, out):
    if args.poly_cmd == "schubert":
        poly = double_schubert(_perm(args.target))
    elif args.poly_cmd == "upsilon":
        poly = upsilon(_clan(args.target))
    else:
        poly = B.clan_polynomial(_clan(args.target))
    _emit_poly(poly, args, out)
    return EXIT_OK


def cmd_localize(args, out):
    c = _clan(args.notation)
    w = _perm(args.perm, c.n)
    if args.method == "full":
        poly = localize(upsilon(c), w)
    else:
        poly = upsilon_localization(c, w)
    _emit_poly(poly, args, out)
    return EXIT_OK


def cmd_expand(args, out):
    c = _clan(args.notation)
    route = {"rule": G.theorem_b_coeffs, "interpolation": G.theorem_b_interpolation,
             "localization": G.theorem_b_localization}[args.route]
    _dump({"clan": C.format(c), "n": c.n, "terms": route(c).to_json()}, out)
    return EXIT_OK


def cmd_smooth(args, out):
    _dump(G.smoothness_report(_clan(args.notation)).to_json(), out)
    return EXIT_OK


# --- order -------------------------------------------------------------------

def strong_covers(clans) -> set[tuple[C.Clan, C.Clan]]:
    below = {t: {g for g in clans if g != t and C.strong_leq(g, t)} for t in clans}
    covers = set()
    for t, lower in below.items():
        for g in lower:
            if not any(g in below[h] for h in lower):
                covers.add((g, t))
    return covers


def hasse_dot(p: int, q: int, strong: bool) -> str:
    clans = C.enumerate_clans(p, q)
    index = {c: k for k, c in enumerate(clans)}
    weak = {}
    for c in clans:
        for i, d in C.weak_covers(c):
            weak.setdefault((c, d), []).append(i)
    lines = [f'digraph "clans_{p}_{q}" {{', "  rankdir=BT;"]
    for c in clans:
        lines.append(f'  n{index[c]} [label="{C.format(c)}"];')
    edges = []
    for (c, d), labels in weak.items():
        edges.append((index[c], index[d], f'[label="{",".join(map(str, sorted(labels)))}"]'))
    if strong:
        for c, d in strong_covers(clans):
            if (c, d) not in weak:
                edges.append((index[c], index[d], "[style=dashed]"))
    for a, b, attr in sorted(edges):
        lines.append(f"  n{a} -> n{b} {attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_order(args, out):
    if args.p < 1 or args.q < 1:
        raise UsageError("--p and --q must be positive")
    out.write(hasse_dot(args.p, args.q, strong=args.strong))
    return EXIT_OK


# --- verification --------------------------------------------------------------

def sweep_clans(max_n: int, min_n: int = 2):
    for n in range(min_n, max_n + 1):
        for p in range(1, n):
            yield from C.enumerate_clans(p, n - p)


def verify_one(theorem: str, notation: str, all_v: bool = False) -> dict:
    c = C.parse(notation)
    rec = {"theorem": theorem, "clan": notation}
    if theorem == "A":
        ok = G.theorem_a_check(c, method="full" if c.n <= 6 else "recursive").equal
    elif theorem == "B":
        rule = G.theorem_b_coeffs(c)
        ok = rule == G.theorem_b_interpolation(c) == G.theorem_b_localization(c)
        ok = ok and all(val in (0, 1) for val in rule.specialize_y_zero().values())
    elif theorem == "C":
        if not c.is_noncrossing:
            rec["skipped"] = "crossing"
            return rec
        perms = [v for v in all_permutations(c.n) if all_v or v.length <= 4]
        failed = [str(v) for v in perms if not G.theorem_c_check(c, v).equal]
        rec["checked_v"] = len(perms)
        ok = not failed
        if failed:
            rec["failed_v"] = failed
    else:
        report = G.smoothness_report(c)
        rec.update(report.to_json())
        ok = report.consistent
    rec["pass"] = ok
    return rec


def _verify_task(args):
    return verify_one(*args)


def run_verify(theorem: str, cfg: Config, out, all_v: bool = False) -> int:
    tasks = [(theorem, C.format(c), all_v) for c in sweep_clans(cfg.max_n)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_verify_task, tasks, chunksize=8))
    else:
        results = [_verify_task(t) for t in tasks]
    failed = checked = 0
    for rec in results:
        _dump(rec, out)
        if "pass" in rec:
            checked += 1
            failed += not rec["pass"]
    status = "all clans pass" if not failed else f"{failed} clans fail"
    _dump({"summary": status, "theorem": theorem, "max_n": cfg.max_n,
           "checked": checked, "failed": failed}, out)
    return EXIT_OK if not failed else EXIT_FAIL


def _jobs(args) -> int:
    env = os.environ.get("CLAN_CALC_JOBS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CLAN_CALC_JOBS must be an integer, got {env!r}") from None
    return args.jobs


def cmd_verify(args, out):
    cfg = Config(max_n=args.max_n, jobs=_jobs(args), output="json")
    return run_verify(args.theorem, cfg, out, all_v=args.all_v)


# --- appendix ------------------------------------------------------------------

def export_appendix_table() -> str:
    rows = []
    for c in C.enumerate_clans(2, 2):
        _, v = C.uv_perms(c)
        loc = localize(upsilon(c), v)
        rows.append("\t".join([C.format(c), ",".join(map(str, v.word)), loc.to_text(),
                               str(len(B.enumerate(c)))]))
    return "\n".join(rows) + "\n"


def cmd_appendix(args, out):
    out.write(export_appendix_table())
    return EXIT_OK


# --- parser ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clan-calc", description="Exact computations with (p,q)-clans.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    clan = sub.add_parser("clan", help="clan queries")
    clan_sub = clan.add_subparsers(dest="clan_cmd", required=True, parser_class=_Parser)
    info = clan_sub.add_parser("info")
    info.add_argument("notation")
    lst = clan_sub.add_parser("list")
    lst.add_argument("--p", type=int, required=True)
    lst.add_argument("--q", type=int, required=True)
    lst.add_argument("--json", action="store_true")
    clan.set_defaults(func=cmd_clan)

    bp = sub.add_parser("bpd", help="BPD fragments of a clan")
    bp_sub = bp.add_subparsers(dest="bpd_cmd", required=True, parser_class=_Parser)
    for name in ("list", "count"):
        sp = bp_sub.add_parser(name)
        sp.add_argument("notation")
        sp.add_argument("--oracle", action="store_true", help="use the brute-force tiling search")
        if name == "list":
            fmt = sp.add_mutually_exclusive_group()
            fmt.add_argument("--render", action="store_true")
            fmt.add_argument("--json", action="store_true")
    bp.set_defaults(func=cmd_bpd)

    poly = sub.add_parser("poly", help="polynomials")
    poly_sub = poly.add_subparsers(dest="poly_cmd", required=True, parser_class=_Parser)
    for name, meta in (("schubert", "perm"), ("upsilon", "notation"), ("clanpoly", "notation")):
        sp = poly_sub.add_parser(name)
        sp.add_argument("target", metavar=meta)
        sp.add_argument("--json", action="store_true")
    poly.set_defaults(func=cmd_poly)

    loc = sub.add_parser("localize", help="Upsilon of a clan at a fixed point")
    loc.add_argument("notation")
    loc.add_argument("perm")
    loc.add_argument("--method", choices=("full", "recursive"), default="full")
    loc.add_argument("--json", action="store_true")
    loc.set_defaults(func=cmd_localize)

    ex = sub.add_parser("expand", help="Schubert expansion of Upsilon")
    ex.add_argument("notation")
    ex.add_argument("--route", choices=("rule", "interpolation", "localization"),
                    default="interpolation")
    ex.set_defaults(func=cmd_expand)

    sm = sub.add_parser("smooth", help="smoothness report at v_gamma")
    sm.add_argument("notation")
    sm.set_defaults(func=cmd_smooth)

    order = sub.add_parser("order", help="poset exports")
    order_sub = order.add_subparsers(dest="order_cmd", required=True, parser_class=_Parser)
    hasse = order_sub.add_parser("hasse")
    hasse.add_argument("--p", type=int, required=True)
    hasse.add_argument("--q", type=int, required=True)
    kind = hasse.add_mutually_exclusive_group(required=True)
    kind.add_argument("--weak", action="store_true")
    kind.add_argument("--strong", action="store_true")
    order.set_defaults(func=cmd_order)

    ver = sub.add_parser("verify", help="exhaustive checks")
    ver.add_argument("theorem", choices=("A", "B", "C", "D"))
    ver.add_argument("--max-n", type=int, default=5)
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--all-v", action="store_true", help="C only: every v in S_n")
    ver.set_defaults(func=cmd_verify)

    app = sub.add_parser("appendix", help="table of all (2,2)-clans")
    app.set_defaults(func=cmd_appendix)
    return parser


def run(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"clan-calc: error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
