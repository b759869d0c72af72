"""Command line front end.

Exit codes: 0 when every emitted verdict is consistent, 2 when at least one
is a finding (a proved statement failing on a concrete instance), 1 for
usage or input errors. InternalMismatch is never caught here: it means a
bug in this package and should crash loudly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .battery import run_catalog
from .catalog import (
    DEFAULT_CATALOG,
    TOOL_VERSION,
    Report,
    build_group,
    canonical_recipe,
    emit_group,
    emit_report,
    parse_group,
)
from .errors import InternalMismatch, PsolvError, UnsupportedParameters
from .filtrations import (
    DEFAULT_SEARCH_BUDGET,
    Filtration,
    compute_ekr,
    ekr_terms,
    pf_embedded_search,
    verify_potent_filtration,
)
from .group import DEFAULT_ENUM_CAP, PermutationGroup, trivial_group
from .perm import parse_cycles
from .series import lower_central_series, o_p, o_pprime, sylow
from .subgroups import DEFAULT_COSET_CAP, is_subgroup
from .theorems import (
    analyze_group,
    check_O24_inclusion,
    hall_higman_bound,
    question7_scan,
    verify_lemma8,
    verify_main,
    verify_prop3,
    verify_prop4,
    verify_thm6,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for findings here
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_group(args):
    if args.recipe is not None:
        return build_group(args.recipe), canonical_recipe(args.recipe)
    with open(args.file, "r", encoding="utf-8") as fh:
        return parse_group(fh.read()), f"file:{args.file}"


def _gamma_term(P, i, cap):
    if i < 1:
        raise UnsupportedParameters("the series index must be at least 1")
    terms = [g for g in lower_central_series(P).subgroups()
             if not g.is_trivial()]
    return terms[i - 1] if i <= len(terms) else trivial_group(P.degree)


def resolve_subgroup(token: str, G: PermutationGroup, p: int,
                     cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """Named subgroups usable anywhere the CLI takes one.

    trivial, full, V4, sylow, op, opprime, gamma:i, ekr:k:r, and
    gens:<cycles>;<cycles>. gamma and ekr are computed on the Sylow
    p-subgroup; V4 is the Klein group on the first four points and must
    actually lie inside the group.
    """
    t = token.strip()
    if t == "trivial":
        return trivial_group(G.degree)
    if t == "full":
        return G
    if t == "sylow":
        return sylow(G, p, cap)
    if t == "op":
        return o_p(G, p, cap)
    if t == "opprime":
        return o_pprime(G, p, cap)
    if t == "V4":
        if G.degree < 4:
            raise UnsupportedParameters(
                "V4 needs a group on at least 4 points")
        gens = [parse_cycles("(1 2)(3 4)", G.degree),
                parse_cycles("(1 3)(2 4)", G.degree)]
        H = PermutationGroup(G.degree, gens)
        if not is_subgroup(H, G):
            raise UnsupportedParameters(
                "the Klein group on points 1-4 does not lie in this group")
        return H
    if t.startswith("gamma:"):
        return _gamma_term(sylow(G, p, cap), int(t.split(":", 1)[1]), cap)
    if t.startswith("ekr:"):
        parts = t.split(":")
        if len(parts) != 3:
            raise UnsupportedParameters("ekr takes two indices, ekr:k:r")
        return compute_ekr(sylow(G, p, cap), p, int(parts[1]), int(parts[2]),
                           cap)
    if t.startswith("gens:"):
        body = t[len("gens:"):]
        gens = [parse_cycles(part, G.degree)
                for part in body.split(";") if part.strip()]
        if not gens:
            raise UnsupportedParameters("gens: needs at least one cycle "
                                        "expression")
        H = PermutationGroup(G.degree, gens)
        if not is_subgroup(H, G):
            raise UnsupportedParameters(
                "the listed generators do not all lie in this group")
        return H
    raise UnsupportedParameters(f"unknown subgroup token {t!r}")


def _emit_verdicts(args, gid, verdicts):
    reports = [Report(TOOL_VERSION, gid, v.statement, v.to_payload())
               for v in verdicts]
    sys.stdout.write(emit_report(reports, args.format))
    return 2 if any(r.verdict.get("is_finding") for r in reports) else 0


def _emit_object(args, payload, text_lines):
    if args.format == "structured":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")
    return 0


def _cmd_analyze(args):
    G, gid = _load_group(args)
    return _emit_verdicts(args, gid, [
        analyze_group(G, args.p, args.enum_cap, args.coset_cap)])


def _cmd_ekr(args):
    G, gid = _load_group(args)
    P = sylow(G, args.p, args.enum_cap)
    E = compute_ekr(P, args.p, args.k, args.r, args.enum_cap)
    pieces = ekr_terms(P, args.p, args.k, args.r, args.enum_cap)
    payload = {
        "group_id": gid,
        "p": args.p,
        "k": args.k,
        "r": args.r,
        "sylow_order": P.order(),
        "order": E.order(),
        "pieces": [{"i": i, "j": j, "order": S.order()}
                   for i, j, S in pieces],
        "group": json.loads(emit_group(E)),
    }
    lines = [f"{gid} | E_({args.k},{args.r}) of the Sylow {args.p}-subgroup: "
             f"order {E.order()}"]
    for i, j, S in pieces:
        lines.append(f"  term i={i} j={j}: order {S.order()}")
    lines.append(f"  generators: "
                 f"{'; '.join(g.cycle_string() for g in E.generators) or '()'}")
    return _emit_object(args, payload, lines)


def _chain(args, G, p):
    P = sylow(G, p, args.enum_cap)
    terms = tuple(resolve_subgroup(t, G, p, args.enum_cap)
                  for t in args.term)
    return P, terms


def _cmd_pf_verify(args):
    G, gid = _load_group(args)
    P, terms = _chain(args, G, args.p)
    F = Filtration(P, args.p, args.ell, terms)
    v = verify_potent_filtration(F, args.enum_cap)
    payload = {"group_id": gid, "filtration": F.to_payload(),
               "verdict": v.to_payload()}
    if v.valid:
        lines = [f"{gid} | chain of type {args.ell}: valid"]
    else:
        w = v.witness.cycle_string() if v.witness is not None else "-"
        lines = [f"{gid} | chain of type {args.ell}: fails condition "
                 f"{v.failed_condition} at term {v.failed_index}, "
                 f"witness {w}"]
    for n in v.notes:
        lines.append(f"  note: {n}")
    return _emit_object(args, payload, lines)


def _cmd_pf_search(args):
    G, gid = _load_group(args)
    P = sylow(G, args.p, args.enum_cap)
    N = resolve_subgroup(args.normal, G, args.p, args.enum_cap)
    out = pf_embedded_search(P, args.p, N, args.ell, args.search_budget,
                             args.enum_cap)
    payload = {"group_id": gid, "n_order": N.order(), "p": args.p,
               "ell": args.ell, "outcome": out.to_payload()}
    lines = [f"{gid} | start of a type-{args.ell} chain from a subgroup of "
             f"order {N.order()}: {out.status} ({out.nodes} nodes)"]
    if out.filtration is not None:
        lines.append(f"  term orders: {out.filtration.orders()}")
    for n in out.notes:
        lines.append(f"  note: {n}")
    return _emit_object(args, payload, lines)


def _cmd_verify_main(args):
    G, gid = _load_group(args)
    return _emit_verdicts(args, gid, [
        verify_main(G, args.p, args.ell, args.enum_cap, args.coset_cap)])


def _cmd_verify_thm6(args):
    G, gid = _load_group(args)
    return _emit_verdicts(args, gid, [
        verify_thm6(G, args.p, args.ell, args.enum_cap, args.coset_cap)])


def _cmd_verify_prop(args, expected_gap, checker):
    G, gid = _load_group(args)
    P, terms = _chain(args, G, args.p)
    if args.normal is not None:
        N = resolve_subgroup(args.normal, G, args.p, args.enum_cap)
    elif terms:
        N = terms[0]
    else:
        raise UnsupportedParameters("give --normal or at least one --term")
    F = Filtration(P, args.p, args.p - expected_gap, terms)
    return _emit_verdicts(args, gid, [
        checker(G, args.p, N, F, args.enum_cap, args.coset_cap)])


def _cmd_verify_lemma8(args):
    G, gid = _load_group(args)
    N = resolve_subgroup(args.normal, G, args.p, args.enum_cap)
    return _emit_verdicts(args, gid, [
        verify_lemma8(G, args.p, N, args.l, args.enum_cap, args.coset_cap)])


def _cmd_verify_o24(args):
    G, gid = _load_group(args)
    V = resolve_subgroup(args.v, G, args.p, args.enum_cap)
    M = resolve_subgroup(args.m, G, args.p, args.enum_cap)
    return _emit_verdicts(args, gid, [
        check_O24_inclusion(G, V, M, args.p, args.r, args.l, args.enum_cap)])


def _cmd_scan_question7(args):
    G, gid = _load_group(args)
    return _emit_verdicts(args, gid, question7_scan(
        G, args.p, args.ell, args.search_budget, args.enum_cap,
        args.coset_cap))


def _cmd_verify_hall_higman(args):
    G, gid = _load_group(args)
    return _emit_verdicts(args, gid, [
        hall_higman_bound(G, args.p, args.enum_cap)])


def _cmd_catalog_list(args):
    for gid in DEFAULT_CATALOG:
        sys.stdout.write(f"{gid}  order {build_group(gid).order()}\n")
    return 0


def _cmd_catalog_run(args):
    reports = run_catalog(args.p, args.seed, args.only, args.enum_cap,
                          args.coset_cap)
    sys.stdout.write(emit_report(reports, args.format))
    return 2 if any(r.verdict.get("is_finding") for r in reports) else 0


def _env_seed():
    raw = os.environ.get("PSOLV_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _add_common(sub, group_source=True, prime=True):
    if group_source:
        src = sub.add_mutually_exclusive_group(required=True)
        src.add_argument("--recipe", help="catalog recipe, e.g. dihedral:4")
        src.add_argument("--file", help="path to a group JSON document")
    if prime:
        sub.add_argument("--p", type=int, required=True, help="the prime")
    sub.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    sub.add_argument("--coset-cap", type=int, default=DEFAULT_COSET_CAP)
    sub.add_argument("--search-budget", type=int,
                     default=DEFAULT_SEARCH_BUDGET)
    sub.add_argument("--seed", type=int, default=_env_seed())
    sub.add_argument("--format", choices=("text", "structured"),
                     default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="psolv",
                     description="potent filtrations and p-length checks "
                                 "on finite permutation groups")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("analyze", help="profile a group at a prime")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_analyze)

    sub = commands.add_parser("ekr", help="compute the power-of-lower-"
                                          "central product subgroup E_{k,r}")
    _add_common(sub)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.set_defaults(handler=_cmd_ekr)

    pf = commands.add_parser("pf", help="potent filtration operations")
    pf_sub = pf.add_subparsers(dest="pf_command", required=True)
    sub = pf_sub.add_parser("verify", help="check a chain given term by term")
    _add_common(sub)
    sub.add_argument("--ell", type=int, default=1)
    sub.add_argument("--term", action="append", required=True,
                     help="subgroup token; repeat once per chain term")
    sub.set_defaults(handler=_cmd_pf_verify)
    sub = pf_sub.add_parser("search",
                            help="decide whether a subgroup starts a chain")
    _add_common(sub)
    sub.add_argument("--ell", type=int, default=1)
    sub.add_argument("--normal", required=True, help="subgroup token")
    sub.set_defaults(handler=_cmd_pf_search)

    verify = commands.add_parser("verify", help="check a statement")
    verify_sub = verify.add_subparsers(dest="statement", required=True)
    for name, handler in (("main", _cmd_verify_main),
                          ("thm6", _cmd_verify_thm6)):
        sub = verify_sub.add_parser(name)
        _add_common(sub)
        sub.add_argument("--ell", type=int, default=None)
        sub.set_defaults(handler=handler)
    for name, gap in (("prop3", 2), ("prop4", 1)):
        sub = verify_sub.add_parser(name)
        _add_common(sub)
        sub.add_argument("--normal", default=None,
                         help="chain start; defaults to the first --term")
        sub.add_argument("--term", action="append", required=True)
        sub.set_defaults(handler=(lambda a, gap=gap, checker={
            2: verify_prop3, 1: verify_prop4}[gap]:
            _cmd_verify_prop(a, gap, checker)))
    sub = verify_sub.add_parser("lemma8")
    _add_common(sub)
    sub.add_argument("--normal", required=True)
    sub.add_argument("--l", type=int, required=True,
                     help="commutator depth")
    sub.set_defaults(handler=_cmd_verify_lemma8)
    sub = verify_sub.add_parser("o24")
    _add_common(sub)
    sub.add_argument("--v", required=True, help="subgroup token for V")
    sub.add_argument("--m", required=True, help="subgroup token for M")
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--l", type=int, required=True)
    sub.set_defaults(handler=_cmd_verify_o24)
    sub = verify_sub.add_parser("hall-higman")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_verify_hall_higman)

    scan = commands.add_parser("scan", help="sweep a family of instances")
    scan_sub = scan.add_subparsers(dest="scan_command", required=True)
    sub = scan_sub.add_parser("question7")
    _add_common(sub)
    sub.add_argument("--ell", type=int, default=1)
    sub.set_defaults(handler=_cmd_scan_question7)

    catalog = commands.add_parser("catalog", help="built-in group list")
    catalog_sub = catalog.add_subparsers(dest="catalog_command",
                                         required=True)
    sub = catalog_sub.add_parser("list")
    sub.set_defaults(handler=_cmd_catalog_list)
    sub = catalog_sub.add_parser("run", help="run the statement battery")
    _add_common(sub, group_source=False)
    sub.add_argument("--only", default=None,
                     help="only run groups whose id contains this text")
    sub.set_defaults(handler=_cmd_catalog_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InternalMismatch:
        raise
    except PsolvError as e:
        detail = str(e)
        where = getattr(e, "location", None)
        line = getattr(e, "line", None)
        if where:
            detail += f" (at {where})"
        elif line is not None:
            detail += f" (line {line}, column {getattr(e, 'column', '?')})"
        sys.stderr.write(f"psolv: error: {detail}\n")
        return 1
    except OSError as e:
        sys.stderr.write(f"psolv: error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
