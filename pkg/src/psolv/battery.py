"""Run every applicable statement check over the built-in catalog.

The battery is what `catalog run` executes and what the acceptance tests
sweep for findings. Output is fully deterministic for a fixed (p, seed):
iteration orders are fixed, random sampling is seeded per group, and no
wall-clock data enters the reports.
"""

from __future__ import annotations

import random

from .catalog import DEFAULT_CATALOG, TOOL_VERSION, Report, build_group
from .errors import CapExceeded, KernelNotElementaryAbelian
from .filtrations import (
    SEARCH_ORDER_LIMITS,
    SearchOutcome,
    check_prop1,
    ekr_pf_candidates,
    pf_embedded_search,
)
from .group import DEFAULT_ENUM_CAP
from .linear import FpMatrix, LinearAction, unipotency_degree
from .series import is_p_solvable, o_p, o_pprime, require_prime, sylow
from .subgroups import DEFAULT_COSET_CAP, normal_subgroups, quotient
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
from .verdicts import Verdict

# gates that keep a full catalog sweep fast; statements are skipped, never
# weakened, when a group is beyond them
LATTICE_GROUP_LIMIT = 200
SEARCH_INSTANCE_CAP = 8
PROP1_INSTANCE_CAP = 12
SAMPLE_PAIRS = 200
LINEAR_GROUP_LIMIT = 500


def _skip(statement, p, G, reason):
    return Verdict(statement, False, None,
                   {"p": p, "group_order": G.order()},
                   notes=(f"skipped: {reason}",), report_only=True)


def _search_starts(normals):
    """Smallest few plus the largest two; ascending, no duplicates."""
    picked = list(normals[:SEARCH_INSTANCE_CAP - 2]) + list(normals[-2:])
    seen = []
    for N in picked:
        if not any(M is N for M in seen):
            seen.append(N)
    return seen


def _chain_key(F):
    return (F.type_ell, tuple(frozenset(N.elements()) for N in F.terms))


def battery_for_group(G, gid: str, p: int, seed: int,
                      cap: int = DEFAULT_ENUM_CAP,
                      coset_cap: int = DEFAULT_COSET_CAP):
    """All statement verdicts for one group at one prime, as Reports."""
    require_prime(p)
    verdicts = [analyze_group(G, p, cap, coset_cap)]
    solvable = is_p_solvable(G, p, cap)
    if not solvable:
        for statement in ("main", "thm6", "hall-higman"):
            verdicts.append(_skip(statement, p, G,
                                  "the group is not p-solvable"))
        return [Report(TOOL_VERSION, gid, v.statement, v.to_payload())
                for v in verdicts]

    verdicts.append(verify_main(G, p, None, cap, coset_cap))
    verdicts.append(verify_thm6(G, p, None, cap, coset_cap))
    verdicts.append(hall_higman_bound(G, p, cap))

    P = sylow(G, p, cap)
    normals_P = None
    if P.order() <= SEARCH_ORDER_LIMITS.get(p, p ** 3):
        try:
            normals_P = normal_subgroups(P, cap=cap)
        except CapExceeded:
            normals_P = None

    # collect verified chains from the canonical candidates and the searches,
    # then re-derive each one's consequences
    found_chains = []

    def remember(F):
        key = _chain_key(F)
        if all(_chain_key(other) != key for other in found_chains):
            found_chains.append(F)

    for F, pf in ekr_pf_candidates(P, p, p - 1, 1, cap):
        if pf.valid:
            remember(F)

    prop3_instances = []
    prop4_instances = []
    if normals_P is not None:
        starts = _search_starts(normals_P)
        if p >= 3:
            for N in starts:
                out = pf_embedded_search(P, p, N, p - 2, cap=cap,
                                         normals=normals_P)
                if out.status == SearchOutcome.FOUND:
                    remember(out.filtration)
                    prop3_instances.append((N, out.filtration))
        for N in starts:
            out = pf_embedded_search(P, p, N, p - 1, cap=cap,
                                     normals=normals_P)
            if out.status == SearchOutcome.FOUND:
                remember(out.filtration)
                prop4_instances.append((N, out.filtration))

    for F in found_chains[:PROP1_INSTANCE_CAP]:
        verdicts.append(check_prop1(F, cap))
    for N, F in prop3_instances:
        verdicts.append(verify_prop3(G, p, N, F, cap, coset_cap))
    for N, F in prop4_instances:
        verdicts.append(verify_prop4(G, p, N, F, cap, coset_cap))

    if G.order() <= LATTICE_GROUP_LIMIT:
        try:
            normals_G = normal_subgroups(G, cap=cap)
        except CapExceeded:
            normals_G = None
        if normals_G is not None:
            if o_pprime(G, p, cap).is_trivial():
                for N in _search_starts(normals_G):
                    for depth in (1, 2):
                        verdicts.append(
                            verify_lemma8(G, p, N, depth, cap, coset_cap))
            for V in _search_starts(normals_G)[:4]:
                for r, l in ((1, 0), (0, 1), (1, 1)):
                    verdicts.append(
                        check_O24_inclusion(G, V, P, p, r, l, cap))

    if G.order() <= LINEAR_GROUP_LIMIT:
        v = _linear_action_verdict(G, gid, p, seed, cap, coset_cap)
        if v is not None:
            verdicts.append(v)

    if normals_P is not None:
        verdicts.extend(question7_scan(G, p, 1, cap=cap, coset_cap=coset_cap,
                                       normals=normals_P))
    else:
        verdicts.append(_skip("question7", p, G,
                              "the Sylow subgroup is too large for the "
                              "exhaustive search"))

    return [Report(TOOL_VERSION, gid, v.statement, v.to_payload())
            for v in verdicts]


def _linear_action_verdict(G, gid, p, seed, cap, coset_cap):
    """Sample-check that conjugation on an elementary abelian p-core is a
    matrix representation: multiplicativity, the commutator identity, and
    unipotency of the Sylow generators' images. These are all proved facts,
    so a failed conclusion means a bug worth reporting loudly."""
    V = o_p(G, p, cap)
    if V.is_trivial():
        return None
    try:
        action = LinearAction(quotient(G, V, coset_cap), p)
    except KernelNotElementaryAbelian:
        return None
    rng = random.Random(f"{seed}:{gid}:{p}:linear")
    els = G.elements(cap)
    kernel_els = V.elements(cap)
    I = FpMatrix.identity(p, action.dimension)
    hom_ok = True
    comm_ok = True
    for _ in range(SAMPLE_PAIRS):
        g = rng.choice(els)
        h = rng.choice(els)
        if action.matrix(g * h) != action.matrix(g) * action.matrix(h):
            hom_ok = False
            break
        v = rng.choice(kernel_els)
        lhs = action.coords(v.commutator(g))
        rhs = (action.matrix(g) - I).row_apply(action.coords(v))
        if lhs != rhs:
            comm_ok = False
            break
    P = sylow(G, p, cap)
    degrees = [unipotency_degree(action.matrix(g)) for g in P.generators]
    unipotent_ok = all(d is not None for d in degrees)
    params = {
        "p": p,
        "dimension": action.dimension,
        "kernel_order": V.order(),
        "sample_pairs": SAMPLE_PAIRS,
        "multiplicative": hom_ok,
        "commutator_identity": comm_ok,
        "sylow_generator_unipotency": degrees,
    }
    return Verdict("linear-action", True, hom_ok and comm_ok and unipotent_ok,
                   params)


def run_catalog(p: int, seed: int, only: str | None = None,
                cap: int = DEFAULT_ENUM_CAP,
                coset_cap: int = DEFAULT_COSET_CAP):
    """Battery over the whole built-in catalog; `only` filters group ids by
    substring."""
    require_prime(p)
    reports = []
    for gid in DEFAULT_CATALOG:
        if only is not None and only not in gid:
            continue
        G = build_group(gid)
        reports.extend(battery_for_group(G, gid, p, seed, cap, coset_cap))
    return reports
