"""Potent filtrations over a finite p-group.

A chain N_1 >= N_2 >= ... >= N_k = 1 of normal subgroups of a p-group P is
a potent filtration of type ell when every step satisfies [N_i, P] <= N_{i+1}
and the ell-fold commutator [N_i, P, ..., P] lands inside N_{i+1}^p. A
subgroup is PF-embedded of type ell when some such chain starts at it.

This module verifies candidate chains, builds the subgroup family
E_{k,r}(P) (products of p-th power subgroups of the lower central terms),
derives canonical candidate chains from it, and decides PF-embeddedness by
exhaustive backtracking over the normal subgroup lattice for tiny P.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CapExceeded,
    InternalMismatch,
    LengthCapExceeded,
    NotNormal,
    PreconditionViolated,
    UnsupportedParameters,
)
from .group import DEFAULT_ENUM_CAP, PermutationGroup, trivial_group
from .perm import Permutation
from .series import check_p_group, exponent, lower_central_series, require_prime
from .subgroups import (
    commutator,
    is_normal,
    is_subgroup,
    iterated_commutator,
    join,
    normal_subgroups,
    power_subgroup,
    same_subgroup,
)
from .verdicts import Verdict

DEFAULT_SEARCH_BUDGET = 50_000
DEFAULT_LENGTH_CAP = 64

# exhaustive normal-subgroup enumeration is only attempted below these
# ambient orders; beyond them the search reports "exhausted" rather than guess
SEARCH_ORDER_LIMITS = {2: 512, 3: 729, 5: 3125}

ELL_ZERO_NOTE = ("type 0 uses the literal reading: the potency condition "
                 "degenerates to N_i <= N_{i+1}^p")


@dataclass(frozen=True)
class Filtration:
    """A candidate potent filtration: ambient p-group, type, ordered terms."""

    ambient: PermutationGroup
    prime: int
    type_ell: int
    terms: tuple

    def orders(self):
        return [N.order() for N in self.terms]

    def to_payload(self):
        return {
            "prime": self.prime,
            "type_ell": self.type_ell,
            "ambient_order": self.ambient.order(),
            "term_orders": self.orders(),
            "terms": [[list(g.images) for g in N.generators] for N in self.terms],
        }


@dataclass(frozen=True)
class PFVerdict:
    """Outcome of chain verification.

    failed_condition is 1 (chain not descending), 2 (last term not trivial),
    3 (commutator step leaves the next term) or 4 (potency step leaves the
    p-th power of the next term); failed_index is the 1-based term the
    failure was detected at, witness a concrete element outside the target.
    """

    valid: bool
    failed_condition: int | None = None
    failed_index: int | None = None
    witness: Permutation | None = None
    notes: tuple = ()

    @property
    def first_failure(self):
        if self.valid:
            return None
        return (self.failed_condition, self.failed_index, self.witness)

    def to_payload(self):
        return {
            "valid": self.valid,
            "failed_condition": self.failed_condition,
            "failed_index": self.failed_index,
            "witness": None if self.witness is None else list(self.witness.images),
            "notes": list(self.notes),
        }


def _first_outside(A: PermutationGroup, B: PermutationGroup):
    # generators suffice: A <= B iff every generator of A lies in B
    for g in A.generators:
        if not B.contains(g):
            return g
    return None


def _validate_filtration_input(F: Filtration):
    require_prime(F.prime)
    check_p_group(F.ambient, F.prime)
    if F.type_ell < 0:
        raise PreconditionViolated("filtration type must be nonnegative")
    if not F.terms:
        raise PreconditionViolated("a filtration needs at least one term")
    for idx, N in enumerate(F.terms, start=1):
        if N.degree != F.ambient.degree or not is_subgroup(N, F.ambient):
            raise PreconditionViolated(
                f"term {idx} is not a subgroup of the ambient group")
        if not is_normal(F.ambient, N):
            raise NotNormal(f"term {idx} is not normal in the ambient group")


def verify_potent_filtration(F: Filtration,
                             cap: int = DEFAULT_ENUM_CAP) -> PFVerdict:
    """Check the four chain conditions in order, stopping at the first failure.

    Terms must already be normal subgroups of the p-group ambient; that is
    an input-shape requirement (NotNormal / PreconditionViolated), not a
    numbered condition.
    """
    _validate_filtration_input(F)
    P = F.ambient
    p = F.prime
    ell = F.type_ell
    terms = F.terms
    k = len(terms)
    notes = (ELL_ZERO_NOTE,) if ell == 0 else ()

    for i in range(1, k):
        if not is_subgroup(terms[i], terms[i - 1]):
            w = _first_outside(terms[i], terms[i - 1])
            return PFVerdict(False, 1, i + 1, w, notes)

    if not terms[-1].is_trivial():
        w = next(g for g in terms[-1].generators if not g.is_identity())
        return PFVerdict(False, 2, k, w, notes)

    for i in range(k - 1):
        step = commutator(terms[i], P)
        w = _first_outside(step, terms[i + 1])
        if w is not None:
            return PFVerdict(False, 3, i + 1, w, notes)

    for i in range(k - 1):
        folded = terms[i] if ell == 0 else iterated_commutator(terms[i], P, ell)
        target = power_subgroup(terms[i + 1], p, cap)
        w = _first_outside(folded, target)
        if w is not None:
            return PFVerdict(False, 4, i + 1, w, notes)

    return PFVerdict(True, notes=notes)


def check_prop1(F: Filtration, cap: int = DEFAULT_ENUM_CAP) -> Verdict:
    """For a verified chain, check the power-commutator identity and both
    derived chains.

    Hypothesis: the given chain verifies. Conclusion: [N_i^p, P] equals
    [N_i, P]^p for every term, and the chains (N_i^p) and ([N_i, P]) verify
    at the same type. All three are proved facts, so any false conclusion
    here is a finding.
    """
    base = verify_potent_filtration(F, cap)
    params = {
        "p": F.prime,
        "type_ell": F.type_ell,
        "term_orders": F.orders(),
    }
    notes = base.notes
    if not base.valid:
        params["input_failure"] = base.to_payload()
        return Verdict("prop1", False, None, params, (),
                       notes + ("input chain does not verify",))

    P = F.ambient
    p = F.prime
    powers = tuple(power_subgroup(N, p, cap) for N in F.terms)
    brackets = tuple(commutator(N, P) for N in F.terms)

    witnesses = []
    identity_ok = True
    for i in range(len(F.terms)):
        lhs = commutator(powers[i], P)
        rhs = power_subgroup(brackets[i], p, cap)
        if not same_subgroup(lhs, rhs):
            identity_ok = False
            witnesses.append((f"power-commutator identity fails at term {i + 1}",
                              {"lhs_order": lhs.order(), "rhs_order": rhs.order()}))

    v_pow = verify_potent_filtration(Filtration(P, p, F.type_ell, powers), cap)
    v_brk = verify_potent_filtration(Filtration(P, p, F.type_ell, brackets), cap)
    if not v_pow.valid:
        witnesses.append(("p-th power chain fails verification", v_pow.to_payload()))
    if not v_brk.valid:
        witnesses.append(("commutator chain fails verification", v_brk.to_payload()))

    params["identity_holds"] = identity_ok
    params["power_chain_valid"] = v_pow.valid
    params["bracket_chain_valid"] = v_brk.valid
    params["power_chain_orders"] = [H.order() for H in powers]
    params["bracket_chain_orders"] = [H.order() for H in brackets]
    conclusion = identity_ok and v_pow.valid and v_brk.valid
    return Verdict("prop1", True, conclusion, params, tuple(witnesses), notes)


def _p_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _ekr_pieces(P: PermutationGroup, p: int, k: int, r: int, cap: int):
    require_prime(p)
    check_p_group(P, p)
    if r < 1:
        raise UnsupportedParameters("the lower index r must be at least 1")
    if k < 0:
        raise UnsupportedParameters("the threshold k must be nonnegative")
    gammas = lower_central_series(P).subgroups()
    nontrivial = [g for g in gammas if not g.is_trivial()]
    c = len(nontrivial)
    e = _p_valuation(exponent(P, cap), p)

    # For fixed i only the least admissible j matters: raising j by one maps
    # each generator x^(p^j) to its p-th power, so the subgroups shrink.
    pieces = []
    E = trivial_group(P.degree)
    for i in range(r, c + 2):
        gamma_i = nontrivial[i - 1] if i <= c else trivial_group(P.degree)
        if gamma_i.is_trivial():
            continue
        need = k - i
        j = 0 if need <= 0 else -(-need // (p - 1))
        if j > e:
            continue
        piece = power_subgroup(gamma_i, p ** j, cap)
        if piece.is_trivial():
            continue
        pieces.append((i, j, piece))
        E = join(E, piece)
    return E, pieces


def compute_ekr(P: PermutationGroup, p: int, k: int, r: int,
                cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """E_{k,r}(P): the product of gamma_i(P)^(p^j) over i >= r, j >= 0 with
    i + j(p-1) >= k.

    The index set is truncated to i <= class+1 and j <= log_p(exponent);
    every term beyond is trivial or contained in a kept one. The result is
    normal in P (a join of power subgroups of characteristic subgroups).
    """
    E, _ = _ekr_pieces(P, p, k, r, cap)
    return E


def ekr_terms(P: PermutationGroup, p: int, k: int, r: int,
              cap: int = DEFAULT_ENUM_CAP):
    """The nontrivial qualifying pieces (i, j, gamma_i(P)^(p^j)) actually
    joined by compute_ekr, for audit output."""
    _, pieces = _ekr_pieces(P, p, k, r, cap)
    return pieces


def _descend(first, step, length_cap):
    """Build a weakly descending chain from `first` via `step(i)` for
    i = 2, 3, ..., skipping repeats, until a trivial term is appended."""
    terms = [first]
    i = 2
    while not terms[-1].is_trivial():
        if i > length_cap + 1:
            raise LengthCapExceeded(
                f"candidate chain exceeded {length_cap} construction steps")
        nxt = step(i, terms[-1])
        if not same_subgroup(nxt, terms[-1]):
            terms.append(nxt)
        i += 1
    return tuple(terms)


def ekr_pf_candidates(P: PermutationGroup, p: int, k: int, r: int,
                      cap: int = DEFAULT_ENUM_CAP,
                      length_cap: int = DEFAULT_LENGTH_CAP):
    """Three candidate type-(p-1) chains starting at E_{k,r}(P), each
    verified.

    In order: (a) shift both indices, N_i = E_{k+i-1, r+i-1}; (b) shift only
    the threshold, N_i = E_{k+i-1, r}; (c) repeated commutator steps,
    N_{i+1} = [N_i, P]. No single construction is singled out as canonical;
    callers record which, if any, verifies. Consecutive repeats are skipped
    (dropping a duplicate term only weakens the chain conditions) and each
    chain is truncated at its first trivial term.
    """
    E = compute_ekr(P, p, k, r, cap)
    ell = p - 1

    def shifted_both(i, _prev):
        return compute_ekr(P, p, k + i - 1, r + i - 1, cap)

    def shifted_threshold(i, _prev):
        return compute_ekr(P, p, k + i - 1, r, cap)

    def bracket_step(_i, prev):
        return commutator(prev, P)

    out = []
    for step in (shifted_both, shifted_threshold, bracket_step):
        F = Filtration(P, p, ell, _descend(E, step, length_cap))
        out.append((F, verify_potent_filtration(F, cap)))
    return out


@dataclass(frozen=True)
class SearchOutcome:
    """Result of pf_embedded_search: found / not_pf_embedded / exhausted."""

    status: str
    filtration: Filtration | None = None
    nodes: int = 0
    notes: tuple = ()

    FOUND = "found"
    NOT_PF_EMBEDDED = "not_pf_embedded"
    EXHAUSTED = "exhausted"

    def to_payload(self):
        return {
            "status": self.status,
            "nodes": self.nodes,
            "notes": list(self.notes),
            "filtration": None if self.filtration is None
            else self.filtration.to_payload(),
        }


class _BudgetHit(Exception):
    pass


def pf_embedded_search(P: PermutationGroup, p: int, N: PermutationGroup,
                       ell: int, budget: int = DEFAULT_SEARCH_BUDGET,
                       cap: int = DEFAULT_ENUM_CAP,
                       normals=None) -> SearchOutcome:
    """Decide whether N starts a type-ell potent filtration of P.

    Exact backtracking over strictly descending chains of normal subgroups;
    repeating a term never helps, so strict descent loses nothing. The
    normal subgroup lattice is enumerated exhaustively, which is only
    attempted for tiny ambient orders (512 / 729 / 3125 for p = 2 / 3 / 5,
    p^3 otherwise); larger P, an enumeration overflow, or running out of
    node budget all report "exhausted" rather than guessing.
    "not_pf_embedded" is only returned after the full space is searched.

    A precomputed `normals` list (from normal_subgroups(P)) skips the order
    limit and the enumeration; batch callers share one lattice this way.
    """
    require_prime(p)
    check_p_group(P, p)
    if ell < 0:
        raise PreconditionViolated("filtration type must be nonnegative")
    notes = [ELL_ZERO_NOTE] if ell == 0 else []
    if N.degree != P.degree or not is_subgroup(N, P) or not is_normal(P, N):
        raise PreconditionViolated(
            "the starting subgroup must be normal in the ambient group")

    if N.is_trivial():
        F = Filtration(P, p, ell, (N,))
        return SearchOutcome(SearchOutcome.FOUND, F, 0, tuple(notes))

    if normals is None:
        limit = SEARCH_ORDER_LIMITS.get(p, p ** 3)
        if P.order() > limit:
            notes.append(f"ambient order {P.order()} is above the exhaustive "
                         f"enumeration limit {limit}")
            return SearchOutcome(SearchOutcome.EXHAUSTED, None, 0, tuple(notes))
        try:
            normals = normal_subgroups(P, cap=cap)
        except CapExceeded:
            notes.append("normal subgroup enumeration overflowed its cap")
            return SearchOutcome(SearchOutcome.EXHAUSTED, None, 0, tuple(notes))

    sets = [frozenset(H.elements(cap)) for H in normals]
    by_set = {s: i for i, s in enumerate(sets)}
    start = by_set.get(frozenset(N.elements(cap)))
    if start is None:
        raise InternalMismatch("a normal subgroup is missing from the lattice "
                               "enumeration")

    bracket_cache: dict[int, frozenset] = {}
    folded_cache: dict[int, frozenset] = {}
    power_cache: dict[int, frozenset] = {}

    def bracket(i):
        if i not in bracket_cache:
            bracket_cache[i] = frozenset(commutator(normals[i], P).elements(cap))
        return bracket_cache[i]

    def folded(i):
        if i not in folded_cache:
            if ell == 0:
                folded_cache[i] = sets[i]
            else:
                folded_cache[i] = frozenset(
                    iterated_commutator(normals[i], P, ell).elements(cap))
        return folded_cache[i]

    def power(i):
        if i not in power_cache:
            power_cache[i] = frozenset(power_subgroup(normals[i], p, cap).elements(cap))
        return power_cache[i]

    nodes = 0
    memo: dict[int, list | None] = {}

    def extend(x):
        nonlocal nodes
        if x in memo:
            return memo[x]
        nodes += 1
        if nodes > budget:
            raise _BudgetHit
        if len(sets[x]) == 1:
            memo[x] = [x]
            return memo[x]
        memo[x] = None
        # normals come sorted ascending by order, so candidates are tried
        # smallest first; the lattice is tiny, completeness comes from memo
        for m in range(len(normals)):
            if sets[m] >= sets[x]:
                continue
            if not (sets[m] <= sets[x] and bracket(x) <= sets[m]
                    and folded(x) <= power(m)):
                continue
            tail = extend(m)
            if tail is not None:
                memo[x] = [x] + tail
                return memo[x]
        return None

    try:
        chain = extend(start)
    except _BudgetHit:
        notes.append(f"search budget of {budget} nodes hit")
        return SearchOutcome(SearchOutcome.EXHAUSTED, None, nodes, tuple(notes))

    if chain is None:
        return SearchOutcome(SearchOutcome.NOT_PF_EMBEDDED, None, nodes,
                             tuple(notes))

    F = Filtration(P, p, ell, tuple(normals[i] for i in chain))
    if not verify_potent_filtration(F, cap).valid:
        raise InternalMismatch("search returned a chain its own verifier rejects")
    return SearchOutcome(SearchOutcome.FOUND, F, nodes, tuple(notes))
