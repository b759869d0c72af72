"""Characteristic series, Sylow subgroups, cores and the upper p-series.

The p-core is computed by two independent routes and cross-checked; a
disagreement raises InternalMismatch and is always a bug here, never a
mathematical finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InternalMismatch, NotAPGroup, NotPSolvable, UnsupportedParameters
from .group import DEFAULT_ENUM_CAP, PermutationGroup, span, trivial_group
from .perm import Permutation
from .subgroups import (
    DEFAULT_COSET_CAP,
    commutator,
    conjugacy_classes,
    conjugate_subgroup,
    intersect,
    is_normal,
    is_subgroup,
    join,
    normal_closure,
    normalizer,
    power_subgroup,
    preimage,
    quotient,
    same_subgroup,
)


@dataclass(frozen=True)
class SeriesReport:
    """A labeled subgroup series.

    kind is one of "lower_central", "derived", "upper_p". For upper_p the
    labels after the leading "1" alternate "p'", "p", and p_length counts
    the strictly growing p-labeled steps; the top term equals the whole
    group exactly when is_p_solvable.
    """

    kind: str
    terms: tuple  # of (label, PermutationGroup)
    prime: int | None = None
    p_length: int | None = None
    is_p_solvable: bool | None = None

    def subgroups(self):
        return [t for _, t in self.terms]

    def orders(self):
        return [t.order() for _, t in self.terms]


def _descending_series(G, step, label_fmt):
    # shared truncation convention: stop at the first repeat; the repeated
    # term is kept when nontrivial (visible stabilization) and dropped when
    # trivial (the series simply ends at 1)
    terms = [(label_fmt(1), G)]
    current = G
    i = 1
    while True:
        nxt = step(current)
        i += 1
        if same_subgroup(nxt, current):
            if not nxt.is_trivial():
                terms.append((label_fmt(i), nxt))
            break
        terms.append((label_fmt(i), nxt))
        if nxt.is_trivial():
            break
        current = nxt
    return terms


def lower_central_series(G: PermutationGroup) -> SeriesReport:
    """gamma_1 = G, gamma_{i+1} = [gamma_i, G], truncated at the first repeat."""
    terms = _descending_series(G, lambda H: commutator(H, G), lambda i: f"gamma_{i}")
    return SeriesReport(kind="lower_central", terms=tuple(terms))


def derived_series(G: PermutationGroup) -> SeriesReport:
    terms = _descending_series(G, lambda H: commutator(H, H), lambda i: f"derived_{i - 1}")
    return SeriesReport(kind="derived", terms=tuple(terms))


def nilpotency_class(G: PermutationGroup) -> int | None:
    """Class of a nilpotent group, None when the series stalls above 1."""
    rep = lower_central_series(G)
    subs = rep.subgroups()
    if not subs[-1].is_trivial():
        return None
    return len(subs) - 1 if len(subs) > 1 else 0


def exponent(G: PermutationGroup, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Least common multiple of the element orders."""
    classes = conjugacy_classes(G, cap)
    return math.lcm(*(cls[0].order() for cls in classes))


def _prime_power(n: int):
    # returns (p, k) when n == p**k with k >= 1, else None
    if n < 2:
        return None
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            break
        p += 1
    else:
        p = m
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def require_prime(p: int):
    if not is_prime(p):
        raise UnsupportedParameters(f"p must be a prime, got {p}")


def is_p_group(G: PermutationGroup, p: int) -> bool:
    n = G.order()
    if n == 1:
        return True
    pk = _prime_power(n)
    return pk is not None and pk[0] == p


def check_p_group(G: PermutationGroup, p: int):
    if not is_p_group(G, p):
        raise NotAPGroup(f"group of order {G.order()} is not a {p}-group")


def frattini_p(P: PermutationGroup, cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """Frattini subgroup of a p-group: P^p * [P, P]."""
    n = P.order()
    if n == 1:
        return P
    pk = _prime_power(n)
    if pk is None:
        raise NotAPGroup(f"order {n} is not a prime power")
    p = pk[0]
    return join(power_subgroup(P, p, cap), commutator(P, P))


def _p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def element_p_part(x: Permutation, p: int) -> Permutation:
    """The p-part of an element: x^m where m is the p'-part of its order."""
    o = x.order()
    return x ** (o // _p_part(o, p))


def sylow(G: PermutationGroup, p: int, cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """A Sylow p-subgroup, grown through normalizers.

    A p-subgroup S below full size always has a p-element of N_G(S)
    outside S (any x with x^p in S is one), so each scan of the
    normalizer extends S and the loop is deterministic with no restarts.
    """
    require_prime(p)
    target = _p_part(G.order(), p)
    if target == 1:
        return trivial_group(G.degree)
    seed = None
    for x in G.elements(cap):
        y = element_p_part(x, p)
        if not y.is_identity():
            seed = y
            break
    S = span(G.degree, [seed])
    while S.order() < target:
        N = normalizer(G, S, cap)
        for x in N.elements(cap):
            y = element_p_part(x, p)
            if not y.is_identity() and not S.contains(y):
                S = span(G.degree, list(S.generators) + [y])
                break
        else:
            raise InternalMismatch("sylow growth stalled below full p-part")
    return S


def _core_by_class_closures(G, p, want_p_group, cap):
    # join of <x>^G over class representatives x of the right order type
    # whose normal closure has the right order type; conjugate elements
    # give the same closure, so one representative per class suffices
    K = trivial_group(G.degree)
    for cls in conjugacy_classes(G, cap):
        x = cls[0]
        if x.is_identity() or K.contains(x):
            continue
        o = x.order()
        if want_p_group != (o == _p_part(o, p)):
            continue
        closure = normal_closure(G, span(G.degree, [x]))
        n = closure.order()
        part = _p_part(n, p)
        ok = (n == part) if want_p_group else (part == 1)
        if ok:
            K = join(K, closure)
    return K


def _sylow_conjugates_intersection(G, p, cap):
    P = sylow(G, p, cap)
    if P.is_trivial():
        return P
    K = P
    seen = {frozenset(x.images for x in P.elements(cap))}
    queue = [P]
    while queue:
        H = queue.pop()
        for g in G.generators:
            C = conjugate_subgroup(H, g)
            key = frozenset(x.images for x in C.elements(cap))
            if key not in seen:
                seen.add(key)
                queue.append(C)
                K = intersect(K, C, cap)
    return K


def o_p(G: PermutationGroup, p: int, cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """Largest normal p-subgroup, computed two ways and cross-checked.

    Route one intersects all conjugates of a Sylow p-subgroup; route two
    joins the normal closures of p-elements whose closure is a p-group.
    Disagreement raises InternalMismatch.
    """
    require_prime(p)
    by_intersection = _sylow_conjugates_intersection(G, p, cap)
    by_closures = _core_by_class_closures(G, p, want_p_group=True, cap=cap)
    if not same_subgroup(by_intersection, by_closures):
        raise InternalMismatch(
            f"p-core routes disagree: orders {by_intersection.order()} vs {by_closures.order()}")
    return by_closures


def o_pprime(G: PermutationGroup, p: int, cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """Largest normal p'-subgroup: join of closures of coprime-order elements
    whose normal closure has order coprime to p."""
    require_prime(p)
    return _core_by_class_closures(G, p, want_p_group=False, cap=cap)


def upper_p_series(G: PermutationGroup, p: int,
                   cap: int = DEFAULT_ENUM_CAP,
                   coset_cap: int = DEFAULT_COSET_CAP) -> SeriesReport:
    """Alternating p'-core / p-core series built through quotients.

    Starts at 1, pulls each quotient core back along the projection, and
    stops when the whole group is reached (p-solvable) or a full p'/p
    round makes no progress (not p-solvable; legal input, not an error).
    """
    require_prime(p)
    terms = [("1", trivial_group(G.degree))]
    current = terms[0][1]
    p_steps_grown = 0
    solvable = None
    whole = G.order()

    def lift(kind):
        # core of G/current, pulled back to G; the first step needs no quotient
        if current.order() == 1:
            return (o_pprime if kind == "p'" else o_p)(G, p, cap)
        Q = quotient(G, current, coset_cap)
        U = (o_pprime if kind == "p'" else o_p)(Q.image, p, cap)
        return preimage(Q, U)

    while True:
        grew_round = False
        for kind in ("p'", "p"):
            nxt = lift(kind)
            grew = nxt.order() > current.order()
            grew_round = grew_round or grew
            if kind == "p" and grew:
                p_steps_grown += 1
            terms.append((kind, nxt))
            current = nxt
            if current.order() == whole:
                solvable = True
                break
        if solvable is not None:
            break
        if not grew_round:
            solvable = False
            break
    return SeriesReport(kind="upper_p", terms=tuple(terms), prime=p,
                        p_length=p_steps_grown, is_p_solvable=solvable)


def is_p_solvable(G: PermutationGroup, p: int, cap: int = DEFAULT_ENUM_CAP) -> bool:
    return upper_p_series(G, p, cap).is_p_solvable


def p_length(G: PermutationGroup, p: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Number of p-steps in the upper p-series. Raises NotPSolvable when
    the series stalls below G, since the count would be meaningless."""
    rep = upper_p_series(G, p, cap)
    if not rep.is_p_solvable:
        raise NotPSolvable(f"group is not {p}-solvable")
    return rep.p_length


def o_pprime_p(G: PermutationGroup, p: int, cap: int = DEFAULT_ENUM_CAP,
               coset_cap: int = DEFAULT_COSET_CAP) -> PermutationGroup:
    """The second upper-series term: preimage of the p-core of G / O_p'(G)."""
    T1 = o_pprime(G, p, cap)
    if T1.order() == 1:
        return o_p(G, p, cap)
    Q = quotient(G, T1, coset_cap)
    return preimage(Q, o_p(Q.image, p, cap))
