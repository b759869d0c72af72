"""Brute-force reference implementations the tests compare against.

Everything here works on explicit element sets and ignores the library's
stabilizer chains, so a bug in the fast path cannot hide in the oracle.
Only suitable for small groups.
"""

from math import gcd, lcm

from psolv.perm import Permutation, identity


def generated(degree, elems):
    """Full closure of a set of permutations under products."""
    current = {identity(degree)}
    frontier = set(elems)
    while frontier:
        current |= frontier
        nxt = set()
        for a in frontier:
            for b in current:
                for c in (a * b, b * a):
                    if c not in current:
                        nxt.add(c)
        frontier = nxt - current
    return frozenset(current)


def elements_of(G):
    return generated(G.degree, G.generators)


def commutator_set(degree, A, B):
    """Subgroup generated by every commutator [a, b], a in A, b in B."""
    comms = {a.commutator(b) for a in A for b in B}
    return generated(degree, comms)


def power_set(degree, N, q):
    return generated(degree, {n ** q for n in N})


def centralizer_set(G, S):
    return frozenset(g for g in G if all(g * s == s * g for s in S))


def normalizer_set(degree, G, H):
    return frozenset(g for g in G
                     if all(h.conjugate(g) in H for h in H))


def exponent_of(elems):
    e = 1
    for g in elems:
        e = lcm(e, g.order())
    return e


def conjugacy_class_of(G, x):
    return frozenset(x.conjugate(g) for g in G)


def normal_subgroup_sets(G_elems, degree):
    """All normal subgroups, as element sets.

    A normal subgroup is a union of conjugacy classes that happens to be a
    subgroup, so enumerate class unions and keep the ones closed under
    products. Exponential in the class count; fine for the test groups.
    """
    e = identity(degree)
    classes = []
    seen = set()
    for x in sorted(G_elems, key=lambda g: g.images):
        if x in seen or x == e:
            continue
        cls = conjugacy_class_of(G_elems, x)
        classes.append(cls)
        seen |= cls
    n = len(classes)
    order = len(G_elems)
    out = []
    for mask in range(1 << n):
        union = {e}
        for i in range(n):
            if mask >> i & 1:
                union |= classes[i]
        if order % len(union):
            continue
        if all(a * b in union for a in union for b in union):
            out.append(frozenset(union))
    return out


def upper_p_series_sets(G_elems, degree, p):
    """Alternating maximal p'-then-p steps, driven purely by the normal
    subgroup list. Each attempted step is recorded, so a stalled round
    leaves a repeated final pair. Returns (terms, p_length, reaches_top)."""
    normals = normal_subgroup_sets(G_elems, degree)
    total = len(G_elems)
    terms = [frozenset({identity(degree)})]
    plen = 0
    while True:
        grew_round = False
        done = False
        for want_pprime in (True, False):
            K = terms[-1]
            if want_pprime:
                good = [N for N in normals
                        if K <= N and gcd(len(N) // len(K), p) == 1]
            else:
                good = [N for N in normals if K <= N
                        and _is_p_power(len(N) // len(K), p)]
            best = max(good, key=len)
            for N in good:
                assert N <= best, "maximal step is not unique"
            if len(best) > len(K):
                grew_round = True
                if not want_pprime:
                    plen += 1
            terms.append(best)
            if len(best) == total:
                done = True
                break
        if done or not grew_round:
            break
    return terms, plen, len(terms[-1]) == total


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1
