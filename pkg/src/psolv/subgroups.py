"""Subgroup lattice operations, quotients and preimages.

All functions operate on PermutationGroup instances of equal degree; a
subgroup is just a group on the same points whose generators sift through
the ambient chain. Equality of subgroups always means equal order plus
mutual generator membership, never equal generator lists.
"""

from __future__ import annotations

from collections import deque

from .errors import CapExceeded, DegreeMismatch, InternalMismatch, NotNormal
from .group import DEFAULT_ENUM_CAP, PermutationGroup, span, trivial_group
from .perm import Permutation, identity

DEFAULT_COSET_CAP = 100_000


def _check_degrees(*groups):
    degrees = {G.degree for G in groups}
    if len(degrees) != 1:
        raise DegreeMismatch(f"groups act on different point sets: degrees {sorted(degrees)}")


def is_subgroup(A: PermutationGroup, B: PermutationGroup) -> bool:
    """True when A <= B."""
    _check_degrees(A, B)
    return all(B.contains(g) for g in A.generators)


def same_subgroup(A: PermutationGroup, B: PermutationGroup) -> bool:
    """Equality as subgroups: equal order and containment."""
    _check_degrees(A, B)
    return A.order() == B.order() and is_subgroup(A, B)


def is_normal(G: PermutationGroup, N: PermutationGroup) -> bool:
    """True when N <= G and conjugation by every generator of G fixes N."""
    if not is_subgroup(N, G):
        return False
    return all(N.contains(n.conjugate(g)) for g in G.generators for n in N.generators)


def conjugate_subgroup(H: PermutationGroup, g: Permutation) -> PermutationGroup:
    """H^g = g^-1 H g."""
    if g.degree != H.degree:
        raise DegreeMismatch("conjugating element has the wrong degree")
    return PermutationGroup(H.degree, tuple(h.conjugate(g) for h in H.generators))


def join(A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    """Smallest subgroup containing A and B."""
    _check_degrees(A, B)
    gens = []
    for g in A.generators + B.generators:
        if not g.is_identity() and g not in gens:
            gens.append(g)
    return PermutationGroup(A.degree, gens)


def normal_closure(G: PermutationGroup, S: PermutationGroup) -> PermutationGroup:
    """Smallest subgroup of G containing S and normal in G.

    Conjugates of the working generators by the generators of G are added
    until nothing new appears; at the fixpoint the result is closed under
    conjugation by all of G.
    """
    _check_degrees(G, S)
    gens = [g for g in S.generators if not g.is_identity()]
    K = PermutationGroup(G.degree, gens)
    queue = deque(gens)
    while queue:
        x = queue.popleft()
        for g in G.generators:
            y = x.conjugate(g)
            if not K.contains(y):
                gens.append(y)
                K = PermutationGroup(G.degree, gens)
                queue.append(y)
    return K


def commutator(A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    """[A, B]: the normal closure in <A, B> of the generator commutators."""
    _check_degrees(A, B)
    J = join(A, B)
    seeds = span(A.degree, (a.commutator(b) for a in A.generators for b in B.generators))
    return normal_closure(J, seeds)


def iterated_commutator(N: PermutationGroup, M: PermutationGroup, k: int) -> PermutationGroup:
    """[N, M, M, ..., M] with k copies of M. k must be positive.

    The fold stops early once a step repeats, which cannot change the value.
    """
    if k < 1:
        raise ValueError("iterated commutator needs at least one step")
    _check_degrees(N, M)
    current = N
    for _ in range(k):
        nxt = commutator(current, M)
        if same_subgroup(nxt, current):
            return nxt
        current = nxt
    return current


def power_subgroup(N: PermutationGroup, q: int, cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """N^q = <n^q for every element n of N>.

    The full element set is enumerated: powers of the generators alone
    generate the wrong subgroup in general.
    """
    if q < 1:
        raise ValueError("exponent must be positive")
    if q == 1:
        return N
    return span(N.degree, (x ** q for x in N.elements(cap)))


def normalizer(G: PermutationGroup, H: PermutationGroup,
               cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """N_G(H) by scanning every element of G."""
    _check_degrees(G, H)
    hgens = H.generators
    keep = [g for g in G.elements(cap)
            if all(H.contains(h.conjugate(g)) for h in hgens)]
    return span(G.degree, keep)


def centralizer(G: PermutationGroup, S: PermutationGroup,
                cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """C_G(S) by scanning every element of G."""
    _check_degrees(G, S)
    sgens = S.generators
    keep = [g for g in G.elements(cap)
            if all((s * g) == (g * s) for s in sgens)]
    return span(G.degree, keep)


def intersect(A: PermutationGroup, B: PermutationGroup,
              cap: int = DEFAULT_ENUM_CAP) -> PermutationGroup:
    """A intersected with B, enumerating the smaller of the two."""
    _check_degrees(A, B)
    small, other = (A, B) if A.order() <= B.order() else (B, A)
    return span(A.degree, (x for x in small.elements(cap) if other.contains(x)))


class QuotientGroup:
    """G/N presented as a faithful permutation action on the right cosets of N.

    Cosets are keyed by a canonical representative computed from N's
    stabilizer chain, so coset indexing is deterministic. Coset 0 is N.
    """

    __slots__ = ("base", "kernel", "image", "_reps", "_index")

    def __init__(self, base, kernel, image, reps, index):
        self.base = base
        self.kernel = kernel
        self.image = image
        self._reps = reps
        self._index = index

    @property
    def index(self) -> int:
        return len(self._reps)

    def coset_representatives(self) -> tuple[Permutation, ...]:
        return self._reps

    def project(self, x: Permutation) -> Permutation:
        """Image of a base-group element in the coset action."""
        if not self.base.contains(x):
            raise ValueError("element is not in the base group")
        images = tuple(self._index[_canonical_rep(self.kernel, r * x).images]
                       for r in self._reps)
        return Permutation(images)

    def section(self, y: Permutation) -> Permutation:
        """A base-group preimage of an image element; project(section(y)) == y."""
        if not self.image.contains(y):
            raise ValueError("element is not in the quotient image")
        return self._reps[y.images[0]]


def _canonical_rep(N: PermutationGroup, x: Permutation) -> Permutation:
    """Canonical representative of the coset N*x.

    At each level of N's chain the transversal point with the smallest
    image under the running product is chosen; images are distinct, so
    the choice is unique and the result depends only on the coset.
    """
    chain = N.chain
    for lv in chain.levels:
        best = min(lv.transversal, key=lambda d: x.images[d])
        x = lv.transversal[best] * x
    return x


def quotient(G: PermutationGroup, N: PermutationGroup,
             coset_cap: int = DEFAULT_COSET_CAP) -> QuotientGroup:
    """G/N via the right-coset action. N must be normal in G."""
    _check_degrees(G, N)
    if not is_normal(G, N):
        raise NotNormal("kernel is not a normal subgroup of the base group")
    m = G.order() // N.order()
    if m > coset_cap:
        raise CapExceeded(f"index {m} exceeds coset cap {coset_cap}", cap=coset_cap)

    start = _canonical_rep(N, identity(G.degree))
    reps = [start]
    index = {start.images: 0}
    queue = deque([start])
    while queue:
        r = queue.popleft()
        for g in G.generators:
            c = _canonical_rep(N, r * g)
            if c.images not in index:
                index[c.images] = len(reps)
                reps.append(c)
                queue.append(c)
    if len(reps) != m:
        raise InternalMismatch(
            f"coset count {len(reps)} disagrees with index {m}")

    imgs = []
    for g in G.generators:
        imgs.append(Permutation(tuple(index[_canonical_rep(N, r * g).images] for r in reps)))
    image = PermutationGroup(m, imgs) if m > 1 else trivial_group(1)
    if image.order() != m:
        raise InternalMismatch(
            f"coset action order {image.order()} disagrees with index {m}")
    return QuotientGroup(G, N, image, tuple(reps), index)


def preimage(Q: QuotientGroup, S: PermutationGroup) -> PermutationGroup:
    """Full preimage in the base group of a subgroup S of Q.image."""
    if S.degree != Q.image.degree:
        raise DegreeMismatch("subgroup does not live in the quotient image")
    if not is_subgroup(S, Q.image):
        raise ValueError("subgroup is not contained in the quotient image")
    gens = list(Q.kernel.generators) + [Q.section(s) for s in S.generators]
    return PermutationGroup(Q.base.degree, gens)


def conjugacy_classes(G: PermutationGroup, cap: int = DEFAULT_ENUM_CAP):
    """Conjugacy classes as lists, each headed by its first element in
    enumeration order. Deterministic for a fixed chain."""
    els = G.elements(cap)
    seen = set()
    classes = []
    for x in els:
        if x in seen:
            continue
        cls = [x]
        seen.add(x)
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in G.generators:
                z = y.conjugate(g)
                if z not in seen:
                    seen.add(z)
                    cls.append(z)
                    queue.append(z)
        classes.append(cls)
    return classes


def normal_subgroups(G: PermutationGroup, limit: int = 20_000,
                     cap: int = DEFAULT_ENUM_CAP) -> list[PermutationGroup]:
    """Every normal subgroup of G, by closing unions of conjugacy classes.

    Each normal subgroup is generated by the classes it contains, so
    growing known subgroups one class at a time reaches all of them.
    Intended for small groups; raises CapExceeded past `limit` subgroups.
    """
    classes = conjugacy_classes(G, cap)
    class_data = [(cls[0], cls) for cls in classes if not cls[0].is_identity()]

    triv = trivial_group(G.degree)
    found = {frozenset((identity(G.degree),)): triv}
    queue = deque([triv])
    while queue:
        K = queue.popleft()
        kgens = list(K.generators)
        for rep, cls in class_data:
            if K.contains(rep):
                continue
            K2 = span(G.degree, kgens + cls)
            key = frozenset(x.images for x in K2.elements(cap))
            if key not in found:
                if len(found) >= limit:
                    raise CapExceeded(
                        f"more than {limit} normal subgroups", cap=limit)
                found[key] = K2
                queue.append(K2)
    out = sorted(found.values(), key=lambda H: (H.order(), sorted(x.images for x in H.elements(cap))))
    return out
