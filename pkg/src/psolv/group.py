"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain.

The chain stores explicit transversals. No randomized variants are used:
base points, orbit traversal and generator processing all follow fixed
deterministic orders, so two runs over the same generators produce the
same chain, the same enumeration order and the same sampling.
"""

from __future__ import annotations

import random
from collections import deque

from .errors import CapExceeded, DegreeMismatch
from .perm import Permutation, identity

DEFAULT_ENUM_CAP = 200_000


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point):
        self.point = point
        self.gens = []  # strong generators first moving this base point
        self.transversal = {}  # orbit point -> u with u[base point] == point


class StabilizerChain:
    """Stabilizer chain with explicit transversals.

    Level i holds base point b_i; the group at level i is generated by all
    strong generators assigned to levels >= i (those fixing b_0..b_{i-1}).
    """

    __slots__ = ("degree", "levels")

    def __init__(self, degree, generators):
        self.degree = degree
        self.levels = []
        e = identity(degree)
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch("generator degree differs from group degree")
            residue, j = self._strip(g, 0)
            if not residue.is_identity():
                self._add_generator(j, residue)
        self._close(e)

    def _gens_at(self, i):
        out = []
        for lv in self.levels[i:]:
            out.extend(lv.gens)
        return out

    def _rebuild_orbit(self, i):
        lv = self.levels[i]
        gens = self._gens_at(i)
        lv.transversal = {lv.point: identity(self.degree)}
        queue = deque([lv.point])
        while queue:
            a = queue.popleft()
            t = lv.transversal[a]
            for s in gens:
                b = s.images[a]
                if b not in lv.transversal:
                    lv.transversal[b] = t * s
                    queue.append(b)

    def _add_generator(self, j, h):
        if j == len(self.levels):
            self.levels.append(_Level(h.min_moved()))
        self.levels[j].gens.append(h)
        for i in range(j + 1):
            self._rebuild_orbit(i)

    def _strip(self, g, start):
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            beta = g.images[lv.point]
            t = lv.transversal.get(beta)
            if t is None:
                return g, i
            g = g * t.inverse()
        return g, len(self.levels)

    def _close(self, e):
        # verify the Schreier condition level by level, deepest first;
        # a failed residue becomes a new strong generator and verification
        # resumes from its level
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            gens = self._gens_at(i)
            restart = False
            for beta in sorted(lv.transversal):
                u = lv.transversal[beta]
                for s in gens:
                    target = lv.transversal[s.images[beta]]
                    schreier = u * s * target.inverse()
                    if schreier.is_identity():
                        continue
                    residue, j = self._strip(schreier, i + 1)
                    if not residue.is_identity():
                        self._add_generator(j, residue)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def contains(self, g) -> bool:
        residue, _ = self._strip(g, 0)
        return residue.is_identity()

    def iter_elements(self):
        """Every element exactly once, in a fixed order determined by the chain."""

        def rec(i):
            if i == len(self.levels):
                yield identity(self.degree)
                return
            lv = self.levels[i]
            for beta in sorted(lv.transversal):
                t = lv.transversal[beta]
                for h in rec(i + 1):
                    yield h * t

        return rec(0)

    def random_element(self, rng) -> Permutation:
        g = identity(self.degree)
        for lv in reversed(self.levels):
            beta = rng.choice(sorted(lv.transversal))
            g = g * lv.transversal[beta]
        return g


class PermutationGroup:
    """A group of permutations of {0, ..., n-1}, given by generators.

    Instances are immutable by convention: every operation returns a new
    group, and the stabilizer chain is built lazily exactly once, so
    concurrent readers are safe.
    """

    __slots__ = ("degree", "generators", "_chain", "_elements")

    def __init__(self, degree, generators=()):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        generators = tuple(generators)
        for g in generators:
            if not isinstance(g, Permutation):
                raise TypeError(f"generator is not a Permutation: {g!r}")
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator degree {g.degree} differs from group degree {degree}"
                )
        self.degree = degree
        self.generators = generators
        self._chain = None
        self._elements = None

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.generators)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return self.order() == 1

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(
                f"element degree {g.degree} differs from group degree {self.degree}"
            )
        return self.chain.contains(g)

    def elements(self, cap: int = DEFAULT_ENUM_CAP) -> list[Permutation]:
        """All elements in deterministic chain order.

        Raises CapExceeded before enumerating anything when order() > cap.
        """
        n = self.order()
        if n > cap:
            raise CapExceeded(f"group order {n} exceeds enumeration cap {cap}", cap=cap)
        if self._elements is None:
            self._elements = list(self.chain.iter_elements())
        return self._elements

    def random_element(self, seed) -> Permutation:
        """Uniformly random element; identical seed gives identical output."""
        return self.chain.random_element(random.Random(seed))

    def __repr__(self):
        gens = ", ".join(g.cycle_string() for g in self.generators[:4])
        more = ", ..." if len(self.generators) > 4 else ""
        return f"PermutationGroup(degree={self.degree}, gens=[{gens}{more}])"


def build_chain(G: PermutationGroup) -> PermutationGroup:
    """Force the stabilizer chain to exist. Idempotent."""
    G.chain
    return G


def trivial_group(degree: int) -> PermutationGroup:
    return PermutationGroup(degree, ())


def random_element(G: PermutationGroup, seed) -> Permutation:
    return G.random_element(seed)


def span(degree: int, elements) -> PermutationGroup:
    """Group generated by the given elements, with a reduced generator list.

    Elements are taken in sorted image order and kept only when they add
    something, so the result is deterministic and its generator count stays
    logarithmic in the group order.
    """
    gens = []
    G = PermutationGroup(degree, ())
    for x in sorted(set(elements), key=lambda p: p.images):
        if x.is_identity():
            continue
        if not G.contains(x):
            gens.append(x)
            G = PermutationGroup(degree, gens)
    return G
