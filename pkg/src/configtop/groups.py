"""Finite permutation groups on {1..n} and their actions on partitions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import is_prime
from .errors import DomainError, SizeLimitError
from .partitions import Partition, PartitionLattice

DEFAULT_MAX_ORDER = 100_000


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}; images[i-1] is the image of i.

    Composition is function composition: (f * g)(x) = f(g(x)).

    >>> f = Permutation.from_cycles(4, [(1, 2), (3, 4)])
    >>> (f * f).is_identity()
    True
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images!r}")

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def from_cycles(n: int, cycles) -> Permutation:
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)((cyc[0],))):
                images[a - 1] = b
        return Permutation(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[other.images[x - 1] - 1] for x in range(1, self.n + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, each starting at its least element."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return tuple(out)

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)

    def sign(self) -> int:
        return (-1) ** sum(len(c) - 1 for c in self.cycles())

    def order(self) -> int:
        k = 1
        g = self
        while not g.is_identity():
            g = g * self
            k += 1
        return k

    def act_on_partition(self, p: Partition) -> Partition:
        return p.relabel(self.images)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group of permutations of {1..n}, elements listed sorted."""

    n: int
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in set(self.elements)

    def __iter__(self):
        return iter(self.elements)


def group_from_generators(
    n: int, generators, max_order: int = DEFAULT_MAX_ORDER
) -> FiniteGroup:
    """Close a generating set under composition (breadth-first).

    >>> group_from_generators(3, [Permutation.from_cycles(3, [(1, 2, 3)])]).order
    3
    """
    gens = list(generators)
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator degree {g.n} != {n}")
    seen = {Permutation.identity(n)}
    frontier = [Permutation.identity(n)]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                prod = g * h
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > max_order:
                        raise SizeLimitError(
                            f"group closure exceeds {max_order} elements"
                        )
        frontier = nxt
    return FiniteGroup(n, tuple(sorted(seen, key=lambda g: g.images)))


def vector_index(v: tuple[int, ...], p: int) -> int:
    """Point of {1..p^k} for a vector of F_p^k; first coordinate varies fastest."""
    idx = 0
    for j, c in enumerate(v):
        idx += c * p**j
    return idx + 1


def all_vectors(p: int, k: int) -> list[tuple[int, ...]]:
    """All of F_p^k in index order."""
    vecs = [()]
    for _ in range(k):
        vecs = [v + (c,) for c in range(p) for v in vecs]
    # Rebuild in index order: first coordinate fastest.
    return sorted(vecs, key=lambda v: vector_index(v, p))


def translation_permutation(p: int, k: int, v: tuple[int, ...]) -> Permutation:
    """The permutation of {1..p^k} given by adding v in F_p^k."""
    images = [0] * p**k
    for w in all_vectors(p, k):
        shifted = tuple((a + b) % p for a, b in zip(w, v))
        images[vector_index(w, p) - 1] = vector_index(shifted, p)
    return Permutation(tuple(images))


def regular_embedding(p: int, k: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """(Z/p)^k acting on itself by translation, as permutations of {1..p^k}.

    The action is free and transitive. Points are numbered by
    vector_index, so point 1 is the origin.

    >>> [g.cycle_string() for g in regular_embedding(2, 1)]
    ['()', '(1 2)']
    """
    if not is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if k < 1:
        raise DomainError("k must be at least 1")
    if p**k > max_order:
        raise SizeLimitError(f"p^k = {p ** k} exceeds the cap of {max_order}")
    elems = tuple(
        translation_permutation(p, k, v) for v in all_vectors(p, k)
    )
    return FiniteGroup(p**k, tuple(sorted(elems, key=lambda g: g.images)))


def regular_embedding_generators(p: int, k: int) -> tuple[Permutation, ...]:
    """Translations by the standard basis vectors; they generate the group."""
    basis = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    return tuple(translation_permutation(p, k, v) for v in basis)


@dataclass(frozen=True)
class OrbitData:
    representative: Partition
    orbit: tuple[Partition, ...]
    stabilizer: FiniteGroup


def orbits_and_stabilizers(
    group: FiniteGroup, lattice: PartitionLattice
) -> tuple[OrbitData, ...]:
    """Orbit decomposition of the lattice under the partition action.

    Representatives are the lattice-least member of each orbit, and
    |orbit| * |stabilizer| = |group| is checked for every orbit.
    """
    if group.n != lattice.n:
        raise ValueError(f"group degree {group.n} != lattice ground set {lattice.n}")
    seen: set[Partition] = set()
    out = []
    for rep in lattice.elements:
        if rep in seen:
            continue
        orbit = {g.act_on_partition(rep) for g in group.elements}
        seen |= orbit
        stab = tuple(g for g in group.elements if g.act_on_partition(rep) == rep)
        assert len(orbit) * len(stab) == group.order
        out.append(
            OrbitData(
                representative=rep,
                orbit=tuple(sorted(orbit, key=lambda q: (q.n - q.size, q.blocks))),
                stabilizer=FiniteGroup(group.n, stab),
            )
        )
    return tuple(out)
