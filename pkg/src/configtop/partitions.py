"""Set partitions of {1..n} and the partition lattice under refinement.

Partitions are kept in a canonical form (each block ascending, blocks
ordered by least element), so equal partitions compare equal as values.
The lattice order is refinement: x <= y iff every block of x lies inside
a block of y, making the all-singletons partition the bottom element and
the one-block partition the top.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import OrderError, SizeLimitError

SCHEMA_VERSION = 1

# Caps enumeration at |Pi_12|; B(13) and beyond are rejected by name.
DEFAULT_MAX_BELL = 4_213_597


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    """Number of partitions of an n-set, by the Bell-triangle recurrence.

    >>> [bell_number(n) for n in range(7)]
    [1, 1, 2, 5, 15, 52, 203]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


@dataclass(frozen=True)
class Partition:
    """A set partition of {1..n} in canonical block order."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_blocks(n: int, blocks) -> Partition:
        """Canonicalize an iterable of iterables into a Partition."""
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        seen = [x for b in canon for x in b]
        if sorted(seen) != list(range(1, n + 1)):
            raise ValueError(f"blocks do not partition 1..{n}: {blocks!r}")
        return Partition(n, canon)

    @staticmethod
    def singletons(n: int) -> Partition:
        return Partition(n, tuple((i,) for i in range(1, n + 1)))

    @staticmethod
    def one_block(n: int) -> Partition:
        return Partition(n, (tuple(range(1, n + 1)),))

    @property
    def size(self) -> int:
        """Number of blocks."""
        return len(self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        """Multiset of block sizes, largest first."""
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise ValueError(f"{x} not in 1..{self.n}")

    def refines(self, other: Partition) -> bool:
        """self <= other in the refinement order."""
        if self.n != other.n:
            raise ValueError("partitions of different ground sets")
        home = {}
        for bi, b in enumerate(other.blocks):
            for x in b:
                home[x] = bi
        return all(len({home[x] for x in b}) == 1 for b in self.blocks)

    def relabel(self, images: tuple[int, ...]) -> Partition:
        """Apply the permutation i -> images[i-1] to the ground set."""
        return Partition.from_blocks(
            self.n, [[images[x - 1] for x in b] for b in self.blocks]
        )

    def to_string(self) -> str:
        """Serialize: "12|3" for n <= 9, comma-separated elements above.

        >>> Partition.from_blocks(3, [[1, 2], [3]]).to_string()
        '12|3'
        """
        if self.n <= 9:
            return "|".join("".join(str(x) for x in b) for b in self.blocks)
        return "|".join(",".join(str(x) for x in b) for b in self.blocks)

    @staticmethod
    def from_string(s: str, n: int) -> Partition:
        if n <= 9:
            blocks = [[int(c) for c in part] for part in s.split("|")]
        else:
            blocks = [[int(c) for c in part.split(",")] for part in s.split("|")]
        return Partition.from_blocks(n, blocks)

    def __str__(self) -> str:
        return self.to_string()


def meet(x: Partition, y: Partition) -> Partition:
    """Greatest common refinement: blockwise intersections."""
    blocks = []
    for a in x.blocks:
        for b in y.blocks:
            common = set(a) & set(b)
            if common:
                blocks.append(common)
    return Partition.from_blocks(x.n, blocks)


def join(x: Partition, y: Partition) -> Partition:
    """Least common coarsening, via union-find over both block sets."""
    parent = list(range(x.n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for part in (x, y):
        for b in part.blocks:
            for other in b[1:]:
                parent[find(other)] = find(b[0])
    groups: dict[int, list[int]] = {}
    for i in range(1, x.n + 1):
        groups.setdefault(find(i), []).append(i)
    return Partition.from_blocks(x.n, groups.values())


def iter_partitions(n: int):
    """Yield all partitions of {1..n} (insertion order, not lattice order)."""
    if n == 0:
        yield Partition(0, ())
        return

    def extend(blocks: list[list[int]], k: int):
        if k > n:
            yield Partition.from_blocks(n, blocks)
            return
        for b in blocks:
            b.append(k)
            yield from extend(blocks, k + 1)
            b.pop()
        blocks.append([k])
        yield from extend(blocks, k + 1)
        blocks.pop()

    yield from extend([[1]], 2)


@dataclass
class PartitionLattice:
    """The lattice of all partitions of {1..n}, refinement-ordered.

    Elements are listed bottom-up: size (block count) descending, then
    lexicographically by block structure, so elements[0] is the
    all-singletons bottom and elements[-1] the one-block top.
    """

    n: int
    elements: tuple[Partition, ...]
    _index: dict[Partition, int] = field(repr=False, compare=False, default_factory=dict)
    _mobius_memo: dict[tuple[int, int], int] = field(
        repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self):
        if not self._index:
            self._index.update({p: i for i, p in enumerate(self.elements)})

    def index(self, p: Partition) -> int:
        return self._index[p]

    @property
    def bottom(self) -> Partition:
        return self.elements[0]

    @property
    def top(self) -> Partition:
        return self.elements[-1]

    def leq(self, x: Partition, y: Partition) -> bool:
        return x.refines(y)

    def meet(self, x: Partition, y: Partition) -> Partition:
        return meet(x, y)

    def join(self, x: Partition, y: Partition) -> Partition:
        return join(x, y)

    def elements_of_size(self, j: int) -> tuple[Partition, ...]:
        return tuple(p for p in self.elements if p.size == j)

    def interval(self, x: Partition, y: Partition) -> tuple[Partition, ...]:
        """Closed interval [x, y], in lattice element order."""
        if not x.refines(y):
            raise OrderError(f"{x} is not below {y}")
        return tuple(p for p in self.elements if x.refines(p) and p.refines(y))

    def proper_part(self) -> tuple[Partition, ...]:
        """All elements strictly between bottom and top."""
        return tuple(p for p in self.elements if 1 < p.size < self.n)

    def to_doc(self) -> dict:
        """Serializable form; leq_pairs lists strict comparabilities."""
        pairs = []
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                if i != j and x.refines(y):
                    pairs.append([i, j])
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "elements": [p.to_string() for p in self.elements],
            "leq_pairs": pairs,
        }

    @staticmethod
    def from_doc(doc: dict) -> PartitionLattice:
        n = doc["n"]
        elems = tuple(Partition.from_string(s, n) for s in doc["elements"])
        lat = PartitionLattice(n, elems)
        for i, j in doc["leq_pairs"]:
            if not elems[i].refines(elems[j]):
                raise ValueError(f"leq_pairs disagrees with refinement at [{i}, {j}]")
        return lat


def build_partition_lattice(n: int, max_bell: int = DEFAULT_MAX_BELL) -> PartitionLattice:
    """Enumerate Pi_n. Refuses by Bell number when over the cap.

    >>> build_partition_lattice(3).elements[0].to_string()
    '1|2|3'
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    b = bell_number(n)
    if b > max_bell:
        raise SizeLimitError(
            f"partition lattice on {n} elements has B({n}) = {b} elements, "
            f"over the cap of {max_bell}"
        )
    elems = sorted(iter_partitions(n), key=lambda p: (p.n - p.size, p.blocks))
    return PartitionLattice(n, tuple(elems))


def mobius(lattice: PartitionLattice, x: Partition, y: Partition) -> int:
    """Mobius function mu(x, y) of the lattice.

    mu(x, x) = 1 and sum of mu(x, z) over x <= z <= y vanishes for x < y.
    Raises OrderError on incomparable or reversed arguments.

    >>> lat = build_partition_lattice(3)
    >>> mobius(lat, lat.bottom, lat.top)
    2
    """
    if not x.refines(y):
        raise OrderError(f"mobius: {x} is not below {y}")
    memo = lattice._mobius_memo
    xi = lattice.index(x)

    def mu(z: Partition) -> int:
        key = (xi, lattice.index(z))
        if key in memo:
            return memo[key]
        # Recurse over [x, z); finer partitions only, so depth is bounded.
        total = 0
        for w in lattice.interval(x, z):
            if w != z:
                total += mu(w)
        memo[key] = -total if z != x else 1
        return memo[key]

    return mu(y)
