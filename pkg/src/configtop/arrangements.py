"""Subspace arrangements from partitions and their cohomological ranks.

The arrangement attached to (n, d) has one subspace per partition of
{1..n}: the points of (R^d)^n whose coordinates agree across each block.
A partition with j blocks gives a subspace of dimension d*j, and the
intersection lattice is the partition lattice under refinement, with the
all-singletons partition as the ambient bottom element.

Ranks of complement cohomology are assembled by summing, over lattice
elements V, the reduced homology of the open interval (bottom, V) in
degree codim(V) - i - 2. The ambient element carries the degree-0 unit;
it is recorded with interval degree -2, which makes that formula cover
it uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .complexes import chain_complex, order_complex_of_poset
from .errors import DomainError, SizeLimitError, StructuralError
from .exact import fp_rank, homology
from .groups import (
    FiniteGroup,
    Permutation,
    orbits_and_stabilizers,
    regular_embedding_generators,
)
from .partitions import (
    DEFAULT_MAX_BELL,
    Partition,
    PartitionLattice,
    bell_number,
    build_partition_lattice,
    iter_partitions,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ArrangementElement:
    """One subspace: an id, its dimension, and its codimension."""

    id: str
    dim: int
    codim: int

    def __str__(self) -> str:
        return self.id


@dataclass
class ArrangementLattice:
    """Intersection lattice of a subspace arrangement, bottom first.

    Comparability comes either from explicit strict pairs (by element
    position) or from a backing partition lattice, in which case element
    ids are partition strings and the order is refinement.
    """

    ambient_dim: int
    elements: tuple[ArrangementElement, ...]
    leq_pairs: frozenset[tuple[int, int]] | None = None
    partition_backing: PartitionLattice | None = None

    def __post_init__(self):
        self._index = {e.id: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate element ids")
        if self.elements[0].codim != 0:
            raise ValueError("first element must be the ambient space (codim 0)")
        if self.leq_pairs is None and self.partition_backing is None:
            raise ValueError("need either leq_pairs or a partition backing")
        if self.partition_backing is not None:
            self._partition_of = {
                e.id: Partition.from_string(e.id, self.partition_backing.n)
                for e in self.elements
            }

    @property
    def bottom(self) -> ArrangementElement:
        return self.elements[0]

    def leq(self, x: ArrangementElement, y: ArrangementElement) -> bool:
        if x.id == y.id:
            return True
        if self.partition_backing is not None:
            return self._partition_of[x.id].refines(self._partition_of[y.id])
        return (self._index[x.id], self._index[y.id]) in self.leq_pairs

    def atoms(self) -> tuple[ArrangementElement, ...]:
        out = []
        for x in self.elements[1:]:
            if not any(
                y.id != x.id and y.id != self.bottom.id and self.leq(y, x)
                for y in self.elements[1:]
            ):
                out.append(x)
        return tuple(out)

    def open_interval_below(self, v: ArrangementElement):
        """Elements strictly between the bottom and v, in listed order."""
        return [
            z
            for z in self.elements
            if z.id != v.id and z.id != self.bottom.id and self.leq(z, v)
        ]

    def to_doc(self) -> dict:
        pairs = []
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                if i != j and self.leq(x, y):
                    pairs.append([i, j])
        return {
            "schema_version": SCHEMA_VERSION,
            "ambient_dim": self.ambient_dim,
            "elements": [[e.id, e.dim, e.codim] for e in self.elements],
            "leq_pairs": pairs,
        }


def configuration_arrangement(
    n: int, d: int, max_bell: int = DEFAULT_MAX_BELL
) -> ArrangementLattice:
    """The arrangement of coordinate-equality subspaces for (n, d).

    >>> lat = configuration_arrangement(3, 2)
    >>> (lat.bottom.dim, len(lat.elements), len(lat.atoms()))
    (6, 5, 3)
    """
    if n < 1 or d < 1:
        raise DomainError("n and d must be positive")
    plat = build_partition_lattice(n, max_bell=max_bell)
    elements = tuple(
        ArrangementElement(p.to_string(), d * p.size, d * (n - p.size))
        for p in plat.elements
    )
    return ArrangementLattice(d * n, elements, partition_backing=plat)


def is_c_arrangement(lat: ArrangementLattice, c: int) -> bool:
    """Every atom has codimension c and c divides all relative codimensions.

    >>> is_c_arrangement(configuration_arrangement(4, 3), 3)
    True
    >>> is_c_arrangement(configuration_arrangement(4, 3), 2)
    False
    """
    if c < 1:
        raise DomainError("c must be positive")
    if any(a.codim != c for a in lat.atoms()):
        return False
    for i, x in enumerate(lat.elements):
        for j, y in enumerate(lat.elements):
            if i != j and lat.leq(x, y) and (y.codim - x.codim) % c:
                return False
    return True


# Reduced betti numbers of the open interval below a partition depend only
# on the block-size multiset, so they are cached by type across all n.
_INTERVAL_BETTI_MEMO: dict[tuple, dict[int, int]] = {}


def _interval_betti(
    lat: ArrangementLattice, v: ArrangementElement, coeff
) -> dict[int, int]:
    """Reduced betti numbers of the order complex of (bottom, v)."""
    key = None
    if lat.partition_backing is not None:
        sizes = lat._partition_of[v.id].block_sizes()
        ckey = coeff if isinstance(coeff, str) else tuple(coeff)
        key = (sizes, ckey)
        if key in _INTERVAL_BETTI_MEMO:
            return _INTERVAL_BETTI_MEMO[key]
    strict = lat.open_interval_below(v)
    sc = order_complex_of_poset(strict, lat.leq, str)
    summary = homology(chain_complex(sc, coeff))
    betti = {r: b for r, b in summary.betti.items() if b}
    if key is not None:
        _INTERVAL_BETTI_MEMO[key] = betti
    return betti


@dataclass(frozen=True)
class GMContribution:
    """One lattice element's contribution to one cohomological degree."""

    element_id: str
    codim: int
    interval_degree: int
    rank: int


@dataclass
class GMReport:
    """Complement cohomology ranks, with per-element provenance."""

    coeff: str | tuple[str, int]
    ambient_dim: int
    ranks: dict[int, int]
    contributions: dict[int, tuple[GMContribution, ...]]

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def nonzero_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(d for d, r in self.ranks.items() if r))

    def to_doc(self) -> dict:
        coeff = self.coeff if isinstance(self.coeff, str) else f"F{self.coeff[1]}"
        return {
            "schema_version": SCHEMA_VERSION,
            "coeff": coeff,
            "ambient_dim": self.ambient_dim,
            "ranks": {str(k): v for k, v in sorted(self.ranks.items())},
            "contributions": {
                str(k): [[c.element_id, c.codim, c.interval_degree, c.rank] for c in v]
                for k, v in sorted(self.contributions.items())
            },
        }


def _assemble_report(coeff, ambient_dim, triples) -> GMReport:
    ranks: dict[int, int] = {}
    contributions: dict[int, list[GMContribution]] = {}
    for degree, contrib in triples:
        ranks[degree] = ranks.get(degree, 0) + contrib.rank
        contributions.setdefault(degree, []).append(contrib)
    return GMReport(
        coeff,
        ambient_dim,
        dict(sorted(ranks.items())),
        {k: tuple(v) for k, v in sorted(contributions.items())},
    )


def gm_cohomology(lat: ArrangementLattice, coeff="Z") -> GMReport:
    """Complement cohomology ranks from interval homology, degree by degree.

    Every element V above the bottom contributes the reduced betti numbers
    of the open interval (bottom, V), placed in degree codim(V) - r - 2;
    the bottom itself contributes the unit in degree 0.
    """
    triples = [
        (0, GMContribution(lat.bottom.id, 0, -2, 1)),
    ]
    for v in lat.elements[1:]:
        for r, b in sorted(_interval_betti(lat, v, coeff).items()):
            degree = v.codim - r - 2
            if degree < 0:
                raise StructuralError(
                    f"interval homology of {v.id} in degree {r} lands below 0"
                )
            triples.append((degree, GMContribution(v.id, v.codim, r, b)))
    return _assemble_report(coeff, lat.ambient_dim, triples)


def config_rank_formula(n: int, d: int, max_bell: int = DEFAULT_MAX_BELL) -> GMReport:
    """Closed-form ranks for the (n, d) arrangement complement.

    A partition with blocks of sizes a_1..a_j contributes the product of
    (a_i - 1)! in degree (d-1)(n-j); summed over all partitions the total
    is n!. The all-singletons partition is the degree-0 unit.

    >>> config_rank_formula(3, 2).ranks
    {0: 1, 1: 3, 2: 2}
    """
    if n < 1 or d < 1:
        raise DomainError("n and d must be positive")
    b = bell_number(n)
    if b > max_bell:
        raise SizeLimitError(
            f"enumerating partitions of {n} needs B({n}) = {b} over the cap {max_bell}"
        )
    triples = []
    for p in sorted(iter_partitions(n), key=lambda q: (q.n - q.size, q.blocks)):
        j = p.size
        rank = 1
        for blk in p.blocks:
            rank *= factorial(len(blk) - 1)
        contrib = GMContribution(p.to_string(), d * (n - j), n - j - 2, rank)
        triples.append(((d - 1) * (n - j), contrib))
    report = _assemble_report("Z", d * n, triples)
    assert report.total_rank() == factorial(n)
    return report


@dataclass(frozen=True)
class OrbitContribution:
    """One orbit of subspaces in the equivariant rank bookkeeping."""

    representative_id: str
    block_sizes: tuple[int, ...]
    degree: int
    orbit_size: int
    stabilizer_order: int
    interval_rank: int
    induced_dim: int
    full_stabilizer: bool
    stabilizer_orientation_trivial: bool


@dataclass
class EquivariantGMReport:
    """Per-orbit decomposition of the complement cohomology ranks."""

    n: int
    d: int
    p: int
    group_order: int
    orbits: dict[int, tuple[OrbitContribution, ...]]

    def plain_ranks(self) -> dict[int, int]:
        return {
            deg: sum(o.induced_dim for o in orbs)
            for deg, orbs in sorted(self.orbits.items())
        }

    def full_stabilizer_orbits(self) -> tuple[OrbitContribution, ...]:
        return tuple(
            o for orbs in self.orbits.values() for o in orbs if o.full_stabilizer
        )

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "d": self.d,
            "p": self.p,
            "group_order": self.group_order,
            "orbits": {
                str(deg): [
                    {
                        "rep": o.representative_id,
                        "degree": o.degree,
                        "orbit_size": o.orbit_size,
                        "stab_order": o.stabilizer_order,
                        "interval_rank": o.interval_rank,
                        "induced_dim": o.induced_dim,
                        "full_stabilizer": o.full_stabilizer,
                        "orientation_trivial": o.stabilizer_orientation_trivial,
                    }
                    for o in orbs
                ]
                for deg, orbs in sorted(self.orbits.items())
            },
        }


def _block_permutation_sign(g: Permutation, part: Partition) -> int:
    """Sign of the permutation g induces on the blocks of a partition it
    stabilizes."""
    image = g.act_on_partition(part)
    assert image == part
    order = {b: i for i, b in enumerate(part.blocks)}
    images = [order[tuple(sorted(g(x) for x in b))] for b in part.blocks]
    inversions = sum(
        1
        for a in range(len(images))
        for b in range(a + 1, len(images))
        if images[a] > images[b]
    )
    return -1 if inversions % 2 else 1


def equivariant_gm(
    n: int,
    d: int,
    group: FiniteGroup,
    p: int,
    max_bell: int = DEFAULT_MAX_BELL,
) -> EquivariantGMReport:
    """Orbit-by-orbit rank bookkeeping for a group of coordinate permutations.

    Interval ranks use the closed form (product of (a_i - 1)! over block
    sizes), which is the betti number of the interval below the orbit
    representative over any field; p is recorded for downstream module
    analysis. Orientation is tracked through the sign of the induced
    block permutation raised to the d-th power.
    """
    if group.n != n:
        raise DomainError(f"group degree {group.n} != n = {n}")
    lat = build_partition_lattice(n, max_bell=max_bell)
    orbit_data = orbits_and_stabilizers(group, lat)
    triples: dict[int, list[OrbitContribution]] = {}
    for od in orbit_data:
        rep = od.representative
        j = rep.size
        degree = (d - 1) * (n - j)
        interval_rank = 1
        for blk in rep.blocks:
            interval_rank *= factorial(len(blk) - 1)
        orientation = all(
            _block_permutation_sign(g, rep) ** d == 1
            for g in od.stabilizer.elements
        )
        contrib = OrbitContribution(
            representative_id=rep.to_string(),
            block_sizes=rep.block_sizes(),
            degree=degree,
            orbit_size=len(od.orbit),
            stabilizer_order=od.stabilizer.order,
            interval_rank=interval_rank,
            induced_dim=len(od.orbit) * interval_rank,
            full_stabilizer=od.stabilizer.order == group.order,
            stabilizer_orientation_trivial=orientation,
        )
        triples.setdefault(degree, []).append(contrib)
    return EquivariantGMReport(
        n, d, p, group.order, {k: tuple(v) for k, v in sorted(triples.items())}
    )


@dataclass
class WhitneyReport:
    """Bigraded ranks of the strand-split flag complex, mod p.

    `table[(r, s)]` is computed from the flag complex itself;
    `interval_table` is the predicted decomposition (one summand per
    lattice element V, in column s = dim(V) - 1, with the interval betti
    number from degree r - 1). In the default face range the two must
    agree; `matches` records the comparison either way.
    """

    n: int
    d: int
    p: int
    face_range: str
    table: dict[tuple[int, int], int]
    interval_table: dict[tuple[int, int], int]
    is_complex: bool
    matches: bool

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "d": self.d,
            "p": self.p,
            "face_range": self.face_range,
            "table": {f"{r},{s}": v for (r, s), v in sorted(self.table.items())},
            "interval_table": {
                f"{r},{s}": v for (r, s), v in sorted(self.interval_table.items())
            },
            "is_complex": self.is_complex,
            "matches": self.matches,
        }


WHITNEY_MAX_N = 5


def whitney_e2(
    n: int, d: int, p: int, face_range: str = "full"
) -> WhitneyReport:
    """Rank table of the flag-by-top-element complex of the arrangement.

    Flags V_0 < ... < V_r of nonzero subspaces split by their top element,
    and the top's sphere dimension s = dim(V_r) - 1 grades the columns.
    With face_range="full" the differential drops every vertex except the
    top (faces 0..r-1, alternating signs); each strand then computes the
    interval homology below its top elements, shifted up by one, and the
    table must match the interval decomposition. face_range="printed"
    drops only the interior faces 1..r-1; the result is still a complex
    but the comparison is reported rather than enforced.
    """
    if face_range not in ("full", "printed"):
        raise DomainError(f"unknown face_range {face_range!r}")
    if n > WHITNEY_MAX_N:
        raise SizeLimitError(f"n = {n} over the flag-complex cap of {WHITNEY_MAX_N}")
    if n < 2 or d < 1:
        raise DomainError("need n >= 2 and d >= 1")
    lat = build_partition_lattice(n)
    # Nonzero subspaces: every partition except the all-singletons bottom.
    elems = [q for q in lat.elements if q.size < n]
    index = {q: i for i, q in enumerate(elems)}
    succ = [
        [j for j in range(len(elems)) if elems[i] != elems[j] and elems[i].refines(elems[j])]
        for i in range(len(elems))
    ]
    flags: list[tuple[int, ...]] = []

    def grow(flag: list[int]):
        flags.append(tuple(flag))
        for j in succ[flag[-1]]:
            flag.append(j)
            grow(flag)
            flag.pop()

    for i in range(len(elems)):
        grow([i])

    # Group flags by strand: s = d * (top block count) - 1.
    def strand(flag: tuple[int, ...]) -> int:
        return d * elems[flag[-1]].size - 1

    by_strand: dict[int, dict[int, list[tuple[int, ...]]]] = {}
    for flag in flags:
        by_strand.setdefault(strand(flag), {}).setdefault(len(flag) - 1, []).append(flag)

    lo = 0 if face_range == "full" else 1
    table: dict[tuple[int, int], int] = {}
    is_complex = True
    for s, by_r in sorted(by_strand.items()):
        max_r = max(by_r)
        pos = {r: {f: i for i, f in enumerate(sorted(fl))} for r, fl in by_r.items()}
        mats: dict[int, list[list[int]]] = {}
        for r in range(1, max_r + 1):
            rows = [[0] * len(by_r.get(r, [])) for _ in range(len(by_r.get(r - 1, [])))]
            for f, col in pos.get(r, {}).items():
                for i in range(lo, r):
                    face = f[:i] + f[i + 1 :]
                    rows[pos[r - 1][face]][col] += (-1) ** i
            mats[r] = rows
        # Boundary-squared check, mod p.
        for r in range(1, max_r):
            a, b = mats[r], mats[r + 1]
            if not a or not b or not b[0]:
                continue
            for jcol in range(len(b[0])):
                col = [sum(a[i][t] * b[t][jcol] for t in range(len(b))) % p for i in range(len(a))]
                if any(col):
                    is_complex = False
        ranks = {r: fp_rank(m, p) if m and m[0] else 0 for r, m in mats.items()}
        for r in range(0, max_r + 1):
            dim_r = len(by_r.get(r, []))
            table[(r, s)] = dim_r - ranks.get(r, 0) - ranks.get(r + 1, 0)
    table = {k: v for k, v in table.items() if v}

    # Predicted decomposition, one summand per lattice element.
    arr = configuration_arrangement(n, d)
    interval_table: dict[tuple[int, int], int] = {}
    for v in arr.elements[1:]:
        s = v.dim - 1
        for rdeg, b in _interval_betti(arr, v, ("Fp", p)).items():
            key = (rdeg + 1, s)
            interval_table[key] = interval_table.get(key, 0) + b
    matches = table == interval_table
    if face_range == "full" and not matches:
        raise StructuralError("strand homology disagrees with interval decomposition")
    return WhitneyReport(n, d, p, face_range, table, interval_table, is_complex, matches)


@dataclass(frozen=True)
class FullStabilizerScan:
    """Result of scanning for invariant partitions of maximal block count."""

    p: int
    k: int
    d: int
    degree: int
    witness: str
    witness_block_count: int
    invariant_block_counts: tuple[int, ...]


def full_stabilizer_scan(
    p: int, k: int, d: int, max_bell: int = DEFAULT_MAX_BELL
) -> FullStabilizerScan:
    """Find the smallest positive degree carried by a fully invariant
    subspace, for the translation group of F_p^k on p^k points.

    It suffices to test invariance under the k basis translations, since
    they generate the group. The degree of a partition with j blocks is
    (d-1)(p^k - j), so the scan tracks the invariant partition with the
    most blocks short of the bottom.
    """
    n = p**k
    if d < 2:
        raise DomainError("d must be at least 2")
    b = bell_number(n)
    if b > max_bell:
        raise SizeLimitError(
            f"scanning partitions of {n} needs B({n}) = {b} over the cap {max_bell}"
        )
    gens = regular_embedding_generators(p, k)
    best: Partition | None = None
    sizes: set[int] = set()
    for part in iter_partitions(n):
        if part.size == n:
            continue  # the bottom is the ambient space, degree 0
        if all(g.act_on_partition(part) == part for g in gens):
            sizes.add(part.size)
            if best is None or part.size > best.size:
                best = part
    assert best is not None  # the one-block partition is always invariant
    return FullStabilizerScan(
        p,
        k,
        d,
        degree=(d - 1) * (n - best.size),
        witness=best.to_string(),
        witness_block_count=best.size,
        invariant_block_counts=tuple(sorted(sizes)),
    )


def full_stabilizer_degree(p: int, k: int, d: int, max_bell: int = DEFAULT_MAX_BELL) -> int:
    """Smallest positive cohomological degree with a fully invariant
    contribution; equals (d-1)(p^k - p^(k-1)) for the translation group.

    >>> full_stabilizer_degree(2, 2, 2)
    2
    """
    return full_stabilizer_scan(p, k, d, max_bell=max_bell).degree
