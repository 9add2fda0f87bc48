"""Actions of Z/p on mod-p homology and their module structure.

A matrix M of order dividing p over F_p satisfies (M - I)^p = 0, so the
module it defines decomposes into Jordan blocks of sizes 1..p with
eigenvalue 1. Size p blocks are free summands, size p-1 blocks are copies
of the augmentation-kernel module, size 1 blocks are trivial summands.
For p = 2 the two nontrivial sizes coincide with free and trivial, and
size-1 blocks are reported as trivial.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainComplex, ChainMap
from .errors import DomainError, StructuralError
from .exact import fp_rank, homology

MAX_ORDER_SCAN = 10_000


@dataclass(frozen=True)
class HomologyAction:
    """A group element's action on mod-p homology at one degree.

    `matrix` acts on coordinate columns in the stored homology basis.
    """

    p: int
    degree: int
    matrix: tuple[tuple[int, ...], ...]
    order: int


def _mat_mul(a, b, p):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
        for i in range(n)
    )


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def homology_action(cc: ChainComplex, f: ChainMap, degree: int) -> HomologyAction:
    """Matrix of a chain self-map on mod-p homology at the given degree.

    The chain map must be invertible on homology; its multiplicative
    order is computed and returned with the matrix.
    """
    if cc.coeff == "Z" or cc.p is None:
        raise DomainError("homology_action needs F_p coefficients")
    p = cc.p
    summary = homology(cc)
    data = summary.fp_data[degree]
    dim = len(data.basis)
    if dim == 0:
        return HomologyAction(p, degree, (), 1)
    fmat = f.matrices[degree]
    cols = []
    for z in data.basis:
        image = fmat.matvec(list(z))
        cols.append(data.project([v % p for v in image]))
    matrix = tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))
    if fp_rank([list(r) for r in matrix], p) != dim:
        raise StructuralError("map is not invertible on homology")
    power = matrix
    order = 1
    while power != _identity(dim):
        power = _mat_mul(power, matrix, p)
        order += 1
        if order > MAX_ORDER_SCAN:
            raise StructuralError("order of homology action exceeds scan cap")
    return HomologyAction(p, degree, matrix, order)


@dataclass(frozen=True)
class JordanType:
    """Jordan block sizes (all eigenvalue 1) of an order-p matrix mod p."""

    p: int
    dimension: int
    block_sizes: tuple[int, ...]

    def block_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for s in self.block_sizes:
            counts[s] = counts.get(s, 0) + 1
        return counts


def jordan_type(matrix, p: int) -> JordanType:
    """Jordan type of a matrix with M^p = I over F_p.

    Block counts come from the ranks of powers of N = M - I: the number
    of blocks of size >= j is rank(N^(j-1)) - rank(N^j).

    >>> jordan_type(((1, 1), (0, 1)), 2).block_sizes
    (2,)
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    power = _identity(n)
    mt = tuple(tuple(v % p for v in r) for r in rows)
    for _ in range(p):
        power = _mat_mul(power, mt, p)
    if power != _identity(n):
        raise DomainError("matrix order does not divide p")
    nil = tuple(
        tuple((mt[i][j] - (1 if i == j else 0)) % p for j in range(n)) for i in range(n)
    )
    ranks = [n]
    pw = _identity(n)
    for _ in range(p):
        pw = _mat_mul(pw, nil, p)
        ranks.append(fp_rank([list(r) for r in pw], p))
    assert ranks[p] == 0  # (M - I)^p = M^p - I = 0 over F_p
    geq = [ranks[j - 1] - ranks[j] for j in range(1, p + 1)]  # blocks of size >= j
    geq.append(0)
    sizes = []
    for j in range(1, p + 1):
        sizes.extend([j] * (geq[j - 1] - geq[j]))
    sizes.sort(reverse=True)
    jt = JordanType(p, n, tuple(sizes))
    assert sum(jt.block_sizes) == n
    return jt


@dataclass(frozen=True)
class ZpModuleDescriptor:
    """Multiplicities of the standard F_p[Z/p] summands."""

    p: int
    free_rank: int
    k_multiplicity: int
    trivial_rank: int
    other_blocks: tuple[int, ...]

    def as_triple(self) -> tuple[int, int, int]:
        return (self.free_rank, self.k_multiplicity, self.trivial_rank)


def zp_module_descriptor(jt: JordanType) -> ZpModuleDescriptor:
    """Read the module decomposition off a Jordan type.

    Size p blocks are free, size p-1 blocks are the codimension-one
    summand K, size 1 blocks are trivial. For p = 2 both K and the
    trivial module are one-dimensional; size-1 blocks count as trivial.
    """
    p = jt.p
    free = k_mult = trivial = 0
    other = []
    for s in jt.block_sizes:
        if s == p:
            free += 1
        elif s == p - 1 and p > 2:
            k_mult += 1
        elif s == 1:
            trivial += 1
        else:
            other.append(s)
    return ZpModuleDescriptor(p, free, k_mult, trivial, tuple(sorted(other, reverse=True)))


def is_in_FI_family_zp(jt: JordanType) -> bool:
    """True iff the module is free, i.e. every Jordan block has size p."""
    return all(s == jt.p for s in jt.block_sizes)


def partition_homology_descriptor(p: int) -> ZpModuleDescriptor:
    """Module structure of the p-cycle action on the top reduced homology
    of the partition lattice's proper-part order complex, mod p.

    The homology sits in degree p - 3 with dimension (p - 1)!.
    """
    from .arith import is_prime
    from .complexes import chain_complex, induced_chain_map, order_complex
    from .groups import Permutation
    from .partitions import Partition, build_partition_lattice

    if not is_prime(p) or p < 3:
        raise DomainError(f"p = {p} must be an odd-capable prime, at least 3")
    lat = build_partition_lattice(p)
    sc = order_complex(lat, "proper")
    cc = chain_complex(sc, ("Fp", p))
    cycle = Permutation.from_cycles(p, [tuple(range(1, p + 1))])
    vm = {
        v: Partition.from_string(v, p).relabel(cycle.images).to_string()
        for v in sc.vertices
    }
    f = induced_chain_map(sc, vm, ("Fp", p))
    action = homology_action(cc, f, p - 3)
    if action.order != p:
        raise StructuralError(f"cycle acts with order {action.order}, expected {p}")
    return zp_module_descriptor(jordan_type(action.matrix, p))
