"""Order complexes of posets, reduced chain complexes, induced chain maps.

Simplices are stored as ascending tuples of vertex indices. Chain
complexes are reduced: degree -1 is the coefficient ring and the degree-0
boundary is the augmentation (row of ones). An empty complex keeps its
degree -1 part when the empty-complex convention flag is on (the default),
so the empty complex has homology of rank 1 in degree -1; with the flag
off the empty complex has no homology at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import OrderError, StructuralError
from .exact import SparseIntMatrix

SCHEMA_VERSION = 1

Simplex = tuple[int, ...]


@dataclass
class SimplicialComplex:
    """A finite simplicial complex on labeled vertices.

    `simplices[d]` lists the d-dimensional simplices in sorted order.
    Every vertex is a 0-simplex and the face closure is checked.
    """

    vertices: tuple[str, ...]
    simplices: tuple[tuple[Simplex, ...], ...]
    _index: dict[Simplex, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        nv = len(self.vertices)
        if len(set(self.vertices)) != nv:
            raise ValueError("duplicate vertex labels")
        all_simplices: set[Simplex] = set()
        for d, level in enumerate(self.simplices):
            if list(level) != sorted(set(level)):
                raise ValueError(f"dimension {d} simplices not sorted and distinct")
            for s in level:
                if len(s) != d + 1 or list(s) != sorted(set(s)):
                    raise ValueError(f"bad {d}-simplex {s!r}")
                if s[0] < 0 or s[-1] >= nv:
                    raise ValueError(f"vertex index out of range in {s!r}")
                all_simplices.add(s)
        if self.simplices and set(self.simplices[0]) != {(i,) for i in range(nv)}:
            raise ValueError("every vertex must appear as a 0-simplex")
        if not self.simplices and nv:
            raise ValueError("vertices listed but no 0-simplices")
        for d in range(1, len(self.simplices)):
            for s in self.simplices[d]:
                for face in combinations(s, d):
                    if face not in all_simplices:
                        raise ValueError(f"face {face!r} of {s!r} missing")
        if not self._index:
            for level in self.simplices:
                for i, s in enumerate(level):
                    self._index[s] = i

    @staticmethod
    def empty() -> SimplicialComplex:
        return SimplicialComplex((), ())

    @staticmethod
    def from_simplex_set(vertices: tuple[str, ...], simplices) -> SimplicialComplex:
        by_dim: dict[int, set[Simplex]] = {}
        for s in simplices:
            by_dim.setdefault(len(s) - 1, set()).add(tuple(s))
        top = max(by_dim) if by_dim else -1
        levels = tuple(
            tuple(sorted(by_dim.get(d, set()))) for d in range(top + 1)
        )
        return SimplicialComplex(vertices, levels)

    @staticmethod
    def from_facets(vertices: tuple[str, ...], facets) -> SimplicialComplex:
        closure: set[Simplex] = set()
        for f in facets:
            f = tuple(sorted(f))
            for size in range(1, len(f) + 1):
                closure.update(combinations(f, size))
        return SimplicialComplex.from_simplex_set(vertices, closure)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.simplices)

    def simplex_index(self, s: Simplex) -> int:
        return self._index[s]

    def has_simplex(self, s: Simplex) -> bool:
        return s in self._index

    def facets(self) -> tuple[Simplex, ...]:
        """Maximal simplices, sorted by (dimension, simplex)."""
        covered: set[Simplex] = set()
        for d in range(1, len(self.simplices)):
            for s in self.simplices[d]:
                covered.update(combinations(s, d))
        out = []
        for level in self.simplices:
            out.extend(s for s in level if s not in covered)
        return tuple(sorted(out, key=lambda s: (len(s), s)))

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "vertices": list(self.vertices),
            "facets": [list(f) for f in self.facets()],
        }

    @staticmethod
    def from_doc(doc: dict) -> SimplicialComplex:
        return SimplicialComplex.from_facets(
            tuple(doc["vertices"]), [tuple(f) for f in doc["facets"]]
        )


def order_complex_of_poset(elements, leq, label) -> SimplicialComplex:
    """Order complex of an arbitrary finite poset.

    `elements` must be listed in a linear extension of the order, so every
    chain reads left to right. Simplices are the chains.
    """
    elems = list(elements)
    labels = tuple(label(x) for x in elems)
    n = len(elems)
    succ: list[list[int]] = [
        [j for j in range(i + 1, n) if leq(elems[i], elems[j])] for i in range(n)
    ]
    chains: list[Simplex] = []

    def grow(chain: list[int]):
        chains.append(tuple(chain))
        for j in succ[chain[-1]]:
            chain.append(j)
            grow(chain)
            chain.pop()

    for i in range(n):
        grow([i])
    return SimplicialComplex.from_simplex_set(labels, chains)


def order_complex(lattice, interval="proper") -> SimplicialComplex:
    """Order complex of an open interval in a lattice.

    `interval` is either the string "proper" (everything strictly between
    bottom and top) or a pair (x, y), giving the open interval (x, y).
    An empty open interval yields the empty complex.
    """
    if interval == "proper":
        lo, hi = lattice.bottom, lattice.top
    else:
        lo, hi = interval
        if not lattice.leq(lo, hi):
            raise OrderError(f"interval bounds are not ordered: {lo} vs {hi}")
    strict = [
        z
        for z in lattice.elements
        if z != lo and z != hi and lattice.leq(lo, z) and lattice.leq(z, hi)
    ]
    return order_complex_of_poset(strict, lattice.leq, str)


@dataclass
class ChainComplex:
    """A reduced chain complex with integer boundary matrices.

    `boundaries[r]` is the matrix of the boundary map from degree r to
    degree r-1 (rows indexed by the target). For F_p coefficients the
    entries stay integers; computations reduce mod p. The composite of
    consecutive boundaries is checked to vanish over the coefficients.
    """

    coeff: str | tuple[str, int]
    dims: dict[int, int]
    boundaries: dict[int, SparseIntMatrix]

    def __post_init__(self):
        if self.coeff != "Z" and not (
            isinstance(self.coeff, tuple) and self.coeff[0] == "Fp"
        ):
            raise ValueError(f"unknown coefficients {self.coeff!r}")
        for r, mat in self.boundaries.items():
            if mat.rows != self.dims.get(r - 1, 0) or mat.cols != self.dims.get(r, 0):
                raise ValueError(f"boundary at degree {r} has the wrong shape")
        for r, mat in self.boundaries.items():
            nxt = self.boundaries.get(r + 1)
            if nxt is None:
                continue
            square = mat.matmul(nxt)
            if self.coeff == "Z":
                ok = square.is_zero()
            else:
                p = self.coeff[1]
                ok = all(v % p == 0 for v in square.entries.values())
            if not ok:
                raise StructuralError(f"boundary squared is nonzero at degree {r + 1}")

    @property
    def p(self) -> int | None:
        return None if self.coeff == "Z" else self.coeff[1]

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.dims))

    def to_doc(self) -> dict:
        coeff = self.coeff if isinstance(self.coeff, str) else f"F{self.coeff[1]}"
        return {
            "schema_version": SCHEMA_VERSION,
            "coeff": coeff,
            "dims": {str(d): v for d, v in sorted(self.dims.items())},
            "boundaries": {str(r): m.to_doc() for r, m in sorted(self.boundaries.items())},
        }


def chain_complex(
    sc: SimplicialComplex, coeff="Z", empty_convention: bool = True
) -> ChainComplex:
    """Reduced chain complex of a simplicial complex.

    Boundary signs alternate over the ascending-vertex ordering of each
    simplex; the degree-0 boundary is the augmentation.

    >>> point = SimplicialComplex.from_facets(("a",), [(0,)])
    >>> chain_complex(point).dims
    {-1: 1, 0: 1}
    """
    dims: dict[int, int] = {}
    boundaries: dict[int, SparseIntMatrix] = {}
    nonempty = bool(sc.vertices)
    if nonempty or empty_convention:
        dims[-1] = 1
    for d, level in enumerate(sc.simplices):
        dims[d] = len(level)
    if nonempty:
        boundaries[0] = SparseIntMatrix(
            1, len(sc.simplices[0]), {(0, j): 1 for j in range(len(sc.simplices[0]))}
        )
    for d in range(1, len(sc.simplices)):
        entries = {}
        for col, s in enumerate(sc.simplices[d]):
            for i in range(d + 1):
                face = s[:i] + s[i + 1 :]
                entries[(sc.simplex_index(face), col)] = (-1) ** i
        boundaries[d] = SparseIntMatrix(len(sc.simplices[d - 1]), len(sc.simplices[d]), entries)
    return ChainComplex(coeff, dims, boundaries)


def _sort_sign(seq: tuple[int, ...]) -> int:
    """Sign of the permutation that sorts seq (distinct entries)."""
    inversions = sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )
    return -1 if inversions % 2 else 1


@dataclass
class ChainMap:
    """A chain map between reduced chain complexes, one matrix per degree."""

    source: ChainComplex
    target: ChainComplex
    matrices: dict[int, SparseIntMatrix]

    def verify(self):
        """Check commutation with the boundaries over the coefficients."""
        for r, bdry in self.source.boundaries.items():
            f_here = self.matrices.get(r)
            f_below = self.matrices.get(r - 1)
            tgt_bdry = self.target.boundaries.get(r)
            if f_here is None or f_below is None or tgt_bdry is None:
                raise StructuralError(f"chain map is missing degree {r} data")
            lhs = tgt_bdry.matmul(f_here)
            rhs = f_below.matmul(bdry)
            if self.source.coeff == "Z":
                ok = lhs.entries == rhs.entries
            else:
                p = self.source.coeff[1]
                diff = {
                    k: (lhs.entry(*k) - rhs.entry(*k)) % p
                    for k in set(lhs.entries) | set(rhs.entries)
                }
                ok = all(v == 0 for v in diff.values())
            if not ok:
                raise StructuralError(f"chain map fails to commute at degree {r}")

    def compose(self, other: ChainMap) -> ChainMap:
        """self after other."""
        mats = {
            r: self.matrices[r].matmul(other.matrices[r])
            for r in self.matrices
            if r in other.matrices
        }
        return ChainMap(other.source, self.target, mats)

    def is_identity(self) -> bool:
        return all(
            m.entries == SparseIntMatrix.identity(m.rows).entries
            for m in self.matrices.values()
        )


def induced_chain_map(
    sc: SimplicialComplex, vertex_map: dict[str, str], coeff="Z"
) -> ChainMap:
    """Chain map induced by a simplicial vertex bijection of sc to itself.

    Each simplex must land on a simplex (checked; the offending simplex is
    named otherwise). The matrix entry is the sign of the permutation that
    sorts the image vertices.
    """
    if set(vertex_map) != set(sc.vertices) or set(vertex_map.values()) != set(sc.vertices):
        raise StructuralError("vertex map is not a bijection on the vertex set")
    pos = {v: i for i, v in enumerate(sc.vertices)}
    img = {i: pos[vertex_map[v]] for i, v in enumerate(sc.vertices)}
    cc = chain_complex(sc, coeff)
    matrices: dict[int, SparseIntMatrix] = {-1: SparseIntMatrix(1, 1, {(0, 0): 1})}
    for d, level in enumerate(sc.simplices):
        entries = {}
        for col, s in enumerate(level):
            image = tuple(img[i] for i in s)
            key = tuple(sorted(image))
            if len(set(key)) != len(key) or not sc.has_simplex(key):
                labels = tuple(sc.vertices[i] for i in s)
                raise StructuralError(
                    f"image of simplex {labels!r} is not a simplex"
                )
            entries[(sc.simplex_index(key), col)] = _sort_sign(image)
        matrices[d] = SparseIntMatrix(len(level), len(level), entries)
    cm = ChainMap(cc, cc, matrices)
    cm.verify()
    return cm
