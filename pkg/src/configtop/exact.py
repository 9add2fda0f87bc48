"""Exact linear algebra: sparse integer matrices, Smith normal form,
integer linear systems with unsolvability certificates, and dense
Gaussian elimination mod p.

All integer work is exact (Python ints); nothing here goes through
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .complexes import ChainComplex

SCHEMA_VERSION = 1


@dataclass
class SparseIntMatrix:
    """An integer matrix stored as {(row, col): value} with no zeros."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], int]

    def __post_init__(self):
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if v == 0:
                raise ValueError(f"explicit zero stored at ({i}, {j})")

    @staticmethod
    def from_triples(rows: int, cols: int, triples) -> SparseIntMatrix:
        entries: dict[tuple[int, int], int] = {}
        for i, j, v in triples:
            if (i, j) in entries:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            if v != 0:
                entries[(i, j)] = v
        return SparseIntMatrix(rows, cols, entries)

    @staticmethod
    def from_dense(dense) -> SparseIntMatrix:
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return SparseIntMatrix(
            rows, cols,
            {(i, j): v for i, r in enumerate(dense) for j, v in enumerate(r) if v},
        )

    @staticmethod
    def identity(n: int) -> SparseIntMatrix:
        return SparseIntMatrix(n, n, {(i, i): 1 for i in range(n)})

    def entry(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> SparseIntMatrix:
        return SparseIntMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def matvec(self, x) -> list[int]:
        if len(x) != self.cols:
            raise ValueError("vector length mismatch")
        out = [0] * self.rows
        for (i, j), v in self.entries.items():
            out[i] += v * x[j]
        return out

    def matmul(self, other: SparseIntMatrix) -> SparseIntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, dict[int, int]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, {})[j] = v
        acc: dict[tuple[int, int], int] = {}
        for (i, k), v in self.entries.items():
            for j, w in by_row.get(k, {}).items():
                key = (i, j)
                acc[key] = acc.get(key, 0) + v * w
        return SparseIntMatrix(
            self.rows, other.cols, {k: v for k, v in acc.items() if v}
        )

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[i, j, str(v)] for (i, j), v in sorted(self.entries.items())],
        }

    @staticmethod
    def from_doc(doc: dict) -> SparseIntMatrix:
        return SparseIntMatrix.from_triples(
            doc["rows"], doc["cols"], ((i, j, int(v)) for i, j, v in doc["entries"])
        )


@dataclass
class SNFResult:
    """U @ A @ V = diag(diagonal), entries positive, each dividing the next."""

    diagonal: tuple[int, ...]
    U: SparseIntMatrix | None
    V: SparseIntMatrix | None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


class _Eliminator:
    """Row/column elimination state shared by SNF and its transform-tracking
    variant. Rows are dicts col -> value; a per-column index of occupied
    rows keeps pivot searches cheap."""

    def __init__(self, a: SparseIntMatrix, with_transforms: bool):
        self.m, self.n = a.rows, a.cols
        self.row: dict[int, dict[int, int]] = {i: {} for i in range(self.m)}
        self.colrows: dict[int, set[int]] = {j: set() for j in range(self.n)}
        for (i, j), v in a.entries.items():
            self.row[i][j] = v
            self.colrows[j].add(i)
        self.with_transforms = with_transforms
        if with_transforms:
            # U accumulates row ops (rows of U); V accumulates column ops
            # (columns of V, stored as dicts row -> value).
            self.urow = [{i: 1} for i in range(self.m)]
            self.vcol = [{j: 1} for j in range(self.n)]

    def add_row(self, dst: int, src: int, mult: int):
        """row[dst] += mult * row[src], keeping indexes consistent."""
        if mult == 0:
            return
        dstrow = self.row[dst]
        for j, v in self.row[src].items():
            w = dstrow.get(j, 0) + mult * v
            if w:
                dstrow[j] = w
                self.colrows[j].add(dst)
            elif j in dstrow:
                del dstrow[j]
                self.colrows[j].discard(dst)
        if self.with_transforms:
            udst = self.urow[dst]
            for j, v in self.urow[src].items():
                w = udst.get(j, 0) + mult * v
                if w:
                    udst[j] = w
                elif j in udst:
                    del udst[j]

    def add_col(self, dst: int, src: int, mult: int):
        """col[dst] += mult * col[src]."""
        if mult == 0:
            return
        for i in list(self.colrows[src]):
            v = self.row[i][src]
            w = self.row[i].get(dst, 0) + mult * v
            if w:
                self.row[i][dst] = w
                self.colrows[dst].add(i)
            elif dst in self.row[i]:
                del self.row[i][dst]
                self.colrows[dst].discard(i)
        if self.with_transforms:
            vdst = self.vcol[dst]
            for i, v in self.vcol[src].items():
                w = vdst.get(i, 0) + mult * v
                if w:
                    vdst[i] = w
                elif i in vdst:
                    del vdst[i]

    def negate_row(self, r: int):
        for j in list(self.row[r]):
            self.row[r][j] = -self.row[r][j]
        if self.with_transforms:
            self.urow[r] = {j: -v for j, v in self.urow[r].items()}


def _select_pivot(elim: _Eliminator, remaining_cols: list[int]) -> tuple[int, int] | None:
    """Pinned pivot rule: smallest |value|, then leftmost column, then
    topmost row. Columns are scanned left to right, so the scan can stop
    at the first column that yields a unit."""
    best = None
    empties = []
    for j in remaining_cols:
        occupants = elim.colrows[j]
        if not occupants:
            empties.append(j)
            continue
        for i in occupants:
            key = (abs(elim.row[i][j]), j, i)
            if best is None or key < best:
                best = key
        if best is not None and best[0] == 1:
            break
    if empties:
        dead = set(empties)
        remaining_cols[:] = [j for j in remaining_cols if j not in dead]
    if best is None:
        return None
    return best[2], best[1]


def smith_normal_form(a: SparseIntMatrix, with_transforms: bool = True) -> SNFResult:
    """Smith normal form with unimodular transforms U, V.

    The diagonal is positive with each entry dividing the next. Pivots
    are chosen by the smallest-absolute-value rule with leftmost-column,
    then topmost-row tie breaks. When transforms are requested the
    identity U @ A @ V = diag is re-verified before returning.

    >>> smith_normal_form(SparseIntMatrix.from_dense([[2, 0], [0, 3]])).diagonal
    (1, 6)
    """
    elim = _Eliminator(a, with_transforms)
    remaining_cols = list(range(a.cols))
    active_rows = set(range(a.rows))
    pivots: list[tuple[int, int, int]] = []

    while True:
        found = _select_pivot(elim, remaining_cols)
        if found is None:
            break
        r, c = found
        if elim.row[r][c] < 0:
            elim.negate_row(r)
        piv = elim.row[r][c]

        dirty = False
        for i in list(elim.colrows[c]):
            if i == r:
                continue
            q = elim.row[i][c] // piv
            elim.add_row(i, r, -q)
            if c in elim.row[i]:
                dirty = True
        if dirty:
            continue  # smaller remainders exist; reselect

        for j in list(elim.row[r]):
            if j == c:
                continue
            q = elim.row[r][j] // piv
            # Column c holds only the pivot now, so this touches row r alone.
            elim.add_col(j, c, -q)
            if j in elim.row[r]:
                dirty = True
        if dirty:
            continue

        if piv > 1:
            offender = None
            for i in active_rows:
                if i == r:
                    continue
                for j, v in elim.row[i].items():
                    if v % piv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is not None:
                # Pull the offending row into the pivot row; the next pass
                # shrinks the pivot to a common divisor.
                elim.add_row(r, offender, 1)
                continue

        pivots.append((r, c, piv))
        active_rows.discard(r)
        remaining_cols.remove(c)
        elim.colrows[c].clear()

    diag = tuple(d for _, _, d in pivots)
    for da, db in zip(diag, diag[1:]):
        assert db % da == 0
    if not with_transforms:
        return SNFResult(diag, None, None)

    # Permute pivot rows/columns to the front, in pivot order; the rest
    # keep their relative order. Both permutations are unimodular.
    pivot_rows = [r for r, _, _ in pivots]
    pivot_cols = [c for _, c, _ in pivots]
    row_order = pivot_rows + sorted(set(range(a.rows)) - set(pivot_rows))
    col_order = pivot_cols + sorted(set(range(a.cols)) - set(pivot_cols))
    u = SparseIntMatrix(
        a.rows, a.rows,
        {(s, j): v for s, i in enumerate(row_order) for j, v in elim.urow[i].items()},
    )
    v = SparseIntMatrix(
        a.cols, a.cols,
        {(i, s): w for s, j in enumerate(col_order) for i, w in elim.vcol[j].items()},
    )
    product = u.matmul(a).matmul(v)
    expected = {(s, s): d for s, d in enumerate(diag)}
    assert product.entries == expected, "transform identity U A V = D failed"
    return SNFResult(diag, u, v)


def snf_diagonal(a: SparseIntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form only; skips transform bookkeeping."""
    return smith_normal_form(a, with_transforms=False).diagonal


def det_int(dense: list[list[int]]) -> int:
    """Exact determinant by fraction-free pivoting (for test-side checks)."""
    n = len(dense)
    m = [[Fraction(v) for v in row] for row in dense]
    sign = 1
    for c in range(n):
        pivot_row = next((r for r in range(c, n) if m[r][c]), None)
        if pivot_row is None:
            return 0
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for j in range(c, n):
                m[r][j] -= f * m[c][j]
    det = Fraction(sign)
    for i in range(n):
        det *= m[i][i]
    assert det.denominator == 1
    return int(det)


@dataclass
class IntegerSolveResult:
    """Outcome of A x = b over the integers.

    Exactly one of x and certificate is set. A divisibility certificate
    reports a pivot d that fails to divide the transformed right side;
    a rank certificate reports a nonzero transformed entry beyond the rank.
    """

    solvable: bool
    x: tuple[int, ...] | None
    certificate: dict | None


def solve_integer(a: SparseIntMatrix, b) -> IntegerSolveResult:
    """Solve A x = b in integers, or certify that no solution exists.

    >>> solve_integer(SparseIntMatrix.from_dense([[2, 3]]), [1]).solvable
    True
    >>> solve_integer(SparseIntMatrix.from_dense([[2]]), [1]).certificate["kind"]
    'divisibility'
    """
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    snf = smith_normal_form(a, with_transforms=True)
    c = snf.U.matvec(list(b))
    r = snf.rank
    for i, d in enumerate(snf.diagonal):
        if c[i] % d:
            return IntegerSolveResult(
                False, None,
                {"kind": "divisibility", "row": i, "value": c[i], "divisor": d},
            )
    for i in range(r, a.rows):
        if c[i]:
            return IntegerSolveResult(
                False, None, {"kind": "rank", "row": i, "value": c[i]}
            )
    y = [c[i] // snf.diagonal[i] for i in range(r)] + [0] * (a.cols - r)
    x = snf.V.matvec(y)
    assert a.matvec(x) == list(b), "solution failed re-verification"
    return IntegerSolveResult(True, tuple(x), None)


# ---------------------------------------------------------------------------
# Dense elimination mod p.


def fp_rref(rows: list[list[int]], p: int, reverse: bool = False):
    """Row-reduce a dense matrix mod p. Returns (rref, pivot_columns).

    With reverse=True columns are eliminated right to left (an independent
    elimination order; ranks must agree with the forward pass).
    """
    mat = [[v % p for v in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    col_seq = range(ncols - 1, -1, -1) if reverse else range(ncols)
    pivots = []
    lead = 0
    for j in col_seq:
        pr = next((i for i in range(lead, nrows) if mat[i][j] % p), None)
        if pr is None:
            continue
        mat[lead], mat[pr] = mat[pr], mat[lead]
        inv = pow(mat[lead][j], p - 2, p)
        mat[lead] = [(v * inv) % p for v in mat[lead]]
        for i in range(nrows):
            if i != lead and mat[i][j]:
                f = mat[i][j]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[lead])]
        pivots.append(j)
        lead += 1
        if lead == nrows:
            break
    return mat, pivots


def fp_rank(rows: list[list[int]], p: int, reverse: bool = False) -> int:
    return len(fp_rref(rows, p, reverse=reverse)[1])


def fp_nullspace(rows: list[list[int]], p: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of the right null space mod p, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    rref, pivots = fp_rref(rows, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for lead, j in enumerate(pivots):
            vec[j] = (-rref[lead][free]) % p
        basis.append(vec)
    return basis


class FpSpan:
    """Incrementally maintained row-echelon span of vectors mod p."""

    def __init__(self, p: int):
        self.p = p
        self.rows: list[tuple[int, list[int]]] = []  # (pivot position, row)

    def reduce(self, v: list[int]) -> list[int]:
        """Residue of v modulo the current span."""
        w = [x % self.p for x in v]
        for j, row in self.rows:
            if w[j]:
                f = w[j]
                w = [(a - f * b) % self.p for a, b in zip(w, row)]
        return w

    def add(self, v: list[int]) -> bool:
        """Add v if independent of the span; report whether it was."""
        w = self.reduce(v)
        lead = next((j for j, x in enumerate(w) if x), None)
        if lead is None:
            return False
        inv = pow(w[lead], self.p - 2, self.p)
        self.rows.append((lead, [(x * inv) % self.p for x in w]))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


class FpSolver:
    """Repeated solving of M w = z for a fixed full-column-rank M mod p.

    Used to express cycles in a chosen homology-plus-boundary basis."""

    def __init__(self, columns: list[list[int]], p: int):
        self.p = p
        self.ncols = len(columns)
        self.nrows = len(columns[0]) if columns else 0
        # Eliminate on [M | I] to record the row operations.
        aug = []
        for i in range(self.nrows):
            row = [col[i] % p for col in columns]
            row += [1 if t == i else 0 for t in range(self.nrows)]
            aug.append(row)
        rref, pivots = fp_rref(aug, p)
        if [j for j in pivots if j < self.ncols] != list(range(self.ncols)):
            raise ValueError("columns are not independent")
        self.ops = [row[self.ncols:] for row in rref[: self.ncols]]

    def solve(self, z: list[int]) -> list[int]:
        w = [sum(r * v for r, v in zip(op, z)) % self.p for op in self.ops]
        return w


@dataclass
class FpDegreeData:
    """Mod-p homology at one degree: cycle reps and a projection map."""

    p: int
    basis: tuple[tuple[int, ...], ...]
    boundary_cols: tuple[tuple[int, ...], ...]
    _solver: FpSolver | None

    def project(self, z: list[int]) -> tuple[int, ...]:
        """Coordinates of a cycle's class in the stored basis."""
        if not self.basis:
            return ()
        w = self._solver.solve(z)
        coords = tuple(w[: len(self.basis)])
        # Confirm z really was in the span (cycle + boundary part).
        combo = [0] * len(z)
        cols = list(self.basis) + list(self.boundary_cols)
        for c, col in zip(w, cols):
            for i, v in enumerate(col):
                combo[i] = (combo[i] + c * v) % self.p
        if combo != [v % self.p for v in z]:
            raise ValueError("vector is not a cycle modulo boundaries")
        return coords


@dataclass
class HomologySummary:
    """Homology of a chain complex, per degree.

    Over Z: betti numbers and torsion coefficients (divisibility-ordered).
    Over F_p: dimensions plus cycle representatives with projection.
    """

    coeff: str | tuple[str, int]
    betti: dict[int, int]
    torsion: dict[int, tuple[int, ...]]
    fp_data: dict[int, FpDegreeData] | None = None

    def rank(self, degree: int) -> int:
        return self.betti.get(degree, 0)

    def torsion_at(self, degree: int) -> tuple[int, ...]:
        return self.torsion.get(degree, ())

    def nonzero_degrees(self) -> tuple[int, ...]:
        degs = {d for d, b in self.betti.items() if b}
        degs |= {d for d, t in self.torsion.items() if t}
        return tuple(sorted(degs))

    def to_doc(self) -> dict:
        coeff = self.coeff if isinstance(self.coeff, str) else f"F{self.coeff[1]}"
        return {
            "schema_version": SCHEMA_VERSION,
            "coeff": coeff,
            "betti": {str(d): b for d, b in sorted(self.betti.items())},
            "torsion": {
                str(d): list(t) for d, t in sorted(self.torsion.items()) if t
            },
        }


def homology(cc: ChainComplex) -> HomologySummary:
    """Homology of a chain complex over its coefficient ring.

    Over Z the ranks and torsion come from Smith forms of the boundary
    matrices. Over F_p, Gaussian elimination is run in two independent
    column orders and the ranks are required to agree.
    """
    degrees = sorted(cc.dims)
    if cc.coeff == "Z":
        rank_of: dict[int, int] = {}
        diag_of: dict[int, tuple[int, ...]] = {}
        for r, mat in cc.boundaries.items():
            diag_of[r] = snf_diagonal(mat)
            rank_of[r] = len(diag_of[r])
        betti = {}
        torsion = {}
        for d in degrees:
            betti[d] = cc.dims[d] - rank_of.get(d, 0) - rank_of.get(d + 1, 0)
            torsion[d] = tuple(v for v in diag_of.get(d + 1, ()) if v > 1)
        return HomologySummary("Z", betti, torsion)

    _, p = cc.coeff
    betti = {}
    fp_data: dict[int, FpDegreeData] = {}
    dense = {r: mat.to_dense() for r, mat in cc.boundaries.items()}
    rank_of = {}
    for r, mat in dense.items():
        fwd = fp_rank(mat, p)
        rev = fp_rank(mat, p, reverse=True)
        assert fwd == rev, "elimination-order cross-check failed"
        rank_of[r] = fwd
    for d in degrees:
        dim = cc.dims[d]
        betti[d] = dim - rank_of.get(d, 0) - rank_of.get(d + 1, 0)
        if betti[d] == 0:
            fp_data[d] = FpDegreeData(p, (), (), None)
            continue
        # Cycles: null space of the outgoing boundary (whole space if none).
        if d in dense:
            cycles = fp_nullspace(dense[d], p, ncols=dim)
        else:
            cycles = [[1 if i == t else 0 for i in range(dim)] for t in range(dim)]
        # Boundaries: independent columns of the incoming boundary matrix.
        bdry_cols: list[list[int]] = []
        span = FpSpan(p)
        if d + 1 in dense and cc.dims[d + 1]:
            for col in zip(*dense[d + 1]):
                col = [v % p for v in col]
                if span.add(col):
                    bdry_cols.append(col)
                if span.rank == rank_of[d + 1]:
                    break
        # Homology reps: cycles independent modulo the boundary columns.
        reps: list[list[int]] = []
        for z in cycles:
            if span.add(z):
                reps.append(z)
            if len(reps) == betti[d]:
                break
        solver = FpSolver(reps + bdry_cols, p)
        fp_data[d] = FpDegreeData(
            p,
            tuple(tuple(z) for z in reps),
            tuple(tuple(c) for c in bdry_cols),
            solver,
        )
    return HomologySummary(("Fp", p), betti, {}, fp_data)
