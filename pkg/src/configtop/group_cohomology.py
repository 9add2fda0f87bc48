"""The mod-p cohomology ring of an elementary abelian group, Euler
classes of its representations, and index-style truncation certificates.

For p = 2 the ring is F_2[t_1..t_k] with each t_i in degree 1. For odd p
it is F_p[t_1..t_k] tensor an exterior algebra on e_1..e_k, with t_i in
degree 2 and e_i in degree 1. Elements are stored as dictionaries from
(exterior bitmask, polynomial exponent tuple) to a nonzero coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime
from .errors import DomainError, SizeLimitError, StructuralError

SCHEMA_VERSION = 1

DEFAULT_MAX_POINTS = 32  # cap on p^k for Euler class expansion

TermKey = tuple[int, tuple[int, ...]]


def _ordering_sign(mask_a: int, mask_b: int) -> int:
    """Sign from interleaving two ascending exterior monomials: the parity
    of pairs (a in A, b in B) with b < a."""
    swaps = 0
    seen_b = 0
    for pos in range(max(mask_a.bit_length(), mask_b.bit_length())):
        bit = 1 << pos
        if mask_b & bit:
            seen_b += 1
        if mask_a & bit:
            swaps += seen_b
    return -1 if swaps % 2 else 1


@dataclass(frozen=True)
class GroupCohomologyElement:
    """An element of H^*((Z/p)^k; F_p), canonically sorted."""

    p: int
    k: int
    terms: tuple[tuple[TermKey, int], ...]

    def __post_init__(self):
        for (mask, exps), coeff in self.terms:
            if len(exps) != self.k:
                raise ValueError("exponent tuple length differs from k")
            if self.p == 2 and mask:
                raise ValueError("p = 2 has no exterior generators")
            if mask >> self.k:
                raise ValueError("exterior mask beyond k generators")
            if not 0 < coeff < self.p:
                raise ValueError(f"coefficient {coeff} not reduced mod {self.p}")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")

    @staticmethod
    def make(p: int, k: int, raw: dict[TermKey, int]) -> GroupCohomologyElement:
        cleaned = {key: c % p for key, c in raw.items() if c % p}
        return GroupCohomologyElement(p, k, tuple(sorted(cleaned.items())))

    @staticmethod
    def zero(p: int, k: int) -> GroupCohomologyElement:
        return GroupCohomologyElement(p, k, ())

    @staticmethod
    def one(p: int, k: int) -> GroupCohomologyElement:
        return GroupCohomologyElement.make(p, k, {(0, (0,) * k): 1})

    @staticmethod
    def t_gen(p: int, k: int, i: int) -> GroupCohomologyElement:
        """The polynomial generator t_i (1-based)."""
        if not 1 <= i <= k:
            raise DomainError(f"generator index {i} outside 1..{k}")
        exps = tuple(1 if j == i - 1 else 0 for j in range(k))
        return GroupCohomologyElement.make(p, k, {(0, exps): 1})

    @staticmethod
    def e_gen(p: int, k: int, i: int) -> GroupCohomologyElement:
        """The exterior generator e_i (1-based); odd p only."""
        if p == 2:
            raise DomainError("p = 2 has no exterior generators")
        if not 1 <= i <= k:
            raise DomainError(f"generator index {i} outside 1..{k}")
        return GroupCohomologyElement.make(p, k, {(1 << (i - 1), (0,) * k): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def term_degree(self, key: TermKey) -> int:
        mask, exps = key
        poly_weight = 1 if self.p == 2 else 2
        return bin(mask).count("1") + poly_weight * sum(exps)

    def homogeneous_degrees(self) -> tuple[int, ...]:
        return tuple(sorted({self.term_degree(key) for key, _ in self.terms}))

    def min_degree(self) -> int | None:
        degs = self.homogeneous_degrees()
        return degs[0] if degs else None

    def homogeneous_part(self, degree: int) -> GroupCohomologyElement:
        return GroupCohomologyElement(
            self.p,
            self.k,
            tuple((key, c) for key, c in self.terms if self.term_degree(key) == degree),
        )

    def is_polynomial(self) -> bool:
        return all(mask == 0 for (mask, _), _ in self.terms)

    def __add__(self, other: GroupCohomologyElement) -> GroupCohomologyElement:
        self._check_ring(other)
        acc = dict(self.terms)
        for key, c in other.terms:
            acc[key] = acc.get(key, 0) + c
        return GroupCohomologyElement.make(self.p, self.k, acc)

    def __neg__(self) -> GroupCohomologyElement:
        return self.scale(self.p - 1)

    def __sub__(self, other: GroupCohomologyElement) -> GroupCohomologyElement:
        return self + (-other)

    def scale(self, c: int) -> GroupCohomologyElement:
        return GroupCohomologyElement.make(
            self.p, self.k, {key: v * c for key, v in self.terms}
        )

    def __mul__(self, other: GroupCohomologyElement) -> GroupCohomologyElement:
        return gc_multiply(self, other)

    def __pow__(self, n: int) -> GroupCohomologyElement:
        if n < 0:
            raise DomainError("negative powers are not defined here")
        out = GroupCohomologyElement.one(self.p, self.k)
        base = self
        while n:
            if n & 1:
                out = gc_multiply(out, base)
            base_needed = n >> 1
            if base_needed:
                base = gc_multiply(base, base)
            n = base_needed
        return out

    def _check_ring(self, other: GroupCohomologyElement):
        if (self.p, self.k) != (other.p, other.k):
            raise DomainError(
                f"ring mismatch: (p={self.p}, k={self.k}) vs (p={other.p}, k={other.k})"
            )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for (mask, exps), coeff in self.terms:
            factors = []
            if coeff != 1 or (mask == 0 and not any(exps)):
                factors.append(str(coeff))
            for i in range(self.k):
                if mask & (1 << i):
                    factors.append(f"e{i + 1}")
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"t{i + 1}")
                elif e > 1:
                    factors.append(f"t{i + 1}^{e}")
            chunks.append("*".join(factors))
        return " + ".join(chunks)

    def to_doc(self) -> dict:
        by_mask: dict[int, list] = {}
        for (mask, exps), coeff in self.terms:
            by_mask.setdefault(mask, []).append({"exps": list(exps), "coeff": coeff})
        return {
            "schema_version": SCHEMA_VERSION,
            "p": self.p,
            "k": self.k,
            "terms": [
                {"e_monomial": mask, "poly": polys}
                for mask, polys in sorted(by_mask.items())
            ],
        }

    @staticmethod
    def from_doc(doc: dict) -> GroupCohomologyElement:
        raw: dict[TermKey, int] = {}
        for t in doc["terms"]:
            mask = t["e_monomial"]
            for mono in t["poly"]:
                raw[(mask, tuple(mono["exps"]))] = mono["coeff"]
        return GroupCohomologyElement.make(doc["p"], doc["k"], raw)


def gc_multiply(
    x: GroupCohomologyElement, y: GroupCohomologyElement
) -> GroupCohomologyElement:
    """Product in the cohomology ring (Koszul signs on exterior parts).

    >>> t1 = GroupCohomologyElement.t_gen(2, 2, 1)
    >>> t2 = GroupCohomologyElement.t_gen(2, 2, 2)
    >>> str(gc_multiply(t1, t2))
    't1*t2'
    """
    x._check_ring(y)
    p, k = x.p, x.k
    acc: dict[TermKey, int] = {}
    for (ma, ea), ca in x.terms:
        for (mb, eb), cb in y.terms:
            if ma & mb:
                continue  # repeated exterior generator squares to zero
            sign = _ordering_sign(ma, mb)
            key = (ma | mb, tuple(a + b for a, b in zip(ea, eb)))
            acc[key] = acc.get(key, 0) + sign * ca * cb
    return GroupCohomologyElement.make(p, k, acc)


def _echelon_basis(vectors, p: int, k: int) -> list[tuple[int, ...]]:
    """Canonical (reduced row echelon) basis of the span of the vectors."""
    rows = [list(v) for v in vectors]
    for v in rows:
        if len(v) != k:
            raise DomainError(f"subgroup vector {v!r} is not length {k}")
    basis: list[list[int]] = []
    for v in rows:
        w = [x % p for x in v]
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if w[lead]:
                f = w[lead]
                w = [(a - f * c) % p for a, c in zip(w, b)]
        if any(w):
            lead = next(i for i, x in enumerate(w) if x)
            inv = pow(w[lead], p - 2, p)
            basis.append([(x * inv) % p for x in w])
    basis.sort(key=lambda b: next(i for i, x in enumerate(b) if x))
    # Back-substitute for full reduction.
    for i, b in enumerate(basis):
        for j, other in enumerate(basis):
            if i == j:
                continue
            lead = next(t for t, x in enumerate(b) if x)
            if other[lead]:
                f = other[lead]
                basis[j] = [(a - f * c) % p for a, c in zip(other, b)]
    return [tuple(b) for b in basis]


def restrict(x: GroupCohomologyElement, subgroup_vectors) -> GroupCohomologyElement:
    """Restriction to the subgroup spanned by the given vectors of F_p^k.

    The result lives in the ring of a rank-h group, h the span's dimension,
    written in the echelon basis of the span. Both t_i and e_i restrict
    through the same linear map, keeping Bockstein compatibility. The zero
    subgroup is allowed: everything in positive degree dies.
    """
    p, k = x.p, x.k
    basis = _echelon_basis(subgroup_vectors, p, k)
    h = len(basis)
    one = GroupCohomologyElement.one(p, h)
    t_images = []
    e_images = []
    for i in range(k):
        t_img = GroupCohomologyElement.zero(p, h)
        e_img = GroupCohomologyElement.zero(p, h)
        for j, b in enumerate(basis):
            if b[i]:
                t_img = t_img + GroupCohomologyElement.t_gen(p, h, j + 1).scale(b[i])
                if p != 2:
                    e_img = e_img + GroupCohomologyElement.e_gen(p, h, j + 1).scale(b[i])
        t_images.append(t_img)
        e_images.append(e_img)
    out = GroupCohomologyElement.zero(p, h)
    for (mask, exps), coeff in x.terms:
        term = one.scale(coeff)
        for i in range(k):
            if mask & (1 << i):
                term = gc_multiply(term, e_images[i])
        for i, e in enumerate(exps):
            if e:
                term = gc_multiply(term, t_images[i] ** e)
        out = out + term
    return out


def _linear_form(p: int, k: int, alpha: tuple[int, ...]) -> GroupCohomologyElement:
    return GroupCohomologyElement.make(
        p,
        k,
        {
            (0, tuple(1 if j == i else 0 for j in range(k))): a
            for i, a in enumerate(alpha)
            if a % p
        },
    )


def _nonzero_vectors(p: int, k: int) -> list[tuple[int, ...]]:
    vecs = [()]
    for _ in range(k):
        vecs = [v + (c,) for v in vecs for c in range(p)]
    return [v for v in vecs if any(v)]


def _projective_representatives(p: int, k: int) -> list[tuple[int, ...]]:
    """One vector per projective point, normalized to leading coefficient 1."""
    return [
        v
        for v in _nonzero_vectors(p, k)
        if v[next(i for i, x in enumerate(v) if x)] == 1
    ]


def euler_class_zeta(
    p: int, k: int, max_points: int = DEFAULT_MAX_POINTS
) -> GroupCohomologyElement:
    """Euler class of the reduced regular representation.

    For p = 2 this is the product of all nonzero linear forms in the t_i
    (degree 2^k - 1). For odd p it is the product over projective points,
    with leading coefficient normalized to 1, of (alpha . t)^((p-1)/2)
    (cohomological degree p^k - 1). The odd-p class is a designated square
    root: its square equals (-1)^m times the product of all nonzero linear
    forms, m = (p^k - 1)/(p - 1), by Wilson's theorem, so it is canonical
    up to a unit and every use here is unit-invariant.

    >>> str(euler_class_zeta(2, 2))
    't1*t2^2 + t1^2*t2'
    """
    if not is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if k < 1:
        raise DomainError("k must be at least 1")
    if p**k > max_points:
        raise SizeLimitError(f"p^k = {p ** k} over the expansion cap {max_points}")
    out = GroupCohomologyElement.one(p, k)
    if p == 2:
        for alpha in _nonzero_vectors(2, k):
            out = gc_multiply(out, _linear_form(2, k, alpha))
        return out
    half = (p - 1) // 2
    for alpha in _projective_representatives(p, k):
        out = gc_multiply(out, _linear_form(p, k, alpha) ** half)
    return out


def euler_class_zeta_H(
    p: int, k: int, subgroup_vectors, max_points: int = DEFAULT_MAX_POINTS
) -> GroupCohomologyElement:
    """Partial Euler class: only the linear forms not vanishing on H.

    H is the span of the given vectors and must be proper and nonzero.
    The surviving forms number p^k - p^(k-h), so the cohomological degree
    is p^k - p^(k-h) regardless of p.

    >>> str(euler_class_zeta_H(2, 2, [(1, 0)]))
    't1*t2 + t1^2'
    """
    if not is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if p**k > max_points:
        raise SizeLimitError(f"p^k = {p ** k} over the expansion cap {max_points}")
    basis = _echelon_basis(subgroup_vectors, p, k)
    if not 0 < len(basis) < k:
        raise DomainError(
            f"subgroup dimension {len(basis)} must be strictly between 0 and {k}"
        )

    def survives(alpha: tuple[int, ...]) -> bool:
        return any(sum(a * b for a, b in zip(alpha, h)) % p for h in basis)

    out = GroupCohomologyElement.one(p, k)
    if p == 2:
        for alpha in _nonzero_vectors(2, k):
            if survives(alpha):
                out = gc_multiply(out, _linear_form(2, k, alpha))
        return out
    half = (p - 1) // 2
    for alpha in _projective_representatives(p, k):
        if survives(alpha):
            out = gc_multiply(out, _linear_form(p, k, alpha) ** half)
    return out


def poly_divides(
    f: GroupCohomologyElement, g: GroupCohomologyElement
) -> tuple[bool, GroupCohomologyElement | None]:
    """Exact division test for polynomial-part elements over F_p.

    Single-divisor reduction by leading terms (lexicographic order) is
    exact for divisibility: if f divides g the leading term of f divides
    the leading term of every partial remainder. A claimed quotient is
    re-verified by multiplication.

    >>> t1 = GroupCohomologyElement.t_gen(2, 2, 1)
    >>> t2 = GroupCohomologyElement.t_gen(2, 2, 2)
    >>> poly_divides(t1 + t2, gc_multiply(t1, t2))[0]
    False
    """
    f._check_ring(g)
    if not (f.is_polynomial() and g.is_polynomial()):
        raise DomainError("division is defined on polynomial parts only")
    if f.is_zero():
        raise DomainError("division by zero")
    p, k = f.p, f.k

    def leading(x: GroupCohomologyElement) -> tuple[tuple[int, ...], int]:
        key = max(exps for (_, exps), _ in x.terms)
        coeff = dict(x.terms)[(0, key)]
        return key, coeff

    lf, cf = leading(f)
    cf_inv = pow(cf, p - 2, p)
    quotient = GroupCohomologyElement.zero(p, k)
    rest = g
    while not rest.is_zero():
        lg, cg = leading(rest)
        if any(a < b for a, b in zip(lg, lf)):
            return False, None
        qkey = tuple(a - b for a, b in zip(lg, lf))
        qterm = GroupCohomologyElement.make(p, k, {(0, qkey): cg * cf_inv})
        quotient = quotient + qterm
        rest = rest - gc_multiply(qterm, f)
    assert gc_multiply(quotient, f).terms == g.terms
    return True, quotient


@dataclass(frozen=True)
class IdealDescriptor:
    """A computable ideal: a degree truncation or a principal ideal."""

    kind: str  # "truncation" | "principal"
    p: int
    k: int
    min_degree: int | None = None
    generator: GroupCohomologyElement | None = None

    def contains(self, x: GroupCohomologyElement) -> bool:
        if (x.p, x.k) != (self.p, self.k):
            raise DomainError("element from a different ring")
        if x.is_zero():
            return True
        if self.kind == "truncation":
            return x.min_degree() >= self.min_degree
        if self.kind == "principal":
            return poly_divides(self.generator, x)[0]
        raise DomainError(f"unknown ideal kind {self.kind!r}")


@dataclass
class FHIndexPrimeReport:
    """Index of the configuration space of p points in R^d, for Z/p.

    The index is the full degree truncation H^(>= (d-1)(p-1)+1). The
    certificate element is the Euler-class power a map to the sphere of
    the (d-1)-fold test representation would force into the index; its
    degree is one short of the truncation, so no such map exists. The
    verdict field is derived from exactly that membership test.
    """

    p: int
    d: int
    truncation_degree: int
    ideal: IdealDescriptor
    generators: tuple[GroupCohomologyElement, ...]
    certificate: GroupCohomologyElement
    certificate_degree: int
    certificate_in_ideal: bool
    map_to_test_sphere_exists: bool

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "p": self.p,
            "d": self.d,
            "truncation_degree": self.truncation_degree,
            "generators": [str(g) for g in self.generators],
            "certificate": str(self.certificate),
            "certificate_degree": self.certificate_degree,
            "certificate_in_ideal": self.certificate_in_ideal,
            "map_to_test_sphere_exists": self.map_to_test_sphere_exists,
        }


def fh_index_prime(p: int, d: int) -> FHIndexPrimeReport:
    """Index truncation and no-map certificate for a prime number of points.

    >>> r = fh_index_prime(3, 2)
    >>> (r.truncation_degree, [str(g) for g in r.generators])
    (3, ['e1*t1', 't1^2'])
    """
    if not is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if d < 1:
        raise DomainError("d must be at least 1")
    m = (d - 1) * (p - 1) + 1
    t = GroupCohomologyElement.t_gen(p, 1, 1)
    if p == 2:
        generators = (t ** m,)
        certificate = t ** (m - 1)
    else:
        a = (d - 1) * (p - 1) // 2
        e = GroupCohomologyElement.e_gen(p, 1, 1)
        generators = (gc_multiply(e, t ** a), t ** (a + 1))
        certificate = t ** a
    ideal = IdealDescriptor("truncation", p, 1, min_degree=m)
    cert_deg = certificate.min_degree() or 0
    in_ideal = ideal.contains(certificate)
    assert cert_deg == m - 1
    return FHIndexPrimeReport(
        p=p,
        d=d,
        truncation_degree=m,
        ideal=ideal,
        generators=generators,
        certificate=certificate,
        certificate_degree=cert_deg,
        certificate_in_ideal=in_ideal,
        map_to_test_sphere_exists=in_ideal,
    )


@dataclass
class FHIndexBoundsReport:
    """Degree bounds on the index for (Z/p)^k, from invariant subspaces.

    N is the smallest positive degree carried by a fully invariant
    subspace; the index contains nothing nonzero in degrees up to N+1,
    and degree N+1 is the first place the complement's equivariant
    cohomology can vanish.
    """

    p: int
    k: int
    d: int
    full_stab_degree: int
    index_trivial_through: int
    nonvanishing_degree: int
    cross_checked: bool
    note: str | None

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "p": self.p,
            "k": self.k,
            "d": self.d,
            "full_stab_degree": self.full_stab_degree,
            "index_trivial_through": self.index_trivial_through,
            "nonvanishing_degree": self.nonvanishing_degree,
            "cross_checked": self.cross_checked,
            "note": self.note,
        }


def fh_index_bounds(
    p: int, k: int, d: int, cross_check: bool = True, max_bell: int | None = None
) -> FHIndexBoundsReport:
    """Closed-form index bounds, optionally re-verified by the partition scan.

    >>> fh_index_bounds(2, 2, 2, cross_check=False).full_stab_degree
    2
    """
    if not is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if k < 1 or d < 2:
        raise DomainError("need k >= 1 and d >= 2")
    n = (d - 1) * (p**k - p ** (k - 1))
    cross_checked = False
    if cross_check:
        from .arrangements import full_stabilizer_scan
        from .partitions import DEFAULT_MAX_BELL

        cap = DEFAULT_MAX_BELL if max_bell is None else max_bell
        scan = full_stabilizer_scan(p, k, d, max_bell=cap)
        if scan.degree != n:
            raise StructuralError(
                f"scan degree {scan.degree} disagrees with closed form {n}"
            )
        cross_checked = True
    note = None
    if k == 1:
        note = (
            "for k = 1 the full truncation applies and these bounds agree "
            "with fh_index_prime"
        )
    return FHIndexBoundsReport(
        p=p,
        k=k,
        d=d,
        full_stab_degree=n,
        index_trivial_through=n + 1,
        nonvanishing_degree=n + 1,
        cross_checked=cross_checked,
        note=note,
    )


def multinomial_mod2(parts) -> int:
    """(sum parts)! / prod(parts!) mod 2, via binary digit disjointness.

    The multinomial is odd iff the binary digits of the parts never
    collide, i.e. popcounts add up across the sum.

    >>> multinomial_mod2([3, 0]), multinomial_mod2([1, 3]), multinomial_mod2([1, 2, 4])
    (1, 0, 1)
    """
    parts = list(parts)
    if any(v < 0 for v in parts):
        raise DomainError("parts must be nonnegative")
    total = sum(parts)
    digits = sum(bin(v).count("1") for v in parts)
    return 1 if digits == bin(total).count("1") else 0


@dataclass
class SWExpansion:
    """Expansion of the dual class in degrees forced by l and m.

    Candidates are exponent tuples (i_0..i_{m-1}) with
    sum(i_s * (2^m - 2^s)) equal to the target degree; survivors are the
    candidates with odd multinomial coefficient.
    """

    l: int
    m: int
    d: int
    k: int
    target_degree: int
    candidates: tuple[tuple[tuple[int, ...], int], ...]
    survivors: tuple[tuple[int, ...], ...]
    expected_survivor: tuple[int, ...]
    matches_expected: bool

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "l": self.l,
            "m": self.m,
            "d": self.d,
            "k": self.k,
            "target_degree": self.target_degree,
            "candidates": [[list(i), c] for i, c in self.candidates],
            "survivors": [list(i) for i in self.survivors],
            "expected_survivor": list(self.expected_survivor),
            "matches_expected": self.matches_expected,
        }


def dual_sw_expansion(l: int, m: int, max_exponent: int = 8) -> SWExpansion:
    """Mod-2 expansion of the top dual Stiefel-Whitney power for d = 2^l,
    k = 2^m.

    The only surviving monomial is w_{k-1}^(d-1): exponent tuple
    (d-1, 0, ..., 0).

    >>> dual_sw_expansion(2, 2).survivors
    ((3, 0),)
    """
    if l < 1 or m < 1:
        raise DomainError("need l >= 1 and m >= 1")
    if l > max_exponent or m > max_exponent:
        raise SizeLimitError(f"l, m over the cap {max_exponent}")
    d = 2**l
    k = 2**m
    target = (d - 1) * (k - 1)
    weights = [k - 2**s for s in range(m)]  # degree of w_{k - 2^s}
    solutions: list[tuple[int, ...]] = []

    def search(s: int, remaining: int, chosen: list[int]):
        if s == m:
            if remaining == 0:
                solutions.append(tuple(chosen))
            return
        w = weights[s]
        max_i = remaining // w
        for i in range(max_i + 1):
            chosen.append(i)
            search(s + 1, remaining - i * w, chosen)
            chosen.pop()

    search(0, target, [])
    candidates = tuple((i, multinomial_mod2(i)) for i in sorted(solutions))
    survivors = tuple(i for i, c in candidates if c)
    expected = tuple([d - 1] + [0] * (m - 1))
    return SWExpansion(
        l=l,
        m=m,
        d=d,
        k=k,
        target_degree=target,
        candidates=candidates,
        survivors=survivors,
        expected_survivor=expected,
        matches_expected=survivors == (expected,),
    )


def chisholm_bound(d: int, k: int) -> int:
    """d(k - alpha(k)) + alpha(k) - 1 for d a power of two, alpha = popcount.

    >>> chisholm_bound(2, 3), chisholm_bound(4, 4), chisholm_bound(2, 1)
    (3, 12, 0)
    """
    if d < 1 or d & (d - 1):
        raise DomainError(f"d = {d} is not a power of 2")
    if k < 1:
        raise DomainError("k must be at least 1")
    alpha = bin(k).count("1")
    return d * (k - alpha) + alpha - 1
