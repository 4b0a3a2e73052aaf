"""Exact character tables of finite permutation groups.

The table is computed modulo a prime p = 1 (mod exponent) via the common
eigenvectors of the class-algebra multiplication matrices, then lifted to
exact cyclotomic values through discrete Fourier sums of the modular
character values on element powers.  Every table is certified on
construction: row and column orthogonality hold exactly, degrees divide
the group order, and the squared degrees sum to it.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm
from typing import Iterable, Optional, Sequence

from .cyclotomic import Cyclotomic, from_rational, from_terms
from .errors import ensure
from .groups import ConjugacyClasses, FiniteGroup, Subgroup, conjugacy_classes

PRIME_SEARCH_BOUND = 10_000_000


class ClassFunction:
    """A function on conjugacy classes with exact cyclotomic values."""

    __slots__ = ("group", "classes", "values")

    def __init__(self, group: FiniteGroup, classes: ConjugacyClasses,
                 values: Iterable):
        vals = tuple(v if isinstance(v, Cyclotomic) else from_rational(v) for v in values)
        if len(vals) != classes.n_classes:
            raise ValueError(
                f"expected {classes.n_classes} class values, got {len(vals)}"
            )
        self.group = group
        self.classes = classes
        self.values = vals

    def value_at(self, element_index: int) -> Cyclotomic:
        return self.values[self.classes.class_of[element_index]]

    def _same_domain(self, other: "ClassFunction") -> None:
        if self.group is not other.group or self.classes is not other.classes:
            raise ValueError("class functions live on different groups")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_domain(other)
        return ClassFunction(self.group, self.classes,
                             [a + b for a, b in zip(self.values, other.values)])

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_domain(other)
        return ClassFunction(self.group, self.classes,
                             [a * b for a, b in zip(self.values, other.values)])

    def scaled(self, factor) -> "ClassFunction":
        return ClassFunction(self.group, self.classes,
                             [v * factor for v in self.values])

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, self.classes,
                             [v.conjugate() for v in self.values])

    def __eq__(self, other):
        return (isinstance(other, ClassFunction) and self.group is other.group
                and all(a == b for a, b in zip(self.values, other.values)))

    __hash__ = None

    def __repr__(self):
        return f"ClassFunction({[str(v) for v in self.values]})"


class CharacterTable:
    """The irreducible characters of a group, in a canonical row order.

    Rows are sorted by degree, then by descending lexicographic order of
    their coefficient vectors at the group exponent, which puts the
    all-ones trivial character first.
    """

    def __init__(self, group: FiniteGroup, classes: ConjugacyClasses,
                 rows: Sequence[ClassFunction]):
        self.group = group
        self.classes = classes
        self.rows = tuple(rows)
        self.degrees = tuple(int(r.values[0].as_rational()) for r in self.rows)
        self.exponent = lcm(*(group.element_order(r) for r in classes.representatives))
        self._lookup: dict | None = None

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def row_key(self, values: Iterable[Cyclotomic]) -> tuple:
        return tuple(v.coeff_key(self.exponent) for v in values)

    def find_row(self, values: Iterable[Cyclotomic]) -> Optional[int]:
        """Index of the row with exactly these values, or None."""
        if self._lookup is None:
            self._lookup = {self.row_key(r.values): i for i, r in enumerate(self.rows)}
        return self._lookup.get(self.row_key(values))

    def __repr__(self):
        return f"<CharacterTable: {self.n_rows} rows, degrees {self.degrees}>"


def class_constants(G: FiniteGroup, classes: ConjugacyClasses) -> list[list[list[int]]]:
    """Structure constants a[i][j][k]: pairs (x, y) in C_i x C_j with x*y = rep_k."""
    r = classes.n_classes
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k in range(r):
        z0 = classes.representatives[k]
        for x in range(G.order):
            y = G.mul(G.inv(x), z0)
            a[classes.class_of[x]][classes.class_of[y]][k] += 1
    return a


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """The hermitian inner product (1/#G) sum over classes of size * f * conj(g)."""
    f._same_domain(g)
    total = from_rational(0)
    for size, a, b in zip(f.classes.sizes, f.values, g.values):
        total = total + a * b.conjugate() * size
    return total / f.group.order


def restrict(chi: ClassFunction, sub_group: FiniteGroup,
             sub_classes: ConjugacyClasses) -> ClassFunction:
    """Restrict a class function to a subgroup re-enumerated on the same points."""
    parent = chi.group
    values = []
    for rep in sub_classes.representatives:
        idx = parent.index_of(sub_group.elements[rep])
        values.append(chi.values[chi.classes.class_of[idx]])
    return ClassFunction(sub_group, sub_classes, values)


class PowerMap:
    """Class-level power maps: which class contains the k-th powers of a class."""

    def __init__(self, group: FiniteGroup, classes: ConjugacyClasses):
        self.group = group
        self.classes = classes
        self._maps: dict[int, tuple[int, ...]] = {}

    def map_for(self, k: int) -> tuple[int, ...]:
        if k < 0:
            raise ValueError(f"power must be nonnegative, got {k}")
        if k not in self._maps:
            out = []
            for ci, rep in enumerate(self.classes.representatives):
                out.append(self.classes.class_of[_element_power(self.group, rep, k)])
                # well-definedness spot check on a second class member
                members = self.classes.members[ci]
                if len(members) > 1:
                    other = self.classes.class_of[_element_power(self.group, members[1], k)]
                    ensure(other == out[-1], "power map is not constant on a class")
            self._maps[k] = tuple(out)
        return self._maps[k]

    def apply(self, class_index: int, k: int) -> int:
        return self.map_for(k)[class_index]


def power_map(G: FiniteGroup, classes: ConjugacyClasses, k: int) -> tuple[int, ...]:
    """The k-th power map on classes as an index tuple."""
    return PowerMap(G, classes).map_for(k)


def _element_power(G: FiniteGroup, element: int, k: int) -> int:
    k %= G.element_order(element)
    cur = 0
    for _ in range(k):
        cur = G.mul(cur, element)
    return cur


# -- modular linear algebra --------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _find_prime(group_order: int, exponent: int) -> int:
    """Smallest prime p = 1 (mod exponent) with p > 2*isqrt(group_order)."""
    start = 2 * isqrt(group_order) + 1
    p = start + ((1 - start) % exponent)
    while p <= PRIME_SEARCH_BOUND:
        if p > 1 and _is_prime(p) and group_order % p != 0:
            return p
        p += exponent
    raise RuntimeError(f"no usable prime below {PRIME_SEARCH_BOUND}")


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = []
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise RuntimeError(f"no primitive root modulo {p}")


def _rref_mod(rows: list[list[int]], p: int, width: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p, restricted to pivots in the first
    `width` columns.  Returns (rows, pivot column list)."""
    pivots = []
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(v - f * w) % p for v, w in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows, pivots


def _nullspace_mod(mat: list[list[int]], p: int) -> list[tuple[int, ...]]:
    """Basis of the kernel of a square matrix over F_p, deterministic order."""
    d = len(mat)
    rows = [list(row) for row in mat]
    rows, pivots = _rref_mod(rows, p, d)
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * d
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-rows[r][f]) % p
        basis.append(tuple(v))
    return basis


def _subspace_action(A: list[list[int]], basis: list[tuple[int, ...]],
                     p: int) -> list[list[int]]:
    """Matrix X with A * B = B * X, where B has the basis vectors as columns."""
    r = len(A)
    d = len(basis)
    images = []
    for v in basis:
        images.append(tuple(sum(A[i][k] * v[k] for k in range(r)) % p for i in range(r)))
    rows = [[basis[j][i] for j in range(d)] + [images[j][i] for j in range(d)]
            for i in range(r)]
    rows, pivots = _rref_mod(rows, p, d)
    ensure(pivots == list(range(d)), "invariant subspace basis is degenerate")
    return [rows[i][d:] for i in range(d)]


def _dixon_omegas(constants: list[list[list[int]]], r: int, p: int) -> list[tuple[int, ...]]:
    """Common eigenvector directions of the class matrices, normalized so the
    identity-class coordinate is 1."""
    spaces: list[list[tuple[int, ...]]] = [
        [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    ]
    for ci in range(1, r):
        if all(len(b) == 1 for b in spaces):
            break
        A = [[constants[ci][j][k] % p for k in range(r)] for j in range(r)]
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            d = len(basis)
            X = _subspace_action(A, basis, p)
            found = 0
            for lam in range(p):
                shifted = [[(X[i][j] - (lam if i == j else 0)) % p for j in range(d)]
                           for i in range(d)]
                null = _nullspace_mod(shifted, p)
                if null:
                    found += len(null)
                    new_spaces.append([
                        tuple(sum(vec[j] * basis[j][i] for j in range(d)) % p
                              for i in range(r))
                        for vec in null
                    ])
            ensure(found == d, "class matrix did not diagonalize")
        spaces = new_spaces
    ensure(all(len(b) == 1 for b in spaces), "common eigenspaces did not split to lines")
    omegas = []
    for basis in spaces:
        v = basis[0]
        ensure(v[0] % p != 0, "eigenvector vanishes on the identity class")
        scale = pow(v[0], p - 2, p)
        omegas.append(tuple((x * scale) % p for x in v))
    return omegas


def character_table(G: FiniteGroup, classes: ConjugacyClasses | None = None) -> CharacterTable:
    """The full irreducible character table, exactly, in canonical row order."""
    if classes is None:
        classes = conjugacy_classes(G)
    r = classes.n_classes
    exponent = lcm(*(G.element_order(rep) for rep in classes.representatives))
    p = _find_prime(G.order, exponent)
    constants = class_constants(G, classes)
    omegas = _dixon_omegas(constants, r, p)
    ensure(len(omegas) == r, "wrong number of modular characters")

    inv_class = [classes.class_of[G.inv(rep)] for rep in classes.representatives]
    size_inv = [pow(s, p - 2, p) for s in classes.sizes]
    gen = _primitive_root(p)
    theta = pow(gen, (p - 1) // exponent, p)

    rows = []
    for omega in omegas:
        c = sum(omega[k] * omega[inv_class[k]] * size_inv[k] for k in range(r)) % p
        ensure(c != 0, "degree normalization vanished")
        d2 = (G.order % p) * pow(c, p - 2, p) % p
        degree = next((t for t in range(1, (p + 1) // 2) if t * t % p == d2), None)
        ensure(degree is not None, "no degree square root in range")
        xvals = [degree * omega[k] * size_inv[k] % p for k in range(r)]

        values = []
        for k, rep in enumerate(classes.representatives):
            n = G.element_order(rep)
            theta_n = pow(theta, exponent // n, p)
            tn_pows = [pow(theta_n, t, p) for t in range(n)]
            xs = []
            cur = 0
            for _ in range(n):
                xs.append(xvals[classes.class_of[cur]])
                cur = G.mul(cur, rep)
            n_inv = pow(n, p - 2, p)
            mults = []
            for j in range(n):
                mj = n_inv * sum(xs[l] * tn_pows[(-j * l) % n] for l in range(n)) % p
                mults.append(mj)
            ensure(sum(mults) == degree, "lifted multiplicities do not sum to the degree")
            ensure(sum(m * tn_pows[j] for j, m in enumerate(mults)) % p == xvals[k],
                   "lifted value does not reduce back to the modular value")
            values.append(from_terms(n, ((j, m) for j, m in enumerate(mults) if m)))
        rows.append(ClassFunction(G, classes, values))

    rows.sort(key=lambda row: (
        int(row.values[0].as_rational()),
        tuple(tuple(-c for c in v.coeff_key(exponent)) for v in row.values),
    ))
    table = CharacterTable(G, classes, rows)
    _certify_table(table)
    return table


def _certify_table(table: CharacterTable) -> None:
    G, classes = table.group, table.classes
    r = table.n_rows
    ensure(sum(d * d for d in table.degrees) == G.order,
           "squared degrees do not sum to the group order")
    for d in table.degrees:
        ensure(d >= 1 and G.order % d == 0, "degree does not divide the group order")
    for row in table.rows:
        ensure(all(v.is_integral() for v in row.values),
               "character value is not an algebraic integer")
    for i in range(r):
        for j in range(i, r):
            ip = inner_product(table.rows[i], table.rows[j])
            ensure(ip == (1 if i == j else 0), "row orthogonality failed")
    for c1 in range(r):
        for c2 in range(c1, r):
            total = from_rational(0)
            for row in table.rows:
                total = total + row.values[c1] * row.values[c2].conjugate()
            want = Fraction(G.order, classes.sizes[c1]) if c1 == c2 else 0
            ensure(total == want, "column orthogonality failed")


def restriction_norm(chi: ClassFunction, normal: Subgroup) -> int:
    """The exact norm of the restriction to a subgroup: (1/#N) sum |chi|^2 over N."""
    total = from_rational(0)
    for n in normal.members:
        v = chi.value_at(n)
        total = total + v * v.conjugate()
    val = total / normal.order
    ensure(val.is_rational() and val.as_rational().denominator == 1,
           "restriction norm is not an integer")
    return int(val.as_rational())
