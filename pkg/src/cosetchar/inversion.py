"""Reconstruction of a character's orbit components from its coset values.

For cyclic Q = G/N generated by the coset q, any character Theta of G
splits as a sum over dual-group orbits of terms (lift of Psi) * rho, with
rho the orbit representative and Psi a character of Q.  The values of Psi
at powers of q are recovered from power sums: weighting Theta by conj(rho)
over the coset q^(d*m)N (m the stabilizer size) yields the d-th power sum
of a multiset of roots of unity, which Newton's identities and exact
synthetic division turn back into the multiset itself.  Every step is
certified: power sums must land in the small cyclotomic field of the
quotient, the symmetric-function polynomial must split into roots of unity,
the root count must match the d = 0 sum, the reconstruction must not
depend on the choice of m-th roots, and the components must add up to
Theta exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .chartable import ClassFunction, inner_product
from .cosets import CosetAnalysis
from .cyclotomic import Cyclotomic, from_rational, is_root_of_unity, root_of_unity
from .errors import HypothesisError, ensure


class Theta:
    """A genuine character of the group, validated on construction."""

    __slots__ = ("class_function", "multiplicities")

    def __init__(self, class_function: ClassFunction,
                 multiplicities: tuple[int, ...]):
        self.class_function = class_function
        self.multiplicities = multiplicities

    @classmethod
    def from_multiplicities(cls, table, multiplicities: Sequence[int]) -> "Theta":
        """The character with the given multiplicity of each table row."""
        mults = tuple(int(m) for m in multiplicities)
        if len(mults) != table.n_rows:
            raise ValueError(
                f"expected {table.n_rows} multiplicities, got {len(mults)}")
        if any(m < 0 for m in mults):
            raise ValueError("multiplicities must be nonnegative")
        values = [from_rational(0)] * table.classes.n_classes
        for m, row in zip(mults, table.rows):
            if m:
                values = [v + m * x for v, x in zip(values, row.values)]
        cf = ClassFunction(table.group, table.classes, values)
        return cls(cf, mults)

    @classmethod
    def from_values(cls, table, values) -> "Theta":
        """Validate an explicit value vector as a character.

        Raises HypothesisError unless every multiplicity, computed by exact
        inner products against the table, is a nonnegative integer.
        """
        cf = ClassFunction(table.group, table.classes, values)
        mults = []
        for row in table.rows:
            ip = inner_product(cf, row)
            if not ip.is_rational():
                raise HypothesisError("the given values are not a character")
            r = ip.as_rational()
            if r.denominator != 1 or r < 0:
                raise HypothesisError(
                    f"multiplicity {r} of row {len(mults)} is not a nonnegative integer")
            mults.append(int(r))
        rebuilt = cls.from_multiplicities(table, mults)
        ensure(rebuilt.class_function == cf,
               "multiplicities do not rebuild the given values")
        return cls(cf, tuple(mults))

    @property
    def degree(self) -> int:
        d = self.class_function.values[0]
        return int(d.as_rational())

    @property
    def values(self):
        return self.class_function.values


@dataclass(frozen=True)
class PsiComponent:
    """One orbit's share of the reconstruction.

    `lambdas` are the recovered roots (values at q^m), `mus` the chosen
    m-th roots of them (values at q), `psi_at_powers[j]` the value of Psi
    at q^j, and `component` the class function (lift of Psi) * rho."""

    orbit_index: int
    representative_row: int
    stabilizer_size: int
    lambdas: tuple[Cyclotomic, ...]
    mus: tuple[Cyclotomic, ...]
    psi_at_powers: tuple[Cyclotomic, ...]
    component: ClassFunction

    @property
    def dimension(self) -> int:
        return len(self.lambdas)


def psi_power_value(analysis: CosetAnalysis, theta: ClassFunction,
                    orbit_index: int, d: int, coset: int) -> Cyclotomic:
    """The d-th power sum for one orbit: the conj(rho)-weighted average of
    theta over the coset (q^(d*m))N, demoted to the quotient's field."""
    rec = analysis.orbits[orbit_index]
    rho = analysis.table.rows[rec.representative_row]
    m = len(rec.stabilizer)
    Q = analysis.quotient
    target = Q.power(coset, (d * m) % Q.size)
    sizes = analysis.classes.sizes
    total = from_rational(0)
    for k in analysis.classes_in(target):
        total = total + sizes[k] * rho.values[k].conjugate() * theta.values[k]
    value = total / (analysis.normal.order * m)
    small = value.demoted_to(Q.size)
    if small is None:
        raise HypothesisError(
            "a power sum does not lie in the cyclotomic field of the quotient; "
            "the input is not a character of the group")
    return small


def power_sums_to_multiset(power_sums: Sequence[Cyclotomic],
                           n: int) -> tuple[Cyclotomic, ...]:
    """Invert power sums into a multiset of n-th roots of unity.

    Newton's identities give the elementary symmetric functions, hence a
    monic polynomial whose roots are the multiset padded with zeros; the
    roots are then stripped off by exact synthetic division, trying each
    n-th root of unity in turn.  Raises HypothesisError when the polynomial
    does not split that way.
    """
    count = len(power_sums)
    if count == 0:
        return ()
    e = [from_rational(1)]
    for k in range(1, count + 1):
        total = from_rational(0)
        sign = 1
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i - 1]
            total = total + (term if sign > 0 else -term)
            sign = -sign
        e.append(total / k)
    poly = []
    sign = 1
    for k in range(count + 1):
        poly.append(e[k] if sign > 0 else -e[k])
        sign = -sign
    roots: list[Cyclotomic] = []
    for t in range(n):
        zeta = root_of_unity(n, t)
        while len(poly) > 1:
            quot = [poly[0]]
            for c in poly[1:]:
                quot.append(c + zeta * quot[-1])
            if quot[-1].is_zero():
                roots.append(zeta)
                poly = quot[:-1]
            else:
                break
    if any(not c.is_zero() for c in poly[1:]):
        raise HypothesisError(
            "power sums do not come from a multiset of roots of unity")
    for d in range(1, count + 1):
        total = from_rational(0)
        for r in roots:
            total = total + r ** d
        ensure(total == power_sums[d - 1],
               "extracted roots do not reproduce the power sums")
    return tuple(roots)


def choose_roots(lambdas: Sequence[Cyclotomic], m: int,
                 max_order: int) -> tuple[Cyclotomic, ...]:
    """The principal m-th root of each recovered value: lambda written as
    the power of a root of unity of minimal order, with the order scaled
    up by m and the exponent kept."""
    mus = []
    for lam in lambdas:
        rk = is_root_of_unity(lam, max_order)
        if rk is None:
            raise HypothesisError(f"{lam} is not a root of unity of order up to {max_order}")
        n0, k0 = rk
        mus.append(root_of_unity(n0 * m, k0))
    return tuple(mus)


def _psi_and_component(analysis: CosetAnalysis, orbit_index: int,
                       mus: Sequence[Cyclotomic], jmap: dict[int, int],
                       n: int) -> tuple[tuple[Cyclotomic, ...], ClassFunction]:
    rec = analysis.orbits[orbit_index]
    rho = analysis.table.rows[rec.representative_row]
    psi_at_powers = []
    for j in range(n):
        total = from_rational(0)
        for mu in mus:
            total = total + mu ** j
        psi_at_powers.append(total)
    Q = analysis.quotient
    values = []
    for k, rep in enumerate(analysis.classes.representatives):
        j = jmap[Q.coset_of[rep]]
        values.append(psi_at_powers[j] * rho.values[k])
    cf = ClassFunction(analysis.group, analysis.classes, values)
    return tuple(psi_at_powers), cf


def decompose(analysis: CosetAnalysis, theta: Union[Theta, ClassFunction],
              coset: Optional[int] = None) -> tuple[PsiComponent, ...]:
    """Split theta into its orbit components from coset data alone.

    Requires a cyclic quotient and a generating coset (the canonical
    generator when none is given).  Returns one component per orbit that
    actually occurs in theta; their sum is certified to equal theta.
    """
    Q = analysis.quotient
    if not Q.is_cyclic:
        raise HypothesisError("quotient group is not cyclic")
    q = Q.generator if coset is None else coset
    n = Q.size
    if Q.coset_order(q) != n:
        raise HypothesisError(
            f"coset {analysis.coset_label(q)} does not generate the quotient")
    cf = theta.class_function if isinstance(theta, Theta) else theta
    if cf.group is not analysis.group:
        raise ValueError("theta lives on a different group")
    jmap = {}
    cur = 0
    for j in range(n):
        jmap[cur] = j
        cur = Q.mult(cur, q)
    deg = cf.values[0]
    if not deg.is_rational() or deg.as_rational().denominator != 1:
        raise HypothesisError("theta has a non-integer degree")
    theta_degree = int(deg.as_rational())
    components = []
    running: Optional[ClassFunction] = None
    for oi, rec in enumerate(analysis.orbits):
        rho_degree = analysis.table.degrees[rec.representative_row]
        m = len(rec.stabilizer)
        ell = n // m
        nmax = theta_degree // rho_degree
        # power sums repeat with period ell because the underlying coset does
        distinct = [psi_power_value(analysis, cf, oi, d, q)
                    for d in range(min(nmax, ell) + 1)]
        p0 = distinct[0]
        if not p0.is_rational():
            raise HypothesisError("the d = 0 power sum is not rational")
        z0 = p0.as_rational()
        if z0.denominator != 1 or z0 < 0:
            raise HypothesisError(
                f"the d = 0 power sum {z0} is not a nonnegative integer")
        sums = [distinct[((d - 1) % ell) + 1] if ell <= nmax else distinct[d]
                for d in range(1, nmax + 1)]
        lambdas = power_sums_to_multiset(sums, n)
        for lam in lambdas:
            if not (lam ** ell == 1):
                raise HypothesisError(
                    "a recovered root is not compatible with the orbit's stabilizer")
        if len(lambdas) != z0:
            raise HypothesisError(
                f"recovered {len(lambdas)} roots but the d = 0 sum is {z0}")
        if not lambdas:
            continue
        mus = choose_roots(lambdas, m, n)
        for mu, lam in zip(mus, lambdas):
            ensure(mu ** m == lam, "chosen m-th root does not recover its value")
        psi_at_powers, component = _psi_and_component(analysis, oi, mus, jmap, n)
        if m > 1:
            zeta_m = root_of_unity(m)
            rotated = tuple(mu * zeta_m for mu in mus)
            _, alt = _psi_and_component(analysis, oi, rotated, jmap, n)
            ensure(alt == component,
                   "reconstruction depends on the choice of m-th roots")
        components.append(PsiComponent(
            orbit_index=oi,
            representative_row=rec.representative_row,
            stabilizer_size=m,
            lambdas=lambdas,
            mus=mus,
            psi_at_powers=psi_at_powers,
            component=component,
        ))
        running = component if running is None else running + component
    if running is None:
        running = ClassFunction(analysis.group, analysis.classes,
                                [from_rational(0)] * analysis.classes.n_classes)
    ensure(running == cf, "orbit components do not add up to the input")
    return tuple(components)
