"""Brute-force graded super traces on the free-fermion Fock spaces.

This module deliberately avoids eta functions and pentagonal-number
shortcuts: traces are assembled mode by mode from the raw eigenvalues of
a lattice automorphism, as products of per-mode binomials in exact
cyclotomic arithmetic, so they can serve as an independent oracle for the
eta-quotient formulas.

Conventions (central charge 12, so the grading prefactor is q^(-1/2)):
  untwisted sector: 24 fermionic modes at each energy n + 1/2, n >= 0;
  twisted sector:   24 fermionic modes at each energy n >= 1, plus the
                    4096-dimensional zero-mode space contributing its
                    super trace as a scalar and anchoring the series at q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import CycNumber, root_of_unity
from .errors import ValidationError
from .qseries import FracPowerSeries

UNTWISTED = "untwisted"
TWISTED = "twisted"


@dataclass(frozen=True)
class ModeSystem:
    """Eigenvalue data for one automorphism and one sector.

    eigen_thetas: the 24 eigenvalues as rationals theta (eigenvalue
    e^(2*pi*i*theta)), with repetition.  max_degree: exponent up to which
    the trace series is to be exact.
    """

    eigen_thetas: tuple
    sector: str
    max_degree: Fraction

    def __post_init__(self):
        if len(self.eigen_thetas) != 24:
            raise ValidationError("expected 24 eigenvalues, got %d" % len(self.eigen_thetas))
        if self.sector not in (UNTWISTED, TWISTED):
            raise ValidationError("unknown sector %r" % self.sector)
        if self.max_degree <= 0:
            raise ValidationError("max_degree must be positive")

    @staticmethod
    def from_shape(shape, sector, max_degree) -> "ModeSystem":
        thetas = []
        for t, mult in sorted(shape.eigenvalues().items()):
            thetas.extend([t] * mult)
        return ModeSystem(tuple(thetas), sector, Fraction(max_degree))

    def negated(self) -> "ModeSystem":
        return ModeSystem(
            tuple((Fraction(t) + Fraction(1, 2)) % 1 for t in self.eigen_thetas),
            self.sector,
            self.max_degree,
        )

    def grouped(self):
        counts = {}
        for t in self.eigen_thetas:
            counts[Fraction(t)] = counts.get(Fraction(t), 0) + 1
        return sorted(counts.items())


def _level_factor(groups, energy, order) -> FracPowerSeries:
    """prod over eigenvalues of (1 - eps * q^energy), exact."""
    factor = FracPowerSeries.monomial(1, 0, order)
    for theta, mult in groups:
        if theta == 0:
            eps = 1
        elif 2 * theta == 1:
            eps = -1
        else:
            eps = root_of_unity(theta)
        base = FracPowerSeries.monomial(1, 0, order) - FracPowerSeries.monomial(eps, energy, order)
        factor = factor * base**mult
    return factor


def untwisted_supertrace(ms: ModeSystem) -> FracPowerSeries:
    """str on the half-integer-moded Fock space: each mode of energy r and
    eigenvalue eps contributes a factor (1 - eps q^r); prefactor q^(-1/2)."""
    if ms.sector != UNTWISTED:
        raise ValidationError("mode system is not untwisted")
    groups = ms.grouped()
    work_order = ms.max_degree + Fraction(1, 2)
    total = FracPowerSeries.monomial(1, 0, work_order)
    n = 0
    while n + Fraction(1, 2) < work_order:
        total = total * _level_factor(groups, n + Fraction(1, 2), work_order)
        n += 1
    return total.shifted(Fraction(-1, 2))


def twisted_supertrace(ms: ModeSystem, c_value) -> FracPowerSeries:
    """str on the integer-moded Fock space: modes at energies n >= 1 and
    the zero-mode factor c_value; the series is anchored at q^1 (ground
    energy 3/2 minus c/24 = 1/2)."""
    if ms.sector != TWISTED:
        raise ValidationError("mode system is not twisted")
    order = ms.max_degree + 1
    groups = ms.grouped()
    total = FracPowerSeries.monomial(1, 0, order - 1)
    n = 1
    while n < order - 1:
        total = total * _level_factor(groups, n, order - 1)
        n += 1
    if isinstance(c_value, CycNumber) and c_value.is_rational():
        c_value = c_value.to_rational()
    return (total * c_value).shifted(1)


def assemble_supertrace(kind, g_data, neg_data, max_degree, twisted=False) -> FracPowerSeries:
    """Graded super trace on a Z/2-orbifold module, from mode products.

    g_data, neg_data: pairs (ModeSystem eigenvalues as tuple/shape thetas,
    zero-mode scalar) for the element and for its product with the central
    involution (eigenvalues negated).  kind "s" selects the faithful
    module A^0 + A^1_tw; kind "f" selects A^0 + A^0_tw; `twisted` selects
    the canonically-twisted partner in either case.  All four constituent
    traces are mode products; nothing is taken from the eta formulas.
    """
    max_degree = Fraction(max_degree)
    (thetas_g, c_g) = g_data
    (thetas_n, c_n) = neg_data
    ms_g = ModeSystem(tuple(thetas_g), UNTWISTED, max_degree)
    ms_n = ModeSystem(tuple(thetas_n), UNTWISTED, max_degree)
    tg = untwisted_supertrace(ms_g)
    tn = untwisted_supertrace(ms_n)
    tg_tw = twisted_supertrace(ModeSystem(tuple(thetas_g), TWISTED, max_degree), c_g)
    tn_tw = twisted_supertrace(ModeSystem(tuple(thetas_n), TWISTED, max_degree), c_n)
    if kind == "s":
        combo = (tg + tn + tg_tw - tn_tw) if not twisted else (tg - tn + tg_tw + tn_tw)
    elif kind == "f":
        combo = (tg + tn - tg_tw - tn_tw) if not twisted else (tg - tn - tg_tw + tn_tw)
    else:
        raise ValidationError("kind must be 's' or 'f'")
    return combo * Fraction(1, 2)


def subset_enumeration_supertrace(ms: ModeSystem, budget=3, c_value=1) -> FracPowerSeries:
    """Second oracle: explicitly enumerate every finite set of distinct
    fermionic modes whose state exponent is at most `budget` and sum the
    signed eigenvalue products, state by state.

    Generation-independent of the mode-product expansion (no series
    multiplication at all): the result is assembled from an exponent
    ledger over (q-power, root-of-unity power).
    """
    budget = Fraction(budget)
    level = 1
    for t in ms.eigen_thetas:
        d = Fraction(t).denominator
        level = level * d // gcd(level, d)
    zexps = [int(Fraction(t) * level) for t in ms.eigen_thetas]

    if ms.sector == UNTWISTED:
        anchor = Fraction(-1, 2)
        step = Fraction(1, 2)
        scale = 2  # energies n + 1/2, doubled to integers
    else:
        anchor = Fraction(1)
        step = Fraction(1)
        scale = 1
    cap = int((budget - anchor) * scale)
    first = scale if ms.sector == TWISTED else 1
    energies = list(range(first, cap + 1, scale))

    # ascending energies so the scan can stop at the first overflow
    modes = [(e, z) for e in energies for z in zexps]
    ledger = {}

    def walk(idx, total, zexp, sign):
        key = (total, zexp)
        ledger[key] = ledger.get(key, 0) + sign
        for j in range(idx, len(modes)):
            e, z = modes[j]
            if total + e > cap:
                break
            walk(j + 1, total + e, (zexp + z) % level, -sign)

    walk(0, 0, 0, 1)

    by_exponent = {}
    for (total, zexp), count in ledger.items():
        if count:
            expo = Fraction(total, scale) + anchor
            by_exponent.setdefault(expo, {})[zexp] = count
    pairs = []
    for expo, weights in by_exponent.items():
        pairs.append((expo, CycNumber.from_exponents(level, weights)))
    series = FracPowerSeries.from_fraction_terms(pairs, budget + step)
    if c_value != 1:
        series = series * c_value
    return series
