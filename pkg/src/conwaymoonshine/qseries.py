"""Truncated formal series in fractional powers of q with exact coefficients.

A series stores a validity order O: every term with exponent below O is
exact, nothing at or beyond O is known.  Exponents live on the grid
(1/K)*Z for a per-series positive integer K; binary operations renormalize
to the lcm of the two grids.  Coefficients are Python ints or Fractions,
promoted to CycNumber only when a tau-shift introduces roots of unity.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, gcd

from .cyclotomic import CycNumber, root_of_unity
from .errors import NotInvertibleError, PrecisionError


def _norm_coeff(c):
    """Canonical coefficient: int when possible, else Fraction/CycNumber."""
    if isinstance(c, CycNumber):
        if c.is_rational():
            c = c.to_rational()
        else:
            return c
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator
        return c
    return c


def _is_zero(c):
    if isinstance(c, CycNumber):
        return c.is_zero()
    return c == 0


class FracPowerSeries:
    """A truncated Laurent series sum_r c_r q^r, r in (1/K)*Z, r < order."""

    __slots__ = ("denom", "terms", "order")

    def __init__(self, denom: int, terms: dict, order):
        order = Fraction(order)
        if denom <= 0:
            raise ValueError("denominator must be positive")
        clean = {}
        bound_num = order * denom
        for p, c in terms.items():
            c = _norm_coeff(c)
            if _is_zero(c):
                continue
            if p >= bound_num:
                raise PrecisionError(
                    "term q^(%d/%d) at or beyond order %s" % (p, denom, order)
                )
            clean[p] = c
        self.denom = denom
        self.terms = clean
        self.order = order

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(order) -> "FracPowerSeries":
        return FracPowerSeries(1, {}, order)

    @staticmethod
    def monomial(coeff, expo, order) -> "FracPowerSeries":
        expo = Fraction(expo)
        order = Fraction(order)
        if expo >= order:
            raise PrecisionError("exponent %s not below order %s" % (expo, order))
        k = expo.denominator
        return FracPowerSeries(k, {expo.numerator: coeff}, order)

    @staticmethod
    def from_fraction_terms(pairs, order) -> "FracPowerSeries":
        """Build a series from (Fraction exponent, coeff) pairs."""
        order = Fraction(order)
        k = 1
        for e, _ in pairs:
            k = k * e.denominator // gcd(k, e.denominator)
        terms = {}
        for e, c in pairs:
            p = e.numerator * (k // e.denominator)
            terms[p] = terms.get(p, 0) + c
        return FracPowerSeries(k, terms, order)

    # -- inspection ----------------------------------------------------

    def exponents(self):
        """Sorted exponents with nonzero coefficient, as Fractions."""
        return [Fraction(p, self.denom) for p in sorted(self.terms)]

    def coeff(self, expo):
        expo = Fraction(expo)
        if expo >= self.order:
            raise PrecisionError(
                "coefficient at %s requested, series valid below %s"
                % (expo, self.order)
            )
        if self.denom % expo.denominator != 0:
            return 0
        p = expo.numerator * (self.denom // expo.denominator)
        return self.terms.get(p, 0)

    def valuation(self):
        """Lowest exponent present, or None for a (known-)zero series."""
        if not self.terms:
            return None
        return Fraction(min(self.terms), self.denom)

    def is_zero(self) -> bool:
        return not self.terms

    def slack(self):
        """order - valuation; invariant under mul, pow and invert."""
        v = self.valuation()
        return self.order - (v if v is not None else self.order)

    # -- grid handling ---------------------------------------------------

    def rescaled(self, k: int) -> "FracPowerSeries":
        if k == self.denom:
            return self
        if k % self.denom != 0:
            raise ValueError("can only refine the exponent grid")
        step = k // self.denom
        return FracPowerSeries(k, {p * step: c for p, c in self.terms.items()}, self.order)

    def _common_grid(self, other):
        k = self.denom * other.denom // gcd(self.denom, other.denom)
        return self.rescaled(k), other.rescaled(k)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            if self.order <= 0:
                return self
            terms = dict(self.terms)
            terms[0] = terms.get(0, 0) + other
            return FracPowerSeries(self.denom, terms, self.order)
        a, b = self._common_grid(other)
        order = min(a.order, b.order)
        bound = order * a.denom
        terms = {p: c for p, c in a.terms.items() if p < bound}
        for p, c in b.terms.items():
            if p < bound:
                terms[p] = terms.get(p, 0) + c
        return FracPowerSeries(a.denom, terms, order)

    __radd__ = __add__

    def __neg__(self):
        return FracPowerSeries(self.denom, {p: -c for p, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            if _is_zero(_norm_coeff(other)):
                return FracPowerSeries(1, {}, self.order)
            return FracPowerSeries(
                self.denom, {p: c * other for p, c in self.terms.items()}, self.order
            )
        a, b = self._common_grid(other)
        k = a.denom
        va = min(a.terms) if a.terms else a.order * k
        vb = min(b.terms) if b.terms else b.order * k
        order_num = min(va + b.order * k, vb + a.order * k)
        terms = {}
        b_items = sorted(b.terms.items())
        for p, c in sorted(a.terms.items()):
            for p2, c2 in b_items:
                e = p + p2
                if e >= order_num:
                    break
                terms[e] = terms.get(e, 0) + c * c2
        return FracPowerSeries(k, terms, Fraction(order_num, k))

    __rmul__ = __mul__

    def invert(self) -> "FracPowerSeries":
        """Multiplicative inverse; self * invert(self) = 1 + O(q^(O-v))."""
        if not self.terms:
            raise NotInvertibleError("cannot invert a series with no known terms")
        k = self.denom
        v = min(self.terms)
        lead = self.terms[v]
        if isinstance(lead, CycNumber):
            lead_inv = lead.inverse()
        else:
            lead_inv = Fraction(1, 1) / Fraction(lead)
        # u = tail / leading term, exponents shifted to start above 0
        span = ceil(self.order * k) - v  # exponents of u run in (0, span)
        u = {p - v: c * lead_inv for p, c in self.terms.items() if p != v}
        inv = {0: 1}
        for n in range(1, span):
            acc = 0
            for p, c in u.items():
                if p > n:
                    continue
                prev = inv.get(n - p)
                if prev is not None:
                    acc = acc + c * prev
            if not _is_zero(acc):
                inv[n] = -acc
        out = {p - v: c * lead_inv for p, c in inv.items()}
        order = Fraction(int(self.order * k) - 2 * v, k)
        return FracPowerSeries(k, out, order)

    def __pow__(self, n: int) -> "FracPowerSeries":
        if n < 0:
            return self.invert() ** (-n)
        if n == 0:
            return FracPowerSeries(1, {0: 1}, self.slack())
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- tau substitutions -------------------------------------------------

    def scale_tau(self, s) -> "FracPowerSeries":
        """Replace tau by s*tau: exponent r becomes r*s, order becomes O*s."""
        s = Fraction(s)
        if s <= 0:
            raise ValueError("scale factor must be positive")
        pairs = [(Fraction(p, self.denom) * s, c) for p, c in self.terms.items()]
        return FracPowerSeries.from_fraction_terms(pairs, self.order * s)

    def shift_tau(self, t) -> "FracPowerSeries":
        """Replace tau by tau + t: coefficient at q^r picks up e^(2*pi*i*r*t)."""
        t = Fraction(t)
        terms = {}
        for p, c in self.terms.items():
            frac = (Fraction(p, self.denom) * t) % 1
            if frac == 0:
                terms[p] = c
            elif 2 * frac == 1:
                terms[p] = -c
            else:
                terms[p] = root_of_unity(frac) * c
        return FracPowerSeries(self.denom, terms, self.order)

    def shifted(self, expo) -> "FracPowerSeries":
        """Multiply by the exact monomial q^expo: exponents and order move."""
        expo = Fraction(expo)
        pairs = [(Fraction(p, self.denom) + expo, c) for p, c in self.terms.items()]
        return FracPowerSeries.from_fraction_terms(pairs, self.order + expo)

    def truncate(self, order) -> "FracPowerSeries":
        order = Fraction(order)
        if order > self.order:
            raise PrecisionError("cannot extend validity from %s to %s" % (self.order, order))
        bound = order * self.denom
        return FracPowerSeries(self.denom, {p: c for p, c in self.terms.items() if p < bound}, order)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FracPowerSeries):
            return NotImplemented
        if self.order != other.order:
            raise PrecisionError(
                "strict equality across mismatched orders %s and %s; "
                "use agrees_with for comparison up to the smaller order"
                % (self.order, other.order)
            )
        a, b = self._common_grid(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.order, tuple(sorted(self.terms.items()))))

    def agrees_with(self, other, through=None) -> bool:
        """Equality of all coefficients below min(orders) (or `through`)."""
        bound = min(self.order, other.order)
        if through is not None:
            through = Fraction(through)
            if through > bound:
                raise PrecisionError(
                    "comparison through %s exceeds common order %s" % (through, bound)
                )
            bound = through
        a, b = self._common_grid(other)
        cut = bound * a.denom
        for p in set(a.terms) | set(b.terms):
            if p < cut:
                ca, cb = a.terms.get(p, 0), b.terms.get(p, 0)
                if isinstance(ca, CycNumber) or isinstance(cb, CycNumber):
                    if not _is_zero(_norm_coeff(ca - cb)):
                        return False
                elif ca != cb:
                    return False
        return True

    def max_residual(self):
        """Largest absolute rational coefficient (0 for the zero series)."""
        worst = Fraction(0)
        for c in self.terms.values():
            if isinstance(c, CycNumber):
                c = c.to_rational()
            worst = max(worst, abs(Fraction(c)))
        return worst

    # -- serialization -------------------------------------------------------

    def to_text(self) -> str:
        lines = []
        for p in sorted(self.terms):
            c = self.terms[p]
            if isinstance(c, CycNumber):
                raise ValueError("text form is defined for rational coefficients only")
            c = Fraction(c)
            e = Fraction(p, self.denom)
            lines.append(
                "%d/%d q^{%d/%d}" % (c.numerator, c.denominator, e.numerator, e.denominator)
            )
        lines.append("O(q^{%d/%d})" % (self.order.numerator, self.order.denominator))
        return "\n".join(lines)

    @staticmethod
    def from_text(text: str) -> "FracPowerSeries":
        pairs = []
        order = None
        for raw in text.strip().splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("O("):
                inner = line[len("O(q^{") : -len("})")]
                num, den = inner.split("/")
                order = Fraction(int(num), int(den))
                continue
            coeff_part, expo_part = line.split(" q^{")
            cn, cd = coeff_part.split("/")
            en, ed = expo_part.rstrip("}").split("/")
            pairs.append((Fraction(int(en), int(ed)), Fraction(int(cn), int(cd))))
        if order is None:
            raise ValueError("missing O(...) trailer")
        return FracPowerSeries.from_fraction_terms(pairs, order)

    def to_json(self) -> dict:
        rows = []
        for p in sorted(self.terms):
            c = self.terms[p]
            if isinstance(c, CycNumber):
                raise ValueError("JSON form is defined for rational coefficients only")
            c = Fraction(c)
            rows.append([p, self.denom, c.numerator, c.denominator])
        return {
            "terms": rows,
            "order": [self.order.numerator, self.order.denominator],
        }

    @staticmethod
    def from_json(obj) -> "FracPowerSeries":
        order = Fraction(obj["order"][0], obj["order"][1])
        pairs = [
            (Fraction(p, k), Fraction(cn, cd)) for p, k, cn, cd in obj["terms"]
        ]
        return FracPowerSeries.from_fraction_terms(pairs, order)

    def pretty(self, variable: str = "q") -> str:
        if not self.terms:
            return "0 + O(%s^%s)" % (variable, self.order)
        chunks = []
        for p in sorted(self.terms):
            c = self.terms[p]
            e = Fraction(p, self.denom)
            if isinstance(c, CycNumber):
                body = "(%s)" % c
                sign = "+"
            else:
                sign = "-" if c < 0 else "+"
                body = str(abs(c))
            if e == 0:
                term = body
            else:
                power = "" if e == 1 else "^%s" % e
                term = ("%s %s%s" % (body, variable, power)) if body != "1" else "%s%s" % (variable, power)
            chunks.append((sign, term))
        first_sign, first = chunks[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in chunks[1:]:
            out += " %s %s" % (sign, term)
        return out + " + O(%s^%s)" % (variable, self.order)

    def __repr__(self):
        return "FracPowerSeries(%s)" % self.pretty()


def eta(order) -> FracPowerSeries:
    """Dedekind eta: q^(1/24) * prod_(n>=1) (1 - q^n), truncated below `order`.

    Expanded with the pentagonal number theorem; the term-by-term product
    is kept to the tests as an independent oracle.
    """
    order = Fraction(order)
    if order <= Fraction(1, 24):
        raise PrecisionError("eta needs order > 1/24 to hold any term")
    terms = {}
    limit = order - Fraction(1, 24)  # pentagonal exponents must stay below this
    k = 0
    while True:
        placed = False
        for kk in ((k, -k) if k else (0,)):
            e = Fraction(kk * (3 * kk - 1), 2)
            if e < limit:
                terms[e * 24 + 1] = 1 if kk % 2 == 0 else -1
                placed = True
        if not placed and k > 0:
            break
        k += 1
    return FracPowerSeries(24, {int(p): c for p, c in terms.items()}, order)
