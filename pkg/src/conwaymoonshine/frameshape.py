"""Frame shapes: formal products prod_m m^(k_m) describing lattice
automorphisms by their characteristic polynomial prod_m (1 - x^m)^(k_m).

A valid shape has degree sum_m m*k_m = 24 and induces a genuine
eigenvalue multiset (no negative multiplicities after cancellation).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PairingError, ParseError, ValidationError
from .qseries import FracPowerSeries, eta

DEGREE = 24  # rank of the lattice whose automorphisms shapes describe


class FrameShape:
    """Immutable mapping m -> k_m with the two validity invariants."""

    __slots__ = ("exps",)

    def __init__(self, exps: dict):
        clean = {int(m): int(k) for m, k in exps.items() if k != 0}
        for m in clean:
            if m <= 0:
                raise ValidationError("cycle length %d must be positive" % m)
        object.__setattr__(self, "exps", clean)
        degree = sum(m * k for m, k in clean.items())
        if degree != DEGREE:
            raise ValidationError(
                "degree %d != %d for shape %s" % (degree, DEGREE, _format(clean))
            )
        for theta, mult in _eigenvalue_multiset(clean).items():
            if mult < 0:
                raise ValidationError(
                    "eigenvalue e^(2*pi*i*%s) has multiplicity %d in shape %s"
                    % (theta, mult, _format(clean))
                )

    def __setattr__(self, name, value):
        raise AttributeError("FrameShape is immutable")

    # -- basic data ------------------------------------------------------

    def degree(self) -> int:
        return sum(m * k for m, k in self.exps.items())

    def chi(self) -> int:
        """Trace on the 24-dimensional space: the exponent of 1."""
        return self.exps.get(1, 0)

    def fixed_points(self) -> int:
        """Multiplicity of eigenvalue +1, which equals sum_m k_m."""
        return sum(self.exps.values())

    def eigenvalues(self) -> dict:
        """Multiset of eigenvalues as {theta: multiplicity}, lambda=e^(2*pi*i*theta)."""
        return {t: m for t, m in _eigenvalue_multiset(self.exps).items() if m}

    def eigenvalues_as_pairs(self):
        """The same multiset as sorted (order, exponent, multiplicity) rows,
        the eigenvalue being the primitive order-th root to the exponent."""
        out = []
        for t, mult in sorted(self.eigenvalues().items()):
            out.append((t.denominator, t.numerator, mult))
        return out

    def eigenvalue_pairs(self):
        """Split the 24 eigenvalues into 12 inverse pairs.

        Returns a sorted list of 12 Fractions theta in [0, 1/2]; the pair is
        (e^(2*pi*i*theta), e^(-2*pi*i*theta)).  Raises PairingError when the
        multiset does not decompose (odd multiplicity at a self-inverse
        eigenvalue, which cannot happen for determinant-one shapes).
        """
        mult = self.eigenvalues()
        pairs = []
        for theta in sorted(mult):
            count = mult[theta]
            if theta == 0 or 2 * theta == 1:
                if count % 2:
                    raise PairingError(
                        "eigenvalue at theta=%s has odd multiplicity %d" % (theta, count)
                    )
                pairs.extend([theta] * (count // 2))
            elif theta < Fraction(1, 2):
                if mult.get(1 - theta, 0) != count:
                    raise PairingError(
                        "multiplicities at theta=%s and %s differ" % (theta, 1 - theta)
                    )
                pairs.extend([theta] * count)
        if len(pairs) != DEGREE // 2:
            raise PairingError("expected 12 inverse pairs, got %d" % len(pairs))
        return pairs

    def negate(self) -> "FrameShape":
        """Shape of -g, via (1 - x^m) -> (1 + x^m) = (1 - x^(2m))/(1 - x^m)
        for odd m; even parts are unchanged.  An involution."""
        out = {}
        for m, k in self.exps.items():
            if m % 2:
                out[2 * m] = out.get(2 * m, 0) + k
                out[m] = out.get(m, 0) - k
            else:
                out[m] = out.get(m, 0) + k
        return FrameShape(out)

    def eta_quotient(self, s, order) -> FracPowerSeries:
        """prod_m eta(m*s*tau)^(k_m) as an exact series valid below `order`.

        The valuation is s (= s * degree/24); every factor is expanded with
        enough slack that the product is exact below the requested order.
        """
        s = Fraction(s)
        order = Fraction(order)
        slack = order - s
        if slack <= 0:
            raise ValidationError("order %s does not reach the valuation %s" % (order, s))
        result = None
        for m, k in sorted(self.exps.items()):
            base_order = slack / (m * s) + Fraction(1, 24) + 1
            factor = eta(base_order).scale_tau(m * s) ** k
            result = factor if result is None else result * factor
        return result.truncate(order)

    # -- formatting --------------------------------------------------------

    def __str__(self):
        return _format(self.exps)

    def __repr__(self):
        return "FrameShape(%s)" % self

    def __eq__(self, other):
        if not isinstance(other, FrameShape):
            return NotImplemented
        return self.exps == other.exps

    def __hash__(self):
        return hash(tuple(sorted(self.exps.items())))

    def to_json(self):
        return [[m, k] for m, k in sorted(self.exps.items())]


def _eigenvalue_multiset(exps):
    mult = {}
    for m, k in exps.items():
        for j in range(m):
            t = Fraction(j, m)
            mult[t] = mult.get(t, 0) + k
    return mult


def _format(exps):
    num = [(m, k) for m, k in sorted(exps.items()) if k > 0]
    den = [(m, -k) for m, k in sorted(exps.items()) if k < 0]
    top = ".".join("%d^%d" % p for p in num) or "1^0"
    if not den:
        return top
    return top + "/" + ".".join("%d^%d" % p for p in den)


def parse(text: str) -> FrameShape:
    """Parse a Frame-shape string like "1^3.6^9/2^3.3^9" or "2^24/1^24".

    Grammar: factor list, optionally "/" and a second factor list; factors
    are INT["^"INT], separated by "." or whitespace.  Both validity
    invariants are checked; errors carry the offending position.
    """
    halves = text.split("/")
    if len(halves) > 2:
        raise ParseError("more than one '/'", text, text.index("/", text.index("/") + 1))
    exps = {}
    offset = 0
    for half_idx, half in enumerate(halves):
        sign = 1 if half_idx == 0 else -1
        for m, k, pos in _scan_factors(half, text, offset):
            exps[m] = exps.get(m, 0) + sign * k
        offset += len(half) + 1
    try:
        return FrameShape(exps)
    except ValidationError as exc:
        raise ParseError(str(exc), text, 0) from exc


def _scan_factors(half, full_text, offset):
    i = 0
    found = False
    while i < len(half):
        ch = half[i]
        if ch in " \t.":
            i += 1
            continue
        if not ch.isdigit():
            raise ParseError("expected a factor", full_text, offset + i)
        start = i
        while i < len(half) and half[i].isdigit():
            i += 1
        m = int(half[start:i])
        k = 1
        if i < len(half) and half[i] == "^":
            i += 1
            estart = i
            while i < len(half) and half[i].isdigit():
                i += 1
            if estart == i:
                raise ParseError("expected an exponent after '^'", full_text, offset + i)
            k = int(half[estart:i])
        found = True
        yield m, k, offset + start
    if not found:
        raise ParseError("empty factor list", full_text, offset)
