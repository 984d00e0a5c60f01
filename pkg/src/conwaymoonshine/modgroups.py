"""Group labels of the twisted trace functions, test matrices, and
numeric invariance checks of truncated series.

Labels follow the n|h+e convention: n|h- is an index-h subgroup of a
conjugated Hecke group, and +e adjoins Atkin-Lehner involutions for exact
divisors e of n/h.  The invariance check here is sound but partial, by
design: it samples

  * Hecke-group elements at the exact character-free level N* (the
    smallest multiple of the shape's cycle lcm killing the eta-multiplier
    character; N* = n*h for every registry label),
  * the unit translation, and
  * one representative of each listed Atkin-Lehner coset, composed with
    the translation power that lands in the character kernel

and measures max |f(gamma tau) - f(tau)| over sample points chosen so
both evaluations converge.  Series evaluation is floating point with an
explicit geometric tail bound; everything upstream stays exact.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import CycNumber
from .errors import ParseError, PrecisionError, ValidationError
from .qseries import FracPowerSeries


@dataclass(frozen=True)
class GroupLabel:
    n: int
    h: int
    al_set: frozenset
    minus: bool

    def __post_init__(self):
        if self.n <= 0 or self.h <= 0:
            raise ValidationError("level data must be positive")
        if self.n % self.h or (self.n * self.h) % (self.h * self.h):
            raise ValidationError("h = %d must divide n = %d" % (self.h, self.n))
        if 24 % self.h:
            raise ValidationError("h = %d must divide 24" % self.h)
        quotient = self.n // self.h
        for e in self.al_set:
            if quotient % e or gcd(e, quotient // e) != 1:
                raise ValidationError(
                    "%d is not an exact divisor of n/h = %d" % (e, quotient)
                )

    def __str__(self):
        base = str(self.n) if self.h == 1 else "%d|%d" % (self.n, self.h)
        if self.minus:
            return base + "-"
        if not self.al_set:
            return base + "+"
        return base + "+" + ",".join(str(e) for e in sorted(self.al_set))

    def to_json(self):
        return {"n": self.n, "h": self.h, "al": sorted(self.al_set), "minus": self.minus}


def parse_label(text: str) -> GroupLabel:
    """Parse labels like "2-", "12|2+6", "30+6,10,15"."""
    s = text.strip()
    i = 0

    def read_int(ctx):
        nonlocal i
        start = i
        while i < len(s) and s[i].isdigit():
            i += 1
        if start == i:
            raise ParseError("expected an integer (%s)" % ctx, text, start)
        return int(s[start:i])

    n = read_int("level")
    h = 1
    if i < len(s) and s[i] == "|":
        i += 1
        h = read_int("index divisor")
    if i >= len(s):
        raise ParseError("expected '-' or '+'", text, i)
    if s[i] == "-":
        i += 1
        if i != len(s):
            raise ParseError("trailing input after '-'", text, i)
        try:
            return GroupLabel(n, h, frozenset(), True)
        except ValidationError as exc:
            raise ParseError(str(exc), text, 0) from exc
    if s[i] != "+":
        raise ParseError("expected '-' or '+'", text, i)
    i += 1
    al = []
    if i < len(s):
        while True:
            al.append(read_int("Atkin-Lehner divisor"))
            if i == len(s):
                break
            if s[i] != ",":
                raise ParseError("expected ','", text, i)
            i += 1
    try:
        return GroupLabel(n, h, frozenset(al), False)
    except ValidationError as exc:
        raise ParseError(str(exc), text, 0) from exc


@dataclass(frozen=True)
class TestMatrix:
    """Rational 2x2 matrix with determinant scale_sq; the projective
    transformation is that of the matrix divided by sqrt(scale_sq)."""

    __test__ = False  # not a pytest case despite the name

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    scale_sq: int
    provenance: str

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det != self.scale_sq:
            raise ValidationError(
                "determinant %s does not match scaling %s" % (det, self.scale_sq)
            )

    def mobius(self, tau: complex) -> complex:
        return (float(self.a) * tau + float(self.b)) / (
            float(self.c) * tau + float(self.d)
        )

    def compose_translation(self, shift: Fraction) -> "TestMatrix":
        """This matrix times (1, shift; 0, 1)."""
        shift = Fraction(shift)
        return TestMatrix(
            self.a,
            self.a * shift + self.b,
            self.c,
            self.c * shift + self.d,
            self.scale_sq,
            self.provenance + "*T^(%s)" % shift,
        )

    def to_json(self):
        def enc(x):
            return [x.numerator, x.denominator]

        return {
            "a": enc(self.a),
            "b": enc(self.b),
            "c": enc(self.c),
            "d": enc(self.d),
            "scale_sq": self.scale_sq,
            "provenance": self.provenance,
        }


def _gamma0_element(c: int, d: int) -> TestMatrix:
    a = pow(d, -1, c)
    b = (a * d - 1) // c
    return TestMatrix(
        Fraction(a), Fraction(b), Fraction(c), Fraction(d), 1, "gamma0-sample"
    )


def sample_matrices(gl: GroupLabel, count: int = 12, seed: int = 2024, level=None):
    """Test matrices for the label: Hecke-group samples at `level`
    (default n*h), the unit translation, and one Atkin-Lehner matrix per
    listed divisor (Fricke-tagged when e = n/h).

    The Atkin-Lehner matrix for e uses the exact-divisor solve
    u*e + v*(n/(h*e)) = 1:  (u*e, -v/h; n, e)/sqrt(e).
    """
    rng = random.Random(seed)
    level = level or gl.n * gl.h
    out = [
        TestMatrix(
            Fraction(1), Fraction(1, gl.h), Fraction(0), Fraction(1), 1,
            "translation-1/%d" % gl.h,
        )
    ]
    quotient = gl.n // gl.h
    for e in sorted(gl.al_set):
        if e == quotient:
            out.append(
                TestMatrix(
                    Fraction(0), Fraction(-1, gl.h), Fraction(gl.n), Fraction(0),
                    e, "fricke",
                )
            )
        else:
            u, v = _bezout(e, quotient // e)
            out.append(
                TestMatrix(
                    Fraction(u * e), Fraction(-v, gl.h), Fraction(gl.n), Fraction(e),
                    e, "atkin-lehner-%d" % e,
                )
            )
    while len(out) < count:
        k = rng.choice((1, 1, 1, 2)) if level <= 30 else 1
        c = level * k
        d = rng.randrange(1, max(2, c))
        if gcd(d, c) != 1:
            continue
        out.append(_gamma0_element(c, d))
    return out[:max(count, len(out))]


def _bezout(x: int, y: int):
    """(u, v) with u*x + v*y = 1 for coprime x, y."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r != 1:
        raise ValidationError("%d and %d are not coprime" % (x, y))
    return old_s, old_t


def character_free_level(shape) -> int:
    """Smallest multiple N of the cycle lcm with sum_m (N/m) k_m = 0 mod 24,
    which makes the weight-zero eta quotient a genuine Hecke-group function
    at level N (its multiplier character dies; the square condition holds
    automatically since prod m^(k_m) is the square of the trace scalar)."""
    lcm = 1
    for m in shape.exps:
        lcm = lcm * m // gcd(lcm, m)
    for mult in range(1, 49):
        n = lcm * mult
        if sum((n // m) * k for m, k in shape.exps.items()) % 24 == 0:
            return n
    raise ValidationError("no character-free level below 48 * lcm for %s" % shape)


def eval_series(series: FracPowerSeries, tau: complex, tail_bound_target: float):
    """Numeric value of the truncated series at tau, with an explicit
    tail bound from geometric extrapolation of the last five coefficient
    magnitudes.  Raises PrecisionError when the bound misses the target.
    Returns (value, bound)."""
    if tau.imag <= 0:
        raise ValidationError("evaluation point must be in the upper half plane")
    items = sorted(series.terms.items())
    total = 0j
    for p, coeff in items:
        r = p / series.denom
        if isinstance(coeff, CycNumber):
            cval = coeff.to_complex()
        else:
            cval = complex(float(Fraction(coeff)))
        total += cval * cmath.exp(2j * cmath.pi * tau * r)
    bound = _tail_bound(series, tau)
    if bound > tail_bound_target:
        raise PrecisionError(
            "tail bound %.3g exceeds target %.3g at Im(tau)=%.4f; "
            "increase the series order" % (bound, tail_bound_target, tau.imag)
        )
    return total, bound


def _tail_bound(series: FracPowerSeries, tau: complex) -> float:
    """Geometric extrapolation of trailing coefficient magnitudes, anchored
    at the validity order (below it all omitted terms are zero).

    Coefficient magnitudes of these series oscillate, so the growth rate
    is taken peak-to-peak across two trailing windows of five terms.
    """
    mags = []
    expos = []
    for p, coeff in sorted(series.terms.items())[-10:]:
        if isinstance(coeff, CycNumber):
            m = abs(coeff.to_complex())
        else:
            m = abs(float(Fraction(coeff)))
        if m:
            mags.append(m)
            expos.append(p / series.denom)
    if not mags:
        return 0.0
    if len(mags) >= 4:
        half = len(mags) // 2
        i1 = max(range(half), key=lambda i: mags[i])
        i2 = half + max(range(len(mags) - half), key=lambda i: mags[half + i])
        peak1, r1 = mags[i1], expos[i1]
        peak2, r2 = mags[i2], expos[i2]
        growth = max(1.0, (peak2 / peak1) ** (1.0 / (r2 - r1))) if r2 > r1 else 1.0
        step = min(b - a for a, b in zip(expos, expos[1:]) if b > a)
    else:
        peak2 = max(mags)
        r2 = expos[mags.index(peak2)]
        growth = 1.0
        step = 1.0 / series.denom
    qabs = abs(cmath.exp(2j * cmath.pi * tau))
    ratio = (growth * qabs) ** step
    if ratio >= 0.999:
        return float("inf")
    start = float(series.order)
    anchor = peak2 * growth ** max(0.0, start - r2)
    return 4.0 * anchor * qabs**start / (1.0 - ratio)


def _sample_points(matrix: TestMatrix, count: int, rng) -> list:
    """Points where both tau and matrix(tau) can be summed accurately:
    high in the strip for translations, balanced near Im = 1/|c| for
    matrices with a lower-left entry."""
    pts = []
    c = abs(float(matrix.c))
    for _ in range(count):
        if c == 0:
            pts.append(complex(rng.uniform(-1, 1), rng.uniform(0.8, 2.0)))
        else:
            u = rng.uniform(-0.12, 0.12)
            v = rng.uniform(0.95, 1.2)
            pts.append(complex((-float(matrix.d) + u) / c, v / c))
    return pts


def invariance_check(
    series: FracPowerSeries,
    gl: GroupLabel,
    matrices=None,
    points: int = 20,
    tol: float = 1e-6,
    seed: int = 2024,
    name: str = "",
):
    """max |f(gamma tau) - f(tau)| over the sample; pass iff <= tol.

    The series must be truncated to sufficient order for the tail bounds
    at the sample points; tail failures raise PrecisionError.
    """
    rng = random.Random(seed)
    matrices = matrices if matrices is not None else sample_matrices(gl, seed=seed)
    per_matrix = max(1, -(-points // max(1, len(matrices))))
    worst = 0.0
    rows = []
    for m in matrices:
        dev = 0.0
        for tau in _sample_points(m, per_matrix, rng):
            v1, _ = eval_series(series, tau, tol / 10)
            v2, _ = eval_series(series, m.mobius(tau), tol / 10)
            dev = max(dev, abs(v1 - v2))
        rows.append({"matrix": m.to_json(), "deviation": dev})
        worst = max(worst, dev)
    return {
        "class": name,
        "label": str(gl),
        "matrices": rows,
        "max_dev": worst,
        "pass": worst <= tol,
        "seed": seed,
        "points": per_matrix * len(matrices),
        "order": [series.order.numerator, series.order.denominator],
    }


def kernel_matrices(rec, series: FracPowerSeries, seed: int = 2024, count: int = 12):
    """Sound sample of the label's group for the given twisted trace:
    Hecke elements at the character-free level, the unit translation, and
    each Atkin-Lehner representative composed into the character kernel
    (searching the translation power by a one-point probe)."""
    gl = parse_label(rec.gamma_tw_label)
    level = character_free_level(rec.frame_shape)
    base = sample_matrices(gl, count=count, seed=seed, level=level)
    out = []
    for m in base:
        if m.provenance.startswith(("fricke", "atkin-lehner")):
            out.append(_into_kernel(m, gl.h, series))
        elif m.provenance.startswith("translation") and gl.h > 1:
            # the bare 1/h translation carries the character; its h-th
            # power is the unit translation, which is always invariant
            out.append(
                TestMatrix(Fraction(1), Fraction(1), Fraction(0), Fraction(1), 1, "translation-1")
            )
        else:
            out.append(m)
    return out


def _into_kernel(matrix: TestMatrix, h: int, series: FracPowerSeries) -> TestMatrix:
    """Compose with translation powers in (1/h)*Z until a probe stops
    seeing a character; the label's group is the character kernel, and the
    character of the 1/h translation has order dividing 24h.  Each
    candidate is probed at its own balanced point."""
    best = matrix
    best_dev = float("inf")
    for j in range(24 * h):
        cand = matrix.compose_translation(Fraction(j, h)) if j else matrix
        c = max(1.0, abs(float(cand.c)))
        probe = complex((-float(cand.d) + 0.03) / c, 1.0 / c)
        try:
            ref, _ = eval_series(series, probe, 1e-9)
            val, _ = eval_series(series, cand.mobius(probe), 1e-9)
        except PrecisionError:
            continue
        dev = abs(val - ref)
        if dev < best_dev:
            best, best_dev = cand, dev
    return best


def class_invariance_check(
    rec,
    points: int = 20,
    tol: float = 1e-6,
    seed: int = 2024,
    samples: int = 12,
    max_order: int = 8192,
):
    """Adaptive driver: build the twisted trace at growing order until all
    tail bounds accept, then run the invariance check.

    The starting order targets the crossover of coefficient growth
    (~ e^(4*pi*sqrt(r)/sqrt(N))) against decay at the balanced points
    (Im = 1/N), which lands near N^2/16."""
    from .moonshine import T_s_tw

    level = character_free_level(rec.frame_shape)
    order = 64
    while order < min(level * level // 16, max_order):
        order *= 2
    while True:
        series = T_s_tw(rec, order)
        try:
            matrices = kernel_matrices(rec, series, seed=seed, count=samples)
            return invariance_check(
                series,
                parse_label(rec.gamma_tw_label),
                matrices=matrices,
                points=points,
                tol=tol,
                seed=seed,
                name=rec.co0_name,
            )
        except PrecisionError:
            if order >= max_order:
                raise
            order *= 2
