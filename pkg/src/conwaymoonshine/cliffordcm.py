"""The 2^12-dimensional spinor module CM of the rank-24 Clifford algebra.

Basis and polarization.  The 24 real generators e_1..e_24 (frame vectors
over sqrt(8)) satisfy e_i e_j = -e_j e_i and e_i^2 = -1.  Coordinates are
paired (e_{2k-1}, e_{2k}) into isotropic combinations

    a^-_k = (e_{2k-1} + i e_{2k})/sqrt(2),   a^+_k = (e_{2k-1} - i e_{2k})/sqrt(2),

normalized so <a^-_j, a^+_k> = delta_jk; a^+_k annihilates the ground
state v.  CM has basis m_S = (prod_{k in S, ascending} a^-_k) v for S a
subset of the 12 pairs, encoded as a bitmask.

Engine.  In this basis every Clifford word acts as a tensor product of 12
monomial 2x2 matrices (its Jordan-Wigner string) with entries of the form
i^u * 2^t, times (1/sqrt(2))^(word length).  Word products, traces,
squares and dense applications reduce to per-pair bookkeeping; nothing
irrational is ever stored, and odd-length words use exact level-8
cyclotomic scalars for the leftover sqrt(2).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .cyclotomic import CycNumber, zeta
from .errors import PairingError, ValidationError, VerificationFailure

PAIRS = 12
DIM = 1 << PAIRS  # 4096
NGEN = 24
_FULL = DIM - 1


# ---------------------------------------------------------------------------
# dyadic Gaussian scalars (a + b*i) / 2^e


class GaussDyadic:
    __slots__ = ("a", "b", "e")

    def __init__(self, a: int, b: int = 0, e: int = 0):
        while e > 0 and a % 2 == 0 and b % 2 == 0:
            a //= 2
            b //= 2
            e -= 1
        self.a = a
        self.b = b
        self.e = e

    def __add__(self, other):
        e = max(self.e, other.e)
        return GaussDyadic(
            (self.a << (e - self.e)) + (other.a << (e - other.e)),
            (self.b << (e - self.e)) + (other.b << (e - other.e)),
            e,
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return GaussDyadic(self.a * other, self.b * other, self.e)
        return GaussDyadic(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.e + other.e,
        )

    def __neg__(self):
        return GaussDyadic(-self.a, -self.b, self.e)

    def __eq__(self, other):
        return self.a == other.a and self.b == other.b and self.e == other.e

    def __hash__(self):
        return hash((self.a, self.b, self.e))

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def unit_and_power(self):
        """(u, t) with value = i^u * 2^t; requires a monomial entry."""
        if (self.a == 0) == (self.b == 0):
            raise ValueError("not of the form i^u * 2^t: %s" % self)
        mag = abs(self.a or self.b)
        if mag & (mag - 1):
            raise ValueError("magnitude %d is not a power of two" % mag)
        t = mag.bit_length() - 1 - self.e
        if self.a > 0:
            u = 0
        elif self.b > 0:
            u = 1
        elif self.a < 0:
            u = 2
        else:
            u = 3
        return u, t

    def to_cyc(self, extra_half: int = 0) -> CycNumber:
        """Exact cyclotomic value, times (1/sqrt(2))^extra_half."""
        base = CycNumber(4, (Fraction(self.a, 1 << self.e), Fraction(self.b, 1 << self.e)))
        if extra_half % 2 == 0:
            return base * Fraction(1, 1 << (extra_half // 2))
        root2 = zeta(8, 1) + zeta(8, -1)  # sqrt(2)
        return base * root2 * Fraction(1, 1 << ((extra_half + 1) // 2))

    def __repr__(self):
        return "(%d%+di)/2^%d" % (self.a, self.b, self.e)


_ONE = GaussDyadic(1)
_ZERO = GaussDyadic(0)


# ---------------------------------------------------------------------------
# mode operators: tensor products of monomial 2x2 matrices


class ModeOperator:
    """Tensor-factorized Clifford operator on CM.

    mats[k] = (m00, m01, m10, m11) over GaussDyadic (row = output bit,
    column = input bit); the operator is (1/sqrt(2))^half times the tensor
    product of the twelve matrices in the m_S basis.
    """

    __slots__ = ("mats", "half")

    def __init__(self, mats, half: int):
        self.mats = tuple(mats)
        self.half = half

    def __mul__(self, other: "ModeOperator") -> "ModeOperator":
        out = []
        for (a00, a01, a10, a11), (b00, b01, b10, b11) in zip(self.mats, other.mats):
            out.append(
                (
                    a00 * b00 + a01 * b10,
                    a00 * b01 + a01 * b11,
                    a10 * b00 + a11 * b10,
                    a10 * b01 + a11 * b11,
                )
            )
        return ModeOperator(out, self.half + other.half)

    def scaled_int(self, scalar: int) -> "ModeOperator":
        m0 = tuple(entry * scalar for entry in self.mats[0])
        return ModeOperator((m0,) + self.mats[1:], self.half)

    def apply_basis(self, mask: int):
        """Image of m_mask: (target_mask, GaussDyadic coeff, half)."""
        out = 0
        coeff = _ONE
        for k in range(PAIRS):
            bit = mask >> k & 1
            m00, m01, m10, m11 = self.mats[k]
            top, bot = (m00, m10) if bit == 0 else (m01, m11)
            if not top.is_zero():
                if not bot.is_zero():
                    raise ValidationError("operator is not monomial")
                coeff = coeff * top
            elif not bot.is_zero():
                coeff = coeff * bot
                out |= 1 << k
            else:
                return 0, _ZERO, self.half
        return out, coeff, self.half

    def is_identity(self) -> bool:
        if self.half % 2:
            return False
        total = _ONE
        for m00, m01, m10, m11 in self.mats:
            if not (m01.is_zero() and m10.is_zero() and m00 == m11):
                return False
            total = total * m00
        return total == GaussDyadic(1 << (self.half // 2))

    def trace(self) -> CycNumber:
        total = _ONE
        for m00, m01, m10, m11 in self.mats:
            diag = m00 + m11
            if diag.is_zero():
                return CycNumber.from_rational(0, 4)
            total = total * diag
        return total.to_cyc(self.half)

    def supertrace(self) -> CycNumber:
        """str_CM = tr(zz * self), zz the distinguished lift of -Id."""
        return (_zz_op() * self).trace()


def _identity_op() -> ModeOperator:
    ident = (_ONE, _ZERO, _ZERO, _ONE)
    return ModeOperator((ident,) * PAIRS, 0)


@lru_cache(maxsize=NGEN + 1)
def _generator_op(i: int) -> ModeOperator:
    """Mode operator of e_i (1-based), with its Jordan-Wigner Z-string on
    lower pairs and one counted factor 1/sqrt(2)."""
    if not 1 <= i <= NGEN:
        raise ValueError("generator index out of range: %d" % i)
    k = (i - 1) // 2
    zmat = (_ONE, _ZERO, _ZERO, -_ONE)
    ident = (_ONE, _ZERO, _ZERO, _ONE)
    mats = []
    for j in range(PAIRS):
        if j < k:
            mats.append(zmat)
        elif j > k:
            mats.append(ident)
        elif i % 2 == 1:  # sqrt(2) e_{2k+1} = a^+ + a^-
            mats.append((_ZERO, GaussDyadic(-2), _ONE, _ZERO))
        else:  # sqrt(2) e_{2k+2} = i (a^+ - a^-)
            mats.append((_ZERO, GaussDyadic(0, -2), GaussDyadic(0, -1), _ZERO))
    return ModeOperator(mats, 1)


def op_from_mask(cmask: int, sign: int = 1) -> ModeOperator:
    """Mode operator of sign * e_C, built per pair without composing
    generators: pair j carries the local generator factors times Z to the
    number of C-generators above it."""
    mats = []
    length = bin(cmask).count("1")
    for j in range(PAIRS):
        zsign = -1 if bin(cmask >> (2 * j + 2)).count("1") % 2 else 1
        odd = cmask >> (2 * j) & 1  # e_{2j+1}
        even = cmask >> (2 * j + 1) & 1  # e_{2j+2}
        if not odd and not even:
            mats.append((_ONE, _ZERO, _ZERO, _ONE * zsign))
        elif odd and not even:
            mats.append((_ZERO, GaussDyadic(-2 * zsign), _ONE, _ZERO))
        elif even and not odd:
            mats.append((_ZERO, GaussDyadic(0, -2 * zsign), GaussDyadic(0, -1), _ZERO))
        else:
            mats.append((GaussDyadic(0, 2), _ZERO, _ZERO, GaussDyadic(0, -2 * zsign)))
    if sign != 1:
        mats[0] = tuple(entry * sign for entry in mats[0])
    return ModeOperator(mats, length)


@lru_cache(maxsize=1)
def _zz_op() -> ModeOperator:
    """The lift z of -Id fixed by the polarization: e_1 e_2 ... e_24.
    Acts on m_S as (-1)^|S| (the i^12 on the ground state is 1)."""
    return op_from_mask((1 << NGEN) - 1)


# ---------------------------------------------------------------------------
# public Clifford words


class CliffordWord:
    """scalar * e_{i1} e_{i2} ... with strictly ascending indices."""

    __slots__ = ("indices", "scalar")

    def __init__(self, indices, scalar=1):
        idx, sign = _canonicalize(tuple(int(i) for i in indices))
        self.indices = idx
        if isinstance(scalar, CycNumber):
            self.scalar = scalar * sign
        else:
            self.scalar = Fraction(scalar) * sign

    def __mul__(self, other: "CliffordWord") -> "CliffordWord":
        return CliffordWord(self.indices + other.indices, self.scalar * other.scalar)

    def __neg__(self):
        return CliffordWord(self.indices, self.scalar * -1)

    def __eq__(self, other):
        if not isinstance(other, CliffordWord):
            return NotImplemented
        return self.indices == other.indices and self.scalar == other.scalar

    def __hash__(self):
        return hash(self.indices)

    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << (i - 1)
        return m

    def mode_operator(self) -> ModeOperator:
        """Operator for the word with its scalar folded in; the scalar must
        be a nonzero dyadic rational times a power of i."""
        s = self.scalar
        if isinstance(s, CycNumber):
            if s.is_rational():
                g = _gauss_from_fractions(s.to_rational(), Fraction(0))
            elif 4 % s.level == 0:
                g = _gauss_from_fractions(*s.raise_level(4).coords)
            else:
                raise ValidationError("engine scalars live in Q(i)")
        else:
            g = _gauss_from_fractions(Fraction(s), Fraction(0))
        op = op_from_mask(self.mask())
        m0 = tuple(entry * g for entry in op.mats[0])
        return ModeOperator((m0,) + op.mats[1:], op.half)

    def __repr__(self):
        return "CliffordWord(%s, scalar=%s)" % (list(self.indices), self.scalar)


def _gauss_from_fractions(re: Fraction, im: Fraction) -> GaussDyadic:
    den = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
    if den & (den - 1):
        raise ValidationError("engine scalars need dyadic denominators")
    e = den.bit_length() - 1
    return GaussDyadic(int(re * den), int(im * den), e)


def _canonicalize(indices):
    idx = list(indices)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(idx) - 1):
            if idx[i] > idx[i + 1]:
                idx[i], idx[i + 1] = idx[i + 1], idx[i]
                sign = -sign
                changed = True
    out = []
    i = 0
    while i < len(idx):
        if i + 1 < len(idx) and idx[i] == idx[i + 1]:
            sign = -sign  # e_i^2 = -1
            i += 2
        else:
            out.append(idx[i])
            i += 1
    return tuple(out), sign


def word_from_mask(mask: int, sign: int = 1) -> CliffordWord:
    """e_C for a 24-bit coordinate mask (bit i-1 <-> generator i)."""
    return CliffordWord([i + 1 for i in range(NGEN) if mask >> i & 1], sign)


def reorder_sign(cmask: int, dmask: int) -> int:
    """Sign with e_C e_D = sign * e_{C xor D} for canonical ascending words."""
    swaps = 0
    for d in range(NGEN):
        if dmask >> d & 1:
            swaps += bin(cmask >> (d + 1)).count("1")
    swaps += bin(cmask & dmask).count("1")  # repeated generators square to -1
    return -1 if swaps % 2 else 1


# ---------------------------------------------------------------------------
# spinor states


class SpinorState:
    """Element of CM: mapping from pair-subset bitmasks to CycNumber."""

    __slots__ = ("coords",)

    def __init__(self, coords: dict):
        clean = {}
        for mask, c in coords.items():
            if not isinstance(c, CycNumber):
                c = CycNumber.from_rational(Fraction(c), 4)
            if not c.is_zero():
                clean[int(mask)] = c
        self.coords = clean

    @staticmethod
    def basis(mask: int) -> "SpinorState":
        return SpinorState({mask: 1})

    @staticmethod
    def vacuum() -> "SpinorState":
        return SpinorState.basis(0)

    def __add__(self, other):
        out = dict(self.coords)
        for m, c in other.coords.items():
            out[m] = out[m] + c if m in out else c
        return SpinorState(out)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c) -> "SpinorState":
        return SpinorState({m: v * c for m, v in self.coords.items()})

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        if not isinstance(other, SpinorState):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        picks = sorted(self.coords)[:4]
        body = ", ".join("%03x: %s" % (m, self.coords[m]) for m in picks)
        more = "" if len(self.coords) <= 4 else ", ... (%d terms)" % len(self.coords)
        return "SpinorState({%s%s})" % (body, more)


def act(word: CliffordWord, state: SpinorState) -> SpinorState:
    """Apply a Clifford word to a spinor state, exactly."""
    if isinstance(word.scalar, CycNumber):
        if word.scalar.is_zero():
            return SpinorState({})
        if not (word.scalar.level in (1, 2, 4) or word.scalar.is_rational()):
            return _act_op(
                CliffordWord(word.indices, 1).mode_operator(), state
            ).scaled(word.scalar)
    elif word.scalar == 0:
        return SpinorState({})
    return _act_op(word.mode_operator(), state)


def _act_op(op: ModeOperator, state: SpinorState) -> SpinorState:
    out = {}
    for mask, c in state.coords.items():
        target, g, half = op.apply_basis(mask)
        if g.is_zero():
            continue
        val = g.to_cyc(half) * c
        out[target] = out[target] + val if target in out else val
    return SpinorState(out)


# ---------------------------------------------------------------------------
# the invariant bilinear form on CM


@lru_cache(maxsize=1)
def _pair_signs():
    """beta[S] = <m_S, m_(complement of S)>, the only nonzero pairings.

    From the normalization <v, m_Omega> = 1 and <a^-_j x, y> = -<x, a^-_j y>:
    peel the a^- factors of m_S from the left, apply them to the complement
    in ascending order, and track creation signs.
    """
    beta = np.zeros(DIM, dtype=np.int8)
    for mask in range(DIM):
        sign = -1 if bin(mask).count("1") % 2 else 1
        current = _FULL ^ mask
        total = 0
        for k in range(PAIRS):
            if mask >> k & 1:
                total += bin(current & ((1 << k) - 1)).count("1")
                current |= 1 << k
        if total % 2:
            sign = -sign
        beta[mask] = sign
    return beta


def bilinear_cm(a: SpinorState, b: SpinorState) -> CycNumber:
    """The unique form with <a1- ... a12- v, v> = 1 and <u x, y> = -<x, u y>."""
    beta = _pair_signs()
    total = CycNumber.from_rational(0, 4)
    for mask, ca in a.coords.items():
        cb = b.coords.get(_FULL ^ mask)
        if cb is not None:
            total = total + ca * cb * int(beta[mask])
    return total


def gram_determinant_unit() -> int:
    """det of the Gram matrix of the form on the m_S basis.

    The matrix is a signed permutation (S pairs only with its complement),
    so the determinant is the permutation sign times the product of the
    4096 pairing signs; nonzero means nondegenerate."""
    beta = _pair_signs()
    if not np.all(np.abs(beta) == 1):
        return 0
    # the permutation S -> complement(S) is a product of 2048 transpositions
    perm_sign = 1 if (DIM // 2) % 2 == 0 else -1
    return perm_sign * int(np.prod(beta.astype(np.int64)))


# ---------------------------------------------------------------------------
# super traces from eigenvalue data


def _trace_level(thetas):
    level = 2
    for t in thetas:
        d = 2 * Fraction(t).denominator
        level = level * d // gcd(level, d)
    return level


def spinor_supertrace_closed(thetas, nu_choice: int = 1) -> CycNumber:
    """nu * prod_i (1 - lambda_i^(-1)) with lambda_i = e^(2*pi*i*theta_i).

    thetas: 12 rationals in [0, 1/2] choosing one eigenvalue per inverse
    pair; nu = nu_choice * prod_i e^(pi*i*theta_i) is the half-angle
    square root of prod lambda_i.
    """
    thetas = [Fraction(t) for t in thetas]
    if len(thetas) != PAIRS:
        raise PairingError("expected 12 eigenvalue pairs, got %d" % len(thetas))
    level = _trace_level(thetas)
    nu_exp = sum(int(t * level) // 2 for t in thetas)
    weights = {nu_exp % level: nu_choice}
    for t in thetas:
        shift = -int(t * level)
        new = {}
        for e, w in weights.items():
            new[e] = new.get(e, 0) + w
            e2 = (e + shift) % level
            new[e2] = new.get(e2, 0) - w
        weights = new
    return CycNumber.from_exponents(level, weights)


def spinor_supertrace_oracle(thetas, nu_choice: int = 1) -> CycNumber:
    """The same value by explicit summation over all 4096 subsets S of the
    pair set: nu * sum_S (-1)^|S| prod_{i in S} lambda_i^(-1).
    No product formula is used; subsets are walked in Gray-code order."""
    thetas = [Fraction(t) for t in thetas]
    if len(thetas) != PAIRS:
        raise PairingError("expected 12 eigenvalue pairs, got %d" % len(thetas))
    level = _trace_level(thetas)
    shifts = [-int(t * level) for t in thetas]
    nu_exp = sum(int(t * level) // 2 for t in thetas)
    weights = {nu_exp % level: nu_choice}
    exp = 0
    parity = 1
    members = 0
    for n in range(1, DIM):
        k = (n & -n).bit_length() - 1
        if members >> k & 1:
            exp -= shifts[k]
            members &= ~(1 << k)
        else:
            exp += shifts[k]
            members |= 1 << k
        parity = -parity
        e = (nu_exp + exp) % level
        weights[e] = weights.get(e, 0) + parity * nu_choice
    return CycNumber.from_exponents(level, weights)


def class_supertraces(shape, nu_choice: int = 1):
    """(closed form, subset oracle) for a Frame shape's eigenvalue pairs."""
    thetas = shape.eigenvalue_pairs()
    return (
        spinor_supertrace_closed(thetas, nu_choice),
        spinor_supertrace_oracle(thetas, nu_choice),
    )


# ---------------------------------------------------------------------------
# dense engine: Gaussian-integer arrays over a common denominator 2^e

_ARANGE = np.arange(DIM, dtype=np.int64)
_BITS = [((_ARANGE >> k) & 1).astype(np.int64) for k in range(PAIRS)]
_SIGN_RE = np.array([1, 0, -1, 0], dtype=np.int64)
_SIGN_IM = np.array([0, 1, 0, -1], dtype=np.int64)
_INPUT_LIMIT = 1 << 26


class DenseState:
    """State as Gaussian-integer arrays: value_S = (re_S + i im_S)/2^e."""

    __slots__ = ("re", "im", "e")

    def __init__(self, re, im, e: int):
        self.re = re
        self.im = im
        self.e = e

    @staticmethod
    def from_state(state: SpinorState) -> "DenseState":
        re = np.zeros(DIM, dtype=np.int64)
        im = np.zeros(DIM, dtype=np.int64)
        emax = 0
        items = []
        for mask, c in state.coords.items():
            c4 = c.raise_level(4) if c.level != 4 else c
            x, y = c4.coords
            for v in (x, y):
                if v.denominator & (v.denominator - 1):
                    raise ValidationError("dense engine needs dyadic coordinates")
                emax = max(emax, v.denominator.bit_length() - 1)
            items.append((mask, x, y))
        for mask, x, y in items:
            re[mask] = x.numerator << (emax - (x.denominator.bit_length() - 1))
            im[mask] = y.numerator << (emax - (y.denominator.bit_length() - 1))
        return DenseState(re, im, emax)

    def to_state(self) -> SpinorState:
        coords = {}
        den = 1 << self.e
        for mask in np.nonzero(self.re | self.im)[0]:
            coords[int(mask)] = CycNumber(
                4,
                (Fraction(int(self.re[mask]), den), Fraction(int(self.im[mask]), den)),
            )
        return SpinorState(coords)

    def equals(self, other: "DenseState") -> bool:
        e = max(self.e, other.e)
        return bool(
            np.array_equal(self.re << (e - self.e), other.re << (e - other.e))
            and np.array_equal(self.im << (e - self.e), other.im << (e - other.e))
        )

    def max_abs(self) -> int:
        m = 0
        if self.re.size:
            m = max(int(np.abs(self.re).max()), int(np.abs(self.im).max()))
        return m


class WordTable:
    """Vectorized monomial word: out[S ^ toggle] += i^U(S) 2^T(S) in[S]."""

    __slots__ = ("toggle", "u0", "t0", "du", "dt")

    def __init__(self, op: ModeOperator):
        if op.half % 2:
            raise ValidationError("dense tables require an even word length")
        toggle = 0
        u0 = 0
        t0 = -op.half // 2
        du = []
        dt = []
        for k in range(PAIRS):
            m00, m01, m10, m11 = op.mats[k]
            if m00.is_zero() and m11.is_zero():
                toggle |= 1 << k
                ua, ta = m10.unit_and_power()  # input bit 0 -> output bit 1
                ub, tb = m01.unit_and_power()  # input bit 1 -> output bit 0
            elif m01.is_zero() and m10.is_zero():
                ua, ta = m00.unit_and_power()
                ub, tb = m11.unit_and_power()
            else:
                raise ValidationError("operator is not monomial")
            u0 += ua
            t0 += ta
            du.append(ub - ua)
            dt.append(tb - ta)
        self.toggle = toggle
        self.u0 = u0
        self.t0 = t0
        self.du = tuple(du)
        self.dt = tuple(dt)

    def min_shift(self) -> int:
        return self.t0 + sum(d for d in self.dt if d < 0)

    def apply_into(self, state: DenseState, out_re, out_im, out_e: int):
        """Accumulate 2^out_e * (word applied to state) into out arrays."""
        u = np.full(DIM, self.u0, dtype=np.int64)
        t = np.full(DIM, self.t0 + out_e - state.e, dtype=np.int64)
        for k in range(PAIRS):
            if self.du[k]:
                u += self.du[k] * _BITS[k]
            if self.dt[k]:
                t += self.dt[k] * _BITS[k]
        if int(t.min()) < 0:
            raise ValidationError("denominator headroom exhausted; raise out_e")
        pow2 = np.int64(1) << t
        u &= 3
        sr = _SIGN_RE[u]
        si = _SIGN_IM[u]
        idx = _ARANGE ^ self.toggle
        out_re[idx] += pow2 * (sr * state.re - si * state.im)
        out_im[idx] += pow2 * (sr * state.im + si * state.re)


def bilinear_dense(a: DenseState, b: DenseState) -> CycNumber:
    """bilinear_cm on dense states, with exact big-integer accumulation."""
    beta = _pair_signs().astype(object)
    idx = _ARANGE ^ _FULL
    ar, ai = a.re.astype(object), a.im.astype(object)
    br, bi = b.re[idx].astype(object), b.im[idx].astype(object)
    re = int(np.sum(beta * (ar * br - ai * bi)))
    im = int(np.sum(beta * (ar * bi + ai * br)))
    den = 1 << (a.e + b.e)
    return CycNumber(4, (Fraction(re, den), Fraction(im, den)))


# ---------------------------------------------------------------------------
# the lifted sign-change group and the idempotent


class GolayLift:
    """Multiplicative section C -> s(C) e_C over the Golay code.

    Signed generator words are extended along xor-subsets; since all lift
    words have doubly-even supports with pairwise even intersections, they
    commute and square to +1, so {+- s(C) e_C} is an elementary abelian
    group of order 8192 lifting the sign-change group.
    """

    def __init__(self, code, frame=None, generator_signs=None):
        self.code = code
        self.frame = tuple(frame) if frame is not None else None
        if self.frame is not None and len(self.frame) != NGEN:
            raise ValidationError("coordinate frame must have 24 vectors")
        self.generator_signs = tuple(generator_signs or (1,) * 12)
        section = {0: 1}
        masks = [0]
        for j, gen in enumerate(code.generators):
            for prev in list(masks):
                nxt = prev ^ gen
                section[nxt] = section[prev] * self.generator_signs[j] * reorder_sign(prev, gen)
                masks.append(nxt)
        self.section = section
        self._masks = sorted(section)
        self._ops = None
        self._tables = None

    # -- signed words ------------------------------------------------------

    def signed_word(self, cmask: int) -> CliffordWord:
        if cmask not in self.section:
            raise ValidationError("mask %06x is not a codeword" % cmask)
        return word_from_mask(cmask, self.section[cmask])

    def word_operator(self, cmask: int) -> ModeOperator:
        return op_from_mask(cmask, self.section[cmask])

    def operators(self):
        if self._ops is None:
            self._ops = [self.word_operator(c) for c in self._masks]
        return self._ops

    def tables(self):
        if self._tables is None:
            self._tables = [WordTable(op) for op in self.operators()]
        return self._tables

    # -- group structure ----------------------------------------------------

    def verify_squares(self):
        """(s(C) e_C)^2 = +1 for all 4096 codewords, exhaustively."""
        for c, op in zip(self._masks, self.operators()):
            if not (op * op).is_identity():
                raise VerificationFailure("square of lifted %06x is not +1" % c)
        return True

    def verify_closure(self, samples: int = 1000, seed: int = 7):
        """s(C)e_C * s(D)e_D = s(C+D)e_{C+D} on random codeword pairs."""
        rng = random.Random(seed)
        for _ in range(samples):
            c, d = rng.choice(self._masks), rng.choice(self._masks)
            if self.signed_word(c) * self.signed_word(d) != self.signed_word(c ^ d):
                raise VerificationFailure("closure fails at %06x * %06x" % (c, d))
        return True

    def group_order(self) -> int:
        """Order of {+- s(C) e_C}: the 4096 distinct supports, doubled."""
        return 2 * len(set(self._masks))

    # -- the idempotent t = 2^(-12) * sum of lifted elements ----------------

    def idempotent_apply(self, state: SpinorState) -> SpinorState:
        if len(state.coords) <= 16:
            return self._apply_t_sparse(state)
        return self.apply_t_dense(DenseState.from_state(state)).to_state()

    def _apply_t_sparse(self, state: SpinorState) -> SpinorState:
        out = {}
        for mask, c in state.coords.items():
            for op in self.operators():
                target, g, half = op.apply_basis(mask)
                if g.is_zero():
                    continue
                val = g.to_cyc(half) * c
                out[target] = out[target] + val if target in out else val
        return SpinorState(out).scaled(Fraction(1, DIM))

    def apply_t_dense(self, dense: DenseState) -> DenseState:
        if dense.max_abs() > _INPUT_LIMIT:
            raise ValidationError("dense state too large for the exact int64 path")
        out_e = dense.e + 12  # covers the worst 2^(-half/2) = 2^(-12)
        out_re = np.zeros(DIM, dtype=np.int64)
        out_im = np.zeros(DIM, dtype=np.int64)
        for table in self.tables():
            table.apply_into(dense, out_re, out_im, out_e)
        result = DenseState(out_re, out_im, out_e + 12)  # divide by 4096
        if result.max_abs() > 1 << 62:
            raise ValidationError("dense accumulation overflow")
        return result

    def apply_signed_word(self, cmask: int, state: SpinorState) -> SpinorState:
        return act(self.signed_word(cmask), state)

    def invariant_vector(self) -> SpinorState:
        return self.idempotent_apply(SpinorState.vacuum())


def golay_lift_section(code, frame=None) -> GolayLift:
    """Construct the lift, searching generator signs until the idempotent
    has a nonzero image of the ground state (a property of the chosen
    section; the extension itself always splits here)."""
    candidates = [(1,) * 12]
    candidates += [tuple(-1 if i == j else 1 for i in range(12)) for j in range(12)]
    for signs in candidates:
        lift = GolayLift(code, frame, signs)
        if not lift.invariant_vector().is_zero():
            return lift
    raise VerificationFailure("no generator-sign section with t v != 0 found")


def n1_checks(lift: GolayLift, seed: int = 11, orth_samples: int = 220):
    """Structure checks backing the supersymmetry element: lifted group of
    order 8192 with all squares +1, t idempotent, ground image invariant
    and non-isotropic, orthogonality over short subsets.

    Returns a report dict; raises VerificationFailure on any failure.
    """
    rng = random.Random(seed)
    report = {}

    lift.verify_squares()
    lift.verify_closure(seed=seed)
    report["group_order"] = lift.group_order()
    if report["group_order"] != 8192:
        raise VerificationFailure("lifted group has order %d" % report["group_order"])

    tv = lift.invariant_vector()
    if tv.is_zero():
        raise VerificationFailure("t v is zero")
    report["tv_components"] = len(tv.coords)
    dense_tv = DenseState.from_state(tv)

    # idempotency on the ground state image and on random states
    if not lift.apply_t_dense(dense_tv).equals(dense_tv):
        raise VerificationFailure("t is not idempotent on t v")
    for _ in range(10):
        coords = {}
        for _ in range(4):
            coords[rng.randrange(DIM)] = CycNumber(
                4, (Fraction(rng.randrange(-8, 9)), Fraction(rng.randrange(-8, 9)))
            )
        s = SpinorState(coords)
        ts = lift.apply_t_dense(DenseState.from_state(s))
        if not lift.apply_t_dense(ts).equals(ts):
            raise VerificationFailure("t not idempotent on a random state")
    report["idempotent_states_checked"] = 11

    # invariance of t v under every lifted sign change, exhaustively
    for cmask, table in zip(lift._masks, lift.tables()):
        out_re = np.zeros(DIM, dtype=np.int64)
        out_im = np.zeros(DIM, dtype=np.int64)
        out_e = dense_tv.e + 12
        table.apply_into(dense_tv, out_re, out_im, out_e)
        if not DenseState(out_re, out_im, out_e).equals(dense_tv):
            raise VerificationFailure("t v moved by lifted %06x" % cmask)
    report["invariance_checked"] = len(lift._masks)

    # norm and orthogonality of the invariant vector
    norm = bilinear_dense(dense_tv, dense_tv)
    if norm.is_zero():
        raise VerificationFailure("<t v, t v> = 0")
    checked = 0
    seen = set()
    while checked < orth_samples:
        size = rng.choice((2, 4))
        csub = tuple(sorted(rng.sample(range(1, NGEN + 1), size)))
        if csub in seen:
            continue
        seen.add(csub)
        mask = 0
        for i in csub:
            mask |= 1 << (i - 1)
        table = WordTable(op_from_mask(mask))
        out_re = np.zeros(DIM, dtype=np.int64)
        out_im = np.zeros(DIM, dtype=np.int64)
        out_e = dense_tv.e + max(0, -table.min_shift())
        table.apply_into(dense_tv, out_re, out_im, out_e)
        val = bilinear_dense(DenseState(out_re, out_im, out_e), dense_tv)
        if not val.is_zero():
            raise VerificationFailure("<e_C tv, tv> != 0 for C=%s" % (csub,))
        checked += 1
    report["orthogonality_samples"] = checked

    report["tv_norm"] = norm
    alpha_sq = CycNumber.from_rational(8, 4) / norm
    report["alpha_squared"] = alpha_sq
    report["alpha"] = _monomial_sqrt(alpha_sq)
    report["passed"] = True
    return report


def _monomial_sqrt(value: CycNumber):
    """Exact square root of i^u * 2^m values, as a level-8 number; None
    when the value is not of that shape (a root still exists in C)."""
    v4 = value.raise_level(4) if 4 % value.level == 0 else None
    if v4 is None:
        return None
    re, im = v4.coords
    if (re == 0) == (im == 0):
        return None
    try:
        u, m = _gauss_from_fractions(re, im).unit_and_power()
    except ValueError:
        return None
    root = zeta(8, u)
    if m % 2:
        root = root * (zeta(8, 1) + zeta(8, -1))
        m -= 1
    half = m // 2
    scale = Fraction(1 << half) if half >= 0 else Fraction(1, 1 << (-half))
    return root * scale
