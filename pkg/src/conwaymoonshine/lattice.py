"""The binary Golay code and the Leech lattice, built from scratch and
verified against their defining properties at build time.

Lattice vectors are stored in sqrt(8)-scaled integer coordinates: the true
inner product of rows x and y is (x . y)/8, so all arithmetic stays exact
and the frame vectors are the rows (8, 0, ..., 0), ...

Code words are 24-bit masks, bit i = coordinate i.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, sqrt

from .errors import MembershipError, ValidationError
from .frameshape import FrameShape

LENGTH = 24


def _popcount(x: int) -> int:
    return bin(x).count("1")


class BinaryCode:
    """A binary linear code of length 24 given by 12 generator masks."""

    def __init__(self, generators):
        self.generators = tuple(generators)
        if len(self.generators) != 12:
            raise ValidationError("expected 12 generators, got %d" % len(self.generators))
        self._echelon, self._pivots = _gf2_echelon(self.generators)
        if len(self._echelon) != 12:
            raise ValidationError("generators are not independent")

    @lru_cache(maxsize=1)
    def words(self) -> tuple:
        """All 4096 codewords, Gray-code ordered by generator subsets."""
        out = [0]
        for g in self.generators:
            out.extend(w ^ g for w in list(out))
        return tuple(out)

    def contains(self, mask: int) -> bool:
        for row, piv in zip(self._echelon, self._pivots):
            if mask >> piv & 1:
                mask ^= row
        return mask == 0

    def weight_distribution(self) -> dict:
        dist = {}
        for w in self.words():
            k = _popcount(w)
            dist[k] = dist.get(k, 0) + 1
        return dist

    def verify(self):
        """Full-enumeration check of the defining properties.

        Linear by construction; here: self-dual (dimension 12 and all pairs
        orthogonal), doubly-even, no words of weight 4, minimum weight 8.
        """
        dist = self.weight_distribution()
        if dist != {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}:
            raise ValidationError("wrong weight distribution: %s" % dist)
        for w in dist:
            if w % 4:
                raise ValidationError("code is not doubly even (weight %d)" % w)
        for i, a in enumerate(self.generators):
            for b in self.generators[i:]:
                if _popcount(a & b) % 2:
                    raise ValidationError("generators with odd intersection")
        return True


def _gf2_echelon(rows):
    echelon, pivots = [], []
    for row in rows:
        for r, p in zip(echelon, pivots):
            if row >> p & 1:
                row ^= r
        if row:
            piv = row.bit_length() - 1
            echelon.append(row)
            pivots.append(piv)
    # back-substitute for a unique reduced form
    for i in range(len(echelon)):
        for j in range(len(echelon)):
            if i != j and echelon[j] >> pivots[i] & 1:
                echelon[j] ^= echelon[i]
    order = sorted(range(len(echelon)), key=lambda i: -pivots[i])
    return [echelon[i] for i in order], [pivots[i] for i in order]


@lru_cache(maxsize=1)
def build_golay() -> BinaryCode:
    """Extended quadratic-residue construction at p = 23.

    Row u (u = 0..22) has support {v : v - u is a nonzero square mod 23}
    plus the extension coordinate 23; the all-ones word completes the span.
    The 24 rows are reduced to 12 independent generators over GF(2), and
    the resulting code is verified exhaustively.
    """
    p = 23
    residues = {(i * i) % p for i in range(1, p)}
    rows = []
    for u in range(p):
        mask = 1 << p
        for v in range(p):
            if v != u and (v - u) % p in residues:
                mask |= 1 << v
        rows.append(mask)
    rows.append((1 << LENGTH) - 1)
    echelon, _ = _gf2_echelon(rows)
    if len(echelon) != 12:
        raise ValidationError("quadratic-residue rows span dimension %d" % len(echelon))
    code = BinaryCode(echelon)
    code.verify()
    return code


class IntegerLattice:
    """Rank-24 lattice in sqrt(8)-scaled integer coordinates."""

    def __init__(self, basis):
        self.basis = tuple(tuple(int(c) for c in row) for row in basis)
        if len(self.basis) != LENGTH or any(len(r) != LENGTH for r in self.basis):
            raise ValidationError("basis must be 24 rows of 24 integers")
        self._inv = _invert_matrix([[Fraction(c) for c in row] for row in self.basis])

    def gram8(self):
        """Integer matrix of scaled dot products b_i . b_j (= 8 * Gram)."""
        return [
            [sum(a * b for a, b in zip(ri, rj)) for rj in self.basis]
            for ri in self.basis
        ]

    def gram(self):
        return [[Fraction(v, 8) for v in row] for row in self.gram8()]

    def gram_determinant(self) -> Fraction:
        det8 = _int_determinant(self.gram8())
        return Fraction(det8, 8**LENGTH)

    def inner(self, x, y) -> Fraction:
        return Fraction(sum(a * b for a, b in zip(x, y)), 8)

    def contains(self, x) -> bool:
        """Exact membership: solve c . basis = x and test integrality."""
        coords = _vec_mat(x, self._inv)
        return all(c.denominator == 1 for c in coords)

    def verify(self):
        """Even, determinant one, no vectors of norm below 4."""
        g = self.gram()
        for i in range(LENGTH):
            v = g[i][i]
            if v.denominator != 1 or v.numerator % 2:
                raise ValidationError("Gram diagonal %s is not an even integer" % v)
            for j in range(LENGTH):
                if g[i][j].denominator != 1:
                    raise ValidationError("Gram entry %s is not integral" % g[i][j])
        if self.gram_determinant() != 1:
            raise ValidationError("Gram determinant %s != 1" % self.gram_determinant())
        for norm in (1, 2, 3):
            if self.shell_count(norm):
                raise ValidationError("unexpected vectors of norm %d" % norm)
        return True

    def shell_count(self, norm: int) -> int:
        """Number of lattice vectors of the given norm, by exhaustive
        depth-first enumeration with Cholesky bounds on the Gram matrix."""
        return _shell_count(self.basis, 8 * norm)

    def __repr__(self):
        return "IntegerLattice(rank 24, det %s)" % self.gram_determinant()


@lru_cache(maxsize=4)
def build_leech(code: BinaryCode | None = None) -> IntegerLattice:
    """Standard Golay-code construction of the Leech lattice.

    In scaled coordinates the lattice is generated by 2*chi_C for code
    generators C, the vectors 4(e_1 + e_i) and 8 e_1, and the odd vector
    (-3, 1, ..., 1); the spanning set is reduced to a 24-row basis over Z
    and all lattice invariants are verified.
    """
    if code is None:
        code = build_golay()
    gens = []
    gens.append([-3] + [1] * 23)
    for c in code.generators:
        gens.append([2 if c >> i & 1 else 0 for i in range(LENGTH)])
    for i in range(1, LENGTH):
        row = [0] * LENGTH
        row[0] = 4
        row[i] = 4
        gens.append(row)
    first = [0] * LENGTH
    first[0] = 8
    gens.append(first)
    for g in gens:
        if not _leech_congruences(g, code):
            raise ValidationError("generator %s fails the defining congruences" % (g,))
    basis = _integer_row_basis(gens)
    if len(basis) != LENGTH:
        raise ValidationError("generators span rank %d" % len(basis))
    basis = _lll_reduce(basis)
    lat = IntegerLattice(basis)
    lat.verify()
    return lat


def _leech_congruences(x, code) -> bool:
    """The classical description: coordinates all congruent mod 2 (to m),
    the mod-4 pattern supported on a codeword, coordinate sum = 4m mod 8."""
    m = x[0] % 2
    if any(c % 2 != m for c in x):
        return False
    mask = sum(1 << i for i, c in enumerate(x) if (c - m) % 4 == 2)
    if not code.contains(mask):
        return False
    return sum(x) % 8 == 4 * m % 8


def coordinate_frame(lat: IntegerLattice):
    """The 24 frame vectors 8 e_i: norm 8, orthogonal, congruent mod 2*Lattice."""
    frame = []
    for i in range(LENGTH):
        v = [0] * LENGTH
        v[i] = 8
        frame.append(tuple(v))
    for i, v in enumerate(frame):
        if not lat.contains(v):
            raise ValidationError("frame vector %d is not in the lattice" % i)
        if lat.inner(v, v) != 8:
            raise ValidationError("frame vector %d has norm %s" % (i, lat.inner(v, v)))
        for w in frame[i + 1 :]:
            if lat.inner(v, w) != 0:
                raise ValidationError("frame vectors %s, %s not orthogonal" % (v, w))
            half_diff = [(a - b) // 2 for a, b in zip(v, w)]
            if not lat.contains(half_diff):
                raise ValidationError("frame vectors not congruent mod doubled lattice")
    return frame


def sign_change_frameshape(codeword: int, code: BinaryCode | None = None):
    """Frame shape and trace of the sign change supported on a codeword.

    The diagonal matrix with -1 on the support has characteristic
    polynomial (1-x)^(24-w) (1+x)^w = (1-x)^(24-2w) (1-x^2)^w.
    """
    if code is None:
        code = build_golay()
    if not code.contains(codeword):
        raise MembershipError("mask %06x is not a Golay codeword" % codeword)
    w = _popcount(codeword)
    shape = FrameShape({1: LENGTH - 2 * w, 2: w})
    return shape, LENGTH - 2 * w


def apply_sign_change(codeword: int, x):
    """Act on scaled coordinates by the sign change of a codeword."""
    return tuple(-c if codeword >> i & 1 else c for i, c in enumerate(x))


# -- exact linear algebra helpers -------------------------------------------


def _invert_matrix(rows):
    n = len(rows)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValidationError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _vec_mat(x, mat):
    n = len(mat)
    return [sum(Fraction(x[i]) * mat[i][j] for i in range(n)) for j in range(n)]


def _int_determinant(rows):
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _integer_row_basis(gens):
    """Hermite-style reduction of integer rows to a basis of their span."""
    rows = [list(r) for r in gens if any(r)]
    basis = []
    for col in range(LENGTH):
        active = [r for r in rows if r[col] != 0]
        if not active:
            continue
        while True:
            active.sort(key=lambda r: abs(r[col]))
            piv, rest = active[0], active[1:]
            if not rest:
                break
            for r in rest:
                q = r[col] // piv[col]
                if q:
                    for j in range(LENGTH):
                        r[j] -= q * piv[j]
            active = [piv] + [r for r in rest if r[col] != 0]
            if len(active) == 1:
                break
        if piv[col] < 0:
            for j in range(LENGTH):
                piv[j] = -piv[j]
        basis.append(piv)
        rows = [r for r in rows if r is not piv and any(r)]
    return basis


def _lll_reduce(basis, delta=Fraction(3, 4)):
    """Textbook LLL over exact rationals (integer vectors in, integers out).

    Size reductions update the mu table in place; the Gram-Schmidt data is
    recomputed only after swaps.
    """
    b = [list(r) for r in basis]
    n = len(b)

    def gs():
        star = []
        norms = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(c) for c in b[i]]
            for j in range(i):
                mu[i][j] = sum(Fraction(x) * y for x, y in zip(b[i], star[j])) / norms[j]
                if mu[i][j]:
                    v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
            star.append(v)
            norms.append(sum(x * x for x in v))
        return norms, mu

    norms, mu = gs()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if 2 * abs(mu[k][j]) > 1:
                r = round(mu[k][j])
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                for i in range(j):
                    mu[k][i] -= r * mu[j][i]
                mu[k][j] -= r
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            norms, mu = gs()
            k = max(k - 1, 1)
    return b


def _shell_count(basis, target8: int) -> int:
    """Count lattice vectors with scaled norm target8 = 8*norm.

    Depth-first Fincke-Pohst over the (LLL-reduced) basis: write
    x.G.x = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2 from an exact Gram
    matrix, then walk coordinate ranges outermost-first.  Bounds carry
    float slack; a leaf counts when its accumulated norm lands in a small
    window around the target.  Scaled norms are integer multiples of 16,
    so the window decides membership exactly.
    """
    n = len(basis)
    d, m = _cholesky_data(basis)
    eps = 1e-7
    window = 1e-3
    count = 0
    x = [0] * n

    def walk(level: int, budget: float) -> None:
        nonlocal count
        c = 0.0
        for j in range(level + 1, n):
            if x[j]:
                c += m[level][j] * x[j]
        half = sqrt(max(budget, 0.0) / d[level])
        lo = ceil(-half - c - eps)
        hi = floor(half - c + eps)
        for xi in range(lo, hi + 1):
            t = xi + c
            rem = budget - d[level] * t * t
            if rem < -window:
                continue
            x[level] = xi
            if level == 0:
                if abs(rem) <= window:
                    count += 1
            else:
                walk(level - 1, rem)
        x[level] = 0

    walk(n - 1, float(target8) + eps)
    return count


def _cholesky_data(basis):
    """Float Cholesky-style (d, m) for the scaled Gram of the basis."""
    n = len(basis)
    q = [
        [float(sum(a * b for a, b in zip(ri, rj))) for rj in basis]
        for ri in basis
    ]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return [q[i][i] for i in range(n)], q
