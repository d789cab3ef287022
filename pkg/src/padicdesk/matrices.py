"""Dense exact matrices over Fraction, CyclotomicElement or ArtinianElement.

Sizes in this package stay small (<= 6ish for Artinian coefficients,
<= 2n <= 6 for group elements), so determinants are computed by expansion
and inverses by adjugate-free elimination or nilpotent geometric series.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .artinian import ArtinianElement


def _sign(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


class ExactMatrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> "ExactMatrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __add__(self, other):
        return ExactMatrix([[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return ExactMatrix([[a - b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            out = []
            for i in range(self.nrows):
                row = []
                for j in range(other.ncols):
                    acc = self.rows[i][0] * other.rows[0][j]
                    for k in range(1, self.ncols):
                        acc = acc + self.rows[i][k] * other.rows[k][j]
                    row.append(acc)
                out.append(row)
            return ExactMatrix(out)
        return ExactMatrix([[a * other for a in r] for r in self.rows])

    def __rmul__(self, scalar):
        return ExactMatrix([[scalar * a for a in r] for r in self.rows])

    def scale(self, scalar) -> "ExactMatrix":
        return ExactMatrix([[a * scalar for a in r] for r in self.rows])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for i in range(self.nrows)]
                            for j in range(self.ncols)])

    def det(self):
        """Leibniz expansion; fine for the sizes used here."""
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        n = self.nrows
        total = None
        for perm in permutations(range(n)):
            term = self.rows[0][perm[0]]
            for i in range(1, n):
                term = term * self.rows[i][perm[i]]
            if _sign(perm) < 0:
                term = -term
            total = term if total is None else total + term
        return total

    def map(self, fn) -> "ExactMatrix":
        return ExactMatrix([[fn(a) for a in r] for r in self.rows])

    def __repr__(self):
        return "ExactMatrix(" + ", ".join(str(r) for r in self.rows) + ")"


def rational_inverse(mat: ExactMatrix) -> ExactMatrix:
    """Inverse of a matrix over Q by Gauss-Jordan elimination."""
    n = mat.nrows
    aug = [[Fraction(mat.rows[i][j]) for j in range(n)] +
           [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return ExactMatrix([row[n:] for row in aug])


def modular_inverse(mat: ExactMatrix, modulus: int) -> ExactMatrix:
    """Inverse of an integer matrix mod m (pivots must be units of Z/m)."""
    n = mat.nrows
    aug = [[int(mat.rows[i][j]) % modulus for j in range(n)] +
           [1 if i == j else 0 for j in range(n)] for i in range(n)]
    from math import gcd

    for col in range(n):
        piv = next((r for r in range(col, n) if gcd(aug[r][col], modulus) == 1), None)
        if piv is None:
            raise ZeroDivisionError("no unit pivot mod modulus")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, modulus)
        aug[col] = [(x * inv) % modulus for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % modulus for x, y in zip(aug[r], aug[col])]
    return ExactMatrix([row[n:] for row in aug])


def artinian_invert(mat: ExactMatrix) -> ExactMatrix:
    """Exact inverse of a matrix over an Artinian local ring.

    Requires the residue matrix (all T_i -> 0) to be invertible; the
    nilpotent correction is summed as a finite geometric series.
    """
    n = mat.nrows
    sample = mat.rows[0][0]
    if not isinstance(sample, ArtinianElement):
        raise TypeError("artinian_invert expects ArtinianElement entries")
    ngens, modulus = sample.ngens, sample.modulus

    def lift(x):
        return ArtinianElement.constant(ngens, x, modulus)

    residue = ExactMatrix([[e.constant_term() for e in row] for row in mat.rows])
    try:
        if modulus is None:
            res_inv = rational_inverse(residue).map(lift)
        else:
            res_inv = modular_inverse(residue, modulus).map(lift)
    except ZeroDivisionError:
        raise ZeroDivisionError("not a unit: residue matrix is singular")

    # mat = R(I + R^-1 N) with N nilpotent, so mat^-1 = (sum (-R^-1 N)^k) R^-1
    zero = ArtinianElement(ngens, {}, modulus)
    nilp = ExactMatrix([[e.nilpotent_part() for e in row] for row in mat.rows])
    m = res_inv * nilp
    ident = ExactMatrix.identity(n, lift(1), zero)
    out = ident
    power = ident
    for _ in range(ngens):
        power = power * m
        power = power.map(lambda e: -e)
        if all(e.is_zero() for row in power.rows for e in row):
            break
        out = out + power
    return out * res_inv
