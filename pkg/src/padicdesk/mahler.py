"""Mahler (binomial) calculus on Z_p and on the box domains of the group side.

Continuous functions are handled through finite value tables at a stated
depth; all identities are verified on finite quotients with exact
arithmetic.  Norms are reported as exact exponents e (meaning p^e), with
-inf for the zero function.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import factorial

from .characters import PCharacter, gauss_sum
from .cyclotomic import CyclotomicElement, zeta_power_sum
from .rationals import INF, valuation


def binom_at(x, k: int):
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(x) - i
    return out / factorial(k)


class MahlerSeries:
    """Truncated expansion f(x) = sum a_k binom(p^scale * x, k)."""

    __slots__ = ("p", "coeffs", "scale")

    def __init__(self, p: int, coeffs, scale: int = 0):
        self.p = p
        self.coeffs = [Fraction(c) for c in coeffs]
        self.scale = scale

    @property
    def depth(self) -> int:
        return len(self.coeffs)

    def evaluate(self, x) -> Fraction:
        t = Fraction(x) * self.p ** self.scale
        if t.denominator != 1:
            raise ValueError("argument outside the domain p^-scale Z")
        out = Fraction(0)
        for k, a in enumerate(self.coeffs):
            if a:
                out += a * binom_at(t, k)
        return out

    def __repr__(self):
        return f"MahlerSeries(p={self.p}, K={self.depth}, scale={self.scale})"


def mahler_coefficients(values, p: int, K: int | None = None, scale: int = 0) -> MahlerSeries:
    """Coefficients a_k = (forward difference)^k f(0) from a value table.

    The table lists f on {0, ..., len-1} (scaled domain); reconstruction
    through binomials reproduces the first K table entries exactly.
    """
    vals = [Fraction(v) for v in values]
    if K is None:
        K = len(vals)
    if K > len(vals):
        raise ValueError(f"K = {K} exceeds table size {len(vals)}")
    coeffs = []
    row = vals
    for _ in range(K):
        coeffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
        if not row:
            break
    coeffs += [Fraction(0)] * (K - len(coeffs))
    return MahlerSeries(p, coeffs, scale)


def epsilon_norm(series: MahlerSeries, eps) -> Fraction | float:
    """sup_k p^(k eps) |a_k| as the exact exponent sup(k eps - v_p(a_k))."""
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be >= 0")
    best = -INF
    for k, a in enumerate(series.coeffs):
        if a == 0:
            continue
        e = k * eps - valuation(a, series.p)
        if best == -INF or e > best:
            best = e
    return best


def series_product(f: MahlerSeries, g: MahlerSeries) -> MahlerSeries:
    """Product series, computed through value tables (exact convolution)."""
    if f.p != g.p or f.scale != g.scale:
        raise ValueError("mixed series domains")
    K = f.depth + g.depth - 1
    vals = [f.evaluate(Fraction(x, f.p ** f.scale)) * g.evaluate(Fraction(x, f.p ** f.scale))
            for x in range(K)]
    return mahler_coefficients(vals, f.p, K, f.scale)


class LocallyAlgebraicCharacter:
    """x -> x^k * chi_fin(x) on Z_p^*."""

    __slots__ = ("exponent", "finite_part")

    def __init__(self, exponent: int, finite_part: PCharacter):
        self.exponent = exponent
        self.finite_part = finite_part

    def __call__(self, x):
        x = Fraction(x)
        return self.finite_part(x) * (x ** self.exponent)

    def __mul__(self, other: "LocallyAlgebraicCharacter"):
        return LocallyAlgebraicCharacter(self.exponent + other.exponent,
                                         self.finite_part * other.finite_part)


# ---------------------------------------------------------------------------
# box domains


class BoxFunction:
    """Finite value table on the quotient of a box domain.

    shape "G": (p^-beta Z_p)^n + Z_p^(n-1), coordinates (a_2, ..., a_2n);
    shape "H": (p^-beta Z_p)^(n-1).  The table is indexed by mixed-radix
    tuples m with coordinate a = m / p^beta (first block) or a = m
    (integral block), each modulo p^(depth).
    """

    def __init__(self, p: int, n: int, beta: int, shape: str, depth: int, values: dict):
        if shape not in ("G", "H"):
            raise ValueError("shape must be 'G' or 'H'")
        self.p = p
        self.n = n
        self.beta = beta
        self.shape = shape
        self.depth = depth
        self.values = dict(values)

    def ncoords(self) -> int:
        return 2 * self.n - 1 if self.shape == "G" else self.n - 1

    def coordinate(self, index: tuple) -> tuple:
        """Rational coordinates represented by a mixed-radix index tuple."""
        scaled = self.n if self.shape == "G" else self.n - 1
        out = []
        for pos, m in enumerate(index):
            if pos < scaled:
                out.append(Fraction(m, self.p ** self.beta))
            else:
                out.append(Fraction(m))
        return tuple(out)

    def radices(self) -> list:
        scaled = self.n if self.shape == "G" else self.n - 1
        return [self.p ** (self.depth + (self.beta if pos < scaled else 0))
                for pos in range(self.ncoords())]

    def extend(self, depth: int) -> "BoxFunction":
        """Pull back to a deeper quotient (values constant on refined classes)."""
        if depth < self.depth:
            raise ValueError("extension must deepen the table")
        if depth == self.depth:
            return self
        old_radix = self.radices()
        out = {}
        new = BoxFunction(self.p, self.n, self.beta, self.shape, depth, {})
        for idx in iproduct(*[range(r) for r in new.radices()]):
            key = tuple(x % r for x, r in zip(idx, old_radix))
            out[idx] = self.values[key]
        new.values = out
        return new

    def restrict(self, depth: int) -> "BoxFunction":
        """Push down to a shallower quotient; requires constancy on fibers."""
        if depth > self.depth:
            raise ValueError("restriction must shallow the table")
        shallow = BoxFunction(self.p, self.n, self.beta, self.shape, depth, {})
        out = {}
        for idx, val in self.values.items():
            key = tuple(x % r for x, r in zip(idx, shallow.radices()))
            if key in out:
                if out[key] != val:
                    raise ValueError("table is not constant on depth fibers")
            else:
                out[key] = val
        shallow.values = out
        return shallow

    def to_json(self) -> dict:
        keys = sorted(self.values)
        return {
            "p": self.p, "n": self.n, "beta": self.beta, "shape": self.shape,
            "depth": self.depth, "radix": self.radices(),
            "table": [[list(k), _value_json(self.values[k])] for k in keys],
        }


def _value_json(v):
    if isinstance(v, CyclotomicElement):
        return v.to_json()
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def in_unit_box(point, n: int, p: int) -> bool:
    """Membership of (a_2, ..., a_2n) in Z_p^(n-1) + Z_p^* + (p Z_p)^(n-1)."""
    if len(point) != 2 * n - 1:
        raise ValueError("point has wrong length")
    head, middle, tail = point[: n - 1], point[n - 1], point[n:]
    if any(valuation(a, p) < 0 for a in head):
        return False
    if valuation(middle, p) != 0:
        return False
    return all(valuation(a, p) >= 1 for a in tail)


def weighted_indicator(beta: int, chi: PCharacter, point, M: int | None = None):
    """chi(a_(n+1)) on the unit box, 0 elsewhere on the ambient box.

    ``point`` lists the 2n-1 coordinates (a_2, ..., a_2n); the first n may
    have denominator up to p^beta, the rest must be p-integral.  M is the
    table depth; it must cover beta plus the conductor.
    """
    p = chi.p
    n = (len(point) + 1) // 2
    if 2 * n - 1 != len(point):
        raise ValueError("point must have odd length 2n-1")
    c = chi.conductor_exp
    if c > beta:
        raise ValueError("conductor must divide p^beta")
    if M is not None and M < beta + c:
        raise ValueError(f"depth M = {M} too small; need >= beta + conductor = {beta + c}")
    for pos, a in enumerate(point):
        v = valuation(a, p)
        bound = -beta if pos < n else 0
        if v != INF and v < bound:
            raise ValueError("point not representable in the box at this depth")
    if not in_unit_box(point, n, p):
        return CyclotomicElement.from_rational(0)
    return chi(point[n - 1])


# ---------------------------------------------------------------------------
# Fourier expansions over p-power roots of unity


class EqualityReport:
    """Outcome of a pointwise identity check on a finite quotient."""

    def __init__(self, passed: bool, npoints: int, counterexample=None, detail: str = ""):
        self.passed = passed
        self.npoints = npoints
        self.counterexample = counterexample
        self.detail = detail

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "points_checked": self.npoints,
            "counterexample": None if self.counterexample is None else list(map(str, self.counterexample)),
            "detail": self.detail,
        }


def fourier_expand_fchi(beta: int, beta_prime: int, chi: PCharacter) -> EqualityReport:
    """Check the root-of-unity expansion of the p^-beta'-unit slice function.

    The slice function a -> chi(p^beta' a) on p^-beta' Z_p^* (0 elsewhere)
    equals (p^(beta-beta') G(chi^-1))^-1 * sum over c in (Z/p^beta)^* of
    chi(c)^-1 zeta_{p^beta}^(c p^beta a), pointwise on p^-beta Z / p^beta Z.
    """
    p = chi.p
    if not (1 <= beta_prime <= beta):
        raise ValueError("need 1 <= beta' <= beta")
    if chi.conductor_exp != beta_prime:
        raise ValueError(f"conductor p^{chi.conductor_exp} != p^{beta_prime}")
    chi_inv = chi.inverse()
    gauss_inv = gauss_sum(chi_inv)
    root_order = p ** beta
    field = _field_order(root_order, chi.order())
    scale = Fraction(1, p ** (beta - beta_prime)) / gauss_inv.embed(field)
    npoints = 0
    for m in range(p ** (2 * beta)):
        a = Fraction(m, p ** beta)
        lhs = _slice_value(chi, beta_prime, a).embed(field)
        weights = {}
        for c in range(1, root_order):
            if c % p == 0:
                continue
            cv = chi_inv(c)
            vstep = field // cv.m
            shift = (c * m) % root_order * (field // root_order)
            mono = cv.as_monomial()
            items = [mono] if mono is not None else list(enumerate(cv.coeffs))
            for k, coeff in items:
                if coeff:
                    key = (k * vstep + shift) % field
                    weights[key] = weights.get(key, Fraction(0)) + coeff
        rhs = zeta_power_sum(field, weights) * scale
        npoints += 1
        if lhs != rhs:
            return EqualityReport(False, npoints, (a,), "slice-function expansion mismatch")
    return EqualityReport(True, npoints, detail="slice-function expansion")


def _slice_value(chi: PCharacter, beta_prime: int, a: Fraction) -> CyclotomicElement:
    p = chi.p
    if valuation(a, p) != -beta_prime:
        return CyclotomicElement.from_rational(0)
    return chi(a * p ** beta_prime)


def fourier_expand_unit_indicator(p: int, beta: int, beta_prime: int, n: int) -> EqualityReport:
    """Check the expansion of the indicator of (p^-beta' Z_p)^(n-1).

    Pointwise on (p^-beta Z / Z)^(n-1):
    indicator = p^-(n-1)(beta-beta') * sum over d in (p^beta' Z / p^beta)^(n-1)
    of prod_i zeta_{p^beta}^(d_i p^beta a_i).
    """
    if not (0 <= beta_prime <= beta):
        raise ValueError("need 0 <= beta' <= beta")
    root_order = p ** beta
    ncoord = n - 1
    scale = Fraction(1, p ** ((n - 1) * (beta - beta_prime)))
    dvals = [p ** beta_prime * e for e in range(p ** (beta - beta_prime))]
    npoints = 0
    for ms in iproduct(range(p ** beta), repeat=ncoord):
        avals = [Fraction(m, p ** beta) for m in ms]
        lhs = Fraction(1) if all(valuation(a, p) >= -beta_prime or a == 0 for a in avals) else Fraction(0)
        weights: dict = {}
        for ds in iproduct(dvals, repeat=ncoord):
            expo = sum(d * m for d, m in zip(ds, ms)) % root_order
            weights[expo] = weights.get(expo, Fraction(0)) + 1
        rhs = zeta_power_sum(root_order, weights) * scale
        npoints += 1
        if rhs != CyclotomicElement.from_rational(lhs, root_order):
            return EqualityReport(False, npoints, avals, "unit-indicator expansion mismatch")
    return EqualityReport(True, npoints, detail="unit-indicator expansion")


def _field_order(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)
