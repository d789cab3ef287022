"""Interpolation constants: Gauss sums, modulus character, epsilon factors.

Values live in the group generated by a cyclotomic coefficient, a formal
half-integral power of p, and formal Satake symbols.  The half power of p
is carried as an integer exponent in units of 1/2 and never resolved into
the coefficient field; Satake symbols theta_(i, tau) obey the self-dual
relation theta_(2n+1-i) = theta_i^-1 and stay formal unless specialized.
"""

from __future__ import annotations

from fractions import Fraction

from .characters import PCharacter, gauss_sum
from .cyclotomic import CyclotomicElement


class HalfPowerValue:
    """coeff * p^(half_exp / 2) * (monomial in formal Satake symbols)."""

    __slots__ = ("p", "coeff", "half_exp", "theta")

    def __init__(self, p: int, coeff=1, half_exp: int = 0, theta=None):
        self.p = p
        if not isinstance(coeff, CyclotomicElement):
            coeff = CyclotomicElement.from_rational(Fraction(coeff))
        self.coeff = coeff
        self.half_exp = int(half_exp)
        th = {}
        for key, e in dict(theta or {}).items():
            if e:
                th[tuple(key)] = th.get(tuple(key), 0) + e
        self.theta = tuple(sorted((k, e) for k, e in th.items() if e))
        if self.coeff.is_zero():
            self.half_exp = 0
            self.theta = ()

    @classmethod
    def one(cls, p: int) -> "HalfPowerValue":
        return cls(p)

    @classmethod
    def p_power(cls, p: int, half_exp: int) -> "HalfPowerValue":
        return cls(p, 1, half_exp)

    @classmethod
    def symbol(cls, p: int, tau: int, i: int, e: int = 1) -> "HalfPowerValue":
        return cls(p, 1, 0, {(tau, i): e})

    def _check(self, other) -> "HalfPowerValue":
        if not isinstance(other, HalfPowerValue):
            return HalfPowerValue(self.p, other)
        if other.p != self.p:
            raise ValueError("mixed primes")
        return other

    def __mul__(self, other):
        other = self._check(other)
        th = dict(self.theta)
        for k, e in other.theta:
            th[k] = th.get(k, 0) + e
        return HalfPowerValue(self.p, self.coeff * other.coeff,
                              self.half_exp + other.half_exp, th)

    __rmul__ = __mul__

    def inverse(self) -> "HalfPowerValue":
        return HalfPowerValue(self.p, self.coeff.inverse(), -self.half_exp,
                              {k: -e for k, e in self.theta})

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = HalfPowerValue.one(self.p)
        for _ in range(k):
            out = out * self
        return out

    def __add__(self, other):
        other = self._check(other)
        if self.coeff.is_zero():
            return other
        if other.coeff.is_zero():
            return self
        if self.theta != other.theta or self.half_exp != other.half_exp:
            raise ValueError("sum of unlike interpolation values")
        return HalfPowerValue(self.p, self.coeff + other.coeff, self.half_exp,
                              dict(self.theta))

    def __neg__(self):
        return HalfPowerValue(self.p, -self.coeff, self.half_exp, dict(self.theta))

    def __eq__(self, other):
        try:
            other = self._check(other)
        except ValueError:
            return NotImplemented
        if self.theta != other.theta:
            return False
        if self.coeff.is_zero() and other.coeff.is_zero():
            return True
        shift = self.half_exp - other.half_exp
        if shift % 2 != 0:
            return False  # canonical forms keep p^(1/2) unresolved
        if shift >= 0:
            return self.coeff * Fraction(self.p) ** (shift // 2) == other.coeff
        return self.coeff == other.coeff * Fraction(self.p) ** (-shift // 2)

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __repr__(self):
        bits = [f"({self.coeff})"]
        if self.half_exp:
            bits.append(f"p^({self.half_exp}/2)")
        for (tau, i), e in self.theta:
            bits.append(f"theta[{tau},{i}]^{e}")
        return "*".join(bits)

    def to_json(self) -> dict:
        return {"p": self.p, "coeff": self.coeff.to_json(), "half_exp": self.half_exp,
                "theta": [[list(k), e] for k, e in self.theta]}


# ---------------------------------------------------------------------------
# Satake bookkeeping


class SatakeData:
    """Unramified-parameter bookkeeping with the self-duality convention.

    theta values are formal symbols by default; specialize by passing
    values[(tau, i)] (HalfPowerValue) for 1 <= i <= n.  For i > n the value
    of theta_i is theta_(2n+1-i)^-1.
    """

    def __init__(self, n: int, d: int, p: int, values: dict | None = None):
        self.n = n
        self.d = d
        self.p = p
        self.values = dict(values or {})

    def theta_at_p(self, tau: int, i: int) -> HalfPowerValue:
        if not (1 <= i <= 2 * self.n):
            raise ValueError("index out of range")
        if i > self.n:
            return self.theta_at_p(tau, 2 * self.n + 1 - i).inverse()
        if (tau, i) in self.values:
            return self.values[(tau, i)]
        return HalfPowerValue.symbol(self.p, tau, i)

    def alpha(self, tau: int, i: int) -> HalfPowerValue:
        """The Iwahori-level eigenvalue prod_(j<=i) p^(n-j+1/2) theta_j(p)."""
        out = HalfPowerValue.one(self.p)
        for j in range(1, i + 1):
            out = out * HalfPowerValue.p_power(self.p, 2 * (self.n - j) + 1)
            out = out * self.theta_at_p(tau, j)
        return out

    def alpha_p_e(self, e) -> HalfPowerValue:
        """prod over components and i <= 2n-1 of alpha_(i, tau)^(e_tau)."""
        out = HalfPowerValue.one(self.p)
        for tau in range(self.d):
            for i in range(1, 2 * self.n):
                out = out * self.alpha(tau, i) ** e[tau]
        return out


def modulus_character_exponent(diag_exponents, n: int) -> int:
    """log_p of the Borel modulus character on diag(p^(k_i)) per component.

    delta_B(t) = prod |t_i|^(2n+1-2i); each |p^k| contributes -k(2n+1-2i).
    """
    total = 0
    for row in diag_exponents:
        if len(row) != 2 * n:
            raise ValueError("each component needs 2n diagonal entries")
        for i, k in enumerate(row, start=1):
            total += -k * (2 * n + 1 - 2 * i)
    return total


def modulus_deltaB(diag_entries, n: int, p: int) -> HalfPowerValue:
    """delta_B on a diagonal p-power matrix given by entry values per component."""
    from .rationals import valuation, unit_part

    exps = []
    for row in diag_entries:
        out = []
        for x in row:
            v = valuation(x, p)
            if v == float("inf") or unit_part(x, p) != 1:
                raise ValueError(f"{x} is not a power of p")
            out.append(v)
        exps.append(out)
    return HalfPowerValue.p_power(p, 2 * modulus_character_exponent(exps, n))


def t_p_e_exponents(n: int, e) -> list:
    """Diagonal exponents of the stepped Hecke element per component."""
    return [[et * (2 * n - i) for i in range(1, 2 * n + 1)] for et in e]


# ---------------------------------------------------------------------------
# epsilon factors


class SmoothCharacter:
    """A character of Q_p^* split as (finite unit part, value at p)."""

    def __init__(self, finite: PCharacter, at_p: HalfPowerValue):
        self.finite = finite
        self.at_p = at_p
        self.p = finite.p

    def inverse(self) -> "SmoothCharacter":
        return SmoothCharacter(self.finite.inverse(), self.at_p.inverse())

    def __mul__(self, other: "SmoothCharacter") -> "SmoothCharacter":
        return SmoothCharacter(self.finite * other.finite, self.at_p * other.at_p)


def epsilon_factor(eta: SmoothCharacter) -> HalfPowerValue:
    """The local constant at the central point, G(eta^-1) eta(-p^c) p^(-c/2).

    Requires conductor p^c with c >= 1 (ramified); eta(-p^c) splits as
    eta(p)^c times the finite part at -1.
    """
    c = eta.finite.conductor_exp
    if c == 0:
        raise ValueError("epsilon factor implemented for ramified characters only")
    p = eta.p
    g = gauss_sum(eta.finite.inverse())
    coeff = g * eta.finite(-1)
    out = HalfPowerValue(p, coeff, -c) * eta.at_p ** c
    return out


def epsilon_inversion_check(eta: SmoothCharacter) -> bool:
    """epsilon(eta) * epsilon(eta^-1) equals the finite part at -1."""
    prod = epsilon_factor(eta) * epsilon_factor(eta.inverse())
    return prod == HalfPowerValue(eta.p, eta.finite(-1))


# ---------------------------------------------------------------------------
# the interpolation factor and its epsilon-factor forms


def interpolation_factor(data: SatakeData, chi: list, e, n: int) -> HalfPowerValue:
    """The p-adic multiplier attached to a twist, in terms of the eigenvalues.

    chi lists one SmoothCharacter per component (the distinguished one
    first); e lists the per-component depths, with e_tau = max(1, c_tau);
    the distinguished conductor exponent must be >= 1.
    """
    chi0 = chi[0]
    c0 = chi0.finite.conductor_exp
    if c0 == 0:
        raise ValueError("interpolation requires the distinguished component ramified")
    p = data.p
    e0 = e[0]
    out = HalfPowerValue.p_power(p, -2 * e0)
    out = out * (data.alpha(0, n) / data.alpha(0, n - 1)) ** e0
    out = out * HalfPowerValue(p, chi0.finite(-1))
    out = out * chi0.at_p ** (-e0)
    out = out * HalfPowerValue(p, gauss_sum(chi0.finite))
    for tau in range(data.d):
        out = out * HalfPowerValue(p, chi[tau].finite(-1) ** n)
    denom = data.alpha_p_e(e) * modulus_deltaB(
        [[Fraction(p) ** k for k in row] for row in t_p_e_exponents(n, e)], n, p)
    return out / denom


def cpr_identity_check(data: SatakeData, chi: list, e, n: int) -> dict:
    """Both epsilon-factor expressions for the interpolation factor, exactly.

    Form 1: eps(theta_n chi0^-1) * (prod chi_tau(-1)^n) / (alpha_p^e delta_B);
    form 2: chi0(-1) * eps(theta_(n+1) chi0)^-1 * (same tail).
    """
    p = data.p
    direct = interpolation_factor(data, chi, e, n)
    chi0 = chi[0]
    tail = HalfPowerValue.one(p)
    for tau in range(data.d):
        tail = tail * HalfPowerValue(p, chi[tau].finite(-1) ** n)
    denom = data.alpha_p_e(e) * modulus_deltaB(
        [[Fraction(p) ** k for k in row] for row in t_p_e_exponents(n, e)], n, p)
    tail = tail / denom

    theta_n = SmoothCharacter(PCharacter.trivial(p), data.theta_at_p(0, n))
    eta1 = theta_n * chi0.inverse()
    form1 = epsilon_factor(eta1) * tail
    theta_n1 = SmoothCharacter(PCharacter.trivial(p), data.theta_at_p(0, n + 1))
    eta2 = theta_n1 * chi0
    form2 = HalfPowerValue(p, chi0.finite(-1)) * epsilon_factor(eta2).inverse() * tail
    return {
        "direct": direct, "epsilon_form": form1, "inverse_epsilon_form": form2,
        "passed": direct == form1 == form2,
    }


def depletion_eigen_factor(alpha0: HalfPowerValue, alpha1: HalfPowerValue,
                           beta_prime: int, kappa_middle: int,
                           chi: SmoothCharacter) -> HalfPowerValue:
    """The multiplier relating the depleted and plain evaluation pairings.

    (alpha_0/alpha_1)^b p^(b kappa) (1 - 1/p) chi(p)^-b chi_fin(-1) G(chi_fin),
    with b the conductor exponent of the finite part of the twist.
    """
    if beta_prime < 1:
        raise ValueError("the twist must be ramified")
    if alpha1.is_zero():
        raise ValueError("alpha_1 must be invertible")
    p = chi.p
    out = (alpha0 / alpha1) ** beta_prime
    out = out * HalfPowerValue.p_power(p, 2 * beta_prime * kappa_middle)
    out = out * HalfPowerValue(p, Fraction(p - 1, p))
    out = out * chi.at_p ** (-beta_prime)
    out = out * HalfPowerValue(p, chi.finite(-1) * gauss_sum(chi.finite))
    return out
