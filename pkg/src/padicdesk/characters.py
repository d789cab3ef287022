"""Finite-order characters of Z_p^* with exact cyclotomic values, and Gauss sums.

A character of conductor p^c is stored by its value table on (Z/p^c)^*.
The root-of-unity system is the fixed one: zeta_k is the class of X mod
Phi_k, and zeta_k = zeta_m^(m/k) for k | m.  Gauss sums always pair the
character against zeta_{p^c} from this system.

Only odd p is supported for nontrivial characters ((Z/p^c)^* is cyclic).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclotomic import CyclotomicElement, zeta_power_sum
from .rationals import is_prime


@lru_cache(maxsize=None)
def primitive_root(p: int, c: int) -> int:
    """A generator of (Z/p^c)^*, odd p."""
    if p == 2:
        raise ValueError("odd p required")
    modulus = p ** c
    phi = p ** (c - 1) * (p - 1)
    prime_factors = set()
    t = phi
    d = 2
    while d * d <= t:
        if t % d == 0:
            prime_factors.add(d)
            while t % d == 0:
                t //= d
        d += 1
    if t > 1:
        prime_factors.add(t)
    for g in range(2, modulus):
        if g % p == 0:
            continue
        if all(pow(g, phi // q, modulus) != 1 for q in prime_factors):
            return g
    raise RuntimeError("no primitive root found")


def _dlog(a: int, p: int, c: int) -> int:
    """Discrete log base primitive_root(p, c); fine at desk sizes."""
    modulus = p ** c
    g = primitive_root(p, c)
    x = 1
    for t in range(p ** (c - 1) * (p - 1)):
        if x == a % modulus:
            return t
        x = (x * g) % modulus
    raise ValueError(f"{a} is not a unit mod {modulus}")


class PCharacter:
    """Finite-order character of Z_p^*, with an optional value at p.

    The unit part has exact conductor p^c; the optional ``at_p`` extends it
    to a smooth character of Q_p^* (used by epsilon factors), and may carry
    half-integral p-powers or formal Satake symbols.
    """

    __slots__ = ("p", "conductor_exp", "values", "at_p")

    def __init__(self, p: int, conductor_exp: int, values: dict, at_p=None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        self.p = p
        self.conductor_exp = conductor_exp
        self.values = dict(values)
        self.at_p = at_p
        self._canonicalize()

    def _canonicalize(self):
        # shrink to the exact conductor
        while self.conductor_exp > 0:
            c = self.conductor_exp
            modulus = self.p ** c
            sub = self.p ** (c - 1)
            if c == 1:
                if all(self.values[a] == 1 for a in self.values):
                    self.conductor_exp = 0
                    self.values = {1: CyclotomicElement.from_rational(1)}
                break
            # trivial on 1 + p^(c-1) Z / p^c Z?
            if all(self.values[(1 + sub * t) % modulus] == 1 for t in range(self.p)):
                new = {}
                for a in range(1, self.p ** (c - 1)):
                    if a % self.p:
                        new[a] = self.values[a % modulus]
                self.values = new
                self.conductor_exp = c - 1
            else:
                break

    # -- constructors -------------------------------------------------

    @classmethod
    def trivial(cls, p: int) -> "PCharacter":
        return cls(p, 0, {1: CyclotomicElement.from_rational(1)})

    @classmethod
    def from_log(cls, p: int, c: int, k: int, at_p=None) -> "PCharacter":
        """chi(g^t) = zeta_N^(k t) for the canonical generator g of (Z/p^c)^*."""
        if c == 0 or k % (p ** (c - 1) * (p - 1)) == 0:
            return cls.trivial(p)
        modulus = p ** c
        phi = p ** (c - 1) * (p - 1)
        order = phi // gcd(phi, k)
        g = primitive_root(p, c)
        values = {}
        x = 1
        for t in range(phi):
            values[x] = CyclotomicElement.zeta(order, (k * t * order // phi) % order)
            x = (x * g) % modulus
        return cls(p, c, values, at_p)

    @classmethod
    def all_characters(cls, p: int, c: int):
        """All characters of conductor dividing p^c."""
        phi = p ** (c - 1) * (p - 1)
        return [cls.from_log(p, c, k) for k in range(phi)]

    # -- evaluation / group law ----------------------------------------

    def __call__(self, a) -> CyclotomicElement:
        if self.conductor_exp == 0:
            if Fraction(a) == 0:
                raise ValueError("character evaluated at 0")
            return CyclotomicElement.from_rational(1)
        modulus = self.p ** self.conductor_exp
        a = Fraction(a)
        if gcd(a.numerator, self.p) != 1 or gcd(a.denominator, self.p) != 1:
            raise ValueError(f"{a} is not a p-unit")
        r = (a.numerator * pow(a.denominator, -1, modulus)) % modulus
        return self.values[r]

    def order(self) -> int:
        """Exact multiplicative order of the character."""
        if self.conductor_exp == 0:
            return 1
        g = primitive_root(self.p, self.conductor_exp)
        base = self.values[g % self.p ** self.conductor_exp]
        phi = self.p ** (self.conductor_exp - 1) * (self.p - 1)
        acc = base
        order = 1
        while acc != 1:
            acc = acc * base
            order += 1
            if order > phi:
                raise ValueError("value table is not a character (no finite order)")
        return order

    def is_trivial(self) -> bool:
        return self.conductor_exp == 0

    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        v = self(-1)
        if v == 1:
            return 1
        if v == -1:
            return -1
        raise AssertionError("chi(-1) must be a square root of 1")

    def __mul__(self, other: "PCharacter") -> "PCharacter":
        if self.p != other.p:
            raise ValueError("mixed primes")
        c = max(self.conductor_exp, other.conductor_exp)
        if c == 0:
            return PCharacter.trivial(self.p)
        modulus = self.p ** c
        values = {a: self(a) * other(a) for a in range(1, modulus) if a % self.p}
        return PCharacter(self.p, c, values)

    def inverse(self) -> "PCharacter":
        if self.conductor_exp == 0:
            return PCharacter.trivial(self.p)
        modulus = self.p ** self.conductor_exp
        values = {a: self.values[a].inverse() for a in self.values}
        return PCharacter(self.p, self.conductor_exp, values)

    def __eq__(self, other):
        return (isinstance(other, PCharacter) and self.p == other.p
                and self.conductor_exp == other.conductor_exp
                and all(self.values[a] == other.values[a] for a in self.values))

    def __repr__(self):
        return f"PCharacter(p={self.p}, cond=p^{self.conductor_exp}, order={self.order()})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "conductor_exp": self.conductor_exp,
            "values": {str(a): v.to_json() for a, v in self.values.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "PCharacter":
        values = {int(a): CyclotomicElement.from_json(v) for a, v in data["values"].items()}
        return cls(data["p"], data["conductor_exp"], values)


def gauss_sum(chi: PCharacter, h: int | None = None) -> CyclotomicElement:
    """G(chi) = p^-(h-c) * sum over a in (Z/p^h)^* of chi(a) zeta_{p^c}^a.

    Requires conductor exactly p^c with c >= 1; the value is independent of
    the auxiliary depth h >= c.
    """
    c = chi.conductor_exp
    if c == 0:
        raise ValueError("conductor must be >= p")
    p = chi.p
    if h is None:
        h = c
    if h < c:
        raise ValueError("h must be >= conductor exponent")
    root_order = p ** c
    field_order = _lcm(root_order, chi.order())
    step = field_order // root_order
    weights: dict = {}
    for a in range(1, p ** h):
        if a % p == 0:
            continue
        val = chi(a)
        vstep = field_order // val.m
        mono = val.as_monomial()
        if mono is not None:
            # chi(a) is a root of unity; the full summand is one power
            k, coeff = mono
            key = (k * vstep + a * step) % field_order
            weights[key] = weights.get(key, Fraction(0)) + coeff
        else:
            for k, coeff in enumerate(val.coeffs):
                if coeff:
                    key = (k * vstep + a * step) % field_order
                    weights[key] = weights.get(key, Fraction(0)) + coeff
    total = zeta_power_sum(field_order, weights)
    return total * Fraction(1, p ** (h - c))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
