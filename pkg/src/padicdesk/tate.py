"""Iterated nilpotent derivations on truncated two-variable Tate algebras.

The derivation under study sends X -> lam*Y, Y -> 0 and restricts to a given
base derivation on the Artinian coefficient ring.  Binomial polynomials of
the derivation are computed two ways: by direct iteration, and by the
closed combinatorial formula over subset patterns; the two must agree
exactly on the truncation.

Norms are exact exponents (p^e with e rational, -inf for zero).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

from .artinian import ArtinianElement
from .matrices import ExactMatrix
from .rationals import INF, valuation


class TateSeries:
    """Element sum s_(a,b) X^a Y^b of S<X, Y> truncated at total degree dmax."""

    __slots__ = ("ngens", "modulus", "dmax", "terms")

    def __init__(self, ngens: int, dmax: int, terms=None, modulus=None):
        self.ngens = ngens
        self.modulus = modulus
        self.dmax = dmax
        clean = {}
        for (a, b), s in (terms or {}).items():
            if a + b > dmax:
                raise ValueError(f"degree {a + b} exceeds truncation {dmax}")
            if not isinstance(s, ArtinianElement):
                s = ArtinianElement.constant(ngens, s, modulus)
            if not s.is_zero():
                prev = clean.get((a, b))
                clean[(a, b)] = s if prev is None else prev + s
                if clean[(a, b)].is_zero():
                    del clean[(a, b)]
        self.terms = clean

    @classmethod
    def monomial(cls, ngens: int, dmax: int, s, a: int, b: int, modulus=None) -> "TateSeries":
        return cls(ngens, dmax, {(a, b): s}, modulus)

    def _like(self, terms) -> "TateSeries":
        out = TateSeries.__new__(TateSeries)
        out.ngens, out.modulus, out.dmax = self.ngens, self.modulus, self.dmax
        out.terms = {k: v for k, v in terms.items() if not v.is_zero()}
        return out

    def __add__(self, other: "TateSeries") -> "TateSeries":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return self._like(out)

    def __sub__(self, other: "TateSeries") -> "TateSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "TateSeries":
        return self._like({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "TateSeries") -> "TateSeries":
        out: dict = {}
        for (a1, b1), s1 in self.terms.items():
            for (a2, b2), s2 in other.terms.items():
                a, b = a1 + a2, b1 + b2
                if a + b > self.dmax:
                    continue  # truncation
                k = (a, b)
                prod = s1 * s2
                out[k] = out[k] + prod if k in out else prod
        return self._like(out)

    def __eq__(self, other):
        return isinstance(other, TateSeries) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def norm_exponent(self, p: int):
        """Sup over all coefficient monomials of -v_p; unit ball test."""
        best = -INF
        for s in self.terms.values():
            for c in s.terms.values():
                e = -valuation(c, p)
                if best == -INF or e > best:
                    best = e
        return best

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b) in sorted(self.terms):
            bits.append(f"({self.terms[(a, b)]})*X^{a}*Y^{b}")
        return " + ".join(bits)


class ShiftDerivation:
    """The operator with X -> lam*Y, Y -> 0, restricting to `base` on coefficients.

    `base` may be any linear map on the coefficient ring; the closed
    combinatorial formula below only needs linearity.  The full Leibniz rule
    on products holds exactly when `base` is an honest derivation of the
    truncated ring, i.e. base(T_i) lies in the ideal (T_i) (differentiating
    a generator to a unit is only the reduction of a derivation of the
    untruncated ring, and products can shed the discarded square terms).
    """

    def __init__(self, base, lam):
        self.base = base  # callable ArtinianElement -> ArtinianElement
        self.lam = Fraction(lam)

    def __call__(self, f: TateSeries) -> TateSeries:
        out: dict = {}
        for (a, b), s in f.terms.items():
            ds = self.base(s)
            if not ds.is_zero():
                k = (a, b)
                out[k] = out[k] + ds if k in out else ds
            if a >= 1:
                t = s * (self.lam * a)
                if not t.is_zero():
                    k = (a - 1, b + 1)
                    out[k] = out[k] + t if k in out else t
        return f._like(out)


# ---------------------------------------------------------------------------
# subset patterns and the combinatorial polynomials


def consecutive_blocks(subset) -> list:
    """Lengths of the maximal runs of consecutive integers in the subset."""
    items = sorted(subset)
    blocks = []
    for i, x in enumerate(items):
        if i and x == items[i - 1] + 1:
            blocks[-1] += 1
        else:
            blocks.append(1)
    return blocks


class SubsetPattern:
    """A subset I of {0..k-1} with its decomposition into consecutive runs."""

    __slots__ = ("k", "subset", "blocks")

    def __init__(self, k: int, subset):
        self.k = k
        self.subset = frozenset(subset)
        if any(i < 0 or i >= k for i in self.subset):
            raise ValueError("subset not contained in {0..k-1}")
        self.blocks = consecutive_blocks(self.subset)

    def runs(self) -> list:
        """The runs themselves, as sorted lists."""
        items = sorted(self.subset)
        out = []
        for x in items:
            if out and x == out[-1][-1] + 1:
                out[-1].append(x)
            else:
                out.append([x])
        return out


def pattern_poly_eval(pattern: SubsetPattern, x) -> Fraction:
    """prod over runs of (1/len!) prod_(i in run) (x - i); empty pattern -> 1."""
    out = Fraction(1)
    for run in pattern.runs():
        for i in run:
            out *= Fraction(x) - i
        out /= factorial(len(run))
    return out


def pattern_poly_of_derivation(pattern: SubsetPattern, base, s: ArtinianElement) -> ArtinianElement:
    """Apply prod over runs of (1/len!) prod (D - i) to a coefficient s."""
    out = s
    denom = 1
    for run in pattern.runs():
        denom *= factorial(len(run))
        for i in run:
            out = base(out) - out * i
    return out * Fraction(1, denom)


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def binomial_of_derivation_closed(k: int, s: ArtinianElement, a: int, b: int,
                                  deriv: ShiftDerivation, dmax: int) -> TateSeries:
    """Closed form for the k-th binomial polynomial of the derivation on s X^a Y^b."""
    if a + b + k > dmax:
        raise ValueError("a + b + k exceeds the truncation degree")
    out = TateSeries(s.ngens, dmax, {}, s.modulus)
    if k == 0:
        return TateSeries.monomial(s.ngens, dmax, s, a, b, s.modulus)
    for r in range(0, min(k, a) + 1):
        lam_pow = deriv.lam ** r
        for subset in combinations(range(k), k - r):
            pattern = SubsetPattern(k, subset)
            multinom = factorial(k - r)
            for ln in pattern.blocks:
                multinom //= factorial(ln)
            coeff = Fraction(1, multinom) * Fraction(1, _binom(k, r)) * _binom(a, r)
            fs = pattern_poly_of_derivation(pattern, deriv.base, s)
            term = fs * (coeff * lam_pow)
            if not term.is_zero():
                out = out + TateSeries.monomial(s.ngens, dmax, term, a - r, b + r, s.modulus)
    return out


def binomial_of_derivation_direct(k: int, f: TateSeries, deriv: ShiftDerivation) -> TateSeries:
    """binom(T, k) f by the operator recursion binom(T,k) = binom(T,k-1)(T-k+1)/k."""
    out = f
    for j in range(k):
        out = (deriv(out) - out.scale(j)).scale(Fraction(1, j + 1))
    return out


def binomial_operator_recursion_check(k: int, f: TateSeries, deriv: ShiftDerivation) -> bool:
    """f_k(T)(T - k) = (k+1) f_(k+1)(T) on the given element, exactly."""
    shifted = deriv(f) - f.scale(k)
    lhs = binomial_of_derivation_direct(k, shifted, deriv)
    rhs = binomial_of_derivation_direct(k + 1, f, deriv).scale(k + 1)
    return lhs == rhs


# ---------------------------------------------------------------------------
# epsilon-analytic bounds for matrix operators


def matrix_min_valuation(mat: ExactMatrix, p: int):
    best = INF
    for row in mat.rows:
        for e in row:
            v = valuation(e, p)
            if v < best:
                best = v
    return best


def epsilon_action_bound(T: ExactMatrix, eps, K: int, p: int,
                         target_exponent=Fraction(0)) -> dict:
    """Exponent table e_k of p^(-k eps) ||binom(T, k)|| for k <= K.

    ||.|| is the sup norm on matrix entries (p-adic); reports whether the
    weighted exponents eventually stay strictly below the target and the
    first index from which they do.
    """
    eps = Fraction(eps)
    n = T.nrows
    exps = []
    fk = ExactMatrix.identity(n)
    for k in range(K + 1):
        v = matrix_min_valuation(fk, p)
        exps.append(-INF if v == INF else -k * eps - v)
        # binom(T, k+1) = binom(T, k) (T - k) / (k+1)
        shift = ExactMatrix.identity(n).scale(Fraction(k))
        fk = (fk * (T - shift)).scale(Fraction(1, k + 1))
    tail_start = None
    for k in range(K + 1):
        if all(e == -INF or e < target_exponent for e in exps[k:]):
            tail_start = k
            break
    decreasing_from = None
    for k in range(K):
        tail = exps[k:]
        finite = [e for e in tail if e != -INF]
        if all(x > y for x, y in zip(finite, finite[1:])):
            decreasing_from = k
            break
    return {
        "eps": eps,
        "exponents": exps,
        "eventually_below_target_from": tail_start,
        "strictly_decreasing_from": decreasing_from,
        "passed": tail_start is not None,
    }


def shift_matrix(n: int, scale=1) -> ExactMatrix:
    """Nilpotent single shift e_i -> scale * e_(i+1)."""
    rows = [[Fraction(scale) if i == j + 1 else Fraction(0) for j in range(n)] for i in range(n)]
    return ExactMatrix(rows)


def cyclic_shift_matrix(n: int, scale=1) -> ExactMatrix:
    rows = [[Fraction(scale) if i == (j + 1) % n else Fraction(0) for j in range(n)] for i in range(n)]
    return ExactMatrix(rows)


# ---------------------------------------------------------------------------
# overconvergence norm chains


class OverconvergenceChain:
    """Chain of annulus norms on Laurent polynomials in one section variable h.

    Model: integral ring Z_p[h] truncated at h-degree `depth`; the stage-s
    ring adjoins p/h^(p^(s+1)), so the stage-s norm of c h^i is
    |c| * p^(-i/p^(s+1)) for i < 0 and |c| for i >= 0.  Stage infinity is
    the locus |h| = 1.  Elements are dicts {exponent: Fraction}.
    """

    def __init__(self, p: int, r: int, depth: int):
        self.p = p
        self.r = r
        self.depth = depth

    def norm_exponent(self, v: dict, s) -> Fraction | float:
        """log_p of the stage-s norm; s = None means stage infinity."""
        best = -INF
        for i, c in v.items():
            if abs(i) > self.depth:
                raise ValueError("element exceeds the truncation depth")
            if c == 0:
                continue
            e = Fraction(-valuation(c, self.p))
            if s is not None and i < 0:
                e += Fraction(-i, self.p ** (s + 1))
            if best == -INF or e > best:
                best = e
        return best

    def annihilator_exponent(self) -> int:
        """Least M with h^M killing ker(B_r+/p -> B_inf+/p) on the truncation.

        Certified by scanning the monomial kernel classes p^ceil(i/q) h^-i;
        requires depth >= q = p^(r+1) (else the scan cannot see the extremal
        class and the result would not be stable under deepening).
        """
        q = self.p ** (self.r + 1)
        if self.depth < q:
            raise ValueError(f"truncation too small to certify the annihilator; need depth >= {q}")
        best = 0
        for i in range(1, self.depth + 1):
            e = -(-i // q)  # ceil(i/q)
            # least M with || p^e h^(M-i) ||_r <= p^-1
            m = 0
            while self.norm_exponent({m - i: Fraction(self.p) ** e}, self.r) > -1:
                m += 1
            best = max(best, m)
        return best

    def stage_for_delta(self, delta) -> int:
        """Smallest s >= r with ||h^-1||_s-exponent <= (1 - delta)/M."""
        delta = Fraction(delta)
        if not (0 < delta < 1):
            raise ValueError("delta must be in (0, 1)")
        M = self.annihilator_exponent()
        s = self.r
        while Fraction(1, self.p ** (s + 1)) > (1 - delta) / M:
            s += 1
        return s

    def verify_implication(self, v: dict, delta, s: int | None = None) -> dict:
        """||v||_r <= p^c and ||v||_inf <= p^(c-m)  =>  ||v||_s <= p^(c - delta m)."""
        delta = Fraction(delta)
        if s is None:
            s = self.stage_for_delta(delta)
        e_r = self.norm_exponent(v, self.r)
        e_inf = self.norm_exponent(v, None)
        if e_r == -INF:
            return {"s": s, "m": None, "passed": True}
        c = e_r
        m = int(c - e_inf)  # largest integer with ||v||_inf <= p^(c - m)
        if m < 0:
            m = 0
        e_s = self.norm_exponent(v, s)
        return {"s": s, "c": c, "m": m, "e_s": e_s,
                "bound": c - delta * m, "passed": e_s <= c - delta * m}


def derivation_matrix(der: ShiftDerivation, ngens: int, dmax: int,
                      modulus=None) -> tuple:
    """Matrix of the derivation on the monomial lattice of the truncation.

    Basis: (coefficient monomial, X-degree, Y-degree) triples in a fixed
    order; returns (ExactMatrix, basis list).
    """
    from itertools import combinations

    basis = []
    for total in range(dmax + 1):
        for a in range(total + 1):
            b = total - a
            for size in range(ngens + 1):
                for mono in combinations(range(ngens), size):
                    basis.append((frozenset(mono), a, b))
    index = {key: i for i, key in enumerate(basis)}
    cols = []
    for (mono, a, b) in basis:
        elem = TateSeries.monomial(ngens, dmax,
                                   ArtinianElement(ngens, {mono: 1}, modulus), a, b)
        img = der(elem)
        col = {}
        for (aa, bb), s in img.terms.items():
            for mono2, c in s.terms.items():
                col[index[(mono2, aa, bb)]] = Fraction(c)
        cols.append(col)
    rows = [[cols[j].get(i, Fraction(0)) for j in range(len(basis))]
            for i in range(len(basis))]
    return ExactMatrix(rows), basis


def perturbation_threshold(T1: ExactMatrix, T2: ExactMatrix, eps, K: int, p: int,
                           n_max: int = 8) -> dict:
    """Empirical least congruence depth n with decaying weighted exponents.

    Scans T1 + p^n T2 for n = 0..n_max and reports the first n from which
    the weighted exponent table eventually stays below zero; no closed
    formula for the threshold is claimed, only the per-instance scan.
    """
    table = {}
    first = None
    for n in range(n_max + 1):
        op = T1 + T2.scale(Fraction(p) ** n)
        rep = epsilon_action_bound(op, eps, K, p)
        table[n] = rep["passed"]
        if rep["passed"] and first is None:
            first = n
    return {"first_passing_depth": first, "scan": table}
