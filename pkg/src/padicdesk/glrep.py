"""Finite-dimensional GL representation models and branching eigenvectors.

Irreducibles of GL_m are realized as spans of polynomial functions on the
group.  Two transformation conventions are supported:

* "upper": f(g b) = (reversed weight)(b^-1) f(g) for upper-triangular b.
  The seed is a product of leading principal minors (the lowest-weight
  line); the span is closed under the raising operators.
* "lower": f(g b) = weight(b^-1) f(g) for lower-triangular b.  The seed is
  a product of trailing principal minors (the highest-weight line); the
  span is closed under the lowering operators.

Weights are shifted by a central determinant twist so all seed exponents
are nonnegative; the twist is recorded and restored on evaluation.  The
left action is (h . f)(g) = f(h^-1 g) throughout, so the Lie algebra acts
by first-order polynomial derivations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product as iproduct
from math import factorial

from .matrices import ExactMatrix, rational_inverse
from .polynomials import Poly, SparseEchelon, nullspace
from .rationals import valuation, INF


# ---------------------------------------------------------------------------
# weights


def weyl_dimension(weight) -> int:
    """Weyl dimension formula for a dominant GL_m weight."""
    lam = list(weight)
    m = len(lam)
    num, den = 1, 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


def is_dominant(weight) -> bool:
    return all(weight[i] >= weight[i + 1] for i in range(len(weight) - 1))


class WeightData:
    """A character (kappa, j) of T x S with cone bookkeeping.

    kappa is given as (kappa0; kappa[tau][i]) with d components of length
    2n each, and j as a tuple of d nonnegative integers.  The distinguished
    component is tau = 0.
    """

    def __init__(self, n: int, d: int, kappa0: int, kappa, j):
        if n < 2 or d < 1:
            raise ValueError("need n >= 2 and d >= 1")
        self.n = n
        self.d = d
        self.kappa0 = int(kappa0)
        self.kappa = [tuple(int(x) for x in row) for row in kappa]
        self.j = tuple(int(x) for x in j)
        if len(self.kappa) != d or len(self.j) != d:
            raise ValueError("kappa and j must have d components")
        if any(len(row) != 2 * n for row in self.kappa):
            raise ValueError("each kappa component must have 2n entries")

    @property
    def w(self) -> int:
        return self.kappa[0][1] + self.kappa[0][2 * self.n - 1]

    def cone_violation(self) -> str | None:
        """None if (kappa, j) lies in the weight cone, else the failed inequality."""
        n, k0 = self.n, self.kappa[0]
        if not all(k0[i] >= k0[i + 1] for i in range(1, 2 * n - 1)):
            return "kappa_(2,tau0) >= ... >= kappa_(2n,tau0) fails"
        for t in range(1, self.d):
            if not is_dominant(self.kappa[t]):
                return f"kappa component {t} not dominant"
        w = self.w
        if w > 0:
            return "w = kappa_2 + kappa_2n must be <= 0"
        for i in range(2, n + 1):
            if k0[i - 1] + k0[2 * n + 2 - i - 1] != w:
                return f"kappa_{i} + kappa_{2*n+2-i} != w at tau0"
        if k0[n] > w:
            return "kappa_(n+1,tau0) <= w fails"
        for t in range(1, self.d):
            for i in range(1, n + 1):
                if self.kappa[t][i - 1] + self.kappa[t][2 * n + 1 - i - 1] != 0:
                    return f"kappa_i + kappa_(2n+1-i) != 0 at component {t}"
        if not (0 <= self.j[0] <= k0[n] - k0[n + 1]):
            return "j_tau0 outside [0, kappa_(n+1) - kappa_(n+2)]"
        for t in range(1, self.d):
            if not (0 <= self.j[t] <= self.kappa[t][n - 1]):
                return f"j outside [0, kappa_n] at component {t}"
        return None

    def in_cone(self) -> bool:
        return self.cone_violation() is None

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "tau0": 0, "kappa0": self.kappa0,
                "kappa": [list(r) for r in self.kappa], "j": list(self.j)}

    @classmethod
    def from_json(cls, data: dict) -> "WeightData":
        if data.get("tau0", 0) != 0:
            raise ValueError("distinguished component must be listed first")
        return cls(data["n"], data["d"], data["kappa0"], data["kappa"], data["j"])

    def __repr__(self):
        return f"WeightData(n={self.n}, d={self.d}, kappa0={self.kappa0}, kappa={self.kappa}, j={self.j})"


# -- the generator decomposition of the cone --------------------------------


def generator_weights(n: int, d: int) -> dict:
    """The distinguished generating characters of the weight cone, as WeightData.

    Keys: "mu0", "muw", ("mu", i, t) for the torus generators, and
    ("b", t) for the mixed (mu_n, 1_t) generators.
    """
    zero = [[0] * (2 * n) for _ in range(d)]
    zs = [0] * d
    out = {}
    out["mu0"] = WeightData(n, d, 1, zero, zs)

    def wd(rows, j=None, k0=0):
        return WeightData(n, d, k0, rows, j if j is not None else zs)

    rows = [r[:] for r in zero]
    for i in range(n, 2 * n):
        rows[0][i] = -1
    out["muw"] = wd(rows)
    rows = [r[:] for r in zero]
    rows[0][0] = 1
    out[("mu", 1, 0)] = wd(rows)
    for i in range(2, n + 1):
        rows = [r[:] for r in zero]
        for jj in range(2, i + 1):
            rows[0][jj - 1] = 1
            rows[0][2 * n + 2 - jj - 1] = -1
        out[("mu", i, 0)] = wd(rows)
    rows = [r[:] for r in zero]
    rows[0][n] = -1
    for jj in range(2, n + 1):
        rows[0][jj - 1] = 1
        rows[0][2 * n + 2 - jj - 1] = -1
    out[("mu", n + 1, 0)] = wd(rows)
    for t in range(1, d):
        for i in range(1, n + 1):
            rows = [r[:] for r in zero]
            for jj in range(1, i + 1):
                rows[t][jj - 1] = 1
                rows[t][2 * n + 1 - jj - 1] = -1
            out[("mu", i, t)] = wd(rows)
    for t in range(d):
        key = ("mu", n, t)
        base = out[key]
        jrow = [0] * d
        jrow[t] = 1
        out[("b", t)] = WeightData(n, d, 0, [list(r) for r in base.kappa], jrow)
    return out


def cone_decompose(wd: WeightData) -> dict:
    """Unique coefficients of (kappa, j) on the cone generators.

    Raises ValueError (naming the violated inequality) off the cone;
    reconstruction through generator_weights reproduces (kappa, j) exactly.
    """
    bad = wd.cone_violation()
    if bad is not None:
        raise ValueError(f"(kappa, j) is not in the weight cone: {bad}")
    n, d, k0 = wd.n, wd.d, wd.kappa[0]
    coeffs = {"mu0": wd.kappa0}
    coeffs["muw"] = -(k0[n - 1] + k0[n + 1])
    coeffs[("mu", n + 1, 0)] = k0[n - 1] - k0[n] + k0[n + 1]
    coeffs[("mu", 1, 0)] = k0[0]
    for i in range(2, n):
        coeffs[("mu", i, 0)] = k0[i - 1] - k0[i]
    coeffs[("mu", n, 0)] = k0[n] - k0[n + 1] - wd.j[0]
    for t in range(1, d):
        kt = wd.kappa[t]
        for i in range(1, n):
            coeffs[("mu", i, t)] = kt[i - 1] - kt[i]
        coeffs[("mu", n, t)] = kt[n - 1] - wd.j[t]
    for t in range(d):
        coeffs[("b", t)] = wd.j[t]
    # every coefficient except mu0 and mu_(1,tau0) must come out nonnegative
    for key, a in coeffs.items():
        if key in ("mu0", ("mu", 1, 0)):
            continue
        if a < 0:
            raise AssertionError(f"cone decomposition produced a negative coefficient at {key}")
    return coeffs


def cone_reconstruct(n: int, d: int, coeffs: dict) -> WeightData:
    gens = generator_weights(n, d)
    kappa0 = 0
    kappa = [[0] * (2 * n) for _ in range(d)]
    j = [0] * d
    for key, a in coeffs.items():
        g = gens[key]
        kappa0 += a * g.kappa0
        for t in range(d):
            for i in range(2 * n):
                kappa[t][i] += a * g.kappa[t][i]
            j[t] += a * g.j[t]
    return WeightData(n, d, kappa0, kappa, j)


# ---------------------------------------------------------------------------
# Pieri rule


def pieri_decompose(kappa, j: int) -> list:
    """Constituents of V_kappa tensor V_(0,..,0,-j), each with multiplicity one."""
    kappa = tuple(kappa)
    if not is_dominant(kappa):
        raise ValueError("kappa must be dominant")
    if j < 0:
        raise ValueError("j must be >= 0")
    dcount = len(kappa)
    out = []

    def rec(pos, remaining, built):
        if pos == dcount:
            if remaining == 0:
                out.append(tuple(built))
            return
        cap = remaining
        if pos < dcount - 1:
            cap = min(cap, kappa[pos] - kappa[pos + 1])
        for t in range(cap + 1):
            rec(pos + 1, remaining - t, built + [kappa[pos] - t])

    rec(0, j, [])
    return out


def _alternant(weight) -> dict:
    """A_(weight+rho) = sum over sigma of sgn(sigma) x^(sigma permuting entries)."""
    m = len(weight)
    rho = [m - 1 - i for i in range(m)]
    shifted = [weight[i] + rho[i] for i in range(m)]
    out: dict = {}
    for perm in permutations(range(m)):
        inv = sum(1 for i in range(m) for k in range(i + 1, m) if perm[i] > perm[k])
        key = tuple(shifted[perm[i]] for i in range(m))
        out[key] = out.get(key, 0) + (-1 if inv % 2 else 1)
        if not out[key]:
            del out[key]
    return out


def _laurent_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            out[key] = out.get(key, 0) + ca * cb
            if not out[key]:
                del out[key]
    return out


def pieri_character_check(kappa, j: int) -> bool:
    """Alternant identity certifying the Pieri decomposition.

    A_(kappa+rho) * A_(twist+rho) == A_rho * sum A_(kappa'+rho), which is the
    character identity cleared of Weyl denominators.
    """
    m = len(kappa)
    twist = tuple([0] * (m - 1) + [-j])
    lhs = _laurent_mul(_alternant(kappa), _alternant(twist))
    rhs: dict = {}
    for kp in pieri_decompose(kappa, j):
        for key, c in _alternant(kp).items():
            rhs[key] = rhs.get(key, 0) + c
            if not rhs[key]:
                del rhs[key]
    rhs = _laurent_mul(_alternant(tuple([0] * m)), rhs)
    return lhs == rhs


# ---------------------------------------------------------------------------
# irreducible models for a single GL_m block


def _minor_poly(m: int, size: int, trailing: bool) -> Poly:
    """Leading or trailing principal minor of the generic m x m matrix."""
    idx = range(m - size, m) if trailing else range(size)
    rows = list(idx)
    out = Poly()
    for perm in permutations(range(size)):
        inv = sum(1 for i in range(size) for k in range(i + 1, size) if perm[i] > perm[k])
        mono = []
        for i in range(size):
            r = rows[i]
            c = rows[perm[i]]
            mono.append((r * m + c, 1))
        mono_d: dict = {}
        for v, e in mono:
            mono_d[v] = mono_d.get(v, 0) + e
        key = tuple(sorted(mono_d.items()))
        out = out + Poly({key: Fraction(-1 if inv % 2 else 1)})
    return out


class GLBlockModel:
    """An irreducible representation of GL_m on polynomial functions.

    The recorded ``shift`` means every model vector represents the true
    function (polynomial) * det^shift.  Basis vectors are weight vectors;
    the model certifies its dimension against the Weyl dimension formula.
    """

    def __init__(self, m: int, weight, convention: str = "upper", dim_cap: int = 500):
        if convention not in ("upper", "lower"):
            raise ValueError("convention must be 'upper' or 'lower'")
        weight = tuple(int(x) for x in weight)
        if not is_dominant(weight):
            raise ValueError(f"weight {weight} is not dominant")
        self.m = m
        self.weight = weight
        self.convention = convention
        self.dimension = weyl_dimension(weight)
        if self.dimension > dim_cap:
            raise ValueError(f"model dimension {self.dimension} exceeds cap {dim_cap}")
        self.shift = weight[0]
        shifted = [x - self.shift for x in weight]  # entries <= 0, first = 0
        exps = [shifted[m - 1 - i] - shifted[m - i] for i in range(1, m)]  # size i = 1..m-1
        seed = Poly.constant(1)
        for i, e in enumerate(exps, start=1):
            if e:
                seed = seed * _minor_poly(m, i, trailing=(convention == "lower")) ** e
        if convention == "upper":
            seed_weight = tuple(shifted[m - 1 - i] for i in range(m))  # reversed (lowest)
            ops = [(a, b) for a in range(m) for b in range(m) if a < b]
        else:
            seed_weight = tuple(shifted)  # highest
            ops = [(a, b) for a in range(m) for b in range(m) if a > b]
        self.basis: list[Poly] = []
        self.weights: list[tuple] = []
        self._ech = SparseEchelon()
        self._insert(seed, seed_weight)
        frontier = [0]
        while frontier:
            new = []
            for idx in frontier:
                f = self.basis[idx]
                wvec = self.weights[idx]
                for (a, b) in ops:
                    g = self.lie_action(a, b, f)
                    if g.is_zero():
                        continue
                    nw = tuple(wvec[i] + (1 if i == a else 0) - (1 if i == b else 0)
                               for i in range(m))
                    if self._insert(g, nw):
                        new.append(len(self.basis) - 1)
            frontier = new
        if len(self.basis) != self.dimension:
            raise AssertionError(
                f"span closure gave {len(self.basis)} vectors, Weyl dimension is {self.dimension}")

    # -- internal ------------------------------------------------------

    def _insert(self, f: Poly, wvec) -> bool:
        tag = len(self.basis)
        vec = {(1, sum(e for _, e in mono), mono): c for mono, c in f.terms.items()}
        vec[(0, tag, ())] = Fraction(1)
        residual, _ = self._ech.reduce(vec)
        if not any(key[0] == 1 for key in residual):
            return False  # dependent modulo the tag bookkeeping
        self._ech.insert(residual)
        self.basis.append(f)
        self.weights.append(wvec)
        return True

    def expand(self, f: Poly) -> list:
        """Coordinates of a polynomial lying in the model span."""
        vec = {(1, sum(e for _, e in mono), mono): c for mono, c in f.terms.items()}
        residual, _ = self._ech.reduce(vec)
        coords = [Fraction(0)] * len(self.basis)
        for key, c in residual.items():
            flag, tag, _ = key
            if flag != 0:
                raise ValueError("polynomial not in the model span")
            coords[tag] = -c
        return coords

    def true_weight(self, idx: int) -> tuple:
        """Torus weight of basis vector idx as a function in the unshifted model."""
        return tuple(w + self.shift for w in self.weights[idx])

    # -- actions and evaluation -----------------------------------------

    def lie_action(self, a: int, b: int, f: Poly) -> Poly:
        """E_(a,b) acting by (X f)(g) = d/dt f(exp(-tX) g): -sum_s g_(b,s) df/dg_(a,s)."""
        m = self.m
        out = Poly()
        for s in range(m):
            d = f.diff(a * m + s)
            if not d.is_zero():
                out = out + Poly.variable(b * m + s) * d * Fraction(-1)
        return out

    def word_action(self, word, f: Poly) -> Poly:
        """A product of E's acting left-to-right: (XY) f = X (Y f)."""
        for (a, b) in reversed(word):
            f = self.lie_action(a, b, f)
        return f

    def group_action(self, mat: ExactMatrix, f: Poly) -> Poly:
        """(h . f)(g) = f(h^-1 g) on the polynomial part (the det twist is scalar)."""
        m = self.m
        inv = rational_inverse(mat)
        forms = {}
        for i in range(m):
            for jj in range(m):
                form = Poly()
                for k in range(m):
                    c = inv.rows[i][k]
                    if c:
                        form = form + Poly.variable(k * m + jj) * c
                forms[i * m + jj] = form
        return f.subs_linear(forms)

    def evaluate(self, f: Poly, g: ExactMatrix, with_twist: bool = True):
        """Value at a group point; entries may be rationals or ring elements.

        The true function is (polynomial) * det^(-shift), so the shifted
        model weight mu satisfies true weight = mu + shift*(1,..,1).
        """
        values = {}
        m = self.m
        for i in range(m):
            for jj in range(m):
                values[i * m + jj] = g.rows[i][jj]
        val = f.eval(values)
        if with_twist and self.shift:
            det = g.det()
            if self.shift < 0:
                val = val * det ** (-self.shift)
            else:
                val = val * _ring_inverse_power(det, self.shift)
        return val

    def evaluate_basis(self, g: ExactMatrix, with_twist: bool = True) -> list:
        return [self.evaluate(f, g, with_twist) for f in self.basis]


def _ring_inverse_power(x, k: int):
    if isinstance(x, Fraction) or isinstance(x, int):
        return Fraction(1) / Fraction(x) ** k
    return x.inverse() ** k
