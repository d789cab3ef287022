"""Sparse multivariate polynomials over Q.

Monomials are sorted tuples of (variable, exponent) pairs; variables are
small integers whose meaning is fixed by the caller (e.g. flattened matrix
entries).  Evaluation is generic over any commutative ring whose elements
support +, * and integer powers, which is how dual-number (Artinian)
substitution of group points is done.
"""

from __future__ import annotations

from fractions import Fraction


def _mono_mul(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                m = tuple(sorted((v, e) for v, e in m if e))
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls({(): Fraction(c)})

    @classmethod
    def variable(cls, v: int) -> "Poly":
        return cls({((v, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
            if not out[m]:
                del out[m]
        p = Poly.__new__(Poly)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly.__new__(Poly)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            if not c:
                return Poly()
            p = Poly.__new__(Poly)
            p.terms = {m: cc * c for m, cc in self.terms.items()}
            return p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
                if not out[m]:
                    del out[m]
        p = Poly.__new__(Poly)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return self.terms == Poly.constant(other).terms
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def diff(self, var: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(var, 0)
            if not e:
                continue
            d[var] = e - 1
            mono = tuple(sorted((v, k) for v, k in d.items() if k))
            out[mono] = out.get(mono, Fraction(0)) + c * e
        return Poly(out)

    def eval(self, values):
        """Evaluate with variables mapped to ring elements (dict or list)."""
        total = None
        for m, c in self.terms.items():
            term = None
            for v, e in m:
                f = values[v] ** e if e != 1 else values[v]
                term = f if term is None else term * f
            term = c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def subs_linear(self, forms: dict) -> "Poly":
        """Substitute variables by linear forms (var -> Poly); identity if absent."""
        cache = {}

        def form(v):
            if v not in cache:
                cache[v] = forms.get(v, Poly.variable(v))
            return cache[v]

        total = Poly()
        for m, c in self.terms.items():
            term = Poly.constant(c)
            for v, e in m:
                term = term * form(v) ** e
            total = total + term
        return total

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def leading_key(self):
        """Canonical pivot monomial (grevlex-ish deterministic order)."""
        return max(self.terms, key=_mono_key)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_key):
            c = self.terms[m]
            mono = "*".join(f"x{v}^{e}" if e > 1 else f"x{v}" for v, e in m) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def _mono_key(m):
    return (sum(e for _, e in m), m)


class SparseEchelon:
    """Incremental exact row echelon over Q for vectors keyed by hashables.

    Used to build irreducible-representation bases: vectors are added one at
    a time; reduce() returns the residual after elimination and the
    coordinates of the eliminated part in terms of stored rows.
    """

    def __init__(self):
        self.rows = []  # list of (pivot_key, vector_dict, label)

    def reduce(self, vec: dict):
        """Eliminate vec against stored rows; returns (residual, coords)."""
        vec = {k: Fraction(c) for k, c in vec.items() if c}
        coords = {}
        for idx, (piv, row, _) in enumerate(self.rows):
            c = vec.get(piv)
            if c:
                coords[idx] = c
                for k, v in row.items():
                    nv = vec.get(k, Fraction(0)) - c * v
                    if nv:
                        vec[k] = nv
                    else:
                        vec.pop(k, None)
        return vec, coords

    def insert(self, vec: dict, label=None) -> bool:
        """Add the vector if independent; returns True if rank grew."""
        residual, _ = self.reduce(vec)
        if not residual:
            return False
        piv = max(residual)
        inv = 1 / residual[piv]
        row = {k: v * inv for k, v in residual.items()}
        # keep the echelon reduced: clear the new pivot from existing rows
        for i, (p, r, lab) in enumerate(self.rows):
            c = r.get(piv)
            if c:
                nr = dict(r)
                for k, v in row.items():
                    nv = nr.get(k, Fraction(0)) - c * v
                    if nv:
                        nr[k] = nv
                    else:
                        nr.pop(k, None)
                self.rows[i] = (p, nr, lab)
        self.rows.append((piv, row, label))
        return True

    def coordinates(self, vec: dict):
        """Coordinates of vec in the stored rows; raises if not in the span."""
        residual, coords = self.reduce(vec)
        if residual:
            raise ValueError("vector not in span")
        return coords

    @property
    def rank(self) -> int:
        return len(self.rows)


def nullspace(rows: list, ncols: int) -> list:
    """Exact nullspace basis of a list of dense Fraction rows."""
    mat = [list(map(Fraction, r)) for r in rows]
    nrows = len(mat)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis
