"""Branching eigenvectors for the block subgroup inside the Levi.

The Levi M has (per distinguished component) shape GL_1 x GL_(2n-1), and
GL_2n at the other components; the subgroup cut out by the block structure
is GL_1 x GL_(n-1) x GL_n at the distinguished component and GL_n x GL_n
elsewhere.  The branching vector is the unique (up to scalar) joint
eigenvector for that subgroup acting diagonally on V_kappa tensor the
degree-j polynomial twist; it is found by an exact linear solve, weight
space first.

Group points are carried as MPoint objects (similitude scalar, the GL_1
entry of the distinguished component, and one matrix per component).
Coordinates on the big-cell column are a_2..a_2n, stored 0-based
(variable k-2 for a_k).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .glrep import GLBlockModel, WeightData, weyl_dimension
from .matrices import ExactMatrix, rational_inverse
from .polynomials import Poly, nullspace
from .rationals import valuation, INF


class MPoint:
    """A point of the Levi: similitude, distinguished GL_1 entry, block matrices.

    blocks[0] is (2n-1) x (2n-1); blocks[t] for t >= 1 are 2n x 2n.
    """

    def __init__(self, sim, g1, blocks):
        self.sim = Fraction(sim)
        self.g1 = Fraction(g1)
        self.blocks = [b if isinstance(b, ExactMatrix) else ExactMatrix(b) for b in blocks]

    @classmethod
    def identity(cls, n: int, d: int) -> "MPoint":
        blocks = [ExactMatrix.identity(2 * n - 1)] + [ExactMatrix.identity(2 * n) for _ in range(d - 1)]
        return cls(1, 1, blocks)


def u_conjugator(n: int, d: int) -> MPoint:
    """The open-orbit conjugating element u of the Levi.

    Distinguished block: identity plus lower entries feeding coordinate
    a_(n+1-i) into a_(n+1+i); other components: unipotent with the
    antidiagonal in the upper-right n x n block.
    """
    m = 2 * n - 1
    u2 = [[Fraction(1) if i == j else Fraction(0) for j in range(m)] for i in range(m)]
    for i in range(1, n):
        u2[n - 1 + i][n - 1 - i] = Fraction(1)
    blocks = [ExactMatrix(u2)]
    for _ in range(d - 1):
        full = [[Fraction(1) if i == j else Fraction(0) for j in range(2 * n)] for i in range(2 * n)]
        for i in range(n):
            full[n + i][n - 1 - i] = Fraction(1)
        blocks.append(ExactMatrix(full))
    return MPoint(1, 1, blocks)


def v_basepoint(n: int, d: int) -> MPoint:
    """The normalization point v (lower unipotent in the second block column)."""
    m = 2 * n - 1
    v2 = [[Fraction(1) if i == j else Fraction(0) for j in range(m)] for i in range(m)]
    for i in range(1, n):
        v2[n - 1 + i][n - 1] = Fraction(1)
    blocks = [ExactMatrix(v2)] + [ExactMatrix.identity(2 * n) for _ in range(d - 1)]
    return MPoint(1, 1, blocks)


def column_point(n: int, a_coords) -> MPoint:
    """The subgroup point z(a) used as the evaluation oracle on the box.

    Entry a_(n+1) sits on the diagonal; the rows below it receive the folded
    coordinates a_(n+1-i) + a_(n+1+i).
    """
    m = 2 * n - 1
    a = [Fraction(x) for x in a_coords]
    z2 = [[Fraction(1) if i == j else Fraction(0) for j in range(m)] for i in range(m)]
    z2[n - 1][n - 1] = a[n - 1]
    for i in range(1, n):
        z2[n - 1 + i][n - 1] = a[n - 1 - i] + a[n - 1 + i]
    d_blocks = [ExactMatrix(z2)]
    return MPoint(1, 1, d_blocks)


# ---------------------------------------------------------------------------


def _multisets(n: int, size: int):
    """Multisets of {n+1..2n} as sorted tuples (variable indices n-1..2n-2)."""
    return list(combinations_with_replacement(range(n - 1, 2 * n - 1), size))


class BranchModel:
    """V_kappa tensor S_(-j) with the solved branching eigenvector."""

    def __init__(self, wd: WeightData, dim_cap: int = 500, solve: bool = True):
        bad = wd.cone_violation()
        if bad is not None:
            raise ValueError(f"(kappa, j) is not in the weight cone: {bad}")
        self.wd = wd
        n, d = wd.n, wd.d
        dims = [weyl_dimension(wd.kappa[0][1:])] + [weyl_dimension(wd.kappa[t]) for t in range(1, d)]
        sdim = len(_multisets(n, wd.j[0]))
        total = sdim
        for dd in dims:
            total *= dd
        if total > dim_cap:
            raise ValueError(f"model dimension {total} exceeds cap {dim_cap}")
        self.blocks = [GLBlockModel(2 * n - 1, wd.kappa[0][1:], "upper", dim_cap)]
        for t in range(1, d):
            self.blocks.append(GLBlockModel(2 * n, wd.kappa[t], "upper", dim_cap))
        self.s_basis = _multisets(n, wd.j[0])
        self.index = []
        self._build_index()
        self.dimension = len(self.index)
        assert self.dimension == total
        self.coords = None
        self.eigen_dimension = None
        if solve:
            self._solve()

    def _build_index(self):
        def rec(t, built):
            if t == len(self.blocks):
                for J in self.s_basis:
                    self.index.append((tuple(built), J))
                return
            for i in range(self.blocks[t].dimension):
                rec(t + 1, built + [i])

        rec(0, [])

    # -- weights --------------------------------------------------------

    def _total_weight(self, q: int) -> tuple:
        """Weight of basis vector q at the 2n tau0-positions then 2n per extra component."""
        (block_idx, J) = self.index[q]
        n, wd = self.wd.n, self.wd
        out = []
        # tau0: position 0 carries the GL_1 character plus the twist degree
        w0 = list(self.blocks[0].true_weight(block_idx[0]))
        pos0 = wd.kappa[0][0] + len(J)
        svec = [0] * (2 * n - 1)
        for var in J:
            svec[var] -= 1
        out.append(pos0)
        for i in range(2 * n - 1):
            out.append(w0[i] + svec[i])
        for t in range(1, wd.d):
            out.extend(self.blocks[t].true_weight(block_idx[t]))
        return tuple(out)

    def _target_weight(self) -> tuple:
        wd = self.wd
        n = wd.n
        k0 = wd.kappa[0]
        w = wd.w
        out = [k0[0] + wd.j[0]]
        out += [-k0[n] + wd.j[0] + w] * (n - 1)
        out += [k0[n] - wd.j[0]] * n
        for t in range(1, wd.d):
            out += [wd.j[t]] * n + [-wd.j[t]] * n
        return tuple(out)

    # -- Lie actions ------------------------------------------------------

    def _s_lie_action(self, a: int, b: int, phi: Poly) -> Poly:
        """E_(a,b) of the distinguished component acting on the polynomial twist.

        Indices are 0-based in the 2n x 2n component; only indices valid for
        the Levi occur (0 with 0, or both >= 1).
        """
        if a == 0 and b == 0:
            out = Poly()
            for var in range(2 * self.wd.n - 1):
                dphi = phi.diff(var)
                if not dphi.is_zero():
                    out = out + Poly.variable(var) * dphi
            return out
        if a == 0 or b == 0:
            raise ValueError("not a Levi element")
        out = phi.diff(a - 1) * Poly.variable(b - 1)
        return Poly() - out

    def _apply_lie(self, comp: int, a: int, b: int, vec: dict) -> dict:
        """Image of a coordinate vector under E_(a,b) of component comp."""
        out: dict = {}
        n = self.wd.n
        for q, c in vec.items():
            if not c:
                continue
            (block_idx, J) = self.index[q]
            if comp == 0:
                # V-part: GL_1 entry (position 0) or the (2n-1)-block
                if a == 0 and b == 0:
                    _acc(out, q, c * self.wd.kappa[0][0])
                else:
                    model = self.blocks[0]
                    g = model.lie_action(a - 1, b - 1, model.basis[block_idx[0]])
                    if a == b:
                        g = g + model.basis[block_idx[0]] * model.shift
                    if not g.is_zero():
                        for i2, c2 in enumerate(model.expand(g)):
                            if c2:
                                nb = list(block_idx)
                                nb[0] = i2
                                _acc(out, self._lookup(tuple(nb), J), c * c2)
                # S-part
                phi = _monomial_poly(J)
                psi = self._s_lie_action(a, b, phi)
                if not psi.is_zero():
                    for J2, c2 in _expand_monomials(psi):
                        _acc(out, self._lookup(block_idx, J2), c * c2)
            else:
                model = self.blocks[comp]
                g = model.lie_action(a, b, model.basis[block_idx[comp]])
                if a == b:
                    g = g + model.basis[block_idx[comp]] * model.shift
                if not g.is_zero():
                    for i2, c2 in enumerate(model.expand(g)):
                        if c2:
                            nb = list(block_idx)
                            nb[comp] = i2
                            _acc(out, self._lookup(tuple(nb), J), c * c2)
        return {k: v for k, v in out.items() if v}

    def _lookup(self, block_idx: tuple, J: tuple) -> int:
        key = (block_idx, J)
        if not hasattr(self, "_index_map"):
            self._index_map = {k: i for i, k in enumerate(self.index)}
        return self._index_map[key]

    def _subgroup_offdiag(self):
        """Off-diagonal Lie generators of the block subgroup, per component."""
        n = self.wd.n
        out = []
        blocks0 = [range(1, n), range(n, 2 * n)]
        for blk in blocks0:
            for a in blk:
                for b in blk:
                    if a != b:
                        out.append((0, a, b))
        for t in range(1, self.wd.d):
            for blk in (range(0, n), range(n, 2 * n)):
                for a in blk:
                    for b in blk:
                        if a != b:
                            out.append((t, a, b))
        return out

    # -- the solve --------------------------------------------------------

    def _solve(self):
        target = self._target_weight()
        subspace = [q for q in range(self.dimension) if self._total_weight(q) == target]
        if not subspace:
            raise ArithmeticError("eigenspace dimension 0: empty weight space")
        conditions = []
        for (comp, a, b) in self._subgroup_offdiag():
            images = [self._apply_lie(comp, a, b, {q: Fraction(1)}) for q in subspace]
            support = sorted(set().union(*[set(im) for im in images]) if images else [])
            for row_key in support:
                conditions.append([im.get(row_key, Fraction(0)) for im in images])
        sol = nullspace(conditions, len(subspace)) if conditions else \
            [[Fraction(1) if i == k else Fraction(0) for i in range(len(subspace))] for k in range(len(subspace))]
        self.eigen_dimension = len(sol)
        if len(sol) != 1:
            raise ArithmeticError(
                f"eigenspace dimension {len(sol)} != 1: multiplicity one fails at this instance")
        coords = {}
        for pos, q in enumerate(subspace):
            if sol[0][pos]:
                coords[q] = sol[0][pos]
        # normalize: value 1 at (identity paired through u) and the base point v
        u = u_conjugator(self.wd.n, self.wd.d)
        base = v_basepoint(self.wd.n, self.wd.d)
        self.coords = coords
        nv = self.pair_value(u, base)
        if nv == 0:
            raise ArithmeticError("open-orbit normalization value vanished")
        self.coords = {q: c / nv for q, c in coords.items()}

    # -- evaluation -------------------------------------------------------

    def _v_value(self, q: int, g: MPoint):
        """Value of the V_kappa-part of basis vector q at a Levi point."""
        (block_idx, _) = self.index[q]
        wd = self.wd
        val = g.sim ** (-wd.kappa0) * g.g1 ** (-wd.kappa[0][0])
        for t, model in enumerate(self.blocks):
            val = val * model.evaluate(model.basis[block_idx[t]], g.blocks[t])
        return val

    def _s_value(self, q: int, h: MPoint):
        """Value of the twist part of basis vector q at a subgroup point."""
        (_, J) = self.index[q]
        n = self.wd.n
        col = [h.blocks[0].rows[i][n - 1] / h.g1 for i in range(2 * n - 1)]
        out = Fraction(1)
        for var in J:
            out *= col[var]
        return out

    def pair_value(self, g: MPoint, h: MPoint):
        """Value of the solved vector as a function on (Levi) x (subgroup)."""
        out = Fraction(0)
        for q, c in self.coords.items():
            out += c * self._v_value(q, g) * self._s_value(q, h)
        return out

    def open_orbit_value(self, g: MPoint, h: MPoint):
        """x-normalized pairing: the vector conjugated by u, then evaluated."""
        u = u_conjugator(self.wd.n, self.wd.d)
        return self.pair_value(_mpoint_mul(u, g), h)

    def box_restriction_value(self, g: MPoint, a_coords):
        """Value at (Iwahori point, box point) of the doubly-u-conjugated vector.

        Equals the open-orbit pairing against the column point z(a); on the
        unit box times the depth-beta congruence unipotent this is a p-unit,
        congruent to a_(n+1)^j mod p^beta.
        """
        n = self.wd.n
        a = [Fraction(x) for x in a_coords]
        folded = list(a)
        for i in range(1, n):
            folded[n - 1 + i] = a[n - 1 + i] + a[n - 1 - i]
        u = u_conjugator(self.wd.n, self.wd.d)
        ug = _mpoint_mul(u, g)
        out = Fraction(0)
        for q, c in self.coords.items():
            phi = _monomial_poly(self.index[q][1])
            out += c * self._v_value(q, ug) * phi.eval(folded)
        return out

    def box_restriction_vector(self, g: MPoint, a_coords) -> list:
        """Per-V-basis functional values of the restricted vector (no pairing)."""
        n = self.wd.n
        a = [Fraction(x) for x in a_coords]
        folded = list(a)
        for i in range(1, n):
            folded[n - 1 + i] = a[n - 1 + i] + a[n - 1 - i]
        u = u_conjugator(self.wd.n, self.wd.d)
        ug = _mpoint_mul(u, g)
        by_block: dict = {}
        for q, c in self.coords.items():
            (block_idx, J) = self.index[q]
            phi = _monomial_poly(J)
            key = block_idx
            by_block[key] = by_block.get(key, Fraction(0)) + c * phi.eval(folded)
        return [(key, coeff * self._v_value_blockonly(key, ug)) for key, coeff in sorted(by_block.items())]

    def _v_value_blockonly(self, block_idx, g: MPoint):
        wd = self.wd
        val = g.sim ** (-wd.kappa0) * g.g1 ** (-wd.kappa[0][0])
        for t, model in enumerate(self.blocks):
            val = val * model.evaluate(model.basis[block_idx[t]], g.blocks[t])
        return val

    def cpol_value(self, g: MPoint, a_coords, coords=None):
        """Raw pairing against big-cell column coordinates (no conjugation).

        Evaluates sum c_q * V_q(g) * x_q(a) for the given coordinate vector
        (default: the solved one).
        """
        a = [Fraction(x) for x in a_coords]
        use = self.coords if coords is None else coords
        out = Fraction(0)
        for q, c in use.items():
            phi = _monomial_poly(self.index[q][1])
            out += c * self._v_value(q, g) * phi.eval(a)
        return out

    # -- group-level eigen test -------------------------------------------

    def subgroup_action_coords(self, m: MPoint) -> dict:
        """Coordinates of (diagonal subgroup action of m) applied to the vector."""
        wd = self.wd
        n = wd.n
        out: dict = {}
        block_mats = []
        block_dets = []
        for t, model in enumerate(self.blocks):
            mat = m.blocks[t]
            block_mats.append(mat)
            block_dets.append(mat.det())
        sim_factor = m.sim ** wd.kappa0 * m.g1 ** wd.kappa[0][0]
        # S-part substitution: a -> (g1 * block^-1) a
        inv0 = rational_inverse(block_mats[0])
        forms = {}
        for k in range(2 * n - 1):
            form = Poly()
            for l in range(2 * n - 1):
                c = inv0.rows[k][l] * m.g1
                if c:
                    form = form + Poly.variable(l) * c
            forms[k] = form
        for q, c in self.coords.items():
            (block_idx, J) = self.index[q]
            factor = sim_factor
            new_blocks = []
            for t, model in enumerate(self.blocks):
                g2 = model.group_action(block_mats[t], model.basis[block_idx[t]])
                coords_t = model.expand(g2)
                det_fac = block_dets[t] ** model.shift if model.shift >= 0 else \
                    Fraction(1) / block_dets[t] ** (-model.shift)
                new_blocks.append([(i2, c2 * det_fac) for i2, c2 in enumerate(coords_t) if c2])
            phi = _monomial_poly(J).subs_linear(forms)
            s_terms = _expand_monomials(phi)

            def rec(t, idx_built, coeff):
                if t == len(new_blocks):
                    for (J2, c2) in s_terms:
                        _acc(out, self._lookup(tuple(idx_built), J2), c * coeff * c2 * factor)
                    return
                for (i2, c2) in new_blocks[t]:
                    rec(t + 1, idx_built + [i2], coeff * c2)

            rec(0, [], Fraction(1))
        return {k: v for k, v in out.items() if v}

    def eigen_character_value(self, m: MPoint):
        """sigma(m) for the solved eigencharacter (the action multiplies by 1/sigma)."""
        wd = self.wd
        n = wd.n
        k0 = wd.kappa[0]
        w = wd.w
        y1 = m.g1
        det2 = _subdet(m.blocks[0], range(0, n - 1))
        det3 = _subdet(m.blocks[0], range(n - 1, 2 * n - 1))
        val = (m.sim ** (-wd.kappa0) * y1 ** (-k0[0] - wd.j[0])
               * det2 ** (k0[n] - wd.j[0] - w) * det3 ** (-k0[n] + wd.j[0]))
        for t in range(1, wd.d):
            z1 = _subdet(m.blocks[t], range(0, n))
            z2 = _subdet(m.blocks[t], range(n, 2 * n))
            val = val * z1 ** (-wd.j[t]) * z2 ** (wd.j[t])
        return val

    def eigen_check(self, m: MPoint) -> bool:
        """Exact group-level check of the eigen property for a subgroup point m."""
        acted = self.subgroup_action_coords(m)
        lam = Fraction(1) / self.eigen_character_value(m)
        want = {q: c * lam for q, c in self.coords.items()}
        return acted == {k: v for k, v in want.items() if v}

    def to_json(self) -> dict:
        return {
            "weight": self.wd.to_json(),
            "dimension": self.dimension,
            "eigenspace_dimension": self.eigen_dimension,
            "basis_labels": [[list(b), list(J)] for (b, J) in self.index],
            "coordinates": {str(q): f"{c.numerator}/{c.denominator}"
                            for q, c in sorted(self.coords.items())},
        }


def _acc(d: dict, k, v):
    d[k] = d.get(k, Fraction(0)) + v


def _monomial_poly(J: tuple) -> Poly:
    mono: dict = {}
    for var in J:
        mono[var] = mono.get(var, 0) + 1
    return Poly({tuple(sorted(mono.items())): Fraction(1)})


def _expand_monomials(phi: Poly):
    """Write a polynomial as a list of (multiset, coeff); must be monomial-pure."""
    out = []
    for mono, c in phi.terms.items():
        J = []
        for v, e in mono:
            J.extend([v] * e)
        out.append((tuple(sorted(J)), c))
    return out


def _subdet(mat: ExactMatrix, idx):
    idx = list(idx)
    sub = ExactMatrix([[mat.rows[i][j] for j in idx] for i in idx])
    return sub.det()


def _mpoint_mul(x: MPoint, y: MPoint) -> MPoint:
    return MPoint(x.sim * y.sim, x.g1 * y.g1,
                  [a * b for a, b in zip(x.blocks, y.blocks)])


# ---------------------------------------------------------------------------
# the locally algebraic restriction through the cone generators


class GeneratorFamily:
    """Branch models for the distinguished generating weights of the cone.

    Used to assemble locally algebraic restrictions multiplicatively; the
    similitude generator is a pure character and needs no model.
    """

    def __init__(self, n: int, d: int, dim_cap: int = 500):
        from .glrep import generator_weights

        self.n = n
        self.d = d
        self.weights = generator_weights(n, d)
        self.models = {}
        for key, wd in self.weights.items():
            if key == "mu0":
                continue
            self.models[key] = BranchModel(wd, dim_cap)

    def generator_values(self, g: MPoint, a_coords) -> dict:
        """Box-restriction value of every generator at the same point pair."""
        out = {"mu0": g.sim}
        for key, model in self.models.items():
            out[key] = model.box_restriction_value(g, a_coords)
        return out


def algebraic_product_value(family: GeneratorFamily, wd: WeightData,
                            g: MPoint, a_coords):
    """Reassemble the restriction of (kappa, j) from the cone generators.

    Returns prod of generator values raised to the decomposition exponents;
    agrees with the directly computed restriction on the unit box.
    """
    from .glrep import cone_decompose

    coeffs = cone_decompose(wd)
    vals = family.generator_values(g, a_coords)
    out = Fraction(1)
    for key, a in coeffs.items():
        v = Fraction(vals[key])
        if a >= 0:
            out *= v ** a
        else:
            out *= Fraction(1) / v ** (-a)
    return out


def twisted_product_value(family: GeneratorFamily, wd: WeightData, chi: list,
                          g: MPoint, a_coords):
    """The locally algebraic restriction for the twist (kappa, j + chi).

    chi lists one finite-order character per component; the exponents on
    the mixed generators become x -> x^a chi(x)^(+-1), evaluated on the
    p-unit generator values.  The result is cyclotomic-valued, extended by
    zero off the unit box.
    """
    from .cyclotomic import CyclotomicElement
    from .glrep import cone_decompose
    from .mahler import in_unit_box

    p = chi[0].p
    if not in_unit_box(a_coords, wd.n, p):
        return CyclotomicElement.from_rational(0)
    coeffs = cone_decompose(wd)
    vals = family.generator_values(g, a_coords)
    out = CyclotomicElement.from_rational(algebraic_product_value(family, wd, g, a_coords))
    for t in range(wd.d):
        out = out * chi[t](vals[("mu", wd.n, t)]).inverse()
        out = out * chi[t](vals[("b", t)])
    return out
