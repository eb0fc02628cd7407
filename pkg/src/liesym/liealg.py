"""Lie algebra structure over exact rationals.

Brackets of vector fields, structure constants, derived series and
solvability, Killing form and semisimplicity, radical via the Cartan
orthogonality criterion, Levi split verification, adjoint matrices and
closed-form adjoint exponentials.

Adjoint convention: Ad(exp(q X_i)) X_j expands with the alternating
series X_j - q [X_i, X_j] + (q^2/2) [X_i, [X_i, X_j]] - ..., and the
AdjointMap matrix stores images by rows, so coefficient vectors
transform as row vectors: a' = a . M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ChartError,
    DependentBasisError,
    NonClosureError,
    UnsupportedAdjointError,
)
from .jets import BundleVectorField
from .linalg import express_in_basis, nullspace_dense, rank_dense, rref_dense
from .symexpr import Add, Expr, Fn, Mul, Num, Pow, Sym, is_zero, to_canonical
from .symexpr.canonical import canonical_ratfunc
from .symexpr.poly import POLY_ONE, poly_divexact, poly_gcd


def field_bracket(x: BundleVectorField, y: BundleVectorField) -> BundleVectorField:
    """[X, Y]^a = X(Y^a) - Y(X^a) componentwise over (xi, eta)."""
    if x.chart != y.chart:
        raise ChartError("bracket of fields on different charts")
    comps = []
    for cx, cy in zip(x.components(), y.components()):
        comps.append(to_canonical(Add.of(x.apply_to(cy), Mul.of(Num(-1), y.apply_to(cx)))))
    return BundleVectorField(x.chart, comps[0], tuple(comps[1:]))


def _component_vectors(fields, extra=None):
    """Coordinates of fields in the kernel-monomial function basis.

    Components are rational functions; each component slot is cleared by
    the lcm of the denominators so every field becomes a finite exact
    coefficient vector.  Returns (vectors per field, extra vector).
    """
    ncomp = len(fields[0].components())
    all_fields = list(fields) + ([extra] if extra is not None else [])
    rfs = [[canonical_ratfunc(f.components()[i]) for i in range(ncomp)] for f in all_fields]
    vectors = [[] for _ in all_fields]
    for i in range(ncomp):
        dens = [rfs[k][i].den for k in range(len(all_fields))]
        common = POLY_ONE
        for d in dens:
            g = poly_gcd(common, d)
            common = poly_divexact(common * d, g) if not g.is_const() else common * d
        cleared = []
        for k in range(len(all_fields)):
            factor = poly_divexact(common, dens[k])
            cleared.append(rfs[k][i].num * factor)
        monomials = sorted(
            {m for p in cleared for m in p.terms},
            key=lambda m: tuple((a.key(), e) for a, e in m),
        )
        for k in range(len(all_fields)):
            terms = cleared[k].terms
            vectors[k].extend(terms.get(m, Fraction(0)) for m in monomials)
    if extra is not None:
        return vectors[:-1], vectors[-1]
    return vectors, None


@dataclass(frozen=True)
class LieAlgebra:
    """Ordered basis with exact structure constants
    [X_i, X_j] = sum_k c[i][j][k] X_k."""

    basis: tuple
    c: tuple  # c[i][j][k] Fraction

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_coeffs(self, u, v):
        """Coefficients of [sum u_i X_i, sum v_j X_j]."""
        m = self.dim
        out = [Fraction(0)] * m
        for i in range(m):
            if not u[i]:
                continue
            for j in range(m):
                if not v[j]:
                    continue
                uv = u[i] * v[j]
                for k in range(m):
                    if self.c[i][j][k]:
                        out[k] += uv * self.c[i][j][k]
        return out

    def names(self):
        return [f.name or f"X{i + 1}" for i, f in enumerate(self.basis)]


def structure_constants(basis) -> LieAlgebra:
    """Expand all pairwise brackets exactly in the given basis."""
    basis = list(basis)
    m = len(basis)
    vectors, _ = _component_vectors(basis)
    if rank_dense(vectors) != m:
        raise DependentBasisError("basis fields are linearly dependent")
    c = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            br = field_bracket(basis[i], basis[j])
            if br.is_zero_field():
                continue
            vecs, target = _component_vectors(basis, extra=br)
            coeffs = express_in_basis([list(v) for v in vecs], list(target))
            if coeffs is None:
                raise NonClosureError(
                    f"bracket [{basis[i].name or i}, {basis[j].name or j}] "
                    f"is outside the span",
                    pair=(i, j),
                    remainder=br,
                )
            for k in range(m):
                c[i][j][k] = coeffs[k]
                c[j][i][k] = -coeffs[k]
    algebra = LieAlgebra(tuple(basis), tuple(tuple(tuple(row) for row in plane) for plane in c))
    _validate_structure(algebra)
    return algebra


def _validate_structure(g: LieAlgebra):
    m = g.dim
    c = g.c
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if c[i][j][k] != -c[j][i][k]:
                    raise NonClosureError("antisymmetry violated in structure constants")
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for target in range(m):
                    total = Fraction(0)
                    for l in range(m):
                        total += c[i][j][l] * c[l][k][target]
                        total += c[j][k][l] * c[l][i][target]
                        total += c[k][i][l] * c[l][j][target]
                    if total:
                        raise NonClosureError("Jacobi identity violated")


def ad_matrix(g: LieAlgebra, v):
    """Matrix of ad(sum v_i X_i) acting on coefficient columns."""
    m = g.dim
    out = [[Fraction(0)] * m for _ in range(m)]
    for j in range(m):
        for i in range(m):
            if not v[i]:
                continue
            for k in range(m):
                if g.c[i][j][k]:
                    out[k][j] += v[i] * g.c[i][j][k]
    return out


def _unit(m, i):
    v = [Fraction(0)] * m
    v[i] = Fraction(1)
    return v


def span_rref(vectors):
    """Canonical basis (RREF rows) of the span of the given vectors."""
    if not vectors:
        return []
    red, _ = rref_dense(vectors)
    return [row for row in red if any(row)]


@dataclass(frozen=True)
class SubalgebraChain:
    """Derived series; each entry is a canonical RREF row basis."""

    subspaces: tuple

    @property
    def dims(self):
        return tuple(len(s) for s in self.subspaces)


def derived_series(g: LieAlgebra):
    """Chain g >= [g, g] >= ... ; returns (chain, is_solvable)."""
    m = g.dim
    current = span_rref([_unit(m, i) for i in range(m)])
    chain = [current]
    while True:
        brackets = []
        for a in range(len(current)):
            for b in range(a + 1, len(current)):
                w = g.bracket_coeffs(current[a], current[b])
                if any(w):
                    brackets.append(w)
        nxt = span_rref(brackets)
        chain.append(nxt)
        if len(nxt) == 0 or len(nxt) == len(current):
            break
        current = nxt
    return SubalgebraChain(tuple(tuple(tuple(v) for v in s) for s in chain)), len(chain[-1]) == 0


@dataclass(frozen=True)
class KillingMatrix:
    entries: tuple  # m x m Fractions

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]


def killing_form(g: LieAlgebra):
    """K_ij = tr(ad X_i ad X_j); returns (KillingMatrix, is_semisimple)."""
    m = g.dim
    ads = [ad_matrix(g, _unit(m, i)) for i in range(m)]
    K = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            tr = Fraction(0)
            for a in range(m):
                for b in range(m):
                    tr += ads[i][a][b] * ads[j][b][a]
            K[i][j] = K[j][i] = tr
    km = KillingMatrix(tuple(tuple(row) for row in K))
    return km, rank_dense(K) == m


def radical(g: LieAlgebra):
    """Cartan criterion: r = {v : K(v, w) = 0 for all w in [g, g]};
    verified to be a solvable ideal before returning."""
    m = g.dim
    K, _ = killing_form(g)
    chain, _ = derived_series(g)
    derived = chain.subspaces[1] if len(chain.subspaces) > 1 else ()
    rows = []
    for w in derived:
        rows.append([
            sum(K[i, j] * w[j] for j in range(m)) for i in range(m)
        ])
    if not rows:
        basis = span_rref([_unit(m, i) for i in range(m)])
        return [tuple(v) for v in basis]
    basis = nullspace_dense(rows, m)
    basis = span_rref(basis)
    if not _is_ideal(g, basis):
        raise NonClosureError("radical candidate is not an ideal (structure bug)")
    if not _is_solvable_subspace(g, basis):
        raise NonClosureError("radical candidate is not solvable (structure bug)")
    return [tuple(v) for v in basis]


def _is_subalgebra(g: LieAlgebra, vectors) -> bool:
    if not vectors:
        return True
    for a in range(len(vectors)):
        for b in range(a + 1, len(vectors)):
            w = g.bracket_coeffs(vectors[a], vectors[b])
            if any(w) and express_in_basis([list(v) for v in vectors], w) is None:
                return False
    return True


def _is_ideal(g: LieAlgebra, vectors) -> bool:
    m = g.dim
    if not vectors:
        return True
    for v in vectors:
        for i in range(m):
            w = g.bracket_coeffs(list(v), _unit(m, i))
            if any(w) and express_in_basis([list(x) for x in vectors], w) is None:
                return False
    return True


def _is_solvable_subspace(g: LieAlgebra, vectors) -> bool:
    current = [list(v) for v in vectors]
    while current:
        brackets = []
        for a in range(len(current)):
            for b in range(a + 1, len(current)):
                w = g.bracket_coeffs(current[a], current[b])
                if any(w):
                    brackets.append(w)
        nxt = span_rref(brackets)
        if len(nxt) == len(current):
            return False
        current = nxt
    return True


def levi_check(g: LieAlgebra, r_vectors, h_vectors) -> bool:
    """True iff r is a solvable ideal, h a subalgebra with nondegenerate
    restricted Killing form, and r + h = g with trivial intersection."""
    m = g.dim
    r_vectors = [list(map(Fraction, v)) for v in r_vectors]
    h_vectors = [list(map(Fraction, v)) for v in h_vectors]
    if len(r_vectors) + len(h_vectors) != m:
        raise ValueError("dimension mismatch: dim r + dim h != dim g")
    if rank_dense(r_vectors + h_vectors) != m:
        return False
    if not (_is_ideal(g, r_vectors) and _is_solvable_subspace(g, r_vectors)):
        return False
    if not _is_subalgebra(g, h_vectors):
        return False
    K, _ = killing_form(g)
    Kh = []
    for u in h_vectors:
        row = []
        for v in h_vectors:
            row.append(sum(u[i] * K[i, j] * v[j] for i in range(m) for j in range(m)))
        Kh.append(row)
    return rank_dense(Kh) == len(h_vectors)


# ---------------------------------------------------------------------------
# Closed-form adjoint exponentials.


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def _mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def _mat_add(a, b):
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _identity(n):
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def _minimal_polynomial(a):
    """Monic minimal polynomial of a rational matrix, low-degree first
    coefficient list [c0, c1, ..., 1]."""
    n = len(a)
    powers = [_identity(n)]
    while True:
        powers.append(_mat_mul(powers[-1], a))
        d = len(powers) - 1
        rows = [[powers[p][i][j] for p in range(d + 1)]
                for i in range(n) for j in range(n)]
        ns = nullspace_dense(rows, d + 1)
        for v in ns:
            if v[d]:
                coeffs = [x / v[d] for x in v]
                return coeffs
        if d > n:
            raise UnsupportedAdjointError("minimal polynomial search failed")


def _poly_divmod(num, den):
    num = list(num)
    out = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        out[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return out, num


def _poly_eval_matrix(coeffs, a):
    n = len(a)
    out = [[Fraction(0)] * n for _ in range(n)]
    power = _identity(n)
    for c in coeffs:
        if c:
            out = _mat_add(out, _mat_scale(power, c))
        power = _mat_mul(power, a)
    return out


def _poly_gcd_ext(p, q):
    """Extended Euclid over Q[x]: returns (g, u, v) with u p + v q = g."""
    r0, r1 = list(p), list(q)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]

    def sub_scaled(a, b, quot):
        out = list(a)
        for i, qc in enumerate(quot):
            if qc == 0:
                continue
            for j, bc in enumerate(b):
                idx = i + j
                while len(out) <= idx:
                    out.append(Fraction(0))
                out[idx] -= qc * bc
        while out and out[-1] == 0:
            out.pop()
        return out

    while r1:
        quot, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub_scaled(s0, s1, quot)
        t0, t1 = t1, sub_scaled(t0, t1, quot)
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0], [c / lead for c in t0]


def _rational_roots(coeffs):
    """Rational roots with multiplicity; returns (roots dict, residual).

    Candidates come from the rational root theorem applied to the
    denominator-cleared integer polynomial."""
    roots = {}
    cur = list(coeffs)
    while len(cur) > 1:
        if cur[0] == 0:
            root = Fraction(0)
        else:
            den_lcm = 1
            for c in cur:
                den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
            ints = [c * den_lcm for c in cur]
            root = None
            found = False
            for p in _divisors(ints[0].numerator):
                for q in _divisors(ints[-1].numerator):
                    for cand in (Fraction(p, q), Fraction(-p, q)):
                        if _poly_value(cur, cand) == 0:
                            root = cand
                            found = True
                            break
                    if found:
                        break
                if found:
                    break
            if root is None:
                break
        quot, rem = _poly_divmod(cur, [-root, Fraction(1)])
        if rem:
            break
        roots[root] = roots.get(root, 0) + 1
        cur = quot
    return roots, cur


def _poly_value(coeffs, x):
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _divisors(n):
    n = abs(int(n))
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


@dataclass(frozen=True)
class AdjointMap:
    """Closed-form matrix of Ad(exp(q X_i)) on the basis, rows = images,
    so coefficient row vectors transform as a' = a . matrix."""

    generator_index: int
    parameter: str
    matrix: tuple  # rows of canonical Expr

    @property
    def dim(self):
        return len(self.matrix)

    def apply_row(self, coeffs, q_value: Expr):
        """Transform a coefficient vector, substituting the parameter."""
        from .symexpr import substitute

        m = self.dim
        out = []
        for k in range(m):
            total = Num(0)
            for j in range(m):
                entry = substitute(self.matrix[j][k], {self.parameter: q_value})
                total = Add.of(total, Mul.of(Num(coeffs[j]), entry))
            out.append(to_canonical(total))
        return out


def adjoint_exp(g: LieAlgebra, index: int, parameter: str = "q") -> AdjointMap:
    """Closed-form exp(-q ad X_i) assembled from the minimal-polynomial
    factorization; supported spectra: 0 (any multiplicity), rational
    eigenvalues, simple purely imaginary pairs x^2 + c with c > 0."""
    m = g.dim
    a = ad_matrix(g, _unit(m, index))
    mu = _minimal_polynomial(a)
    # factor mu = x^k * prod (x - lambda)^mult * prod (x^2 + c)
    k = 0
    cur = list(mu)
    while len(cur) > 1 and cur[0] == 0:
        cur = cur[1:]
        k += 1
    roots, residual = _rational_roots(cur)
    quads = []
    if len(residual) > 1:
        if len(residual) % 2 == 0:
            raise UnsupportedAdjointError(
                "minimal polynomial has an unsupported odd factor")
        even = residual[0::2]
        if any(c != 0 for c in residual[1::2]):
            raise UnsupportedAdjointError(
                "minimal polynomial factor is not even in the parameter")
        yroots, yres = _rational_roots(even)
        if len(yres) > 1 or any(mult != 1 for mult in yroots.values()):
            raise UnsupportedAdjointError(
                "irrational or repeated imaginary spectrum is unsupported")
        for y, mult in yroots.items():
            cval = -y
            if cval <= 0:
                raise UnsupportedAdjointError(
                    "real irrational eigenvalues are unsupported")
            quads.append(cval)
    if 0 in roots:
        # a rational root 0 would have been absorbed into x^k
        raise UnsupportedAdjointError("inconsistent minimal polynomial factorization")

    factors = []  # (coeff list of factor, kind, data)
    if k:
        factors.append(([Fraction(0)] * k + [Fraction(1)], "nilpotent", k))
    for lam, mult in sorted(roots.items()):
        f = [Fraction(1)]
        for _ in range(mult):
            f, _rem = _poly_mul_linear(f, lam)
        factors.append((f, "exponential", (lam, mult)))
    for cval in sorted(quads):
        factors.append(([cval, Fraction(0), Fraction(1)], "rotation", cval))

    q = Sym(parameter)
    total = [[Num(0) for _ in range(m)] for _ in range(m)]
    for f, kind, data in factors:
        rest, remcheck = _poly_divmod(mu, f)
        if remcheck:
            raise UnsupportedAdjointError("minimal polynomial factorization failed")
        gpoly, u, v = _poly_gcd_ext(f, rest)
        if len(gpoly) != 1:
            raise UnsupportedAdjointError("minimal polynomial factors are not coprime")
        # projector P = v(a) rest(a) and exp(-qa) restricted to im P
        proj = _mat_mul(_poly_eval_matrix(v, a), _poly_eval_matrix(rest, a))
        block = _exp_block(a, proj, kind, data, q)
        total = [[Add.of(total[i][j], block[i][j]) for j in range(m)] for i in range(m)]
    closed = [[to_canonical(total[i][j]) for j in range(m)] for i in range(m)]
    # rows = images: transpose the column-action matrix
    rows = tuple(tuple(closed[i][j] for i in range(m)) for j in range(m))
    amap = AdjointMap(index, parameter, rows)
    _check_identity_at_zero(amap)
    return amap


def _poly_mul_linear(f, lam):
    """f(x) * (x - lam)"""
    out = [Fraction(0)] * (len(f) + 1)
    for i, c in enumerate(f):
        out[i + 1] += c
        out[i] -= lam * c
    return out, None


def _exp_block(a, proj, kind, data, q: Sym):
    """exp(-q a) restricted to a spectral block, as Expr matrix."""
    m = len(a)
    minus_q = Mul.of(Num(-1), q)
    if kind == "nilpotent":
        k = data
        out = [[Num(0)] * m for _ in range(m)]
        power = proj
        fact = 1
        for l in range(k):
            coeff = Fraction(1, fact)
            term = power
            for i in range(m):
                for j in range(m):
                    if term[i][j]:
                        out[i][j] = Add.of(
                            out[i][j],
                            Mul.of(Num(coeff * term[i][j]), Pow(minus_q, Fraction(l)) if l else Num(1)),
                        )
            power = _mat_mul(power, a)
            fact *= l + 1
        return out
    if kind == "exponential":
        lam, mult = data
        scalar = Fn("exp", Mul.of(Num(-lam), q))
        shifted = _mat_add(a, _mat_scale(_identity(m), -lam))  # (a - lam)
        out = [[Num(0)] * m for _ in range(m)]
        power = proj
        fact = 1
        for l in range(mult):
            coeff = Fraction(1, fact)
            for i in range(m):
                for j in range(m):
                    if power[i][j]:
                        piece = Mul.of(
                            Num(coeff * power[i][j]),
                            scalar,
                            Pow(minus_q, Fraction(l)) if l else Num(1),
                        )
                        out[i][j] = Add.of(out[i][j], piece)
            power = _mat_mul(power, shifted)
            fact *= l + 1
        return out
    # rotation block: a^2 = -c on im(P); exp(-q a) = cos(w q) - sin(w q)/w a
    cval = data
    root = Pow(Num(cval), Fraction(1, 2))
    w_q = Mul.of(root, q)
    cos_part = Fn("cos", w_q)
    sin_part = Mul.of(Num(-1), Pow(Num(cval), Fraction(-1, 2)), Fn("sin", w_q))
    ap = _mat_mul(a, proj)
    out = [[Num(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            pieces = []
            if proj[i][j]:
                pieces.append(Mul.of(Num(proj[i][j]), cos_part))
            if ap[i][j]:
                pieces.append(Mul.of(Num(ap[i][j]), sin_part))
            if pieces:
                out[i][j] = Add.of(*pieces)
    return out


def _check_identity_at_zero(amap: AdjointMap):
    from .symexpr import substitute

    m = amap.dim
    for i in range(m):
        for j in range(m):
            v = substitute(amap.matrix[i][j], {amap.parameter: Num(0)})
            expected = Num(1) if i == j else Num(0)
            if not is_zero(Add.of(v, Mul.of(Num(-1), expected))):
                raise UnsupportedAdjointError("adjoint map is not identity at 0")


def adjoint_series_truncation(g: LieAlgebra, index: int, parameter: str, order: int):
    """Partial sum of the alternating adjoint series as polynomial
    matrices in the parameter: sum_{l<=order} (-q)^l ad^l / l!.

    Returned with the same row-orientation as AdjointMap."""
    m = g.dim
    a = ad_matrix(g, _unit(m, index))
    q = Sym(parameter)
    out = [[Num(0)] * m for _ in range(m)]
    power = _identity(m)
    fact = 1
    for l in range(order + 1):
        coeff = Fraction(1, fact)
        for i in range(m):
            for j in range(m):
                if power[i][j]:
                    term = Mul.of(
                        Num(coeff * power[i][j] * Fraction(-1) ** l),
                        Pow(q, Fraction(l)) if l else Num(1),
                    )
                    out[i][j] = Add.of(out[i][j], term)
        power = _mat_mul(power, a)
        fact *= l + 1
    return tuple(tuple(to_canonical(out[i][j]) for i in range(m)) for j in range(m))
