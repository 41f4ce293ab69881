"""Exact integer linear algebra used by the cohomology and gauge solvers.

Everything here works on plain Python ints (no overflow) and small dense
matrices represented as lists of row lists.  The central primitive is the
Smith normal form with all four transformation matrices tracked, from which
kernels, integer solves, solves modulo N, and solves over the circle group
(rational turns) are derived.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


class SmithForm:
    """Decomposition U @ A @ V = D with U, V unimodular and D diagonal.

    ``diag`` holds the nonnegative diagonal entries, each dividing the next.
    ``uinv`` and ``vinv`` are the inverses of the transforms, accumulated
    during the reduction so no separate inversion step is needed.
    """

    def __init__(self, rows, cols, diag, u, uinv, v, vinv):
        self.rows = rows
        self.cols = cols
        self.diag = diag
        self.u = u
        self.uinv = uinv
        self.v = v
        self.vinv = vinv

    def apply_u(self, b):
        """Left transform of a length-``rows`` vector."""
        return [sum(r[k] * b[k] for k in range(self.rows)) for r in self.u]

    def apply_v(self, y):
        """Right transform of a length-``cols`` vector."""
        return [sum(r[k] * y[k] for k in range(self.cols)) for r in self.v]


def smith_normal_form(matrix, rows=None, cols=None):
    """Compute the Smith normal form of an integer matrix.

    Accepts an empty list of rows if ``rows``/``cols`` are given.
    """
    if rows is None:
        rows = len(matrix)
    if cols is None:
        cols = len(matrix[0]) if matrix else 0
    d = [list(row) for row in matrix]
    u = identity_matrix(rows)
    uinv = identity_matrix(rows)
    v = identity_matrix(cols)
    vinv = identity_matrix(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        rd, rs = d[dst], d[src]
        for k in range(cols):
            rd[k] += c * rs[k]
        rd2, rs2 = u[dst], u[src]
        for k in range(rows):
            rd2[k] += c * rs2[k]
        for r in uinv:
            r[src] -= c * r[dst]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]
        ri, rs = vinv[dst], vinv[src]
        for k in range(cols):
            rs[k] -= c * ri[k]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # locate a pivot of minimal magnitude in the trailing block
        pivot = None
        best = None
        for i in range(t, rows):
            row = d[i]
            for j in range(t, cols):
                a = row[j]
                if a:
                    a = abs(a)
                    if best is None or a < best:
                        best = a
                        pivot = (i, j)
                        if a == 1:
                            break
            if best == 1:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            # clear the pivot column
            dirty = False
            for i in range(t + 1, rows):
                a = d[i][t]
                if a:
                    q = a // d[t][t]
                    if q:
                        add_row(i, t, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            # clear the pivot row
            for j in range(t + 1, cols):
                a = d[t][j]
                if a:
                    q = a // d[t][t]
                    if q:
                        add_col(j, t, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                col_ok = all(d[i][t] == 0 for i in range(t + 1, rows))
                row_ok = all(d[t][j] == 0 for j in range(t + 1, cols))
                if col_ok and row_ok:
                    break
        if d[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            if d[i + 1][i + 1] % d[i][i] != 0:
                changed = True
                add_col(i, i + 1, 1)
                # Euclid on rows i, i+1 restricted to column i
                while d[i + 1][i] != 0:
                    q = d[i][i] // d[i + 1][i]
                    if q:
                        add_row(i, i + 1, -q)
                    swap_rows(i, i + 1)
                # clear the junk the row ops left at (i, i+1)
                if d[i][i + 1]:
                    add_col(i + 1, i, -(d[i][i + 1] // d[i][i]))
                if d[i][i] < 0:
                    negate_row(i)
                if d[i + 1][i + 1] < 0:
                    negate_row(i + 1)
    diag = [d[i][i] for i in range(limit)]
    return SmithForm(rows, cols, diag, u, uinv, v, vinv)


def integer_kernel(matrix, rows=None, cols=None):
    """Basis (list of length-``cols`` vectors) of {x : A x = 0} over Z."""
    sf = smith_normal_form(matrix, rows, cols)
    basis = []
    for j in range(sf.cols):
        if j >= len(sf.diag) or sf.diag[j] == 0:
            basis.append([sf.v[i][j] for i in range(sf.cols)])
    return basis


def solve_integer(sf: SmithForm, b):
    """One solution of A x = b over Z given the Smith form of A, else None."""
    c = sf.apply_u(b)
    y = [0] * sf.cols
    for i in range(sf.rows):
        di = sf.diag[i] if i < len(sf.diag) else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
    return sf.apply_v(y)


def solve_mod(sf: SmithForm, b, modulus):
    """Canonical solution of A x = b (mod ``modulus``) given Smith(A).

    Free coordinates in the Smith basis are pinned to zero, which makes the
    returned solution deterministic.  Returns None when no solution exists.
    """
    c = sf.apply_u(b)
    y = [0] * sf.cols
    for i in range(sf.rows):
        di = sf.diag[i] if i < len(sf.diag) else 0
        ci = c[i] % modulus
        if di == 0:
            if ci != 0:
                return None
        else:
            g = gcd(di, modulus)
            if ci % g != 0:
                return None
            m = modulus // g
            y[i] = ((ci // g) * pow(di // g, -1, m)) % m
    return [x % modulus for x in sf.apply_v(y)]


def solve_turns(sf: SmithForm, b):
    """Canonical solution of A x = b over the circle group Q/Z.

    ``b`` is a vector of Fractions interpreted modulo 1.  Because Q/Z is
    divisible, the only obstructions come from zero rows of the Smith form,
    so solvability here decides solvability over U(1) exactly.  The
    transform is applied over a common denominator to stay in integers.
    """
    denom = 1
    for x in b:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    scaled = [int(x * denom) for x in b]
    nonzero = [k for k, x in enumerate(scaled) if x]
    c = [sum(row[k] * scaled[k] for k in nonzero) for row in sf.u]
    y = {}
    for i in range(sf.rows):
        di = sf.diag[i] if i < len(sf.diag) else 0
        ci = c[i] % denom  # reduce the turn into [0, 1)
        if di == 0:
            if ci != 0:
                return None
        elif ci:
            y[i] = Fraction(ci, denom * di)
    x = [Fraction(0)] * sf.cols
    for i in range(sf.cols):
        acc = Fraction(0)
        row = sf.v[i]
        for k, yk in y.items():
            if k < sf.cols and row[k]:
                acc += row[k] * yk
        x[i] = acc - (acc.numerator // acc.denominator)
    return x


def congruence_kernel_lattice(matrix, modulus, rows=None, cols=None):
    """Basis of the full-rank lattice {x in Z^cols : A x == 0 (mod modulus)}."""
    sf = smith_normal_form(matrix, rows, cols)
    basis = []
    for j in range(sf.cols):
        if j < len(sf.diag) and sf.diag[j] != 0:
            scale = modulus // gcd(sf.diag[j], modulus)
        else:
            scale = 1
        basis.append([scale * sf.v[i][j] for i in range(sf.cols)])
    return basis


def lattice_basis(generators, dim):
    """Reduce a generating set of a lattice in Z^dim to an actual basis."""
    if not generators:
        return []
    mat = [[g[i] for g in generators] for i in range(dim)]
    sf = smith_normal_form(mat, dim, len(generators))
    # columns of A @ V span the same lattice; the nonzero ones are a basis
    basis = []
    for j in range(len(generators)):
        col = [sum(mat[i][k] * sf.v[k][j] for k in range(len(generators)))
               for i in range(dim)]
        if any(col):
            basis.append(col)
    return basis


def quotient_group(ambient_basis, subgroup_generators):
    """Invariant factors and generators of L / S for lattices S <= L.

    ``ambient_basis`` is a basis of L (list of vectors), and
    ``subgroup_generators`` generate S.  Returns ``(orders, gens)`` where the
    nontrivial cyclic orders come with a generating vector of L each; an
    order of 0 would indicate an infinite factor (not expected here).
    """
    dim = len(ambient_basis[0]) if ambient_basis else 0
    r = len(ambient_basis)
    if r == 0:
        return [], []
    lmat = [[ambient_basis[j][i] for j in range(r)] for i in range(dim)]
    sf_l = smith_normal_form(lmat, dim, r)
    coeffs = []
    for g in subgroup_generators:
        c = solve_integer(sf_l, g)
        if c is None:
            raise ValueError("subgroup generator outside the ambient lattice")
        coeffs.append(c)
    cmat = [[c[i] for c in coeffs] for i in range(r)]
    sf_c = smith_normal_form(cmat, r, len(coeffs))
    orders = []
    gens = []
    for i in range(r):
        di = sf_c.diag[i] if i < len(sf_c.diag) else 0
        if di == 1:
            continue
        # generator = ambient_basis combined with column i of Uinv
        vec = [0] * dim
        for j in range(r):
            cj = sf_c.uinv[j][i]
            if cj:
                bj = ambient_basis[j]
                for k in range(dim):
                    vec[k] += cj * bj[k]
        orders.append(di)
        gens.append(vec)
    return orders, gens
