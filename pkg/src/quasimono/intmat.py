"""Integer matrix utilities: exact linear algebra over Z, Smith normal form,
integer kernels, invariant monomial sublattices, and block-decomposition
checks for exponent lattices.

Matrices are tuples of row tuples.  The action convention throughout the
package: a group element with matrix A sends x_j to prod_i x_i^(A[i][j]),
so exponent vectors of variable images are the *columns* of A.
"""

from __future__ import annotations

import itertools
from math import gcd

from .errors import NotUnimodular


def mat_tuple(rows):
    return tuple(tuple(int(v) for v in row) for row in rows)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def mat_vec(a, v):
    return tuple(sum(a[i][t] * v[t] for t in range(len(v))) for i in range(len(a)))


def transpose(a):
    return tuple(zip(*a))


def det(a) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a) -> bool:
    return len(a) == len(a[0]) and det(a) in (1, -1)


def mat_inverse(a):
    """Exact inverse of a unimodular integer matrix (adjugate / det)."""
    n = len(a)
    d = det(a)
    if d not in (1, -1):
        raise NotUnimodular(f"determinant {d}")
    if n == 1:
        return ((d,),)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [a[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            cof[i][j] = (-1) ** (i + j) * det(minor)
    # inverse = transpose(cof) / det, and 1/det = det for det = +-1
    return tuple(tuple(cof[j][i] * d for j in range(n)) for i in range(n))


def conjugate(p_inv, a, p):
    return mat_mul(p_inv, mat_mul(a, p))


# ----- Smith normal form ---------------------------------------------------


def smith_normal_form(a):
    """(U, D, V) with U*a*V = D diagonal, d1 | d2 | ..., U and V unimodular.

    Works for rectangular matrices; the diagonal entries are non-negative.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(r) for r in a]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for t in range(cols):
            d[i][t] -= q * d[j][t]
        for t in range(rows):
            u[i][t] -= q * u[j][t]

    def col_op(i, j, q):  # col_i -= q * col_j
        for t in range(rows):
            d[t][i] -= q * d[t][j]
        for t in range(cols):
            v[t][i] -= q * v[t][j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for t in range(rows):
            d[t][i], d[t][j] = d[t][j], d[t][i]
        for t in range(cols):
            v[t][i], v[t][j] = v[t][j], v[t][i]

    k = 0
    while k < min(rows, cols):
        # pivot of minimal absolute value in the remaining block
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(k, best[0])
        swap_cols(k, best[1])
        while True:
            dirty = False
            for i in range(k + 1, rows):
                if d[i][k]:
                    q = d[i][k] // d[k][k]
                    row_op(i, k, q)
                    if d[i][k]:
                        swap_rows(k, i)
                        dirty = True
            for j in range(k + 1, cols):
                if d[k][j]:
                    q = d[k][j] // d[k][k]
                    col_op(j, k, q)
                    if d[k][j]:
                        swap_cols(k, j)
                        dirty = True
            if dirty:
                continue
            # force the pivot to divide every remaining entry, so the
            # diagonal automatically forms a divisibility chain
            bad = None
            for i in range(k + 1, rows):
                for j in range(k + 1, cols):
                    if d[i][j] % d[k][k] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(k, bad, -1)  # row_k += row_bad
        if d[k][k] < 0:
            for t in range(cols):
                d[k][t] = -d[k][t]
            for t in range(rows):
                u[k][t] = -u[k][t]
        k += 1
    return mat_tuple(u), mat_tuple(d), mat_tuple(v)


def kernel_basis(a):
    """Basis (as rows) of the integer kernel {v : a @ v = 0}."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    _, d, v = smith_normal_form(a)
    rank = sum(1 for i in range(min(rows, cols)) if d[i][i] != 0)
    cols_v = transpose(v)
    return tuple(cols_v[j] for j in range(rank, cols))


def hermite_rows(basis):
    """Row-style Hermite normal form of a full-rank basis (rows)."""
    m = [list(r) for r in basis]
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            while m[i][c]:
                q = m[r][c] // m[i][c] if m[i][c] else 0
                if abs(m[r][c]) >= abs(m[i][c]):
                    m[r] = [x - q * y for x, y in zip(m[r], m[i])]
                m[r], m[i] = m[i], m[r]
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
    return mat_tuple(m[:r])


def invariant_monomial_lattice(n, twists):
    """Basis of {lam in Z^n : sum_j r[j]*lam[j] = 0 mod m, for each twist}.

    Each twist is (m, r) with r a residue vector mod m; it encodes one
    scaling generator acting on the variables through an order-m root of
    unity.  Returns (basis rows in Hermite form, index).
    """
    if not twists:
        return identity(n), 1
    k = len(twists)
    rows = []
    for i, (m, r) in enumerate(twists):
        row = [int(x) % m for x in r]
        row += [m if j == i else 0 for j in range(k)]
        rows.append(tuple(row))
    kern = kernel_basis(mat_tuple(rows))
    proj = [v[:n] for v in kern]
    basis = hermite_rows(proj)
    assert len(basis) == n, "invariant monomial lattice must have full rank"
    index = abs(det(basis))
    return basis, index


# ----- block decompositions -------------------------------------------------


def _block_pattern(n, blocks):
    bounds = []
    start = 0
    for b in blocks:
        bounds.append((start, start + b))
        start += b
    assert start == n
    return bounds


def is_block_diagonal(a, blocks):
    bounds = _block_pattern(len(a), blocks)
    for i in range(len(a)):
        for j in range(len(a)):
            inside = any(lo <= i < hi and lo <= j < hi for lo, hi in bounds)
            if not inside and a[i][j] != 0:
                return False
    return True


def check_block_decomposition(mats, u, blocks) -> bool:
    """True iff u^-1 * m * u is block diagonal with the given sizes for all m."""
    u = mat_tuple(u)
    if not is_unimodular(u):
        raise NotUnimodular("change of basis must be unimodular")
    u_inv = mat_inverse(u)
    return all(is_block_diagonal(conjugate(u_inv, m, u), blocks) for m in mats)


def extract_blocks(a, blocks):
    out = []
    for lo, hi in _block_pattern(len(a), blocks):
        out.append(tuple(tuple(a[i][j] for j in range(lo, hi)) for i in range(lo, hi)))
    return tuple(out)


def _short_vectors(n, bound):
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        if any(v):
            first = next(x for x in v if x)
            if first > 0:  # one representative per +- pair
                yield v


def _saturate(rows):
    """Basis of the saturation (span_Q intersect Z^n) of the row span."""
    if not rows:
        return ()
    at = transpose(rows)
    u, d, _ = smith_normal_form(at)
    rank = sum(1 for i in range(min(len(at), len(at[0]))) if d[i][i] != 0)
    u_inv = mat_inverse(u) if is_unimodular(u) else None
    assert u_inv is not None
    cols = transpose(u_inv)
    return hermite_rows(cols[:rank])


def invariant_sublattices(mats, n, rank, bound=2):
    """Saturated rank-`rank` sublattices invariant under all mats, found by
    spanning orbits of short vectors.  Best effort, not exhaustive."""
    seen = set()
    out = []
    for v in _short_vectors(n, bound):
        orbit_rows = [v]
        frontier = [v]
        while frontier:
            w = frontier.pop()
            for m in mats:
                img = mat_vec(m, w)
                if img not in orbit_rows:
                    orbit_rows.append(img)
                    frontier.append(img)
            if len(orbit_rows) > 4 * len(mats) + 8:
                break
        basis = _saturate(orbit_rows)
        if len(basis) != rank:
            continue
        if basis not in seen:
            seen.add(basis)
            out.append(basis)
    return out


def search_decomposition(mats, n, blocks, bound=2):
    """Some unimodular U passing check_block_decomposition, or None.

    Heuristic: pair up invariant saturated sublattices of the right ranks
    whose bases merge into a unimodular matrix.
    """
    assert len(blocks) == 2
    r1, r2 = blocks
    first = invariant_sublattices(mats, n, r1, bound)
    second = invariant_sublattices(mats, n, r2, bound)
    for b1 in first:
        for b2 in second:
            stacked = b1 + b2
            if len(stacked) == n and det(stacked) in (1, -1):
                u = transpose(stacked)
                if check_block_decomposition(mats, u, blocks):
                    return u
    return None
