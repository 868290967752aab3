"""Brute-force reference implementations used as test oracles.

Everything here works on nested Python lists of Fractions with explicit
loops over basis elements, and shares no code with the package.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

Z = Fraction(0)


def L(t):
    """Nested lists of Fractions from any array-like."""
    return np.asarray(t, dtype=object).tolist()


def e(n, i):
    v = [Z] * n
    v[i] = Fraction(1)
    return v


def add(*vs):
    return [sum(xs, Z) for xs in zip(*vs)]


def scale(a, v):
    return [a * x for x in v]


def apply(M, v):
    """M acting on a vector, with column j of M the image of e_j."""
    nz = [j for j in range(len(v)) if v[j] != 0]
    return [sum((M[k][j] * v[j] for j in nz), Z) for k in range(len(M))]


def matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Z) for j in range(len(B[0]))] for i in range(len(A))]


def transpose(M):
    return [list(row) for row in zip(*M)]


def br(c, x, y):
    n = len(c)
    out = [Z] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            for k in range(n):
                out[k] += x[i] * y[j] * c[i][j][k]
    return out


# ---------------------------------------------------------------------------
# algebras


def commutativity_failures(c):
    n = len(c)
    return {(i + 1, j + 1) for i in range(n) for j in range(n) if c[i][j] != c[j][i]}


def jacobi_failures(c):
    n = len(c)
    bad = set()
    for a, b, d in itertools.product(range(n), repeat=3):
        x, y, z = e(n, a), e(n, b), e(n, d)
        s = add(br(c, x, br(c, y, z)), br(c, y, br(c, z, x)), br(c, z, br(c, x, y)))
        if any(s):
            bad.add((a + 1, b + 1, d + 1))
    return bad


def is_mock_lie(c):
    return not commutativity_failures(c) and not jacobi_failures(c)


def nijenhuis_failures(c, N):
    n = len(c)
    bad = set()
    for a, b in itertools.product(range(n), repeat=2):
        x, y = e(n, a), e(n, b)
        Nx, Ny = apply(N, x), apply(N, y)
        lhs = add(br(c, Nx, Ny), apply(N, apply(N, br(c, x, y))))
        rhs = add(apply(N, br(c, Nx, y)), apply(N, br(c, x, Ny)))
        if lhs != rhs:
            bad.add((a + 1, b + 1))
    return bad


def rep_of(act, x):
    """rho(x) as a matrix for a vector x of the algebra."""
    m = len(act[0])
    out = [[Z] * m for _ in range(m)]
    for i, xi in enumerate(x):
        if xi:
            for p in range(m):
                for q in range(m):
                    out[p][q] += xi * act[i][p][q]
    return out


def representation_ok(c, act):
    n = len(c)
    for a, b in itertools.product(range(n), repeat=2):
        x, y = e(n, a), e(n, b)
        lhs = rep_of(act, br(c, x, y))
        px, py = rep_of(act, x), rep_of(act, y)
        s1, s2 = matmul(px, py), matmul(py, px)
        rhs = [[-(s1[p][q] + s2[p][q]) for q in range(len(px))] for p in range(len(px))]
        if lhs != rhs:
            return False
    return True


def adjoint(c):
    n = len(c)
    return [[[c[i][q][p] for q in range(n)] for p in range(n)] for i in range(n)]


def nijenhuis_rep_ok(c, N, act, alpha):
    """rho(Nx) alpha + alpha^2 rho(x) = alpha rho(Nx) + alpha rho(x) alpha."""
    n = len(c)
    for a in range(n):
        x = e(n, a)
        rx, rNx = rep_of(act, x), rep_of(act, apply(N, x))
        lhs = add_m(matmul(rNx, alpha), matmul(matmul(alpha, alpha), rx))
        rhs = add_m(matmul(alpha, rNx), matmul(matmul(alpha, rx), alpha))
        if lhs != rhs:
            return False
    return True


def add_m(A, B, sign=1):
    return [[A[i][j] + sign * B[i][j] for j in range(len(A[0]))] for i in range(len(A))]


def semidirect(c, act):
    """Bracket on A + V written out element by element."""
    n, m = len(c), len(act[0])
    t = [[[Z] * (n + m) for _ in range(n + m)] for _ in range(n + m)]
    for i, j, k in itertools.product(range(n), repeat=3):
        t[i][j][k] = c[i][j][k]
    for i in range(n):
        for q in range(m):
            for p in range(m):
                t[i][n + q][n + p] = act[i][p][q]
                t[n + q][i][n + p] = act[i][p][q]
    return t


# ---------------------------------------------------------------------------
# coalgebras, written with Sweedler components as lists of (coef, left, right)


def sweedler(d, i):
    n = len(d)
    return [(d[i][j][k], j, k) for j in range(n) for k in range(n) if d[i][j][k] != 0]


def coalgebra_ok(d):
    n = len(d)
    for i, j, k in itertools.product(range(n), repeat=3):
        if d[i][j][k] != d[i][k][j]:
            return False
    for i in range(n):
        acc = {}
        for a, j, k in sweedler(d, i):
            # x1 (x) D(x2) + D(x1) (x) x2 + mixed term
            for b, p, q in sweedler(d, k):
                key = (j, p, q)
                acc[key] = acc.get(key, Z) + a * b
            for b, p, q in sweedler(d, j):
                key = (p, q, k)
                acc[key] = acc.get(key, Z) + a * b
            for b, p, q in sweedler(d, k):
                key = (p, j, q)
                acc[key] = acc.get(key, Z) + a * b
        if any(v != 0 for v in acc.values()):
            return False
    return True


def delta_of(d, v):
    """Delta(v) as an n x n grid."""
    n = len(d)
    out = [[Z] * n for _ in range(n)]
    for i, vi in enumerate(v):
        if vi:
            for j in range(n):
                for k in range(n):
                    out[j][k] += vi * d[i][j][k]
    return out


def left_right(M1, M2, grid):
    """(M1 (x) M2) applied to a two-tensor grid."""
    return matmul(matmul(M1, grid), transpose(M2))


def nijenhuis_coalgebra_ok(d, S):
    n = len(d)
    I = [e(n, i) for i in range(n)]
    for i in range(n):
        x = e(n, i)
        Sx, SSx = apply(S, x), apply(S, apply(S, x))
        lhs = add_m(left_right(S, S, delta_of(d, x)), delta_of(d, SSx))
        rhs = add_m(left_right(S, I, delta_of(d, Sx)), left_right(I, S, delta_of(d, Sx)))
        if lhs != rhs:
            return False
    return True


def compatibility_ok(c, d):
    """Delta[x,y] = -[x,y1](x)y2 - y1(x)[x,y2] - [y,x1](x)x2 - x1(x)[y,x2]."""
    n = len(c)
    for a, b in itertools.product(range(n), repeat=2):
        x, y = e(n, a), e(n, b)
        lhs = delta_of(d, br(c, x, y))
        rhs = [[Z] * n for _ in range(n)]
        for u, v in ((x, y), (y, x)):
            for coef, j, k in sweedler(d, v.index(1)):
                left = br(c, u, e(n, j))
                right = br(c, u, e(n, k))
                for p in range(n):
                    rhs[p][k] -= coef * left[p]
                    rhs[j][p] -= coef * right[p]
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# r-matrices and forms


def terms(r):
    n = len(r)
    return [(r[i][j], i, j) for i in range(n) for j in range(n) if r[i][j] != 0]


def cybe_tensor(c, r):
    """[r12,r13] + [r13,r23] - [r12,r23] as a dict over index triples."""
    n = len(c)
    out = {}

    def put(key, v):
        out[key] = out.get(key, Z) + v

    for a, i, j in terms(r):
        for b, k, l in terms(r):
            # [r12, r13] = [a_i, a_k] (x) b_j (x) b_l
            for s, v in enumerate(br(c, e(n, i), e(n, k))):
                put((s, j, l), a * b * v)
            # [r13, r23] = a_i (x) a_k (x) [b_j, b_l]
            for s, v in enumerate(br(c, e(n, j), e(n, l))):
                put((i, k, s), a * b * v)
            # [r12, r23] = a_i (x) [b_j, a_k] (x) b_l
            for s, v in enumerate(br(c, e(n, j), e(n, k))):
                put((i, s, l), -a * b * v)
    return {k: v for k, v in out.items() if v != 0}


def delta_r(c, r):
    """Delta_r(x) = [x, r1] (x) r2 - r1 (x) [x, r2] as a cobracket tensor."""
    n = len(c)
    d = [[[Z] * n for _ in range(n)] for _ in range(n)]
    for x in range(n):
        for a, i, j in terms(r):
            for s, v in enumerate(br(c, e(n, x), e(n, i))):
                d[x][s][j] += a * v
            for s, v in enumerate(br(c, e(n, x), e(n, j))):
                d[x][i][s] -= a * v
    return d


def symplectic_ok(c, w):
    n = len(c)
    if any(w[i][j] != -w[j][i] for i in range(n) for j in range(n)):
        return False

    def om(u, v):
        return sum((u[i] * w[i][j] * v[j] for i in range(n) for j in range(n)), Z)

    for a, b, d in itertools.product(range(n), repeat=3):
        x, y, z = e(n, a), e(n, b), e(n, d)
        if om(br(c, x, y), z) + om(br(c, y, z), x) + om(br(c, z, x), y) != 0:
            return False
    return True


def ccybe_ok(d, w):
    n = len(d)

    def om(i, j):
        return w[i][j]

    for x, y, z in itertools.product(range(n), repeat=3):
        s = Z
        for a, p, q in sweedler(d, x):
            s += a * om(p, y) * om(q, z)
        for a, p, q in sweedler(d, z):
            s += a * om(x, p) * om(y, q)
        for a, p, q in sweedler(d, y):
            s -= a * om(x, p) * om(q, z)
        if s != 0:
            return False
    return True


def s_admissible_ok(c, N, S, r):
    if cybe_tensor(c, r):
        return False
    Nt, St = transpose(N), transpose(S)
    left = add_m(matmul(N, r), matmul(r, St), -1)
    right = add_m(matmul(S, r), matmul(r, Nt), -1)
    return not any(any(row) for row in left) and not any(any(row) for row in right)


def o_operator_ok(c, T, act):
    """[Tu, Tv] = T(rho(Tu)v + rho(Tv)u) for basis u, v of V."""
    m = len(T[0])
    for p, q in itertools.product(range(m), repeat=2):
        u, v = e(m, p), e(m, q)
        Tu, Tv = apply(T, u), apply(T, v)
        lhs = br(c, Tu, Tv)
        rhs = apply(T, add(apply(rep_of(act, Tu), v), apply(rep_of(act, Tv), u)))
        if lhs != rhs:
            return False
    return True


def coadjoint(c):
    """ad*(e_i) = transpose of ad(e_i)."""
    return [transpose(m) for m in adjoint(c)]


def double(c1, c2, P, Q, N1, N2):
    """Bracket and operator on A + A' for a matched pair, element by element.

    P[a] is the matrix of rho(e_a) on A', Q[p] that of rho'(f_p) on A.
    """
    n, m = len(c1), len(c2)
    size = n + m
    t = [[[Z] * size for _ in range(size)] for _ in range(size)]

    def vec(a, b):
        return list(a) + list(b)

    basis = [(e(n, i), [Z] * m) for i in range(n)] + [([Z] * n, e(m, p)) for p in range(m)]
    for I, J in itertools.product(range(size), repeat=2):
        (a, x), (b, y) = basis[I], basis[J]
        A_part = add(br(c1, a, b), apply(rep_of(Q, y), a), apply(rep_of(Q, x), b))
        B_part = add(br(c2, x, y), apply(rep_of(P, a), y), apply(rep_of(P, b), x))
        t[I][J] = vec(A_part, B_part)
    Nd = [[Z] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            Nd[i][j] = N1[i][j]
    for i in range(m):
        for j in range(m):
            Nd[n + i][n + j] = N2[i][j]
    return t, Nd


def rank(M):
    """Rank via sympy, independent of the package's elimination."""
    import sympy

    if not M or not M[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M]).rank()


def adjoint_admissible_ok(c, N, S):
    """S[Nx, y] + [x, S^2 y] = [Nx, Sy] + S[x, Sy]."""
    n = len(c)
    for a, b in itertools.product(range(n), repeat=2):
        x, y = e(n, a), e(n, b)
        Nx, Sy = apply(N, x), apply(S, y)
        lhs = add(apply(S, br(c, Nx, y)), br(c, x, apply(S, Sy)))
        rhs = add(br(c, Nx, Sy), apply(S, br(c, x, Sy)))
        if lhs != rhs:
            return False
    return True


def jy_ok(d, N, S):
    """(S(x)id) Delta N + (id(x)N^2) Delta = (S(x)N) Delta + (id(x)N) Delta N."""
    n = len(d)
    I = [e(n, i) for i in range(n)]
    I = transpose(I)
    N2 = matmul(N, N)
    for i in range(n):
        x = e(n, i)
        Nx = apply(N, x)
        lhs = add_m(left_right(S, I, delta_of(d, Nx)), left_right(I, N2, delta_of(d, x)))
        rhs = add_m(left_right(S, N, delta_of(d, x)), left_right(I, N, delta_of(d, Nx)))
        if lhs != rhs:
            return False
    return True


def nijenhuis_bialgebra_ok(c, d, N, S):
    return (
        is_mock_lie(c)
        and coalgebra_ok(d)
        and compatibility_ok(c, d)
        and not nijenhuis_failures(c, N)
        and nijenhuis_coalgebra_ok(d, S)
        and adjoint_admissible_ok(c, N, S)
        and jy_ok(d, N, S)
    )


# ---------------------------------------------------------------------------
# deformations and extensions, by evaluation and interpolation in t


def jacobi_residual(c):
    n = len(c)
    out = []
    for a, b, d in itertools.product(range(n), repeat=3):
        x, y, z = e(n, a), e(n, b), e(n, d)
        out.extend(add(br(c, x, br(c, y, z)), br(c, y, br(c, z, x)), br(c, z, br(c, x, y))))
    return out


def nijenhuis_residual(c, N):
    n = len(c)
    out = []
    for a, b in itertools.product(range(n), repeat=2):
        x, y = e(n, a), e(n, b)
        Nx, Ny = apply(N, x), apply(N, y)
        lhs = add(br(c, Nx, Ny), apply(N, apply(N, br(c, x, y))))
        rhs = add(apply(N, br(c, Nx, y)), apply(N, br(c, x, Ny)))
        out.extend(add(lhs, scale(-1, rhs)))
    return out


def _poly_at(terms, t):
    """sum_i t^i terms[i] for nested lists of equal shape."""
    arr = sum(np.asarray(term, dtype=object) * Fraction(t) ** i for i, term in enumerate(terms))
    return arr.tolist()


def _coefficients(f, degree):
    """Coefficients of a vector-valued polynomial of known degree, by Lagrange interpolation."""
    pts = list(range(degree + 1))
    vals = [f(t) for t in pts]
    size = len(vals[0])
    # solve the Vandermonde system column by column with Fractions
    V = [[Fraction(t) ** k for k in range(degree + 1)] for t in pts]
    inv = _inverse(V)
    return [[sum((inv[k][j] * vals[j][i] for j in range(len(pts))), Z) for i in range(size)] for k in range(degree + 1)]


def _inverse(M):
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def deformation_ok(mus, Ns):
    """Coefficients of t^0..t^k of both deformation equations vanish."""
    k = len(mus) - 1
    jac = _coefficients(lambda t: jacobi_residual(_poly_at(mus, t)), 2 * k)
    nij = _coefficients(lambda t: nijenhuis_residual(_poly_at(mus, t), _poly_at(Ns, t)), 3 * k)
    return not any(any(v) for v in jac[: k + 1]) and not any(any(v) for v in nij[: k + 1])


def cocycle_ok(c, N, mu1, N1):
    """(mu1, N1) is a 2-cocycle iff mu + t mu1, N + t N1 is a deformation to first order."""
    n = len(c)
    sym = all(mu1[i][j][k] == mu1[j][i][k] for i in range(n) for j in range(n) for k in range(n))
    return sym and deformation_ok([c, mu1], [N, N1])


def extension_total(c, N, act, NV, psi, chi):
    """Bracket and operator on A + V assembled entry by entry."""
    n, m = len(c), len(NV)
    t = semidirect(c, act)
    for x, y, p in itertools.product(range(n), range(n), range(m)):
        t[x][y][n + p] = psi[x][y][p]
    size = n + m
    Nh = [[Z] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            Nh[i][j] = N[i][j]
    for p in range(m):
        for j in range(n):
            Nh[n + p][j] = chi[p][j]
        for q in range(m):
            Nh[n + p][n + q] = NV[p][q]
    return t, Nh


def extension_ok(c, N, act, NV, psi, chi):
    t, Nh = extension_total(c, N, act, NV, psi, chi)
    return is_mock_lie(t) and not nijenhuis_failures(t, Nh)


def section_cocycle(t, Nh, c, N, s):
    """psi(x,y) = [sx, sy] - s[x,y], chi(x) = Nh(sx) - s(Nx), projected to V."""
    n = len(c)
    size = len(t)
    cols = [[s[r][x] for r in range(size)] for x in range(n)]
    psi = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            v = add(br(t, cols[x], cols[y]), scale(-1, apply(s, br(c, e(n, x), e(n, y)))))
            psi[x][y] = v[n:]
    chi = []
    for x in range(n):
        v = add(apply(Nh, cols[x]), scale(-1, apply(s, apply(N, e(n, x)))))
        chi.append(v[n:])
    return psi, transpose(chi)
