"""Bialgebras, Nijenhuis bialgebras, matched pairs, doubles and Manin triples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import (
    CheckReport,
    DimensionError,
    PreconditionError,
    block_diag,
    compare,
    einsum,
    eye,
    first_failure,
    freeze,
    zeros,
)
from .mocklie import (
    MockLieAlgebra,
    MockLieCoalgebra,
    Representation,
    ad_matrices,
    adjoint_rep,
    check_form,
    check_mock_lie,
    check_mock_lie_coalgebra,
    check_representation,
    dual_rep,
    dualize_coalgebra,
)
from .nijenhuis import (
    NijenhuisAlgebra,
    NijenhuisRepresentation,
    adjoint_wrt_form,
    check_adjoint_admissible,
    check_nijenhuis,
    check_nijenhuis_coalgebra,
    check_nijenhuis_rep,
    co_apply,
)


@dataclass(frozen=True, eq=False)
class MockLieBialgebra:
    algebra: MockLieAlgebra
    coalgebra: MockLieCoalgebra

    def __post_init__(self):
        if self.algebra.dim != self.coalgebra.dim:
            raise DimensionError("algebra and coalgebra dimensions differ")

    @property
    def dim(self) -> int:
        return self.algebra.dim


@dataclass(frozen=True, eq=False)
class NijenhuisBialgebra:
    bialgebra: MockLieBialgebra
    N: np.ndarray
    S: np.ndarray

    def __post_init__(self):
        n = self.bialgebra.dim
        for name in ("N", "S"):
            m = freeze(getattr(self, name))
            if m.shape != (n, n):
                raise DimensionError(f"{name} must be {n} x {n}, got {m.shape}")
            object.__setattr__(self, name, m)

    @property
    def algebra(self) -> MockLieAlgebra:
        return self.bialgebra.algebra

    @property
    def coalgebra(self) -> MockLieCoalgebra:
        return self.bialgebra.coalgebra

    @property
    def dim(self) -> int:
        return self.bialgebra.dim


@dataclass(frozen=True, eq=False)
class MatchedPairData:
    """Two algebras acting on each other.

    ``rho_A`` is a representation of ``A`` on ``A2``; ``rho_A2`` one of ``A2`` on ``A``.
    """

    A: MockLieAlgebra
    A2: MockLieAlgebra
    rho_A: Representation
    rho_A2: Representation
    N_A: np.ndarray | None = None
    N_A2: np.ndarray | None = None

    def __post_init__(self):
        n, m = self.A.dim, self.A2.dim
        if (self.rho_A.algebra_dim, self.rho_A.space_dim) != (n, m):
            raise DimensionError("rho_A must act by A on A2")
        if (self.rho_A2.algebra_dim, self.rho_A2.space_dim) != (m, n):
            raise DimensionError("rho_A2 must act by A2 on A")
        for name, k in (("N_A", n), ("N_A2", m)):
            op = getattr(self, name)
            if op is not None:
                op = freeze(op)
                if op.shape != (k, k):
                    raise DimensionError(f"{name} must be {k} x {k}")
                object.__setattr__(self, name, op)


@dataclass(frozen=True, eq=False)
class ManinTripleData:
    double: NijenhuisAlgebra
    form: np.ndarray
    half: int  # dimension of each factor

    def __post_init__(self):
        object.__setattr__(self, "form", freeze(self.form))


# ---------------------------------------------------------------------------
# bialgebras


def check_compatibility(B: MockLieBialgebra) -> CheckReport:
    """Delta[x,y] = -[x,y1](x)y2 - y1(x)[x,y2] - [y,x1](x)x2 - x1(x)[y,x2]."""
    c, d = B.algebra.bracket, B.coalgebra.cobracket
    lhs = einsum("xym,mjk->xyjk", c, d)
    ta = einsum("yak,xaj->xyjk", d, c)
    tb = einsum("yjb,xbk->xyjk", d, c)
    one_side = ta + tb
    rhs = -(one_side + einsum("yxjk->xyjk", one_side))
    return compare("compatibility", lhs, rhs, 2)


def check_bialgebra(B: MockLieBialgebra) -> CheckReport:
    parts = (
        lambda: check_mock_lie(B.algebra),
        lambda: check_mock_lie_coalgebra(B.coalgebra),
        lambda: check_compatibility(B),
    )
    return first_failure("bialgebra", (p() for p in parts))


def check_jy(NB: NijenhuisBialgebra) -> CheckReport:
    """(S(x)id) Delta N + (id(x)N^2) Delta = (S(x)N) Delta + (id(x)N) Delta N."""
    d, N, S = NB.coalgebra.cobracket, NB.N, NB.S
    lhs = co_apply(d, pre=N, left=S) + co_apply(d, right=N.dot(N))
    rhs = co_apply(d, left=S, right=N) + co_apply(d, pre=N, right=N)
    return compare("dual-admissible", lhs, rhs, 1)


def check_nijenhuis_bialgebra(NB: NijenhuisBialgebra) -> CheckReport:
    A, C = NB.algebra, NB.coalgebra
    NA = NijenhuisAlgebra(A, NB.N)
    parts = (
        lambda: check_bialgebra(NB.bialgebra),
        lambda: check_nijenhuis(NA),
        lambda: check_nijenhuis_coalgebra(C, NB.S),
        lambda: check_adjoint_admissible(NA, NB.S),
        lambda: check_jy(NB),
    )
    return first_failure("nijenhuis-bialgebra", (p() for p in parts))


# ---------------------------------------------------------------------------
# matched pairs


def _spf(c2: np.ndarray, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """rho(a)[x,y] + [rho(a)x, y] + [x, rho(a)y] + rho(rho'(y)a)x + rho(rho'(x)a)y, indexed [a, x, y, k].

    ``P`` acts by the first algebra on the second (whose bracket is ``c2``),
    ``Q`` acts back.
    """
    t = einsum("xym,akm->axyk", c2, P)
    t = t + einsum("amx,myk->axyk", P, c2)
    t = t + einsum("amy,xmk->axyk", P, c2)
    t = t + einsum("yba,bkx->axyk", Q, P)
    t = t + einsum("xba,bky->axyk", Q, P)
    return t


def check_matched_pair(M: MatchedPairData) -> CheckReport:
    P, Q = M.rho_A.action, M.rho_A2.action

    def parts():
        yield check_mock_lie(M.A)
        yield check_mock_lie(M.A2)
        yield check_representation(M.A, M.rho_A)
        yield check_representation(M.A2, M.rho_A2)
        t = _spf(M.A2.bracket, P, Q)
        yield compare("first-action", t, zeros(*t.shape), 3)
        t = _spf(M.A.bracket, Q, P)
        yield compare("second-action", t, zeros(*t.shape), 3)

    return first_failure("matched-pair", parts())


def _operators(M: MatchedPairData):
    if M.N_A is None or M.N_A2 is None:
        raise PreconditionError("matched pair carries no Nijenhuis operators")
    return M.N_A, M.N_A2


def check_nijenhuis_matched_pair(M: MatchedPairData) -> CheckReport:
    NA, NA2 = _operators(M)
    left, right = NijenhuisAlgebra(M.A, NA), NijenhuisAlgebra(M.A2, NA2)
    parts = (
        lambda: check_matched_pair(M),
        lambda: check_nijenhuis(left),
        lambda: check_nijenhuis(right),
        lambda: check_nijenhuis_rep(left, NijenhuisRepresentation(M.rho_A, NA2)),
        lambda: check_nijenhuis_rep(right, NijenhuisRepresentation(M.rho_A2, NA)),
    )
    return first_failure("nijenhuis-matched-pair", (p() for p in parts))


def double_algebra(M: MatchedPairData) -> NijenhuisAlgebra:
    """A + A2 with [a+x, b+y] = [a,b] + rho'(y)a + rho'(x)b + [x,y]' + rho(a)y + rho(b)x."""
    n, m = M.A.dim, M.A2.dim
    P, Q = M.rho_A.action, M.rho_A2.action
    c = zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = M.A.bracket
    c[n:, n:, n:] = M.A2.bracket
    # [e_a, f_p] = sum_b Q[p][b, a] e_b + sum_q P[a][q, p] f_q
    cross = zeros(n, m, n + m)
    cross[:, :, :n] = einsum("pba->apb", Q)
    cross[:, :, n:] = einsum("aqp->apq", P)
    c[:n, n:, :] = cross
    c[n:, :n, :] = einsum("apk->pak", cross)
    NA = zeros(n, n) if M.N_A is None else M.N_A
    NA2 = zeros(m, m) if M.N_A2 is None else M.N_A2
    return NijenhuisAlgebra(MockLieAlgebra(c), block_diag(NA, NA2))


def coadjoint_matched_pair(NB: NijenhuisBialgebra) -> MatchedPairData:
    """((A, N), (A*, S^T), ad*, Ad*) where A* carries the bracket dual to the cobracket."""
    A = NB.algebra
    dual = dualize_coalgebra(NB.coalgebra)
    return MatchedPairData(
        A=A,
        A2=dual,
        rho_A=dual_rep(adjoint_rep(A)),
        rho_A2=dual_rep(adjoint_rep(dual)),
        N_A=NB.N,
        N_A2=NB.S.T,
    )


def pairing_form(n: int) -> np.ndarray:
    """Gram matrix of B_d(x + a*, y + b*) = <a*, y> + <b*, x>."""
    g = zeros(2 * n, 2 * n)
    g[:n, n:] = eye(n)
    g[n:, :n] = eye(n)
    return g


def manin_triple(NB: NijenhuisBialgebra) -> ManinTripleData:
    double = double_algebra(coadjoint_matched_pair(NB))
    return ManinTripleData(double, pairing_form(NB.dim), NB.dim)


def check_manin_triple(MT: ManinTripleData) -> CheckReport:
    n = MT.half
    c = MT.double.base.bracket

    def parts():
        yield check_mock_lie(MT.double.base)
        yield check_nijenhuis(MT.double)
        # pure inputs stay in their own factor
        leak = np.concatenate([c[:n, :n, n:].reshape(n, n, -1), c[n:, n:, :n].reshape(n, n, -1)], axis=0)
        yield compare("subalgebras", leak, zeros(*leak.shape), 2)
        yield check_form(MT.double.base, MT.form, symmetric=True, invariant=True, nondegenerate=True)

    return first_failure("manin-triple", parts())


def manin_adjoint(NB: NijenhuisBialgebra) -> np.ndarray:
    """Adjoint of N + S* with respect to B_d, computed by linear solving."""
    return adjoint_wrt_form(block_diag(NB.N, NB.S.T), pairing_form(NB.dim))


# ---------------------------------------------------------------------------
# coboundary structures


def uj_tensor(c: np.ndarray, r: np.ndarray) -> np.ndarray:
    """[r12, r13] + [r13, r23] - [r12, r23] with [r12, r23] = sum a_i (x) [b_i, a_j] (x) b_j."""
    t12_13 = einsum("ab,cd,ack->kbd", r, r, c)
    t13_23 = einsum("ab,cd,bdk->ack", r, r, c)
    t12_23 = einsum("ab,cd,bck->akd", r, r, c)
    return t12_13 + t13_23 - t12_23


def _two_tensor(r, n: int) -> np.ndarray:
    r = freeze(r)
    if r.shape != (n, n):
        raise DimensionError(f"r must be {n} x {n}, got {r.shape}")
    return r


def check_coboundary_compatible(A: MockLieAlgebra, r) -> CheckReport:
    """(ad x (x) id - id (x) ad x)(r + tau r) = 0 and ad-invariance of the Yang-Baxter tensor."""
    r = _two_tensor(r, A.dim)
    ad = ad_matrices(A.bracket)
    s = r + r.T

    def parts():
        t = einsum("xpa,aq->xpq", ad, s) - einsum("pb,xqb->xpq", s, ad)
        yield compare("symmetric-part", t, zeros(*t.shape), 1)
        u = uj_tensor(A.bracket, r)
        t = (
            einsum("xpa,aqs->xpqs", ad, u)
            + einsum("xqa,pas->xpqs", ad, u)
            + einsum("xsa,pqa->xpqs", ad, u)
        )
        yield compare("invariance", t, zeros(*t.shape), 1)

    return first_failure("coboundary", parts())


def check_nijenhuis_coboundary_conditions(A: MockLieAlgebra, N, S, r) -> CheckReport:
    r = _two_tensor(r, A.dim)
    NA = NijenhuisAlgebra(A, N)
    N, S = NA.N, freeze(S)
    adm = check_adjoint_admissible(NA, S)
    if not adm.passed:
        raise PreconditionError("S must be adjoint-admissible", adm)
    ad = ad_matrices(A.bracket)
    adS = einsum("ax,apq->xpq", S, ad)  # ad(S e_x)
    adN = einsum("ax,apq->xpq", N, ad)
    S_ad = einsum("pa,xaq->xpq", S, ad)
    N_ad = einsum("pa,xaq->xpq", N, ad)
    u = S.dot(r) - r.dot(N.T)
    v = N.dot(r) - r.dot(S.T)

    def parts():
        M = adS - S_ad
        mg = einsum("pa,xqa->xpq", u, M) + einsum("xpa,aq->xpq", M, v)
        yield compare("coalgebra-operator", mg, zeros(*mg.shape), 1)
        jkw = (
            einsum("xpa,aq->xpq", S_ad + adN, u)
            - einsum("pa,xqa->xpq", u, adN)
            + einsum("pa,xqa->xpq", u, N_ad)
            + einsum("xpa,ab,qb->xpq", ad, r, N.dot(N))
            - einsum("xpa,ab,bq->xpq", ad, S.dot(S), r)
        )
        yield compare("dual-admissible", jkw, zeros(*jkw.shape), 1)

    return first_failure("nijenhuis-coboundary", parts())


def check_S_admissible_mLYBe(A: MockLieAlgebra, N, S, r) -> CheckReport:
    r = _two_tensor(r, A.dim)
    N, S = freeze(N), freeze(S)

    def parts():
        t = uj_tensor(A.bracket, r)
        yield compare("ybe", t, zeros(*t.shape), 3)
        yield compare("left-operator", N.dot(r) - r.dot(S.T), zeros(*r.shape), 2)
        yield compare("right-operator", S.dot(r) - r.dot(N.T), zeros(*r.shape), 2)

    return first_failure("s-admissible-mlybe", parts())
