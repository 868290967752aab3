"""Nijenhuis operators on mock-Lie algebras, their representations and duals."""

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
    freeze,
    rank,
    solve_linear,
    zeros,
)
from .mocklie import (
    MockLieAlgebra,
    MockLieCoalgebra,
    Representation,
    bracket_of,
    check_mock_lie,
    check_representation,
    cyclic_sum,
    nested,
    semidirect_product,
)


def _square(m, n: int, what: str) -> np.ndarray:
    m = freeze(m)
    if m.shape != (n, n):
        raise DimensionError(f"{what} must be {n} x {n}, got {m.shape}")
    return m


@dataclass(frozen=True, eq=False)
class NijenhuisAlgebra:
    base: MockLieAlgebra
    N: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "N", _square(self.N, self.base.dim, "N"))

    @property
    def dim(self) -> int:
        return self.base.dim


@dataclass(frozen=True, eq=False)
class NijenhuisRepresentation:
    rep: Representation
    alpha: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", _square(self.alpha, self.rep.space_dim, "alpha"))


def check_nijenhuis(NA: NijenhuisAlgebra) -> CheckReport:
    """[Nx, Ny] + N^2[x, y] = N[Nx, y] + N[x, Ny] on basis pairs."""
    c, N = NA.base.bracket, NA.N
    lhs = bracket_of(c, N, N) + bracket_of(c, out=N.dot(N))
    rhs = bracket_of(c, left=N, out=N) + bracket_of(c, right=N, out=N)
    return compare("nijenhuis", lhs, rhs, 2)


def _require(report: CheckReport, message: str) -> None:
    if not report.passed:
        raise PreconditionError(message, report)


def deformed_bracket(NA: NijenhuisAlgebra) -> MockLieAlgebra:
    """[x, y]_N = [Nx, y] + [x, Ny] - N[x, y]."""
    _require(check_nijenhuis(NA), "deformed bracket needs a Nijenhuis operator")
    c, N = NA.base.bracket, NA.N
    return MockLieAlgebra(bracket_of(c, left=N) + bracket_of(c, right=N) - bracket_of(c, out=N))


def check_pencil_compatibility(A: MockLieAlgebra, A_dot: MockLieAlgebra) -> CheckReport:
    """Mixed Jacobi sum of two brackets on the same space vanishes."""
    if A.dim != A_dot.dim:
        raise DimensionError("pencil brackets must live on the same space")
    c, e = A.bracket, A_dot.bracket
    mixed = cyclic_sum(nested(c, e) + nested(e, c))
    return compare("pencil", mixed, zeros(*mixed.shape), 3)


def check_rep_pencil(
    A: MockLieAlgebra, A_dot: MockLieAlgebra, rho: Representation, phi: Representation
) -> CheckReport:
    """rho([x,y]') + phi([x,y]) = -(phi(x)rho(y) + rho(x)phi(y) + phi(y)rho(x) + rho(y)phi(x))."""
    r, f = rho.action, phi.action
    lhs = einsum("ijk,kpq->ijpq", A_dot.bracket, r) + einsum("ijk,kpq->ijpq", A.bracket, f)
    mixed = einsum("ipr,jrq->ijpq", f, r) + einsum("ipr,jrq->ijpq", r, f)
    rhs = -(mixed + einsum("jipq->ijpq", mixed))
    return compare("rep-pencil", lhs, rhs, 2)


def _columns(t: np.ndarray) -> np.ndarray:
    """Reorder a stack of matrices [i, p, q] to [i, q, p] so witnesses are (i, q)."""
    return einsum("ipq->iqp", t)


def check_nijenhuis_rep(NA: NijenhuisAlgebra, NR: NijenhuisRepresentation) -> CheckReport:
    """rho(Nx) alpha + alpha^2 rho(x) = alpha rho(Nx) + alpha rho(x) alpha."""
    R, a = NR.rep, NR.alpha
    if R.algebra_dim != NA.dim:
        raise DimensionError("representation and algebra dimensions differ")
    act, actN = R.action, R.along(NA.N)
    a2 = a.dot(a)
    lhs = einsum("ipr,rq->ipq", actN, a) + einsum("pr,irq->ipq", a2, act)
    rhs = einsum("pr,irq->ipq", a, actN) + einsum("pr,irs,sq->ipq", a, act, a)
    return compare("nijenhuis-rep", _columns(lhs), _columns(rhs), 2)


def deformed_rep(NA: NijenhuisAlgebra, NR: NijenhuisRepresentation) -> Representation:
    """phi(x) = rho(Nx) + rho(x) alpha - alpha rho(x), a representation of the deformed bracket."""
    _require(check_nijenhuis_rep(NA, NR), "deformed representation needs a Nijenhuis representation")
    R, a = NR.rep, NR.alpha
    act, actN = R.action, R.along(NA.N)
    phi = actN + einsum("ipr,rq->ipq", act, a) - einsum("pr,irq->ipq", a, act)
    lhs = einsum("ipr,rq->ipq", actN, a)
    rhs = einsum("pr,irq->ipq", a, phi)
    if not compare("intertwining", lhs, rhs, 1).passed:  # pragma: no cover - algebraic identity
        raise AssertionError("rho(Nx) alpha = alpha phi(x) failed")
    return Representation(phi)


def check_admissible(NA: NijenhuisAlgebra, R: Representation, beta: np.ndarray) -> CheckReport:
    """beta rho(Nx) + rho(x) beta^2 = rho(Nx) beta + beta rho(x) beta."""
    beta = _square(beta, R.space_dim, "beta")
    act, actN = R.action, R.along(NA.N)
    lhs = einsum("pr,irq->ipq", beta, actN) + einsum("ipr,rq->ipq", act, beta.dot(beta))
    rhs = einsum("ipr,rq->ipq", actN, beta) + einsum("pr,irs,sq->ipq", beta, act, beta)
    return compare("admissible", _columns(lhs), _columns(rhs), 2)


def check_adjoint_admissible(NA: NijenhuisAlgebra, S: np.ndarray) -> CheckReport:
    """S[Nx, y] + [x, S^2 y] = [Nx, Sy] + S[x, Sy]."""
    S = _square(S, NA.dim, "S")
    c, N = NA.base.bracket, NA.N
    lhs = bracket_of(c, left=N, out=S) + bracket_of(c, right=S.dot(S))
    rhs = bracket_of(c, left=N, right=S) + bracket_of(c, right=S, out=S)
    return compare("adjoint-admissible", lhs, rhs, 2)


def nijenhuis_semidirect(NA: NijenhuisAlgebra, NR: NijenhuisRepresentation) -> NijenhuisAlgebra:
    """A + V with the semidirect bracket and operator N + alpha."""
    _require(check_mock_lie(NA.base), "base is not a mock-Lie algebra")
    _require(check_nijenhuis(NA), "base operator is not Nijenhuis")
    _require(check_representation(NA.base, NR.rep), "not a representation")
    _require(check_nijenhuis_rep(NA, NR), "not a Nijenhuis representation")
    out = NijenhuisAlgebra(semidirect_product(NA.base, NR.rep, validate=False), block_diag(NA.N, NR.alpha))
    if not check_nijenhuis(out).passed:  # pragma: no cover - algebraic identity
        raise AssertionError("semidirect operator is not Nijenhuis")
    return out


def co_apply(d: np.ndarray, pre=None, left=None, right=None) -> np.ndarray:
    """T[i, p, q] = coefficient of e_p (x) e_q in (left (x) right) Delta(pre e_i)."""
    t = d
    if pre is not None:
        t = einsum("ai,apq->ipq", pre, t)
    if left is not None:
        t = einsum("iaq,pa->ipq", t, left)
    if right is not None:
        t = einsum("ipb,qb->ipq", t, right)
    return t


def check_nijenhuis_coalgebra(C: MockLieCoalgebra, S: np.ndarray) -> CheckReport:
    """(S(x)S)Delta + Delta S^2 = (S(x)id)Delta S + (id(x)S)Delta S."""
    S = _square(S, C.dim, "S")
    d = C.cobracket
    lhs = co_apply(d, left=S, right=S) + co_apply(d, pre=S.dot(S))
    rhs = co_apply(d, pre=S, left=S) + co_apply(d, pre=S, right=S)
    return compare("nijenhuis-coalgebra", lhs, rhs, 1)


def adjoint_wrt_form(N: np.ndarray, gram: np.ndarray) -> np.ndarray:
    """The map N^ with B(Nx, y) = B(x, N^ y), one linear solve per column."""
    N = freeze(N)
    n = N.shape[0]
    gram = _square(gram, n, "form")
    if rank(gram) != n:
        raise PreconditionError("adjoint needs a nondegenerate form")
    # B(e_i, N^ e_j) = (G N^)[i, j] must equal B(N e_i, e_j) = (N^T G)[i, j]
    target = N.T.dot(gram)
    out = zeros(n, n)
    for j in range(n):
        out[:, j] = solve_linear(gram, target[:, j])
    return out
