"""Mock-Lie algebras, coalgebras, representations and bilinear forms.

Conventions (0-based internally):

* bracket ``c[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``;
* cobracket ``d[i, j, k]`` is the coefficient of ``e_j (x) e_k`` in ``Delta(e_i)``;
* a linear map is a matrix whose column ``j`` is the image of ``e_j``;
* a representation stores one ``m x m`` matrix per basis element;
* a bilinear form is its Gram matrix ``g[i, j] = w(e_i, e_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import (
    CheckReport,
    DimensionError,
    PreconditionError,
    accumulate,
    compare,
    einsum,
    first_failure,
    freeze,
    rank,
    zeros,
)


def _cube(t, what: str) -> np.ndarray:
    t = freeze(t)
    if t.ndim != 3 or len(set(t.shape)) != 1:
        raise DimensionError(f"{what} must be an n x n x n tensor, got shape {t.shape}")
    return t


def _sparse_cube(dim: int, entries) -> np.ndarray:
    t = zeros(dim, dim, dim)
    for i, j, k, v in entries:
        t[i - 1, j - 1, k - 1] += Fraction(v)
    return t


@dataclass(frozen=True, eq=False)
class MockLieAlgebra:
    bracket: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bracket", _cube(self.bracket, "bracket"))

    @property
    def dim(self) -> int:
        return self.bracket.shape[0]

    @classmethod
    def zero(cls, dim: int) -> "MockLieAlgebra":
        return cls(zeros(dim, dim, dim))

    @classmethod
    def from_entries(cls, dim: int, entries) -> "MockLieAlgebra":
        """Build from 1-based ``(i, j, k, value)`` meaning ``[e_i, e_j] += value e_k``."""
        return cls(_sparse_cube(dim, entries))

    def __call__(self, x, y) -> np.ndarray:
        return einsum("ijk,i,j->k", self.bracket, np.asarray(x, dtype=object), np.asarray(y, dtype=object))

    def __eq__(self, other):
        return isinstance(other, MockLieAlgebra) and np.array_equal(self.bracket, other.bracket)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class MockLieCoalgebra:
    cobracket: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "cobracket", _cube(self.cobracket, "cobracket"))

    @property
    def dim(self) -> int:
        return self.cobracket.shape[0]

    @classmethod
    def zero(cls, dim: int) -> "MockLieCoalgebra":
        return cls(zeros(dim, dim, dim))

    @classmethod
    def from_entries(cls, dim: int, entries) -> "MockLieCoalgebra":
        """Build from 1-based ``(i, j, k, value)`` meaning ``Delta(e_i) += value e_j (x) e_k``."""
        return cls(_sparse_cube(dim, entries))

    def __eq__(self, other):
        return isinstance(other, MockLieCoalgebra) and np.array_equal(self.cobracket, other.cobracket)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Representation:
    action: np.ndarray  # shape (n, m, m); action[i] is rho(e_i)

    def __post_init__(self):
        act = freeze(self.action)
        if act.ndim != 3 or act.shape[1] != act.shape[2]:
            raise DimensionError(f"action must have shape (n, m, m), got {act.shape}")
        object.__setattr__(self, "action", act)

    @property
    def algebra_dim(self) -> int:
        return self.action.shape[0]

    @property
    def space_dim(self) -> int:
        return self.action.shape[1]

    @classmethod
    def zero(cls, algebra_dim: int, space_dim: int) -> "Representation":
        return cls(zeros(algebra_dim, space_dim, space_dim))

    def of(self, x) -> np.ndarray:
        """The matrix rho(x) for a coordinate vector ``x``."""
        return einsum("i,ipq->pq", np.asarray(x, dtype=object), self.action)

    def along(self, m: np.ndarray) -> np.ndarray:
        """Stack of rho(M e_i) for every basis element, i.e. rho composed with ``m``."""
        return einsum("ai,apq->ipq", m, self.action)

    def __eq__(self, other):
        return isinstance(other, Representation) and np.array_equal(self.action, other.action)

    __hash__ = None


# ---------------------------------------------------------------------------
# tensor helpers shared by the other modules


def bracket_of(c: np.ndarray, left=None, right=None, out=None) -> np.ndarray:
    """T[i, j, k] = coefficient of e_k in ``out([left e_i, right e_j])``.

    ``None`` stands for the identity.
    """
    t = c
    if left is not None:
        t = einsum("ajk,ai->ijk", t, left)
    if right is not None:
        t = einsum("ibk,bj->ijk", t, right)
    if out is not None:
        t = einsum("ija,ka->ijk", t, out)
    return t


def nested(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """T[a, b, c, k] = coefficient of e_k in ``outer(e_a, inner(e_b, e_c))``."""
    return einsum("bcm,amk->abck", inner, outer)


def cyclic_sum(t: np.ndarray) -> np.ndarray:
    """t(x, y, z) + t(y, z, x) + t(z, x, y) over the first three axes."""
    return accumulate((1, t), (1, einsum("yzx...->xyz...", t)), (1, einsum("zxy...->xyz...", t)))


def ad_matrices(c: np.ndarray) -> np.ndarray:
    """ad[i] is the matrix of ``[e_i, -]``."""
    return einsum("ijk->ikj", c)


# ---------------------------------------------------------------------------
# checks


def check_commutative(A: MockLieAlgebra) -> CheckReport:
    c = A.bracket
    return compare("commutativity", c, einsum("jik->ijk", c), 3)


def check_jacobi(A: MockLieAlgebra) -> CheckReport:
    c = A.bracket
    lhs = cyclic_sum(nested(c, c))
    return compare("jacobi", lhs, zeros(*lhs.shape), 3)


def check_mock_lie(A: MockLieAlgebra) -> CheckReport:
    return first_failure("mock-lie", (f(A) for f in (check_commutative, check_jacobi)))


def check_cocommutative(C: MockLieCoalgebra) -> CheckReport:
    d = C.cobracket
    return compare("cocommutativity", d, einsum("ikj->ijk", d), 3)


def co_jacobi_sum(d: np.ndarray) -> np.ndarray:
    """The three Sweedler terms of the co-Jacobi identity, indexed [input, p, q, s]."""
    t1 = einsum("iab,bpq->iapq", d, d)  # x(1) (x) x(2)(1) (x) x(2)(2)
    t2 = einsum("iab,apq->ipqb", d, d)  # x(1)(1) (x) x(1)(2) (x) x(2)
    t3 = einsum("iab,bpq->ipaq", d, d)  # x(2)(1) (x) x(1) (x) x(2)(2)
    return t1 + t2 + t3


def check_co_jacobi(C: MockLieCoalgebra) -> CheckReport:
    s = co_jacobi_sum(C.cobracket)
    return compare("co-jacobi", s, zeros(*s.shape), 1)


def check_mock_lie_coalgebra(C: MockLieCoalgebra) -> CheckReport:
    return first_failure("coalgebra", (f(C) for f in (check_cocommutative, check_co_jacobi)))


def dualize_algebra(A: MockLieAlgebra) -> MockLieCoalgebra:
    """The cobracket on A* dual to the bracket: ``d[k, i, j] = c[i, j, k]``."""
    return MockLieCoalgebra(einsum("ijk->kij", A.bracket))


def dualize_coalgebra(C: MockLieCoalgebra) -> MockLieAlgebra:
    """The bracket on A* dual to the cobracket: ``c[j, k, i] = d[i, j, k]``."""
    return MockLieAlgebra(einsum("ijk->jki", C.cobracket))


def _require_dims(A: MockLieAlgebra, R: Representation):
    if A.dim != R.algebra_dim:
        raise DimensionError(f"algebra has dimension {A.dim}, representation expects {R.algebra_dim}")


def check_representation(A: MockLieAlgebra, R: Representation) -> CheckReport:
    """rho([x, y]) = -rho(x) rho(y) - rho(y) rho(x) on basis pairs."""
    _require_dims(A, R)
    act = R.action
    lhs = einsum("ijk,kpq->ijpq", A.bracket, act)
    prod = einsum("ipr,jrq->ijpq", act, act)
    rhs = -(prod + einsum("jipq->ijpq", prod))
    return compare("representation", lhs, rhs, 2)


def adjoint_rep(A: MockLieAlgebra) -> Representation:
    return Representation(ad_matrices(A.bracket))


def dual_rep(R: Representation) -> Representation:
    """rho*(x) is the transpose of rho(x); mock-Lie duals carry no sign."""
    return Representation(einsum("ipq->iqp", R.action))


def semidirect_product(A: MockLieAlgebra, R: Representation, *, validate: bool = True) -> MockLieAlgebra:
    """A + V with ``[x+u, y+v] = [x, y] + rho(x) v + rho(y) u``; A-coordinates first."""
    _require_dims(A, R)
    if validate:
        rep = check_representation(A, R)
        if not rep.passed:
            raise PreconditionError("semidirect product needs a valid representation", rep)
    n, m = A.dim, R.space_dim
    c = zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = A.bracket
    # [e_i, v_q] = sum_p action[i][p, q] v_p
    c[:n, n:, n:] = R.action.transpose(0, 2, 1)
    c[n:, :n, n:] = R.action.transpose(2, 0, 1)
    return MockLieAlgebra(c)


def direct_sum(A: MockLieAlgebra, B: MockLieAlgebra) -> MockLieAlgebra:
    n, m = A.dim, B.dim
    c = zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = A.bracket
    c[n:, n:, n:] = B.bracket
    return MockLieAlgebra(c)


def check_form(
    A: MockLieAlgebra,
    gram: np.ndarray,
    *,
    skew: bool = False,
    symmetric: bool = False,
    invariant: bool = False,
    nondegenerate: bool = False,
) -> CheckReport:
    """Check the requested properties of a bilinear form, in the order listed."""
    gram = freeze(gram)
    if gram.shape != (A.dim, A.dim):
        raise DimensionError(f"form has shape {gram.shape}, algebra has dimension {A.dim}")

    def parts():
        if skew:
            yield compare("skew", gram, -gram.T, 2)
        if symmetric:
            yield compare("symmetric", gram, gram.T, 2)
        if invariant:
            lhs = einsum("xyk,kz->xyz", A.bracket, gram)
            rhs = einsum("xk,yzk->xyz", gram, A.bracket)
            yield compare("invariant", lhs, rhs, 3)
        if nondegenerate:
            r = rank(gram)
            yield compare("nondegenerate", np.array([r], dtype=object), np.array([A.dim], dtype=object), 0)

    return first_failure("form", parts())


def check_rep_morphism(R1: Representation, R2: Representation, phi: np.ndarray) -> CheckReport:
    """phi rho1(e_i) = rho2(e_i) phi for every i."""
    phi = freeze(phi)
    if phi.shape != (R2.space_dim, R1.space_dim) or R1.algebra_dim != R2.algebra_dim:
        raise DimensionError("morphism shape does not match the two representations")
    lhs = einsum("pq,iqr->ipr", phi, R1.action)
    rhs = einsum("ipq,qr->ipr", R2.action, phi)
    return compare("rep-morphism", lhs, rhs, 1)
