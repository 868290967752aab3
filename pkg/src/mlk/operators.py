"""O-operators and their correspondence with solutions of the S-admissible Yang-Baxter equation."""

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
    first_failure,
    freeze,
    zeros,
)
from .mocklie import (
    MockLieAlgebra,
    Representation,
    adjoint_rep,
    check_representation,
    dual_rep,
    semidirect_product,
)
from .nijenhuis import (
    NijenhuisAlgebra,
    NijenhuisRepresentation,
    check_adjoint_admissible,
    check_admissible,
    check_nijenhuis_rep,
)


def r_to_map(r) -> np.ndarray:
    """T_r(u*) = <u*, r1> r2, as the matrix sending dual coordinates to A."""
    r = freeze(r)
    if r.ndim != 2:
        raise DimensionError("r must be a two-tensor")
    return r.T.copy()


def map_to_r(T) -> np.ndarray:
    return freeze(T).T.copy()


@dataclass(frozen=True, eq=False)
class OOperatorData:
    """A map ``T: V -> A`` together with the data it should intertwine.

    ``beta`` and ``S`` are only needed for the double construction.
    """

    algebra: MockLieAlgebra
    T: np.ndarray
    rep: Representation
    N: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray | None = None
    S: np.ndarray | None = None

    def __post_init__(self):
        n, m = self.algebra.dim, self.rep.space_dim
        shapes = {"T": (n, m), "N": (n, n), "alpha": (m, m), "beta": (m, m), "S": (n, n)}
        for name, shape in shapes.items():
            value = getattr(self, name)
            if value is None:
                continue
            value = freeze(value)
            if value.shape != shape:
                raise DimensionError(f"{name} must have shape {shape}, got {value.shape}")
            object.__setattr__(self, name, value)
        if self.rep.algebra_dim != n:
            raise DimensionError("representation is not over this algebra")


def _o_equation(A: MockLieAlgebra, T: np.ndarray, act: np.ndarray) -> CheckReport:
    lhs = einsum("abk,au,bv->uvk", A.bracket, T, T)
    inner = einsum("au,apv->uvp", T, act)
    inner = inner + einsum("uvp->vup", inner)
    rhs = einsum("kp,uvp->uvk", T, inner)
    return compare("o-equation", lhs, rhs, 2)


def check_weak_O_operator(D: OOperatorData) -> CheckReport:
    """[Tu, Tv] = T(rho(Tu)v + rho(Tv)u) and N T = T alpha."""
    rep = check_representation(D.algebra, D.rep)
    if not rep.passed:
        raise PreconditionError("not a representation", rep)
    parts = (
        lambda: _o_equation(D.algebra, D.T, D.rep.action),
        lambda: compare("operator", D.N.dot(D.T), D.T.dot(D.alpha), 0),
    )
    return first_failure("weak-o-operator", (p() for p in parts))


def check_O_operator(D: OOperatorData) -> CheckReport:
    nr = check_nijenhuis_rep(NijenhuisAlgebra(D.algebra, D.N), NijenhuisRepresentation(D.rep, D.alpha))
    if not nr.passed:
        raise PreconditionError("(rep, alpha) is not a Nijenhuis representation", nr)
    rep = check_weak_O_operator(D)
    return CheckReport("o-operator", rep.passed, rep.witnesses, rep.condition, rep.notes)


def check_lq(A: MockLieAlgebra, r) -> CheckReport:
    """The O-operator equation for T_r against the coadjoint action on A*."""
    return _o_equation(A, r_to_map(r), dual_rep(adjoint_rep(A)).action)


def check_lu(N, S, r) -> CheckReport:
    T = r_to_map(r)
    return compare("operator", freeze(N).dot(T), T.dot(freeze(S).T), 0)


def o_operator_double(D: OOperatorData) -> tuple[NijenhuisAlgebra, np.ndarray]:
    """(A + V*, N + beta*) and the operator S + alpha* on it."""
    if D.beta is None or D.S is None:
        raise PreconditionError("double needs beta and S")
    base = semidirect_product(D.algebra, dual_rep(D.rep))
    return NijenhuisAlgebra(base, block_diag(D.N, D.beta.T)), block_diag(D.S, D.alpha.T)


def o_operator_to_r(D: OOperatorData) -> np.ndarray:
    """r = T - tau(T) on A + V*, with T read as an element of A (x) V*."""
    n, m = D.T.shape
    r = zeros(n + m, n + m)
    r[:n, n:] = D.T
    r[n:, :n] = -D.T.T
    return r


def check_semidirect_admissibility(A: MockLieAlgebra, N, S, rep: Representation, alpha, beta) -> CheckReport:
    NA = NijenhuisAlgebra(A, N)
    S, alpha, beta = freeze(S), freeze(alpha), freeze(beta)

    def hjl() -> CheckReport:
        act = rep.action
        actS, actS2 = rep.along(S), rep.along(S.dot(S))
        lhs = einsum("pa,iab,bq->ipq", beta, act, alpha) + actS2
        rhs = einsum("ipa,aq->ipq", actS, alpha) + einsum("pa,iaq->ipq", beta, actS)
        return compare("mixed", einsum("ipq->iqp", lhs), einsum("ipq->iqp", rhs), 2)

    parts = (
        lambda: check_nijenhuis_rep(NA, NijenhuisRepresentation(rep, alpha)),
        lambda: check_adjoint_admissible(NA, S),
        lambda: check_admissible(NA, rep, beta),
        hjl,
    )
    return first_failure("semidirect-admissibility", (p() for p in parts))
