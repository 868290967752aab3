"""Truncated formal deformations and abelian extensions of Nijenhuis mock-Lie algebras.

Cohomology classes are compared by solvability of a linear system, never
by computing a full cohomology group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exact import (
    CheckReport,
    DimensionError,
    PreconditionError,
    accumulate,
    compare,
    einsum,
    eye,
    first_failure,
    freeze,
    nullspace,
    solve_linear,
    zeros,
)
from .mocklie import MockLieAlgebra, Representation, bracket_of, check_mock_lie, cyclic_sum, nested
from .nijenhuis import NijenhuisAlgebra, check_nijenhuis


# ---------------------------------------------------------------------------
# deformations


@dataclass(frozen=True, eq=False)
class DeformationCochain:
    mu1: np.ndarray
    N1: np.ndarray

    def __post_init__(self):
        mu1, N1 = freeze(self.mu1), freeze(self.N1)
        n = N1.shape[0]
        if mu1.shape != (n, n, n) or N1.shape != (n, n):
            raise DimensionError("cochain shapes do not match")
        object.__setattr__(self, "mu1", mu1)
        object.__setattr__(self, "N1", N1)

    @classmethod
    def zero(cls, n: int) -> "DeformationCochain":
        return cls(zeros(n, n, n), zeros(n, n))

    def __sub__(self, other: "DeformationCochain") -> "DeformationCochain":
        return DeformationCochain(self.mu1 - other.mu1, self.N1 - other.N1)

    def __add__(self, other: "DeformationCochain") -> "DeformationCochain":
        return DeformationCochain(self.mu1 + other.mu1, self.N1 + other.N1)

    def __eq__(self, other):
        return (
            isinstance(other, DeformationCochain)
            and np.array_equal(self.mu1, other.mu1)
            and np.array_equal(self.N1, other.N1)
        )

    __hash__ = None

    def flat(self) -> np.ndarray:
        return np.concatenate([self.mu1.reshape(-1), self.N1.reshape(-1)])


@dataclass(frozen=True, eq=False)
class TruncatedDeformation:
    """mu_0 + t mu_1 + ... + t^k mu_k together with N_0 + ... + t^k N_k."""

    mus: tuple
    Ns: tuple

    def __post_init__(self):
        if len(self.mus) != len(self.Ns) or not self.mus:
            raise DimensionError("need the same positive number of brackets and operators")
        object.__setattr__(self, "mus", tuple(freeze(m) for m in self.mus))
        object.__setattr__(self, "Ns", tuple(freeze(m) for m in self.Ns))

    @property
    def order(self) -> int:
        return len(self.mus) - 1

    @classmethod
    def from_base(cls, base: NijenhuisAlgebra, *terms: DeformationCochain) -> "TruncatedDeformation":
        return cls(
            (base.base.bracket,) + tuple(t.mu1 for t in terms),
            (base.N,) + tuple(t.N1 for t in terms),
        )


def _jacobi_at(mus, n: int) -> np.ndarray:
    total = 0
    for i in range(n + 1):
        t = nested(mus[i], mus[n - i])  # mu_i(x, mu_j(y, z))
        total = total + cyclic_sum(t)
    return total


def _nijenhuis_at(mus, Ns, n: int):
    lhs = 0
    rhs = 0
    for i in range(n + 1):
        for j in range(n + 1 - i):
            k = n - i - j
            lhs = lhs + bracket_of(mus[i], Ns[j], Ns[k])
            rhs = (
                rhs
                + bracket_of(mus[j], left=Ns[k], out=Ns[i])
                + bracket_of(mus[j], right=Ns[k], out=Ns[i])
                - bracket_of(mus[j], out=Ns[i].dot(Ns[k]))
            )
    return lhs, rhs


def check_order_n_deformation(D: TruncatedDeformation) -> CheckReport:
    """Coefficient of t^n in both deformation equations vanishes for n = 0..k."""

    def parts():
        for n in range(D.order + 1):
            jac = _jacobi_at(D.mus, n)
            yield compare(f"order-{n}-jacobi", jac, zeros(*jac.shape), 3)
            lhs, rhs = _nijenhuis_at(D.mus, D.Ns, n)
            yield compare(f"order-{n}-nijenhuis", lhs, rhs, 2)

    return first_failure("deformation", parts())


def infinitesimal(D: TruncatedDeformation) -> tuple[int, DeformationCochain] | None:
    """The first nonzero term after the base, with its order."""
    for n in range(1, D.order + 1):
        c = DeformationCochain(D.mus[n], D.Ns[n])
        if any(x != 0 for x in c.flat()):
            return n, c
    return None


def _cocycle_residuals(base: NijenhuisAlgebra, c: DeformationCochain):
    mu, N = base.base.bracket, base.N
    mu1, N1 = c.mu1, c.N1
    t = nested(mu, mu1) + nested(mu1, mu)
    jac = t + einsum("zxyk->xyzk", t) + einsum("yzxk->xyzk", t)
    nij = (
        bracket_of(mu1, N, N)
        + bracket_of(mu, N1, N)
        + bracket_of(mu, N, N1)
        - bracket_of(mu, left=N, out=N1)
        - bracket_of(mu, left=N1, out=N)
        - bracket_of(mu1, left=N, out=N)
        - bracket_of(mu, right=N, out=N1)
        - bracket_of(mu1, right=N, out=N)
        - bracket_of(mu, right=N1, out=N)
        + bracket_of(mu, out=N1.dot(N))
        + bracket_of(mu, out=N.dot(N1))
        + bracket_of(mu1, out=N.dot(N))
    )
    return jac, nij


def check_2cocycle(base: NijenhuisAlgebra, c: DeformationCochain) -> CheckReport:
    """Six-term mixed Jacobi and twelve-term mixed Nijenhuis conditions; mu1 must be symmetric."""
    if c.mu1.shape[0] != base.dim:
        raise DimensionError("cochain and base dimensions differ")

    def parts():
        yield compare("symmetry", c.mu1, einsum("jik->ijk", c.mu1), 3)
        jac, nij = _cocycle_residuals(base, c)
        yield compare("jacobi", jac, zeros(*jac.shape), 3)
        yield compare("nijenhuis", nij, zeros(*nij.shape), 2)

    return first_failure("2-cocycle", parts())


def cochain_coboundary(base: NijenhuisAlgebra, psi1) -> DeformationCochain:
    """(mu(x, psi y) + mu(psi x, y) - psi mu(x, y), N psi - psi N)."""
    psi1 = freeze(psi1)
    mu, N = base.base.bracket, base.N
    mu1 = bracket_of(mu, right=psi1) + bracket_of(mu, left=psi1) - bracket_of(mu, out=psi1)
    return DeformationCochain(mu1, N.dot(psi1) - psi1.dot(N))


def _unit(n: int, a: int, b: int) -> np.ndarray:
    m = zeros(n, n)
    m[a, b] = 1
    return m


def coboundary_matrix(base: NijenhuisAlgebra) -> np.ndarray:
    """Matrix of psi -> cochain_coboundary(psi), psi flattened row-major."""
    n = base.dim
    cols = [cochain_coboundary(base, _unit(n, a, b)).flat() for a in range(n) for b in range(n)]
    return np.stack(cols, axis=1)


def deformations_equivalent_order1(
    base: NijenhuisAlgebra, c1: DeformationCochain, c2: DeformationCochain
) -> np.ndarray | None:
    """A map psi with c1 - c2 = cochain_coboundary(psi), or None when none exists."""
    for label, c in (("first", c1), ("second", c2)):
        rep = check_2cocycle(base, c)
        if not rep.passed:
            raise PreconditionError(f"{label} cochain is not a 2-cocycle", rep)
    sol = solve_linear(coboundary_matrix(base), (c1 - c2).flat())
    return None if sol is None else sol.reshape(base.dim, base.dim)


# ---------------------------------------------------------------------------
# abelian extensions


@dataclass(frozen=True, eq=False)
class ExtensionCocycle:
    psi: np.ndarray  # (n, n, m): psi(e_x, e_y) in V
    chi: np.ndarray  # (m, n): chi(e_x) in V

    def __post_init__(self):
        psi, chi = freeze(self.psi), freeze(self.chi)
        if psi.ndim != 3 or chi.ndim != 2 or psi.shape[0] != chi.shape[1] or psi.shape[2] != chi.shape[0]:
            raise DimensionError("psi must be (n, n, m) and chi (m, n)")
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "chi", chi)

    @classmethod
    def zero(cls, n: int, m: int) -> "ExtensionCocycle":
        return cls(zeros(n, n, m), zeros(m, n))

    def __sub__(self, other):
        return ExtensionCocycle(self.psi - other.psi, self.chi - other.chi)

    def __add__(self, other):
        return ExtensionCocycle(self.psi + other.psi, self.chi + other.chi)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionCocycle)
            and np.array_equal(self.psi, other.psi)
            and np.array_equal(self.chi, other.chi)
        )

    __hash__ = None

    def flat(self) -> np.ndarray:
        return np.concatenate([self.psi.reshape(-1), self.chi.reshape(-1)])


@dataclass(frozen=True, eq=False)
class ExtensionData:
    """An abelian extension with V embedded as the last ``m`` coordinates.

    ``section`` is an (n+m) x n matrix whose top block is the identity.
    """

    base: NijenhuisAlgebra
    total: NijenhuisAlgebra
    NV: np.ndarray
    section: np.ndarray = field(default=None)

    def __post_init__(self):
        n, big = self.base.dim, self.total.dim
        m = big - n
        if m < 0:
            raise DimensionError("total space is smaller than the base")
        NV = freeze(self.NV)
        if NV.shape != (m, m):
            raise DimensionError(f"NV must be {m} x {m}")
        object.__setattr__(self, "NV", NV)
        s = canonical_section(n, m) if self.section is None else freeze(self.section)
        if s.shape != (big, n):
            raise DimensionError(f"section must be {big} x {n}")
        object.__setattr__(self, "section", s)
        _validate_extension(self)

    @property
    def V_dim(self) -> int:
        return self.total.dim - self.base.dim

    def with_section(self, s) -> "ExtensionData":
        return ExtensionData(self.base, self.total, self.NV, s)


def canonical_section(n: int, m: int) -> np.ndarray:
    s = zeros(n + m, n)
    s[:n, :] = eye(n)
    return s


def _validate_extension(E: ExtensionData) -> None:
    n = E.base.dim
    c, Nh = E.total.base.bracket, E.total.N
    checks = [
        ("V is abelian", c[n:, n:, :]),
        ("V is an ideal", c[:n, n:, :n]),
        ("projection preserves the bracket", c[:n, :n, :n] - E.base.base.bracket),
        ("operator preserves V", Nh[:n, n:]),
        ("operator restricts to NV on V", Nh[n:, n:] - E.NV),
        ("projection intertwines the operators", Nh[:n, :n] - E.base.N),
        ("section splits the projection", E.section[:n, :] - eye(n)),
    ]
    for label, residue in checks:
        if any(x != 0 for x in np.asarray(residue).flat):
            raise PreconditionError(f"not an abelian extension: {label}")


def extension_induced_rep(E: ExtensionData) -> tuple[Representation, np.ndarray]:
    """rho(x)u = [s(x), u] on V, with the operator NV."""
    n = E.base.dim
    c = E.total.base.bracket
    act = einsum("ai,aqp->ipq", E.section, c[:, n:, n:])
    return Representation(act), E.NV


def extension_cocycle(E: ExtensionData) -> ExtensionCocycle:
    """psi(x, y) = [sx, sy] - s[x, y] and chi(x) = N^(sx) - s(Nx), both in V."""
    n = E.base.dim
    s = E.section
    c, Nh = E.total.base.bracket, E.total.N
    psi = einsum("abk,ax,by->xyk", c, s, s) - einsum("xyj,kj->xyk", E.base.base.bracket, s)
    chi = Nh.dot(s) - s.dot(E.base.N)
    if any(x != 0 for x in psi[:, :, :n].flat) or any(x != 0 for x in chi[:n, :].flat):
        raise PreconditionError("cocycle escapes V")
    return ExtensionCocycle(psi[:, :, n:], chi[n:, :])


def extension_coboundary(base: NijenhuisAlgebra, rep: Representation, NV, gamma) -> ExtensionCocycle:
    """(delta gamma, -phi gamma) with delta gamma(x,y) = rho(x)gamma y + rho(y)gamma x - gamma[x,y]
    and phi gamma = gamma N - NV gamma."""
    gamma, NV = freeze(gamma), freeze(NV)
    act = rep.action
    t = einsum("xpq,qy->xyp", act, gamma)
    delta = t + einsum("yxp->xyp", t) - einsum("xyj,pj->xyp", base.base.bracket, gamma)
    phi = gamma.dot(base.N) - NV.dot(gamma)
    return ExtensionCocycle(delta, -phi)


def extension_coboundary_matrix(base: NijenhuisAlgebra, rep: Representation, NV) -> np.ndarray:
    """Matrix of gamma -> extension_coboundary(gamma), gamma (m x n) flattened row-major."""
    n, m = base.dim, rep.space_dim
    cols = []
    for p in range(m):
        for x in range(n):
            g = zeros(m, n)
            g[p, x] = 1
            cols.append(extension_coboundary(base, rep, NV, g).flat())
    return np.stack(cols, axis=1)


def extensions_same_class(
    base: NijenhuisAlgebra, rep: Representation, NV, c1: ExtensionCocycle, c2: ExtensionCocycle
) -> np.ndarray | None:
    """A map gamma: A -> V with c1 - c2 = extension_coboundary(gamma), or None."""
    n, m = base.dim, rep.space_dim
    sol = solve_linear(extension_coboundary_matrix(base, rep, NV), (c1 - c2).flat())
    return None if sol is None else sol.reshape(m, n)


def canonical_gamma(base: NijenhuisAlgebra, rep: Representation, NV, gamma) -> np.ndarray:
    """The representative of ``gamma + ker`` that extensions_same_class would return.

    Witnesses are only unique up to the kernel of the coboundary map; two maps
    with the same coboundary share one canonical representative.
    """
    gamma = freeze(gamma)
    K = extension_coboundary_matrix(base, rep, NV)
    return solve_linear(K, K.dot(gamma.reshape(-1))).reshape(gamma.shape)


def _total(base: NijenhuisAlgebra, rep: Representation, NV, c: ExtensionCocycle) -> NijenhuisAlgebra:
    n, m = base.dim, rep.space_dim
    if rep.algebra_dim != n or c.psi.shape != (n, n, m):
        raise DimensionError("cocycle, representation and base do not fit together")
    b = zeros(n + m, n + m, n + m)
    b[:n, :n, :n] = base.base.bracket
    b[:n, :n, n:] = c.psi
    b[:n, n:, n:] = rep.action.transpose(0, 2, 1)
    b[n:, :n, n:] = rep.action.transpose(2, 0, 1)
    Nh = zeros(n + m, n + m)
    Nh[:n, :n] = base.N
    Nh[n:, :n] = c.chi
    Nh[n:, n:] = freeze(NV)
    return NijenhuisAlgebra(MockLieAlgebra(b), Nh)


def check_extension_cocycle(base: NijenhuisAlgebra, rep: Representation, NV, c: ExtensionCocycle) -> CheckReport:
    """The pair (psi, chi) defines an extension: the assembled structure is Nijenhuis mock-Lie."""
    total = _total(base, rep, NV, c)
    parts = (lambda: check_mock_lie(total.base), lambda: check_nijenhuis(total))
    return first_failure("extension-cocycle", (p() for p in parts))


def build_extension_from_cocycle(
    base: NijenhuisAlgebra, rep: Representation, NV, c: ExtensionCocycle
) -> ExtensionData:
    """A + V with [x+u, y+v] = [x,y] + psi(x,y) + rho(x)v + rho(y)u and N^(x+u) = Nx + chi x + NV u."""
    rep_check = check_extension_cocycle(base, rep, NV, c)
    if not rep_check.passed:
        raise PreconditionError(f"cocycle does not define an extension ({rep_check.condition})", rep_check)
    return ExtensionData(base, _total(base, rep, NV, c), NV)


def _linear_kernel(fn, shapes: Sequence[tuple[int, ...]]) -> list:
    """Basis of the kernel of a linear map given as a function on a tuple of arrays."""
    sizes = [int(np.prod(s)) for s in shapes]
    total = sum(sizes)

    def unpack(v):
        out, pos = [], 0
        for s, k in zip(shapes, sizes):
            out.append(np.asarray(v[pos : pos + k], dtype=object).reshape(s))
            pos += k
        return out

    cols = []
    for i in range(total):
        v = zeros(total)
        v[i] = 1
        cols.append(fn(*unpack(v)))
    return [unpack(b) for b in nullspace(np.stack(cols, axis=1))]


def extension_cocycle_space(base: NijenhuisAlgebra, rep: Representation, NV) -> list[ExtensionCocycle]:
    """A basis of the pairs (psi, chi) with symmetric psi that define extensions.

    The extension conditions are linear in (psi, chi) because V is abelian.
    """
    n, m = base.dim, rep.space_dim
    zero = ExtensionCocycle.zero(n, m)

    def residual(c: ExtensionCocycle) -> np.ndarray:
        t = _total(base, rep, NV, c)
        cc = t.base.bracket
        jac = cyclic_sum(nested(cc, cc))
        N = t.N
        nij = accumulate(
            (1, bracket_of(cc, N, N)),
            (1, bracket_of(cc, out=N.dot(N))),
            (-1, bracket_of(cc, left=N, out=N)),
            (-1, bracket_of(cc, right=N, out=N)),
        )
        sym = c.psi - einsum("yxk->xyk", c.psi)
        return np.concatenate([jac.reshape(-1), nij.reshape(-1), sym.reshape(-1)])

    offset = residual(zero)

    def fn(psi, chi):
        return accumulate((1, residual(ExtensionCocycle(psi, chi))), (-1, offset))

    return [ExtensionCocycle(psi, chi) for psi, chi in _linear_kernel(fn, [(n, n, m), (m, n)])]


def deformation_cocycle_space(base: NijenhuisAlgebra) -> list[DeformationCochain]:
    """A basis of the 2-cocycles (symmetric mu1, N1) of ``base``."""
    n = base.dim

    def fn(mu1, N1):
        c = DeformationCochain(mu1, N1)
        jac, nij = _cocycle_residuals(base, c)
        sym = c.mu1 - einsum("jik->ijk", c.mu1)
        return np.concatenate([jac.reshape(-1), nij.reshape(-1), sym.reshape(-1)])

    return [DeformationCochain(mu1, N1) for mu1, N1 in _linear_kernel(fn, [(n, n, n), (n, n)])]
