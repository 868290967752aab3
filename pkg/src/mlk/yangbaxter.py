"""r-matrices, 2-forms, and the (co)classical mock-Lie Yang-Baxter equations.

An r-matrix is a square array with ``r[i, j]`` the coefficient of
``e_i (x) e_j``; a 2-form is its Gram matrix.
"""

from __future__ import annotations

import numpy as np

from .exact import CheckReport, DimensionError, PreconditionError, compare, einsum, first_failure, freeze, zeros
from .mocklie import (
    MockLieAlgebra,
    MockLieCoalgebra,
    check_commutative,
    check_cocommutative,
    check_form,
    cyclic_sum,
)
from .nijenhuis import NijenhuisAlgebra, check_nijenhuis, check_nijenhuis_coalgebra


def _two_tensor(r, n: int, what: str = "r") -> np.ndarray:
    r = freeze(r)
    if r.shape != (n, n):
        raise DimensionError(f"{what} must be {n} x {n}, got {r.shape}")
    return r


def is_antisymmetric(r: np.ndarray) -> bool:
    return bool(np.array_equal(r, -r.T))


def _require_antisymmetric(r: np.ndarray) -> None:
    if not is_antisymmetric(r):
        raise PreconditionError("r must be antisymmetric", compare("antisymmetric", r, -r.T, 2))


def _require_skew(w: np.ndarray) -> None:
    if not is_antisymmetric(w):
        raise PreconditionError("the 2-form must be skew-symmetric", compare("skew", w, -w.T, 2))


# ---------------------------------------------------------------------------
# classical side


def ybe_terms(c: np.ndarray, r: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The tensors [r12, r13], [r13, r23] and [r12, r23] as n x n x n arrays."""
    t12_13 = einsum("ab,cd,ack->kbd", r, r, c)
    t13_23 = einsum("ab,cd,bdk->ack", r, r, c)
    t12_23 = einsum("ab,cd,cbk->akd", r, r, c)
    return t12_13, t13_23, t12_23


def cmlybe_tensor(A: MockLieAlgebra, r) -> np.ndarray:
    r = _two_tensor(r, A.dim)
    a, b, c = ybe_terms(A.bracket, r)
    return a + b - c


def check_cmLYBe(A: MockLieAlgebra, r) -> CheckReport:
    t = cmlybe_tensor(A, r)
    return compare("cmlybe", t, zeros(*t.shape), 3)


def delta_r(A: MockLieAlgebra, r) -> MockLieCoalgebra:
    """Delta(x) = [x, r1] (x) r2 - r1 (x) [x, r2]; no validity claim."""
    r = _two_tensor(r, A.dim)
    c = A.bracket
    d = einsum("ak,iaj->ijk", r, c) - einsum("jb,ibk->ijk", r, c)
    return MockLieCoalgebra(d)


def _qt_sides(A: MockLieAlgebra, r: np.ndarray):
    d = delta_r(A, r).cobracket
    t12_13, t13_23, _ = ybe_terms(A.bracket, r)
    qt1 = (einsum("ab,ajk->jkb", r, d), -t13_23)
    qt2 = (einsum("ab,bjk->ajk", r, d), t12_13)
    return qt1, qt2


def check_qt1(A: MockLieAlgebra, r) -> CheckReport:
    r = _two_tensor(r, A.dim)
    _require_antisymmetric(r)
    (lhs, rhs), _ = _qt_sides(A, r)
    return compare("qt1", lhs, rhs, 3)


def check_qt2(A: MockLieAlgebra, r) -> CheckReport:
    r = _two_tensor(r, A.dim)
    _require_antisymmetric(r)
    _, (lhs, rhs) = _qt_sides(A, r)
    return compare("qt2", lhs, rhs, 3)


def check_quasitriangular(A: MockLieAlgebra, r) -> CheckReport:
    """(Delta_r (x) id)(r) = -r1 (x) r1' (x) [r2, r2'] for antisymmetric r.

    The second form (id (x) Delta_r)(r) = [r1, r1'] (x) r2 (x) r2' is evaluated
    as well; for a commutative bracket the two verdicts must agree.
    """
    one, two = check_qt1(A, r), check_qt2(A, r)
    if one.passed != two.passed and check_commutative(A).passed:
        raise AssertionError("the two quasitriangular forms disagree on a commutative bracket")
    return CheckReport("quasitriangular", one.passed, one.witnesses, notes={"qt2": two.passed})


# ---------------------------------------------------------------------------
# co-classical side


def ccybe_terms(d: np.ndarray, w: np.ndarray):
    """w(x1, y) w(x2, z), w(x, z1) w(y, z2) and w(x, y1) w(y2, z), indexed [x, y, z]."""
    t1 = einsum("xab,ay,bz->xyz", d, w, w)
    t2 = einsum("zab,xa,yb->xyz", d, w, w)
    t3 = einsum("yab,xa,bz->xyz", d, w, w)
    return t1, t2, t3


def check_ccmLYBe(C: MockLieCoalgebra, w) -> CheckReport:
    w = _two_tensor(w, C.dim, "form")
    t1, t2, t3 = ccybe_terms(C.cobracket, w)
    lhs = t1 + t2 - t3
    return compare("ccmlybe", lhs, zeros(*lhs.shape), 3)


def bracket_from_omega(C: MockLieCoalgebra, w) -> MockLieAlgebra:
    """[x, y]_w = x1 w(x2, y) - y1 w(x, y2); no validity claim."""
    w = _two_tensor(w, C.dim, "form")
    d = C.cobracket
    return MockLieAlgebra(einsum("xkb,by->xyk", d, w) - einsum("ykb,xb->xyk", d, w))


def _cqt_sides(C: MockLieCoalgebra, w: np.ndarray):
    cw = bracket_from_omega(C, w).bracket
    t1, t2, _ = ccybe_terms(C.cobracket, w)
    cqt1 = (einsum("xyk,kz->xyz", cw, w), -t2)
    cqt2 = (einsum("xk,yzk->xyz", w, cw), t1)
    return cqt1, cqt2


def check_cqt1(C: MockLieCoalgebra, w) -> CheckReport:
    w = _two_tensor(w, C.dim, "form")
    _require_skew(w)
    (lhs, rhs), _ = _cqt_sides(C, w)
    return compare("cqt1", lhs, rhs, 3)


def check_cqt2(C: MockLieCoalgebra, w) -> CheckReport:
    w = _two_tensor(w, C.dim, "form")
    _require_skew(w)
    _, (lhs, rhs) = _cqt_sides(C, w)
    return compare("cqt2", lhs, rhs, 3)


def check_dual_quasitriangular(C: MockLieCoalgebra, w) -> CheckReport:
    """w([x, y]_w, z) = -w(x, z1) w(y, z2) for skew w; the mirrored form is checked to agree."""
    one, two = check_cqt1(C, w), check_cqt2(C, w)
    if one.passed != two.passed and check_cocommutative(C).passed:
        raise AssertionError("the two dual quasitriangular forms disagree on a cocommutative cobracket")
    return CheckReport("dual-quasitriangular", one.passed, one.witnesses, notes={"cqt2": two.passed})


# ---------------------------------------------------------------------------
# symplectic and cosymplectic structures


def check_symplectic(A: MockLieAlgebra, w) -> CheckReport:
    w = _two_tensor(w, A.dim, "form")

    def parts():
        yield check_form(A, w, skew=True)
        t = cyclic_sum(einsum("xyk,kz->xyz", A.bracket, w))
        yield compare("cyclic", t, zeros(*t.shape), 3)

    return first_failure("symplectic", parts())


def check_cosymplectic(C: MockLieCoalgebra, r) -> CheckReport:
    r = _two_tensor(r, C.dim)
    _require_antisymmetric(r)
    t = einsum("ab,apq->pqb", r, C.cobracket)  # r1_(1) (x) r1_(2) (x) r2
    total = t + einsum("jki->ijk", t) + einsum("kij->ijk", t)
    return compare("cosymplectic", total, zeros(*total.shape), 3)


def _hypotheses(name: str, checks) -> None:
    for label, thunk in checks:
        rep = thunk()
        if not rep.passed:
            raise PreconditionError(f"{name}: hypothesis '{label}' fails", rep)


def nijenhuis_from_symplectic(A: MockLieAlgebra, w, r) -> np.ndarray:
    """N(x) = w(x, r1) r2, a Nijenhuis operator under the three hypotheses."""
    w = _two_tensor(w, A.dim, "form")
    r = _two_tensor(r, A.dim)
    _hypotheses(
        "nijenhuis_from_symplectic",
        [
            ("symplectic", lambda: check_symplectic(A, w)),
            ("quasitriangular", lambda: check_quasitriangular(A, r)),
            ("dual-quasitriangular", lambda: check_dual_quasitriangular(delta_r(A, r), w)),
        ],
    )
    N = einsum("xa,ak->kx", w, r)
    if not check_nijenhuis(NijenhuisAlgebra(A, N)).passed:  # pragma: no cover - theorem
        raise AssertionError("induced operator is not Nijenhuis")
    return N


def conijenhuis_from_cosymplectic(C: MockLieCoalgebra, w, r) -> np.ndarray:
    """S(x) = r1 w(r2, x), a Nijenhuis operator on the coalgebra under the mirrored hypotheses."""
    w = _two_tensor(w, C.dim, "form")
    r = _two_tensor(r, C.dim)
    _hypotheses(
        "conijenhuis_from_cosymplectic",
        [
            ("cosymplectic", lambda: check_cosymplectic(C, r)),
            ("dual-quasitriangular", lambda: check_dual_quasitriangular(C, w)),
            ("quasitriangular", lambda: check_quasitriangular(bracket_from_omega(C, w), r)),
        ],
    )
    S = einsum("kb,bx->kx", r, w)
    if not check_nijenhuis_coalgebra(C, S).passed:  # pragma: no cover - theorem
        raise AssertionError("induced operator is not Nijenhuis on the coalgebra")
    return S
