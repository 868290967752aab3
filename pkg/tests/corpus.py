"""Shared instances: the worked examples, small algebras and their perturbations."""

from fractions import Fraction
import itertools

from mlk import catalog
from mlk.exact import array, eye, zeros
from mlk.bialgebra import MockLieBialgebra, NijenhuisBialgebra
from mlk.mocklie import MockLieAlgebra, MockLieCoalgebra, adjoint_rep, semidirect_product
from mlk.nijenhuis import NijenhuisAlgebra, check_nijenhuis

A4 = catalog.algebra()
R4 = catalog.r_matrix()
C4 = catalog.coalgebra()
N412 = catalog.bialgebra_N()
PARAMS = [(0, 0), (1, 2), (-3, 5)]


def mat(cols):
    """Matrix with the given images of e_1, e_2, ... as columns."""
    return array(cols).T.copy()


def two_dim():
    """[e1, e1] = e2."""
    return MockLieAlgebra.from_entries(2, [(1, 1, 2, 1)])


def algebras():
    A = A4
    return {
        "zero-1": MockLieAlgebra.zero(1),
        "zero-3": MockLieAlgebra.zero(3),
        "two-dim": two_dim(),
        "ex": A,
        "ex-semidirect-ad": semidirect_product(A, adjoint_rep(A)),
    }


def unit(n, m, i, j, v=1):
    out = zeros(n, m)
    out[i, j] = Fraction(v)
    return out


def nijenhuis_corpus():
    """Nijenhuis algebras from the examples plus trivial operators."""
    out = [
        NijenhuisAlgebra(A4, N412),
        NijenhuisAlgebra(A4, catalog.symplectic_N(1)),
        NijenhuisAlgebra(A4, catalog.symplectic_N(-3)),
        NijenhuisAlgebra(A4, eye(4)),
        NijenhuisAlgebra(A4, zeros(4, 4)),
        NijenhuisAlgebra(two_dim(), array([[1, 0], [1, 1]])),
    ]
    return [NA for NA in out if check_nijenhuis(NA).passed]


def quintuple(lam=0, gam=0, N=None, S=None, d=None):
    C = C4 if d is None else MockLieCoalgebra(d)
    return NijenhuisBialgebra(
        MockLieBialgebra(A4, C),
        N412 if N is None else N,
        catalog.bialgebra_S(lam, gam) if S is None else S,
    )


def quintuple_corpus():
    out = [quintuple(lam, gam) for lam, gam in PARAMS]
    out.append(NijenhuisBialgebra(MockLieBialgebra(A4, C4), eye(4), eye(4)))
    out.append(NijenhuisBialgebra(MockLieBialgebra(A4, MockLieCoalgebra.zero(4)), N412, eye(4)))
    for i, j in itertools.product(range(4), repeat=2):
        S = catalog.bialgebra_S(1, 2)
        S[i, j] += 1
        out.append(quintuple(S=S))
        N = N412.copy()
        N[i, j] -= 1
        out.append(quintuple(1, 2, N=N))
    for i, j in ((1, 3), (2, 1), (3, 1), (0, 2)):
        N = eye(4)
        N[i, j] += 1
        out.append(quintuple(N=N, S=eye(4)))
        out.append(quintuple(N=N, S=N.copy()))
        out.append(quintuple(N=N, S=2 * eye(4)))
        out.append(quintuple(N=N, S=N.T.copy()))
    for k in range(4):
        d = C4.cobracket.copy()
        d[k, 1, 1] += 1
        out.append(quintuple(d=d))
    return out
