"""Built-in worked examples on the 4-dimensional algebra with [e1,e1]=e2, [e1,e3]=[e3,e1]=e4."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exact import array, eye
from .mocklie import MockLieAlgebra, MockLieCoalgebra


def _mat(cols) -> np.ndarray:
    """Matrix whose j-th column is the image of e_j."""
    return array(cols).T.copy()


def algebra() -> MockLieAlgebra:
    return MockLieAlgebra.from_entries(4, [(1, 1, 2, 1), (1, 3, 4, 1), (3, 1, 4, 1)])


def r_matrix() -> np.ndarray:
    """e2 (x) e3 - e3 (x) e2."""
    r = array([[0] * 4] * 4)
    r[1, 2], r[2, 1] = Fraction(1), Fraction(-1)
    return r


def omega(lam=0, gam=0) -> np.ndarray:
    """Two-parameter skew form; w(e3, e2) = -2 gamma keeps it skew."""
    lam, gam = Fraction(lam), Fraction(gam)
    return array(
        [
            [0, 0, lam, gam],
            [0, 0, 2 * gam, 0],
            [-lam, -2 * gam, 0, 0],
            [-gam, 0, 0, 0],
        ]
    )


def symplectic_N(lam=1) -> np.ndarray:
    """N(e1) = -lambda e2, zero elsewhere."""
    lam = Fraction(lam)
    return _mat([[0, -lam, 0, 0], [0] * 4, [0] * 4, [0] * 4])


def coalgebra() -> MockLieCoalgebra:
    """Delta(e1) = -e4 (x) e2 - e2 (x) e4."""
    return MockLieCoalgebra.from_entries(4, [(1, 4, 2, -1), (1, 2, 4, -1)])


def bialgebra_N() -> np.ndarray:
    m = eye(4)
    m[2, 1] = Fraction(1)
    return m


def bialgebra_S(lam=0, gam=0) -> np.ndarray:
    lam, gam = Fraction(lam), Fraction(gam)
    return _mat([[1, 0, lam, gam], [0, 1, -1, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


EXAMPLES = ("ex-2-20", "ex-4-12", "ex-4-21")
