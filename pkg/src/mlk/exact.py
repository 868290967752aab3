"""Exact rational tensors, contraction, and Gaussian elimination.

Every tensor in the kit is a numpy ``object`` array whose entries are
:class:`fractions.Fraction`.  Floats are rejected at the boundary so no
inexact value can leak into a law check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "CheckReport",
    "DimensionError",
    "PreconditionError",
    "Witness",
    "accumulate",
    "array",
    "block_diag",
    "compare",
    "contract",
    "einsum",
    "exact",
    "eye",
    "first_failure",
    "flip_tau",
    "freeze",
    "is_zero",
    "nullspace",
    "rank",
    "row_reduce",
    "solve_linear",
    "zeros",
]


class DimensionError(ValueError):
    """Raised when tensor axes that must agree do not."""


class PreconditionError(ValueError):
    """A builder or check was called on data violating its hypotheses.

    ``report`` carries the failing :class:`CheckReport` when one exists.
    """

    def __init__(self, message: str, report: "CheckReport | None" = None):
        super().__init__(message)
        self.report = report


def exact(value) -> Fraction:
    """Coerce ``value`` to a Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, float, complex)) or isinstance(value, np.floating):
        raise TypeError(f"inexact scalar {value!r} not allowed")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def array(data, shape: Sequence[int] | None = None) -> np.ndarray:
    """Build an exact object array from nested sequences or another array."""
    src = np.asarray(data, dtype=object)
    if shape is not None:
        src = src.reshape(shape)
    out = np.empty(src.shape, dtype=object)
    for idx in np.ndindex(src.shape):
        out[idx] = exact(src[idx])
    return out


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def freeze(arr: np.ndarray) -> np.ndarray:
    arr = array(arr)
    arr.setflags(write=False)
    return arr


def block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, m = a.shape
    p, q = b.shape
    out = zeros(n + p, m + q)
    out[:n, :m] = a
    out[n:, m:] = b
    return out


def is_zero(t: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(t).flat)


def contract(t: np.ndarray, u: np.ndarray, axes: Iterable[tuple[int, int]]) -> np.ndarray:
    """Contract axis ``a`` of ``t`` with axis ``b`` of ``u`` for each ``(a, b)``.

    Free axes of ``t`` come first, then free axes of ``u``, each in input
    order.  Contracting everything away yields a 0-d array.
    """
    pairs = list(axes)
    for a, b in pairs:
        if not (-t.ndim <= a < t.ndim) or not (-u.ndim <= b < u.ndim):
            raise DimensionError(f"axis pair ({a}, {b}) out of range for ranks {t.ndim}, {u.ndim}")
        if t.shape[a] != u.shape[b]:
            raise DimensionError(
                f"cannot contract axis {a} (length {t.shape[a]}) with axis {b} (length {u.shape[b]})"
            )
    left = [a for a, _ in pairs]
    right = [b for _, b in pairs]
    return np.asarray(np.tensordot(t, u, axes=(left, right)), dtype=object)


def einsum(spec: str, *ops) -> np.ndarray:
    """``np.einsum`` for exact tensors, iterating over nonzero entries only.

    Structure constants are sparse, and dense object-array einsum spends
    nearly all its time multiplying zeros.  Single operands and ellipses go
    straight to numpy.
    """
    if len(ops) < 2 or "..." in spec:
        return np.einsum(spec, *ops)
    inputs, out = spec.replace(" ", "").split("->")
    labels = inputs.split(",")
    arrays = [np.asarray(op, dtype=object) for op in ops]
    sizes: dict[str, int] = {}
    for lab, arr in zip(labels, arrays):
        if len(lab) != arr.ndim:
            raise ValueError(f"operand rank does not match subscripts {lab!r}")
        for ch, d in zip(lab, arr.shape):
            if sizes.setdefault(ch, d) != d:
                raise ValueError(f"size mismatch for subscript {ch!r}")
    partial = {(): Fraction(1)}
    seen = ""
    for lab, arr in zip(labels, arrays):
        shared = [ch for ch in dict.fromkeys(lab) if ch in seen]
        fresh = [ch for ch in dict.fromkeys(lab) if ch not in seen]
        by_shared: dict[tuple, list] = {}
        for idx in zip(*np.nonzero(arr)):
            val = arr[idx]
            where = {}
            if any(where.setdefault(ch, i) != i for ch, i in zip(lab, idx)):
                continue  # repeated subscript off the diagonal
            key = tuple(int(where[ch]) for ch in shared)
            by_shared.setdefault(key, []).append((tuple(int(where[ch]) for ch in fresh), val))
        pos = [seen.index(ch) for ch in shared]
        nxt = {}
        for key, v in partial.items():
            for tail, w in by_shared.get(tuple(key[p] for p in pos), ()):
                k = key + tail
                nxt[k] = nxt.get(k, 0) + v * w
        partial = nxt
        seen += "".join(fresh)
    result = zeros(*(sizes[ch] for ch in out))
    take = [seen.index(ch) for ch in out]
    for key, v in partial.items():
        t = tuple(key[p] for p in take)
        result[t] = result[t] + v
    return result


def accumulate(*terms) -> np.ndarray:
    """Sum of ``(coefficient, tensor)`` pairs, touching only nonzero entries."""
    out = None
    for coef, t in terms:
        t = np.asarray(t, dtype=object)
        if out is None:
            out = zeros(*t.shape)
        elif t.shape != out.shape:
            raise DimensionError(f"cannot add shapes {out.shape} and {t.shape}")
        if t.ndim == 0:
            out[()] = out[()] + coef * t[()]
            continue
        idx = np.nonzero(t)
        out[idx] = out[idx] + coef * t[idx]
    return out


def flip_tau(r: np.ndarray) -> np.ndarray:
    """Swap the two tensor factors of ``r``: ``out[i][j] = r[j][i]``."""
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise DimensionError(f"flip_tau needs a square two-tensor, got shape {r.shape}")
    return r.T.copy()


# ---------------------------------------------------------------------------
# linear algebra over Q


def row_reduce(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = array(m)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray) -> int:
    return len(row_reduce(m)[1])


def solve_linear(system: np.ndarray, rhs: Sequence) -> np.ndarray | None:
    """One exact solution of ``system @ x = rhs``, or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    system = array(system)
    rhs = array(rhs).reshape(-1)
    rows, cols = system.shape
    if rhs.shape[0] != rows:
        raise DimensionError(f"rhs has length {rhs.shape[0]}, system has {rows} rows")
    aug = np.concatenate([system, rhs.reshape(rows, 1)], axis=1)
    red, pivots = row_reduce(aug)
    if cols in pivots:
        return None
    x = zeros(cols)
    for r, c in enumerate(pivots):
        x[c] = red[r, cols]
    return x


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """A basis of the right kernel, one vector per free column."""
    red, pivots = row_reduce(m)
    cols = red.shape[1]
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        v = zeros(cols)
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r, free]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# law reports


class Witness(NamedTuple):
    indices: tuple[int, ...]
    lhs: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "lhs": [str(x) for x in self.lhs],
            "rhs": [str(x) for x in self.rhs],
        }


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a law check.

    ``witnesses`` holds every failing basis tuple (1-based indices), sorted.
    ``condition`` names the sub-law that failed for composite checks.
    """

    law: str
    passed: bool
    witnesses: tuple[Witness, ...] = ()
    condition: str | None = None
    notes: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.passed != (not self.witnesses):
            raise ValueError("a report passes exactly when it has no witnesses")

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        out = {
            "law": self.law,
            "pass": self.passed,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }
        if self.condition is not None:
            out["condition"] = self.condition
        return out


def compare(law: str, lhs: np.ndarray, rhs: np.ndarray, index_axes: int) -> CheckReport:
    """Compare two tensors slice by slice over their leading ``index_axes`` axes."""
    lhs = np.asarray(lhs, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    if lhs.shape != rhs.shape:
        raise DimensionError(f"{law}: sides have shapes {lhs.shape} and {rhs.shape}")
    differs = np.asarray(lhs != rhs, dtype=bool).reshape(lhs.shape)
    if index_axes < lhs.ndim:
        differs = differs.any(axis=tuple(range(index_axes, lhs.ndim)))
    witnesses = []
    for idx in zip(*np.nonzero(differs)) if index_axes else ([()] if differs.any() else []):
        idx = tuple(int(i) for i in idx)
        a = lhs[idx] if idx else lhs
        b = rhs[idx] if idx else rhs
        a_flat = tuple(Fraction(x) for x in np.asarray(a).flat)
        b_flat = tuple(Fraction(x) for x in np.asarray(b).flat)
        witnesses.append(Witness(tuple(i + 1 for i in idx), a_flat, b_flat))
    return CheckReport(law, not witnesses, tuple(witnesses))


def first_failure(law: str, reports: Iterable[CheckReport]) -> CheckReport:
    """Fold sub-reports in order; the first failing one is attributed.

    ``reports`` may be lazy so later conditions are not evaluated after a
    failure.
    """
    for rep in reports:
        if not rep.passed:
            cond = rep.law if rep.condition is None else f"{rep.law}/{rep.condition}"
            return CheckReport(law, False, rep.witnesses, cond, rep.notes)
    return CheckReport(law, True)
