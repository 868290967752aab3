"""Command line front end: law checks on bundles, derivations, and the built-in examples.

Exit status is 0 when every check passes, 1 when one fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import catalog
from .bialgebra import (
    MatchedPairData,
    MockLieBialgebra,
    NijenhuisBialgebra,
    check_bialgebra,
    check_coboundary_compatible,
    check_jy,
    check_manin_triple,
    check_matched_pair,
    check_nijenhuis_bialgebra,
    check_nijenhuis_coboundary_conditions,
    check_nijenhuis_matched_pair,
    check_S_admissible_mLYBe,
    coadjoint_matched_pair,
    double_algebra,
    manin_triple,
)
from .bundle import Bundle, BundleError, dump_bundle, load_bundle, parse_scalar
from .defext import (
    DeformationCochain,
    ExtensionCocycle,
    TruncatedDeformation,
    build_extension_from_cocycle,
    check_2cocycle,
    check_extension_cocycle,
    check_order_n_deformation,
    extension_coboundary_matrix,
    extensions_same_class,
)
from .exact import CheckReport, DimensionError, PreconditionError, Witness, compare, first_failure, rank, zeros
from .mocklie import (
    MockLieAlgebra,
    MockLieCoalgebra,
    Representation,
    check_mock_lie,
    check_mock_lie_coalgebra,
    check_representation,
    semidirect_product,
)
from .nijenhuis import (
    NijenhuisAlgebra,
    NijenhuisRepresentation,
    check_adjoint_admissible,
    check_admissible,
    check_nijenhuis,
    check_nijenhuis_coalgebra,
    nijenhuis_semidirect,
)
from .operators import OOperatorData, check_O_operator, check_weak_O_operator, map_to_r, r_to_map
from .yangbaxter import (
    bracket_from_omega,
    check_ccmLYBe,
    check_cmLYBe,
    check_cosymplectic,
    check_dual_quasitriangular,
    check_quasitriangular,
    check_symplectic,
    delta_r,
    nijenhuis_from_symplectic,
)

# ---------------------------------------------------------------------------
# pulling typed components out of a bundle


def _need(value, label: str):
    if value is None:
        raise BundleError(f"missing component '{label}'")
    return value


def _algebra(b: Bundle) -> MockLieAlgebra:
    return MockLieAlgebra(_need(b.bracket, "bracket"))


def _coalgebra(b: Bundle) -> MockLieCoalgebra:
    return MockLieCoalgebra(_need(b.cobracket, "cobracket"))


def _map(b: Bundle, name: str) -> np.ndarray:
    return _need(b.maps.get(name), f"maps.{name}")


def _rep(b: Bundle, name: str = "rho") -> Representation:
    return Representation(_need(b.reps.get(name), f"reps.{name}"))


def _nalg(b: Bundle) -> NijenhuisAlgebra:
    return NijenhuisAlgebra(_algebra(b), _map(b, "N"))


def _nbialg(b: Bundle) -> NijenhuisBialgebra:
    return NijenhuisBialgebra(MockLieBialgebra(_algebra(b), _coalgebra(b)), _map(b, "N"), _map(b, "S"))


def _cochain(b: Bundle, name: str) -> dict:
    return _need(b.cochains.get(name), f"cochains.{name}")


def _deformation_cochain(b: Bundle, name: str) -> DeformationCochain:
    c = _cochain(b, name)
    if "mu1" not in c:
        raise BundleError(f"cochains.{name}: expected a deformation cochain (mu1, N1)")
    return DeformationCochain(c["mu1"], c["N1"])


def _extension_cocycle(b: Bundle, name: str) -> ExtensionCocycle:
    c = _cochain(b, name)
    if "psi" not in c:
        raise BundleError(f"cochains.{name}: expected an extension cocycle (psi, chi)")
    return ExtensionCocycle(c["psi"], c["chi"])


def _matched_pair(b: Bundle, fill_operators: bool) -> MatchedPairData:
    """An explicit pair (bracket2, reps rho and rho2) or the coadjoint pair of a bialgebra."""
    if b.bracket2 is not None:
        return MatchedPairData(
            _algebra(b),
            MockLieAlgebra(b.bracket2),
            _rep(b, "rho"),
            _rep(b, "rho2"),
            b.maps.get("N"),
            b.maps.get("N2"),
        )
    n = b.dim
    if fill_operators:
        N, S = b.maps.get("N", zeros(n, n)), b.maps.get("S", zeros(n, n))
        NB = NijenhuisBialgebra(MockLieBialgebra(_algebra(b), _coalgebra(b)), N, S)
    else:
        NB = _nbialg(b)
    return coadjoint_matched_pair(NB)


def _o_data(b: Bundle) -> OOperatorData:
    return OOperatorData(_algebra(b), _map(b, "T"), _rep(b), _map(b, "N"), _map(b, "alpha"))


# ---------------------------------------------------------------------------
# registered laws


def _same_class(b: Bundle) -> tuple[CheckReport, dict]:
    NA, R, NV = _nalg(b), _rep(b), _map(b, "NV")
    c1, c2 = _extension_cocycle(b, "c1"), _extension_cocycle(b, "c2")
    gamma = extensions_same_class(NA, R, NV, c1, c2)
    if gamma is not None:
        return CheckReport("same-class", True), {"gamma": [[str(x) for x in row] for row in gamma]}
    # certificate: the augmented system has larger rank
    K = extension_coboundary_matrix(NA, R, NV)
    aug = np.concatenate([K, (c1 - c2).flat().reshape(-1, 1)], axis=1)
    w = Witness((), (Fraction(rank(aug)),), (Fraction(rank(K)),))
    return CheckReport("same-class", False, (w,), "rank"), {}


def _deformation(b: Bundle) -> CheckReport:
    NA = _nalg(b)
    terms = [DeformationCochain(mu, Nk) for mu, Nk in b.deformation]
    return check_order_n_deformation(TruncatedDeformation.from_base(NA, *terms))


def _coboundary(b: Bundle) -> CheckReport:
    A, r = _algebra(b), _need(b.tensors.get("r"), "tensors.r")
    parts = [lambda: check_coboundary_compatible(A, r)]
    if "N" in b.maps and "S" in b.maps:
        parts.append(lambda: check_nijenhuis_coboundary_conditions(A, b.maps["N"], b.maps["S"], r))
    return first_failure("coboundary", (p() for p in parts))


def _r(b: Bundle) -> np.ndarray:
    return _need(b.tensors.get("r"), "tensors.r")


def _omega(b: Bundle) -> np.ndarray:
    return _need(b.forms.get("omega"), "forms.omega")


LAWS = {
    "mock-lie": lambda b: check_mock_lie(_algebra(b)),
    "coalgebra": lambda b: check_mock_lie_coalgebra(_coalgebra(b)),
    "representation": lambda b: check_representation(_algebra(b), _rep(b)),
    "nijenhuis": lambda b: check_nijenhuis(_nalg(b)),
    "nijenhuis-coalgebra": lambda b: check_nijenhuis_coalgebra(_coalgebra(b), _map(b, "S")),
    "bialgebra": lambda b: check_bialgebra(MockLieBialgebra(_algebra(b), _coalgebra(b))),
    "nijenhuis-bialgebra": lambda b: check_nijenhuis_bialgebra(_nbialg(b)),
    "admissible": lambda b: check_admissible(_nalg(b), _rep(b), _map(b, "beta")),
    "adjoint-admissible": lambda b: check_adjoint_admissible(_nalg(b), _map(b, "S")),
    "symplectic": lambda b: check_symplectic(_algebra(b), _omega(b)),
    "cosymplectic": lambda b: check_cosymplectic(_coalgebra(b), _r(b)),
    "cmlybe": lambda b: check_cmLYBe(_algebra(b), _r(b)),
    "ccmlybe": lambda b: check_ccmLYBe(_coalgebra(b), _omega(b)),
    "quasitriangular": lambda b: check_quasitriangular(_algebra(b), _r(b)),
    "dual-quasitriangular": lambda b: check_dual_quasitriangular(_coalgebra(b), _omega(b)),
    "matched-pair": lambda b: check_matched_pair(_matched_pair(b, True)),
    "nijenhuis-matched-pair": lambda b: check_nijenhuis_matched_pair(_matched_pair(b, False)),
    "manin-triple": lambda b: check_manin_triple(manin_triple(_nbialg(b))),
    "coboundary": _coboundary,
    "s-admissible-mlybe": lambda b: check_S_admissible_mLYBe(_algebra(b), _map(b, "N"), _map(b, "S"), _r(b)),
    "weak-o-operator": lambda b: check_weak_O_operator(_o_data(b)),
    "o-operator": lambda b: check_O_operator(_o_data(b)),
    "deformation": _deformation,
    "2-cocycle": lambda b: check_2cocycle(_nalg(b), _deformation_cochain(b, "c")),
    "extension-cocycle": lambda b: check_extension_cocycle(_nalg(b), _rep(b), _map(b, "NV"), _extension_cocycle(b, "c")),
    "same-class": _same_class,
}


def _params_out(params: dict) -> dict:
    return {k: str(v) for k, v in sorted(params.items())}


def run_check(b: Bundle, law: str) -> tuple[dict, int]:
    """Serialized report and exit status for one law."""
    if law not in LAWS:
        raise BundleError(f"unknown law '{law}'")
    extra: dict = {}
    try:
        out = LAWS[law](b)
        if isinstance(out, tuple):
            out, extra = out
        report = out.to_dict()
    except PreconditionError as exc:
        inner = exc.report
        report = {
            "law": law,
            "pass": False,
            "witnesses": [w.to_dict() for w in inner.witnesses] if inner else [],
            "precondition": str(exc),
        }
        if inner is not None and inner.condition:
            report["condition"] = inner.condition
    report = {**report, "law": law, "params": _params_out(b.params), **extra}
    return report, 0 if report["pass"] else 1


# ---------------------------------------------------------------------------
# derivations


def _with(b: Bundle, **changes) -> Bundle:
    out = Bundle(**{**b.__dict__, "params": {}})
    for k, v in changes.items():
        setattr(out, k, v)
    return out


def _derive_semidirect(b: Bundle) -> Bundle:
    A, R = _algebra(b), _rep(b)
    if "N" in b.maps and "alpha" in b.maps:
        NA = nijenhuis_semidirect(NijenhuisAlgebra(A, b.maps["N"]), NijenhuisRepresentation(R, b.maps["alpha"]))
        return Bundle(dim=NA.dim, bracket=NA.base.bracket, maps={"N": NA.N})
    S = semidirect_product(A, R)
    return Bundle(dim=S.dim, bracket=S.bracket)


def _derive_double(b: Bundle) -> Bundle:
    D = double_algebra(_matched_pair(b, True))
    return Bundle(dim=D.dim, bracket=D.base.bracket, maps={"N": D.N})


def _derive_r_from_t(b: Bundle) -> Bundle:
    T = _map(b, "T")
    if T.shape != (b.dim, b.dim):
        raise BundleError(f"maps.T: expected a {b.dim} x {b.dim} matrix")
    return _with(b, tensors={**b.tensors, "r": map_to_r(T)})


def _derive_extension(b: Bundle) -> Bundle:
    E = build_extension_from_cocycle(_nalg(b), _rep(b), _map(b, "NV"), _extension_cocycle(b, "c"))
    return Bundle(dim=E.total.dim, bracket=E.total.base.bracket, maps={"N": E.total.N, "section": E.section})


BUILDERS = {
    "delta-r": lambda b: _with(b, cobracket=delta_r(_algebra(b), _r(b)).cobracket),
    "bracket-from-omega": lambda b: _with(b, bracket=bracket_from_omega(_coalgebra(b), _omega(b)).bracket),
    "semidirect": _derive_semidirect,
    "double": _derive_double,
    "n-from-symplectic": lambda b: _with(
        b, maps={**b.maps, "N": nijenhuis_from_symplectic(_algebra(b), _omega(b), _r(b))}
    ),
    "t-from-r": lambda b: _with(b, maps={**b.maps, "T": r_to_map(_r(b))}),
    "r-from-t": _derive_r_from_t,
    "extension-build": _derive_extension,
}


# ---------------------------------------------------------------------------
# built-in examples

GRID = tuple(itertools.product((0, 1, -3), (0, 2, 5)))


def _stage(name: str, report: CheckReport) -> dict:
    return {**report.to_dict(), "stage": name}


def _rows(m) -> list:
    return [[str(x) for x in row] for row in m]


def _ex_2_20(lam, gam) -> tuple[list, dict]:
    A, r = catalog.algebra(), catalog.r_matrix()
    w, w0 = catalog.omega(lam, gam), catalog.omega(lam, 0)
    D = delta_r(A, r)
    stages = [
        _stage("mock-lie", check_mock_lie(A)),
        _stage("cmlybe", check_cmLYBe(A, r)),
        _stage("quasitriangular", check_quasitriangular(A, r)),
        _stage("delta-r", compare("delta-r", D.cobracket, catalog.coalgebra().cobracket, 1)),
        _stage("symplectic", check_symplectic(A, w)),
        _stage("dual-quasitriangular", check_dual_quasitriangular(D, w0)),
    ]
    outputs = {}
    try:
        N = nijenhuis_from_symplectic(A, w0, r)
    except PreconditionError as exc:
        stages.append({"stage": "n-from-symplectic", "law": "n-from-symplectic", "pass": False,
                       "witnesses": [], "precondition": str(exc)})
        return stages, outputs
    stages.append(_stage("n-from-symplectic", compare("n-from-symplectic", N, catalog.symplectic_N(lam), 0)))
    stages.append(_stage("nijenhuis", check_nijenhuis(NijenhuisAlgebra(A, N))))
    outputs["N"] = _rows(N)
    return stages, outputs


def _ex_4_12(lam, gam) -> tuple[list, dict]:
    A, C = catalog.algebra(), catalog.coalgebra()
    N, S = catalog.bialgebra_N(), catalog.bialgebra_S(lam, gam)
    NB = NijenhuisBialgebra(MockLieBialgebra(A, C), N, S)
    NA = NijenhuisAlgebra(A, N)
    stages = [
        _stage("bialgebra", check_bialgebra(NB.bialgebra)),
        _stage("nijenhuis", check_nijenhuis(NA)),
        _stage("nijenhuis-coalgebra", check_nijenhuis_coalgebra(C, S)),
        _stage("adjoint-admissible", check_adjoint_admissible(NA, S)),
        _stage("dual-admissible", check_jy(NB)),
    ]
    return stages, {}


def _ex_4_21(lam, gam) -> tuple[list, dict]:
    A, r = catalog.algebra(), catalog.r_matrix()
    N, S = catalog.bialgebra_N(), catalog.bialgebra_S(lam, gam)
    stages = [
        _stage("coboundary", check_coboundary_compatible(A, r)),
        _stage("nijenhuis-coboundary", check_nijenhuis_coboundary_conditions(A, N, S, r)),
        _stage("s-admissible-mlybe", check_S_admissible_mLYBe(A, N, S, r)),
        _stage("delta-r", compare("delta-r", delta_r(A, r).cobracket, catalog.coalgebra().cobracket, 1)),
    ]
    return stages, {}


EXAMPLES = {"ex-2-20": _ex_2_20, "ex-4-12": _ex_4_12, "ex-4-21": _ex_4_21}
EXAMPLE_DEFAULTS = {"ex-2-20": (1, 0), "ex-4-12": (0, 0), "ex-4-21": (0, 0)}


def run_example(name: str, params: dict | None = None) -> dict:
    params = dict(params or {})
    unknown = sorted(set(params) - {"lambda", "gamma"})
    if unknown:
        raise BundleError(f"unknown parameter '{unknown[0]}' (examples take lambda and gamma)")
    lam0, gam0 = EXAMPLE_DEFAULTS[name]
    lam, gam = Fraction(params.get("lambda", lam0)), Fraction(params.get("gamma", gam0))
    stages, outputs = EXAMPLES[name](lam, gam)
    out = {
        "example": name,
        "params": _params_out({"lambda": lam, "gamma": gam}),
        "pass": all(s["pass"] for s in stages),
        "stages": stages,
    }
    if outputs:
        out["outputs"] = outputs
    return out


def certify_family(name: str) -> dict:
    """Run the example on the 3 x 3 grid.

    Every stage is a polynomial identity of degree at most 2 in each of
    lambda and gamma, so passing on three values of each certifies it for
    all rational parameters.
    """
    runs = [run_example(name, {"lambda": lam, "gamma": gam}) for lam, gam in GRID]
    return {
        "example": name,
        "certified": all(r["pass"] for r in runs),
        "pass": all(r["pass"] for r in runs),
        "grid": runs,
    }


# ---------------------------------------------------------------------------
# entry point


def _parse_param(text: str) -> tuple[str, Fraction]:
    if "=" not in text:
        raise BundleError(f"--param expects name=value, got {text!r}")
    name, value = text.split("=", 1)
    name = name.strip()
    if not name.isidentifier():
        raise BundleError(f"--param: bad name {name!r}")
    return name, parse_scalar(value, {}, f"--param {name}")


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mlk", description="Exact law checks for mock-Lie structures.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check one law on a bundle")
    c.add_argument("bundle")
    c.add_argument("--law", required=True, choices=sorted(LAWS))
    c.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")

    d = sub.add_parser("derive", help="build a new bundle from an existing one")
    d.add_argument("builder", choices=sorted(BUILDERS))
    d.add_argument("bundle")
    d.add_argument("-o", "--output", required=True)
    d.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")

    e = sub.add_parser("example", help="run a built-in worked example")
    e.add_argument("name", choices=sorted(EXAMPLES))
    e.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    e.add_argument("--certify-family", action="store_true")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        params = dict(_parse_param(t) for t in args.param)
        if args.command == "check":
            report, status = run_check(load_bundle(args.bundle, params), args.law)
            _emit(report)
            return status
        if args.command == "derive":
            b = load_bundle(args.bundle, params)
            try:
                out = BUILDERS[args.builder](b)
            except PreconditionError as exc:
                rep = exc.report
                _emit({
                    "builder": args.builder,
                    "pass": False,
                    "precondition": str(exc),
                    "witnesses": [w.to_dict() for w in rep.witnesses] if rep else [],
                })
                return 1
            Path(args.output).write_text(dump_bundle(out))
            _emit({"builder": args.builder, "output": args.output, "pass": True, "dim": out.dim})
            return 0
        doc = certify_family(args.name) if args.certify_family else run_example(args.name, params)
        _emit(doc)
        return 0 if doc["pass"] else 1
    except (BundleError, DimensionError, OSError) as exc:
        sys.stderr.write(f"mlk: error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
