"""``mlb``: check and build mock-Lie structures stored in JSON bundles.

Usage: ``mlb <verb> <bundle.json> [--r NAME] [--rep NAME] [--T NAME]
[--form NAME] [--cobracket NAME] [--kind invariant|symplectic]
[--format json|text] [--verbose] [--emit-bundle PATH]``

Exit status: 0 when every check passes, 1 on a mathematical failure, 2 on an
input error (unreadable or malformed bundle, missing names, violated
preconditions, unknown verb).
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

import numpy as np

from . import bundle as bio
from .algebra import MockLieAlgebra, validate_mock_lie
from .bialgebra import (bicrossed_product, check_cocycle_compatibility, check_manin_triple,
                        check_matched_pair, double, matched_pair_of_cobracket,
                        standard_manin_triple, validate_bialgebra)
from .checks import Violation
from .errors import (ArityMismatch, BundleError, DimMismatch, FormNotAdmissible, NotSkew,
                     ShapeError, Singular, UnknownVerb, ValidationError)
from .linalg import is_zero, zeros
from .prelie import (check_O_operator, prelie_from_symplectic, sub_adjacent,
                     validate_mock_pre_lie)
from .report import Report, emit, witness
from .representation import (check_invariant_form, check_symplectic_form,
                             equivalence_from_form, semidirect_structure,
                             validate_representation)
from .ybe import (canonical_solution_from_prelie, check_coboundary_conditions,
                  check_ybe_operator_form, coboundary_axiom_report,
                  coboundary_cobracket, lift_O_operator, r_as_map,
                  rota_baxter_correspondence)

INPUT_ERRORS = (BundleError, UnknownVerb, NotSkew, FormNotAdmissible, ShapeError,
                DimMismatch, ArityMismatch, Singular)


def _dual(names) -> list[str]:
    return [f"f{i + 1}" for i in range(len(names))]


def _distinct(first, second, fallback: str) -> list[str]:
    """``second`` unless it clashes with ``first``; then ``fallback1..``."""
    if set(first) & set(second) or len(set(second)) != len(second):
        return [f"{fallback}{i + 1}" for i in range(len(second))]
    return list(second)


def _require(value, flag: str, verb: str):
    if value is None:
        raise ValidationError(f"{verb} needs {flag} NAME", flag)
    return value


def _cobracket(b: bio.Bundle, opts):
    """The cobracket named by ``--cobracket``, or the coboundary of ``--r``."""
    if opts.r is not None and opts.cobracket is None:
        name, r = b.r_tensor(opts.r)
        return f"coboundary of {name}", coboundary_cobracket(r)
    return b.cobracket(opts.cobracket)


# -- verbs -----------------------------------------------------------------

def cmd_check_algebra(b: bio.Bundle, opts) -> Report:
    if b.structure is None:
        raise ValidationError("bundle has no 'algebra' section", "algebra")
    names = b.basis
    rep = Report("check-algebra", info={"dim": len(names)})
    rep.extend(validate_mock_lie(b.structure, opts.verbose),
               {"commutative": ([names] * 2, [names]), "jacobi": ([names] * 3, [names])})
    return rep


def cmd_check_rep(b: bio.Bundle, opts) -> Report:
    a = b.algebra()
    name = _require(opts.rep, "--rep", "check-rep")
    action = b.raw_action(name)
    rep = Report("check-rep", info={"representation": name, "module_dim": action.shape[1]})
    rep.extend(validate_representation(a, action, opts.verbose),
               {"representation": ([a.basis_names] * 2, None)})
    return rep


def cmd_check_prelie(b: bio.Bundle, opts) -> Report:
    if b.prelie_structure is None:
        raise ValidationError("bundle has no 'prelie' section", "prelie")
    names = b.prelie_basis
    rep = Report("check-prelie", info={"dim": len(names)})
    rep.extend(validate_mock_pre_lie(b.prelie_structure, opts.verbose),
               {"left_symmetric_aass": ([names] * 3, [names])})
    return rep


def _map_and_rep(b: bio.Bundle, opts, verb: str):
    name, entry = b.linear_map(_require(opts.T, "--T", verb))
    rep_name = opts.rep or entry.rep
    rep = b.representation(rep_name)
    if entry.matrix.shape != (rep.algebra.dim, rep.module_dim):
        raise ValidationError(f"map {name!r} has shape {entry.matrix.shape}, but "
                              f"representation {rep_name!r} needs "
                              f"{(rep.algebra.dim, rep.module_dim)}", "linear_map")
    return name, entry.matrix, rep_name, rep


def cmd_check_o_operator(b: bio.Bundle, opts) -> Report:
    name, t, rep_name, rep = _map_and_rep(b, opts, "check-o-operator")
    module = b.module_basis(rep_name)
    report = check_O_operator(rep, t, opts.verbose)
    out = Report("check-o-operator",
                 info={"map": name, "representation": rep_name,
                       "adjoint": report.adjoint, "rota_baxter": report.rota_baxter})
    out.extend(report, {"o_operator": ([module] * 2, [rep.algebra.basis_names])})
    return out


def _validated_algebra_report(out: Report, structure, names, prefix: str) -> MockLieAlgebra | None:
    report = validate_mock_lie(structure)
    out.extend(report, {"commutative": ([names] * 2, [names]),
                        "jacobi": ([names] * 3, [names])}, prefix=prefix)
    return MockLieAlgebra(structure, names) if report.ok else None


def cmd_semidirect(b: bio.Bundle, opts) -> Report:
    rep_name = _require(opts.rep, "--rep", "semidirect")
    rep = b.representation(rep_name)
    a = rep.algebra
    names = list(a.basis_names) + _distinct(a.basis_names, b.module_basis(rep_name), "v")
    out = Report("semidirect", info={"representation": rep_name, "dim": len(names)})
    s = _validated_algebra_report(out, semidirect_structure(a.structure, rep.action),
                                  names, "product.")
    if s is not None:
        out.bundle = bio.make_bundle(s)
    return out


def cmd_sub_adjacent(b: bio.Bundle, opts) -> Report:
    p = b.prelie()
    a, theta = sub_adjacent(p)
    out = Report("sub-adjacent", info={"dim": a.dim})
    out.extend(validate_mock_lie(a.structure), prefix="algebra.")
    out.extend(validate_representation(a, theta.action), prefix="theta.")
    out.bundle = bio.make_bundle(
        a, representations={"theta": bio.representation_entry(theta, a.basis_names)})
    return out


def cmd_cobracket(b: bio.Bundle, opts) -> Report:
    name, r = b.r_tensor(_require(opts.r, "--r", "cobracket"))
    d = coboundary_cobracket(r)
    names = list(r.algebra.basis_names)
    out = Report("cobracket", info={"r_tensor": name})
    out.extend(check_cocycle_compatibility(d, opts.verbose),
               {"compatible": ([names] * 2, [names] * 2)})
    out.bundle = bio.make_bundle(r.algebra, cobracket={f"delta_{name}": bio.cobracket_entry(d)},
                                 r_tensor={name: bio.r_tensor_entry(r)})
    return out


def _bialgebra_labels(names):
    dual = _dual(names)
    return {"symmetric": ([names], [names] * 2),
            "dual_jacobi": ([dual] * 3, [dual]),
            "compatible": ([names] * 2, [names] * 2)}


def cmd_check_bialgebra(b: bio.Bundle, opts) -> Report:
    name, d = _cobracket(b, opts)
    out = Report("check-bialgebra", info={"cobracket": name})
    out.extend(validate_bialgebra(d, opts.verbose), _bialgebra_labels(d.algebra.basis_names))
    return out


def _matched_pair_labels(names):
    dual = _dual(names)
    return {"a_mock_lie": ([names] * 3, [names]), "h_mock_lie": ([dual] * 3, [dual]),
            "rho_rep": ([names] * 2, None), "mu_rep": ([dual] * 2, None),
            "compat_rho": ([names, dual, dual], [dual]),
            "compat_mu": ([dual, names, names], [names])}


def cmd_check_matched_pair(b: bio.Bundle, opts) -> Report:
    name, d = _cobracket(b, opts)
    out = Report("check-matched-pair", info={"cobracket": name})
    out.extend(check_matched_pair(matched_pair_of_cobracket(d), opts.verbose),
               _matched_pair_labels(d.algebra.basis_names))
    return out


def cmd_bicrossed(b: bio.Bundle, opts) -> Report:
    name, d = _cobracket(b, opts)
    names = list(d.algebra.basis_names)
    m = matched_pair_of_cobracket(d)
    report = check_matched_pair(m, opts.verbose)
    out = Report("bicrossed", info={"cobracket": name, "dim": 2 * len(names)})
    out.extend(report, _matched_pair_labels(names))
    if report.ok:
        out.bundle = bio.make_bundle(bicrossed_product(m, names + _dual(names)))
    return out


def cmd_check_manin(b: bio.Bundle, opts) -> Report:
    name, d = _cobracket(b, opts)
    names = list(d.algebra.basis_names)
    dual = _dual(names)
    total = names + dual
    report = check_manin_triple(standard_manin_triple(d), opts.verbose)
    out = Report("check-manin", info={"cobracket": name, "standard": report.standard})
    out.extend(report, {"total_mock_lie": ([total] * 3, [total]),
                        "plus_subalgebra": ([names] * 2, [dual]),
                        "minus_subalgebra": ([dual] * 2, [names]),
                        "plus_isotropic": ([names] * 2, None),
                        "minus_isotropic": ([dual] * 2, None),
                        "form_symmetric": ([total] * 2, None),
                        "form_invariant": ([total] * 3, None)})
    return out


def cmd_double(b: bio.Bundle, opts) -> Report:
    name, d = _cobracket(b, opts)
    a = d.algebra
    names = list(a.basis_names)
    out = Report("double", info={"cobracket": name, "dim": 2 * a.dim})
    bialgebra = validate_bialgebra(d, opts.verbose)
    out.extend(bialgebra, _bialgebra_labels(names), prefix="bialgebra.")
    if not bialgebra.ok:
        return out
    result = double(a, d)
    total = list(result.algebra.basis_names)
    n = a.dim
    conditions = coboundary_axiom_report(result.r, opts.verbose)
    out.extend(conditions, {"cond_i": ([total], [total] * 2),
                            "cond_ii": ([total], [total] * 3),
                            "ybe": ([], [total] * 3)})
    images = result.cobracket.images
    on_a = images[:n] + np.pad(d.images, ((0, 0), (0, n), (0, n)), constant_values=0)
    gamma = zeros(n, 2 * n, 2 * n)
    gamma[:, n:, n:] = a.structure.transpose(2, 0, 1)
    on_dual = images[n:] - gamma
    out.add("restricts_to_minus_delta", is_zero(on_a))
    out.add("restricts_to_gamma", is_zero(on_dual))
    out.info["classification"] = check_coboundary_conditions(result.r).classification
    out.bundle = bio.make_bundle(result.algebra, r_tensor={"r": bio.r_tensor_entry(result.r)},
                                 cobracket={"delta": bio.cobracket_entry(result.cobracket)})
    return out


def cmd_ybe(b: bio.Bundle, opts) -> Report:
    name, r = b.r_tensor(_require(opts.r, "--r", "ybe"))
    names = list(r.algebra.basis_names)
    report = coboundary_axiom_report(r, opts.verbose)
    _, nondegenerate = r_as_map(r)
    out = Report("ybe", info={"r_tensor": name, "skew": report.skew,
                              "nondegenerate": nondegenerate,
                              "classification": check_coboundary_conditions(r).classification})
    out.extend(report, {"cond_i": ([names], [names] * 2), "cond_ii": ([names], [names] * 3),
                        "ybe": ([], [names] * 3)})
    return out


def cmd_ybe_operator_form(b: bio.Bundle, opts) -> Report:
    name, r = b.r_tensor(_require(opts.r, "--r", "ybe-operator-form"))
    report = check_ybe_operator_form(r, opts.verbose)
    tensor_ok = is_zero(coboundary_axiom_report(r).bracket)
    names = list(r.algebra.basis_names)
    out = Report("ybe-operator-form", info={"r_tensor": name, "ybe_tensor": tensor_ok,
                                            "agree": tensor_ok == report.ok})
    out.extend(report, {"operator_form": ([_dual(names)] * 2, [names])})
    return out


def _ybe_check(out: Report, r, labels) -> None:
    report = coboundary_axiom_report(r)
    out.add("ybe", report.ybe,
            None if report.ybe else witness(Violation("ybe", (), report.bracket), None, labels))


def cmd_lift(b: bio.Bundle, opts) -> Report:
    name, t, rep_name, rep = _map_and_rep(b, opts, "lift")
    lift = lift_O_operator(rep, t)
    names = list(lift.algebra.basis_names)
    is_o = check_O_operator(rep, t).ok
    out = Report("lift", info={"map": name, "representation": rep_name,
                               "dim": lift.algebra.dim, "o_operator": is_o})
    _ybe_check(out, lift.r, [names] * 3)
    out.info["agree"] = out.checks[-1].flag == is_o
    out.info["operator_form"] = check_ybe_operator_form(lift.r).ok
    out.bundle = bio.make_bundle(lift.algebra, r_tensor={"r": bio.r_tensor_entry(lift.r)})
    return out


def cmd_canonical_solution(b: bio.Bundle, opts) -> Report:
    p = b.prelie()
    lift = canonical_solution_from_prelie(p)
    names = list(lift.algebra.basis_names)
    out = Report("canonical-solution", info={"dim": lift.algebra.dim})
    out.add("skew", lift.r.is_skew)
    _ybe_check(out, lift.r, [names] * 3)
    out.bundle = bio.make_bundle(lift.algebra, r_tensor={"r": bio.r_tensor_entry(lift.r)})
    return out


def cmd_rota_baxter_corr(b: bio.Bundle, opts) -> Report:
    r_name, r = b.r_tensor(_require(opts.r, "--r", "rota-baxter-corr"))
    f_name, _, w = b.form(_require(opts.form, "--form", "rota-baxter-corr"))
    corr = rota_baxter_correspondence(r, w)
    out = Report("rota-baxter-corr", info={"r_tensor": r_name, "form": f_name,
                                           "ybe": corr.ybe, "rota_baxter": corr.rota_baxter,
                                           "operator": corr.operator})
    out.add("agree", corr.agree)
    return out


def cmd_check_form(b: bio.Bundle, opts) -> Report:
    name, entry, w = b.form(_require(opts.form, "--form", "check-form"))
    kind = opts.kind or entry.kind or "invariant"
    names = list(w.algebra.basis_names)
    out = Report("check-form", info={"form": name, "kind": kind})
    if kind == "symplectic":
        out.extend(check_symplectic_form(w.algebra, w),
                   {"skew": ([names] * 2, None), "cyclic": ([names] * 3, None)})
        return out
    report = check_invariant_form(w.algebra, w)
    out.extend(report, {"invariant": ([names] * 3, None), "symmetric": ([names] * 2, None)})
    out.info["rank"] = report.rank
    if report.ok:
        out.info["phi"] = equivalence_from_form(w.algebra, w)
    return out


def cmd_prelie_from_symplectic(b: bio.Bundle, opts) -> Report:
    name, _, w = b.form(_require(opts.form, "--form", "prelie-from-symplectic"))
    names = list(w.algebra.basis_names)
    report = check_symplectic_form(w.algebra, w)
    out = Report("prelie-from-symplectic", info={"form": name})
    out.extend(report, {"skew": ([names] * 2, None), "cyclic": ([names] * 3, None)})
    if report.ok:
        p = prelie_from_symplectic(w.algebra, w)
        d = p.structure
        out.add("compatible", is_zero(d + d.transpose(1, 0, 2) - w.algebra.structure))
        out.bundle = bio.make_bundle(w.algebra, prelie=p)
    return out


VERBS: dict[str, Callable[[bio.Bundle, argparse.Namespace], Report]] = {
    "check-algebra": cmd_check_algebra,
    "check-rep": cmd_check_rep,
    "check-prelie": cmd_check_prelie,
    "check-o-operator": cmd_check_o_operator,
    "semidirect": cmd_semidirect,
    "sub-adjacent": cmd_sub_adjacent,
    "cobracket": cmd_cobracket,
    "check-bialgebra": cmd_check_bialgebra,
    "check-matched-pair": cmd_check_matched_pair,
    "bicrossed": cmd_bicrossed,
    "check-manin": cmd_check_manin,
    "double": cmd_double,
    "ybe": cmd_ybe,
    "ybe-operator-form": cmd_ybe_operator_form,
    "lift": cmd_lift,
    "canonical-solution": cmd_canonical_solution,
    "rota-baxter-corr": cmd_rota_baxter_corr,
    "check-form": cmd_check_form,
    "prelie-from-symplectic": cmd_prelie_from_symplectic,
}


def _options(**kwargs) -> argparse.Namespace:
    defaults = dict(r=None, rep=None, T=None, form=None, cobracket=None, kind=None,
                    verbose=False)
    defaults.update(kwargs)
    return argparse.Namespace(**defaults)


def run_command(verb: str, bundle: bio.Bundle, **options) -> Report:
    """Dispatch ``verb`` on a loaded bundle; options mirror the CLI flags."""
    if verb not in VERBS:
        raise UnknownVerb(f"unknown verb {verb!r}; expected one of {', '.join(VERBS)}")
    opts = options.pop("opts", None) or _options(**options)
    return VERBS[verb](bundle, opts)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mlb", description="Verify and construct mock-Lie algebras, bialgebras and "
                                "Yang-Baxter solutions from JSON bundles.")
    p.add_argument("verb", help="one of: " + ", ".join(VERBS))
    p.add_argument("bundle", help="path to a bundle JSON file (fixtures/NAME.json "
                                  "falls back to the packaged fixtures)")
    p.add_argument("--r", help="name of an r_tensor entry")
    p.add_argument("--rep", help="name of a representation (builtins: adjoint, coadjoint)")
    p.add_argument("--T", help="name of a linear_map entry")
    p.add_argument("--form", help="name of a bilinear_form entry")
    p.add_argument("--cobracket", help="name of a cobracket entry")
    p.add_argument("--kind", choices=bio.FORM_KINDS, help="form check for check-form")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--verbose", action="store_true",
                   help="list every violation instead of the first per check")
    p.add_argument("--emit-bundle", metavar="PATH",
                   help="also write the constructed bundle to PATH")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb not in VERBS:
            raise UnknownVerb(f"unknown verb {args.verb!r}; expected one of {', '.join(VERBS)}")
        report = run_command(args.verb, bio.load_bundle(args.bundle), opts=args)
    except INPUT_ERRORS as exc:
        print(f"mlb: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.buffer.write(emit(report, args.format))
    sys.stdout.flush()
    if args.emit_bundle and report.bundle is not None:
        with open(args.emit_bundle, "w", encoding="utf-8") as fh:
            fh.write(bio.dumps_bundle(report.bundle))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
