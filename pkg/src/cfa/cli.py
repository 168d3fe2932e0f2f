"""Command line driver: ``cfa <command> --algebra <file|builtin> [options]``.

Exit codes: 0 pass / positive answer, 1 verified violation or negative answer,
2 usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .algebra import check_axioms, vec_str
from .builtins import BUILTIN_MODULE_SPECS, BUILTIN_SPECS, BuiltinError, builtin_algebra, builtin_module
from .cohomology import CocycleError, central_extend, cocycle_check, h2_dimension, is_coboundary
from .dsl import DslError, emit_algebra, parse
from .lie import LieDataError
from .modes import expand_modes, expand_module_modes, jacobi_check, locality_order
from .modules import (ModuleError, invariants, is_irreducible_rank1, is_split, module_check,
                      rep_to_gc)
from .scalars import is_scalar, scalar_str
from .report import algebra_json, cocycle_json, emit_json, module_json, products_json, vec_terms
from .structure import (center, derived_series, find_proper_ideal, is_ideal, is_nilpotent,
                        is_solvable, lower_central_series)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(default=0):
    raw = os.environ.get("CFA_SEED")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CFA_SEED must be an integer, got {raw!r}") from None


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def load_algebra(spec):
    """A file path (last algebra in it, or ``file::name``) or a builtin spec."""
    if spec is None:
        raise UsageError("--algebra is required")
    path, _, name = spec.partition("::")
    if os.path.exists(path):
        doc = parse(_read(path))
        if name:
            if name not in doc.algebras:
                raise UsageError(f"{path} defines no algebra {name!r}")
            return doc.algebras[name], doc
        if not doc.algebras:
            raise UsageError(f"{path} defines no algebra")
        return list(doc.algebras.values())[-1], doc
    return builtin_algebra(spec), None


def _env(R, doc):
    env = {"algebras": {}, "lies": {}}
    if doc is not None:
        env["algebras"].update(doc.algebras)
        env["lies"].update(doc.lies)
    if R is not None:
        env["algebras"].setdefault(R.name, R)
    return env


def load_module(spec, R=None, doc=None):
    if spec is None:
        raise UsageError("--module is required")
    path, _, name = spec.partition("::")
    if os.path.exists(path):
        d = parse(_read(path), _env(R, doc))
        if not d.modules:
            raise UsageError(f"{path} defines no module")
        if name:
            if name not in d.modules:
                raise UsageError(f"{path} has no module {name!r}")
            return d.modules[name]
        return list(d.modules.values())[-1]
    return builtin_module(spec)


def _window(text):
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like -6..6") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty window")
    return lo, hi


def _txt(obj):
    """Readable form of nested witness data."""
    if is_scalar(obj):
        return scalar_str(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{_txt(k)}: {_txt(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "(" + ", ".join(_txt(v) for v in obj) + ")"
    return str(obj)


def _vecs(vecs, names):
    return [vec_str(v, names) for v in vecs]


def _series_json(series):
    return [{"basis": [vec_terms(v, s.algebra.names) for v in s.basis_vectors()],
             "size": [s.size().r, s.size().d]} for s in series]


# ---------------------------------------------------------------------------
# commands: each returns (exit code, report dict, text lines)


def cmd_check(a):
    R, _ = load_algebra(a.algebra)
    rep = check_axioms(R, shift_degree=a.shift_degree, max_violations=a.max_violations)
    lines = [f"{R.name}: {rep.summary()}"]
    lines += [f"  {v.axiom} at {v.where} m={v.m} n={v.n}: {v.lhs} != {v.rhs}"
              for v in rep.violations[:20]]
    report = {"algebra": R.name, "status": "pass" if rep.passed else "fail",
              "checked": rep.checked, "violations": [v.as_dict() for v in rep.violations]}
    return (EXIT_OK if rep.passed else EXIT_FAIL), report, lines


def cmd_table(a):
    R, _ = load_algebra(a.algebra)
    if a.format == "dsl":
        lines = emit_algebra(R).rstrip("\n").splitlines()
    else:
        lines = [f"{R.names[i]}_({n}){R.names[j]} = {vec_str(v, R.names)}"
                 for (i, j, n), v in sorted(R.table.items())]
        lines.insert(0, f"{R.name}: rank {R.rank}, generators "
                        + ", ".join(f"{n}{'(odd)' if p else ''}" for n, p in R.generators))
    report = algebra_json(R)
    report["status"] = "pass"
    return EXIT_OK, report, lines


def _series_cmd(a, fn, label):
    R, _ = load_algebra(a.algebra)
    s = fn(R, a.depth)
    lines = [f"{label}[{k}] size={m.size()}: {m.describe()}" for k, m in enumerate(s)]
    ok = all(is_ideal(m) for m in s)
    lines.append(f"ideal check: {'ok' if ok else 'FAILED'}")
    report = {"algebra": R.name, "series": _series_json(s), "ideals_verified": ok,
              "status": "pass" if ok else "fail"}
    return (EXIT_OK if ok else EXIT_FAIL), report, lines


def cmd_derived(a):
    return _series_cmd(a, derived_series, "R^(k)")


def cmd_lcs(a):
    return _series_cmd(a, lower_central_series, "R^k")


def cmd_center(a):
    R, _ = load_algebra(a.algebra)
    Z = center(R)
    lines = [f"center of {R.name}: {Z.describe() or '0'}", f"size: {Z.size()}"]
    report = {"algebra": R.name, "status": "pass",
              "center": [vec_terms(v, R.names) for v in Z.basis_vectors()],
              "size": [Z.size().r, Z.size().d]}
    return EXIT_OK, report, lines


def _yesno_cmd(a, fn, word):
    R, _ = load_algebra(a.algebra)
    res = fn(R, a.depth)
    lines = [f"{R.name} {word}: {res.status} (depth {res.depth})"]
    if res.cross_check is not None:
        lines.append(f"operator cross-check: {res.cross_check}")
    report = {"algebra": R.name, "status": res.status, "depth": res.depth,
              "series": _series_json(res.series), "cross_check": res.cross_check}
    return (EXIT_OK if res.value else EXIT_FAIL), report, lines


def cmd_solvable(a):
    return _yesno_cmd(a, is_solvable, "solvable")


def cmd_nilpotent(a):
    return _yesno_cmd(a, is_nilpotent, "nilpotent")


def cmd_simple(a):
    R, _ = load_algebra(a.algebra)
    seed = _seed()
    if not R.table:
        lines = [f"{R.name} is abelian (all products vanish): not simple"]
        return EXIT_FAIL, {"algebra": R.name, "status": "abelian"}, lines
    ideal = find_proper_ideal(R, budget=a.budget, seed=seed)
    if ideal is not None:
        lines = [f"{R.name} is not simple; proper ideal: {ideal.describe()}"]
        report = {"algebra": R.name, "status": "not-simple",
                  "ideal": [vec_terms(v, R.names) for v in ideal.basis_vectors()],
                  "verified": is_ideal(ideal)}
        return EXIT_FAIL, report, lines
    lines = [f"{R.name}: no proper ideal found within budget (evidence, not proof)"]
    report = {"algebra": R.name, "status": "no-ideal-within-budget", "seed": seed,
              "budget": a.budget}
    return EXIT_OK, report, lines


def cmd_h2(a):
    R, _ = load_algebra(a.algebra)
    res = h2_dimension(R, a.nbound, a.fbound)
    lines = [f"dim H^2({R.name}) = {res.dim}  (n_bound={a.nbound}, f_degree_bound={a.fbound})"]
    for k, rep in enumerate(res.representatives):
        lines.append(f"  representative {k + 1}: " + ", ".join(
            f"alpha_{n}({x},{y})={v}" for (x, y, n), v in rep.named().items()))
    report = {"algebra": R.name, "dim": res.dim, "n_bound": a.nbound, "f_degree_bound": a.fbound,
              "dim_cocycles": res.dim_cocycles, "dim_trivial": res.dim_trivial,
              "representatives": [cocycle_json(r) for r in res.representatives], "status": "pass"}
    return EXIT_OK, report, lines


def cmd_extend(a):
    R, doc = load_algebra(a.algebra)
    if a.cocycle is None:
        raise UsageError("--cocycle is required")
    d = parse(_read(a.cocycle), _env(R, doc))
    if not d.cocycles:
        raise UsageError(f"{a.cocycle} defines no cocycle")
    alpha = d.cocycles[-1]
    rep = cocycle_check(alpha)
    if not rep.passed:
        lines = ["cocycle check FAILED"] + [f"  {_txt(v)}" for v in rep.violations[:20]]
        return EXIT_FAIL, {"status": "invalid-cocycle", "violations": rep.violations}, lines
    ext = central_extend(alpha.algebra, alpha)
    ax = check_axioms(ext.algebra)
    cob, f = is_coboundary(alpha)
    lines = [f"extension {ext.algebra.name}: axioms {ax.summary()}",
             f"coboundary: {cob}" + (f" (f = {f})" if cob else "")]
    lines += emit_algebra(ext.algebra).rstrip("\n").splitlines()
    report = {"status": "pass" if ax.passed else "fail", "extension": algebra_json(ext.algebra),
              "coboundary": cob, "witness": [[k[0], k[1], v] for k, v in sorted((f or {}).items())]}
    return (EXIT_OK if ax.passed else EXIT_FAIL), report, lines


def cmd_modes(a):
    if a.module:
        R, doc = (load_algebra(a.algebra) if a.algebra else (None, None))
        M = load_module(a.module, R, doc)
        MT, rep = expand_module_modes(M, a.window)
        lines = [f"module modes of {M.name} on window {a.window[0]}..{a.window[1]}: "
                 f"{'pass' if rep.passed else 'FAIL'} (checked {rep.checked}, skipped {rep.skipped})"]
        lines += [f"  {_txt(v)}" for v in rep.violations]
        report = {"module": M.name, "window": list(a.window), "status": "pass" if rep.passed else "fail",
                  "checked": rep.checked, "skipped": rep.skipped, "violations": rep.violations,
                  "actions": [{"x": MT.algebra_modes.label(x), "v": MT.label(v),
                               "rhs": {MT.label(k): c for k, c in sorted(val.items())}}
                              for (x, v), val in sorted(MT.action.items())]}
        return (EXIT_OK if rep.passed else EXIT_FAIL), report, lines
    R, _ = load_algebra(a.algebra)
    T = expand_modes(R, a.window)
    lines = [f"{R.name}: {len(T.modes)} modes on window {a.window[0]}..{a.window[1]}, "
             f"{len(T.brackets)} nonzero brackets, {len(T.lost)} truncated"]
    report = {"algebra": R.name, "window": list(a.window),
              "locality": {f"{R.names[i]},{R.names[j]}": locality_order(R, i, j)
                           for i in range(R.rank) for j in range(R.rank)},
              "brackets": [{"x": T.label(x), "y": T.label(y),
                            "rhs": {T.label(k): c for k, c in sorted(v.items())},
                            "truncated": (x, y) in T.lost}
                           for (x, y), v in sorted(T.brackets.items())]}
    code = EXIT_OK
    report["status"] = "pass"
    if a.check_jacobi:
        rep = jacobi_check(T)
        lines.append(f"jacobi: {'pass' if rep.passed else 'FAIL'} ({rep.checked} triples checked, "
                     f"{rep.skipped} skipped at the window edge, engine {rep.engine})")
        lines += [f"  {_txt(v)}" for v in rep.violations]
        lines += [f"  antisymmetry {p}" for p in rep.antisymmetry_violations]
        report.update(jacobi={"passed": rep.passed, "checked": rep.checked, "skipped": rep.skipped,
                              "violations": rep.violations,
                              "antisymmetry": rep.antisymmetry_violations})
        if not rep.passed:
            code = EXIT_FAIL
            report["status"] = "fail"
    if a.show:
        lines += [f"[{T.label(x)}, {T.label(y)}] = " + " + ".join(
            f"({c}) {T.label(k)}" for k, c in sorted(v.items())) for (x, y), v in sorted(T.brackets.items())]
    return code, report, lines


def cmd_module(a):
    R, doc = (load_algebra(a.algebra) if a.algebra else (None, None))
    M = load_module(a.module, R, doc)
    sub = a.sub
    if sub == "check":
        rep = module_check(M)
        lines = [f"{M.name}: {rep.summary()}"] + [f"  {_txt(v.as_dict())}" for v in rep.violations[:20]]
        return ((EXIT_OK if rep.passed else EXIT_FAIL),
                {"module": module_json(M), "status": "pass" if rep.passed else "fail",
                 "violations": [v.as_dict() for v in rep.violations]}, lines)
    if sub == "split":
        if not M.sub:
            raise UsageError("module has no distinguished submodule to split off")
        res = is_split(M)
        lines = [f"{M.name}: {'split' if res else 'non-split'} (submodule {_vecs(M.sub, M.names)})"]
        return (EXIT_OK if res else EXIT_FAIL), {"module": M.name, "split": bool(res),
                                                 "status": "split" if res else "non-split"}, lines
    if sub == "irreducible":
        res = is_irreducible_rank1(M)
        lines = [f"{M.name}: {'irreducible' if res else 'reducible'}"]
        return (EXIT_OK if res else EXIT_FAIL), {"module": M.name, "irreducible": res,
                                                 "status": "irreducible" if res else "reducible"}, lines
    if sub == "invariants":
        inv = invariants(M)
        lines = [f"invariants of {M.name}: {_vecs(inv, M.names) or '0'}"]
        return EXIT_OK, {"module": M.name, "status": "pass",
                         "invariants": [vec_terms(v, M.names) for v in inv]}, lines
    if sub in ("gc", "to-gc"):
        _, rep = rep_to_gc(M)
        lines = [f"{M.name} -> gc_{M.rank}: homomorphism={rep['homomorphism']}, "
                 f"faithful={rep['faithful']}"]
        ok = rep["homomorphism"]
        report = {"module": M.name, "status": "pass" if ok else "fail",
                  "homomorphism": ok, "faithful": rep["faithful"],
                  "failures": rep["failures"],
                  "kernel": [vec_terms(v, M.algebra.names) for v in rep["kernel"]]}
        return (EXIT_OK if ok else EXIT_FAIL), report, lines
    raise UsageError(f"unknown module subcommand {sub!r}")


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="cfa", description="Finite conformal superalgebras: checks, structure, cohomology, modes.",
        epilog="builtin algebras: " + ", ".join(BUILTIN_SPECS)
               + "; builtin modules: " + ", ".join(BUILTIN_MODULE_SPECS))
    p.add_argument("--version", action="version", version=f"cfa {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", "-a", help="DSL file (optionally file::name) or builtin spec")
    common.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    common.add_argument("--quiet", "-q", action="store_true", help="suppress text output")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verify the conformal algebra axioms")
    c.add_argument("--shift-degree", type=int, default=3)
    c.add_argument("--max-violations", type=int, default=None)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("table", parents=[common], help="print the product table")
    c.add_argument("--format", choices=["text", "dsl"], default="text")
    c.set_defaults(func=cmd_table)

    for name, fn, hlp in (("derived", cmd_derived, "derived series"),
                          ("lcs", cmd_lcs, "lower central series"),
                          ("solvable", cmd_solvable, "solvability via the derived series"),
                          ("nilpotent", cmd_nilpotent, "nilpotency via the lower central series")):
        c = sub.add_parser(name, parents=[common], help=hlp)
        c.add_argument("--depth", type=int, default=None)
        c.set_defaults(func=fn)

    c = sub.add_parser("center", parents=[common], help="center of the algebra")
    c.set_defaults(func=cmd_center)

    c = sub.add_parser("simple", parents=[common], help="bounded search for a proper ideal")
    c.add_argument("--budget", type=int, default=None)
    c.set_defaults(func=cmd_simple)

    c = sub.add_parser("h2", parents=[common], help="truncated second cohomology")
    c.add_argument("--nbound", type=int, default=6)
    c.add_argument("--fbound", type=int, default=8)
    c.set_defaults(func=cmd_h2)

    c = sub.add_parser("extend", parents=[common], help="central extension by a cocycle file")
    c.add_argument("--cocycle", help="cocycle DSL file")
    c.set_defaults(func=cmd_extend)

    c = sub.add_parser("modes", parents=[common], help="mode expansion (oracle)")
    c.add_argument("--window", type=_window, default=(-6, 6))
    c.add_argument("--check-jacobi", action="store_true")
    c.add_argument("--module", help="module DSL file or builtin module spec")
    c.add_argument("--show", action="store_true", help="print every bracket")
    c.set_defaults(func=cmd_modes)

    c = sub.add_parser("module", parents=[common], help="module commands")
    c.add_argument("sub", choices=["check", "split", "irreducible", "invariants", "gc", "to-gc"])
    c.add_argument("--module", "-m", help="module DSL file or builtin module spec")
    c.set_defaults(func=cmd_module)
    return p


def _write_json(target, report):
    data = emit_json(report)
    if target == "-":
        sys.stdout.write(data.decode("utf-8") + "\n")
    else:
        try:
            Path(target).write_bytes(data + b"\n")
        except OSError as exc:
            raise UsageError(f"cannot write {target}: {exc}") from None


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        code, report, lines = args.func(args)
        report = {"command": args.command, **report}
        if args.json:
            _write_json(args.json, report)
        if not args.quiet and args.json != "-":
            print("\n".join(lines))
        return code
    except (UsageError, DslError, BuiltinError, LieDataError, ModuleError, CocycleError) as exc:
        print(f"cfa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
