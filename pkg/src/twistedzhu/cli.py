"""Batch front end.

Each subcommand drives one workbench pipeline and writes a JSON report
with a stable field order.  Exit codes: 0 all checks passed, 1 a check
failed (the report carries the witness), 2 configuration or schema error,
3 insufficient mode-table coverage.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .errors import (
    AxiomViolation,
    InsufficientTable,
    NotAModule,
    SchemaError,
    TwistedZhuError,
)
from .indexcalc import LemmaBox, verify_binomial_identities, verify_index_lemmas
from .quotient import (
    FCircModes,
    FiniteModule,
    bimodule_present,
    fcirc_associativity_check,
    fcirc_commutativity_check,
    fcirc_l0_commutator_check,
    fusion_upper_bound,
    generated_submodule,
    induce,
    l0_decompose,
    l0_matrix,
    vacuum_action_identity,
    zhu_algebra,
)
from .scalars import F, rat
from .voacore import (
    ModuleMapHandle,
    Window,
    builtin,
    check_conjugation_L1,
    load_modefile,
    validate_module_axioms,
)
from .zhuprod import Quadruple

REPORT_SCHEMA = "twistedzhu-report/1"


def _frac(text) -> Fraction:
    return rat(text)


def _load_inputs(args):
    """Resolve --builtin / --modefile selectors into data objects."""
    if getattr(args, "modefile", None):
        with open(args.modefile) as fh:
            doc = json.load(fh)
        voa = None
        if getattr(args, "voafile", None):
            with open(args.voafile) as fh:
                voa = load_modefile(json.load(fh))
        return load_modefile(doc, voa=voa)
    name = getattr(args, "builtin", None)
    if name is None:
        raise SchemaError("either --builtin or --modefile is required")
    W = Window.of(_frac(args.window), _frac(getattr(args, "mwindow", None) or args.window))
    return builtin(name, W)


def _report_path(args, name: str) -> str:
    out = args.out or os.environ.get("TWISTEDZHU_OUT") or "."
    os.makedirs(out, exist_ok=True)
    return os.path.join(out, name)


def _emit(args, name: str, payload: dict) -> str:
    path = _report_path(args, name)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return path


def _finish(args, command: str, payload: dict, passed: bool) -> int:
    payload = {"schema": REPORT_SCHEMA, "command": command, "passed": passed, **payload}
    path = _emit(args, f"{command}.json", payload)
    print(f"[{command}] {'pass' if passed else 'FAIL'} -> {path}")
    return 0 if passed else 1


def cmd_lemmas(args) -> int:
    Ts = tuple(int(t) for t in args.T.split(","))
    box = LemmaBox(Ts, -args.box, args.box)
    reports = verify_index_lemmas(box)
    rng = random.Random(args.seed)
    samples = [
        (Fraction(rng.randint(-12, 12), rng.randint(1, 6)),
         Fraction(rng.randint(-12, 12), rng.randint(1, 6)))
        for _ in range(args.samples)
    ]
    reports += verify_binomial_identities(args.lmax, samples)
    for rep in reports:
        print(f"  {rep.name}: {rep.cases} cases, {'pass' if rep.passed else 'FAIL'}")
    payload = {
        "box": {"Ts": Ts, "range": args.box},
        "seed": args.seed,
        "checks": [rep.to_json() for rep in reports],
    }
    return _finish(args, "lemmas", payload, all(r.passed for r in reports))


def cmd_axioms(args) -> int:
    V = _load_inputs(args)
    if V.kind != "voa":
        raise SchemaError("axioms expects algebra data plus --module")
    if args.module == "self":
        M = V
    elif args.module == "theta":
        M = builtin("heisenberg_theta_twisted", Window.of(V.basis.max_deg(), _frac(args.mwindow)), voa=V)
    elif args.module:
        with open(args.module) as fh:
            M = load_modefile(json.load(fh), voa=V)
    else:
        raise SchemaError("--module is required (self, theta, or a mode file)")
    checks = []
    try:
        rep = validate_module_axioms(V, M, Window.of(_frac(args.vwt), _frac(args.window)), x_range=args.grid)
        checks += rep.to_json()
        passed = rep.passed
    except AxiomViolation as exc:
        checks.append({"name": "module-axioms", "passed": False, "witness": repr(exc.witness)})
        passed = False
    if passed and args.conjugation:
        labels = [lab for lab in V.basis.labels(F(2)) if lab != V.vacuum]
        for a in labels[: args.conjugation]:
            rep = check_conjugation_L1(M, a, M.basis.labels()[0], min(F(3), M.basis.max_deg()))
            checks += rep.to_json()
            passed = passed and rep.passed
    payload = {"module": args.module, "window": str(args.window), "checks": checks}
    if M.kind == "module":
        payload["conformal_weight"] = str(M.h)
    return _finish(args, "axioms", payload, passed)


def cmd_zhu(args) -> int:
    V = _load_inputs(args)
    alg = zhu_algebra(V, args.g, _frac(args.n), _frac(args.window),
                      _frac(args.gen_window) if args.gen_window else None,
                      _frac(args.report_window) if args.report_window else None)
    passed = all(c[1] for c in alg.checks)
    print(f"  dim A = {alg.dim}; omega class = {alg.omega_coords}")
    payload = {"algebra": alg.to_json(), "window": str(args.window)}
    return _finish(args, "zhu", payload, passed)


def cmd_bimodule(args) -> int:
    V = _load_inputs(args)
    Q = Quadruple(V, args.g1, args.g2, args.g3, args.T)
    handles = []
    if args.kernel_handle == "theta":
        M = builtin("heisenberg_theta_twisted", Window.of(V.basis.max_deg(), _frac(args.mwindow)), voa=V)
        handles.append(ModuleMapHandle(V, M))
    bim = bimodule_present(
        V, Q, _frac(args.n), _frac(args.m), _frac(args.window),
        _frac(args.gen_window) if args.gen_window else None,
        handles=handles or None,
        report_window=_frac(args.report_window) if args.report_window else None,
    )
    lower, upper = bim.sandwich
    sandwich_ok = upper is None or lower <= upper
    passed = sandwich_ok and all(c[1] for c in bim.checks)
    print(f"  dim = {bim.dim}; sandwich ranks = {bim.sandwich}; stabilized = {bim.stabilization}")
    payload = {"bimodule": bim.to_json(), "sandwich_ok": sandwich_ok}
    return _finish(args, "bimodule", payload, passed)


def cmd_induce(args) -> int:
    V = _load_inputs(args)
    Q = Quadruple(V, args.g1, args.g2, args.g3, args.T)
    right = zhu_algebra(V, args.g2, _frac(args.m), _frac(args.alg_window),
                        report_window=_frac(args.alg_report))
    U = FiniteModule.one_dimensional(right, {V.vacuum: F(1)})
    mod = induce(V, Q, _frac(args.m), U, _frac(args.maxN), _frac(args.window),
                 rel_window=_frac(args.rel_window),
                 report_window=_frac(args.report_window) if args.report_window else None)
    dims = {str(k): v for k, v in mod.dims().items()}
    vac_ok = vacuum_action_identity(mod)
    print(f"  graded dims: {dims}; vacuum acts as identity: {vac_ok}")
    payload = {"dims": dims, "vacuum_identity": vac_ok, "window": str(args.window)}
    return _finish(args, "induce", payload, vac_ok)


def cmd_tensor(args) -> int:
    V = _load_inputs(args)
    Q = Quadruple(V, args.g1, args.g2, args.g3, args.T)
    right = zhu_algebra(V, args.g2, _frac(args.m), _frac(args.alg_window),
                        report_window=_frac(args.alg_report))
    U = FiniteModule.one_dimensional(right, {V.vacuum: F(1)})
    mod = induce(V, Q, _frac(args.m), U, _frac(args.maxN), _frac(args.window),
                 rel_window=_frac(args.rel_window),
                 report_window=_frac(args.report_window) if args.report_window else None)
    fc = FCircModes(mod, mod)
    failures = []
    wt_max = F(args.vwt)
    pieces = [p for p in sorted(mod.pieces) if p <= _frac(args.piece_max)]
    for a in V.basis.labels(wt_max):
        for v in V.basis.labels(wt_max):
            for p in pieces:
                fcirc_associativity_check(fc, a, v, p, x_range=args.grid, rep=failures)
                fcirc_commutativity_check(fc, a, v, p, x_range=args.grid, rep=failures)
    for v in V.basis.labels(wt_max):
        for p in pieces:
            fcirc_l0_commutator_check(fc, v, p, idx_range=args.grid, rep=failures)
    blocks = {}
    for p in pieces:
        dec = l0_decompose(l0_matrix(mod, p))
        blocks[str(p)] = {str(k): len(vs) for k, vs in dec.items()}
    sub = generated_submodule(mod, _frac(args.m))
    sub_dims = {str(k): b.rank for k, b in sub.items()}
    passed = not failures
    print(f"  identity failures: {len(failures)}; weight blocks: {blocks}")
    payload = {
        "identity_failures": [repr(f[:5]) for f in failures[:5]],
        "weight_blocks": blocks,
        "generated_submodule_dims": sub_dims,
    }
    return _finish(args, "tensor", payload, passed)


def cmd_fusion(args) -> int:
    V = _load_inputs(args)
    Q = Quadruple(V, args.g1, args.g2, args.g3, args.T)
    mods = {}
    for slot in ("M2", "M3"):
        sel = getattr(args, slot)
        if sel != "theta":
            raise SchemaError(f"--{slot} must be 'theta' (user intertwiner tables attach in the API)")
        mods[slot] = builtin(
            "heisenberg_theta_twisted", Window.of(V.basis.max_deg(), _frac(args.mwindow)), voa=V
        )
    rep = fusion_upper_bound(
        V, Q, mods["M2"], mods["M3"], _frac(args.m), _frac(args.window),
        report_window=_frac(args.report_window) if args.report_window else None,
        act_window=args.act_window,
    )
    print(f"  fusion upper bound = {rep.value}; stabilized = {rep.stabilized}")
    payload = {"fusion": rep.to_json()}
    return _finish(args, "fusion", payload, rep.stabilized)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistedzhu", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="report directory (default $TWISTEDZHU_OUT or .)")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("lemmas", help="exhaustive index-lemma and binomial-identity suites")
    p.add_argument("--T", default="1,2,3,4,6")
    p.add_argument("--box", type=int, default=6)
    p.add_argument("--lmax", type=int, default=12)
    p.add_argument("--samples", type=int, default=50)
    common(p)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("axioms", help="validate module axioms against a table")
    p.add_argument("--builtin", default="heisenberg")
    p.add_argument("--modefile")
    p.add_argument("--voafile")
    p.add_argument("--module", default="theta", help="self, theta, or a module mode-file path")
    p.add_argument("--window", default="10", help="algebra-side window")
    p.add_argument("--mwindow", default="4", help="module-side window")
    p.add_argument("--vwt", default="2", help="max weight of acting elements in the sweep")
    p.add_argument("--grid", type=int, default=2)
    p.add_argument("--conjugation", type=int, default=2, help="how many conjugation spot checks")
    common(p)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("zhu", help="level-n algebra presentation")
    p.add_argument("--builtin", default="heisenberg")
    p.add_argument("--modefile")
    p.add_argument("--g", default="theta")
    p.add_argument("--n", default="0")
    p.add_argument("--window", default="6")
    p.add_argument("--gen-window", dest="gen_window")
    p.add_argument("--report-window", dest="report_window")
    common(p)
    p.set_defaults(func=cmd_zhu)

    p = sub.add_parser("bimodule", help="level-(n, m) bimodule presentation with sandwich")
    p.add_argument("--builtin", default="heisenberg")
    p.add_argument("--modefile")
    p.add_argument("--T", type=int, default=2)
    p.add_argument("--g1", default="id")
    p.add_argument("--g2", default="theta")
    p.add_argument("--g3", default="theta")
    p.add_argument("--n", default="0")
    p.add_argument("--m", default="0")
    p.add_argument("--window", default="6")
    p.add_argument("--gen-window", dest="gen_window")
    p.add_argument("--report-window", dest="report_window")
    p.add_argument("--kernel-handle", dest="kernel_handle", default="theta")
    p.add_argument("--mwindow", default="4")
    common(p)
    p.set_defaults(func=cmd_bimodule)

    p = sub.add_parser("induce", help="induced twisted module from a bottom module")
    p.add_argument("--builtin", default="heisenberg")
    p.add_argument("--modefile")
    p.add_argument("--T", type=int, default=2)
    p.add_argument("--g1", default="id")
    p.add_argument("--g2", default="theta")
    p.add_argument("--g3", default="theta")
    p.add_argument("--m", default="0")
    p.add_argument("--maxN", default="3")
    p.add_argument("--window", default="10")
    p.add_argument("--rel-window", dest="rel_window", default="7")
    p.add_argument("--report-window", dest="report_window", default="6")
    p.add_argument("--alg-window", dest="alg_window", default="8")
    p.add_argument("--alg-report", dest="alg_report", default="5")
    common(p)
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("tensor", help="canonical mode maps: identities, blocks, submodule")
    p.add_argument("--builtin", default="heisenberg")
    p.add_argument("--modefile")
    p.add_argument("--T", type=int, default=2)
    p.add_argument("--g1", default="id")
    p.add_argument("--g2", default="theta")
    p.add_argument("--g3", default="theta")
    p.add_argument("--m", default="0")
    p.add_argument("--maxN", default="2")
    p.add_argument("--window", default="11")
    p.add_argument("--rel-window", dest="rel_window", default="7")
    p.add_argument("--report-window", dest="report_window", default="6")
    p.add_argument("--alg-window", dest="alg_window", default="8")
    p.add_argument("--alg-report", dest="alg_report", default="5")
    p.add_argument("--vwt", default="2")
    p.add_argument("--piece-max", dest="piece_max", default="1")
    p.add_argument("--grid", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("fusion", help="fusion-rule upper bound via the tensor piece")
    p.add_argument("--builtin", default="heisenberg")
    p.add_argument("--modefile")
    p.add_argument("--T", type=int, default=2)
    p.add_argument("--g1", default="id")
    p.add_argument("--g2", default="theta")
    p.add_argument("--g3", default="theta")
    p.add_argument("--M2", default="theta")
    p.add_argument("--M3", default="theta")
    p.add_argument("--m", default="0")
    p.add_argument("--window", default="8")
    p.add_argument("--mwindow", default="4")
    p.add_argument("--report-window", dest="report_window", default="4")
    p.add_argument("--act-window", dest="act_window", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_fusion)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InsufficientTable as exc:
        print(f"error: insufficient table: {exc}", file=sys.stderr)
        return 3
    except (SchemaError, NotAModule, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AxiomViolation as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except TwistedZhuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
