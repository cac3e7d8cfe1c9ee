"""``hookdet`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 guard abort.
Everything printed to stdout is JSON (DOT for the ``dot`` verb) unless
``--pretty`` is given; output is deterministic for a fixed argv and seed.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from hookdet import blockhook as bh
from hookdet import hooks, lgv
from hookdet.errors import GuardAbort, HookdetError
from hookdet.matrix import (PolyMatrix, apply_swaps, det_cofactor, det_eval_bareiss,
                            det_subset_dp)
from hookdet.poly import parse, render

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

VERB_GRAMMAR = ("hookdet <verb> [--shape A|B|C|D] [--family A|B|C|D|E|Ep|F|Fp|G|Gp] "
                "[--N n] [--m m] [--schedule none|family|<custom>] [--seed s] "
                "[--evals k] [--out path] [--pretty]")


class UsageError(HookdetError):
    pass


def _shape(s):
    try:
        return hooks.HookShape(s.strip().upper())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown shape {s!r} (A|B|C|D)") from None


def _family(s):
    try:
        return bh.BlockFamily.parse(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hookdet", description="Exact block hook determinants.",
                                epilog=VERB_GRAMMAR)
    sub = p.add_subparsers(dest="verb", metavar="verb", required=True)

    def common(sp, *, matrix=True, graph=False):
        if matrix:
            sp.add_argument("--shape", type=_shape)
            sp.add_argument("--family", type=_family)
        sp.add_argument("--N", type=_positive, dest="N")
        sp.add_argument("--m", type=_positive, dest="m")
        if graph:
            sp.add_argument("--schedule", default="none")
        sp.add_argument("--out")
        sp.add_argument("--pretty", action="store_true")

    sp = sub.add_parser("gen", help="emit a hook or block hook matrix as JSON")
    common(sp)

    sp = sub.add_parser("det", help="determinant of a generated or JSON matrix")
    common(sp)
    sp.add_argument("--in", dest="infile", help="matrix JSON file")
    sp.add_argument("--engine", choices=["subset", "cofactor"], default="subset")
    sp.add_argument("--expect", help="expected determinant; exit 1 on mismatch")
    sp.add_argument("--max-order", type=_positive)

    sp = sub.add_parser("formula", help="closed-form determinant")
    common(sp)

    sp = sub.add_parser("verify", help="check a determinant theorem instance")
    common(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--evals", type=_nonneg, default=50)
    sp.add_argument("--timings", action="store_true")

    for verb, text in (("lgv", "vertex-disjoint path systems on a Γ digraph"),
                       ("dot", "Graphviz export of a Γ digraph")):
        sp = sub.add_parser(verb, help=text)
        common(sp, matrix=False, graph=True)
        sp.add_argument("--family", type=_family)
        if verb == "lgv":
            sp.add_argument("--max-candidates", type=_positive, default=lgv.MAX_CANDIDATES)
            sp.add_argument("--max-paths", type=_positive, default=lgv.MAX_PATHS)

    sp = sub.add_parser("suite", help="run an acceptance grid")
    sp.add_argument("scope", choices=["hooks", "blocks", "lgv", "all"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--evals", type=_nonneg, default=50)
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--timings", action="store_true")
    sp.add_argument("--out")
    sp.add_argument("--pretty", action="store_true")
    return p


def _matrix_from_args(a) -> tuple[PolyMatrix, dict]:
    if getattr(a, "infile", None):
        with open(a.infile, encoding="utf-8") as fh:
            return PolyMatrix.from_json(fh.read()), {"source": a.infile}
    if a.shape and a.family:
        raise UsageError("give either --shape or --family, not both")
    if a.shape:
        if a.m is None:
            raise UsageError("--shape needs --m")
        return hooks.hook_matrix(a.shape, a.m), {"shape": a.shape.value, "m": a.m}
    if a.family:
        if a.m is None or a.N is None:
            raise UsageError("--family needs --N and --m")
        return bh.block_hook_matrix(a.family, a.N, a.m), {"family": a.family.value,
                                                          "N": a.N, "m": a.m}
    raise UsageError("need --shape, --family or --in")


def parse_schedule(text: str, N: int, family) -> tuple[list, list]:
    """``none``, ``family`` or ``rows=1,3;cols=2`` (either part optional)."""
    t = text.strip()
    if t == "none":
        return [], []
    if t == "family":
        if family is None:
            raise UsageError("--schedule family needs --family")
        r, c = bh.reversal_pattern(family, N)
        return sorted(r), sorted(c)
    rows, cols = [], []
    for part in filter(None, (s.strip() for s in t.split(";"))):
        key, _, vals = part.partition("=")
        key = key.strip()
        if key not in ("rows", "cols") or not _:
            raise UsageError(f"bad schedule part {part!r}; expected rows=...;cols=...")
        try:
            ids = [int(v) for v in vals.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"bad block index list {vals!r}") from None
        for b in ids:
            if not 1 <= b <= N:
                raise UsageError(f"block index {b} outside 1..{N}")
        (rows if key == "rows" else cols).extend(ids)
    return sorted(set(rows)), sorted(set(cols))


def _graph_from_args(a):
    if a.m is None:
        raise UsageError(f"{a.verb} needs --m")
    if a.N is None:
        if a.schedule != "none":
            raise UsageError("--schedule needs --N")
        return lgv.build_gamma_m(a.m), {"m": a.m}, [], []
    rows, cols = parse_schedule(a.schedule, a.N, a.family)
    g = lgv.build_gamma_Nm(a.N, a.m, rows, cols)
    return g, {"N": a.N, "m": a.m, "schedule": a.schedule}, rows, cols


def _pretty(obj) -> str:
    if isinstance(obj, dict) and "entries" in obj and "order" in obj:
        return PolyMatrix.from_json_obj(obj).pretty()
    lines = []
    for k, v in obj.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            for row in v:
                lines.append("  " + "  ".join(f"{kk}={vv}" for kk, vv in row.items()))
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def _emit(a, obj, stdout):
    text = _pretty(obj) if a.pretty else json.dumps(obj, indent=2)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        stdout.write(text + "\n")


def cmd_gen(a, stdout):
    M, _ = _matrix_from_args(a)
    _emit(a, M.to_json_obj(), stdout)
    return EXIT_OK


def cmd_det(a, stdout):
    M, meta = _matrix_from_args(a)
    if a.engine == "cofactor":
        d = det_cofactor(M, a.max_order) if a.max_order else det_cofactor(M)
    else:
        d = det_subset_dp(M, a.max_order) if a.max_order else det_subset_dp(M)
    out = dict(meta, order=M.order, engine=a.engine, det=render(d))
    code = EXIT_OK
    if a.expect is not None:
        ok = parse(a.expect) == d
        out["expected"] = render(parse(a.expect))
        out["ok"] = ok
        code = EXIT_OK if ok else EXIT_FAIL
    _emit(a, out, stdout)
    return code


def cmd_formula(a, stdout):
    _, meta = _matrix_from_args(a)
    if a.shape:
        e = hooks.sign_exponent(a.shape, a.m)
        f = hooks.hook_det_formula(a.shape, a.m)
    else:
        e = bh.sign_exponent(a.family, a.N, a.m)
        f = bh.block_det_formula(a.family, a.N, a.m)
    _emit(a, dict(meta, sign_exponent=e, formula=render(f)), stdout)
    return EXIT_OK


def verify_hook(shape, m, evals=50, seed=0) -> dict:
    t0 = time.perf_counter()
    M = hooks.hook_matrix(shape, m)
    f = hooks.hook_det_formula(shape, m)
    symbolic_ok = det_cofactor(M) == f
    swapped, sign = apply_swaps(hooks.hook_matrix(hooks.HookShape.A, m),
                                hooks.hook_swap_schedule(shape, m))
    derivation_ok = swapped == M and sign == (-1) ** hooks.sign_exponent(shape, m)
    rng = random.Random(seed)
    vs = M.variables()
    agree = 0
    for _ in range(evals):
        sigma = bh.random_assignment(vs, rng)
        agree += det_eval_bareiss(M, sigma) == f.eval(sigma)
    return {"shape": shape.value, "m": m, "symbolic_ok": symbolic_ok,
            "derivation_ok": derivation_ok, "eval_checks": agree,
            "millis": round((time.perf_counter() - t0) * 1000.0, 3),
            "ok": symbolic_ok and derivation_ok and agree == evals}


def cmd_verify(a, stdout):
    if a.shape:
        if a.m is None:
            raise UsageError("--shape needs --m")
        rep = verify_hook(a.shape, a.m, a.evals, a.seed)
        ok = rep.pop("ok")
        if not a.timings:
            rep.pop("millis")
    elif a.family:
        if a.m is None or a.N is None:
            raise UsageError("--family needs --N and --m")
        r = bh.verify_family(a.family, a.N, a.m, a.evals, a.seed)
        ok = r.ok
        rep = r.to_json_obj(timings=a.timings)
    else:
        raise UsageError("verify needs --shape or --family")
    _emit(a, rep, stdout)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lgv(a, stdout):
    g, meta, rows, cols = _graph_from_args(a)
    systems = lgv.enumerate_vd_systems(g, max_paths=a.max_paths,
                                       max_candidates=a.max_candidates)
    signed = sum((ps.weight if ps.sign > 0 else -ps.weight for ps in systems), start=lgv.ZERO)
    M = lgv.path_matrix(g)
    det = det_subset_dp(M)
    out = dict(meta)
    if a.N is not None:
        out["rev_sources"] = rows
        out["rev_sinks"] = cols
    out["systems"] = len(systems)
    out["all_length_one"] = lgv.check_all_length_one(systems)
    out["signed_sum_equals_det"] = signed == det
    ok = out["signed_sum_equals_det"]
    if a.family is not None and a.N is not None:
        out["family"] = a.family.value
        out["path_matrix_is_family"] = M == bh.block_hook_matrix(a.family, a.N, a.m)
        out["signed_sum_equals_formula"] = signed == bh.block_det_formula(a.family, a.N, a.m)
        ok = ok and out["path_matrix_is_family"] and out["signed_sum_equals_formula"]
    _emit(a, out, stdout)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dot(a, stdout):
    g, _, _, _ = _graph_from_args(a)
    text = lgv.to_dot(g)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


# --- suite -----------------------------------------------------------------

def suite_cases(scope: str, seed: int, evals: int) -> list:
    cases = []
    if scope in ("hooks", "all"):
        cases += [("hook", s.value, m, seed, evals) for s in hooks.HookShape for m in range(1, 6)]
    if scope in ("blocks", "all"):
        cases += [("block", f.value, N, m, seed, evals)
                  for f in bh.BlockFamily for N in range(1, 4) for m in range(1, 4)]
    if scope in ("lgv", "all"):
        cases += [("gamma_m", m) for m in range(1, 5)]
        cases += [("gamma_Nm", f.value, N, m)
                  for f in bh.BlockFamily for N in range(1, 4) for m in range(1, 4)]
        cases += [("random_dag", seed, k) for k in range(100)]
    return cases


def run_case(case) -> dict:
    t0 = time.perf_counter()
    kind = case[0]
    try:
        if kind == "hook":
            _, s, m, seed, evals = case
            rep = verify_hook(hooks.HookShape(s), m, evals, seed)
            rep.pop("millis")
            res = {"name": f"hook {s} m={m}", **{k: rep[k] for k in
                   ("symbolic_ok", "derivation_ok", "eval_checks")}, "ok": rep["ok"]}
        elif kind == "block":
            _, f, N, m, seed, evals = case
            r = bh.verify_family(bh.BlockFamily(f), N, m, evals, seed)
            res = {"name": f"block {f} N={N} m={m}", "symbolic_ok": r.symbolic_ok,
                   "derivation_ok": r.derivation_ok, "eval_checks": r.eval_checks,
                   "ok": r.ok}
        elif kind == "gamma_m":
            m = case[1]
            g = lgv.build_gamma_m(m)
            systems = lgv.enumerate_vd_systems(g)
            matrix_ok = lgv.path_matrix(g) == hooks.hook_matrix(hooks.HookShape.A, m)
            single = len(systems) == 1 and systems[0].sigma == tuple(range(1, m + 1))
            sum_ok = lgv.lgv_signed_sum(g) == hooks.hook_det_formula(hooks.HookShape.A, m)
            res = {"name": f"gamma m={m}", "matrix_ok": matrix_ok, "single_system": single,
                   "signed_sum_ok": sum_ok, "ok": matrix_ok and single and sum_ok}
        elif kind == "gamma_Nm":
            _, f, N, m = case
            fam = bh.BlockFamily(f)
            g = lgv.gamma_for_family(fam, N, m)
            systems = lgv.enumerate_vd_systems(g)
            M = lgv.path_matrix(g)
            matrix_ok = M == bh.block_hook_matrix(fam, N, m)
            count_ok = len(systems) == math.factorial(N) ** m
            length_ok = lgv.check_all_length_one(systems)
            signed = sum((p.weight if p.sign > 0 else -p.weight for p in systems),
                         start=lgv.ZERO)
            sum_ok = signed == bh.block_det_formula(fam, N, m)
            res = {"name": f"gamma {f} N={N} m={m}", "matrix_ok": matrix_ok,
                   "systems": len(systems), "count_ok": count_ok, "length_one": length_ok,
                   "signed_sum_ok": sum_ok,
                   "ok": matrix_ok and count_ok and length_ok and sum_ok}
        else:
            _, seed, k = case
            g = random_dag_case(seed, k)
            ok = lgv.lgv_signed_sum(g) == det_cofactor(lgv.path_matrix(g))
            res = {"name": f"random dag {k}", "signed_sum_ok": ok, "ok": ok}
        res["status"] = "pass" if res["ok"] else "fail"
    except GuardAbort as exc:
        res = {"name": repr(case), "ok": False, "status": "guard", "error": str(exc)}
    res["millis"] = round((time.perf_counter() - t0) * 1000.0, 3)
    return res


def random_dag_case(seed: int, k: int):
    return lgv.random_dag(random.Random(seed * 1_000_003 + k))


def cmd_suite(a, stdout):
    cases = suite_cases(a.scope, a.seed, a.evals)
    t0 = time.perf_counter()
    if a.jobs > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as ex:
            results = list(ex.map(run_case, cases, chunksize=4))
    else:
        results = [run_case(c) for c in cases]
    if not a.timings:
        for r in results:
            r.pop("millis")
    counts = {s: sum(r["status"] == s for r in results) for s in ("pass", "fail", "guard")}
    out = {"scope": a.scope, "seed": a.seed, "evals": a.evals, "cases": results,
           "passed": counts["pass"], "failed": counts["fail"], "guard_aborts": counts["guard"]}
    if a.timings:
        out["millis"] = round((time.perf_counter() - t0) * 1000.0, 3)
    _emit(a, out, stdout)
    if counts["fail"]:
        return EXIT_FAIL
    if counts["guard"]:
        return EXIT_GUARD
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "det": cmd_det, "formula": cmd_formula, "verify": cmd_verify,
            "lgv": cmd_lgv, "dot": cmd_dot, "suite": cmd_suite}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            a = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return EXIT_OK
        stderr.write(f"usage: {VERB_GRAMMAR}\n")
        return EXIT_USAGE
    try:
        return COMMANDS[a.verb](a, stdout)
    except GuardAbort as exc:
        stderr.write(json.dumps({"error": "guard", "message": str(exc)}) + "\n")
        return EXIT_GUARD
    except (HookdetError, ValueError, OSError) as exc:
        stderr.write(f"hookdet {a.verb}: error: {exc}\nusage: {VERB_GRAMMAR}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
