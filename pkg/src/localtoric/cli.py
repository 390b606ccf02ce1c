"""Command-line front end: ring definitions in, deterministic JSON reports out.

Exit codes: 0 success, 2 inconclusive, 1 error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .arith import GF
from .binomial import Monomial, length_artinian
from .errors import ToricError, ValidationError
from .fintegral import (
    f_normalization_module,
    frac_degree,
    base_semigroup,
    image_semigroup,
    normalization,
    normalization_module,
    power_integral,
    q_integral_module,
)
from .frobenius import (
    FreenessCertificate,
    annihilator_check,
    certify_freeness,
    monomial_str,
    multiplicity_and_smallness,
    saturation_generators,
    verify_family_theorem,
)
from .intersect import Ambient, IntersectionInput, chi, tensor_length
from .ring_io import PRESETS, RingDefinition, parse_ring, preset, serialize_ring
from .toric import parametrization_kernel
from .witt import witt_transform_check

SCHEMA_VERSION = 1
COMMANDS = ("basis", "saturate", "certify", "verify-family", "annihilate", "fintegral",
            "normalize", "powint", "witt-check", "chi", "pardeg")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _poly_json(f):
    return [{"exps": list(e), "coeff": c} for e, c in sorted(f.items(), reverse=True)]


def _star_json(g, pres):
    return {"coeff": g.coeff, "uexp": list(g.uexp), "ydigits": list(g.ydigits), "text": g.describe(pres)}


def _module_json(sm, pres):
    rows = []
    for (b, j), (s, c, k) in sorted(sm.relation_table.items(), key=lambda t: (t[0][1], t[0][0])):
        rows.append({"b": list(b), "j": j, "s": list(s), "c": c, "k": k})
    return {
        "q": sm.q,
        "generators": [_star_json(g, pres) for g in sm.generators],
        "relation_table": rows,
        "witnesses": [{"s": list(s), "origin": {"b": list(o[0]), "j": o[1]}, "c": c}
                      for s, o, c in sm.witnesses],
    }


def _cert_json(cert):
    if isinstance(cert, FreenessCertificate):
        return {"certified": True, "rank": cert.rank,
                "witness": [{"pair": [j, k], "degree_difference": _jsonable(diff), "coordinate": i}
                            for j, k, diff, i in cert.witness]}
    return {"certified": False, "reason": cert.reason, "pairs": _jsonable([list(p[:2]) for p in cert.pairs])}


def _require_q(flags):
    if flags.get("q") is None:
        raise ValidationError("this command requires --q")
    return flags["q"]


def _bipartite(defn):
    data = defn.bipartite_data()
    if data is None:
        raise ValidationError("command needs a bipartite or family definition")
    return data


def dispatch(command: str, defn: RingDefinition | None, flags: dict) -> dict:
    """Run one command; returns the ``results`` part of a report."""
    if command == "chi":
        amb = Ambient(GF(flags.get("p") or 7), tuple(flags["vars"]))
        inp = IntersectionInput(amb, tuple(flags["A"]), tuple(flags["B"]), flags.get("len_m"), flags.get("len_n"))
        res = chi(inp)
        return {"tensor_length": tensor_length(inp.A, inp.B, amb), "chi": _jsonable(res.value), "integral": res.integral}
    pres = defn.presentation()
    if command == "basis":
        return {
            "variables": list(pres.var_names),
            "groebner_basis": [_poly_json(g) for g in pres.gb],
            "standard_basis": [list(b) for b in pres.standard_monomials()],
            "grading": _jsonable(pres.grading()),
        }
    if command == "pardeg":
        ys = [Monomial(1, (0,) * pres.n, tuple(int(i == j) for j in range(pres.d))) for i in range(pres.d)]
        return {"pardeg_bound": length_artinian(pres, ys)}
    if command in ("saturate", "certify"):
        q = _require_q(flags)
        sm = saturation_generators(pres, q, extend=flags.get("extend", False))
        cert = certify_freeness(sm, pres)
        out = {"module": _module_json(sm, pres), "certificate": _cert_json(cert)}
        if isinstance(cert, FreenessCertificate):
            out["smallness"] = multiplicity_and_smallness(sm, pres, cert)
        elif command == "certify":
            out["_inconclusive"] = True
        return out
    if command == "verify-family":
        params = defn.family_params()
        if params is None:
            raise ValidationError("verify-family needs a [family] definition (e.g. preset e3-family)")
        rep = verify_family_theorem(params, _require_q(flags), defn.field)
        sm = rep.pop("module")
        rep["module"] = _module_json(sm, pres)
        rep["predicted"] = {k: [list(u), list(y)] for k, (u, y) in rep["predicted"].items()}
        return rep
    if command == "annihilate":
        q = _require_q(flags)
        par = parametrization_kernel(_bipartite(defn))
        sm = saturation_generators(pres, q, check_closure=False)
        return {
            "prime": [_poly_json(g.as_poly(pres.field)) for g in par.generators],
            "prime_text": [f"{monomial_str(par.presentation, g.lead.exps)} - {monomial_str(par.presentation, g.tail.exps)}"
                           for g in par.generators if g.tail is not None],
            "annihilates": annihilator_check(sm, par.generators, pres),
        }
    if command in ("fintegral", "normalize", "powint"):
        gamma = image_semigroup(_bipartite(defn).phi)
        out = {"semigroup": [list(g) for g in gamma.generators]}
        if command == "normalize":
            out["normalization"] = [list(g) for g in normalization(gamma)]
            out["frac_degree"] = frac_degree(gamma, base_semigroup(gamma))
        elif command == "powint":
            out["power_integral"] = [list(g) for g in power_integral(gamma)]
        else:
            p = flags.get("p") or defn.p
            mod, q = f_normalization_module(gamma, p)
            out["p"] = p
            out["f_normalization"] = [list(g) for g in mod.generators()]
            out["stabilizes_at_q"] = q
            out["equals_normalization"] = mod.same_set(normalization_module(gamma))
            out["first_step"] = [list(g) for g in q_integral_module(gamma, p).generators()]
        return out
    if command == "witt-check":
        rep = witt_transform_check(pres, flags.get("trunc"), require_pure=not flags.get("allow_impure", False))
        return {"N": rep["N"], "p": rep["p"], "ok": rep["ok"],
                "relations": [{"relation": r.relation, "passed": r.passed} for r in rep["relations"]]}
    raise ValidationError(f"unknown command {command!r}")


def build_report(command, defn, flags, timing=False):
    text = serialize_ring(defn) if defn is not None else ""
    echo = {k: v for k, v in sorted(flags.items()) if v not in (None, False, [])}
    digest = hashlib.sha256(json.dumps([command, text, _jsonable(echo)], sort_keys=True).encode()).hexdigest()
    report = {"schema_version": SCHEMA_VERSION, "engine_version": __version__, "command": command,
              "flags": _jsonable(echo), "input_hash": digest}
    start = time.perf_counter()
    code = 0
    try:
        results = dispatch(command, defn, flags)
        if results.pop("_inconclusive", False):
            code = 2
        report["status"] = "inconclusive" if code == 2 else "ok"
        report["results"] = _jsonable(results)
    except ToricError as exc:
        code = 1
        report["status"] = "error"
        report["error"] = {"code": exc.code, "message": str(exc)}
    if timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    return report, code


def _load_definition(args):
    if args.command == "chi":
        return None
    if args.preset and args.file:
        raise ValidationError("give either --preset or --file")
    if args.preset:
        return preset(args.preset, args.p)
    if args.file:
        with open(args.file, "rb") as fh:
            defn = parse_ring(fh.read())
        return defn.with_prime(args.p) if args.p else defn
    raise ValidationError("a ring definition is required (--preset or --file)")


def _flags(args):
    return {
        "q": args.q, "p": args.p, "trunc": args.trunc, "extend": args.extend,
        "allow_impure": args.allow_impure, "vars": args.vars.split(",") if args.vars else None,
        "A": args.A, "B": args.B, "len_m": args.len_m, "len_n": args.len_n,
    }


def _sweep_worker(job):
    command, text, p, q, flags = job
    defn = parse_ring(text).with_prime(p)
    flags = dict(flags, p=p, q=q)
    return report_to_text(build_report(command, defn, flags)[0])


def report_to_text(report):
    return json.dumps(report, sort_keys=True, indent=2)


def make_parser():
    ap = argparse.ArgumentParser(prog="localtoric", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--preset", choices=PRESETS)
    ap.add_argument("--file", help="ring definition file")
    ap.add_argument("--p", type=int, help="characteristic (overrides the definition)")
    ap.add_argument("--q", type=int, help="Frobenius power q = p^e")
    ap.add_argument("--trunc", type=int, help="truncation order for witt-check")
    ap.add_argument("--extend", action="store_true", help="adopt closure failures as new generators")
    ap.add_argument("--allow-impure", action="store_true", help="witt-check on non +-1 coefficients")
    ap.add_argument("--vars", help="chi: comma-separated ambient variables")
    ap.add_argument("--A", action="append", default=[], help="chi: generator of the first ideal")
    ap.add_argument("--B", action="append", default=[], help="chi: generator of the second ideal")
    ap.add_argument("--len-m", type=int, help="chi: length of M at its prime")
    ap.add_argument("--len-n", type=int, help="chi: length of N at its prime")
    ap.add_argument("--sweep", help="comma-separated p:q pairs run in parallel")
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--timing", action="store_true", help="include wall-clock timing (not deterministic)")
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        defn = _load_definition(args)
    except ToricError as exc:
        print(report_to_text({"schema_version": SCHEMA_VERSION, "status": "error",
                              "error": {"code": exc.code, "message": str(exc)}}))
        return 1
    flags = _flags(args)
    if args.sweep:
        if defn is None:
            print("--sweep needs a ring definition", file=sys.stderr)
            return 1
        pairs = sorted(tuple(int(x) for x in item.split(":")) for item in args.sweep.split(","))
        jobs = [(args.command, serialize_ring(defn), p, q, flags) for p, q in pairs]
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            texts = list(pool.map(_sweep_worker, jobs))
        reports = [json.loads(t) for t in texts]
        print(report_to_text({"schema_version": SCHEMA_VERSION, "sweep": [list(pq) for pq in pairs], "reports": reports}))
        codes = {r["status"] for r in reports}
        return 1 if "error" in codes else 2 if "inconclusive" in codes else 0
    report, code = build_report(args.command, defn, flags, timing=args.timing)
    print(report_to_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
