"""``superq`` command-line front end.

Exit codes: 0 success, 1 a verified property fails (or the input describes
an invalid structure), 2 unreadable or schema-invalid input, 3 a bounded
search ended without a verdict.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import freeness as fq
from . import hopf as hopf_mod
from .coaction import check_comodule_laws
from .field import FieldSpec
from .groups import FiniteGroup, GroupTableError
from .invariants import InvariantRing
from .pipeline import (coaction_section, describe, free_basis_candidates, freeness_section,
                       generators_section, invariants_section, splitting_section)
from .presets import UnknownPreset, list_presets, run_preset
from .problem import SCHEMA, InputError, SemanticError, build_witness, load, parse_witness
from .textio import format_element

OK, FAIL, BAD_INPUT, UNKNOWN = 0, 1, 2, 3


# commands ----------------------------------------------------------------

def cmd_describe(args):
    built = load(args.problem)
    return OK, describe(built)


def _catalog_group(args):
    if args.group == "odd-additive":
        return hopf_mod.odd_additive(FieldSpec.rationals() if args.p is None else FieldSpec.prime(args.p))
    if args.group == "frobenius-1":
        if args.p is None:
            raise InputError("frobenius-1 needs --p")
        return hopf_mod.frobenius_kernel(FieldSpec.prime(args.p))
    field = FieldSpec.rationals() if args.p is None else FieldSpec.prime(args.p)
    orders = args.cyclic or [2]
    grp = FiniteGroup.cyclic(orders[0]) if len(orders) == 1 else \
        FiniteGroup.direct_product([FiniteGroup.cyclic(n) for n in orders])
    return hopf_mod.constant_group(field, grp)


def cmd_check_hopf(args):
    if args.problem:
        h = load(args.problem).group
    elif args.group:
        h = _catalog_group(args)
    else:
        raise InputError("give a problem file or --group")
    rep = hopf_mod.check_hopf_axioms(h)
    result = rep.to_dict()
    result["order"] = hopf_mod.order(h)
    result["augmentation_ideal_basis"] = [format_element(b)
                                          for b in hopf_mod.augmentation_ideal_basis(h)]
    return (OK if rep.ok else FAIL), result


def cmd_check_coaction(args):
    built = load(args.problem)
    sec = coaction_section(built, args.max_degree)
    sec["describe"] = describe(built)["action"]
    return (OK if sec["failures"] == 0 else FAIL), sec


def cmd_invariants(args):
    built = load(args.problem)
    return OK, invariants_section(InvariantRing(built.coaction), args.max_degree)


def cmd_generators(args):
    built = load(args.problem)
    return OK, generators_section(InvariantRing(built.coaction), args.max_degree)


def cmd_freeness(args):
    built = load(args.problem)
    witness = None
    if args.witness:
        witness = build_witness(parse_witness(args.witness), built)
    elif built.problem.options.witness is not None:
        witness = build_witness(built.problem.options.witness, built)
    verdict, out = freeness_section(built, args.bound, witness, search=not args.no_search)
    if verdict.status == fq.FREE:
        return OK, out
    if verdict.status == fq.NOT_FREE:
        return (FAIL if args.assert_free else OK), out
    if witness is not None:
        return FAIL, out
    return UNKNOWN, out


def cmd_quotient_verify(args):
    built = load(args.problem)
    c = built.coaction
    ring = InvariantRing(c)
    psi = fq.psi_certify(c, ring, args.max_degree)
    result = {"quotient": psi.to_dict()}
    splitting, split = splitting_section(built, built.problem.options.freeness_bound)
    if split is not None:
        result["splitting"] = split
    ok = psi.bijective
    cands = free_basis_candidates(built, splitting)
    if cands is not None:
        try:
            rep = fq.verify_free_basis(c, ring, cands, args.max_degree)
        except ValueError as exc:
            raise InputError(f"options.free_basis: {exc}") from exc
        result["free_basis"] = rep.to_dict()
        ok = ok and rep.verified
    return (OK if ok else FAIL), result


def cmd_unipotent(args):
    from .unipotent import (ShuffleData, ShuffleError, bk_subbialgebra_check, build_u_sigma,
                            filtration_check, max_level, structure_matches)
    try:
        s = ShuffleData(args.m, args.n, tuple(args.sigma) if args.sigma else
                        tuple(range(1, args.m + args.n + 1)))
        u = build_u_sigma(s)
    except ShuffleError as exc:
        raise InputError(str(exc)) from exc
    hopf_rep = hopf_mod.check_hopf_axioms(u.hopf, max_degree=args.max_degree)
    filt = filtration_check(u, args.max_degree)
    levels = [bk_subbialgebra_check(u, k) for k in range(1, max_level(s) + 1)]
    result = {"m": s.m, "n": s.n, "sigma": list(s.sigma),
              "generators": list(u.presentation.generator_names),
              "comultiplication": {n: format_element(u.hopf.comultiply(u.presentation.generator(n)))
                                   for n in u.presentation.generator_names},
              "antipode": {n: format_element(u.hopf.antipode(u.presentation.generator(n)))
                           for n in u.presentation.generator_names},
              "hopf_axioms": hopf_rep.to_dict(), "filtration": filt.to_dict(),
              "bk": [b.to_dict() for b in levels]}
    ok = hopf_rep.ok and filt.passed and all(b.passed for b in levels)
    if s.r == 2 and s.m >= 1:
        # U(2|0) is G_a and U(1|1) is the odd additive group
        field = u.presentation.field
        other, name = ((hopf_mod.even_additive(field, "s"), "s") if s.m == 2
                       else (hopf_mod.odd_additive(field), "t"))
        match = structure_matches(u.hopf, other, {u.presentation.generator_names[0]: name})
        result["matches_catalog"] = {"catalog": other.name, "matches": match}
        ok = ok and match
    return (OK if ok else FAIL), result


def cmd_demo(args):
    if args.list or not args.name:
        return OK, {"presets": list_presets()}
    try:
        res = run_preset(args.name)
    except UnknownPreset as exc:
        raise InputError(str(exc.args[0])) from exc
    out = res.to_dict()
    out["status"] = out["report"].get("freeness", {}).get("status")
    return (OK if res.ok else FAIL), out


def cmd_properties(args):
    """Randomized checks on the problem's algebra and coaction."""
    from .sampling import random_element
    built = load(args.problem)
    rng = random.Random(args.seed)
    sp, c = built.space, built.coaction
    fails = {"supercommutativity": 0, "associativity": 0, "psi_functoriality": 0}
    for _ in range(args.samples):
        pa, pb = rng.randrange(2), rng.randrange(2)
        a = random_element(sp, rng, parity=pa)
        b = random_element(sp, rng, parity=pb)
        sign = -1 if pa and pb else 1
        if a * b != (b * a).scale(sign):
            fails["supercommutativity"] += 1
        cc = random_element(sp, rng)
        if (a * b) * cc != a * (b * cc):
            fails["associativity"] += 1
        if fq.psi_apply(c, a, b) != c.include(a) * fq.psi_apply(c, sp.one(), b):
            fails["psi_functoriality"] += 1
    laws = check_comodule_laws(c, args.max_degree)
    result = {"seed": args.seed, "samples": args.samples, "failures": fails,
              "comodule_laws": {"max_degree": args.max_degree, "failures": len(laws)}}
    ok = not any(fails.values()) and not laws
    return (OK if ok else FAIL), result


# output --------------------------------------------------------------------

def _render_table(command: str, result: dict, out) -> None:
    if command in ("invariants", "generators"):
        key = "slices" if "slices" in result else "ledger"
        rows = sorted(result[key].items(), key=lambda kv: int(kv[0]))
        out.write(f"{'degree':>6}  {'dim' if key == 'slices' else 'new':>4}  basis\n")
        for d, elems in rows:
            out.write(f"{d:>6}  {len(elems):>4}  {', '.join(elems)}\n")
        return
    _render_tree(result, out, 0)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def _render_tree(value, out, indent: int) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                out.write(f"{pad}{k}:\n")
                _render_tree(v, out, indent + 1)
            else:
                out.write(f"{pad}{k}: {_inline(v)}\n")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                out.write(f"{pad}-\n")
                _render_tree(v, out, indent + 1)
            else:
                out.write(f"{pad}- {_inline(v)}\n")
    else:
        out.write(f"{pad}{_scalar(value)}\n")


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return _scalar(v)


def emit(command: str, code: int, result: dict, fmt: str, out) -> None:
    if fmt == "json":
        env = {"schema": SCHEMA, "command": command, "exit_code": code, "result": result}
        out.write(json.dumps(env, indent=2, ensure_ascii=False) + "\n")
    else:
        _render_table(command, result, out)


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS,
                        help="output format (default: table)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized checks (default: 0)")
    parser = argparse.ArgumentParser(prog="superq", parents=[common],
                                     description="Finite supergroup actions on superalgebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, problem=True, **kw):
        p = sub.add_parser(name, parents=[common], help=help_, **kw)
        if problem:
            p.add_argument("problem", help="problem file (JSON)")
        p.set_defaults(func=func)
        return p

    add("describe", cmd_describe, "summarize a problem file")
    p = add("check-hopf", cmd_check_hopf, "verify Hopf superalgebra axioms", problem=False)
    p.add_argument("problem", nargs="?", help="problem file whose group is checked")
    p.add_argument("--group", choices=("odd-additive", "frobenius-1", "constant"))
    p.add_argument("--p", type=int, help="field characteristic")
    p.add_argument("--cyclic", type=int, nargs="+", help="orders of cyclic factors")
    p = add("check-coaction", cmd_check_coaction, "validate the comodule laws")
    p.add_argument("--max-degree", type=int, default=6)
    p = add("invariants", cmd_invariants, "invariant slices by degree")
    p.add_argument("--max-degree", type=int, default=8)
    p = add("generators", cmd_generators, "minimal generator ledger")
    p.add_argument("--max-degree", type=int, default=8)
    p = add("freeness", cmd_freeness, "decide freeness with certificates")
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--witness", help="stabilizer witness file (JSON)")
    p.add_argument("--assert-free", action="store_true",
                   help="exit 1 when the action is shown not free")
    p.add_argument("--no-search", action="store_true", help="skip the stabilizer witness search")
    p = add("quotient-verify", cmd_quotient_verify, "certify the quotient map and a free basis")
    p.add_argument("--max-degree", type=int, default=6)
    p = add("unipotent", cmd_unipotent, "U_sigma(m|n) checks", problem=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=int, nargs="+", help="shuffle values sigma(1..m+n)")
    p.add_argument("--max-degree", type=int, default=3)
    p = add("demo", cmd_demo, "run a bundled preset", problem=False)
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p = add("properties", cmd_properties, "randomized property checks")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--max-degree", type=int, default=6)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    fmt = getattr(args, "format", "table")
    args.seed = getattr(args, "seed", 0)
    try:
        code, result = args.func(args)
    except InputError as exc:
        code, result = BAD_INPUT, {"error": str(exc), "kind": "invalid-input"}
    except (SemanticError, GroupTableError) as exc:
        code, result = FAIL, {"error": str(exc), "kind": "invalid-structure"}
    if "error" in result:
        err.write(f"superq: {result['error']}\n")
        if fmt == "json":
            emit(args.command, code, result, fmt, out)
        return code
    emit(args.command, code, result, fmt, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
