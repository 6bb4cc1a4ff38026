"""End-to-end runs over a built problem, producing JSON-ready report sections."""

from __future__ import annotations

from . import freeness as fq
from .coaction import check_comodule_laws
from .hopf import ODD_ADDITIVE, order
from .invariants import InvariantRing, iterated_invariants_check
from .problem import Built, InputError, _parse, build_witness
from .textio import format_element, format_tensor_terms


def describe(built: Built) -> dict:
    c = built.coaction
    return {"field": str(built.field), "algebra": str(built.space),
            "generators": [{"name": v.name, "parity": "odd" if v.parity else "even",
                            "degree": v.degree} for v in built.space.variables],
            "group": {"kind": built.group.spec.kind, "name": built.group.name,
                      "order": order(built.group)},
            "action": {"kind": c.kind,
                       "tau": {n: format_tensor_terms(t) for n, t in c.tau_gens.items()}}}


def coaction_section(built: Built, max_degree: int) -> dict:
    failures = check_comodule_laws(built.coaction, max_degree)
    return {"validated": built.coaction.validated, "laws_checked_degree": max_degree,
            "failures": len(failures),
            "first_failure": str(failures[0]) if failures else None}


def invariants_section(ring: InvariantRing, max_degree: int) -> dict:
    return {"max_degree": max_degree, "dims": ring.dims(max_degree),
            "slices": {str(d): [format_element(f) for f in ring.slice(d)]
                       for d in range(max_degree + 1)}}


def generators_section(ring: InvariantRing, max_degree: int) -> dict:
    ledger = ring.generators(max_degree)
    return {"max_degree": max_degree,
            "sizes": [len(ledger.get(e, [])) for e in range(1, max_degree + 1)],
            "ledger": {str(e): [format_element(g) for g in ledger.get(e, [])]
                       for e in range(1, max_degree + 1)}}


def freeness_section(built: Built, bound: int, witness=None, search: bool = True) -> tuple:
    problem = fq.FreenessProblem.of(built.coaction)
    verdict = fq.decide_freeness(problem, bound, witness=witness, search=search)
    out = verdict.to_dict(problem)
    if verdict.status == fq.FREE:
        out["certificate_degrees"] = [cert.degree for cert in verdict.certificates]
        out["certificates_reverified"] = all(cert.verify(problem) for cert in verdict.certificates)
    if verdict.status == fq.NOT_FREE:
        out["witness_source"] = "supplied" if witness is not None else "search"
        out["witness_reverified"] = fq.verify_stabilizer_witness(problem, verdict.witness).confirmed
    return verdict, out


def splitting_section(built: Built, bound: int):
    if built.group.spec.kind != ODD_ADDITIVE:
        return None, None
    s = fq.find_gana_splitting(built.coaction, bound)
    if isinstance(s, fq.NotFoundAtBound):
        return None, {"found": False, "bound": bound}
    return s, {"found": True, "bound": bound, "z": format_element(s.z), "f": format_element(s.f),
               "phi_f": format_element(s.g_unit), "phi_f_inverse": format_element(s.g_inverse)}


def free_basis_candidates(built: Built, splitting=None) -> list | None:
    opts = built.problem.options
    if opts.free_basis is not None:
        return [_parse(s, built.space, "options.free_basis") for s in opts.free_basis]
    z = splitting.z if splitting is not None else None
    if z is not None and z.low_degree() == z.degree():
        return [built.space.one(), z]
    return None


def run_pipeline(built: Built, witness=None) -> dict:
    """describe → comodule laws → invariants → generators → freeness → ψ and bases."""
    opts = built.problem.options
    c = built.coaction
    report: dict = {"name": built.problem.name, "describe": describe(built)}
    report["coaction"] = coaction_section(built, opts.check_degree)
    ring = InvariantRing(c)
    report["invariants"] = invariants_section(ring, opts.invariants_degree)
    report["generators"] = generators_section(ring, opts.generators_degree)
    if witness is None and opts.witness is not None:
        witness = build_witness(opts.witness, built)
    _, report["freeness"] = freeness_section(built, opts.freeness_bound, witness)
    splitting, split = splitting_section(built, opts.freeness_bound)
    if split is not None:
        report["splitting"] = split
    report["quotient"] = fq.psi_certify(c, ring, opts.quotient_degree).to_dict()
    cands = free_basis_candidates(built, splitting)
    if cands is not None:
        try:
            report["free_basis"] = fq.verify_free_basis(c, ring, cands, opts.basis_degree).to_dict()
        except ValueError as exc:
            raise InputError(f"options.free_basis: {exc}") from exc
    if opts.normal_subgroup is not None:
        try:
            report["iterated"] = iterated_invariants_check(
                c, opts.normal_subgroup, min(opts.invariants_degree, 6)).to_dict()
        except ValueError as exc:
            raise InputError(f"options.normal_subgroup: {exc}") from exc
    return report


def lookup(report: dict, path: str):
    cur = report
    for part in path.split("."):
        if isinstance(cur, dict) and part in cur:
            cur = cur[part]
        elif isinstance(cur, list) and part.isdigit() and int(part) < len(cur):
            cur = cur[int(part)]
        else:
            raise KeyError(path)
    return cur


def diff_expected(report: dict, expected: dict) -> list:
    """Mismatches between a report and dotted-path expected fragments."""
    out = []
    for path, want in expected.items():
        try:
            got = lookup(report, path)
        except KeyError:
            out.append({"path": path, "expected": want, "actual": "<missing>"})
            continue
        if got != want:
            out.append({"path": path, "expected": want, "actual": got})
    return out
