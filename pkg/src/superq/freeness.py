"""Freeness of an action: membership certificates, stabilizer witnesses, ψ.

The action is free exactly when the ideal J of K[X]⊗K[G] generated by
τ(f) - f⊗1 contains 1⊗M, M = ker ε. Membership is searched with
K[X]-coefficients of bounded degree, so a found combination is a proof of
freeness while an exhausted search proves nothing. Non-freeness is shown
by a point α of X over some superalgebra A fixed by a non-identity element
g of G(A).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import EVEN, ODD, AlgebraPresentation, Element, Morphism, SuperVariable, tensor
from .coaction import Coaction, derivation_of
from .hopf import (CONSTANT, FROBENIUS_1, ODD_ADDITIVE, PRODUCT, augmentation_ideal_basis,
                   idempotent_label)
from .invariants import InvariantRing, _require
from .linalg import Echelon
from .textio import format_tensor_terms

FREE = "free"
NOT_FREE = "not_free"
UNKNOWN = "unknown_at_bound"


@dataclass
class FreenessProblem:
    coaction: Coaction
    J_generators: list
    M_basis: list

    @classmethod
    def of(cls, c: Coaction) -> FreenessProblem:
        _require(c)
        gens = [c.coact(c.space.generator(n)) - c.include(c.space.generator(n))
                for n in c.space.generator_names]
        return cls(c, gens, augmentation_ideal_basis(c.group))


# membership certificates -------------------------------------------------

@dataclass
class MembershipCertificate:
    """1⊗m = Σ_i coefficients[i]·J_generators[i]."""

    target: Element
    coefficients: list
    degree: int

    def expand(self, problem: FreenessProblem) -> Element:
        T = problem.coaction.tensor
        acc = T.zero()
        for a, s in zip(self.coefficients, problem.J_generators):
            acc = acc + a * s
        return acc

    def verify(self, problem: FreenessProblem) -> bool:
        return self.expand(problem) == self.target

    def to_dict(self, problem: FreenessProblem) -> dict:
        names = problem.coaction.space.generator_names
        return {"target": format_tensor_terms(self.target), "degree": self.degree,
                "combination": [{"generator": n, "coefficient": format_tensor_terms(a)}
                                for n, a in zip(names, self.coefficients) if a]}


@dataclass
class FreenessVerdict:
    status: str
    bound: int
    certificates: list = dc_field(default_factory=list)
    witness: StabilizerWitness | None = None
    notes: list = dc_field(default_factory=list)

    def to_dict(self, problem: FreenessProblem) -> dict:
        out = {"status": self.status, "bound": self.bound}
        if self.status == FREE:
            out["certificate"] = [cert.to_dict(problem) for cert in self.certificates]
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def check_free(problem: FreenessProblem, bound: int) -> FreenessVerdict:
    """Search 1⊗m ∈ J with K[X]-coefficients of degree <= bound.

    Returns Free with re-verified certificates, or UnknownAtBound.
    """
    c = problem.coaction
    sp, G = c.space, c.group.algebra
    T = c.tensor
    gkeys = G.all_basis()
    targets = [tensor([sp.one(), m], T) for m in problem.M_basis]
    ech = Echelon(c.field)
    found: dict = {}
    for d in range(bound + 1):
        for fkey in sp.basis(d):
            for hkey in gkeys:
                mult = T.key_element((fkey, hkey))
                for i, s in enumerate(problem.J_generators):
                    ech.add((mult * s).terms, tag=(i, fkey, hkey))
        for j, tgt in enumerate(targets):
            if j in found:
                continue
            combo = ech.solve(tgt.terms)
            if combo is not None:
                found[j] = (combo, d)
        if len(found) == len(targets):
            break
    if len(found) < len(targets):
        return FreenessVerdict(UNKNOWN, bound)
    certs = []
    for j, tgt in enumerate(targets):
        combo, d = found[j]
        coeffs = [T.zero() for _ in problem.J_generators]
        for (i, fkey, hkey), a in combo.items():
            coeffs[i] = coeffs[i] + T.key_element((fkey, hkey), a)
        cert = MembershipCertificate(tgt, coeffs, d)
        if not cert.verify(problem):
            raise AssertionError("membership certificate failed to re-expand")
        certs.append(cert)
    return FreenessVerdict(FREE, bound, certs)


# stabilizer witnesses ----------------------------------------------------

@dataclass
class StabilizerWitness:
    """α: K[X] → A and g: K[G] → A, both given on generators."""

    algebra: AlgebraPresentation
    point: dict
    element: dict

    def to_dict(self) -> dict:
        A = self.algebra
        return {"algebra": {"generators": [
                    {"name": v.name, "parity": "odd" if v.parity else "even",
                     **({"nilpotent_order": dict(A.power_relations)[v.name]}
                        if v.name in dict(A.power_relations) else {})}
                    for v in A.variables]},
                "point": {k: str(v) for k, v in self.point.items()},
                "element": {k: str(v) for k, v in self.element.items()}}


@dataclass
class WitnessCheck:
    confirmed: bool
    reason: str = ""


def _morphism_problem(source, images: dict, A: AlgebraPresentation, what: str) -> str | None:
    for name in source.generator_names:
        if name not in images:
            return f"{what} has no image for {name}"
        img = images[name]
        if img.algebra != A:
            return f"{what}({name}) is not in the witness algebra"
    return None


def verify_stabilizer_witness(problem: FreenessProblem, w: StabilizerWitness) -> WitnessCheck:
    c = problem.coaction
    sp, G = c.space, c.group.algebra
    A = w.algebra
    if A.field != c.field:
        return WitnessCheck(False, "witness algebra is over a different field")
    for src, imgs, what in ((sp, w.point, "α"), (G, w.element, "g")):
        err = _morphism_problem(src, imgs, A, what)
        if err:
            return WitnessCheck(False, err)
        for name in src.generator_names:
            img, par = imgs[name], _generator_parity(src, name)
            if img and img.parity() != par:
                return WitnessCheck(False, f"{what}({name}) = {img} has the wrong parity")
    for name, q in sp.power_relations:
        if w.point[name] ** q:
            return WitnessCheck(False, f"α violates {name}^{q} = 0")
    alpha = Morphism(sp, A, w.point)
    g = Morphism(G, A, w.element)
    if g(G.one()) != A.one():
        return WitnessCheck(False, "g does not preserve the unit")
    basis = G.all_basis()
    for a in basis:
        for b in basis:
            prod = G.key_element(a) * G.key_element(b)
            if g.on_key(a) * g.on_key(b) != g(prod):
                return WitnessCheck(False, f"g is not multiplicative on "
                                           f"{G.format_key(a)}*{G.format_key(b)}")
    if all(w.element[n] == A.scalar(c.group.counit(G.generator(n))) for n in G.generator_names):
        return WitnessCheck(False, "g is the identity element of G(A)")
    for name in sp.generator_names:
        lhs = A.zero()
        for (m, h), a in c.coact(sp.generator(name)).terms.items():
            lhs = lhs + (alpha.on_key(m) * g.on_key(h)).scale(a)
        if lhs != w.point[name]:
            return WitnessCheck(False, f"stabilizer equation fails on {name}: "
                                       f"(α⊗g)τ({name}) = {lhs} != {w.point[name]}")
    return WitnessCheck(True)


def _generator_parity(alg, name: str) -> int:
    if isinstance(alg, AlgebraPresentation):
        return alg.variable(name).parity
    return alg.generator(name).parity()


def _fresh(names, base: str) -> str:
    taken = set(names)
    if base not in taken:
        return base
    for i in itertools.count(1):
        if f"{base}{i}" not in taken:
            return f"{base}{i}"


def _group_points(h, field, taken: set):
    """Candidate non-identity group elements: (fresh variables, builder).

    The builder takes the witness algebra and returns g on K[G] generators.
    """
    spec = h.spec
    if spec is None:
        return []
    if spec.kind == ODD_ADDITIVE:
        nm = _fresh(taken, "xi")
        return [([SuperVariable(nm, ODD)], {}, lambda A, nm=nm: {"t": A.generator(nm)})]
    if spec.kind == FROBENIUS_1:
        nm = _fresh(taken, "w")
        p = field.p
        return [([SuperVariable(nm, EVEN)], {nm: p}, lambda A, nm=nm: {"u": A.generator(nm)})]
    if spec.kind == CONSTANT:
        grp = h.group
        out = []
        for g0 in grp.elements:
            if g0 == grp.identity:
                continue

            def build(A, g0=g0):
                return {idempotent_label(g): (A.one() if g == g0 else A.zero())
                        for g in grp.elements}
            out.append(([], {}, build))
        return out
    return []


def _product_points(h, field, taken: set):
    """For a product, move one factor off the identity and keep the rest at ε."""
    if h.spec is None or h.spec.kind != PRODUCT:
        return _group_points(h, field, taken)
    from .hopf import build as build_hopf
    out = []
    factors = [build_hopf(s, field) for s in h.spec.factors]
    for i, f in enumerate(factors):
        for fresh, rel, builder in _group_points(f, field, taken):
            def build(A, i=i, builder=builder, factors=factors):
                imgs = {}
                for j, fj in enumerate(factors):
                    if j == i:
                        sub = builder(A)
                    else:
                        sub = {n: A.scalar(fj.counit(fj.algebra.generator(n)))
                               for n in fj.algebra.generator_names}
                    imgs.update({f"{j + 1}.{n}": v for n, v in sub.items()})
                return imgs
            out.append((fresh, rel, build))
    return out


def find_stabilizer_witness(problem: FreenessProblem, max_subsets: int = 256):
    """Search points on coordinate subspaces fixed by a generic group element.

    Tries every subset of generators to set to zero (smallest first); the
    rest map to themselves in the quotient, extended by fresh variables for
    the group element. Returns a verified StabilizerWitness or None.
    """
    c = problem.coaction
    sp = c.space
    names = sp.generator_names
    tried = 0
    candidates = _product_points(c.group, c.field, set(names))
    for size in range(len(names) + 1):
        for killed in itertools.combinations(names, size):
            if tried >= max_subsets:
                return None
            tried += 1
            base = sp.quotient_by(killed)
            for fresh, rel, builder in candidates:
                rels = dict(base.power_relations)
                rels.update(rel)
                A = AlgebraPresentation(c.field, list(base.variables) + list(fresh), rels)
                point = {n: (A.zero() if n in killed else A.generator(n)) for n in names}
                w = StabilizerWitness(A, point, builder(A))
                if verify_stabilizer_witness(problem, w).confirmed:
                    return w
    return None


def decide_freeness(problem: FreenessProblem, bound: int, witness: StabilizerWitness | None = None,
                    search: bool = True) -> FreenessVerdict:
    """check_free, then a supplied or searched stabilizer witness."""
    verdict = check_free(problem, bound)
    if verdict.status == FREE:
        return verdict
    if witness is not None:
        chk = verify_stabilizer_witness(problem, witness)
        if chk.confirmed:
            return FreenessVerdict(NOT_FREE, bound, witness=witness)
        verdict.notes.append(f"supplied witness rejected: {chk.reason}")
        return verdict
    if search:
        found = find_stabilizer_witness(problem)
        if found is not None:
            return FreenessVerdict(NOT_FREE, bound, witness=found,
                                   notes=["witness found by coordinate-subspace search"])
    return verdict


# odd additive splitting ---------------------------------------------------

@dataclass
class SplittingElement:
    """z = f·g⁻¹ with g = φ(f) a unit, so that φ(z) = 1."""

    z: Element
    f: Element
    g_unit: Element
    g_inverse: Element


@dataclass
class NotFoundAtBound:
    bound: int


def _derivation(c: Coaction):
    if c.group.spec is None or c.group.spec.kind != ODD_ADDITIVE:
        raise ValueError("splitting elements exist only for the odd additive group")
    return c.derivation if c.derivation is not None else derivation_of(c)


def unit_inverse(u: Element) -> Element | None:
    """Inverse of c0 + n with n nilpotent, by geometric series; None if not a unit."""
    sp = u.algebra
    c0 = u.constant_term()
    if not c0:
        return None
    rest = u - sp.scalar(c0)
    if any(not sp.is_nilpotent_key(k) for k in rest.terms):
        return None
    n = rest.scale(sp.field.inv(c0))
    acc = sp.one()
    power = sp.one()
    while True:
        power = -(power * n)
        if not power:
            break
        acc = acc + power
    return acc.scale(sp.field.inv(c0))


def find_gana_splitting(c: Coaction, bound: int):
    """Odd f of degree <= bound with φ(f) a unit, and z = f·φ(f)⁻¹.

    φ(f) is a unit iff its constant term is nonzero and its non-nilpotent
    non-constant coefficients vanish, which is a linear condition on f.
    """
    _require(c)
    phi = _derivation(c)
    sp = c.space
    unit = sp.unit_key
    ech = Echelon(c.field)
    for d in range(1, bound + 1):
        for m in sp.basis(d):
            if sp.parity(m) != ODD:
                continue
            img = phi(sp.key_element(m))
            v = {k: a for k, a in img.terms.items() if k == unit or not sp.is_nilpotent_key(k)}
            ech.add(v, tag=m)
        combo = ech.solve({unit: c.field.one})
        if combo is not None:
            f = sp.element(combo)
            g = phi(f)
            g_inv = unit_inverse(g)
            z = f * g_inv
            if g * g_inv != sp.one() or phi(z) != sp.one():
                raise AssertionError("splitting element failed to verify")
            return SplittingElement(z, f, g, g_inv)
    return NotFoundAtBound(bound)


def decompose(c: Coaction, s: SplittingElement, h: Element) -> tuple:
    """(r0, r1) = (φ(hz), φ(h)); both invariant and h = r0 + r1·z."""
    phi = _derivation(c)
    return phi(h * s.z), phi(h)


# the map ψ ----------------------------------------------------------------

def psi_apply(c: Coaction, f: Element, h: Element) -> Element:
    """ψ(f⊗h) = Σ f·h1 ⊗ h2 where τ(h) = Σ h1⊗h2."""
    out: dict = {}
    th = c.coact(h)
    for fk, fa in f.terms.items():
        for (h1, h2), a in th.terms.items():
            for k, b in c.space.mul_keys(fk, h1):
                out[(k, h2)] = out.get((k, h2), 0) + fa * a * b
    return Element(c.tensor, out)


@dataclass
class PsiReport:
    max_degree: int
    graded: bool
    surjective: bool
    missing: list
    image_dim: int
    target_dim: int
    balanced_upper_bound: int
    bijective: bool
    caveat: str

    def to_dict(self) -> dict:
        return {"max_degree": self.max_degree, "graded": self.graded,
                "surjective": self.surjective, "missing": self.missing[:5],
                "image_dim": self.image_dim, "target_dim": self.target_dim,
                "balanced_upper_bound": self.balanced_upper_bound,
                "bijective": self.bijective, "caveat": self.caveat}


def psi_certify(c: Coaction, ring: InvariantRing, max_degree: int) -> PsiReport:
    """Surjectivity and bijectivity of ψ: K[X]⊗_R K[X] → K[X]⊗K[G] through a degree.

    K[G] is graded so that τ is homogeneous when possible; otherwise every
    K[G] basis element gets degree 0 and the checks run on the filtration.
    Degree-d pieces are: deg f + deg h for sources, deg m + deg b for targets.
    """
    _require(c)
    sp = c.space
    G = c.group.algebra
    gdeg, graded = c.group_degrees()
    d = max_degree
    mons = sp.basis_upto(d)
    deg = {m: sp.degree(m) for m in mons}

    pairs = [(f, h) for f in mons for h in mons if deg[f] + deg[h] <= d]
    img = Echelon(c.field)
    for f, h in pairs:
        img.add(psi_apply(c, sp.key_element(f), sp.key_element(h)).terms)
    targets = [(m, b) for m in mons for b in G.all_basis() if deg[m] + gdeg(b) <= d]
    missing = [(m, b) for m, b in targets if not img.contains({(m, b): c.field.one})]
    surjective = not missing

    # balanced tensor over R: (f r)⊗h = f⊗(r h), for invariants r of positive degree
    index = {p: i for i, p in enumerate(pairs)}
    rel = Echelon(c.field)
    for e in range(1, d + 1):
        for r in ring.slice(e):
            for f in mons:
                if deg[f] + e > d:
                    continue
                fr = sp.key_element(f) * r
                for h in mons:
                    if deg[f] + e + deg[h] > d:
                        continue
                    rh = r * sp.key_element(h)
                    v: dict = {}
                    for k, a in fr.terms.items():
                        v[index[(k, h)]] = v.get(index[(k, h)], 0) + a
                    for k, a in rh.terms.items():
                        v[index[(f, k)]] = v.get(index[(f, k)], 0) - a
                    rel.add({i: c.field.norm(a) for i, a in v.items() if c.field.norm(a)})
    upper = len(pairs) - rel.rank
    bijective = surjective and upper == img.rank
    caveat = ("balanced dimension uses relations from invariants of degree <= "
              f"{d}; it is an upper bound, and bijectivity is claimed only when it is attained")
    return PsiReport(d, graded, surjective,
                     [f"{sp.format_key(m)}⊗{G.format_key(b)}" for m, b in missing],
                     img.rank, len(targets), upper, bijective, caveat)


# free bases ----------------------------------------------------------------

@dataclass
class FreeBasisReport:
    candidates: list
    max_degree: int
    verified: bool
    rows: list
    failure: str = ""

    def to_dict(self) -> dict:
        return {"candidates": [str(b) for b in self.candidates], "max_degree": self.max_degree,
                "verified": self.verified, "degrees": self.rows, "failure": self.failure}


def verify_free_basis(c: Coaction, ring: InvariantRing, candidates: list,
                      max_degree: int) -> FreeBasisReport:
    """dim K[X]_e = Σ_i dim R_{e - deg b_i} and the R-span of the b_i is all of K[X]_e."""
    sp = c.space
    for b in candidates:
        if not b or b.parity() is None or b.low_degree() != b.degree():
            raise ValueError(f"basis candidate {b} is not homogeneous")
    rows = []
    failure = ""
    for e in range(max_degree + 1):
        full = len(sp.basis(e))
        expected = sum(len(ring.slice(e - b.degree())) for b in candidates if b.degree() <= e)
        ech = Echelon(c.field)
        for b in candidates:
            if b.degree() > e:
                continue
            for r in ring.slice(e - b.degree()):
                ech.add((r * b).terms)
        ok = full == expected == ech.rank
        rows.append({"degree": e, "dim_space": full, "dim_sum": expected, "span_rank": ech.rank,
                     "ok": ok})
        if not ok and not failure:
            missed = [m for m in sp.basis(e) if not ech.contains({m: c.field.one})]
            failure = (f"degree {e}: dim K[X]_{e} = {full}, Σ dim R = {expected}, "
                       f"span rank {ech.rank}")
            if missed:
                failure += f"; {sp.format_key(missed[0])} is not in the R-span"
    return FreeBasisReport(list(candidates), max_degree, not failure, rows, failure)


__all__ = [
    "FREE", "NOT_FREE", "UNKNOWN", "FreenessProblem", "FreenessVerdict", "MembershipCertificate",
    "check_free", "StabilizerWitness", "WitnessCheck", "verify_stabilizer_witness",
    "find_stabilizer_witness", "decide_freeness", "SplittingElement", "NotFoundAtBound",
    "find_gana_splitting", "decompose", "unit_inverse", "psi_apply", "PsiReport", "psi_certify",
    "FreeBasisReport", "verify_free_basis",
]
