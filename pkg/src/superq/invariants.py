"""Invariant rings R = ker(τ - i) computed one homogeneous degree at a time."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Element
from .coaction import Coaction, from_group_action
from .groups import FiniteGroup
from .hopf import constant_group
from .linalg import Echelon, kernel, rref, same_span


class UnvalidatedCoaction(ValueError):
    pass


def _require(c: Coaction) -> None:
    if not c.validated:
        raise UnvalidatedCoaction("coaction has not been validated; build it with a from_* constructor")


def _canonical(c: Coaction, vectors) -> list:
    sp = c.space
    rows = rref(c.field, vectors, key=sp.order_key)
    return [Element(sp, r) for r in rows]


def invariant_slice(c: Coaction, d: int) -> list:
    """Basis of {f in K[X]_d : τ(f) = f⊗1} in reduced echelon form."""
    _require(c)
    basis = c.space.basis(d)
    one_g = c.group.algebra.one_terms()
    images = []
    for m in basis:
        v = dict(c.tau_key(m).terms)
        for g, a in one_g.items():
            s = c.field.norm(v.get((m, g), 0) - a)
            if s:
                v[(m, g)] = s
            else:
                v.pop((m, g), None)
        images.append(v)
    vecs = [{basis[i]: a for i, a in rel.items()} for rel in kernel(c.field, images)]
    return _canonical(c, vecs)


def invariant_filtered(c: Coaction, d: int) -> list:
    """Basis of invariants of degree <= d, without assuming τ is graded."""
    _require(c)
    basis = c.space.basis_upto(d)
    diff = [(c.coact(c.space.key_element(m)) - c.include(c.space.key_element(m))).terms
            for m in basis]
    vecs = [{basis[i]: a for i, a in rel.items()} for rel in kernel(c.field, diff)]
    return _canonical(c, vecs)


def is_invariant(c: Coaction, f: Element) -> bool:
    return c.coact(f) == c.include(f)


def minimal_generators(c: Coaction, max_degree: int, ring: InvariantRing | None = None) -> dict:
    """Greedy degree-ascending generator ledger {degree: [new generators]}.

    At degree e the span of products of earlier generators is formed; slice
    elements outside it (in monomial order) become new generators.
    """
    _require(c)
    ring = ring or InvariantRing(c)
    sp = c.space
    field = c.field
    products: dict = {0: [sp.one()]}
    ledger: dict = {}
    chosen: list = []
    for e in range(1, max_degree + 1):
        prods = []
        for g in chosen:
            a = g.degree()
            for s in products.get(e - a, []):
                p = g * s
                if p:
                    prods.append(p.terms)
        ech = Echelon(field)
        for v in prods:
            ech.add(v)
        new = []
        for f in ring.slice(e):
            if ech.add(f.terms):
                new.append(f)
        ledger[e] = new
        chosen.extend(new)
        products[e] = _canonical(c, [r for r in ech.rows.values()])
    return ledger


@dataclass
class InvariantRing:
    """Lazily computed slices of R and its generator ledger."""

    coaction: Coaction
    slices: dict = dc_field(default_factory=dict)
    generator_ledger: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        _require(self.coaction)

    def slice(self, d: int) -> list:
        if d not in self.slices:
            self.slices[d] = invariant_slice(self.coaction, d) if d >= 0 else []
        return self.slices[d]

    def compute(self, max_degree: int) -> InvariantRing:
        for d in range(max_degree + 1):
            self.slice(d)
        return self

    def dims(self, max_degree: int) -> list:
        return [len(self.slice(d)) for d in range(max_degree + 1)]

    def generators(self, max_degree: int) -> dict:
        if len(self.generator_ledger) < max_degree:
            self.generator_ledger = minimal_generators(self.coaction, max_degree, ring=self)
        return {e: g for e, g in self.generator_ledger.items() if e <= max_degree}

    def contains(self, f: Element) -> bool:
        return is_invariant(self.coaction, f)


def compute_invariants(c: Coaction, max_degree: int) -> InvariantRing:
    return InvariantRing(c).compute(max_degree)


# iterated invariants for constant groups ----------------------------------

@dataclass
class IteratedReport:
    normal: tuple
    rows: list
    equal: bool
    witness_degree: int | None

    def to_dict(self) -> dict:
        return {"normal_subgroup": list(self.normal), "degrees": self.rows,
                "equal": self.equal, "witness_degree": self.witness_degree}


def subgroup(group: FiniteGroup, elements) -> FiniteGroup:
    els = [g for g in group.elements if g in set(elements)]
    return FiniteGroup(els, {(a, b): group.mul(a, b) for a in els for b in els})


def restrict(c: Coaction, elements) -> Coaction:
    """The coaction of a subgroup of a constant group."""
    if c.action is None:
        raise ValueError("restriction needs a group-action coaction")
    H = subgroup(c.group.group, elements)
    hopf_h = constant_group(c.field, H)
    images = {g: dict(c.action[g].images) for g in H.elements}
    return from_group_action(c.space, hopf_h, images)


def iterated_invariants_check(c: Coaction, normal, max_degree: int) -> IteratedReport:
    """Compare (K[X]^N)^{Γ/N} with K[X]^Γ degree by degree."""
    _require(c)
    if c.action is None:
        raise ValueError("iterated invariants need a group-action coaction")
    G = c.group.group
    normal = tuple(normal)
    if not G.is_normal(normal):
        raise ValueError(f"{list(normal)} is not a normal subgroup")
    quotient, label = G.quotient(normal)
    reps = [r for r in quotient.elements if r != label[G.identity]]
    inner = InvariantRing(restrict(c, normal))
    outer = InvariantRing(c)
    rows = []
    witness = None
    for d in range(max_degree + 1):
        base = inner.slice(d)
        diffs = []
        for b in base:
            v: dict = {}
            for r in reps:
                for k, a in (c.action[r](b) - b).terms.items():
                    v[(r, k)] = a
            diffs.append(v)
        vecs = []
        for rel in kernel(c.field, diffs):
            acc = c.space.zero()
            for i, a in rel.items():
                acc = acc + base[i].scale(a)
            vecs.append(acc.terms)
        iterated = _canonical(c, vecs)
        direct = outer.slice(d)
        ok = same_span(c.field, [f.terms for f in iterated], [f.terms for f in direct])
        rows.append({"degree": d, "dim_inner": len(base), "dim_iterated": len(iterated),
                     "dim_direct": len(direct), "equal": ok})
        if not ok and witness is None:
            witness = d
    return IteratedReport(normal, rows, witness is None, witness)
