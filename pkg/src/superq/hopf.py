"""Coordinate Hopf superalgebras of finite supergroups.

The catalog covers the odd additive supergroup (K[t], t odd), first
Frobenius kernels K[u]/u^p, constant groups (idempotent basis e_g dual to a
finite group) and tensor products of these. Structure maps are stored on
generators and extended multiplicatively; :func:`check_hopf_axioms`
verifies every axiom on basis elements by exact expansion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .algebra import (EVEN, ODD, Algebra, AlgebraPresentation, Element, FiniteAlgebra,
                      Morphism, SuperVariable, TensorAlgebra, ground_algebra, map_legs,
                      multiply_legs, tensor)
from .field import FieldSpec
from .groups import FiniteGroup
from .linalg import Echelon

ODD_ADDITIVE = "odd-additive"
FROBENIUS_1 = "frobenius-1"
CONSTANT = "constant"
PRODUCT = "product"
KINDS = (ODD_ADDITIVE, FROBENIUS_1, CONSTANT, PRODUCT)


class HopfError(ValueError):
    pass


@dataclass(frozen=True)
class SupergroupSpec:
    kind: str
    group: FiniteGroup | None = None
    factors: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise HopfError(f"unknown supergroup kind {self.kind!r}")
        if self.kind == CONSTANT and self.group is None:
            raise HopfError("constant supergroup needs a finite group")
        if self.kind == PRODUCT and len(self.factors) < 1:
            raise HopfError("product needs at least one factor")

    def describe(self) -> str:
        if self.kind == CONSTANT:
            return f"constant(order {len(self.group)})"
        if self.kind == PRODUCT:
            return " x ".join(f.describe() for f in self.factors)
        return self.kind


class HopfSuperAlgebra:
    """K[G] with comultiplication, counit and antipode given on generators."""

    def __init__(self, algebra: Algebra, comult: Mapping[str, Element],
                 counit: Mapping[str, object], antipode: Mapping[str, Element],
                 name: str = "H", spec: SupergroupSpec | None = None):
        self.algebra = algebra
        self.field = algebra.field
        self.name = name
        self.spec = spec
        self.ground = ground_algebra(self.field)
        self.tensor2 = TensorAlgebra([algebra, algebra])
        self.comult_gens = dict(comult)
        self.counit_gens = {k: self.field.coerce(v) for k, v in counit.items()}
        self.antipode_gens = dict(antipode)
        self._delta = Morphism(algebra, self.tensor2, self.comult_gens)
        self._eps = Morphism(algebra, self.ground,
                             {k: self.ground.scalar(v) for k, v in self.counit_gens.items()})
        self._s = Morphism(algebra, algebra, self.antipode_gens)

    def __repr__(self):
        return f"HopfSuperAlgebra({self.name}, dim={self.algebra.dimension()})"

    # basis-level structure maps
    def delta_key(self, key) -> Element:
        return self._delta.on_key(key)

    def eps_key_element(self, key) -> Element:
        return self._eps.on_key(key)

    def eps_key(self, key):
        e = self._eps.on_key(key)
        return e.terms.get(self.ground.unit_key, self.field.zero)

    def s_key(self, key) -> Element:
        return self._s.on_key(key)

    # element-level
    def comultiply(self, e: Element) -> Element:
        return self._delta(e)

    def counit(self, e: Element):
        return sum((c * self.eps_key(k) for k, c in e.terms.items()), self.field.zero)

    def antipode(self, e: Element) -> Element:
        return self._s(e)

    def basis(self) -> list:
        return self.algebra.all_basis()


def order(h: HopfSuperAlgebra) -> int:
    """dim K[G]."""
    d = h.algebra.dimension()
    if d is None:
        raise HopfError(f"{h.name} is infinite-dimensional and has no order")
    return d


# construction ----------------------------------------------------------

def _primitive(pres: AlgebraPresentation, name: str) -> Element:
    t2 = TensorAlgebra([pres, pres])
    g = pres.generator(name)
    return tensor([g, pres.one()], t2) + tensor([pres.one(), g], t2)


def odd_additive(field: FieldSpec) -> HopfSuperAlgebra:
    pres = AlgebraPresentation(field, [SuperVariable("t", ODD)])
    t = pres.generator("t")
    return HopfSuperAlgebra(pres, {"t": _primitive(pres, "t")}, {"t": 0}, {"t": -t},
                            name="G_a^-", spec=SupergroupSpec(ODD_ADDITIVE))


def even_additive(field: FieldSpec, var: str = "s") -> HopfSuperAlgebra:
    """G_a: K[s], s even primitive (infinite-dimensional; not a finite supergroup)."""
    pres = AlgebraPresentation(field, [SuperVariable(var, EVEN)])
    s = pres.generator(var)
    return HopfSuperAlgebra(pres, {var: _primitive(pres, var)}, {var: 0}, {var: -s},
                            name="G_a")


def frobenius_kernel(field: FieldSpec, height: int = 1) -> HopfSuperAlgebra:
    """K[u]/u^(p^height) with u primitive; the catalog uses height 1."""
    if field.characteristic == 0:
        raise HopfError("Frobenius kernels need a field of positive characteristic")
    q = field.characteristic ** height
    pres = AlgebraPresentation(field, [SuperVariable("u", EVEN)], {"u": q})
    u = pres.generator("u")
    spec = SupergroupSpec(FROBENIUS_1) if height == 1 else None
    return HopfSuperAlgebra(pres, {"u": _primitive(pres, "u")}, {"u": 0}, {"u": -u},
                            name=f"G_a(1)/F{field.characteristic}" if height == 1
                            else f"G_a({height})/F{field.characteristic}", spec=spec)


def idempotent_label(g: str) -> str:
    return f"e_{g}"


def constant_group(field: FieldSpec, group: FiniteGroup) -> HopfSuperAlgebra:
    """(K Gamma)^*: idempotents e_g, Δe_g = Σ_h e_h⊗e_{h^-1 g}, ε(e_g)=δ_{g,1}, S e_g = e_{g^-1}."""
    labels = [idempotent_label(g) for g in group.elements]
    table = {(a, a): [(a, 1)] for a in labels}
    alg = FiniteAlgebra(field, labels, {a: EVEN for a in labels}, table,
                        {a: 1 for a in labels}, name=f"(KΓ)*, |Γ|={len(group)}")
    t2 = TensorAlgebra([alg, alg])
    comult, counit, antipode = {}, {}, {}
    for g in group.elements:
        lab = idempotent_label(g)
        comult[lab] = Element(t2, {(idempotent_label(h),
                                    idempotent_label(group.mul(group.inverse(h), g))): field.one
                                   for h in group.elements})
        counit[lab] = 1 if g == group.identity else 0
        antipode[lab] = alg.generator(idempotent_label(group.inverse(g)))
    h = HopfSuperAlgebra(alg, comult, counit, antipode, name=f"const(|Γ|={len(group)})",
                         spec=SupergroupSpec(CONSTANT, group=group))
    h.group = group
    return h


def product(factors: Sequence[HopfSuperAlgebra]) -> HopfSuperAlgebra:
    """Tensor product Hopf superalgebra; generators are named ``"<i>.<name>"``."""
    factors = list(factors)
    alg = TensorAlgebra([f.algebra for f in factors])
    t2 = TensorAlgebra([alg, alg])
    comult, counit, antipode = {}, {}, {}
    for i, f in enumerate(factors):
        def include(key, i=i, f=f):
            legs = [g.algebra.one() for g in factors]
            legs[i] = f.algebra.key_element(key)
            return tensor(legs, alg)

        for g in f.algebra.generator_names:
            name = f"{i + 1}.{g}"
            comult[name] = map_legs(f.comult_gens[g], [include, include], t2, flatten=False)
            counit[name] = f.counit_gens[g]
            img = f.antipode_gens[g]
            antipode[name] = sum((include(k).scale(c) for k, c in img.terms.items()),
                                 alg.zero())
    spec = SupergroupSpec(PRODUCT, factors=tuple(f.spec for f in factors))
    return HopfSuperAlgebra(alg, comult, counit, antipode,
                            name=" x ".join(f.name for f in factors), spec=spec)


def build(spec: SupergroupSpec, field: FieldSpec) -> HopfSuperAlgebra:
    if spec.kind == ODD_ADDITIVE:
        return odd_additive(field)
    if spec.kind == FROBENIUS_1:
        return frobenius_kernel(field, 1)
    if spec.kind == CONSTANT:
        return constant_group(field, spec.group)
    return product([build(f, field) for f in spec.factors])


# verification ----------------------------------------------------------

@dataclass
class AxiomFailure:
    identity: str
    witness: str
    detail: str = ""


@dataclass
class HopfReport:
    name: str
    checked: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"hopf_algebra": self.name, "basis_elements_checked": self.checked,
                "ok": self.ok,
                "failures": [{"identity": f.identity, "witness": f.witness, "detail": f.detail}
                             for f in self.failures]}


def check_hopf_axioms(h: HopfSuperAlgebra, max_degree: int | None = None) -> HopfReport:
    """Verify the Hopf superalgebra axioms on basis elements.

    Finite-dimensional algebras are checked on their whole basis; otherwise
    ``max_degree`` bounds the basis monomials (and pairs for multiplicativity).
    """
    A = h.algebra
    if A.dimension() is None:
        if max_degree is None:
            raise HopfError("max_degree is required for infinite-dimensional algebras")
        keys = A.basis_upto(max_degree)
    else:
        keys = A.all_basis()
    t3 = TensorAlgebra([A, A, A])
    report = HopfReport(h.name, checked=len(keys))
    fail = report.failures.append
    fmt = A.format_key
    delta, eps_el, s = h.delta_key, h.eps_key_element, h.s_key

    for k in keys:
        dk = delta(k)
        p = A.parity(k)
        if any(h.tensor2.parity(t) != p for t in dk.terms):
            fail(AxiomFailure("comultiplication-parity", fmt(k), str(dk)))
        sk = s(k)
        if any(A.parity(t) != p for t in sk.terms):
            fail(AxiomFailure("antipode-parity", fmt(k), str(sk)))
        if p == ODD and h.eps_key(k):
            fail(AxiomFailure("counit-parity", fmt(k)))
        left = map_legs(dk, [delta, None], t3)
        right = map_legs(dk, [None, delta], t3)
        if left != right:
            fail(AxiomFailure("coassociativity", fmt(k), f"{left} != {right}"))
        kel = A.key_element(k)
        for label, maps in (("counit-left", [eps_el, None]), ("counit-right", [None, eps_el])):
            got = map_legs(dk, maps, A)
            if got != kel:
                fail(AxiomFailure(label, fmt(k), f"{got} != {kel}"))
        unit_eps = A.one().scale(h.eps_key(k))
        for label, maps in (("antipode-left", [s, None]), ("antipode-right", [None, s])):
            got = multiply_legs(map_legs(dk, maps, h.tensor2), A)
            if got != unit_eps:
                fail(AxiomFailure(label, fmt(k), f"{got} != {unit_eps}"))

    one = A.one()
    if h.comultiply(one) != tensor([one, one], h.tensor2):
        fail(AxiomFailure("comultiplication-unit", "1"))
    if h.counit(one) != h.field.one:
        fail(AxiomFailure("counit-unit", "1"))
    if h.antipode(one) != one:
        fail(AxiomFailure("antipode-unit", "1"))

    for a, b in itertools.product(keys, repeat=2):
        if max_degree is not None and A.degree(a) + A.degree(b) > max_degree:
            continue
        ab = A.key_element(a) * A.key_element(b)
        if h.comultiply(ab) != delta(a) * delta(b):
            fail(AxiomFailure("comultiplication-multiplicative", f"{fmt(a)}, {fmt(b)}"))
        if h.counit(ab) != h.field.norm(h.eps_key(a) * h.eps_key(b)):
            fail(AxiomFailure("counit-multiplicative", f"{fmt(a)}, {fmt(b)}"))
        # supercommutative, so S is multiplicative rather than anti-multiplicative
        if h.antipode(ab) != s(a) * s(b):
            fail(AxiomFailure("antipode-multiplicative", f"{fmt(a)}, {fmt(b)}"))
    return report


def augmentation_ideal_basis(h: HopfSuperAlgebra) -> list:
    """Basis of ker ε, taken from b - ε(b)·1 over basis elements b.

    Basis elements already in the kernel come first, so for idempotent bases
    the result is {e_g : g != 1}.
    """
    A = h.algebra
    keys = A.all_basis()
    one = A.one()
    cands = [A.key_element(k) for k in keys if not h.eps_key(k)]
    cands += [A.key_element(k) - one.scale(h.eps_key(k)) for k in keys if h.eps_key(k)]
    ech = Echelon(h.field)
    out = []
    for c in cands:
        if c and ech.add(dict(c.terms)):
            out.append(c)
    return out
