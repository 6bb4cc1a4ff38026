"""Right coactions τ: K[X] → K[X]⊗K[G] making K[X] a comodule superalgebra.

A coaction is stored by its values on the generators of K[X] and extended
multiplicatively through the Koszul-signed product of K[X]⊗K[G]. Three
constructors cover the odd additive group (odd derivations with φ² = 0),
constant groups (a group acting by superalgebra automorphisms) and anything
else given explicitly. All of them validate before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import (EVEN, ODD, AlgebraPresentation, Element, Morphism, TensorAlgebra,
                      map_legs, tensor)
from .hopf import CONSTANT, ODD_ADDITIVE, HopfSuperAlgebra, idempotent_label


class CoactionError(ValueError):
    """A comodule law failed; ``law`` names it and ``witness`` shows where."""

    def __init__(self, law: str, witness: str, detail: str = ""):
        msg = f"{law} fails at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.law = law
        self.witness = witness
        self.detail = detail


class OddDerivation:
    """Odd right superderivation φ given on generators.

    φ(f1 f2) = f1 φ(f2) + (-1)^{|f2|} φ(f1) f2.
    """

    def __init__(self, space: AlgebraPresentation, images: Mapping[str, Element]):
        self.space = space
        self.images = {}
        for name in space.generator_names:
            img = images.get(name, space.zero())
            if img.algebra != space:
                raise ValueError(f"image of {name} is not in {space}")
            var = space.variable(name)
            if img and img.parity() != 1 - var.parity:
                raise CoactionError("parity", name,
                                    f"φ({name}) = {img} must have parity opposite to {name}")
            if img.degree() > var.degree:
                raise CoactionError("filtration", name,
                                    f"φ({name}) = {img} has degree above {var.degree}")
            self.images[name] = img
        extra = set(images) - set(space.generator_names)
        if extra:
            raise ValueError(f"derivation given on unknown generators {sorted(extra)}")
        self._cache: dict = {}

    def on_key(self, key) -> Element:
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        sp = self.space
        prod = sp.one()
        d = sp.zero()
        for name in sp.word(key):
            g = sp.generator(name)
            step = prod * self.images[name]
            if sp.variable(name).parity == ODD:
                step = step - d * g
            else:
                step = step + d * g
            d = step
            prod = prod * g
        self._cache[key] = d
        return d

    def __call__(self, p: Element) -> Element:
        out = self.space.zero()
        for k, c in p.terms.items():
            out = out + self.on_key(k).scale(c)
        return out

    def square_witness(self) -> str | None:
        """First generator g with φ(φ(g)) != 0, or None."""
        for name in self.space.generator_names:
            if self(self.images[name]):
                return name
        return None


def apply_derivation(phi: OddDerivation, p: Element) -> Element:
    return phi(p)


class Coaction:
    """τ_X on generators; use the ``from_*`` constructors for validated instances."""

    def __init__(self, space: AlgebraPresentation, group: HopfSuperAlgebra,
                 tau_on_generators: Mapping[str, Element], kind: str = "explicit"):
        self.space = space
        self.group = group
        self.field = space.field
        if group.field != space.field:
            raise ValueError("space and group are over different fields")
        self.tensor = TensorAlgebra([space, group.algebra])
        self.tensor3 = TensorAlgebra([space, group.algebra, group.algebra])
        missing = [n for n in space.generator_names if n not in tau_on_generators]
        if missing:
            raise ValueError(f"τ not given on generators {missing}")
        self.tau_gens = {n: tau_on_generators[n] for n in space.generator_names}
        self.kind = kind
        self.validated = False
        self.derivation: OddDerivation | None = None
        self.action: dict | None = None
        self._tau = Morphism(space, self.tensor, self.tau_gens)
        self._gdeg = None

    def __repr__(self):
        return f"Coaction({self.kind}, {self.space}, {self.group.name})"

    def tau_key(self, key) -> Element:
        return self._tau.on_key(key)

    def coact(self, p: Element) -> Element:
        return self._tau(p)

    def include(self, p: Element) -> Element:
        """i_X(f) = f⊗1."""
        return tensor([p, self.group.algebra.one()], self.tensor)

    def eps_leg(self, key) -> Element:
        return self.group.eps_key_element(key)

    # grading of K[G] making τ homogeneous, when one exists -------------

    def group_degrees(self) -> tuple:
        """(degree function on K[G] basis keys, graded flag).

        Generators of K[G] that appear as powers g^n on the right of some
        τ(x) get degree (deg x - deg left)/n; idempotent-type generators get
        degree 0. If the result makes every τ(x) homogeneous, the flag is
        True; otherwise all degrees fall back to 0.
        """
        if self._gdeg is None:
            self._gdeg = _infer_group_degrees(self)
        return self._gdeg


def _infer_group_degrees(c: Coaction):
    G = c.group.algebra
    sp = c.space
    gdeg: dict = {}
    for name, img in c.tau_gens.items():
        dx = sp.variable(name).degree
        for (m, b), _ in img.terms.items():
            w = G.word(b)
            if not w or len(set(w)) != 1:
                continue
            g = w[0]
            val = Fraction(dx - sp.degree(m), len(w))
            if g in gdeg and gdeg[g] != val:
                return (lambda key: 0), False
            gdeg[g] = val
    for g in G.generator_names:
        gdeg.setdefault(g, Fraction(0))
    if any(v < 0 or v.denominator != 1 for v in gdeg.values()):
        return (lambda key: 0), False
    # idempotents e^2 = e force degree 0
    for g in G.generator_names:
        e = G.generator(g)
        if gdeg[g] and e * e == e:
            return (lambda key: 0), False

    def degree(key, _cache={}):
        hit = _cache.get(key)
        if hit is None:
            hit = int(sum(gdeg[g] for g in G.word(key)))
            _cache[key] = hit
        return hit

    for name, img in c.tau_gens.items():
        dx = sp.variable(name).degree
        for (m, b) in img.terms:
            if sp.degree(m) + degree(b) != dx:
                return (lambda key: 0), False
    return degree, True


# validation --------------------------------------------------------------

def _fmt_key(c: Coaction, key) -> str:
    return c.space.format_key(key)


def _validate_generators(c: Coaction) -> None:
    sp, G = c.space, c.group
    for name, img in c.tau_gens.items():
        if img.algebra != c.tensor:
            raise CoactionError("shape", name, "τ image must lie in K[X]⊗K[G]")
        var = sp.variable(name)
        if any(c.tensor.parity(k) != var.parity for k in img.terms):
            raise CoactionError("parity", name, f"τ({name}) = {img} is not of parity {var.parity}")
        if any(sp.degree(k[0]) > var.degree for k in img.terms):
            raise CoactionError("filtration", name,
                                f"τ({name}) has a left factor of degree above {var.degree}")
    for name, q in sp.power_relations:
        if c.tau_gens[name] ** q:
            raise CoactionError("relations", name, f"τ({name})^{q} != 0")
    for v in sp.odd_vars:
        if c.tau_gens[v.name] * c.tau_gens[v.name]:
            raise CoactionError("relations", v.name, f"τ({v.name})^2 != 0")
    for name in sp.generator_names:
        _check_key_laws(c, sp.generator_key(name), name)


def _check_key_laws(c: Coaction, key, label: str) -> None:
    if key is None:
        return
    tk = c.tau_key(key)
    got = map_legs(tk, [None, c.eps_leg], c.space)
    want = c.space.key_element(key)
    if got != want:
        raise CoactionError("counit", label, f"(id⊗ε)τ = {got}, expected {want}")
    left = map_legs(tk, [c.tau_key, None], c.tensor3)
    right = map_legs(tk, [None, c.group.delta_key], c.tensor3)
    if left != right:
        raise CoactionError("coassociativity", label, f"(τ⊗id)τ = {left} but (id⊗Δ)τ = {right}")


def check_comodule_laws(c: Coaction, max_degree: int = 6) -> list:
    """Counit and coassociativity on every monomial of degree <= max_degree.

    Returns a list of CoactionError (empty when everything holds).
    """
    failures = []
    for d in range(max_degree + 1):
        for key in c.space.basis(d):
            try:
                _check_key_laws(c, key, _fmt_key(c, key))
            except CoactionError as err:
                failures.append(err)
    return failures


def _finish(c: Coaction, check_degree: int) -> Coaction:
    _validate_generators(c)
    failures = check_comodule_laws(c, check_degree)
    if failures:
        raise failures[0]
    c.validated = True
    return c


def from_odd_derivation(phi: OddDerivation, group: HopfSuperAlgebra,
                        check_degree: int = 2) -> Coaction:
    """τ(f) = f⊗1 + φ(f)⊗t for the odd additive group K[t]."""
    if group.spec is None or group.spec.kind != ODD_ADDITIVE:
        raise CoactionError("group", group.name, "odd derivations need the odd additive group")
    if group.field != phi.space.field:
        raise ValueError("derivation and group over different fields")
    bad = phi.square_witness()
    if bad is not None:
        raise CoactionError("φ²=0", bad, f"φ(φ({bad})) = {phi(phi.images[bad])}")
    sp = phi.space
    T = TensorAlgebra([sp, group.algebra])
    t = group.algebra.generator("t")
    one_g = group.algebra.one()
    tau = {n: tensor([sp.generator(n), one_g], T) + tensor([phi.images[n], t], T)
           for n in sp.generator_names}
    c = Coaction(sp, group, tau, kind="odd-derivation")
    c.derivation = phi
    return _finish(c, check_degree)


def from_group_action(space: AlgebraPresentation, group: HopfSuperAlgebra,
                      images: Mapping[str, Mapping[str, Element]],
                      check_degree: int = 2) -> Coaction:
    """τ(f) = Σ_g (g·f)⊗e_g for a constant group acting by automorphisms.

    ``images[g][x]`` is g·x. Elements missing from ``images`` act trivially
    only if they are the identity; every other element must be given.
    """
    if group.spec is None or group.spec.kind != CONSTANT:
        raise CoactionError("group", group.name, "group actions need a constant group")
    G = group.group
    gens = space.generator_names
    maps = {}
    for g in G.elements:
        if g not in images:
            if g == G.identity:
                imgs = {n: space.generator(n) for n in gens}
            else:
                raise CoactionError("action", g, f"no images given for group element {g}")
        else:
            imgs = {n: images[g].get(n, space.generator(n)) for n in gens}
        for n, img in imgs.items():
            var = space.variable(n)
            if img.algebra != space:
                raise ValueError(f"image of {n} under {g} is not in {space}")
            if img and img.parity() != var.parity:
                raise CoactionError("parity", f"{g}·{n}", f"{img} is not of parity {var.parity}")
            if img.degree() > var.degree:
                raise CoactionError("filtration", f"{g}·{n}", f"{img} raises degree")
        maps[g] = Morphism(space, space, imgs)
    for n in gens:
        if maps[G.identity].images[n] != space.generator(n):
            raise CoactionError("action", f"1·{n}", "identity does not act trivially")
    for g in G.elements:
        for name, q in space.power_relations:
            if maps[g].images[name] ** q:
                raise CoactionError("relations", f"{g}·{name}", f"({g}·{name})^{q} != 0")
    for g in G.elements:
        for h in G.elements:
            gh = G.mul(g, h)
            for n in gens:
                lhs = maps[gh].images[n]
                rhs = maps[g](maps[h].images[n])
                if lhs != rhs:
                    raise CoactionError("action", f"({g}*{h})·{n}",
                                        f"{lhs} != {g}·({h}·{n}) = {rhs}")
    T = TensorAlgebra([space, group.algebra])
    tau = {}
    for n in gens:
        acc = T.zero()
        for g in G.elements:
            acc = acc + tensor([maps[g].images[n], group.algebra.generator(idempotent_label(g))], T)
        tau[n] = acc
    c = Coaction(space, group, tau, kind="group-action")
    c.action = maps
    return _finish(c, check_degree)


def from_explicit(space: AlgebraPresentation, group: HopfSuperAlgebra,
                  tau_on_generators: Mapping[str, Element], check_degree: int = 2) -> Coaction:
    c = Coaction(space, group, tau_on_generators, kind="explicit")
    return _finish(c, check_degree)


def trivial(space: AlgebraPresentation, group: HopfSuperAlgebra) -> Coaction:
    T = TensorAlgebra([space, group.algebra])
    tau = {n: tensor([space.generator(n), group.algebra.one()], T)
           for n in space.generator_names}
    return from_explicit(space, group, tau)


def coact(c: Coaction, p: Element) -> Element:
    return c.coact(p)


def act(c: Coaction, g: str, p: Element) -> Element:
    """g·p for a constant-group coaction, read off as (id⊗ev_g)τ(p)."""
    target = idempotent_label(g)
    ground = c.group.ground

    def ev(key):
        return ground.one() if key == target else ground.zero()

    return map_legs(c.coact(p), [None, ev], c.space)


def derivation_of(c: Coaction) -> Element:
    """The ⊗t component map, for odd additive coactions (recovers φ)."""
    t_key = c.group.algebra.generator_key("t")

    def phi(p: Element) -> Element:
        out = {}
        for (m, b), v in c.coact(p).terms.items():
            if b == t_key:
                out[m] = v
        return Element(c.space, out)

    return phi
