"""The unitriangular supergroups U_σ(m|n) and their weight filtration.

Coordinates are x_ij for σ(i) < σ(j); x_ij is even when i and j lie on the
same side of m. Comultiplication is the transposed matrix rule
Δ(x_ij) = x_ij⊗1 + 1⊗x_ij + Σ_{σ(i)<σ(k)<σ(j)} x_kj⊗x_ik.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import (EVEN, ODD, AlgebraPresentation, Element, Morphism, SuperVariable,
                      TensorAlgebra, map_legs, tensor)
from .field import FieldSpec
from .hopf import HopfSuperAlgebra, check_hopf_axioms


class ShuffleError(ValueError):
    pass


@dataclass(frozen=True)
class ShuffleData:
    m: int
    n: int
    sigma: tuple

    def __post_init__(self):
        r = self.m + self.n
        sigma = tuple(int(v) for v in self.sigma)
        object.__setattr__(self, "sigma", sigma)
        if self.m < 0 or self.n < 0 or r < 1:
            raise ShuffleError("need m, n >= 0 with m + n >= 1")
        if sorted(sigma) != list(range(1, r + 1)):
            raise ShuffleError(f"sigma {sigma} is not a permutation of 1..{r}")
        even, odd = sigma[:self.m], sigma[self.m:]
        if list(even) != sorted(even) or list(odd) != sorted(odd):
            raise ShuffleError(f"sigma {sigma} is not a shuffle of ({self.m}|{self.n})")

    @classmethod
    def identity(cls, m: int, n: int) -> ShuffleData:
        return cls(m, n, tuple(range(1, m + n + 1)))

    @classmethod
    def all_shuffles(cls, m: int, n: int) -> list:
        r = m + n
        out = []
        for evens in itertools.combinations(range(1, r + 1), m):
            odds = [v for v in range(1, r + 1) if v not in evens]
            out.append(cls(m, n, tuple(evens) + tuple(odds)))
        return out

    @property
    def r(self) -> int:
        return self.m + self.n

    def s(self, i: int) -> int:
        return self.sigma[i - 1]

    def pairs(self) -> list:
        return [(i, j) for i in range(1, self.r + 1) for j in range(1, self.r + 1)
                if self.s(i) < self.s(j)]

    def name(self, i: int, j: int) -> str:
        return f"x{i}{j}" if self.r < 10 else f"x{i}_{j}"

    def parity(self, i: int, j: int) -> int:
        return EVEN if (i <= self.m) == (j <= self.m) else ODD

    def gap(self, i: int, j: int) -> int:
        return self.s(j) - self.s(i)


@dataclass
class USigmaAlgebra:
    shuffle: ShuffleData
    hopf: HopfSuperAlgebra
    index: dict = dc_field(default_factory=dict)  # generator name -> (i, j)

    @property
    def presentation(self) -> AlgebraPresentation:
        return self.hopf.algebra


def build_u_sigma(s: ShuffleData, field: FieldSpec | None = None, verify_degree: int = 1) -> USigmaAlgebra:
    """K[U_σ] with Δ, ε and the antipode from the unitriangular recursion.

    The Hopf axioms are checked on generators (``verify_degree`` = 1) or on
    all monomials up to ``verify_degree``; a failure raises.
    """
    field = field or FieldSpec.rationals()
    pairs = s.pairs()
    variables = [SuperVariable(s.name(i, j), s.parity(i, j)) for i, j in pairs]
    pres = AlgebraPresentation(field, variables)
    T = TensorAlgebra([pres, pres])
    x = {(i, j): pres.generator(s.name(i, j)) for i, j in pairs}
    one = pres.one()

    def tens(a, b):
        return tensor([a, b], T)

    comult, counit, antipode = {}, {}, {}
    for i, j in sorted(pairs, key=lambda p: s.gap(*p)):
        d = tens(x[(i, j)], one) + tens(one, x[(i, j)])
        acc = -x[(i, j)]
        for k in range(1, s.r + 1):
            if s.s(i) < s.s(k) < s.s(j):
                d = d + tens(x[(k, j)], x[(i, k)])
                acc = acc - antipode[s.name(k, j)] * x[(i, k)]
        name = s.name(i, j)
        comult[name], counit[name], antipode[name] = d, 0, acc
    h = HopfSuperAlgebra(pres, comult, counit, antipode,
                         name=f"U_sigma({s.m}|{s.n}), sigma={list(s.sigma)}")
    report = check_hopf_axioms(h, max_degree=verify_degree)
    if not report.ok:
        first = report.failures[0]
        raise ShuffleError(f"Hopf axiom {first.identity} fails at {first.witness}")
    return USigmaAlgebra(s, h, {s.name(i, j): (i, j) for i, j in pairs})


def weight(u: USigmaAlgebra, key) -> int:
    """Σ over the factors of the monomial of σ(j) - σ(i)."""
    s = u.shuffle
    return sum(s.gap(*u.index[name]) for name in u.presentation.word(key))


@dataclass
class FiltrationReport:
    max_degree: int
    checked: int
    passed: bool
    witnesses: list

    def to_dict(self) -> dict:
        return {"max_degree": self.max_degree, "checked": self.checked, "passed": self.passed,
                "witnesses": self.witnesses[:10]}


def filtration_check(u: USigmaAlgebra, max_degree: int) -> FiltrationReport:
    """Every left factor of Δ(m) - m⊗1 has lower degree, or equal degree and lower weight."""
    pres = u.presentation
    witnesses = []
    checked = 0
    for k in range(1, max_degree + 1):
        for m in pres.basis(k):
            checked += 1
            wm = weight(u, m)
            rest = u.hopf.delta_key(m) - u.hopf.tensor2.key_element((m, pres.unit_key))
            for (a, b) in rest.terms:
                da = pres.degree(a)
                if da < k or (da == k and weight(u, a) < wm):
                    continue
                witnesses.append({"monomial": pres.format_key(m),
                                  "term": f"{pres.format_key(a)}⊗{pres.format_key(b)}"})
    return FiltrationReport(max_degree, checked, not witnesses, witnesses)


@dataclass
class BkReport:
    level: int
    generators: list
    passed: bool
    failures: list
    excluded_closed: dict

    def to_dict(self) -> dict:
        return {"level": self.level, "generators": self.generators, "passed": self.passed,
                "failures": self.failures, "excluded_closed": self.excluded_closed}


def bk_subbialgebra_check(u: USigmaAlgebra, k: int) -> BkReport:
    """B_k = K[x_ij | σ(j) - σ(i) <= k]: Δ(B_k gens) ⊂ B_k⊗B_k and S(B_k gens) ⊂ B_k.

    ``excluded_closed`` records, for generators outside B_k, whether their
    comultiplication would still land in B_k⊗B_k (it never does, since it
    contains x_ij⊗1).
    """
    if k < 1:
        raise ValueError("level must be at least 1")
    s, pres, h = u.shuffle, u.presentation, u.hopf
    inside = {n for n, (i, j) in u.index.items() if s.gap(i, j) <= k}

    def in_bk(key) -> bool:
        return all(name in inside for name in pres.word(key))

    failures = []
    for name in sorted(inside, key=pres.generator_names.index):
        d = h.comultiply(pres.generator(name))
        if not all(in_bk(a) and in_bk(b) for a, b in d.terms):
            failures.append({"generator": name, "map": "comultiplication", "image": str(d)})
        sv = h.antipode(pres.generator(name))
        if not all(in_bk(a) for a in sv.terms):
            failures.append({"generator": name, "map": "antipode", "image": str(sv)})
    excluded = {}
    for name in pres.generator_names:
        if name not in inside:
            d = h.comultiply(pres.generator(name))
            excluded[name] = all(in_bk(a) and in_bk(b) for a, b in d.terms)
    return BkReport(k, sorted(inside, key=pres.generator_names.index), not failures, failures,
                    excluded)


def max_level(s: ShuffleData) -> int:
    return max((s.gap(i, j) for i, j in s.pairs()), default=0)


def structure_matches(h: HopfSuperAlgebra, other: HopfSuperAlgebra, renaming: dict) -> bool:
    """True when renaming generators of h carries Δ, ε, S of h onto those of ``other``."""
    A, B = h.algebra, other.algebra
    if set(renaming) != set(A.generator_names) or set(renaming.values()) != set(B.generator_names):
        return False
    for n in A.generator_names:
        if A.generator(n).parity() != B.generator(renaming[n]).parity():
            return False
    phi = Morphism(A, B, {n: B.generator(renaming[n]) for n in A.generator_names})
    for n in A.generator_names:
        m = renaming[n]
        moved = map_legs(h.comultiply(A.generator(n)), [phi.on_key, phi.on_key], other.tensor2)
        if moved != other.comultiply(B.generator(m)):
            return False
        if h.counit(A.generator(n)) != other.counit(B.generator(m)):
            return False
        if phi(h.antipode(A.generator(n))) != other.antipode(B.generator(m)):
            return False
    return True


def element_weight(u: USigmaAlgebra, e: Element) -> int:
    return max((weight(u, k) for k in e.terms), default=0)
