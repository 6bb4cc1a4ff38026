"""Supercommutative algebras with exact coefficients.

Three kinds of algebra share one element type:

* :class:`AlgebraPresentation` -- K[x_1..x_m | theta_1..theta_n] with optional
  truncations x^q = 0 on even generators. Keys are :class:`Monomial`.
* :class:`FiniteAlgebra` -- a finite-dimensional superalgebra given by
  structure constants on a labelled basis (used for idempotent bases).
* :class:`TensorAlgebra` -- the graded tensor product of other algebras, with
  the Koszul rule (a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd. Keys are flat tuples.

Elements are immutable :class:`Element` instances holding a dict from basis
keys to nonzero canonical scalars.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .field import FieldSpec

EVEN = 0
ODD = 1

_PARITY_NAMES = {"even": EVEN, "odd": ODD, EVEN: EVEN, ODD: ODD}


def parse_parity(value) -> int:
    try:
        return _PARITY_NAMES[value]
    except KeyError:
        raise ValueError(f"unknown parity {value!r}") from None


@dataclass(frozen=True)
class SuperVariable:
    name: str
    parity: int = EVEN
    degree: int = 1

    def __post_init__(self):
        object.__setattr__(self, "parity", parse_parity(self.parity))
        if not self.name.isidentifier():
            raise ValueError(f"invalid generator name {self.name!r}")
        if self.degree < 1:
            raise ValueError(f"generator {self.name} must have positive degree")


class Monomial(NamedTuple):
    """Exponents of the even generators and the sorted odd support."""

    even: tuple
    odd: tuple


def koszul_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of reordering the product of odd supports ``a`` then ``b``.

    Returns 0 when the supports meet (the product vanishes), otherwise
    (-1)^(number of pairs i in a, j in b with i > j).
    """
    if not a or not b:
        return 1
    inversions = 0
    j = 0
    nb = len(b)
    # for each i in a, count entries of b smaller than it
    for i in a:
        while j < nb and b[j] < i:
            j += 1
        if j < nb and b[j] == i:
            return 0
        inversions += j
    return -1 if inversions & 1 else 1


class Algebra:
    """Common interface of the algebra kinds; see the module docstring."""

    field: FieldSpec

    def parity(self, key) -> int:
        raise NotImplementedError

    def degree(self, key) -> int:
        raise NotImplementedError

    def mul_keys(self, a, b) -> list:
        raise NotImplementedError

    def one_terms(self) -> dict:
        raise NotImplementedError

    def basis(self, degree: int) -> list:
        raise NotImplementedError

    def dimension(self) -> int | None:
        """Total dimension, or None when infinite."""
        raise NotImplementedError

    def word(self, key) -> tuple:
        """Generator names whose ordered product is the basis element ``key``."""
        raise NotImplementedError

    @property
    def generator_names(self) -> tuple:
        raise NotImplementedError

    def generator(self, name: str) -> Element:
        raise NotImplementedError

    def format_key(self, key) -> str:
        raise NotImplementedError

    def order_key(self, key):
        raise NotImplementedError

    # shared helpers ---------------------------------------------------

    def max_degree(self) -> int:
        """Largest degree carrying a basis element (finite algebras only)."""
        if self.dimension() is None:
            raise ValueError("algebra is infinite-dimensional")
        d = 0
        top = 0
        seen = 0
        total = self.dimension()
        while seen < total:
            n = len(self.basis(d))
            if n:
                top = d
            seen += n
            d += 1
        return top

    def all_basis(self) -> list:
        if self.dimension() is None:
            raise ValueError("algebra is infinite-dimensional")
        out = []
        for d in range(self.max_degree() + 1):
            out.extend(self.basis(d))
        return out

    def basis_upto(self, degree: int) -> list:
        out = []
        for d in range(degree + 1):
            out.extend(self.basis(d))
        return out

    def one(self) -> Element:
        return Element(self, self.one_terms(), _clean=True)

    def zero(self) -> Element:
        return Element(self, {}, _clean=True)

    def scalar(self, c) -> Element:
        return self.one().scale(self.field.coerce(c))

    def key_element(self, key, coeff=1) -> Element:
        return Element(self, {key: self.field.coerce(coeff)})

    def element(self, terms: Mapping) -> Element:
        return Element(self, {k: self.field.coerce(v) for k, v in terms.items()})

    def gens(self) -> dict:
        return {n: self.generator(n) for n in self.generator_names}


@dataclass(frozen=True)
class AlgebraPresentation(Algebra):
    """K[x_1..x_m | theta_1..theta_n] / (x_i^{q_i}).

    ``power_relations`` maps even generator names to the exponent q that
    vanishes. Odd generators square to zero implicitly.
    """

    field: FieldSpec
    variables: tuple
    power_relations: tuple = ()

    def __init__(self, field: FieldSpec, variables: Iterable = (),
                 power_relations: Mapping[str, int] | Iterable = ()):
        variables = tuple(v if isinstance(v, SuperVariable) else SuperVariable(*v)
                          for v in variables)
        if isinstance(power_relations, Mapping):
            power_relations = power_relations.items()
        power_relations = tuple(sorted((str(k), int(q)) for k, q in power_relations))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "power_relations", power_relations)
        names = [v.name for v in variables]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise ValueError(f"duplicate generator names: {sorted(dup)}")
        by_name = {v.name: v for v in variables}
        for name, q in power_relations:
            if name not in by_name:
                raise ValueError(f"power relation on unknown generator {name!r}")
            if by_name[name].parity != EVEN:
                raise ValueError(f"power relation on odd generator {name!r}")
            if q < 1:
                raise ValueError(f"power relation exponent must be >= 1, got {q}")

    # layout ------------------------------------------------------------

    @cached_property
    def even_vars(self) -> tuple:
        return tuple(v for v in self.variables if v.parity == EVEN)

    @cached_property
    def odd_vars(self) -> tuple:
        return tuple(v for v in self.variables if v.parity == ODD)

    @cached_property
    def relations(self) -> dict:
        return dict(self.power_relations)

    @cached_property
    def caps(self) -> tuple:
        rel = self.relations
        return tuple(rel.get(v.name) for v in self.even_vars)

    @cached_property
    def _locate(self) -> dict:
        loc = {}
        for i, v in enumerate(self.even_vars):
            loc[v.name] = (EVEN, i)
        for i, v in enumerate(self.odd_vars):
            loc[v.name] = (ODD, i)
        return loc

    @property
    def generator_names(self) -> tuple:
        return tuple(v.name for v in self.variables)

    def variable(self, name: str) -> SuperVariable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def generator_key(self, name: str) -> Monomial:
        kind, i = self._locate[name]
        ne, no = len(self.even_vars), len(self.odd_vars)
        if kind == EVEN:
            exps = [0] * ne
            exps[i] = 1
            if self.caps[i] == 1:
                return None
            return Monomial(tuple(exps), ())
        return Monomial((0,) * ne, (i,))

    def generator(self, name: str) -> Element:
        key = self.generator_key(name)
        if key is None:
            return self.zero()
        return Element(self, {key: self.field.one}, _clean=True)

    def var(self, name: str) -> Element:
        return self.generator(name)

    @cached_property
    def unit_key(self) -> Monomial:
        return Monomial((0,) * len(self.even_vars), ())

    def one_terms(self) -> dict:
        return {self.unit_key: self.field.one}

    # key arithmetic ----------------------------------------------------

    def parity(self, key: Monomial) -> int:
        return len(key.odd) & 1

    def degree(self, key: Monomial) -> int:
        d = 0
        for e, v in zip(key.even, self.even_vars):
            d += e * v.degree
        for i in key.odd:
            d += self.odd_vars[i].degree
        return d

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.field, self.variables, self.power_relations))
            self.__dict__["_hash"] = h
        return h

    @cached_property
    def _mul_cache(self) -> dict:
        return {}

    def mul_keys(self, a: Monomial, b: Monomial) -> list:
        cache = self._mul_cache
        hit = cache.get((a, b))
        if hit is None:
            hit = _mul_monomials(self, a, b)
            cache[(a, b)] = hit
        return hit

    def is_nilpotent_key(self, key: Monomial) -> bool:
        """True when the monomial is nilpotent: it has an odd factor or a truncated even factor."""
        if key.odd:
            return True
        return any(e and cap is not None for e, cap in zip(key.even, self.caps))

    def word(self, key: Monomial) -> tuple:
        out = []
        for e, v in zip(key.even, self.even_vars):
            out.extend([v.name] * e)
        out.extend(self.odd_vars[i].name for i in key.odd)
        return tuple(out)

    def basis(self, degree: int) -> list:
        return list(_monomial_basis(self, degree))

    def dimension(self) -> int | None:
        if any(cap is None for cap in self.caps):
            return None
        n = 2 ** len(self.odd_vars)
        for cap in self.caps:
            n *= cap
        return n

    def order_key(self, key: Monomial):
        odd = set(key.odd)
        return (-self.degree(key), tuple(-e for e in key.even),
                tuple(-1 if i in odd else 0 for i in range(len(self.odd_vars))))

    def format_key(self, key: Monomial) -> str:
        parts = []
        for e, v in zip(key.even, self.even_vars):
            if e == 1:
                parts.append(v.name)
            elif e > 1:
                parts.append(f"{v.name}^{e}")
        parts.extend(self.odd_vars[i].name for i in key.odd)
        return "*".join(parts) if parts else "1"

    def __str__(self):
        ev = ",".join(v.name for v in self.even_vars)
        od = ",".join(v.name for v in self.odd_vars)
        rel = "".join(f"/({n}^{q})" for n, q in self.power_relations)
        return f"{self.field}[{ev}|{od}]{rel}"

    def quotient_by(self, names: Iterable[str]) -> AlgebraPresentation:
        """Presentation with the named generators removed (set to zero)."""
        names = set(names)
        keep = [v for v in self.variables if v.name not in names]
        rel = {n: q for n, q in self.power_relations if n not in names}
        return AlgebraPresentation(self.field, keep, rel)


def _mul_monomials(pres: AlgebraPresentation, a: Monomial, b: Monomial) -> list:
    if a.odd and b.odd:
        sign = koszul_sign(a.odd, b.odd)
        if not sign:
            return []
        odd = tuple(sorted(a.odd + b.odd))
    else:
        sign = 1
        odd = a.odd or b.odd
    even = []
    for x, y, cap in zip(a.even, b.even, pres.caps):
        e = x + y
        if cap is not None and e >= cap:
            return []
        even.append(e)
    return [(Monomial(tuple(even), odd), sign)]


@lru_cache(maxsize=None)
def _monomial_basis(pres: AlgebraPresentation, degree: int) -> tuple:
    if degree < 0:
        return ()
    ev, od = pres.even_vars, pres.odd_vars
    out = []
    odd_subsets = []
    for r in range(len(od) + 1):
        for sub in itertools.combinations(range(len(od)), r):
            odd_subsets.append((sum(od[i].degree for i in sub), sub))

    def even_parts(i, remaining):
        if i == len(ev):
            if remaining == 0:
                yield ()
            return
        w = ev[i].degree
        cap = pres.caps[i]
        top = remaining // w
        if cap is not None:
            top = min(top, cap - 1)
        for e in range(top, -1, -1):
            for rest in even_parts(i + 1, remaining - e * w):
                yield (e,) + rest

    for wodd, sub in odd_subsets:
        if wodd > degree:
            continue
        for exps in even_parts(0, degree - wodd):
            out.append(Monomial(exps, sub))
    out.sort(key=pres.order_key)
    return tuple(out)


def monomial_basis(pres: AlgebraPresentation, degree: int) -> list:
    """All normal-form monomials of weighted degree exactly ``degree``.

    Graded lexicographic order, even block before odd block, variables in
    declaration order; repeated calls return identical orderings.
    """
    return pres.basis(degree)


class FiniteAlgebra(Algebra):
    """Finite-dimensional superalgebra given by structure constants.

    ``table[(a, b)]`` lists ``(c, coeff)`` with a*b = sum coeff*c; missing
    pairs multiply to zero. Every basis label doubles as a generator name.
    """

    def __init__(self, field: FieldSpec, labels: Sequence[str], parities: Mapping[str, int],
                 table: Mapping[tuple, Sequence[tuple]], unit: Mapping[str, object],
                 degrees: Mapping[str, int] | None = None, name: str = "A"):
        self.field = field
        self.labels = tuple(labels)
        self._parities = {k: parse_parity(parities[k]) for k in self.labels}
        self._degrees = dict(degrees or {k: 0 for k in self.labels})
        self._table = {k: [(c, field.coerce(v)) for c, v in terms]
                       for k, terms in table.items()}
        self._unit = {k: field.coerce(v) for k, v in unit.items() if field.coerce(v)}
        self._index = {k: i for i, k in enumerate(self.labels)}
        self.name = name

    def parity(self, key) -> int:
        return self._parities[key]

    def degree(self, key) -> int:
        return self._degrees[key]

    def mul_keys(self, a, b) -> list:
        return self._table.get((a, b), [])

    def one_terms(self) -> dict:
        return dict(self._unit)

    def basis(self, degree: int) -> list:
        return [k for k in self.labels if self._degrees[k] == degree]

    def dimension(self) -> int:
        return len(self.labels)

    def word(self, key) -> tuple:
        return (key,)

    @property
    def generator_names(self) -> tuple:
        return self.labels

    def generator(self, name: str) -> Element:
        if name not in self._index:
            raise KeyError(name)
        return Element(self, {name: self.field.one}, _clean=True)

    def format_key(self, key) -> str:
        return key

    def order_key(self, key):
        return (-self._degrees[key], self._index[key])

    def __str__(self):
        return self.name


class TensorAlgebra(Algebra):
    """Graded tensor product; keys are flat tuples, one entry per factor."""

    def __init__(self, factors: Sequence[Algebra]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("empty tensor product")
        fields = {f.field for f in factors}
        if len(fields) != 1:
            raise ValueError("tensor factors over different fields")
        self.factors = factors
        self.field = factors[0].field
        self._mul_cache = {}

    def __eq__(self, other):
        return isinstance(other, TensorAlgebra) and self.factors == other.factors

    def __hash__(self):
        return hash(("tensor", self.factors))

    def parity(self, key) -> int:
        return sum(f.parity(k) for f, k in zip(self.factors, key)) & 1

    def degree(self, key) -> int:
        return sum(f.degree(k) for f, k in zip(self.factors, key))

    def mul_keys(self, a, b) -> list:
        hit = self._mul_cache.get((a, b))
        if hit is not None:
            return hit
        # move each b_i leftwards past a_{i+1}, ..., a_n
        sign = 0
        pa = [f.parity(k) for f, k in zip(self.factors, a)]
        tail = 0
        for i in range(len(a) - 1, -1, -1):
            if self.factors[i].parity(b[i]) and tail:
                sign ^= 1
            tail ^= pa[i]
        legs = [f.mul_keys(x, y) for f, x, y in zip(self.factors, a, b)]
        out = []
        for combo in itertools.product(*legs):
            c = -1 if sign else 1
            for _, coeff in combo:
                c *= coeff
            out.append((tuple(k for k, _ in combo), self.field.norm(c)))
        self._mul_cache[(a, b)] = out
        return out

    def one_terms(self) -> dict:
        out = {}
        for combo in itertools.product(*(f.one_terms().items() for f in self.factors)):
            c = 1
            for _, v in combo:
                c *= v
            out[tuple(k for k, _ in combo)] = self.field.norm(c)
        return out

    def basis(self, degree: int) -> list:
        out = []

        def rec(i, remaining, prefix):
            if i == len(self.factors) - 1:
                for k in self.factors[i].basis(remaining):
                    out.append(prefix + (k,))
                return
            for d in range(remaining + 1):
                ks = self.factors[i].basis(d)
                for k in ks:
                    rec(i + 1, remaining - d, prefix + (k,))

        rec(0, degree, ())
        return out

    def dimension(self) -> int | None:
        n = 1
        for f in self.factors:
            d = f.dimension()
            if d is None:
                return None
            n *= d
        return n

    def max_degree(self) -> int:
        return sum(f.max_degree() for f in self.factors)

    def all_basis(self) -> list:
        return [tuple(c) for c in itertools.product(*(f.all_basis() for f in self.factors))]

    @property
    def generator_names(self) -> tuple:
        return tuple(f"{i + 1}.{g}" for i, f in enumerate(self.factors)
                     for g in f.generator_names)

    def generator(self, name: str) -> Element:
        idx, _, inner = name.partition(".")
        i = int(idx) - 1
        legs = [f.one() for f in self.factors]
        legs[i] = self.factors[i].generator(inner)
        return tensor(legs, self)

    def word(self, key) -> tuple:
        out = []
        for i, (f, k) in enumerate(zip(self.factors, key)):
            out.extend(f"{i + 1}.{g}" for g in f.word(k))
        return tuple(out)

    def format_key(self, key) -> str:
        return "⊗".join(f.format_key(k) for f, k in zip(self.factors, key))

    def order_key(self, key):
        return tuple(f.order_key(k) for f, k in zip(self.factors, key))

    def __str__(self):
        return " ⊗ ".join(str(f) for f in self.factors)


class Element:
    """Immutable linear combination of basis keys of an :class:`Algebra`."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: Mapping | None = None, *, _clean: bool = False):
        self.algebra = algebra
        if terms is None:
            terms = {}
        if not _clean:
            norm = algebra.field.norm
            terms = {k: norm(v) for k, v in terms.items()}
            terms = {k: v for k, v in terms.items() if v}
        self.terms = terms

    # structure ---------------------------------------------------------

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, key):
        return self.terms.get(key, self.field.zero)

    def constant_term(self):
        """Coefficient of the unit (for algebras whose unit is a basis key)."""
        one = self.algebra.one_terms()
        if len(one) != 1:
            raise ValueError("unit is not a single basis element")
        (k, _), = one.items()
        return self.coefficient(k)

    def degree(self) -> int:
        """Highest degree of a term; -1 for zero."""
        if not self.terms:
            return -1
        return max(self.algebra.degree(k) for k in self.terms)

    def low_degree(self) -> int:
        if not self.terms:
            return -1
        return min(self.algebra.degree(k) for k in self.terms)

    def parity(self) -> int | None:
        """Parity if homogeneous (zero counts as even), else None."""
        ps = {self.algebra.parity(k) for k in self.terms}
        if not ps:
            return EVEN
        return ps.pop() if len(ps) == 1 else None

    def homogeneous_component(self, degree: int | None = None, parity: int | None = None) -> Element:
        deg = self.algebra.degree
        par = self.algebra.parity
        return Element(self.algebra, {k: v for k, v in self.terms.items()
                                      if (degree is None or deg(k) == degree)
                                      and (parity is None or par(k) == parity)}, _clean=True)

    def components_by_degree(self) -> dict:
        out: dict = {}
        for k, v in self.terms.items():
            out.setdefault(self.algebra.degree(k), {})[k] = v
        return {d: Element(self.algebra, t, _clean=True) for d, t in sorted(out.items())}

    def truncate(self, degree: int) -> Element:
        deg = self.algebra.degree
        return Element(self.algebra, {k: v for k, v in self.terms.items() if deg(k) <= degree},
                       _clean=True)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: self.algebra.order_key(kv[0]))

    # arithmetic --------------------------------------------------------

    def _check(self, other: Element):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ValueError(f"algebra mismatch: {self.algebra} vs {other.algebra}")

    def _lift(self, other) -> Element:
        if isinstance(other, Element):
            self._check(other)
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> Element:
        c = self.field.coerce(c)
        return Element(self.algebra, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        mk = self.algebra.mul_keys
        out: dict = {}
        get = out.get
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                for k, c in mk(a, b):
                    out[k] = get(k, 0) + ca * cb * c
        return Element(self.algebra, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return (other.algebra is self.algebra or other.algebra == self.algebra) \
                and self.terms == other.terms
        if isinstance(other, (int,)) or hasattr(other, "numerator"):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


Polynomial = Element
TensorElement = Element


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    out = []
    field = e.field
    for key, c in e.sorted_terms():
        ks = e.algebra.format_key(key)
        neg = field.p == 0 and c < 0
        mag = -c if neg else c
        if ks == "1":
            body = str(mag)
        elif mag == 1:
            body = ks
        else:
            body = f"{mag}*{ks}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def truncate(p: Element, degree: int) -> Element:
    """Drop every term of degree above ``degree``."""
    return p.truncate(degree)


def multiply(p: Element, q: Element) -> Element:
    return p * q


def ground_algebra(field: FieldSpec) -> AlgebraPresentation:
    """The field itself, as the presentation with no generators."""
    return AlgebraPresentation(field, ())


def tensor(elements: Sequence[Element], target: TensorAlgebra | None = None) -> Element:
    """Outer product e_1⊗...⊗e_n (no signs: legs are placed, not commuted)."""
    if target is None:
        target = TensorAlgebra([e.algebra for e in elements])
    out: dict = {}
    for combo in itertools.product(*(e.terms.items() for e in elements)):
        c = 1
        for _, v in combo:
            c *= v
        key = tuple(k for k, _ in combo)
        out[key] = out.get(key, 0) + c
    return Element(target, out)


class Morphism:
    """Algebra morphism determined by images of generators.

    The image of a basis key is the ordered product of the images of its
    word; prefixes are cached so long monomials reuse shorter ones.
    """

    def __init__(self, source: Algebra, target: Algebra, images: Mapping[str, Element]):
        self.source = source
        self.target = target
        missing = [n for n in source.generator_names if n not in images]
        if missing:
            raise ValueError(f"no image given for generators {missing}")
        for n, img in images.items():
            if img.algebra != target:
                raise ValueError(f"image of {n} lies in {img.algebra}, expected {target}")
        self.images = dict(images)
        self._words: dict = {(): target.one()}

    def on_word(self, word: tuple) -> Element:
        hit = self._words.get(word)
        if hit is None:
            hit = self.on_word(word[:-1]) * self.images[word[-1]]
            self._words[word] = hit
        return hit

    def on_key(self, key) -> Element:
        return self.on_word(self.source.word(key))

    def __call__(self, e: Element) -> Element:
        out: dict = {}
        for k, c in e.terms.items():
            for k2, c2 in self.on_key(k).terms.items():
                out[k2] = out.get(k2, 0) + c * c2
        return Element(self.target, out)


def apply_linear(on_key: Callable, e: Element, target: Algebra) -> Element:
    out: dict = {}
    for k, c in e.terms.items():
        for k2, c2 in on_key(k).terms.items():
            out[k2] = out.get(k2, 0) + c * c2
    return Element(target, out)


def _leg_terms(e: Element, leg_algebra: Algebra):
    alg = e.algebra
    if isinstance(alg, TensorAlgebra) and alg != leg_algebra:
        return [(k, v) for k, v in e.terms.items()]
    if isinstance(alg, AlgebraPresentation) and not alg.variables:
        return [((), v) for v in e.terms.values()]
    return [((k,), v) for k, v in e.terms.items()]


def map_legs(e: Element, maps: Sequence[Callable | None], target: Algebra,
             flatten: bool = True) -> Element:
    """Apply even linear maps leg by leg to a tensor element.

    ``maps[i]`` is None (identity) or a function from a basis key of leg i to
    an Element. Images in a tensor product of several legs are spliced in flat; images in the
    ground field contract the leg away. No Koszul signs arise because every
    map used here preserves parity. With ``flatten=False`` each leg image
    keeps its own key as a single entry of the result key. A result with a
    single remaining leg is a plain key of ``target``.
    """
    ground = isinstance(target, AlgebraPresentation) and not target.variables
    legs = e.algebra.factors
    cache: list = [dict() for _ in maps]
    out: dict = {}
    for key, c in e.terms.items():
        parts = []
        for i, (k, f) in enumerate(zip(key, maps)):
            if f is None:
                parts.append([((k,), 1)])
            else:
                hit = cache[i].get(k)
                if hit is None:
                    img = f(k)
                    hit = _leg_terms(img, legs[i]) if flatten else [((kk,), v) for kk, v in img.terms.items()]
                    cache[i][k] = hit
                parts.append(hit)
        for combo in itertools.product(*parts):
            coeff = c
            nk: tuple = ()
            for kk, v in combo:
                coeff *= v
                nk += kk
            if ground:
                nk = target.unit_key
            elif len(nk) == 1:
                nk = nk[0]
            out[nk] = out.get(nk, 0) + coeff
    return Element(target, out)


def multiply_legs(e: Element, target: Algebra) -> Element:
    """m(a_1⊗...⊗a_n) = a_1 ... a_n, all legs in ``target``."""
    out: dict = {}
    for key, c in e.terms.items():
        acc = [(key[0], c)]
        for k in key[1:]:
            nxt = []
            for a, ca in acc:
                for p, cp in target.mul_keys(a, k):
                    nxt.append((p, ca * cp))
            acc = nxt
        for k, v in acc:
            out[k] = out.get(k, 0) + v
    return Element(target, out)
