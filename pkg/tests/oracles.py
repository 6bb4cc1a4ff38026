"""Reference computations written independently of the package internals.

Polynomials here are plain dicts keyed by a tuple of generator exponents in
declaration order (odd exponents are 0 or 1), with Fraction or residue
values. Signs come from sorting the odd letters of a concatenated word by
adjacent transpositions, not from any inversion counting in the library.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


class Ring:
    """K[gens]/(x^cap) with odd generators squaring to zero."""

    def __init__(self, gens, p=0):
        # gens: list of (name, parity, degree, cap or None)
        self.gens = list(gens)
        self.names = [g[0] for g in self.gens]
        self.p = p

    def norm(self, c):
        return c % self.p if self.p else Fraction(c)

    def clean(self, d):
        out = {}
        for k, v in d.items():
            v = self.norm(v)
            if v:
                out[k] = v
        return out

    def degree(self, exps):
        return sum(e * g[2] for e, g in zip(exps, self.gens))

    def parity(self, exps):
        return sum(e for e, g in zip(exps, self.gens) if g[1]) % 2

    def _word(self, exps):
        return [i for i, e in enumerate(exps) for _ in range(e)]

    def _normal(self, word):
        """Sort a word of generator indices; return (sign, exps) or (0, None)."""
        w = list(word)
        sign = 1
        for i in range(len(w)):
            for j in range(len(w) - 1 - i):
                if w[j] > w[j + 1]:
                    if self.gens[w[j]][1] and self.gens[w[j + 1]][1]:
                        sign = -sign
                    w[j], w[j + 1] = w[j + 1], w[j]
        exps = [0] * len(self.gens)
        for i in w:
            exps[i] += 1
        for e, g in zip(exps, self.gens):
            if g[1] and e > 1:
                return 0, None
            if g[3] is not None and e >= g[3]:
                return 0, None
        return sign, tuple(exps)

    def mul(self, a, b):
        out = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                s, k = self._normal(self._word(ka) + self._word(kb))
                if s:
                    out[k] = out.get(k, 0) + s * va * vb
        return self.clean(out)

    def add(self, a, b, scale=1):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) + scale * v
        return self.clean(out)

    def one(self):
        return {tuple([0] * len(self.gens)): self.norm(1)}

    def gen(self, name):
        e = [0] * len(self.gens)
        e[self.names.index(name)] = 1
        return {tuple(e): self.norm(1)}

    def monomials(self, degree):
        ranges = []
        for name, par, deg, cap in self.gens:
            top = 1 if par else degree // deg
            if cap is not None:
                top = min(top, cap - 1)
            ranges.append(range(top + 1))
        return [e for e in itertools.product(*ranges) if self.degree(e) == degree]

    def substitute(self, exps, images):
        """Image of a monomial under the algebra map sending generator i to images[i]."""
        acc = self.one()
        for i in self._word(exps):
            acc = self.mul(acc, images[i])
        return acc

    def derive(self, exps, images):
        """Odd right derivation on a monomial by the product rule over its word.

        φ(x_1...x_n) = Σ_i (-1)^{|x_{i+1}...x_n|} x_1...φ(x_i)...x_n.
        """
        word = self._word(exps)
        out = {}
        for pos, i in enumerate(word):
            before = word[:pos]
            sign = -1 if sum(self.gens[j][1] for j in word[pos + 1:]) % 2 else 1
            left = self.one()
            for j in before:
                left = self.mul(left, self.gen(self.names[j]))
            right = self.one()
            for j in word[pos + 1:]:
                right = self.mul(right, self.gen(self.names[j]))
            out = self.add(out, self.mul(self.mul(left, images[i]), right), sign)
        return out


def ring_of(pres) -> Ring:
    """Oracle ring matching a package presentation (names, parities, degrees, caps only)."""
    rel = dict(pres.power_relations)
    p = pres.field.p if pres.field.kind == "prime" else 0
    return Ring([(v.name, v.parity, v.degree, rel.get(v.name)) for v in pres.variables], p)


def from_element(ring: Ring, e) -> dict:
    """Translate a package element through its generator words only."""
    out = {}
    for key, c in e.terms.items():
        word = e.algebra.word(key)
        exps = tuple(word.count(n) for n in ring.names)
        out[exps] = out.get(exps, 0) + c
    return ring.clean(out)


# dense Gauss-Jordan rank on dict vectors

def _dense(vectors, p):
    keys = sorted({k for v in vectors for k in v}, key=repr)
    return keys, [[(v.get(k, 0)) for k in keys] for v in vectors]


def rank(vectors, p=0) -> int:
    keys, rows = _dense([v for v in vectors], p)
    rows = [[Fraction(x) if not p else x % p for x in r] for r in rows]
    r = 0
    for col in range(len(keys)):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p) if p else 1 / rows[r][col]
        rows[r] = [x * inv % p if p else x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p if p else a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def same_span(a, b, p=0) -> bool:
    ra, rb = rank(a, p), rank(b, p)
    return ra == rb == rank(list(a) + list(b), p)


# group averaging --------------------------------------------------------------

def averaging_image(ring: Ring, action, degree: int) -> list:
    """Span of (1/|Γ|) Σ_γ γ·m over monomials m of one degree.

    ``action`` maps each group element to a list of generator images.
    """
    order = len(action)
    out = []
    for m in ring.monomials(degree):
        acc = {}
        for images in action.values():
            acc = ring.add(acc, ring.substitute(m, images))
        out.append(ring.clean({k: Fraction(v) / order for k, v in acc.items()}))
    return [v for v in out if v]


# closed forms -----------------------------------------------------------------

def frobenius_invariant_exponents(p: int, max_degree: int) -> list:
    """k such that (x+u)^k = x^k in K[x]⊗K[u]/u^p, from binomial coefficients mod p."""
    return [k for k in range(max_degree + 1)
            if all(math.comb(k, j) % p == 0 for j in range(1, min(k, p - 1) + 1))]


def example_slice_exponents(d: int) -> list:
    """Invariants of φ(v1)=v2, φ(v2)=0 in degree d: ker of φ on {v1^d, v1^(d-1) v2}.

    φ(v1^d) = d v1^(d-1) v2 over ℚ, φ(v1^(d-1) v2) = 0.
    """
    if d == 0:
        return [(0, 0)]
    return [(d - 1, 1)]


def constant_comultiplication(elements, mul):
    """Δe_g = Σ_{ab=g} e_a⊗e_b as a set of (a, b) pairs per g."""
    return {g: {(a, b) for a in elements for b in elements if mul(a, b) == g} for g in elements}
