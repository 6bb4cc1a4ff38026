"""Finite groups given by multiplication tables."""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence


class GroupTableError(ValueError):
    pass


class FiniteGroup:
    """A finite group on string labels with ``table[(a, b)] = a*b``."""

    def __init__(self, elements: Sequence[str], table: Mapping[tuple, str]):
        self.elements = tuple(str(e) for e in elements)
        if len(set(self.elements)) != len(self.elements):
            raise GroupTableError("repeated group element")
        self.table = {(str(a), str(b)): str(c) for (a, b), c in table.items()}
        self._validate()

    @classmethod
    def from_rows(cls, elements: Sequence[str], rows: Sequence[Sequence[str]]) -> FiniteGroup:
        if len(rows) != len(elements) or any(len(r) != len(elements) for r in rows):
            raise GroupTableError("multiplication table must be square")
        table = {(a, b): rows[i][j] for i, a in enumerate(elements)
                 for j, b in enumerate(elements)}
        return cls(elements, table)

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        if n < 1:
            raise GroupTableError("cyclic group order must be positive")
        els = [str(i) for i in range(n)]
        return cls(els, {(str(a), str(b)): str((a + b) % n)
                         for a in range(n) for b in range(n)})

    @classmethod
    def direct_product(cls, groups: Iterable[FiniteGroup]) -> FiniteGroup:
        groups = list(groups)
        tuples = list(itertools.product(*(g.elements for g in groups)))
        name = "_".join
        table = {}
        for a in tuples:
            for b in tuples:
                table[(name(a), name(b))] = name(g.mul(x, y) for g, x, y in zip(groups, a, b))
        return cls([name(t) for t in tuples], table)

    def _validate(self):
        els = self.elements
        for a in els:
            for b in els:
                c = self.table.get((a, b))
                if c is None:
                    raise GroupTableError(f"missing product {a}*{b}")
                if c not in els:
                    raise GroupTableError(f"product {a}*{b} = {c} is not an element")
        for a, b, c in itertools.product(els, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise GroupTableError(f"not associative at ({a}, {b}, {c})")
        ids = [e for e in els if all(self.mul(e, a) == a == self.mul(a, e) for a in els)]
        if not ids:
            raise GroupTableError("no identity element")
        self.identity = ids[0]
        self._inv = {}
        for a in els:
            inv = [b for b in els if self.mul(a, b) == self.identity]
            if not inv:
                raise GroupTableError(f"{a} has no inverse")
            self._inv[a] = inv[0]

    def __len__(self):
        return len(self.elements)

    def mul(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def inverse(self, a: str) -> str:
        return self._inv[a]

    def is_subgroup(self, subset: Iterable[str]) -> bool:
        s = set(subset)
        if self.identity not in s or not s <= set(self.elements):
            return False
        return all(self.mul(a, self.inverse(b)) in s for a in s for b in s)

    def is_normal(self, subset: Iterable[str]) -> bool:
        s = set(subset)
        if not self.is_subgroup(s):
            return False
        return all(self.mul(self.mul(g, n), self.inverse(g)) in s
                   for g in self.elements for n in s)

    def cosets(self, subgroup: Iterable[str]) -> list:
        """Left cosets gN in first-appearance order, each as a tuple."""
        n = list(subgroup)
        seen: set = set()
        out = []
        for g in self.elements:
            if g in seen:
                continue
            coset = tuple(sorted({self.mul(g, x) for x in n}, key=self.elements.index))
            seen.update(coset)
            out.append(coset)
        return out

    def quotient(self, normal: Iterable[str]) -> tuple:
        """(G/N, map element -> coset label); coset labels are their first element."""
        normal = list(normal)
        if not self.is_normal(normal):
            raise GroupTableError("subgroup is not normal")
        cosets = self.cosets(normal)
        label = {g: c[0] for c in cosets for g in c}
        reps = [c[0] for c in cosets]
        table = {(a, b): label[self.mul(a, b)] for a in reps for b in reps}
        return FiniteGroup(reps, table), label
