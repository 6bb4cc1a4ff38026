"""Exact sparse linear algebra over a :class:`FieldSpec`.

Vectors are dicts from hashable coordinates to canonical scalars. The
:class:`Echelon` class keeps a fully reduced row basis that grows one vector
at a time and remembers how every row was built from the inserted vectors,
which is what membership certificates and kernels are made of.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .field import FieldSpec


def axpy(field: FieldSpec, y: dict, a, x: dict) -> None:
    """y += a*x in place, dropping zeros."""
    norm = field.norm
    for k, v in x.items():
        s = norm(y.get(k, 0) + a * v)
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class Echelon:
    def __init__(self, field: FieldSpec):
        self.field = field
        self.rows: dict = {}      # pivot -> row with 1 at pivot, no other pivots
        self.combos: dict = {}    # pivot -> {tag: coeff}; row = sum coeff * inserted[tag]

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict, track: bool = False):
        """Return (residual, combo) with vec = residual + sum combo[tag]*inserted[tag]."""
        field = self.field
        res = dict(vec)
        combo: dict = {}
        for p in [p for p in res if p in self.rows]:
            c = res.get(p)
            if not c:
                continue
            axpy(field, res, -c, self.rows[p])
            if track:
                axpy(field, combo, c, self.combos[p])
        return res, combo

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def add(self, vec: dict, tag: Hashable = None) -> bool:
        """Insert ``vec``; return True when it was independent of the rows so far.

        When dependent and ``tag`` is given, the relation is recorded and can
        be read back through :attr:`relations`.
        """
        field = self.field
        res, combo = self.reduce(vec, track=tag is not None)
        if tag is not None:
            # res = vec - sum combo*inserted, i.e. res is a combination with vec
            combo = {k: field.norm(-v) for k, v in combo.items()}
            combo[tag] = field.norm(combo.get(tag, 0) + 1)
            combo = {k: v for k, v in combo.items() if v}
        if not res:
            if tag is not None:
                self.relations.append(combo)
            return False
        pivot = next(iter(res))
        inv = field.inv(res[pivot])
        row = {k: field.norm(v * inv) for k, v in res.items()}
        cmb = {k: field.norm(v * inv) for k, v in combo.items()} if tag is not None else {}
        for p, other in self.rows.items():
            c = other.get(pivot)
            if c:
                axpy(field, other, -c, row)
                if tag is not None:
                    axpy(field, self.combos[p], -c, cmb)
        self.rows[pivot] = row
        self.combos[pivot] = cmb
        return True

    @property
    def relations(self) -> list:
        rel = self.__dict__.get("_relations")
        if rel is None:
            rel = []
            self.__dict__["_relations"] = rel
        return rel

    def solve(self, vec: dict):
        """Combination of inserted vectors equal to ``vec``, or None."""
        res, combo = self.reduce(vec, track=True)
        if res:
            return None
        return combo


def rank(field: FieldSpec, vectors: Iterable[dict]) -> int:
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech.rank


def kernel(field: FieldSpec, images: Sequence[dict]) -> list:
    """Basis of {c : sum c_i images[i] = 0}, as dicts index -> coeff.

    One kernel vector per dependent image, in input order.
    """
    ech = Echelon(field)
    for i, v in enumerate(images):
        ech.add(v, tag=i)
    return [dict(sorted(r.items())) for r in ech.relations]


def same_span(field: FieldSpec, a: Sequence[dict], b: Sequence[dict]) -> bool:
    ra, rb = rank(field, a), rank(field, b)
    return ra == rb == rank(field, list(a) + list(b))


def rref(field: FieldSpec, vectors: Iterable[dict], key=None) -> list:
    """Canonical reduced row echelon basis of span(vectors).

    Pivots are the smallest coordinates under ``key``; rows come out sorted
    by pivot with pivot coefficient 1, so equal spans give equal output.
    """
    key = key or (lambda c: c)
    rows: dict = {}
    for v in vectors:
        res = dict(v)
        # rows are fully reduced, so one pass clears every pivot
        for p in [p for p in res if p in rows]:
            axpy(field, res, -res[p], rows[p])
        if not res:
            continue
        p = min(res, key=key)
        inv = field.inv(res[p])
        row = {k: field.norm(val * inv) for k, val in res.items()}
        for q, other in rows.items():
            c = other.get(p)
            if c:
                axpy(field, other, -c, row)
        rows[p] = row
    return [rows[p] for p in sorted(rows, key=key)]
