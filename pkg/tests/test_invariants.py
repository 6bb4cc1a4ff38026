import pytest

from superq.coaction import Coaction, trivial
from superq.field import FieldSpec
from superq.hopf import odd_additive
from superq.invariants import (InvariantRing, UnvalidatedCoaction, compute_invariants,
                               invariant_filtered, invariant_slice, is_invariant,
                               iterated_invariants_check, minimal_generators)
from superq.textio import parse_element

import oracles
from helpers import (example_3_1, frobenius_translation, gana_free, gen, klein, make, z2_sign)

Q = FieldSpec.rationals()


def strs(elements):
    return [str(e) for e in elements]


def oracle_image(b, d):
    """Averaging projector image in degree d, as oracle dicts."""
    ring = oracles.ring_of(b.space)
    action = {g: [oracles.from_element(ring, m.images[n]) for n in ring.names]
              for g, m in b.coaction.action.items()}
    return ring, oracles.averaging_image(ring, action, d)


class TestSlices:
    def test_example(self):
        assert strs(invariant_slice(example_3_1().coaction, 3)) == ["v1^2*v2"]

    @pytest.mark.parametrize("d", range(11))
    def test_example_closed_form(self, d):
        c = example_3_1().coaction
        ring = oracles.ring_of(c.space)
        got = [oracles.from_element(ring, f) for f in invariant_slice(c, d)]
        assert oracles.same_span(got, [{e: 1} for e in oracles.example_slice_exponents(d)])

    def test_trivial_full(self):
        b = make([gen("x"), gen("theta", "odd")], {"kind": "constant", "cyclic": 1},
                 {"kind": "group-action", "images": {}})
        for d in range(5):
            assert len(invariant_slice(b.coaction, d)) == len(b.space.basis(d))

    def test_sign_degree_two(self):
        assert strs(invariant_slice(z2_sign().coaction, 2)) == ["x^2", "x*theta"]

    @pytest.mark.parametrize("build", [z2_sign, klein], ids=["Z2", "Z2xZ2"])
    @pytest.mark.parametrize("d", range(9))
    def test_averaging_oracle(self, build, d):
        b = build()
        ring, image = oracle_image(b, d)
        got = [oracles.from_element(ring, f) for f in invariant_slice(b.coaction, d)]
        assert len(got) == oracles.rank(image)
        assert oracles.same_span(got, image)

    def test_frobenius_binomial_oracle(self):
        c = frobenius_translation(5).coaction
        exps = oracles.frobenius_invariant_exponents(5, 12)
        assert [d for d in range(13) if invariant_slice(c, d)] == exps == [0, 5, 10]

    def test_filtered_agrees_when_graded(self):
        c = z2_sign().coaction
        assert len(invariant_filtered(c, 4)) == sum(len(invariant_slice(c, d)) for d in range(5))

    def test_affine_needs_filtered(self):
        b = make([gen("x")], {"kind": "constant", "cyclic": 2},
                 {"kind": "group-action", "images": {"1": {"x": "x + 1"}}},
                 field={"kind": "prime", "characteristic": 2})
        f = invariant_filtered(b.coaction, 2)
        assert sorted(strs(f)) == ["1", "x^2 + x"]
        assert all(is_invariant(b.coaction, g) for g in f)

    def test_unvalidated(self):
        sp = gana_free().space
        raw = Coaction(sp, odd_additive(Q), trivial(sp, odd_additive(Q)).tau_gens)
        with pytest.raises(UnvalidatedCoaction):
            invariant_slice(raw, 1)


class TestGenerators:
    def test_example_five(self):
        ledger = minimal_generators(example_3_1().coaction, 5)
        assert [len(ledger[e]) for e in range(1, 6)] == [1] * 5
        assert strs(g for e in range(1, 6) for g in ledger[e]) == \
            ["v2", "v1*v2", "v1^2*v2", "v1^3*v2", "v1^4*v2"]

    def test_free_is_polynomial(self):
        ledger = minimal_generators(gana_free().coaction, 4)
        assert {e: strs(g) for e, g in ledger.items()} == {1: ["x"], 2: [], 3: [], 4: []}

    def test_trivial(self):
        b = make([gen("x")], {"kind": "constant", "cyclic": 1},
                 {"kind": "group-action", "images": {}})
        ledger = minimal_generators(b.coaction, 3)
        assert strs(ledger[1]) == ["x"] and not ledger[2] and not ledger[3]

    def test_generators_generate(self):
        c = z2_sign().coaction
        ring = compute_invariants(c, 6)
        ledger = ring.generators(6)
        assert strs(ledger[2]) == ["x^2", "x*theta"]
        assert all(not ledger[e] for e in (1, 3, 4, 5, 6))

    def test_ring_contains(self):
        ring = InvariantRing(gana_free().coaction)
        assert ring.contains(parse_element("x^3 + 2", ring.coaction.space))
        assert not ring.contains(parse_element("theta", ring.coaction.space))


class TestIterated:
    @pytest.mark.parametrize("normal", [["0_0", "1_0"], ["0_0", "0_1"], ["0_0"],
                                        ["0_0", "0_1", "1_0", "1_1"]])
    def test_klein(self, normal):
        report = iterated_invariants_check(klein().coaction, normal, 6)
        assert report.equal and report.witness_degree is None
        assert [r["dim_direct"] for r in report.rows] == [1, 0, 1, 0, 1, 0, 1]

    def test_inner_matches_oracle(self):
        b = klein()
        report = iterated_invariants_check(b.coaction, ["0_0", "1_0"], 6)
        ring = oracles.ring_of(b.space)
        inner = {"0_0": [oracles.from_element(ring, b.space.generator(n)) for n in ring.names],
                 "1_0": [oracles.from_element(ring, b.coaction.action["1_0"].images[n])
                         for n in ring.names]}
        for row in report.rows:
            assert row["dim_inner"] == oracles.rank(oracles.averaging_image(ring, inner,
                                                                             row["degree"]))

    def test_not_normal(self):
        elements = ["e", "r", "rr", "s", "sr", "srr"]
        table = [["e", "r", "rr", "s", "sr", "srr"], ["r", "rr", "e", "srr", "s", "sr"],
                 ["rr", "e", "r", "sr", "srr", "s"], ["s", "sr", "srr", "e", "r", "rr"],
                 ["sr", "srr", "s", "rr", "e", "r"], ["srr", "s", "sr", "r", "rr", "e"]]
        images = s3_images(elements, table)
        b = make([gen("x"), gen("y")], {"kind": "constant", "elements": elements, "table": table},
                 {"kind": "group-action", "images": images})
        with pytest.raises(ValueError):
            iterated_invariants_check(b.coaction, ["e", "s"], 3)
        assert iterated_invariants_check(b.coaction, ["e", "r", "rr"], 4).equal


def s3_images(elements, table):
    """Close r: (x, y) -> (y, -x-y), s: swap under (gh)·v = g·(h·v)."""
    from superq.algebra import Morphism
    sp = make([gen("x"), gen("y")], {"kind": "odd-additive"},
              {"kind": "odd-derivation", "images": {}}).space
    mul = {(a, b): table[i][j] for i, a in enumerate(elements) for j, b in enumerate(elements)}
    maps = {"e": {"x": sp.generator("x"), "y": sp.generator("y")},
            "r": {"x": sp.generator("y"), "y": -sp.generator("x") - sp.generator("y")},
            "s": {"x": sp.generator("y"), "y": sp.generator("x")}}
    while len(maps) < len(elements):
        for g in list(maps):
            for h in list(maps):
                gh = mul[(g, h)]
                if gh not in maps:
                    m = Morphism(sp, sp, maps[g])
                    maps[gh] = {n: m(maps[h][n]) for n in ("x", "y")}
    return {g: {n: str(v) for n, v in m.items()} for g, m in maps.items() if g != "e"}
