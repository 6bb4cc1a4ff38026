"""Small builders shared by the test modules."""

from superq.problem import build, parse_problem_data

Q = {"kind": "rationals"}


def gen(name, parity="even", degree=1, nilpotent_order=None):
    g = {"name": name, "parity": parity, "degree": degree}
    if nilpotent_order is not None:
        g["nilpotent_order"] = nilpotent_order
    return g


def problem(gens, group, action, field=None, **options):
    data = {"schema": "superq/1", "field": field or Q, "algebra": {"generators": gens},
            "group": group, "action": action}
    if options:
        data["options"] = options
    return parse_problem_data(data)


def make(gens, group, action, field=None, check_degree=2, **options):
    return build(problem(gens, group, action, field, **options), check_degree)


def gana(images, gens):
    return make(gens, {"kind": "odd-additive"}, {"kind": "odd-derivation", "images": images})


def example_3_1():
    return gana({"v1": "v2", "v2": "0"}, [gen("v1"), gen("v2", "odd")])


def gana_free():
    return gana({"theta": "1"}, [gen("x"), gen("theta", "odd")])


def frobenius_translation(p=5):
    return make([gen("x")], {"kind": "frobenius-1"},
                {"kind": "explicit", "tau": {"x": [["x", "1"], ["1", "u"]]}},
                field={"kind": "prime", "characteristic": p})


def z2_sign():
    return make([gen("x"), gen("theta", "odd")], {"kind": "constant", "cyclic": 2},
                {"kind": "group-action", "images": {"1": {"x": "-x", "theta": "-theta"}}})


def klein():
    return make([gen("x"), gen("theta", "odd")], {"kind": "constant", "cyclic_product": [2, 2]},
                {"kind": "group-action", "images": {"1_0": {"x": "-x"}, "0_1": {"theta": "-theta"},
                                                    "1_1": {"x": "-x", "theta": "-theta"}}})


def corrupted_odd_additive(field):
    """G_a^- with the antipode replaced by S(t) = t."""
    from superq.hopf import HopfSuperAlgebra, odd_additive
    h = odd_additive(field)
    t = h.algebra.generator("t")
    return HopfSuperAlgebra(h.algebra, h.comult_gens, h.counit_gens, {"t": t}, name="corrupted")
