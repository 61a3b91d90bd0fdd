import random
from itertools import permutations

import pytest

from courantcalc import cochain as co
from courantcalc.battery import Battery
from courantcalc.scalar import Scalar, parse_scalar


def S(text):
    return parse_scalar(text, 2)


@pytest.fixture(scope="module")
def gens(standard2, battery2):
    return co.generator_cochains(standard2, battery2)


# -- evaluation against independent oracles -----------------------------------

def test_differential_of_function_is_anchor_derivative(standard2, battery2):
    f = S("x1^2*x2 - x2")
    w = co.differential(co.scalar_leaf(standard2, f))
    for s in battery2.sections:
        assert co.evaluate(w, 0, (s,)) == standard2.anchor_apply(s, f)


def test_differential_function_component(standard2):
    e = standard2.frame[0]
    w = co.differential(co.section_leaf(standard2, e))
    for f in (S("x1"), S("x1*x2"), S("x2^2 - 3")):
        assert co.evaluate(w, 1, (), (f,)) == \
            standard2.pairing(e, standard2.d_E(f))


def brute_force_product_component(alg, factors, args):
    """Independent oracle: alternating sum over all argument orderings with
    block positions, computed directly from the degree-1 values."""
    p = len(factors)
    assert len(args) == p
    total = Scalar.zero(alg.n)
    for perm in permutations(range(p)):
        inv = sum(1 for i in range(p) for j in range(i + 1, p)
                  if perm[i] > perm[j])
        # only shuffles: each factor takes one argument in order
        term = Scalar.one(alg.n)
        for fac, idx in zip(factors, perm):
            term = term * alg.pairing(fac, args[idx])
        total = total + term if inv % 2 == 0 else total - term
    return total


def test_product_of_two_section_leaves(standard2, battery2):
    a = standard2.section_from_strings(["x1", "0", "1", "0"])
    b = standard2.section_from_strings(["0", "x2", "0", "2"])
    w = co.mul(co.section_leaf(standard2, a), co.section_leaf(standard2, b))
    for args in list(battery2.section_tuples(2))[:40]:
        want = standard2.pairing(a, args[0]) * standard2.pairing(b, args[1]) \
            - standard2.pairing(a, args[1]) * standard2.pairing(b, args[0])
        assert co.evaluate(w, 0, args) == want
        assert want == brute_force_product_component(standard2, [a, b], args)


def test_product_of_three_section_leaves(standard2, battery2):
    secs = [standard2.frame[0].scale(S("x1")), standard2.frame[3],
            standard2.frame[1]]
    w = None
    for s in secs:
        leaf = co.section_leaf(standard2, s)
        w = leaf if w is None else co.mul(w, leaf)
    for args in list(battery2.section_tuples(3))[:25]:
        assert co.evaluate(w, 0, args) == \
            brute_force_product_component(standard2, secs, args)


def test_zero_cochain_from_degree_underflow(standard2):
    leaf = co.section_leaf(standard2, standard2.frame[0])
    w = co.interior_f(S("x1"), leaf)
    assert w.degree == -1
    assert co.evaluate(w, 0, (), ()).is_zero()


def test_component_validation(standard2):
    w = co.differential(co.section_leaf(standard2, standard2.frame[0]))
    with pytest.raises(ValueError):
        co.evaluate(w, 2, ())
    with pytest.raises(ValueError):
        co.evaluate(w, 0, (standard2.frame[0],))


def test_product_degree_cap(standard2):
    quad = None
    for i in range(4):
        leaf = co.section_leaf(standard2, standard2.frame[i % 4])
        quad = leaf if quad is None else co.mul(quad, leaf)
    with pytest.raises(co.DegreeCapError):
        co.mul(quad, quad)


# -- structural laws --------------------------------------------------------------

def test_d_squared_vanishes_on_sample(standard2, battery2, gens):
    for w in gens[:8]:
        assert co.vanishes(co.differential(co.differential(w)), battery2,
                           reduced=True)


def test_lie_derivative_nodes_are_commutators(standard2, battery2):
    f = S("x1*x2")
    w = co.mul(co.section_leaf(standard2, standard2.frame[0].scale(S("x2"))),
               co.section_leaf(standard2, standard2.frame[3]))
    lf = co.lie_f(f, w)
    direct = [(1, co.interior_f(f, co.differential(w))),
              (-1, co.differential(co.interior_f(f, w)))]
    assert co.equal_combinations([(1, lf)], direct, battery2, reduced=True)
    le = co.lie_e(standard2.frame[1], w)
    direct = [(1, co.interior_e(standard2.frame[1], co.differential(w))),
              (1, co.differential(co.interior_e(standard2.frame[1], w)))]
    assert co.equal_combinations([(1, le)], direct, battery2, reduced=True)


def test_graded_commutativity(standard2, battery2, gens):
    rng = random.Random("commutativity")
    pool = [w for w in gens if 0 <= w.degree <= 3]
    for _ in range(6):
        a, b = rng.choice(pool), rng.choice(pool)
        if a.degree + b.degree > co.PRODUCT_DEGREE_CAP:
            continue
        sign = (-1) ** (a.degree * b.degree)
        assert co.equal_combinations(
            [(1, co.mul(a, b))], [(sign, co.mul(b, a))], battery2, reduced=True)


def test_associativity(standard2, battery2, gens):
    rng = random.Random("associativity")
    pool = [w for w in gens if 0 <= w.degree <= 2]
    for _ in range(4):
        a, b, c = (rng.choice(pool) for _ in range(3))
        if a.degree + b.degree + c.degree > co.PRODUCT_DEGREE_CAP:
            continue
        lhs = co.mul(co.mul(a, b), c)
        rhs = co.mul(a, co.mul(b, c))
        assert co.equal_combinations([(1, lhs)], [(1, rhs)], battery2,
                                     reduced=True)


def test_leibniz_for_differential(standard2, battery2, gens):
    pool = [w for w in gens if 1 <= w.degree <= 2]
    for a in pool[:3]:
        for b in pool[:3]:
            lhs = co.differential(co.mul(a, b))
            rhs = [(1, co.mul(co.differential(a), b)),
                   ((-1) ** a.degree, co.mul(a, co.differential(b)))]
            assert co.equal_combinations([(1, lhs)], rhs, battery2,
                                         reduced=True)


def test_leibniz_for_contractions(standard2, battery2, gens):
    f = S("x1")
    e = standard2.frame[2]
    pool = [w for w in gens if 1 <= w.degree <= 2]
    for a in pool[:3]:
        for b in pool[:3]:
            prod = co.mul(a, b)
            lhs = co.interior_f(f, prod)
            rhs = [(1, co.mul(co.interior_f(f, a), b)),
                   (1, co.mul(a, co.interior_f(f, b)))]
            assert co.equal_combinations([(1, lhs)], rhs, battery2,
                                         reduced=True)
            lhs = co.interior_e(e, prod)
            rhs = [(1, co.mul(co.interior_e(e, a), b)),
                   ((-1) ** a.degree, co.mul(a, co.interior_e(e, b)))]
            assert co.equal_combinations([(1, lhs)], rhs, battery2,
                                         reduced=True)


def test_equality_differs_on_distinct_cochains(standard2, battery2):
    a = co.section_leaf(standard2, standard2.frame[0])
    b = co.section_leaf(standard2, standard2.frame[1])
    res = co.equal(a, b, battery2)
    assert not res
    assert res.witness is not None and res.residual is not None


def test_equality_degree_mismatch(standard2, battery2):
    a = co.section_leaf(standard2, standard2.frame[0])
    b = co.scalar_leaf(standard2, S("x1"))
    assert not co.equal(a, b, battery2)


# -- symmetry condition ---------------------------------------------------------------

def test_symmetry_condition_on_dag_cochains(standard2, battery2, gens):
    for w in gens:
        if w.degree >= 2:
            assert co.check_symmetry_condition(w, battery2).passed


def test_symmetry_condition_alternating_product(standard2, battery2):
    a = co.section_leaf(standard2, standard2.frame[0])
    b = co.section_leaf(standard2, standard2.frame[2])
    w = co.mul(a, b)
    # the component correction is zero here: the swap relation reduces to
    # antisymmetry of the degree-0 component
    for (v1, v2) in list(battery2.pairs())[:20]:
        plain = co.evaluate(w, 0, (v1, v2))
        swap = co.evaluate(w, 0, (v2, v1))
        corr = co.evaluate(w, 1, (), (standard2.pairing(v1, v2),))
        assert (plain + swap + corr).is_zero()
    assert co.check_symmetry_condition(w, battery2).passed


def test_symmetry_condition_vacuous_for_scalars(standard2, battery2):
    rep = co.check_symmetry_condition(co.scalar_leaf(standard2, S("x1")),
                                      battery2)
    assert rep.passed and rep.checks[0].checked == 0


# -- symbols ------------------------------------------------------------------------

def test_section_leaf_is_order_zero(standard2, battery2):
    w = co.section_leaf(standard2, standard2.frame[0].scale(S("x1*x2")))
    order = co.measure_order_E(w, 0, 0, [S("x1"), S("x2")],
                               (battery2.randoms[0],), ())
    assert order == 0
    assert co.symbol_E(w, 0, [S("x1"), S("x2")], battery2).passed


def test_differential_slot_orders(standard2, battery2):
    w = co.differential(co.section_leaf(standard2, standard2.frame[0]))
    args = (battery2.randoms[0], battery2.randoms[1])
    probes = [S("x1"), S("x2")]
    assert co.measure_order_E(w, 0, 0, probes, args, ()) == 1
    assert co.measure_order_E(w, 0, 1, probes, args, ()) == 0
    assert co.symbol_E(w, 0, probes, battery2).passed
    assert co.symbol_E(w, 1, probes, battery2).passed


def test_symbol_of_double_differential_zero_cochain(standard2, battery2):
    w = co.differential(co.differential(co.scalar_leaf(standard2, S("x1"))))
    # evaluates to zero everywhere; slot symbols vanish at any order
    rep = co.symbol_E(w, 0, [S("x1")], battery2)
    assert rep.passed


def test_function_slots_are_derivations(standard2, battery2, gens):
    probes = [S("x1"), S("x2")]
    for w in gens:
        if w.degree >= 2:
            assert co.symbol_Omega(w, 0, probes, battery2).passed


# -- deterministic generators -----------------------------------------------------------

def test_generator_cochains_cover_all_node_kinds(gens):
    kinds = set()

    def walk(node):
        kinds.add(type(node).__name__)
        for attr in ("child", "left", "right"):
            if hasattr(node, attr):
                walk(getattr(node, attr))

    for w in gens:
        walk(w)
    assert {"_ScalarLeaf", "_SectionLeaf", "_Product", "_Differential",
            "_InteriorE", "_InteriorF", "_LieE", "_LieF"} <= kinds
    assert len(gens) >= 20
    assert all(w.degree <= 4 for w in gens)


def test_random_cochain_determinism(standard2, battery2):
    a = co.random_cochain(standard2, 3, random.Random("seed-1"), battery2)
    b = co.random_cochain(standard2, 3, random.Random("seed-1"), battery2)
    assert a.degree == b.degree == 3
    assert co.equal(a, b, battery2, reduced=True)


# -- JSON expression trees ----------------------------------------------------------------

def test_cochain_from_json(standard2, battery2):
    doc = {"op": "d", "child": {
        "op": "mul",
        "left": {"op": "section", "components": ["x1", "0", "0", "0"]},
        "right": {"op": "section", "components": ["0", "0", "1", "0"]}}}
    w = co.cochain_from_json(standard2, doc)
    assert w.degree == 3
    direct = co.differential(co.mul(
        co.section_leaf(standard2, standard2.section_from_strings(
            ["x1", "0", "0", "0"])),
        co.section_leaf(standard2, standard2.section_from_strings(
            ["0", "0", "1", "0"]))))
    assert co.equal(w, direct, battery2, reduced=True)


def test_cochain_from_json_rejects_unknown_op(standard2):
    with pytest.raises(ValueError):
        co.cochain_from_json(standard2, {"op": "unknown"})
