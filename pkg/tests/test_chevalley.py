import random

from laxcoh import (
    ExactMatrix,
    Flavor,
    Gamma1,
    LinearFunctional,
    commutator,
    lift_basis,
    normalize,
    normalized_coboundary_check,
    root_system,
    uniqueness_driver,
    verify_recursions,
)
from laxcoh.chevalley import _neg
from laxcoh.scalars import ONE, ZERO, Scalar

from conftest import get_instance


def test_sl2_root_data():
    rs = root_system(Flavor("sl", 2))
    assert len(rs.roots) == 2 and len(rs.simple) == 1
    a = rs.simple[0]
    assert rs.E[a] == ExactMatrix.unit(2, 0, 1)
    assert rs.E[_neg(a)] == ExactMatrix.unit(2, 1, 0)
    assert rs.H[a] == ExactMatrix([[ONE, ZERO], [ZERO, -ONE]])


def test_sl3_root_data():
    rs = root_system(Flavor("sl", 3))
    assert len(rs.roots) == 6 and len(rs.simple) == 2
    # all roots have the same length in type A
    lengths = {str(rs.pairing(a, a)) for a in rs.roots}
    assert len(lengths) == 1


def test_so3_needs_gaussian_rationals():
    rs = root_system(Flavor("so", 3))
    assert len(rs.roots) == 2
    a = rs.positive[0]
    flat = rs.E[a].flat()
    assert any(not x.im == 0 for x in flat)  # genuinely complex entries


def test_sp4_two_root_lengths():
    rs = root_system(Flavor("sp", 2))
    assert len(rs.roots) == 8 and len(rs.simple) == 2
    lengths = sorted({float(rs.pairing(a, a).re) for a in rs.roots})
    assert len(lengths) == 2
    assert lengths[1] == 2 * lengths[0]


def test_cartan_integers_match_standard_ratio():
    # b(H^a) = 2 (b,a)/(a,a): for sp(4) this differs from the same
    # expression with (b,b) in the denominator, so the two are separated
    rs = root_system(Flavor("sp", 2))
    mismatch = 0
    for a in rs.positive:
        for b in rs.roots:
            ci = rs.cartan_integer(b, a)
            assert ci == Scalar(2) * rs.pairing(b, a) / rs.pairing(a, a)
            if rs.pairing(b, b) and \
                    ci != Scalar(2) * rs.pairing(b, a) / rs.pairing(b, b):
                mismatch += 1
    assert mismatch > 0


def test_chevalley_scaling_conventions():
    for fl in (Flavor("sl", 3), Flavor("so", 3), Flavor("sp", 2)):
        rs = root_system(fl)
        for a in rs.positive:
            assert commutator(rs.E[a], rs.E[_neg(a)]) == rs.H[a]
            assert commutator(rs.H[a], rs.E[a]) == rs.E[a].scale(Scalar(2))
            assert commutator(rs.H[a], rs.E[_neg(a)]) == \
                rs.E[_neg(a)].scale(Scalar(-2))
            assert rs.eval_root(a, rs.H[a]) == Scalar(2)


def test_structure_constants_are_pm_r_plus_one():
    rs = root_system(Flavor("sp", 2))
    seen_two = False
    for a in rs.roots:
        for b in rs.roots:
            c = rs.structure_constant(a, b)
            if c is None or c.is_zero():
                continue
            r = rs._chain_down(b, a)
            assert c * c == Scalar((r + 1) ** 2)
            if abs(float(c.re)) == 2:
                seen_two = True
    assert seen_two  # sp(4) has a genuine (r+1) = 2 constant


def test_killing_ratios():
    assert root_system(Flavor("sl", 2)).killing_trace_ratio() == Scalar(4)
    assert root_system(Flavor("sl", 3)).killing_trace_ratio() == Scalar(6)
    assert root_system(Flavor("so", 3)).killing_trace_ratio() == ONE
    assert root_system(Flavor("sp", 2)).killing_trace_ratio() == Scalar(6)


def test_lifted_relations_spot_checks():
    inst = get_instance("SL2")
    rs = root_system(inst.flavor)
    cb = lift_basis(rs, inst.tyurin, (-6, 6))
    a = rs.simple[0]
    # [E_0^a, E_0^-a] has H_0^a as its degree-0 component (exactly here)
    ee = cb.E(0, a).value.commutator(cb.E(0, _neg(a)).value)
    assert ee == cb.H_simple(0, a).value
    # [H_n^a, H_m^a] vanishes identically at genus zero
    hh = cb.H_simple(1, a).value.commutator(cb.H_simple(-1, a).value)
    assert hh.is_zero()
    # [E_1^a, E_1^a] = 0: same root twice is never a root
    assert cb.E(1, a).value.commutator(cb.E(1, a).value).is_zero()


def _pipeline(inst, span=4):
    rs = root_system(inst.flavor)
    cb = lift_basis(rs, inst.tyurin, (-2 * span - 2, 2 * span + 2))
    g1 = Gamma1(inst.omega(), inst.separating_cycle())
    return rs, cb, g1, (-span, span)


def test_normalize_gamma1_sl2():
    inst = get_instance("SL2")
    rs, cb, g1, win = _pipeline(inst)
    table, state = normalize(g1, cb, 1, win)
    assert table.level_bounds() == (0, 0)
    rep = verify_recursions(table, cb)
    assert all(not bad for bad in rep.values()), rep


def test_normalize_fixed_point():
    # gamma1 is already normalized up to level-zero values: normalizing
    # twice gives the same table
    inst = get_instance("SL2")
    rs, cb, g1, win = _pipeline(inst, span=3)
    t1, _ = normalize(g1, cb, 1, win)
    from laxcoh import TableCocycle
    t2, _ = normalize(TableCocycle(t1, cb.graded), cb, 1, win)
    assert t1 == t2


def test_normalize_kills_seeded_coboundaries():
    inst = get_instance("SL2")
    rs, cb, g1, win = _pipeline(inst, span=3)
    rng = random.Random(5)
    for _ in range(3):
        vals = {}
        for m in range(-2, 3):
            for r in range(3):
                if rng.random() < 0.6:
                    vals[(m, r)] = Scalar(rng.randint(-6, 6))
        phi = LinearFunctional(cb.graded, vals)
        assert normalized_coboundary_check(phi, cb, 5, win)


def test_uniqueness_scalars():
    inst = get_instance("SL2")
    rs, cb, g1, win = _pipeline(inst, span=3)
    c, mis = uniqueness_driver(5 * g1, g1, cb, 1, win)
    assert c == Scalar(5) and mis is None
    phi = LinearFunctional(cb.graded, {(1, 0): Scalar(2), (0, 2): ONE,
                                       (-2, 1): Scalar(-3)})
    c, mis = uniqueness_driver(g1 + phi.coboundary(), g1, cb, 4, win)
    assert c == ONE and mis is None


def test_uniqueness_across_connections():
    from laxcoh import distinct_connection
    inst = get_instance("SL2")
    rs, cb, g1, win = _pipeline(inst, span=3)
    om2 = distinct_connection(inst.omega(), 1)
    g1p = Gamma1(om2, inst.separating_cycle())
    c, mis = uniqueness_driver(g1p, g1, cb, 1, win)
    assert c == ONE and mis is None


def test_uniqueness_detects_independence():
    # gamma1 against the zero cocycle: the reference value vanishes
    inst = get_instance("SL2")
    rs, cb, g1, win = _pipeline(inst, span=2)
    zero = LinearFunctional.zero(cb.graded).coboundary()
    c, mis = uniqueness_driver(g1, zero, cb, 1, win)
    assert c is None


def test_pipeline_so3w():
    inst = get_instance("SO3W")
    rs, cb, g1, win = _pipeline(inst, span=3)
    table, _ = normalize(g1, cb, 1, win)
    assert table.level_bounds() == (0, 0)
    rep = verify_recursions(table, cb)
    assert all(not bad for bad in rep.values()), rep
    c, mis = uniqueness_driver(5 * g1, g1, cb, 1, win)
    assert c == Scalar(5) and mis is None


def test_pipeline_sp4w():
    inst = get_instance("SP4W")
    rs, cb, g1, win = _pipeline(inst, span=2)
    table, _ = normalize(g1, cb, 1, win)
    assert table.level_bounds() == (0, 0)
    rep = verify_recursions(table, cb)
    assert all(not bad for bad in rep.values()), rep


def test_root_system_export():
    import json
    from laxcoh.jsonio import root_system_to_json
    rs = root_system(Flavor("sp", 2))
    data = root_system_to_json(rs)
    text = json.dumps(data)
    assert len(data["roots"]) == 8
    assert sum(1 for r in data["roots"] if r["simple"]) == 2
    assert data["killing_trace_ratio"] == "6"
    assert json.loads(text) == data


def test_normalization_state_export():
    from laxcoh.jsonio import functional_to_json
    inst = get_instance("SL2")
    rs, cb, g1, win = _pipeline(inst, span=2)
    phi = LinearFunctional(cb.graded, {(1, 0): Scalar(2)})
    table, state = normalize(g1 + phi.coboundary(), cb, 4, win)
    payload = functional_to_json(state.phi)
    assert payload, "normalization produced a nonzero functional"
    assert all(set(e) == {"degree", "index", "value"} for e in payload)


def test_pipeline_loop_matches_graded_remark():
    # without weak points there are no higher corrections at all: the
    # normalization functional reproduces the classical computation
    inst = get_instance("LOOP")
    rs, cb, g1, win = _pipeline(inst, span=3)
    table, state = normalize(g1, cb, 1, win)
    assert table.level_bounds() == (0, 0)
    a = rs.simple[0]
    ih = cb.index_of_cartan[a]
    # gamma(H_n, H_-n) = n * gamma(H_1, H_-1) with gamma(H_1, H_-1) = -2
    assert table.value(1, ih, -1, ih) == Scalar(-2)
    for n in (-3, -1, 2, 3):
        assert table.value(n, ih, -n, ih) == Scalar(-2 * n)
