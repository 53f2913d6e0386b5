"""Rees presentations, Rees and mixed multiplicities, invariance of closures."""

import pytest

from gradmult import (
    AlgIdeal,
    HypothesisFail,
    PolyIdeal,
    bhattacharya_oracle,
    build_fc_sequence,
    find_minimal_reduction,
    invariance_check,
    mixed_fastpath,
    mixed_via_fc_quotient,
    rees_multiplicity,
    rees_presentation,
)
from gradmult.mixed_rees import rees_multiplicity_fastpath, rees_multiplicity_oracle


def test_rees_presentation_of_irrelevant(kxy):
    x, y = kxy.gens()
    pres = rees_presentation(AlgIdeal(kxy, [x, y]))
    assert pres.ambient.names == ("x", "y", "T1", "T2")
    assert pres.base_vars == 2
    assert pres.dim == 3
    ring = pres.ambient
    xv, yv, t1, t2 = (ring.var(i) for i in range(4))
    relation = xv * t2 - yv * t1
    assert pres.rees_ideal.equals(PolyIdeal(ring, (relation,)))


def test_rees_presentation_principal(kxy):
    x, y = kxy.gens()
    pres = rees_presentation(AlgIdeal(kxy, [x]))
    assert pres.rees_ideal.is_zero()
    assert pres.dim == 3


def test_rees_presentation_guards(kxy):
    with pytest.raises(ValueError):
        rees_presentation(AlgIdeal(kxy, []))
    with pytest.raises(ValueError):
        rees_presentation(AlgIdeal(kxy, [kxy.one()]))


def test_rees_oracle_principal(kxy):
    x, y = kxy.gens()
    res = rees_multiplicity_oracle(AlgIdeal(kxy, [x]))
    assert res.value == 1
    assert res.method == "finite-difference-oracle"
    assert res.witness["route"] == "series"
    assert res.witness["filtration"] == "N-adic"


def test_rees_both_routes_on_irrelevant(kxy):
    x, y = kxy.gens()
    report = rees_multiplicity(AlgIdeal(kxy, [x, y]), mode="both")
    assert report.fastpath.value == 2
    assert report.oracle.value == 2
    assert report.agree is True
    assert report.value == 2
    assert report.fastpath.method == "fastpath-cor-3.2(ii)"


def test_rees_fastpath_values(kxy, hyper):
    x, y = kxy.gens()
    m2 = AlgIdeal(kxy, [x, y]).power(2)
    res = rees_multiplicity_fastpath(m2, degseq=(2, 2))
    assert res.value == 3
    assert res.witness["degree_sequence"] == [2, 2]
    assert res.witness["height"] == 2
    assert rees_multiplicity_fastpath(AlgIdeal(kxy, [x, y * y])).value == 2
    hx, hy, hz = hyper.gens()
    assert rees_multiplicity_fastpath(AlgIdeal(hyper, [hx, hy, hz])).value == 6


def test_rees_fastpath_hypotheses(kxy, nondomain):
    x, y = kxy.gens()
    X, Y = nondomain.gens()
    with pytest.raises(HypothesisFail):
        rees_multiplicity_fastpath(AlgIdeal(nondomain, [X + Y * Y]))
    with pytest.raises(HypothesisFail):
        rees_multiplicity_fastpath(AlgIdeal(kxy, [x * x, x * y]))
    with pytest.raises(ValueError):
        rees_multiplicity_fastpath(AlgIdeal(kxy, [x, y]), degseq=(1, 1, 1))


def test_rees_modes(kxy):
    x, y = kxy.gens()
    m = AlgIdeal(kxy, [x, y])
    fast_only = rees_multiplicity(m, mode="fastpath")
    assert fast_only.oracle is None
    assert fast_only.agree is None
    assert fast_only.value == 2
    with pytest.raises(ValueError):
        rees_multiplicity(m, mode="quick")


def test_bhattacharya_tables(kxy):
    x, y = kxy.gens()
    m2 = AlgIdeal(kxy, [x, y]).power(2)
    table = bhattacharya_oracle([m2])
    assert table.q == 2
    assert table.entries == {(1, 0): 1, (0, 1): 2}
    assert table.fit_residual == 0
    assert table.entry((0, 1)) == 2
    assert table.entry_for_type(0) == 1
    assert table.entry_for_type(1) == 2
    assert bhattacharya_oracle([AlgIdeal(kxy, [x, y * y])]).entries == {
        (1, 0): 1,
        (0, 1): 1,
    }
    # height one: the type-1 entry vanishes
    assert bhattacharya_oracle([AlgIdeal(kxy, [x])]).entries == {(1, 0): 1, (0, 1): 0}


def test_bhattacharya_two_ideals(kxy):
    x, y = kxy.gens()
    table = bhattacharya_oracle(
        [AlgIdeal(kxy, [x]), AlgIdeal(kxy, [y])],
        n0_range=(2, 4),
        n_ranges=((2, 4), (2, 4)),
    )
    assert table.entries == {(1, 0, 0): 1, (0, 1, 0): 0, (0, 0, 1): 0}


def test_bhattacharya_guards(kxy, nondomain):
    x, y = kxy.gens()
    m = AlgIdeal(kxy, [x, y])
    with pytest.raises(ValueError):
        bhattacharya_oracle([m, m, m])
    with pytest.raises(ValueError):
        bhattacharya_oracle([AlgIdeal(kxy, [x + y * y])])
    with pytest.raises(ValueError):
        bhattacharya_oracle([AlgIdeal(kxy, [])])
    X, Y = nondomain.gens()
    with pytest.raises(ValueError):
        bhattacharya_oracle([AlgIdeal(nondomain, [X])])


def test_mixed_fastpath_values(kxy):
    x, y = kxy.gens()
    m2 = AlgIdeal(kxy, [x, y]).power(2)
    zero_type = mixed_fastpath(m2, i=0)
    assert (zero_type.value, zero_type.method) == (1, "fastpath-cor-3.2(i)")
    assert mixed_fastpath(m2, i=1).value == 2
    principal = AlgIdeal(kxy, [x])
    assert mixed_fastpath(principal, i=0).value == 1
    vanish = mixed_fastpath(principal, i=1)
    assert (vanish.value, vanish.method) == (0, "fastpath-rem-3.5")


def test_mixed_fastpath_guards(kxy):
    x, y = kxy.gens()
    m2 = AlgIdeal(kxy, [x, y]).power(2)
    for bad in (None, -1, 2):
        with pytest.raises(ValueError):
            mixed_fastpath(m2, i=bad)
    with pytest.raises(HypothesisFail):
        mixed_fastpath(AlgIdeal(kxy, [x * x, x * y]), i=0)


def test_mixed_via_fc_quotient(kxy):
    x, y = kxy.gens()
    m2 = AlgIdeal(kxy, [x, y]).power(2)
    J, _ = find_minimal_reduction(m2, seed=5)
    fc = build_fc_sequence(J, m2, seed=5)
    report = mixed_via_fc_quotient(m2, fc.elements[:1])
    assert report.value == 2
    assert report.t == 1
    assert report.fc_verified
    assert report.agree is True
    assert report.value == bhattacharya_oracle([m2]).entry_for_type(1)
    empty = mixed_via_fc_quotient(m2, [])
    assert (empty.value, empty.t, empty.agree) == (1, 0, True)


def test_mixed_via_fc_quotient_guards(kxy):
    x, y = kxy.gens()
    m2 = AlgIdeal(kxy, [x, y]).power(2)
    J, _ = find_minimal_reduction(m2, seed=5)
    fc = build_fc_sequence(J, m2, seed=5)
    with pytest.raises(HypothesisFail):
        mixed_via_fc_quotient(m2, fc.elements)
    with pytest.raises(ValueError):
        mixed_via_fc_quotient(m2, [y])


def test_invariance_same_closure_pair(kxy):
    x, y = kxy.gens()
    lhs = AlgIdeal(kxy, [x * x, y * y])
    rhs = AlgIdeal(kxy, [x * x + x * y, y * y - x * y])
    report = invariance_check(lhs, rhs)
    assert report.closure_certified
    assert report.degseq_lhs == report.degseq_rhs == (2, 2)
    assert report.rees_fastpath_lhs == report.rees_fastpath_rhs == 3
    assert report.rees_oracle_lhs == report.rees_oracle_rhs == 3
    assert report.mixed_lhs == report.mixed_rhs
    assert report.agree


def test_invariance_rejects_unrelated_pair(kxy):
    x, y = kxy.gens()
    with pytest.raises(HypothesisFail):
        invariance_check(AlgIdeal(kxy, [x]), AlgIdeal(kxy, [y]))
