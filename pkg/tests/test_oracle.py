"""Brute-force enumeration and the conformance report machinery."""

import pytest

from quadlattice import (
    BudgetExceeded,
    IdealRep,
    NotNested,
    Ring,
    basic_layer,
    enumerate_between,
    enumerate_primary,
    is_basic,
    make_context,
    split_data,
    verify_free_action,
    verify_theorems,
)
from quadlattice.ideals import (
    conductor_ideal,
    conductor_power,
    ideal_norm,
    norm_exponent,
    scale,
    unit_ideal,
)


@pytest.fixture
def gauss3():
    return make_context(-1, 3)


@pytest.fixture
def gauss5():
    return make_context(-1, 5)


class TestEnumeratePrimary:
    def test_norm_f_is_only_conductor(self, gauss3):
        assert enumerate_primary(gauss3, 1) == [IdealRep(Ring.O, 3, 0, 1)]

    def test_inert_census_to_cubes(self, gauss3):
        found = enumerate_primary(gauss3, 3)
        assert len(found) == 6
        by_norm = {}
        for q in found:
            by_norm.setdefault(ideal_norm(q), []).append(q)
        assert len(by_norm[3]) == 1
        assert len(by_norm[9]) == 4
        assert by_norm[27] == [IdealRep(Ring.O, 9, 0, 3)]  # F**2 only

    def test_contains_q2(self, gauss5):
        assert IdealRep(Ring.O, 25, 10, 1) in enumerate_primary(gauss5, 3)

    def test_split_norm_cube_count(self, gauss5):
        # Q_3, conj, and four invertible nodes on each side
        found = [q for q in enumerate_primary(gauss5, 3) if ideal_norm(q) == 125]
        basics = [q for q in found if is_basic(gauss5, q)]
        assert len(basics) == 10
        assert len(found) == 11  # plus F**2

    def test_budget(self, gauss3):
        with pytest.raises(BudgetExceeded):
            enumerate_primary(gauss3, 5, budget=3)

    def test_budget_env_override(self, gauss3, monkeypatch):
        monkeypatch.setenv("QUADLATTICE_BUDGET", "2")
        with pytest.raises(BudgetExceeded):
            enumerate_primary(gauss3, 3)
        monkeypatch.delenv("QUADLATTICE_BUDGET")
        assert len(enumerate_primary(gauss3, 3)) == 6

    def test_all_outputs_are_primary(self, gauss5):
        from quadlattice import is_F_primary

        for q in enumerate_primary(gauss5, 4):
            assert is_F_primary(gauss5, q)


class TestEnumerateBetween:
    def test_conductor_window(self, gauss3):
        cond = conductor_ideal(gauss3)
        found = enumerate_between(gauss3, cond, conductor_power(gauss3, 2))
        assert len(found) == 4
        assert set(found) == {
            IdealRep(Ring.O, 3, 0, 3),
            IdealRep(Ring.O, 9, 0, 1),
            IdealRep(Ring.O, 9, 3, 1),
            IdealRep(Ring.O, 9, 6, 1),
        }

    def test_f_two_window(self):
        ctx = make_context(-1, 2)
        cond = conductor_ideal(ctx)
        found = enumerate_between(ctx, cond, scale(cond, 2))
        assert len(found) == 3

    def test_not_nested(self, gauss3):
        cond = conductor_ideal(gauss3)
        with pytest.raises(NotNested):
            enumerate_between(gauss3, cond, cond)

    def test_ideals_containing_q2(self, gauss5):
        q2 = IdealRep(Ring.O, 25, 10, 1)
        inside = enumerate_between(gauss5, unit_ideal(Ring.O), q2)
        assert set(inside) == {conductor_ideal(gauss5)}  # only Q_1 = F strictly between


class TestFreeAction:
    def test_inert(self, gauss3):
        report = verify_free_action(gauss3)
        assert report.passed
        assert report.group_order == 4
        assert report.fixed == []
        assert report.orbit_sizes == [4]

    def test_split(self, gauss5):
        report = verify_free_action(gauss5)
        assert report.passed
        assert report.group_order == 4
        assert set(report.fixed) == {
            IdealRep(Ring.O, 25, 10, 1),
            IdealRep(Ring.O, 25, 15, 1),
        }
        assert report.orbit_sizes == [4]

    def test_ramified(self):
        ctx = make_context(-1, 2)
        report = verify_free_action(ctx)
        assert report.passed
        assert report.group_order == 2
        assert report.fixed == [IdealRep(Ring.O, 4, 2, 1)]  # P**3
        assert report.orbit_sizes == [2]

    def test_trivial_group_degenerate_case(self):
        # split with f = 2: |G| = 1, every orbit is a singleton
        ctx = make_context(-7, 2)
        report = verify_free_action(ctx)
        assert report.passed
        assert report.group_order == 1


class TestVerifyTheorems:
    def test_inert_all_pass(self, gauss3):
        report = verify_theorems(gauss3, 3)
        assert report.passed
        assert len(report.checks) >= 12

    def test_class_order_two_cell(self):
        report = verify_theorems(make_context(-5, 3), 4)
        assert report.passed

    def test_ramified_exceptional_cell(self):
        report = verify_theorems(make_context(-1, 2), 5)
        assert report.passed

    def test_real_split_cell(self):
        report = verify_theorems(make_context(10, 3), 4)
        assert report.passed

    def test_fault_injection_reports_one_failure(self, gauss3):
        report = verify_theorems(gauss3, 3, inject_fault=True)
        failures = report.failures()
        assert len(failures) == 1
        assert failures[0].name == "oracle_formula_equivalence"
        assert failures[0].witness

    def test_report_dict_shape(self, gauss3):
        doc = verify_theorems(gauss3, 3).to_dict()
        assert doc["d"] == -1 and doc["f"] == 3
        assert doc["splitting"] == "inert"
        assert doc["passed"] is True
        assert all({"name", "claim", "passed", "witness"} <= set(c) for c in doc["checks"])

    def test_without_oracle_is_cheap_and_passes(self, gauss5):
        report = verify_theorems(gauss5, 3, with_oracle=False)
        assert report.passed
        names = {c.name for c in report.checks}
        assert "oracle_formula_equivalence" not in names


class TestOracleFormulaAgreement:
    @pytest.mark.parametrize("d,f", [(-1, 3), (-1, 5), (-1, 2), (-5, 3), (-7, 2), (10, 3)])
    def test_basic_sets_match(self, d, f):
        ctx = make_context(d, f)
        kmax = 4
        oracle = {
            q
            for q in enumerate_primary(ctx, kmax)
            if is_basic(ctx, q) and norm_exponent(ctx, q) <= kmax
        }
        formula = {
            n.ideal
            for n in basic_layer(ctx, split_data(ctx), kmax, with_principals=False)
            if norm_exponent(ctx, n.ideal) <= kmax
        }
        assert oracle == formula

    @pytest.mark.parametrize("d,f", [(-1, 3), (-1, 5), (-1, 2)])
    def test_layers_reproduce_basic_layer(self, d, f):
        from quadlattice import basic_component

        ctx = make_context(d, f)
        kmax = 5
        oracle = enumerate_primary(ctx, kmax)
        basics = [q for q in oracle if is_basic(ctx, q)]
        for n in (2, 3):
            factor = f ** (n - 1)
            expected = {
                scale(q, factor)
                for q in basics
                if norm_exponent(ctx, q) + 2 * (n - 1) <= kmax
            }
            actual = {q for q in oracle if basic_component(ctx, q)[0] == n}
            assert expected == actual
