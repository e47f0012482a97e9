"""Lattice construction: intermediates, layers, Hasse diagrams, chains."""

import pytest

from quadlattice import (
    IdealRep,
    IsFO,
    NotBasicElement,
    QuadInt,
    Ring,
    basic_layer,
    hasse,
    ideal_norm,
    intermediates,
    is_basic,
    layer_n,
    make_context,
    principal_basic_ideals,
    principal_chain,
    split_data,
)
from quadlattice.ideals import conductor_ideal, contains


@pytest.fixture
def gauss3():
    return make_context(-1, 3)


@pytest.fixture
def gauss5():
    return make_context(-1, 5)


@pytest.fixture
def gauss2():
    return make_context(-1, 2)


class TestIntermediates:
    def test_conductor_gives_f_plus_one(self, gauss3):
        inter = intermediates(gauss3, conductor_ideal(gauss3))
        assert len(inter) == 4
        assert inter[0] == IdealRep(Ring.O, 3, 0, 3)  # f*O
        assert set(inter[1:]) == {IdealRep(Ring.O, 9, 3 * a, 1) for a in range(3)}

    def test_non_d_module_has_unique_intermediate(self, gauss3):
        inter = intermediates(gauss3, IdealRep(Ring.O, 9, 3, 1))
        assert inter == [IdealRep(Ring.O, 9, 0, 3)]  # f * QD = F**2

    def test_split_census(self, gauss5):
        inter = intermediates(gauss5, conductor_ideal(gauss5))
        assert len(inter) == 6
        from quadlattice import is_D_module

        d_modules = [i for i in inter if is_D_module(gauss5, i)]
        assert set(d_modules) == {
            IdealRep(Ring.O, 25, 10, 1),
            IdealRep(Ring.O, 25, 15, 1),
        }

    def test_f_o_rejected(self, gauss3):
        with pytest.raises(IsFO):
            intermediates(gauss3, IdealRep(Ring.O, 3, 0, 3))

    @pytest.mark.parametrize("d,f", [(-1, 2), (-2, 3), (-7, 2), (2, 7), (5, 5), (-11, 3)])
    def test_count_across_cases(self, d, f):
        ctx = make_context(d, f)
        assert len(intermediates(ctx, conductor_ideal(ctx))) == f + 1


class TestBasicLayer:
    def test_inert_five_nodes(self, gauss3):
        nodes = basic_layer(gauss3, split_data(gauss3), 3)
        ideals = {n.ideal for n in nodes}
        assert ideals == {
            IdealRep(Ring.O, 3, 0, 1),
            IdealRep(Ring.O, 3, 0, 3),
            IdealRep(Ring.O, 9, 0, 1),
            IdealRep(Ring.O, 9, 3, 1),
            IdealRep(Ring.O, 9, 6, 1),
        }

    def test_ramified_exceptional_nodes(self, gauss2):
        nodes = basic_layer(gauss2, split_data(gauss2), 3)
        ideals = {n.ideal for n in nodes}
        assert IdealRep(Ring.O, 4, 2, 1) in ideals      # P**3
        assert IdealRep(Ring.O, 8, 2, 1) in ideals      # (8, 2(1 + sqrt(d)))
        assert IdealRep(Ring.O, 8, 6, 1) in ideals      # (8, 4 + 2(1 + sqrt(d)))
        assert len(nodes) == 6
        by_ideal = {n.ideal: n for n in nodes}
        assert "P^3" in by_ideal[IdealRep(Ring.O, 4, 2, 1)].labels

    def test_split_nodes(self, gauss5):
        nodes = basic_layer(gauss5, split_data(gauss5), 3)
        ideals = {n.ideal for n in nodes}
        for expected in [
            IdealRep(Ring.O, 5, 0, 1),     # F
            IdealRep(Ring.O, 5, 0, 5),     # fO
            IdealRep(Ring.O, 25, 10, 1),   # Q_2
            IdealRep(Ring.O, 25, 15, 1),   # conj Q_2
            IdealRep(Ring.O, 125, 35, 1),  # Q_3
            IdealRep(Ring.O, 125, 90, 1),  # conj Q_3
        ]:
            assert expected in ideals
        labels = {lbl for n in nodes for lbl in n.labels}
        assert {"F", "fO", "Q_2", "Qbar_2", "Q_3", "Qbar_3"} <= labels

    def test_all_nodes_are_basic(self, gauss5):
        ctx = gauss5
        for node in basic_layer(ctx, split_data(ctx), 4):
            assert is_basic(ctx, node.ideal)
            assert node.layer == 1
            assert node.is_D_module != node.is_invertible

    def test_principal_flags(self, gauss3):
        nodes = basic_layer(gauss3, split_data(gauss3), 2)
        by_ideal = {n.ideal: n for n in nodes}
        assert by_ideal[IdealRep(Ring.O, 3, 0, 3)].principal_generator == QuadInt(3, 0)
        assert by_ideal[IdealRep(Ring.O, 9, 0, 1)].principal_generator == QuadInt(0, 3)
        assert by_ideal[IdealRep(Ring.O, 3, 0, 1)].principal_generator is None


class TestLayerScaling:
    def test_conductor_power(self, gauss3):
        sd = split_data(gauss3)
        basic = basic_layer(gauss3, sd, 2)
        second = layer_n(gauss3, basic, 2)
        f_node = next(n for n in second if "F^2" in n.labels)
        assert f_node.ideal == IdealRep(Ring.O, 9, 0, 3)
        assert f_node.is_power_of_F
        assert f_node.norm_exp == 3

    def test_counts_preserved(self, gauss5):
        sd = split_data(gauss5)
        basic = basic_layer(gauss5, sd, 3)
        for n in (2, 3, 4):
            assert len(layer_n(gauss5, basic, n)) == len(basic)

    def test_identity_layer(self, gauss3):
        sd = split_data(gauss3)
        basic = basic_layer(gauss3, sd, 2)
        again = layer_n(gauss3, basic, 1)
        assert [n.ideal for n in again] == [n.ideal for n in basic]


class TestHasse:
    def test_inert_two_layers(self, gauss3):
        sd = split_data(gauss3)
        basic = basic_layer(gauss3, sd, 2)
        nodes = layer_n(gauss3, basic, 1) + layer_n(gauss3, basic, 2)
        graph = hasse(gauss3, nodes)
        assert len(graph.nodes) == 10
        assert len(graph.edges) == 12
        labels = {i: n.primary_label() for i, n in enumerate(graph.nodes)}
        f_idx = next(i for i, l in labels.items() if l == "F")
        covered_by_f = {labels[j] for i, j in graph.edges if i == f_idx}
        assert covered_by_f == {"fO", "J_0", "J_1", "J_2"}
        f2_idx = next(i for i, l in labels.items() if l == "F^2")
        covering_f2 = {labels[i] for i, j in graph.edges if j == f2_idx}
        assert covering_f2 == {"fO", "J_0", "J_1", "J_2"}

    def test_single_node_no_edges(self, gauss3):
        sd = split_data(gauss3)
        nodes = [n for n in basic_layer(gauss3, sd, 1) if "F" in n.labels]
        graph = hasse(gauss3, nodes)
        assert graph.edges == []

    def test_ramified_shape(self, gauss2):
        sd = split_data(gauss2)
        basic = basic_layer(gauss2, sd, 3)
        graph = hasse(gauss2, basic)
        labels = {i: n.primary_label() for i, n in enumerate(graph.nodes)}
        p3 = next(i for i, l in labels.items() if l == "P^3")
        covered = {labels[j] for i, j in graph.edges if i == p3}
        assert covered == {"H_0", "H_1"}

    def test_include_top(self, gauss3):
        sd = split_data(gauss3)
        basic = basic_layer(gauss3, sd, 1)
        graph = hasse(gauss3, basic, include_top=True)
        labels = [n.primary_label() for n in graph.nodes]
        assert labels[0] == "O"
        assert (0, 1) in graph.edges  # O covers F


class TestPrincipalBasics:
    def test_inert_tau_ideals(self, gauss3):
        pairs = principal_basic_ideals(gauss3, split_data(gauss3), 3)
        assert {(g, i) for g, i in pairs} == {
            (QuadInt(3, 0), IdealRep(Ring.O, 3, 0, 3)),
            (QuadInt(0, 3), IdealRep(Ring.O, 9, 0, 1)),
        }

    def test_ramified_window_generator(self, gauss2):
        pairs = principal_basic_ideals(gauss2, split_data(gauss2), 3)
        ideals = {i for _, i in pairs}
        assert IdealRep(Ring.O, 8, 2, 1) in ideals  # 2(1+i) O
        assert IdealRep(Ring.O, 8, 6, 1) in ideals  # 2(1+i)i O, the other unit class

    def test_ramified_without_principal_prime(self):
        ctx = make_context(-5, 2)
        pairs = principal_basic_ideals(ctx, split_data(ctx), 3)
        # only f*O survives: tau = 1 and P is not principal
        assert [i for _, i in pairs] == [IdealRep(Ring.O, 2, 0, 2)]

    def test_split_t_n_family(self, gauss5):
        pairs = principal_basic_ideals(gauss5, split_data(gauss5), 2)
        ideals = {i for _, i in pairs}
        assert IdealRep(Ring.O, 125, 10, 1) in ideals    # t_1 O
        assert IdealRep(Ring.O, 125, 115, 1) in ideals   # conj(t_1) O
        for _, ideal in pairs:
            assert is_basic(gauss5, ideal)

    def test_generators_regenerate(self, gauss5):
        from quadlattice.ideals import ideal_from_generators

        for gen, ideal in principal_basic_ideals(gauss5, split_data(gauss5), 3):
            assert ideal_from_generators(gauss5, Ring.O, [gen]) == ideal


class TestPrincipalChain:
    def test_chain_of_t1(self, gauss5):
        chain = principal_chain(gauss5, QuadInt(10, 5))
        assert [ideal_norm(c) for c in chain] == [5, 25, 125]
        assert chain[0] == conductor_ideal(gauss5)
        assert chain[1] == IdealRep(Ring.O, 25, 10, 1)
        assert chain[2] == IdealRep(Ring.O, 125, 10, 1)

    def test_chain_of_f(self, gauss3):
        chain = principal_chain(gauss3, QuadInt(3, 0))
        assert chain == [conductor_ideal(gauss3), IdealRep(Ring.O, 3, 0, 3)]

    def test_chain_totally_ordered(self, gauss5):
        chain = principal_chain(gauss5, QuadInt(10, 5))
        for upper, lower in zip(chain, chain[1:]):
            assert contains(gauss5, upper, lower)

    def test_rejects_non_basic(self, gauss3):
        with pytest.raises(NotBasicElement):
            principal_chain(gauss3, QuadInt(9, 9))  # gcd(x, y) = 3
        with pytest.raises(NotBasicElement):
            principal_chain(gauss3, QuadInt(1, 0))  # not in the conductor
        with pytest.raises(NotBasicElement):
            principal_chain(gauss3, QuadInt(6, 3))  # norm not a power of 3
