import pytest

from modreg.abgroups import FgAbGroup, classify, is_torsion_semisimple
from modreg.errors import CapacityError, DomainError
from modreg.intarith import factorize
from modreg.oracle import (
    FiniteGroupInstance,
    all_elements,
    all_subgroups,
    all_subgroups_are_summands,
    cyclic_subgroup,
    full_subgroup,
    is_internal_summand,
    oracle_completely_vr,
    oracle_strongly_regular,
    oracle_strongly_vr,
    oracle_virtually_regular,
    subgroup_from_elements,
    subgroup_type,
    subgroups_of,
    trivial_subgroup,
)
from modreg.sweep import torsion_classes


def instance(*moduli):
    return FiniteGroupInstance(moduli)


class TestInstanceBasics:
    def test_moduli_validated(self):
        with pytest.raises(DomainError):
            FiniteGroupInstance((1,))

    def test_trivial_group(self):
        g = instance()
        assert g.order == 1
        assert all_elements(g) == [()]

    def test_all_elements(self):
        assert all_elements(instance(2)) == [(0,), (1,)]
        assert len(all_elements(instance(2, 2))) == 4
        assert len(all_elements(instance(2, 4))) == 8

    def test_order_cap_is_hard(self):
        with pytest.raises(CapacityError):
            all_elements(instance(2, 4), order_cap=4)
        with pytest.raises(CapacityError):
            full_subgroup(instance(19, 20))  # order 380 > default 360


class TestCyclicSubgroup:
    def test_identity_generates_trivial(self):
        sub = cyclic_subgroup(instance(4), (0,))
        assert sub.element_tuples == ((0,),)

    def test_two_in_z4(self):
        sub = cyclic_subgroup(instance(4), (2,))
        assert sub.element_tuples == ((0,), (2,))

    def test_mixed_order_four(self):
        sub = cyclic_subgroup(instance(2, 4), (1, 1))
        assert len(sub) == 4


class TestAllSubgroups:
    def test_z2(self):
        assert len(all_subgroups(instance(2))) == 2

    def test_z4_divisor_lattice(self):
        subs = all_subgroups(instance(4))
        assert [sorted(s.indices) for s in subs] == [[0], [0, 2], [0, 1, 2, 3]]

    def test_klein_has_five(self):
        assert len(all_subgroups(instance(2, 2))) == 5

    def test_lagrange_everywhere(self):
        for moduli in [(2, 4), (6,), (2, 2, 2), (9,), (3, 3), (12,)]:
            g = instance(*moduli)
            for sub in all_subgroups(g):
                assert g.order % len(sub) == 0

    def test_closure_of_every_enumerated_subgroup(self):
        g = instance(2, 4)
        for sub in all_subgroups(g):
            # revalidating through the checked constructor must not raise
            subgroup_from_elements(g, sub.element_tuples)

    def test_subgroup_cap(self):
        with pytest.raises(CapacityError):
            all_subgroups(instance(2, 2, 2), subgroup_cap=5)


class TestInternalSummand:
    def test_trivial_subgroup_always_splits(self):
        g = instance(4)
        assert is_internal_summand(trivial_subgroup(g), full_subgroup(g))

    def test_unique_z2_in_z4_has_no_complement(self):
        g = instance(4)
        assert not is_internal_summand(cyclic_subgroup(g, (2,)), full_subgroup(g))

    def test_lines_in_klein_split(self):
        g = instance(2, 2)
        whole = full_subgroup(g)
        for generator in [(0, 1), (1, 0), (1, 1)]:
            assert is_internal_summand(cyclic_subgroup(g, generator), whole)

    def test_containment_precondition(self):
        g = instance(4)
        with pytest.raises(DomainError):
            is_internal_summand(full_subgroup(g), cyclic_subgroup(g, (2,)))


class TestSubgroupType:
    def test_trivial(self):
        assert subgroup_type(trivial_subgroup(instance(4))) == FgAbGroup(0, ())

    def test_z2_inside_z4(self):
        assert subgroup_type(cyclic_subgroup(instance(4), (2,))) == FgAbGroup(0, (2,))

    def test_full_z2_z4(self):
        assert subgroup_type(full_subgroup(instance(2, 4))) == FgAbGroup(0, (2, 4))

    def test_full_instance_reproduces_descriptor(self):
        for group in torsion_classes(48):
            inst = FiniteGroupInstance(group.invariant_factors)
            assert subgroup_type(full_subgroup(inst)) == group

    def test_every_subgroup_of_z2_z8(self):
        g = instance(2, 8)
        whole = full_subgroup(g)
        for sub in subgroups_of(whole):
            t = subgroup_type(sub)
            assert t.torsion_order == len(sub)


class TestOracleVirtuallyRegular:
    def test_z4_fails_with_witness(self):
        ok, witness = oracle_virtually_regular(full_subgroup(instance(4)))
        assert (ok, witness) == (False, (2,))

    def test_z2_z4_passes(self):
        assert oracle_virtually_regular(full_subgroup(instance(2, 4))) == (True, None)

    def test_z6_passes(self):
        assert oracle_virtually_regular(full_subgroup(instance(6))) == (True, None)

    def test_projection_route_requires_full_group(self):
        g = instance(4)
        with pytest.raises(DomainError):
            oracle_virtually_regular(cyclic_subgroup(g, (2,)), method="projection")

    def test_routes_agree_up_to_order_64(self):
        for group in torsion_classes(64):
            inst = FiniteGroupInstance(group.invariant_factors)
            whole = full_subgroup(inst)
            via_projection = oracle_virtually_regular(whole, method="projection")
            via_lattice = oracle_virtually_regular(whole, method="lattice")
            assert via_projection == via_lattice

    @pytest.mark.parametrize(
        "moduli",
        [(4, 6), (9, 3), (2, 4, 3), (8, 2), (2, 2, 4), (6, 6), (16, 2), (4, 4, 2)],
    )
    def test_routes_agree_on_nonchain_presentations(self, moduli):
        whole = full_subgroup(instance(*moduli))
        assert oracle_virtually_regular(whole, method="projection") == (
            oracle_virtually_regular(whole, method="lattice")
        )

    def test_inside_a_proper_subgroup(self):
        g = instance(2, 8)
        # the subgroup generated by (0, 2) is a Z_4 living inside Z_2 x Z_8
        sub = cyclic_subgroup(g, (0, 2))
        ok, witness = oracle_virtually_regular(sub)
        assert not ok
        assert witness == (0, 4)


class TestStrongAndComplete:
    def test_z2_z4_not_strongly_vr(self):
        assert not oracle_strongly_vr(full_subgroup(instance(2, 4)))

    def test_klein_strongly_vr(self):
        assert oracle_strongly_vr(full_subgroup(instance(2, 2)))

    def test_z4_not_strongly_vr(self):
        assert not oracle_strongly_vr(full_subgroup(instance(4)))

    def test_z2_z4_not_completely_vr(self):
        assert not oracle_completely_vr(full_subgroup(instance(2, 4)))

    def test_z6_completely_vr(self):
        assert oracle_completely_vr(full_subgroup(instance(6)))

    def test_trivial_completely_vr(self):
        assert oracle_completely_vr(full_subgroup(instance()))

    def test_monotone_implications_small_sweep(self):
        for group in torsion_classes(36):
            whole = full_subgroup(FiniteGroupInstance(group.invariant_factors))
            vr, _ = oracle_virtually_regular(whole)
            if oracle_completely_vr(whole):
                assert vr
            if oracle_strongly_vr(whole):
                assert vr


class TestStronglyRegular:
    def test_klein(self):
        assert oracle_strongly_regular(full_subgroup(instance(2, 2)))

    def test_z4(self):
        assert not oracle_strongly_regular(full_subgroup(instance(4)))

    def test_z6_splits_by_remainders(self):
        assert oracle_strongly_regular(full_subgroup(instance(6)))

    def test_equivalent_to_squarefree_factors(self):
        # derived cross-check: strong regularity of a finite abelian group
        # coincides with semisimplicity, i.e. every invariant factor squarefree
        for group in torsion_classes(48):
            whole = full_subgroup(FiniteGroupInstance(group.invariant_factors))
            assert oracle_strongly_regular(whole) == is_torsion_semisimple(group)

    def test_cyclic_summands_iff_all_summands(self):
        for group in torsion_classes(48):
            whole = full_subgroup(FiniteGroupInstance(group.invariant_factors))
            assert oracle_strongly_regular(whole) == all_subgroups_are_summands(whole)


class TestOracleAgreesWithClassifier:
    def test_vr_up_to_order_96(self):
        for group in torsion_classes(96):
            whole = full_subgroup(FiniteGroupInstance(group.invariant_factors))
            ok, _ = oracle_virtually_regular(whole)
            assert ok == classify(group).virtually_regular, group
