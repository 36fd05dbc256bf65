import pytest

from hierwave.rep_theory import IrrepLabel, contains, decompose_product
from hierwave.repair_cascade import (
    ComponentSpec,
    EmptyRemainderError,
    Organism,
    RemovalAction,
    amputate,
    ionize_recombine,
    organism_from_obj,
    organism_to_obj,
    repair,
)

HALF = IrrepLabel(1)
ONE = IrrepLabel(2)
ZERO = IrrepLabel(0)


def cell(name, irrep, subs=()):
    return ComponentSpec(name=name, irrep=irrep, subcomponents=tuple(subs))


def singlet_of_four_halves():
    return Organism(target_irrep=ZERO, components=tuple(cell(f"c{i}", HALF) for i in range(4)))


class TestSpecs:
    def test_component_invariant_ok(self):
        c = cell("a", ONE, [cell("a1", HALF), cell("a2", HALF)])
        assert c.validate() == []

    def test_component_invariant_violated(self):
        c = cell("a", HALF, [cell("a1", HALF), cell("a2", HALF)])
        assert c.validate()  # 1/2 not in 1/2 x 1/2

    def test_organism_invariant(self):
        assert singlet_of_four_halves().validate() == []
        bad = Organism(target_irrep=ONE, components=(cell("only", ZERO),))
        assert bad.validate()

    def test_removal_must_be_nonempty(self):
        with pytest.raises(ValueError):
            RemovalAction(frozenset())


class TestAmputate:
    def test_remove_two_of_four_halves_still_complete(self):
        rem = amputate(singlet_of_four_halves(), RemovalAction(frozenset({2, 3})))
        assert len(rem.components) == 2
        assert rem.complete  # 0 in 1/2 x 1/2

    def test_remove_one_of_two_halves_incomplete(self):
        org = Organism(target_irrep=ONE, components=(cell("a", HALF), cell("b", HALF)))
        rem = amputate(org, RemovalAction(frozenset({1})))
        assert not rem.complete  # 1 not in {1/2}

    def test_remove_all_rejected(self):
        with pytest.raises(EmptyRemainderError):
            amputate(singlet_of_four_halves(), RemovalAction(frozenset({0, 1, 2, 3})))

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            amputate(singlet_of_four_halves(), RemovalAction(frozenset({9})))


class TestRepair:
    def test_already_complete(self):
        rem = amputate(singlet_of_four_halves(), RemovalAction(frozenset({2, 3})))
        result = repair(rem, max_depth=3)
        assert result.feasible
        assert result.levels_descended == 0
        assert result.cost == 0

    def test_one_descent_rebuilds(self):
        # remaining cell carries J=1 alone; its two spin-1/2 parts recover J=0
        org = Organism(
            target_irrep=ZERO,
            components=(
                cell("kept", ONE, [cell("p1", HALF), cell("p2", HALF)]),
                cell("lost", ONE),
            ),
        )
        rem = amputate(org, RemovalAction(frozenset({1})))
        assert not rem.complete
        result = repair(rem, max_depth=3)
        assert result.feasible
        assert result.levels_descended == 1
        assert result.cost == 2
        # independent witness check
        assert contains(decompose_product(list(result.witness_irreps)), ZERO) >= 1

    def test_depth_zero_guard(self):
        org = Organism(
            target_irrep=ZERO,
            components=(
                cell("kept", ONE, [cell("p1", HALF), cell("p2", HALF)]),
                cell("lost", ONE),
            ),
        )
        rem = amputate(org, RemovalAction(frozenset({1})))
        result = repair(rem, max_depth=0)
        assert not result.feasible
        assert result.levels_descended == 0

    def test_stuck_at_leaves(self):
        org = Organism(
            target_irrep=ZERO,
            components=(cell("kept", ONE, [cell("q1", ONE), cell("q2", ZERO)]), cell("lost", ONE)),
        )
        rem = amputate(org, RemovalAction(frozenset({1})))
        result = repair(rem, max_depth=5)
        assert not result.feasible

    def test_feasible_always_has_valid_witness(self):
        org = singlet_of_four_halves()
        rem = amputate(org, RemovalAction(frozenset({0, 1})))
        result = repair(rem, max_depth=2)
        if result.feasible:
            product = decompose_product(list(result.witness_irreps))
            assert contains(product, org.target_irrep) >= 1

    def test_cost_monotone_in_depth(self):
        org = Organism(
            target_irrep=ZERO,
            components=(
                cell(
                    "kept",
                    ONE,
                    [
                        cell("p1", HALF, [cell("g1", HALF), cell("g2", ZERO)]),
                        cell("p2", HALF, [cell("g3", HALF), cell("g4", ZERO)]),
                    ],
                ),
                cell("lost", ONE),
            ),
        )
        rem = amputate(org, RemovalAction(frozenset({1})))
        costs = []
        for depth in range(4):
            result = repair(rem, max_depth=depth)
            costs.append((result.levels_descended, result.cost))
        sorted_by_levels = sorted(costs)
        assert all(
            a[1] <= b[1] for a, b in zip(sorted_by_levels, sorted_by_levels[1:])
        )


class TestIonizeRecombine:
    def atom(self):
        return Organism(
            target_irrep=ZERO,
            components=(cell("ion_core", HALF), cell("electron", HALF)),
        )

    def test_break_then_restore(self):
        broken, restored = ionize_recombine(self.atom())
        assert not broken.complete  # 0 not in {1/2}
        assert restored.complete  # 0 in 1/2 x 1/2

    def test_wrong_replacement_reported_honestly(self):
        _, restored = ionize_recombine(self.atom(), replacement_irrep=ONE)
        assert not restored.complete  # 0 not in 1/2 x 1

    def test_single_component_rejected(self):
        lone = Organism(target_irrep=HALF, components=(cell("only", HALF),))
        with pytest.raises(ValueError):
            ionize_recombine(lone)

    def test_matched_replacement_recovers_intact_completeness(self):
        org = singlet_of_four_halves()
        _, restored = ionize_recombine(org, electron_index=2)
        product = decompose_product([c.irrep for c in org.components])
        intact_complete = contains(product, org.target_irrep) >= 1
        assert restored.complete == intact_complete


class TestScenarioFiles:
    def test_round_trip(self):
        org = Organism(
            target_irrep=ZERO,
            components=(cell("a", ONE, [cell("a1", HALF), cell("a2", HALF)]), cell("b", ONE)),
        )
        assert organism_from_obj(organism_to_obj(org)) == org
