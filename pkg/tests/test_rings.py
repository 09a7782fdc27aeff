"""Rings, ring extraction from domination cycles, ring components."""

import pytest

from stabledec import (
    Game,
    NotACycle,
    NotARingComponent,
    StartNotInCycle,
    TrivialAbsorbingSet,
    absorbing_sets,
    breaks_maximal_set,
    canonical_rotation,
    classify_simple,
    compact_collection,
    component,
    cyclically_equal,
    extract_ring,
    full_domination_graph,
    has_proper_ring,
    is_proper_ring,
    is_ring,
    is_ring_component,
    ring_components_of,
)
from conftest import C, make_structure


@pytest.fixture(scope="module")
def disjoint_game():
    """Three disjoint pairs; every cross preference holds vacuously."""
    return Game(
        6,
        {
            1: [(1, 2), (1,)],
            2: [(1, 2), (2,)],
            3: [(3, 4), (3,)],
            4: [(3, 4), (4,)],
            5: [(5, 6), (5,)],
            6: [(5, 6), (6,)],
        },
    )


RC7 = ("12", "23", "34", "45", "15")
RC8 = ("145", "12", "23", "356", "46")
UNION5 = ("14", "34", "36", "16", "35", "25", "24")


class TestIsRing:
    def test_five_cycle(self, g7):
        assert is_ring(g7, [C(t) for t in ("15", "12", "23", "34", "45")])

    def test_four_cycle_with_triple(self, g7):
        assert is_ring(g7, [C(t) for t in ("15", "123", "34", "45")])

    def test_reversal_is_not_a_ring(self, g7):
        assert not is_ring(g7, [C(t) for t in ("45", "34", "23", "12", "15")])

    def test_too_short(self, g7):
        assert not is_ring(g7, [C("12"), C("23")])

    def test_repeats_rejected(self, g7):
        assert not is_ring(g7, [C("12"), C("23"), C("12")])

    def test_vacuous_preferences_still_ring(self, disjoint_game):
        assert is_ring(disjoint_game, [C("12"), C("34"), C("56")])


class TestIsProperRing:
    def test_five_cycle(self, g7):
        assert is_proper_ring(g7, [C(t) for t in ("15", "12", "23", "34", "45")])

    def test_four_cycle_with_triple(self, g7):
        assert is_proper_ring(g7, [C(t) for t in ("15", "123", "34", "45")])

    def test_disjoint_neighbors_disqualify(self, disjoint_game):
        assert not is_proper_ring(disjoint_game, [C("12"), C("34"), C("56")])


class TestRotations:
    def test_canonical_rotation(self):
        seq = (C("45"), C("15"), C("12"), C("23"), C("34"))
        assert canonical_rotation(seq) == (
            C("12"),
            C("23"),
            C("34"),
            C("45"),
            C("15"),
        )
        assert canonical_rotation(canonical_rotation(seq)) == canonical_rotation(seq)

    def test_cyclically_equal(self):
        a = (C("45"), C("15"), C("12"), C("23"), C("34"))
        b = (C("12"), C("23"), C("34"), C("45"), C("15"))
        assert cyclically_equal(a, b)
        assert not cyclically_equal(a, tuple(reversed(a)))
        assert not cyclically_equal(a, a[:4])


class TestExtractRing:
    def test_start_forty_five(self, g7, cycle7):
        ring = extract_ring(g7, cycle7, C("45"))
        assert ring == (C("15"), C("12"), C("23"), C("34"), C("45"))
        assert cyclically_equal(
            ring, (C("45"), C("15"), C("12"), C("23"), C("34"))
        )
        assert is_ring(g7, ring)

    def test_start_twenty_three(self, g7, cycle7):
        ring = extract_ring(g7, cycle7, C("23"))
        assert ring == (C("34"), C("45"), C("15"), C("12"), C("23"))

    def test_rotated_cycle_same_ring(self, g7, cycle7):
        rotated = cycle7[2:] + cycle7[:2]
        assert cyclically_equal(
            extract_ring(g7, rotated, C("45")), extract_ring(g7, cycle7, C("45"))
        )

    def test_three_cycle(self, g6):
        cycle = [
            make_structure(g6, "12 3 4 56"),
            make_structure(g6, "1 23 4 56"),
            make_structure(g6, "13 2 4 56"),
        ]
        ring = extract_ring(g6, cycle, C("23"))
        assert ring == (C("13"), C("12"), C("23"))
        assert is_ring(g6, ring)

    def test_start_must_form_somewhere(self, g7, cycle7):
        with pytest.raises(StartNotInCycle):
            extract_ring(g7, cycle7, C("467"))

    def test_rejects_short_or_repeating_cycles(self, g7, cycle7):
        with pytest.raises(NotACycle):
            extract_ring(g7, cycle7[:2], C("45"))
        with pytest.raises(NotACycle):
            extract_ring(g7, cycle7 + [cycle7[0]], C("45"))

    def test_rejects_non_domination_sequence(self, g7, cycle7):
        with pytest.raises(NotACycle):
            extract_ring(g7, [cycle7[0], cycle7[2], cycle7[4]], C("45"))


class TestIsRingComponent:
    def test_seven_agent_component(self, g7):
        assert is_ring_component(g7, [C(t) for t in RC7])

    def test_proper_ring_alone_is_not_enough(self, g7):
        # {123, 45} stays unbroken inside this four-ring
        assert not is_ring_component(g7, [C(t) for t in ("15", "123", "34", "45")])

    def test_union_of_rings_can_fail(self, g7):
        assert not is_ring_component(
            g7, [C(t) for t in ("15", "12", "23", "34", "45", "123")]
        )

    def test_eight_agent_component(self, g8):
        assert is_ring_component(g8, [C(t) for t in RC8])

    def test_six_agent_components(self, g6):
        assert is_ring_component(g6, [C("12"), C("23"), C("13")])
        assert is_ring_component(g6, [C("45"), C("46"), C("56")])

    def test_marriage_ring_union_fails(self, mar33):
        union = [C(t) for t in UNION5]
        assert not is_ring_component(mar33, union)
        # the two stable matchings sit inside the union as maximal sets and
        # resist every member, so the break-everything condition fails
        for mset in ((C("16"), C("25"), C("34")), (C("14"), C("25"), C("36"))):
            assert not any(
                breaks_maximal_set(mar33, r, tuple(sorted(mset)))
                for r in union
                if r not in mset
            )
        # the third perfect matching in the union is broken, by 14 alone
        mset = tuple(sorted((C("16"), C("24"), C("35"))))
        breakers = [
            r
            for r in union
            if r not in mset and breaks_maximal_set(mar33, r, mset)
        ]
        assert breakers == [C("14")]

    def test_too_small_or_not_permissible(self, g7):
        assert not is_ring_component(g7, [C("12"), C("23")])
        assert not is_ring_component(g7, [C("12"), C("23"), C("1234")])


class TestClassifySimple:
    def test_simple(self, g7):
        assert classify_simple(g7, [C(t) for t in RC7])

    def test_not_simple(self, g8):
        # 356 breaks {145, 23} while meeting both of its coalitions
        assert not classify_simple(g8, [C(t) for t in RC8])

    def test_requires_ring_component(self, g7):
        with pytest.raises(NotARingComponent):
            classify_simple(g7, [C(t) for t in ("15", "123", "34", "45")])


class TestCompactCollection:
    def test_simple_uses_maximal_sets(self, g7):
        got = compact_collection(g7, [C(t) for t in RC7])
        assert got == [
            (C("12"), C("34")),
            (C("12"), C("45")),
            (C("23"), C("15")),
            (C("23"), C("45")),
            (C("34"), C("15")),
        ]

    def test_non_simple_uses_singletons(self, g8):
        got = compact_collection(g8, [C(t) for t in RC8])
        assert got == [(c,) for c in sorted(C(t) for t in RC8)]


class TestComponent:
    def test_seven_agent(self, g7):
        rc = component(g7, [C(t) for t in RC7])
        assert rc.coalitions == tuple(sorted(C(t) for t in RC7))
        assert rc.simple
        assert len(rc.maximal) == 5
        assert rc.compact == rc.maximal

    def test_eight_agent(self, g8):
        rc = component(g8, [C(t) for t in RC8])
        assert not rc.simple
        assert rc.compact == tuple((c,) for c in rc.coalitions)
        assert len(rc.maximal) == 4

    def test_rejects_non_component(self, g6):
        with pytest.raises(NotARingComponent):
            component(g6, [C("12"), C("23"), C("34")])


class TestRingComponentsOf:
    def test_seven_agent_game(self, g7):
        graph = full_domination_graph(g7)
        (big,) = [a for a in absorbing_sets(g7) if not a.trivial]
        (rc,) = ring_components_of(g7, big, graph)
        assert rc.coalitions == tuple(sorted(C(t) for t in RC7))
        assert rc.simple

    def test_eight_agent_game(self, g8):
        graph = full_domination_graph(g8)
        (big,) = [a for a in absorbing_sets(g8) if not a.trivial]
        (rc,) = ring_components_of(g8, big, graph)
        assert rc.coalitions == tuple(sorted(C(t) for t in RC8))
        assert not rc.simple

    def test_six_agent_game_finds_both(self, g6):
        graph = full_domination_graph(g6)
        (only,) = absorbing_sets(g6)
        comps = ring_components_of(g6, only, graph)
        assert {rc.coalitions for rc in comps} == {
            (C("12"), C("13"), C("23")),
            (C("45"), C("46"), C("56")),
        }
        assert all(rc.simple for rc in comps)

    def test_trivial_rejected(self, g7):
        graph = full_domination_graph(g7)
        trivial = [a for a in absorbing_sets(g7) if a.trivial][0]
        with pytest.raises(TrivialAbsorbingSet):
            ring_components_of(g7, trivial, graph)


class TestHasProperRing:
    def test_examples(self, g7, g8, g6, mar33):
        assert has_proper_ring(g7)
        assert has_proper_ring(g8)
        assert has_proper_ring(g6)
        # the marriage game carries proper rings even though every one of
        # its absorbing sets is trivial
        assert has_proper_ring(mar33)

    def test_vacuous_cycles_do_not_count(self, disjoint_game):
        assert not has_proper_ring(disjoint_game)

    def test_tiny_permissible_set(self):
        g = Game(2, {1: [(1, 2), (1,)], 2: [(1, 2), (2,)]})
        assert not has_proper_ring(g)
