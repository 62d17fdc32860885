from fractions import Fraction

import numpy as np
import pytest

from patternkit.core import (
    PatternError,
    constant_coloring,
    find_realizer,
    parse_pattern,
    realizes,
)
from patternkit.constructions import (
    ApproxOracle,
    BiArrayFunctional,
    ConstructionTrace,
    PrefixFunctional,
    TraceEvent,
    age,
    build_dnc_coloring,
    build_measure_coloring,
    build_stable_2dim_coloring,
    cantor_pair,
    cantor_unpair,
    cover_measure,
    h_bound,
    index_pattern,
    joint_meeting_measure,
    oldest_blocks,
    pattern_index,
    prefix_free_cover,
    requires_attention_measure,
    verify_trace,
)


class TestIndexing:
    def test_small_indices(self):
        assert str(index_pattern(0)) == "2:0"
        assert str(index_pattern(1)) == "2:1"
        assert str(index_pattern(2)) == "3:000"
        assert str(index_pattern(4)) == "3:010"

    def test_round_trip(self):
        for idx in range(200):
            assert pattern_index(index_pattern(idx)) == idx

    def test_rejects_singleton(self):
        with pytest.raises(PatternError):
            pattern_index(parse_pattern("1:"))

    def test_cantor_pairing(self):
        assert cantor_pair(0, 0) == 0
        assert cantor_pair(1, 0) == 1
        assert cantor_pair(0, 1) == 2
        assert cantor_pair(4, 0) == 10
        for k in range(100):
            assert cantor_pair(*cantor_unpair(k)) == k

    def test_h_bound(self):
        # k=1: only requirement 0 = ("2:0", 0), truncation size 1
        assert h_bound(0) == 0
        assert h_bound(1) == 1
        assert h_bound(10) == 13


class TestApproxOracle:
    ORACLE = ApproxOracle(((0, 0, frozenset()), (0, 5, frozenset({1, 2, 7})),
                           (1, 3, frozenset({0}))))

    def test_latest_entry_wins(self):
        assert self.ORACLE.query(0, 4) == frozenset()
        assert self.ORACLE.query(0, 6) == frozenset({1, 2})

    def test_clipped_to_stage(self):
        assert self.ORACLE.query(0, 8) == frozenset({1, 2, 7})
        assert self.ORACLE.query(0, 7) == frozenset({1, 2})

    def test_unknown_index_empty(self):
        assert self.ORACLE.query(9, 50) == frozenset()

    def test_age_of_absent_element(self):
        assert age(self.ORACLE, 0, 3, 10) is None
        assert age(self.ORACLE, 0, 1, 4) is None

    def test_age_run_length(self):
        # 1 enters at stage 5 and stays: s-5 previous member stages at stage s
        assert age(self.ORACLE, 0, 1, 6) == 1
        assert age(self.ORACLE, 0, 1, 9) == 4

    def test_membership_run_of_two(self):
        # member at stages 5 and 6 only: run of length 2 means age 1
        o = ApproxOracle(((0, 5, frozenset({0})), (0, 7, frozenset())))
        assert age(o, 0, 0, 6) == 1


class TestOldestBlocks:
    def test_singleton_truncation_blocks(self):
        o = ApproxOracle(((0, 0, frozenset({0, 1, 2, 3})),))
        f = constant_coloring(10)
        got = oldest_blocks(o, 0, 8, parse_pattern("2:0"), f, 3)
        assert got == [[0], [1], [2]]

    def test_none_when_too_few(self):
        o = ApproxOracle(((0, 0, frozenset({0, 1})),))
        f = constant_coloring(10)
        assert oldest_blocks(o, 0, 8, parse_pattern("3:010"), f, 2) is None

    def test_prefers_older_elements(self):
        o = ApproxOracle(((0, 0, frozenset({0, 1})), (0, 5, frozenset({0, 1, 2, 3}))))
        f = constant_coloring(12)
        got = oldest_blocks(o, 0, 10, parse_pattern("2:0"), f, 2)
        assert got == [[0], [1]]

    def test_pair_truncation_realizers(self):
        o = ApproxOracle(((0, 0, frozenset(range(6))),))
        f = constant_coloring(12)
        got = oldest_blocks(o, 0, 10, parse_pattern("3:010"), f, 3)
        assert got == [[0, 1], [2, 3], [4, 5]]

    def test_count_validation(self):
        o = ApproxOracle(((0, 0, frozenset({0})),))
        with pytest.raises(PatternError):
            oldest_blocks(o, 0, 5, parse_pattern("2:0"), constant_coloring(6), 0)


class TestDncBuilder:
    def test_empty_oracle_all_zero(self):
        f, trace = build_dnc_coloring(ApproxOracle(()), 30)
        assert not f.matrix.any()
        assert trace.events == ()

    def test_crafted_oracle_realizer_past_stabilization(self):
        o = ApproxOracle(((0, 0, frozenset()), (0, 101, frozenset(range(60)))))
        f, trace = build_dnc_coloring(o, 200)
        p = parse_pattern("3:010")
        for s in (150, 199):
            assert find_realizer(f, sorted(o.query(0, s)) + [s], p) is not None

    def test_restraints_disjoint_per_stage(self):
        o = ApproxOracle(((0, 10, frozenset(range(20))),
                          (1, 10, frozenset(range(20)))))
        f, trace = build_dnc_coloring(o, 80)
        rep = verify_trace(trace, f)
        assert rep.passed

    def test_block_colors_match_pattern_last_column(self):
        o = ApproxOracle(((0, 0, frozenset(range(10))),))
        f, trace = build_dnc_coloring(o, 40)
        for ev in trace.events:
            if ev.kind == "color":
                assert f(int(ev.get("x")), int(ev.get("y"))) == int(ev.get("c"))

    def test_requirements_participate_below_stage(self):
        o = ApproxOracle(((0, 0, frozenset(range(30))),))
        f, trace = build_dnc_coloring(o, 15)
        for ev in trace.events:
            a, e = map(int, ev.requirement[2:-1].split(","))
            assert cantor_pair(a, e) < ev.stage


class TestPrefixFunctional:
    FN = PrefixFunctional((("", 4, frozenset({9})),
                           ("0", 2, frozenset({5})),
                           ("01", 2, frozenset({6}))))

    def test_union_of_applicable_entries(self):
        assert self.FN.output("010", 10) == frozenset({9, 5, 6})
        assert self.FN.output("1", 10) == frozenset({9})

    def test_stage_gating(self):
        assert self.FN.output("010", 3) == frozenset({5, 6})
        assert self.FN.output("010", 1) == frozenset()

    def test_rejects_non_binary_prefix(self):
        with pytest.raises(PatternError):
            PrefixFunctional((("0x", 0, frozenset()),))

    def test_qualifying_prefixes(self):
        assert self.FN.qualifying_prefixes(10, frozenset({5, 9})) == ["", "0"]


class TestMeasures:
    def test_prefix_free_cover(self):
        assert prefix_free_cover(["0", "01", "00", "11"]) == ["0", "11"]
        assert prefix_free_cover([""]) == [""]
        assert prefix_free_cover([]) == []

    def test_cover_measure(self):
        assert cover_measure(["0", "11"]) == Fraction(3, 4)
        assert cover_measure([""]) == 1
        assert cover_measure([]) == 0

    def test_attention_silent_functional(self):
        fn = PrefixFunctional(())
        assert not requires_attention_measure([], fn, 0, 10, parse_pattern("3:010"))

    def test_attention_root_output(self):
        fn = PrefixFunctional((("", 0, frozenset({3})),))
        assert requires_attention_measure([], fn, 0, 5, parse_pattern("3:010"))

    def test_attention_half_measure_insufficient(self):
        # output only under prefixes starting with 0: measure 1/2, and
        # 1/2 > 1 - 1/(2|p|) fails for every pattern size >= 2
        fn = PrefixFunctional((("0", 0, frozenset({3})),))
        for text in ("2:0", "3:010", "4:000101"):
            assert not requires_attention_measure([], fn, 0, 9, parse_pattern(text))

    def test_attention_stops_at_full_state(self):
        fn = PrefixFunctional((("", 0, frozenset({3})),))
        p = parse_pattern("2:0")
        state = [frozenset({3}), frozenset({4})]
        assert not requires_attention_measure(state, fn, 0, 9, p)

    def test_joint_meeting_measure(self):
        fn = PrefixFunctional((("0", 0, frozenset({1})), ("1", 0, frozenset({1})),
                               ("0", 0, frozenset({2}))))
        assert joint_meeting_measure(fn, 9, [frozenset({1})]) == 1
        assert joint_meeting_measure(fn, 9, [frozenset({1}), frozenset({2})]) \
            == Fraction(1, 2)
        assert joint_meeting_measure(fn, 9, [frozenset({7})]) == 0


class TestMeasureBuilder:
    def test_silent_functionals_do_nothing(self):
        fns = [PrefixFunctional(()), PrefixFunctional(())]
        ps = [parse_pattern("3:010"), parse_pattern("2:0")]
        f, trace = build_measure_coloring(fns, ps, 40)
        assert not f.matrix.any()
        assert trace.events == ()
        assert all(not st for st in trace.final["states"].values())

    def test_total_functional_fills_state(self):
        fn = PrefixFunctional(tuple(("", s, frozenset({s}))
                                    for s in range(5, 100, 5)))
        p = parse_pattern("3:010")
        f, trace = build_measure_coloring([fn], [p], 100)
        state = trace.final["states"]["R[0]"]
        assert len(state) == p.size
        rep = verify_trace(trace, f)
        assert rep.passed, rep

    def test_state_selections_realize_truncations(self):
        fn = PrefixFunctional(tuple(("", s, frozenset({s}))
                                    for s in range(5, 100, 5)))
        p = parse_pattern("3:010")
        f, trace = build_measure_coloring([fn], [p], 100)
        state = [frozenset(F) for F in trace.final["states"]["R[0]"]]
        import itertools
        for sel in itertools.product(*state):
            assert realizes(f, sel, p)

    def test_injury_resets_lower_priority(self):
        high = PrefixFunctional((("", 50, frozenset({50})),))
        low = PrefixFunctional(tuple(("", s, frozenset({s}))
                                     for s in range(5, 100, 5)))
        ps = [parse_pattern("2:0"), parse_pattern("2:1")]
        f, trace = build_measure_coloring([high, low], ps, 60)
        injuries = [ev for ev in trace.events if ev.kind == "injury"]
        assert injuries and injuries[0].requirement == "R[1]"
        inj_stage = injuries[0].stage
        # the injured strategy restarts: its marker moved past the injurer's
        assert trace.final["markers"]["R[1]"] >= inj_stage + 1
        assert verify_trace(trace, f).passed

    def test_pattern_per_functional_required(self):
        with pytest.raises(PatternError):
            build_measure_coloring([PrefixFunctional(())], [], 10)


class TestStable2dimBuilder:
    BS = [
        BiArrayFunctional(primary=((0, 5, frozenset({1, 2})),),
                          secondary=((0, 3, 8, frozenset({9, 10})),)),
        BiArrayFunctional(primary=((0, 12, frozenset({20, 21})),),
                          secondary=((0, 0, 25, frozenset({30, 31})),)),
    ]

    def test_undefined_functionals_all_zero(self):
        sc, trace = build_stable_2dim_coloring([BiArrayFunctional()], 30)
        assert not sc.base.matrix.any()
        assert sc.limit == (0,) * 30

    def test_total_pairs_fully_satisfied(self):
        sc, trace = build_stable_2dim_coloring(self.BS, 300)
        sat = trace.final["satisfied"]
        assert sat["R[0,0]"] == "full" and sat["R[1,0]"] == "full"
        assert verify_trace(trace, sc).passed

    def test_final_limits_split_pairs(self):
        sc, trace = build_stable_2dim_coloring(self.BS, 300)
        # requirement (e=0, i=0): E committed to class 0, F to class 1,
        # with constant cross color 1 in the built coloring
        assert all(sc.limit[x] == 0 for x in (1, 2, 20, 21))
        assert all(sc.limit[x] == 1 for x in (9, 10, 30, 31))
        assert all(sc.base(x, y) == 1 for x in (1, 2) for y in (9, 10))

    def test_columns_stable_after_last_commitment(self):
        sc, trace = build_stable_2dim_coloring(self.BS, 300)
        last_commit = {}
        for ev in trace.events:
            if ev.kind == "commit":
                last_commit[int(ev.get("x"))] = ev.stage
        for x in range(300):
            start = last_commit.get(x, 0)
            cols = {sc.base(x, s) for s in range(max(start + 1, x + 1), 300)}
            assert len(cols) <= 1
            if cols:
                assert cols == {sc.limit[x]}

    def test_validation_of_biarray_entries(self):
        with pytest.raises(PatternError):
            BiArrayFunctional(primary=((3, 0, frozenset({2})),))
        with pytest.raises(PatternError):
            BiArrayFunctional(secondary=((0, 5, 0, frozenset({4})),))


class TestVerifyTrace:
    def test_empty_trace_passes(self):
        trace = ConstructionTrace("dnc", 5, ())
        assert verify_trace(trace, constant_coloring(5)).passed

    def test_unknown_check_rejected(self):
        trace = ConstructionTrace("dnc", 5, ())
        with pytest.raises(PatternError):
            verify_trace(trace, constant_coloring(5), checks=("vibes",))

    def test_overlapping_restraints_detected(self):
        events = (
            TraceEvent(3, "restrain", "R[0,0]", (("elements", "1,2"),)),
            TraceEvent(3, "restrain", "R[1,0]", (("elements", "2,5"),)),
        )
        trace = ConstructionTrace("dnc", 10, events)
        rep = verify_trace(trace, constant_coloring(10), checks=("restraints",))
        assert not rep.passed

    def test_contradicting_color_event_detected(self):
        events = (TraceEvent(4, "color", "R[0,0]",
                             (("x", "1"), ("y", "4"), ("c", "1"))),)
        trace = ConstructionTrace("dnc", 10, events)
        rep = verify_trace(trace, constant_coloring(10), checks=("commitments",))
        assert not rep.passed

    def test_broken_commitment_detected(self):
        events = (TraceEvent(2, "commit", "R[0]",
                             (("x", "0"), ("limit", "1"), ("start", "2"))),)
        trace = ConstructionTrace("measure", 10, events,
                                  final={"states": {}}, aux={"functionals": [],
                                                             "patterns": []})
        rep = verify_trace(trace, constant_coloring(10), checks=("commitments",))
        assert not rep.passed
