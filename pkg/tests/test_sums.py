"""Tests for shifted sums, dual gaps, and the closed-form families they equal."""

import math
from itertools import product

import pytest

from ohno.indices import (
    EMPTY,
    Index,
    IndexCombination,
    combination_to_text,
    dual_linear,
    enumerate_shifts,
    hast,
    repeat,
    sha,
)
from ohno.sums import (
    TruncatedSeries,
    dual_gap,
    dual_gap_operands,
    dual_gap_series,
    dual_gap_skew,
    dual_gap_skew_symbolic,
    dualized_hast_expansion,
    dualized_shuffle_expansion,
    composed_single,
    composed_single_total,
    composed_split,
    composed_split_total,
    grouped_single,
    grouped_single_total,
    grouped_split,
    grouped_split_total,
    hast_merge_sides,
    hast_shifted_sum,
    hoffman_defect,
    hoffman_delta,
    hoffman_sides,
    ohno_series,
    ohno_shifts,
    ohno_sum,
    ohno_sum_symbolic,
    raised_entry_expansion,
    split_diag_parts,
    split_entry_expansion,
    term_a,
    term_a_layers,
    term_a_value,
    term_b,
    term_bc_closed,
    term_c,
)
from ohno.zeta import EvalConfig, eval_combination, eval_zeta

T = combination_to_text


# ---------------------------------------------------------------------------
# shifted sums
# ---------------------------------------------------------------------------


def test_ohno_shifts_frozen():
    assert T(ohno_shifts(Index((3,)), 2)) == "(5)"
    assert T(ohno_shifts(Index((2, 3)), 1)) == "(2,4) + (3,3)"
    assert T(ohno_shifts(Index((1, 2)), 2)) == "(1,4) + (2,3) + (3,2)"
    assert T(ohno_shifts(Index((2,)), 0)) == "(2)"


def test_ohno_shifts_counts():
    for entries, m in [((2,), 4), ((1, 2), 3), ((2, 1, 3), 2)]:
        k = Index(entries)
        fam = ohno_shifts(k, m)
        assert fam.term_count() == math.comb(m + k.depth - 1, k.depth - 1)
        for idx, _ in fam.items():
            assert idx.weight == k.weight + m
            assert idx.depth == k.depth
            assert idx.admissible


def test_ohno_shifts_rejects():
    with pytest.raises(ValueError):
        ohno_shifts(Index((1,)), 1)
    with pytest.raises(ValueError):
        ohno_shifts(Index((2,)), -1)


def test_ohno_sum_symbolic_linear():
    c = IndexCombination([(Index((2,)), 2), (Index((3,)), -1)])
    got = ohno_sum_symbolic(c, 1)
    assert got == IndexCombination([(Index((3,)), 2), (Index((4,)), -1)])


def test_ohno_sum_numeric():
    cfg = EvalConfig(tol=1e-12)
    assert ohno_sum(Index((2,)), 1, cfg) == pytest.approx(eval_zeta(Index((3,)), cfg), abs=1e-12)
    assert ohno_sum(Index((2,)), 2, cfg) == pytest.approx(eval_zeta(Index((4,)), cfg), abs=1e-12)


def test_shifted_sum_invariant_under_duality():
    """The numeric shifted sum agrees between an index and its dual."""
    cfg = EvalConfig(tol=1e-12)
    for entries, m in [((3,), 1), ((2, 2), 2), ((1, 3), 1), ((3, 2), 2)]:
        k = Index(entries)
        assert ohno_sum(k, m, cfg) == pytest.approx(ohno_sum(k.dual(), m, cfg), abs=1e-10)


def test_ohno_series():
    cfg = EvalConfig(tol=1e-12)
    series = ohno_series(Index((2,)), 2, cfg)
    assert isinstance(series, TruncatedSeries)
    assert len(series) == 3
    assert series.tol == 1e-12
    assert series[0] == pytest.approx(eval_zeta(Index((2,)), cfg), abs=1e-12)
    assert series[1] == pytest.approx(eval_zeta(Index((3,)), cfg), abs=1e-12)
    assert series[2] == pytest.approx(eval_zeta(Index((4,)), cfg), abs=1e-12)
    with pytest.raises(IndexError):
        series[3]


# ---------------------------------------------------------------------------
# dual gaps
# ---------------------------------------------------------------------------


def test_dual_gap_operands_frozen():
    plain, dualised = dual_gap_operands(2, Index((3,)), 1)
    assert T(plain) == "2*(2,2,3) + 2*(2,3,2) + 2*(3,2,2)"
    assert T(dualised) == "3*(1,2,2,2) + 3*(2,1,2,2) + 2*(2,2,1,2)"


def test_dual_gap_operands_structure():
    for s, entries, l in [(2, (3,), 0), (3, (4,), 1), (4, (2, 3), 2)]:
        k = Index(entries)
        plain, dualised = dual_gap_operands(s, k, l)
        target_weight = s + k.weight + 2 * l
        for comb in (plain, dualised):
            assert not comb.is_zero
            for idx, _ in comb.items():
                assert idx.weight == target_weight
                assert idx.admissible


def test_dual_gap_operands_rejects():
    with pytest.raises(ValueError):
        dual_gap_operands(1, Index((3,)), 0)
    with pytest.raises(ValueError):
        dual_gap_operands(2, Index((1,)), 0)
    with pytest.raises(ValueError):
        dual_gap_operands(2, Index((3,)), -1)


def test_dual_gap_is_difference_of_shifted_sums():
    cfg = EvalConfig(tol=1e-12)
    s, k, l, m = 2, Index((3,)), 1, 1
    plain, dualised = dual_gap_operands(s, k, l)
    expected = ohno_sum(plain, m, cfg) - ohno_sum(dualised, m, cfg)
    assert dual_gap(s, k, l, m, cfg) == expected


def test_dual_gap_series():
    cfg = EvalConfig(tol=1e-12)
    series = dual_gap_series(2, Index((3,)), 2, cfg)
    assert len(series) == 3
    for m in range(3):
        assert series[m] == dual_gap(2, Index((3,)), 0, m, cfg)


def test_dual_gap_skew_antisymmetric_bitwise():
    cfg = EvalConfig(tol=1e-12)
    for s, t, l, m in [(2, 3, 0, 0), (2, 3, 1, 1), (3, 4, 1, 0), (2, 4, 2, 2)]:
        assert dual_gap_skew(s, t, l, m, cfg) == -dual_gap_skew(t, s, l, m, cfg)


def test_dual_gap_skew_diagonal_is_exact_zero():
    assert dual_gap_skew(3, 3, 1, 1) == 0.0


def test_dual_gap_skew_rejects():
    with pytest.raises(ValueError):
        dual_gap_skew(1, 3, 0, 0)
    with pytest.raises(ValueError):
        dual_gap_skew(3, 1, 0, 0)


def test_dual_gap_skew_symbolic_frozen():
    assert dual_gap_skew_symbolic(2, 2, 0, 0).is_zero
    assert T(dual_gap_skew_symbolic(2, 3, 0, 0)) == (
        "(2,4) - 2*(3,3) + (4,2) + (1,2,3) + (1,3,2) + (3,1,2)"
        " - 2*(1,1,2,2) - (1,2,1,2) - (2,1,1,2)"
    )


def test_dual_gap_skew_symbolic_evaluates_to_skew():
    cfg = EvalConfig(tol=1e-12)
    for s, t, l, m in [(2, 3, 0, 0), (3, 2, 1, 1), (2, 4, 1, 0)]:
        symbolic = eval_combination(dual_gap_skew_symbolic(s, t, l, m), cfg)
        assert symbolic == pytest.approx(dual_gap_skew(s, t, l, m, cfg), abs=1e-10)


# ---------------------------------------------------------------------------
# the shifted position-sum family
# ---------------------------------------------------------------------------


def test_hast_shifted_sum_frozen():
    assert T(hast_shifted_sum(Index((3,)), 2, 1)) == "2*(6)"
    assert T(hast_shifted_sum(Index((2, 2)), 3, 0)) == "(2,5) + (5,2)"


def test_hast_shifted_sum_brute_force():
    """Independent re-enumeration: raise entry i by k0 + m1 and distribute the
    remaining m - m1 over all entries, for every split and position."""
    for base, k0, m in [(Index((3,)), 2, 2), (Index((2, 2)), 2, 1), (Index((1, 2)), 3, 2)]:
        expected = IndexCombination.zero()
        for m1 in range(m + 1):
            for shift in enumerate_shifts(base.depth, m - m1):
                shifted = base.oplus(shift)
                for i in range(shifted.depth):
                    entries = list(shifted.entries)
                    entries[i] += k0 + m1
                    expected = expected + IndexCombination.from_index(Index(tuple(entries)))
        assert hast_shifted_sum(base, k0, m) == expected


def test_hast_shifted_sum_rejects():
    with pytest.raises(ValueError):
        hast_shifted_sum(Index((3,)), 0, 1)
    with pytest.raises(ValueError):
        hast_shifted_sum(Index((3,)), 2, -1)


# ---------------------------------------------------------------------------
# the three-part decomposition
# ---------------------------------------------------------------------------


def test_term_frozen_values():
    assert T(term_a(2, 1, 0)) == "-(2,5) - (3,4) - (4,3) - (5,2)"
    assert T(term_b(2, 1, 0)) == (
        "(1,2,4) + (1,4,2) + (2,1,4) + (2,3,2) + (3,2,2) + (4,1,2)"
    )
    assert T(term_c(2, 1, 0)) == "(2,2,3) + (2,3,2)"
    assert T(term_c(3, 0, 0)) == "(2,4) + (3,3)"
    assert T(term_bc_closed(2, 1, 0)) == (
        "(1,2,4) + (1,4,2) + (2,1,4) + (2,2,3) + 2*(2,3,2) + (3,2,2) + (4,1,2)"
    )


def test_term_a_layers():
    layers = term_a_layers(2, 1, 1)
    assert [T(x) for x in layers] == [
        "(2,5) + (3,4) + (4,3) + (5,2)",
        "(2,6) + (3,5) + (5,3) + (6,2)",
    ]
    assert term_a(2, 1, 1) == -(
        ohno_sum_symbolic(layers[0], 1) + ohno_sum_symbolic(layers[1], 0)
    )


def test_term_bc_closed_is_b_plus_c():
    for s, l, m in product((2, 3, 4), (0, 1, 2), (0, 1, 2)):
        assert term_bc_closed(s, l, m) == term_b(s, l, m) + term_c(s, l, m)


def test_term_a_equals_negated_shifted_family():
    for s, l, m in product((2, 3, 4), (0, 1, 2), (0, 1, 2)):
        base = sha(Index((3,)), repeat(2, l))
        assert -term_a(s, l, m) == hast_shifted_sum(base, s, m)


def test_term_a_value_matches_symbolic():
    cfg = EvalConfig(tol=1e-12)
    assert term_a_value(2, 1, 1, cfg) == pytest.approx(
        eval_combination(term_a(2, 1, 1), cfg), abs=1e-10
    )


def test_term_validation():
    with pytest.raises(ValueError):
        term_a(1, 0, 0)
    with pytest.raises(ValueError):
        term_b(2, -1, 0)
    with pytest.raises(ValueError):
        term_c(2, 0, -1)


# ---------------------------------------------------------------------------
# the grouped/composed family pairs and their closed forms
# ---------------------------------------------------------------------------


def test_family_frozen_values():
    assert T(grouped_single(2, 1, 1, 1, 1)) == "(5,3) + 2*(6,2)"
    assert T(grouped_single(2, 1, 0, 1, 1)) == "(5,2)"
    assert T(grouped_single(2, 1, 0, 2, 1)) == "(3,4)"
    assert T(grouped_single(2, 1, 0, 1, 2)) == "(4,3)"
    assert T(grouped_single(2, 1, 0, 2, 2)) == "(2,5)"
    assert T(composed_single(2, 1, 0, 1, 1)) == "(5,2)"
    assert T(grouped_split(2, 1, 0, 1, 2)) == "(4,1,2)"
    assert T(composed_split(2, 1, 0, 1, 2)) == "(4,1,2)"


def test_single_entry_pairs_agree():
    for s, l, m in product((2, 3), (1, 2), (0, 1, 2)):
        for p, q in product(range(1, l + 2), repeat=2):
            assert grouped_single(s, l, m, p, q) == composed_single(s, l, m, p, q)


def test_split_entry_pairs_agree():
    for s, l, m in product((2, 3), (1, 2), (0, 1, 2)):
        for p, q in product(range(1, l + 2), repeat=2):
            assert grouped_split(s, l, m, p, q) == composed_split(s, l, m, p, q)


def test_family_totals_match_closed_forms():
    for s, l, m in product((2, 3), (1, 2), (0, 1)):
        assert grouped_single_total(s, l, m) == -term_a(s, l, m)
        assert composed_single_total(s, l, m) == raised_entry_expansion(s, l, m)
        assert grouped_split_total(s, l, m) == term_bc_closed(s, l, m)
        assert composed_split_total(s, l, m) == split_entry_expansion(s, l, m)


def test_expansion_frozen_values():
    assert T(raised_entry_expansion(2, 1, 0)) == "(2,5) + (3,4) + (4,3) + (5,2)"
    assert T(split_entry_expansion(2, 1, 0)) == (
        "(1,2,4) + (1,4,2) + (2,1,4) + (2,2,3) + 2*(2,3,2) + (3,2,2) + (4,1,2)"
    )


def test_pq_validation():
    with pytest.raises(ValueError):
        grouped_single(2, 1, 0, 0, 1)  # p below range
    with pytest.raises(ValueError):
        grouped_single(2, 1, 0, 1, 3)  # q above l + 1
    with pytest.raises(ValueError):
        grouped_split(2, 0, 0, 1, 1)  # split family needs l >= 1


def test_split_diag_parts_frozen():
    parts = split_diag_parts(2, 1, 0, 1)
    assert [(T(lhs), T(rhs)) for lhs, rhs in parts] == [
        ("(1,4,2)", "(1,4,2)"),
        ("(3,2,2)", "(3,2,2)"),
        ("(2,3,2)", "(2,3,2)"),
    ]


def test_split_diag_parts_agree_on_grid():
    for s, l, m in product((2, 3), (1, 2), (0, 1, 2)):
        for p in range(1, l + 2):
            for lhs, rhs in split_diag_parts(s, l, m, p):
                assert lhs == rhs


# ---------------------------------------------------------------------------
# expansion pairs after dualising
# ---------------------------------------------------------------------------


def test_dualized_expansions_frozen_degenerate():
    lhs, rhs = dualized_shuffle_expansion(2, 2, 1)
    assert T(lhs) == T(rhs) == "6*(2,2,2)"


def test_dualized_expansions_agree():
    for s, t, l in product((2, 3, 4), (2, 3, 4), (1, 2)):
        lhs, rhs = dualized_shuffle_expansion(s, t, l)
        assert lhs == rhs
        lhs, rhs = dualized_hast_expansion(s, t, l)
        assert lhs == rhs


def test_dualized_expansions_reject():
    with pytest.raises(ValueError):
        dualized_shuffle_expansion(1, 2, 1)
    with pytest.raises(ValueError):
        dualized_hast_expansion(2, 2, 0)


# ---------------------------------------------------------------------------
# the position-sum merge identity
# ---------------------------------------------------------------------------


def test_hast_merge_frozen():
    lhs, rhs = hast_merge_sides(2, 1, 0)
    assert T(lhs) == T(rhs) == "(3)"
    lhs, rhs = hast_merge_sides(3, 2, 1)
    assert T(lhs) == T(rhs) == "(2,5) + (3,4) + (4,3) + (5,2)"


def test_hast_merge_agrees():
    for s, t, l in product((2, 3, 4, 5), (1, 2, 3), (0, 1, 2)):
        lhs, rhs = hast_merge_sides(s, t, l)
        assert lhs == rhs


def test_hast_merge_rejects():
    with pytest.raises(ValueError):
        hast_merge_sides(1, 1, 0)
    with pytest.raises(ValueError):
        hast_merge_sides(2, 0, 0)


# ---------------------------------------------------------------------------
# the raise-one-entry versus insert-refined-splits relation
# ---------------------------------------------------------------------------


def test_hoffman_sides_frozen():
    lhs, rhs = hoffman_sides(Index((2,)))
    assert T(lhs) == "(3)" and T(rhs) == "(1,2)"
    lhs, rhs = hoffman_sides(Index((1, 2)))
    assert T(lhs) == "(1,3) + (2,2)" and T(rhs) == "(1,1,2)"
    lhs, rhs = hoffman_sides(Index((2, 3)))
    assert T(lhs) == "(2,4) + (3,3)"
    assert T(rhs) == "(1,2,3) + (2,1,3) + (2,2,2)"


def test_hoffman_delta_is_difference():
    k = Index((2, 3))
    lhs, rhs = hoffman_sides(k)
    assert hoffman_delta(k) == lhs - rhs


def test_hoffman_defect_small():
    cfg = EvalConfig(tol=1e-12)
    for entries in [(2,), (3,), (1, 2), (2, 2), (1, 3), (2, 3), (1, 1, 2)]:
        assert abs(hoffman_defect(Index(entries), cfg)) < 1e-10


def test_hoffman_rejects_non_admissible():
    with pytest.raises(ValueError):
        hoffman_sides(Index((2, 1)))
    with pytest.raises(ValueError):
        hoffman_delta(EMPTY)
