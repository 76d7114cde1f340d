import csv
import io
import json
from fractions import Fraction

import pytest

from primematrix import matrix, numtheory, sieve, stats


B2 = numtheory.PrimeBasis.of_order(2)
B3 = numtheory.PrimeBasis.of_order(3)
B4 = numtheory.PrimeBasis.of_order(4)
PAIR_11 = matrix.TwinRowPair.from_lower_residue(11)


def test_scan_pair_11_13_over_7_columns():
    # values: 11,41,71,101,131,161,191 and 13,43,73,103,133,163,193
    # composites among them are 161 = 7*23 and 133 = 7*19
    scan = stats.scan_pair(B3, PAIR_11, 7)
    assert scan.primes_low == (1, 2, 3, 4, 5, 7)
    assert scan.primes_high == (1, 2, 3, 4, 6, 7)
    assert scan.twin_hits == (1, 2, 3, 4, 7)
    assert scan.pi_count == 12
    assert scan.delta_lead == 0
    assert scan.delta_trail == 0


def test_scan_pair_matches_sieve_oracle():
    flags = sieve.sieve_flags(11 + 30 * 60)
    scan = stats.scan_pair(B3, PAIR_11, 50)
    want_low = tuple(j for j in range(1, 51) if flags[11 + 30 * (j - 1)])
    want_high = tuple(j for j in range(1, 51) if flags[13 + 30 * (j - 1)])
    assert scan.primes_low == want_low
    assert scan.primes_high == want_high
    assert scan.twin_hits == tuple(sorted(set(want_low) & set(want_high)))


def test_scan_pair_single_column_twin():
    scan = stats.scan_pair(B2, matrix.TwinRowPair.from_lower_residue(5), 1)
    assert scan.twin_hits == (1,)
    assert scan.pi_count == 2


def test_scan_pair_all_composite_column():
    # (209, 211): 209 = 11*19, so no twin in column 1
    scan = stats.scan_pair(B4, matrix.TwinRowPair.from_lower_residue(209), 1)
    assert scan.primes_low == ()
    assert scan.primes_high == (1,)
    assert scan.twin_hits == ()
    assert scan.delta_lead == 0
    assert scan.delta_trail == 0


def test_scan_pair_boundary_spans():
    # (119, 121) is not coprime to 30; use (29,31) shifted far out instead:
    # columns 2..4 of (29,31) are (59,61),(89,91),(119,121)
    scan = stats.scan_pair(B3, matrix.TwinRowPair.from_lower_residue(29), 5)
    # values low: 29,59,89,119(=7*17),149; high: 31,61,91(=7*13),121(=11^2),151
    assert scan.primes_low == (1, 2, 3, 5)
    assert scan.primes_high == (1, 2, 5)
    assert scan.delta_lead == 0
    assert scan.delta_trail == 0
    twins_only = stats.scan_pair(B3, matrix.TwinRowPair.from_lower_residue(29), 4)
    assert twins_only.delta_trail == 1


def test_scan_pair_domain_errors():
    with pytest.raises(ValueError):
        stats.scan_pair(B3, PAIR_11, 0)
    with pytest.raises(ValueError):
        stats.scan_pair(B3, matrix.TwinRowPair.from_lower_residue(9), 5)
    with pytest.raises(OverflowError):
        stats.scan_pair(B3, PAIR_11, 2**60)


def test_cell_gaps_examples():
    scan = stats.scan_pair(B3, PAIR_11, 3)
    assert stats.cell_gaps(scan) == [0, 1, 0, 1, 0]
    single = stats.scan_pair(B4, matrix.TwinRowPair.from_lower_residue(209), 1)
    assert stats.cell_gaps(single) == []


def test_cell_gaps_orders_same_column_lower_row_first():
    scan = stats.scan_pair(B2, matrix.TwinRowPair.from_lower_residue(5), 2)
    # primes 5,7 (column 1) and 11,13 (column 2)
    assert scan.primes_low == (1, 2)
    assert scan.primes_high == (1, 2)
    assert stats.cell_gaps(scan) == [0, 1, 0]


def test_d_cp_values_and_identity():
    scan = stats.scan_pair(B3, PAIR_11, 7)
    assert stats.d_cp(scan) == Fraction(7, 12)
    assert stats.d_cp(scan) * scan.pi_count == scan.columns
    for M in (3, 10, 40):
        s = stats.scan_pair(B3, PAIR_11, M)
        assert stats.d_cp(s) * s.pi_count == M


def test_d_cp_half_when_every_cell_prime():
    scan = stats.scan_pair(B2, matrix.TwinRowPair.from_lower_residue(5), 1)
    assert stats.d_cp(scan) == Fraction(1, 2)


def test_d_cp_undefined_without_primes():
    empty = stats.FragmentScan(
        basis=B3,
        pair=PAIR_11,
        columns=7,
        primes_low=(),
        primes_high=(),
        twin_hits=(),
        delta_lead=7,
        delta_trail=7,
    )
    with pytest.raises(ValueError):
        stats.d_cp(empty)


def test_pair_has_twin():
    assert stats.pair_has_twin(B3, matrix.TwinRowPair.from_lower_residue(17), 1) == 1
    assert stats.pair_has_twin(B3, matrix.TwinRowPair.from_lower_residue(29), 1) == 1
    assert stats.pair_has_twin(B4, matrix.TwinRowPair.from_lower_residue(209), 1) is None
    # (209,211) first twin is at column 2: 419, 421
    assert stats.pair_has_twin(B4, matrix.TwinRowPair.from_lower_residue(209), 10) == 2


def test_equidistribution_report_small():
    rep = stats.equidistribution_report(B3, 10**5)
    assert rep.k == 3
    assert len(rep.pi_values) == 3
    assert rep.pi_mean == Fraction(sum(rep.pi_values), 3)
    assert float(rep.max_rel_deviation) < 0.05


def test_equidistribution_single_pair_has_zero_deviation():
    rep = stats.equidistribution_report(B3, 1000, sample=[PAIR_11])
    assert rep.max_rel_deviation == 0


def test_equidistribution_deviation_shrinks_with_columns():
    lo = stats.equidistribution_report(B3, 30000)
    hi = stats.equidistribution_report(B3, 60000)
    assert float(hi.max_rel_deviation) <= float(lo.max_rel_deviation) + 0.02


def test_equidistribution_preconditions():
    with pytest.raises(ValueError):
        stats.equidistribution_report(B2, 10**4)
    with pytest.raises(ValueError):
        stats.equidistribution_report(B3, 299)
    with pytest.raises(ValueError):
        stats.equidistribution_report(B3, 1000, sample=[])


def test_equidistribution_jobs_do_not_change_output():
    seq = stats.equidistribution_report(B3, 2000)
    par = stats.equidistribution_report(B3, 2000, jobs=2)
    assert seq.pi_values == par.pi_values


def test_mertens_prediction_values():
    assert stats.mertens_prediction(1) == Fraction(1, 2)
    assert stats.mertens_prediction(3) == Fraction(4, 15)
    with pytest.raises(ValueError):
        stats.mertens_prediction(0)
    with pytest.raises(ValueError):
        stats.mertens_prediction(16)


def test_mertens_prediction_multiplicative_and_decreasing():
    primes = sieve.first_primes(15)
    for k in range(2, 16):
        step = Fraction(primes[k - 1] - 1, primes[k - 1])
        assert stats.mertens_prediction(k) == stats.mertens_prediction(k - 1) * step
        assert stats.mertens_prediction(k) < stats.mertens_prediction(k - 1)


def test_gap_recursion_check_small_run():
    rep = stats.gap_recursion_check(10**5, [2, 3])
    assert [lv.k for lv in rep.levels] == [2, 3]
    lv2, lv3 = rep.levels
    assert lv2.columns == 10**5 // 6
    assert lv3.columns == 10**5 // 30
    for lv in rep.levels:
        assert lv.d_avg == Fraction(lv.columns * lv.pair_count, lv.pi_total)
        assert lv.d_min <= lv.d_avg <= lv.d_max
        assert lv.predicted_ratio == Fraction(
            numtheory.PrimeBasis.of_order(lv.k).primes[-1] - 1,
            numtheory.PrimeBasis.of_order(lv.k).primes[-1],
        )
    assert len(rep.ratios) == 1
    ratio = rep.ratios[0]
    assert ratio.k == 3
    assert ratio.predicted == Fraction(4, 5)
    assert abs(float(ratio.empirical) - 0.8) < 0.1


def test_gap_recursion_check_requires_enough_columns():
    with pytest.raises(ValueError):
        stats.gap_recursion_check(1000, [3])
    with pytest.raises(ValueError):
        stats.gap_recursion_check(10**5, [])


def test_gap_recursion_jobs_deterministic():
    seq = stats.gap_recursion_check(10**5, [2, 3], jobs=1)
    par = stats.gap_recursion_check(10**5, [2, 3], jobs=3)
    assert seq == par


def test_twin_census_examples():
    count, pairs = stats.twin_census(13, include_pairs=True)
    assert count == 3
    assert pairs == [(3, 5), (5, 7), (11, 13)]
    assert stats.twin_census(10**3) == 35
    assert stats.twin_census(5) == 1
    assert stats.twin_census(6) == 1
    with pytest.raises(ValueError):
        stats.twin_census(4)
    with pytest.raises(ValueError):
        stats.twin_census(100, engine="magic")


def test_twin_census_engines_agree():
    for n in (13, 100, 10**3, 10**4, 10**5):
        assert stats.twin_census(n, engine="wheel") == stats.twin_census(n, engine="sieve")
    _, wheel_pairs = stats.twin_census(5000, engine="wheel", include_pairs=True)
    _, sieve_pairs = stats.twin_census(5000, engine="sieve", include_pairs=True)
    assert wheel_pairs == sieve_pairs


def test_census_via_rows_matches_sieve():
    for k in (3, 4):
        assert stats.census_via_rows(k, 10**4) == sieve.twin_pairs_up_to(10**4)
    with pytest.raises(ValueError):
        stats.census_via_rows(2, 100)


def test_pair_records_schema_and_values():
    pairs = list(matrix.twin_pairs(matrix.MatrixSpec.of_order(3)))
    records = stats.pair_records(B3, pairs, 7)
    assert len(records) == 3
    assert [tuple(r.keys()) for r in records] == [stats.PAIR_RECORD_FIELDS] * 3
    first = records[0]
    assert first["k"] == 3
    assert first["pair_lo"] == 11
    assert first["pair_hi"] == 13
    assert first["M"] == 7
    assert first["pi"] == 12
    assert first["d_cp"] == float(f"{7 / 12:.12g}")
    assert first["twin_hits"] == 5
    assert first["first_twin_col"] == 1


def test_pair_records_jobs_deterministic():
    pairs = list(matrix.twin_pairs(matrix.MatrixSpec.of_order(3)))
    assert stats.pair_records(B3, pairs, 20) == stats.pair_records(B3, pairs, 20, jobs=2)


def test_records_to_csv_layout():
    pairs = list(matrix.twin_pairs(matrix.MatrixSpec.of_order(3)))
    text = stats.records_to_csv(stats.pair_records(B3, pairs, 7))
    lines = text.splitlines()
    assert lines[0] == "k,pair_lo,pair_hi,M,pi,d_cp,twin_hits,first_twin_col"
    assert lines[1] == "3,11,13,7,12,0.583333333333,5,1"
    assert len(lines) == 4
    parsed = list(csv.reader(io.StringIO(text)))
    assert len(parsed) == 4


def test_records_csv_empty_cell_for_missing_twin():
    rec = stats.pair_records(B4, [matrix.TwinRowPair.from_lower_residue(209)], 1)
    text = stats.records_to_csv(rec)
    assert text.splitlines()[1] == "4,209,211,1,1,1,0,"


def test_records_to_json_round_trip():
    pairs = list(matrix.twin_pairs(matrix.MatrixSpec.of_order(3)))
    blob = stats.records_to_json(stats.pair_records(B3, pairs, 7))
    data = json.loads(blob)
    assert [list(d.keys()) for d in data] == [list(stats.PAIR_RECORD_FIELDS)] * 3
    assert data[0]["d_cp"] == pytest.approx(7 / 12, rel=1e-11)
    none_rec = stats.pair_records(B4, [matrix.TwinRowPair.from_lower_residue(209)], 1)
    assert json.loads(stats.records_to_json(none_rec))[0]["first_twin_col"] is None


def test_level_records_fields():
    rep = stats.gap_recursion_check(10**5, [2, 3])
    records = stats.level_records(rep)
    assert [tuple(r.keys()) for r in records] == [stats.LEVEL_RECORD_FIELDS] * 2
    assert records[0]["empirical_ratio"] is None
    assert records[1]["empirical_ratio"] == rep.ratios[0].empirical
    text = stats.records_to_csv(records, stats.LEVEL_RECORD_FIELDS)
    assert text.splitlines()[0] == "k,M,pairs,pi_avg,d_avg,d_min,d_max,empirical_ratio,predicted_ratio,mertens"
    blob = stats.records_to_json(records, stats.LEVEL_RECORD_FIELDS)
    data = json.loads(blob)
    assert data[1]["predicted_ratio"] == pytest.approx(0.8)
