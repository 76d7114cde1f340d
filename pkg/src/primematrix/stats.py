"""Prime counts and gap statistics over twin-row fragments.

A fragment is one twin row pair scanned over columns 1..M. Counting is
exact integers, averages are exact rationals, and decimal output gets
12 significant digits only at serialization time. Scans across pairs
are independent, so they can fan out over worker processes; results are
merged in canonical pair order to keep output deterministic.
"""

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from primematrix import kernels, matrix, numtheory
from primematrix import sieve as sieve_oracle

_U63_LIMIT = 2**63

PAIR_RECORD_FIELDS = ("k", "pair_lo", "pair_hi", "M", "pi", "d_cp", "twin_hits", "first_twin_col")
LEVEL_RECORD_FIELDS = (
    "k",
    "M",
    "pairs",
    "pi_avg",
    "d_avg",
    "d_min",
    "d_max",
    "empirical_ratio",
    "predicted_ratio",
    "mertens",
)


@dataclass(frozen=True)
class FragmentScan:
    """Per-cell primality of one twin row pair over columns 1..M.

    delta_lead and delta_trail are the prime-free column spans at the
    fragment's edges (both equal M when no cell is prime).
    """

    basis: numtheory.PrimeBasis
    pair: matrix.TwinRowPair
    columns: int
    primes_low: tuple
    primes_high: tuple
    twin_hits: tuple
    delta_lead: int
    delta_trail: int

    @property
    def pi_count(self):
        return len(self.primes_low) + len(self.primes_high)


@dataclass(frozen=True)
class EquidistributionReport:
    k: int
    columns: int
    pairs: tuple
    pi_values: tuple
    pi_mean: Fraction
    max_rel_deviation: Fraction


@dataclass(frozen=True)
class LevelStats:
    k: int
    columns: int
    pair_count: int
    pi_total: int
    pi_avg: Fraction
    d_avg: Fraction
    d_min: Fraction
    d_max: Fraction
    predicted_ratio: Fraction
    mertens: Fraction


@dataclass(frozen=True)
class RatioCheck:
    k: int
    empirical: Fraction
    predicted: Fraction


@dataclass(frozen=True)
class GapReport:
    levels: tuple
    ratios: tuple


def _check_scan_domain(basis, pair, M):
    if M < 1:
        raise ValueError("column count must be >= 1")
    if basis.k < 2:
        raise ValueError("fragments need a basis of order >= 2")
    P = basis.primorial
    if math.gcd(pair.lower_residue, P) != 1 or math.gcd(pair.upper_residue, P) != 1:
        raise ValueError(
            f"({pair.lower_residue}, {pair.upper_residue}) is not a twin row pair mod {P}"
        )
    last = pair.upper_residue + P * (M - 1)
    if last > _U63_LIMIT:
        raise OverflowError("cell values exceed 2**63")


def scan_pair(basis, pair, M):
    """Classify every cell of both rows over columns 1..M."""
    _check_scan_domain(basis, pair, M)
    P = basis.primorial
    low = tuple(kernels.prime_columns(pair.lower_residue, P, M))
    high = tuple(kernels.prime_columns(pair.upper_residue, P, M))
    hits = tuple(sorted(set(low) & set(high)))
    occupied = set(low) | set(high)
    if occupied:
        delta_lead = min(occupied) - 1
        delta_trail = M - max(occupied)
    else:
        delta_lead = M
        delta_trail = M
    return FragmentScan(
        basis=basis,
        pair=pair,
        columns=M,
        primes_low=low,
        primes_high=high,
        twin_hits=hits,
        delta_lead=delta_lead,
        delta_trail=delta_trail,
    )


def cell_gaps(scan):
    """Column distances between consecutive prime cells of the fragment.

    Primes from both rows merge into one sequence ordered by column,
    lower row first within a column; twins therefore contribute a 0 gap
    and same-row neighbors in adjacent columns a 1.
    """
    events = sorted(
        [(c, 0) for c in scan.primes_low] + [(c, 1) for c in scan.primes_high]
    )
    if len(events) < 2:
        return []
    return [events[n + 1][0] - events[n][0] for n in range(len(events) - 1)]


def d_cp(scan):
    """Mean column gap M / pi as an exact rational.

    The boundary-corrected sum of gaps telescopes to exactly M, so the
    mean needs no per-gap accounting.
    """
    if scan.pi_count == 0:
        raise ValueError("gap statistic undefined: fragment contains no primes")
    return Fraction(scan.columns, scan.pi_count)


def pair_has_twin(basis, pair, M):
    """Smallest column j <= M where both cells are prime, or None."""
    _check_scan_domain(basis, pair, M)
    col = kernels.first_twin_column(pair.lower_residue, basis.primorial, M)
    return col if col else None


def _pair_pi(args):
    r, step, M = args
    return kernels.count_prime_columns(r, step, M) + kernels.count_prime_columns(r + 2, step, M)


def _map_jobs(fn, args_list, jobs):
    if jobs <= 1 or len(args_list) <= 1:
        return [fn(a) for a in args_list]
    chunk = max(1, len(args_list) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, args_list, chunksize=chunk))


def equidistribution_report(basis, M, sample=None, jobs=1):
    """Per-pair prime counts and their spread around the mean.

    Requires M >= 100*k so the counts are large enough to compare, and
    k >= 3 so there is more than one pair to compare.
    """
    if basis.k < 3:
        raise ValueError("equidistribution needs a basis of order >= 3")
    if M < 100 * basis.k:
        raise ValueError(f"need M >= {100 * basis.k} columns for stable counts")
    if sample is None:
        sample = list(matrix.twin_pairs(matrix.MatrixSpec(basis=basis)))
    else:
        sample = list(sample)
    if not sample:
        raise ValueError("sample must contain at least one pair")
    _check_scan_domain(basis, sample[-1], M)
    P = basis.primorial
    pis = _map_jobs(_pair_pi, [(p.lower_residue, P, M) for p in sample], jobs)
    mean = Fraction(sum(pis), len(pis))
    if mean == 0:
        raise ValueError("no primes found in any sampled pair")
    max_dev = max(abs(Fraction(v) - mean) for v in pis) / mean
    return EquidistributionReport(
        k=basis.k,
        columns=M,
        pairs=tuple(sample),
        pi_values=tuple(pis),
        pi_mean=mean,
        max_rel_deviation=max_dev,
    )


def mertens_prediction(k):
    """Prod_{i=1..k} (p_i - 1)/p_i, exact."""
    if not 1 <= k <= numtheory.MAX_BASIS_ORDER:
        raise ValueError(f"k must be in 1..{numtheory.MAX_BASIS_ORDER}")
    out = Fraction(1)
    for p in numtheory.PrimeBasis.of_order(k).primes:
        out *= Fraction(p - 1, p)
    return out


def gap_recursion_check(N, k_range, jobs=1):
    """Empirical mean gaps per level against the (p_k - 1)/p_k shrink law.

    Every level shares the value bound N, so level k scans M_k = N // P_k
    columns. Ratios are reported for consecutive ks in the range.
    """
    k_list = sorted(set(k_range))
    if not k_list:
        raise ValueError("k_range must be nonempty")
    levels = []
    for k in k_list:
        if k < 2:
            raise ValueError("gap statistics need k >= 2")
        basis = numtheory.PrimeBasis.of_order(k)
        P = basis.primorial
        M = N // P
        if M < 100:
            raise ValueError(f"N={N} gives only {M} columns at k={k}; need >= 100")
        spec = matrix.MatrixSpec(basis=basis)
        pairs = list(matrix.twin_pairs(spec))
        _check_scan_domain(basis, pairs[-1], M)
        pis = _map_jobs(_pair_pi, [(p.lower_residue, P, M) for p in pairs], jobs)
        if min(pis) == 0:
            raise ValueError(f"a pair of A_{k} has no primes in {M} columns")
        pi_total = sum(pis)
        n = len(pairs)
        d_values = [Fraction(M, v) for v in pis]
        levels.append(
            LevelStats(
                k=k,
                columns=M,
                pair_count=n,
                pi_total=pi_total,
                pi_avg=Fraction(pi_total, n),
                d_avg=Fraction(M * n, pi_total),
                d_min=min(d_values),
                d_max=max(d_values),
                predicted_ratio=Fraction(basis.primes[-1] - 1, basis.primes[-1]),
                mertens=mertens_prediction(k),
            )
        )
    ratios = []
    for prev, cur in zip(levels, levels[1:]):
        if cur.k == prev.k + 1:
            ratios.append(
                RatioCheck(k=cur.k, empirical=cur.d_avg / prev.d_avg, predicted=cur.predicted_ratio)
            )
    return GapReport(levels=tuple(levels), ratios=tuple(ratios))


def twin_census(N, engine="wheel", include_pairs=False):
    """Count of prime pairs (p, p+2) with p + 2 <= N.

    engine="wheel" walks the residue 5 (mod 6) progression with the
    Miller-Rabin oracle; engine="sieve" uses the independent classical
    sieve. The two must agree, and tests hold them to that.
    """
    if N < 5:
        raise ValueError("census needs N >= 5")
    if engine == "sieve":
        if include_pairs:
            pairs = sieve_oracle.twin_pairs_up_to(N)
            return len(pairs), pairs
        return sieve_oracle.count_twin_pairs_up_to(N)
    if engine != "wheel":
        raise ValueError(f"unknown census engine {engine!r}")
    # (3,5) is the only twin pair whose lower member is not 5 (mod 6)
    count = 1
    cols = (N - 7) // 6 + 1 if N >= 7 else 0
    if include_pairs:
        pairs = [(3, 5)]
        if cols:
            for j in kernels.twin_columns(5, 6, cols):
                p = 5 + 6 * (j - 1)
                pairs.append((p, p + 2))
        return len(pairs), pairs
    if cols:
        count += kernels.count_twin_columns(5, 6, cols)
    return count


def census_via_rows(k, N):
    """Twins <= N collected from the twin rows of A_k, plus the two
    sporadic pairs (3,5) and (5,7) that sit in colored rows for k >= 3.

    Exhaustive because every twin pair above (5,7) has both members
    coprime to the basis, hence lives in a twin row pair.
    """
    if k < 3:
        raise ValueError("row census needs k >= 3 so the sporadic list is fixed")
    if N < 5:
        raise ValueError("census needs N >= 5")
    spec = matrix.MatrixSpec.of_order(k)
    P = spec.basis.primorial
    found = [(3, 5)]
    if N >= 7:
        found.append((5, 7))
    for pair in matrix.twin_pairs(spec):
        r = pair.lower_residue
        if r + 2 > N:
            continue
        cols = (N - 2 - r) // P + 1
        for j in kernels.twin_columns(r, P, cols):
            p = r + P * (j - 1)
            found.append((p, p + 2))
    return sorted(found)


def _scan_record(args):
    basis, pair, M = args
    scan = scan_pair(basis, pair, M)
    if scan.pi_count:
        d = float(f"{float(Fraction(M, scan.pi_count)):.12g}")
    else:
        d = None
    return {
        "k": basis.k,
        "pair_lo": pair.lower_residue,
        "pair_hi": pair.upper_residue,
        "M": M,
        "pi": scan.pi_count,
        "d_cp": d,
        "twin_hits": len(scan.twin_hits),
        "first_twin_col": scan.twin_hits[0] if scan.twin_hits else None,
    }


def pair_records(basis, pairs, M, jobs=1):
    """One record per pair, in the given order, with the fixed key set."""
    return _map_jobs(_scan_record, [(basis, p, M) for p in pairs], jobs)


def _format_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, Fraction):
        return f"{float(v):.12g}"
    return str(v)


def records_to_csv(records, fields=PAIR_RECORD_FIELDS):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for rec in records:
        writer.writerow([_format_cell(rec[f]) for f in fields])
    return buf.getvalue()


def records_to_json(records, fields=PAIR_RECORD_FIELDS):
    rows = []
    for rec in records:
        row = {}
        for f in fields:
            v = rec[f]
            if isinstance(v, Fraction):
                v = float(f"{float(v):.12g}")
            row[f] = v
        rows.append(row)
    return json.dumps(rows, indent=2) + "\n"


def level_records(report):
    """Flatten a GapReport into per-level dicts with the fixed key set."""
    by_k = {r.k: r for r in report.ratios}
    out = []
    for lv in report.levels:
        ratio = by_k.get(lv.k)
        out.append(
            {
                "k": lv.k,
                "M": lv.columns,
                "pairs": lv.pair_count,
                "pi_avg": lv.pi_avg,
                "d_avg": lv.d_avg,
                "d_min": lv.d_min,
                "d_max": lv.d_max,
                "empirical_ratio": ratio.empirical if ratio else None,
                "predicted_ratio": lv.predicted_ratio,
                "mertens": lv.mertens,
            }
        )
    return out
