"""Command-line front end.

Exit codes are a stable contract: 0 success, 1 verification failure,
2 usage error. Machine output (csv/json/pgm) is deterministic for a
given argument set regardless of --jobs; parallel scans merge in
canonical pair order.
"""

import os
import sys
from itertools import islice

import click

from primematrix import matrix, numtheory, sieve, stats


def _write_atomic(path, text):
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(text, out):
    if out:
        _write_atomic(out, text)
    else:
        click.echo(text, nl=False)


@click.group()
def main():
    """Primorial wheel matrices: prime generation, twin rows, gap statistics."""


@main.command("primes")
@click.option("--count", type=int, required=True, help="How many primes to print.")
@click.option("--oracle", is_flag=True, help="Use the classical sieve instead of the wheel generator.")
def cmd_primes(count, oracle):
    """Print the first COUNT primes, one per line."""
    if count < 1:
        raise click.UsageError("--count must be >= 1")
    if oracle:
        ps = sieve.first_primes(count)
    else:
        ps = islice(numtheory.prime_generator(), count)
    for p in ps:
        click.echo(p)


@main.command("rows")
@click.option("--k", type=int, required=True, help="Basis order (1..15).")
@click.option("--start", type=int, default=1, show_default=True, help="First row index.")
@click.option("--count", type=int, default=30, show_default=True, help="How many rows to classify.")
def cmd_rows(k, start, count):
    """Classify rows of the order-k matrix."""
    try:
        spec = matrix.MatrixSpec.of_order(k)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if count < 1:
        raise click.UsageError("--count must be >= 1")
    if not 1 <= start <= spec.rows:
        raise click.UsageError(f"--start must be in 1..{spec.rows}")
    last = min(start + count - 1, spec.rows)
    for i in range(start, last + 1):
        rc = matrix.classify_row(spec, i)
        line = f"i={rc.row_index} residue={rc.residue} {rc.status}"
        if rc.leading_prime is not None:
            line += f" leading_prime={rc.leading_prime}"
        click.echo(line)


@main.command("twins")
@click.option("--k", type=int, required=True, help="Basis order (2..9).")
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text", show_default=True)
@click.option("--columns", type=int, default=None, help="Scan each pair over this many columns (csv/json).")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
def cmd_twins(k, fmt, columns, out, jobs):
    """List the twin row pairs of the order-k matrix.

    Text output streams "lower_row upper_row lower_residue upper_residue"
    lines and ends with the total. csv/json additionally scan each pair
    over --columns columns and emit one record per pair.
    """
    try:
        spec = matrix.MatrixSpec.of_order(k)
        pairs = matrix.twin_pairs(spec)
        if fmt == "text":
            n = 0
            for p in pairs:
                click.echo(f"{p.lower_row} {p.upper_row} {p.lower_residue} {p.upper_residue}")
                n += 1
            click.echo(f"count {n}")
            return
        if columns is None or columns < 1:
            raise click.UsageError("csv/json output needs --columns >= 1")
        records = stats.pair_records(spec.basis, list(pairs), columns, jobs=jobs)
        if fmt == "csv":
            _emit(stats.records_to_csv(records), out)
        else:
            _emit(stats.records_to_json(records), out)
    except (ValueError, OverflowError) as exc:
        raise click.UsageError(str(exc))


@main.command("lift")
@click.option("--k", type=int, required=True, help="Target basis order (>= 3).")
@click.option("--pair", "pair_lo", type=int, required=True, help="Lower residue of the parent pair in the order k-1 matrix.")
def cmd_lift(k, pair_lo, ):
    """Show how a parent twin pair splits into children one level up."""
    try:
        basis_k = numtheory.PrimeBasis.of_order(k)
        parent = matrix.TwinRowPair.from_lower_residue(pair_lo)
        children = matrix.lift_pair(parent, basis_k)
        inv = matrix.killed_offsets(parent, basis_k)
        scan = matrix.killed_offsets_by_scan(parent, basis_k)
    except (ValueError, OverflowError) as exc:
        raise click.UsageError(str(exc))
    for ch in children:
        click.echo(f"m={ch.offset} ({ch.pair.lower_residue}, {ch.pair.upper_residue}) {ch.status}")
    survivors = sum(1 for ch in children if ch.status == matrix.SURVIVOR)
    click.echo(f"survivors {survivors} of {len(children)}")
    agree = inv == scan
    click.echo(f"killed offsets: inverse (low={inv[0]}, high={inv[1]}) scan (low={scan[0]}, high={scan[1]}) agree={'yes' if agree else 'no'}")
    if not agree:
        click.get_current_context().exit(1)


def _verify_checks(k_max, oracle):
    """Yield (ok, line) per invariant check."""
    counts = []
    ok = True
    for k in range(2, k_max + 1):
        spec = matrix.MatrixSpec.of_order(k)
        formula = matrix.twin_pair_count(spec)
        walked = matrix.twin_pair_count_enumerated(spec)
        counts.append(formula)
        if formula != walked:
            ok = False
    yield ok, f"formula-vs-enumeration k=2..{k_max}: counts {counts}"

    for k in range(3, k_max + 1):
        basis_k = numtheory.PrimeBasis.of_order(k)
        p_k = basis_k.primes[-1]
        parent_spec = matrix.MatrixSpec.of_order(k - 1)
        survivors_ok = True
        offsets_ok = True
        lifted = set()
        for parent in matrix.twin_pairs(parent_spec):
            children = matrix.lift_pair(parent, basis_k)
            alive = [ch for ch in children if ch.status == matrix.SURVIVOR]
            if len(alive) != p_k - 2:
                survivors_ok = False
            m_inv = matrix.killed_offsets(parent, basis_k)
            m_scan = matrix.killed_offsets_by_scan(parent, basis_k)
            if m_inv != m_scan or m_inv[0] == m_inv[1]:
                offsets_ok = False
            lifted.update(ch.pair.lower_residue for ch in alive)
        yield survivors_ok, f"survival law k={k}: every parent keeps p_k-2 = {p_k - 2} children"
        yield offsets_ok, f"killed offsets k={k}: inverse and scan agree, always distinct"
        native = {p.lower_residue for p in matrix.twin_pairs(matrix.MatrixSpec.of_order(k))}
        yield lifted == native, f"recount k={k}: lifted survivors equal the native enumeration ({len(native)} pairs)"

    if oracle:
        gen = list(islice(numtheory.prime_generator(), 1000))
        yield gen == sieve.first_primes(1000), "prime generator vs sieve oracle: first 1000 agree"
        wheel = stats.twin_census(10**4, engine="wheel")
        classical = stats.twin_census(10**4, engine="sieve")
        yield wheel == classical, f"twin census vs sieve oracle at 10^4: {wheel} == {classical}"


@main.command("verify")
@click.option("--k-max", type=int, required=True, help="Verify invariants for all k up to this order (3..8).")
@click.option("--oracle", is_flag=True, help="Also cross-check against the classical sieve.")
def cmd_verify(k_max, oracle):
    """Run the counting, survival and recount invariants; exit 1 on any failure."""
    if not 3 <= k_max <= 8:
        raise click.UsageError("--k-max must be in 3..8")
    failed = False
    for ok, line in _verify_checks(k_max, oracle):
        click.echo(f"{'PASS' if ok else 'FAIL'} {line}")
        failed = failed or not ok
    if failed:
        click.get_current_context().exit(1)


@main.command("stats")
@click.option("--k", type=int, required=True, help="Deepest basis order to measure (>= 3).")
@click.option("--bound", "n_bound", type=int, default=None, help="Shared value bound N for per-level reports.")
@click.option("--columns", type=int, default=None, help="Columns per pair for --per-pair reports.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "pgm", "text"]), default="csv", show_default=True)
@click.option("--per-pair", is_flag=True, help="Emit one record per twin pair instead of per level.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
def cmd_stats(k, n_bound, columns, fmt, per_pair, out, jobs):
    """Gap statistics: per-level averages with the shrink-ratio law, or
    per-pair scan records."""
    if fmt in ("pgm", "text"):
        raise click.UsageError("stats emits csv or json")
    try:
        if per_pair:
            if columns is None:
                raise click.UsageError("--per-pair needs --columns")
            spec = matrix.MatrixSpec.of_order(k)
            pairs = list(matrix.twin_pairs(spec))
            records = stats.pair_records(spec.basis, pairs, columns, jobs=jobs)
            fields = stats.PAIR_RECORD_FIELDS
        else:
            if n_bound is None:
                raise click.UsageError("per-level stats need --bound")
            if k < 3:
                raise click.UsageError("--k must be >= 3 so a ratio has two levels")
            report = stats.gap_recursion_check(n_bound, [k - 1, k], jobs=jobs)
            records = stats.level_records(report)
            fields = stats.LEVEL_RECORD_FIELDS
    except (ValueError, OverflowError) as exc:
        raise click.UsageError(str(exc))
    if fmt == "csv":
        _emit(stats.records_to_csv(records, fields), out)
    else:
        _emit(stats.records_to_json(records, fields), out)


@main.command("census")
@click.option("--bound", "n_bound", type=int, required=True, help="Count twin pairs (p, p+2) with p+2 <= bound.")
@click.option("--oracle", is_flag=True, help="Use the classical sieve instead of the wheel scan.")
@click.option("--list", "list_pairs", is_flag=True, help="Print the pairs, not just the count.")
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_census(n_bound, oracle, list_pairs, fmt, out):
    """Twin prime census up to a bound."""
    engine = "sieve" if oracle else "wheel"
    try:
        if fmt != "text" or list_pairs:
            count, pairs = stats.twin_census(n_bound, engine=engine, include_pairs=True)
        else:
            count = stats.twin_census(n_bound, engine=engine)
            pairs = None
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if fmt == "text":
        lines = []
        if pairs is not None:
            lines.extend(f"{p} {q}" for p, q in pairs)
        lines.append(f"count {count}" if pairs is not None else str(count))
        _emit("\n".join(lines) + "\n", out)
    else:
        records = [{"lo": p, "hi": q} for p, q in pairs]
        if fmt == "csv":
            _emit(stats.records_to_csv(records, ("lo", "hi")), out)
        else:
            _emit(stats.records_to_json(records, ("lo", "hi")), out)


@main.command("render")
@click.option("--k", type=int, required=True, help="Basis order.")
@click.option("--rows", "row_range", type=str, required=True, help="Inclusive row range, e.g. 1:6.")
@click.option("--cols", type=int, required=True, help="Column count (>= 1).")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def cmd_render(k, row_range, cols, out):
    """Write a matrix fragment as a portable graymap (P2) file."""
    try:
        first_s, _, last_s = row_range.partition(":")
        first, last = int(first_s), int(last_s if last_s else first_s)
    except ValueError:
        raise click.UsageError("--rows must look like FIRST:LAST")
    try:
        spec = matrix.MatrixSpec.of_order(k)
        pgm = matrix.render_fragment(spec, (first, last), cols)
    except (ValueError, OverflowError) as exc:
        raise click.UsageError(str(exc))
    _write_atomic(out, pgm)


if __name__ == "__main__":
    sys.exit(main())
