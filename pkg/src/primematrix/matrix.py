"""Virtual primorial-wheel matrices.

A_k arranges the integers >= 2 into P_k = p_k!' rows, where row i holds
the arithmetic progression (i+1) + P_k*(j-1) for columns j = 1, 2, ...
Rows are never materialized (A_9 already has 223,092,870 of them); every
operation works on residues and the cell-value formula.
"""

import math
from dataclasses import dataclass
from typing import Optional

from primematrix import kernels, numtheory

_U64_LIMIT = 2**64
MAX_ENUMERATION_ORDER = 9
_WINDOW = 6_000_000  # residues per kernel call when streaming twin pairs

COLORED = "colored"
UNCOLORED = "uncolored"

SURVIVOR = "survivor"
KILLED_LOW = "killed-low"
KILLED_HIGH = "killed-high"


@dataclass(frozen=True)
class MatrixSpec:
    basis: numtheory.PrimeBasis

    @property
    def rows(self):
        """Row count i_max, equal to the basis primorial."""
        return self.basis.primorial

    @classmethod
    def of_order(cls, k):
        return cls(basis=numtheory.PrimeBasis.of_order(k))


@dataclass(frozen=True)
class RowClass:
    row_index: int
    residue: int
    status: str
    leading_prime: Optional[int] = None


@dataclass(frozen=True)
class TwinRowPair:
    """Two uncolored rows at index distance 2, identified by residues.

    The pair at the bottom edge, residues (P_k - 1, P_k + 1), keeps its
    upper residue as P_k + 1 rather than wrapping to 1. This is a plain
    value container; uncoloredness is guaranteed by the enumerators that
    produce it, not rechecked here.
    """

    lower_row: int
    upper_row: int
    lower_residue: int
    upper_residue: int

    @classmethod
    def from_lower_residue(cls, r):
        return cls(lower_row=r - 1, upper_row=r + 1, lower_residue=r, upper_residue=r + 2)


@dataclass(frozen=True)
class LiftChild:
    offset: int
    pair: TwinRowPair
    status: str


def value_at(spec, i, j):
    """Cell value (i+1) + P_k*(j-1). Fails loudly past 64 bits."""
    P = spec.basis.primorial
    if not 1 <= i <= P:
        raise ValueError(f"row index {i} outside 1..{P}")
    if j < 1:
        raise ValueError("column index must be >= 1")
    v = (i + 1) + P * (j - 1)
    if v >= _U64_LIMIT:
        raise OverflowError("cell value exceeds 64 bits")
    return v


def column_of(spec, v):
    """Column j holding value v (v >= 2)."""
    if v < 2:
        raise ValueError("values start at 2")
    return (v - 2) // spec.basis.primorial + 1


def classify_row(spec, i):
    """Colored iff the row residue shares a factor with the primorial.

    Rows whose residue is itself a basis prime are colored (everything
    after the first cell is a multiple) but carry that leading prime.
    """
    P = spec.basis.primorial
    if not 1 <= i <= P:
        raise ValueError(f"row index {i} outside 1..{P}")
    residue = i + 1
    if math.gcd(residue, P) == 1:
        return RowClass(row_index=i, residue=residue, status=UNCOLORED)
    leading = residue if residue in spec.basis.primes else None
    return RowClass(row_index=i, residue=residue, status=COLORED, leading_prime=leading)


def _check_enumerable(spec):
    if spec.basis.k < 2:
        raise ValueError("twin rows exist only for k >= 2")
    if spec.basis.k > MAX_ENUMERATION_ORDER:
        raise ValueError(
            f"enumeration refused above k={MAX_ENUMERATION_ORDER} "
            f"({numtheory.special_factorial(MAX_ENUMERATION_ORDER)} rows)"
        )


def twin_pairs(spec):
    """All twin row pairs of A_k in increasing order, streamed.

    Lower residues run over [5, P_k); memory stays flat because the scan
    proceeds in fixed-size residue windows.
    """
    _check_enumerable(spec)
    primes = spec.basis.primes
    P = spec.basis.primorial
    lo = 5
    while lo < P:
        hi = min(lo + _WINDOW, P)
        for r in kernels.twin_lowers_in_range(primes, lo, hi):
            yield TwinRowPair.from_lower_residue(r)
        lo = hi


def twin_pair_count(spec):
    """Closed-form count Prod_{i=2..k} (p_i - 2)."""
    if spec.basis.k < 2:
        raise ValueError("twin rows exist only for k >= 2")
    count = 1
    for p in spec.basis.primes[1:]:
        count *= p - 2
    return count


def twin_pair_count_enumerated(spec):
    """Count by actually walking the residues; must match the formula."""
    _check_enumerable(spec)
    primes = spec.basis.primes
    P = spec.basis.primorial
    total = 0
    lo = 5
    while lo < P:
        hi = min(lo + _WINDOW, P)
        total += kernels.count_twin_lowers(primes, lo, hi)
        lo = hi
    return total


def _split_basis(basis_k):
    if basis_k.k < 3:
        raise ValueError("lifting needs a basis of order >= 3")
    p_k = basis_k.primes[-1]
    return p_k, basis_k.primorial // p_k


def lift_pair(parent, basis_k):
    """Children of a twin pair of A_{k-1} inside A_k.

    Each offset m in 0..p_k-1 maps the parent's lower residue r to
    r + P_{k-1}*m. Exactly one offset makes the lower endpoint divisible
    by p_k and exactly one the upper, so p_k - 2 children survive.
    """
    p_k, P_prev = _split_basis(basis_k)
    r = parent.lower_residue
    if math.gcd(r, P_prev) != 1 or math.gcd(r + 2, P_prev) != 1:
        raise ValueError(f"({r}, {r + 2}) is not a twin pair mod {P_prev}")
    children = []
    for m in range(p_k):
        child_lo = r + P_prev * m
        if child_lo % p_k == 0:
            status = KILLED_LOW
        elif (child_lo + 2) % p_k == 0:
            status = KILLED_HIGH
        else:
            status = SURVIVOR
        children.append(
            LiftChild(offset=m, pair=TwinRowPair.from_lower_residue(child_lo), status=status)
        )
    return children


def killed_offsets(parent, basis_k):
    """(m_low, m_high) solved with the modular inverse of P_{k-1} mod p_k.

    Always distinct: equal offsets would force 2 = 0 (mod p_k).
    """
    p_k, P_prev = _split_basis(basis_k)
    inv = numtheory.mod_inverse(P_prev % p_k, p_k)
    m_low = (-parent.lower_residue * inv) % p_k
    m_high = (-(parent.lower_residue + 2) * inv) % p_k
    return m_low, m_high


def killed_offsets_by_scan(parent, basis_k):
    """Same two offsets found by exhaustive scan, as an independent check."""
    p_k, P_prev = _split_basis(basis_k)
    lows = []
    highs = []
    for m in range(p_k):
        child_lo = parent.lower_residue + P_prev * m
        if child_lo % p_k == 0:
            lows.append(m)
        if (child_lo + 2) % p_k == 0:
            highs.append(m)
    if len(lows) != 1 or len(highs) != 1:
        raise AssertionError(f"expected one killed offset per endpoint, got {lows}, {highs}")
    return lows[0], highs[0]


def render_fragment(spec, row_range, col_count):
    """Textual portable graymap of a matrix fragment.

    One pixel per cell: 0 composite, 255 prime, 128 reserved for a cell
    holding 1 (never produced by the value formula). row_range is an
    inclusive (first, last) pair of row indices. Output is bit-exact:
    "P2", dimensions, maxval 255, then one line per row with single
    space separators and a trailing newline.
    """
    first, last = row_range
    P = spec.basis.primorial
    if not 1 <= first <= last <= P:
        raise ValueError(f"row range {row_range} outside 1..{P}")
    if col_count < 1:
        raise ValueError("need at least one column")
    value_at(spec, last, col_count)  # overflow check on the largest cell
    lines = ["P2", f"{col_count} {last - first + 1}", "255"]
    for i in range(first, last + 1):
        row = []
        for j in range(1, col_count + 1):
            v = value_at(spec, i, j)
            if v == 1:
                row.append("128")
            elif numtheory.is_prime(v):
                row.append("255")
            else:
                row.append("0")
        lines.append(" ".join(row))
    return "\n".join(lines) + "\n"
