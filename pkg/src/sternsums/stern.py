"""Stern array rows and power sums over consecutive pairs.

Row n holds the 2^n - 1 nonzero values s(n, 1) .. s(n, 2^n - 1), generated
from a single 1 by inserting the sum between adjacent entries (with zeros
padding the outside).  The power sum of a form f over row n is

    S_n(f) = sum over k = 0 .. 2^n - 1 of f(s(n, k), s(n, k + 1)),

where s(n, 0) = s(n, 2^n) = 0, so the boundary pairs (0, 1) and (1, 0) are
included; for n = 1 the sum is f(0, 1) + f(1, 0).

Two independent evaluation routes are provided: direct summation over a
generated row, and iteration of the transfer matrix on the coefficient
vector followed by the boundary-evaluation functional g -> g(0,1) + g(1,0).
Their agreement is a core test invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .forms import HomogPoly, phi_matrix
from .linalg import RationalMatrix

Rational = Union[int, Fraction]

DEFAULT_ROW_CAP = 24


class RowCapError(ValueError):
    """Row index outside the generable range; names the configured cap."""

    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(
            f"row index {n} is outside the valid range 1 <= n <= {cap} "
            f"(configured cap {cap})"
        )


@dataclass(frozen=True)
class SternRow:
    """One row of the array: 1-based index n and its 2^n - 1 nonzero entries."""

    n: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != 2**self.n - 1:
            raise ValueError(
                f"row {self.n} must have {2 ** self.n - 1} entries, "
                f"got {len(self.entries)}"
            )

    def __len__(self):
        return len(self.entries)


def _expand(prev: list) -> list:
    """One insertion step: copy the row and insert pairwise sums."""
    m = len(prev)
    out = [0] * (2 * m + 1)
    for i in range(2 * m + 1):
        if i & 1:
            out[i] = prev[(i - 1) >> 1]
        else:
            k = i >> 1
            v = prev[k - 1] if k >= 1 else 0
            if k < m:
                v += prev[k]
            out[i] = v
    return out


def stern_row(n: int, cap: int = DEFAULT_ROW_CAP) -> SternRow:
    """Generate row n (iteratively from row 1; nothing is memoized).

    Raises RowCapError for n < 1 or n > cap; the cap bounds memory at
    2^cap - 1 entries.
    """
    if n < 1 or n > cap:
        raise RowCapError(n, cap)
    row = [1]
    for _ in range(n - 1):
        row = _expand(row)
    return SternRow(n, tuple(row))


def _pair_evaluator(f: HomogPoly):
    """Fast callable (x, y) -> f(x, y) for row-pair evaluation.

    Integer-coefficient forms get a plain-int path (and monomials a pow-based
    one); anything else falls back to the generic exact evaluator.
    """
    r = f.degree
    ic = f.int_coeffs()
    if ic is None:
        return f.__call__
    support = [(a, c) for a, c in enumerate(ic) if c]
    if len(support) == 1:
        (a, c) = support[0]
        b = r - a
        if a == 0:
            return lambda x, y: c * y**b
        if b == 0:
            return lambda x, y: c * x**a
        return lambda x, y: c * x**a * y**b

    def ev(x, y):
        acc = ic[r]
        yp = 1
        ypows = [1] * (r + 1)
        for i in range(1, r + 1):
            yp *= y
            ypows[i] = yp
        for a in range(r - 1, -1, -1):
            c = ic[a]
            acc = acc * x + (c * ypows[r - a] if c else 0)
        return acc

    return ev


def power_sum_direct(n: int, f: HomogPoly, cap: int = DEFAULT_ROW_CAP) -> Rational:
    """S_n(f) by brute force over the generated row, boundary pairs included."""
    row = stern_row(n, cap).entries
    ev = _pair_evaluator(f)
    total = ev(0, row[0]) + ev(row[-1], 0)
    prev = row[0]
    for cur in row[1:]:
        total += ev(prev, cur)
        prev = cur
    return total


def _phi_rows_for(f: HomogPoly, phi: RationalMatrix | None) -> list:
    r = f.degree
    if phi is None:
        phi = phi_matrix(r)
    elif phi.nrows != r + 1 or phi.ncols != r + 1:
        raise ValueError(
            f"operator cache is {phi.nrows}x{phi.ncols} but the form has "
            f"degree {r}; expected {r + 1}x{r + 1}"
        )
    return [list(row) for row in phi.rows]


def power_sum_fast(n: int, f: HomogPoly, phi: RationalMatrix | None = None) -> Rational:
    """S_n(f) by n - 1 transfer-matrix applications; no row is generated.

    Cost is polynomial in the degree and linear in n, so large n is cheap.
    A precomputed transfer matrix may be passed to amortize repeated calls.
    """
    if n < 1:
        raise ValueError("row index must be at least 1")
    rows = _phi_rows_for(f, phi)
    v = list(f.coeffs)
    for _ in range(n - 1):
        v = [sum(c * x for c, x in zip(row, v) if c) for row in rows]
    return v[0] + v[-1]


def power_sum_sequence(
    f: HomogPoly, n_max: int, phi: RationalMatrix | None = None
) -> list:
    """[S_1(f), ..., S_n_max(f)] via the fast route, sharing the iteration."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rows = _phi_rows_for(f, phi)
    v = list(f.coeffs)
    out = [v[0] + v[-1]]
    for _ in range(n_max - 1):
        v = [sum(c * x for c, x in zip(row, v) if c) for row in rows]
        out.append(v[0] + v[-1])
    return out
