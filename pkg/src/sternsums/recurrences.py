"""Minimal linear recurrences for power-sum sequences.

A recurrence of length L with offset n0 asserts

    S_n = a_1 S_{n-1} + ... + a_L S_{n-L} + b + c*(-1)^n

for every n with n - L >= n0, i.e. the identity never references a term
before index n0.  Sequences are 1-indexed: seq[0] is S_1.  With the default
offset n0 = 2 the cubic power-sum sequence 1, 3, 21, 147, ... satisfies the
length-1 recurrence with coefficient 7 (checked from n = 3 onward, where
every referenced term has index >= 2).

Recurrences are mined by ascending length: for each candidate length the
full window of equations is solved exactly (a Hankel-style system over the
rationals), so a returned recurrence is consistent with every available
term and minimality is by construction.  The annihilator route provides the
proof-backed counterpart: the characteristic polynomial of the quotient
transfer matrix, with known eigenvalue factors divided out, read as a
recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence, Union

from .forms import HomogPoly, monomial_name, phi_matrix, sym_quotient
from .linalg import IntPolynomial, charpoly, divide_out, solve_linear
from .spectra import (
    LENGTH_BOUND_EVEN_AFFINE_ALT,
    LENGTH_BOUND_EVEN_HOMOGENEOUS,
    LENGTH_BOUND_ODD,
    periodic_eval,
)
from .stern import power_sum_sequence

Rational = Union[int, Fraction]

HOMOGENEOUS = "homogeneous"
AFFINE_ALT = "affine_alt"


class InsufficientDataError(ValueError):
    """The horizon is too short to certify a recurrence of the wanted length."""

    def __init__(self, message: str, required_terms: int):
        self.required_terms = required_terms
        super().__init__(message)


def _norm(x: Rational) -> Rational:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class LinearRecurrence:
    """Length, coefficients a_1..a_L, offset n0, and affine/alternating terms."""

    length: int
    coefficients: tuple
    n0: int
    affine_b: Rational = 0
    alternating_c: Rational = 0

    def __post_init__(self):
        if self.length != len(self.coefficients):
            raise ValueError("length must match the number of coefficients")
        if self.n0 < 1:
            raise ValueError("offset n0 must be a positive index")

    @property
    def first_checked_index(self) -> int:
        """Smallest n at which the identity is asserted: n0 + length."""
        return self.n0 + self.length

    def is_homogeneous(self) -> bool:
        return not self.affine_b and not self.alternating_c

    def rhs(self, seq: Sequence[Rational], n: int) -> Rational:
        """Right-hand side at index n (1-based) over the given sequence."""
        total = self.affine_b + self.alternating_c * (-1) ** n
        for j, a in enumerate(self.coefficients, start=1):
            if a:
                total += a * seq[n - 1 - j]
        return total

    def to_json_dict(self) -> dict:
        return {
            "length": self.length,
            "coefficients": [str(_norm(c)) for c in self.coefficients],
            "n0": self.n0,
            "affine_b": str(_norm(self.affine_b)),
            "alternating_c": str(_norm(self.alternating_c)),
        }


def verify_recurrence(seq: Sequence[Rational], rec: LinearRecurrence) -> bool:
    """Exact check of the identity at every index from n0 + length onward.

    Vacuously true when the window is empty.
    """
    for n in range(rec.first_checked_index, len(seq) + 1):
        if seq[n - 1] != rec.rhs(seq, n):
            return False
    return True


def fit_recurrence(
    seq: Sequence[Rational],
    n0: int,
    length: int,
    variant: str = HOMOGENEOUS,
) -> LinearRecurrence | None:
    """Exact fit of one candidate length over the full window, or None.

    The window runs from n = n0 + length to the horizon; all equations must
    hold simultaneously.  For the affine-alternating variant the constant
    and (-1)^n columns are appended, and ties are broken by preferring
    b = c = 0, then b = 0, then c = 0 (lexicographic minimization of
    (|b|, |c|) in the cases that occur here).
    """
    if n0 < 1:
        raise ValueError("offset n0 must be a positive index")
    if length < 0:
        raise ValueError("length must be nonnegative")
    start = n0 + length
    ns = range(start, len(seq) + 1)
    if len(ns) == 0 and length > 0:
        raise InsufficientDataError(
            f"no data in the window [{start}, {len(seq)}] to fit length {length}",
            start,
        )
    if variant == HOMOGENEOUS:
        stages = [(False, False)]
    elif variant == AFFINE_ALT:
        stages = [(False, False), (False, True), (True, False), (True, True)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    for use_b, use_c in stages:
        rows = []
        rhs = []
        for n in ns:
            row = [seq[n - 1 - j] for j in range(1, length + 1)]
            if use_b:
                row.append(1)
            if use_c:
                row.append((-1) ** n)
            rows.append(row)
            rhs.append(seq[n - 1])
        if rows and not rows[0]:
            # length 0 with no affine columns: the tail must vanish.
            sol = [] if not any(rhs) else None
        else:
            sol = solve_linear(rows, rhs) if rows else []
        if sol is None:
            continue
        coeffs = tuple(_norm(c) for c in sol[:length])
        b = _norm(sol[length]) if use_b else 0
        c = _norm(sol[-1]) if use_c else 0
        rec = LinearRecurrence(length, coeffs, n0, b, c)
        if verify_recurrence(seq, rec):
            return rec
    return None


def _certifiable_max_length(n_terms: int, n0: int, extra_unknowns: int) -> int:
    # Fitting needs `length + extra` equations and as many held-out checks
    # again, so the window [n0 + length, n_terms] must hold at least
    # 2*(length + extra) + 2 terms.
    return (n_terms - n0 - 2) // 2 - extra_unknowns


def min_recurrence(seq: Sequence[Rational], n0: int) -> LinearRecurrence:
    """Shortest homogeneous recurrence that holds on the whole horizon.

    Lengths are tried in increasing order, so the result is minimal; a
    length is only accepted while the window leaves at least as many
    validation equations as unknowns.  Raises InsufficientDataError when no
    certifiable length fits.
    """
    return _min_recurrence_impl(seq, n0, HOMOGENEOUS)


def min_affine_alt_recurrence(seq: Sequence[Rational], n0: int) -> LinearRecurrence:
    """Shortest recurrence allowing the extra b + c*(-1)^n terms."""
    return _min_recurrence_impl(seq, n0, AFFINE_ALT)


def _min_recurrence_impl(seq, n0, variant) -> LinearRecurrence:
    if n0 < 1:
        raise ValueError("offset n0 must be a positive index")
    extra = 2 if variant == AFFINE_ALT else 0
    max_len = _certifiable_max_length(len(seq), n0, extra)
    if max_len < 0:
        needed = n0 + 2 * extra + 2
        raise InsufficientDataError(
            f"horizon of {len(seq)} terms cannot certify any recurrence from "
            f"n0={n0}; need at least {needed} terms",
            needed,
        )
    for length in range(max_len + 1):
        rec = fit_recurrence(seq, n0, length, variant)
        if rec is not None:
            return rec
    needed = n0 + 2 * (max_len + 1 + extra) + 2
    raise InsufficientDataError(
        f"no recurrence of length <= {max_len} fits the horizon of "
        f"{len(seq)} terms from n0={n0}; certifying length {max_len + 1} "
        f"needs at least {needed} terms",
        needed,
    )


def corollary_bound(r: int, variant: str = HOMOGENEOUS) -> int:
    """Guaranteed recurrence-length bound for degree-r power sums.

    The affine-alternating variant only differs for even r; for odd r the
    homogeneous bound is returned.
    """
    if r < 1:
        raise ValueError("degree must be at least 1")
    if variant not in (HOMOGENEOUS, AFFINE_ALT):
        raise ValueError(f"unknown variant {variant!r}")
    if r % 2:
        fn = LENGTH_BOUND_ODD
    elif variant == AFFINE_ALT:
        fn = LENGTH_BOUND_EVEN_AFFINE_ALT
    else:
        fn = LENGTH_BOUND_EVEN_HOMOGENEOUS
    value = periodic_eval(fn, r)
    if not isinstance(value, int) or value < 0:
        raise AssertionError(f"length bound is not a nonnegative integer: {value}")
    return value


def _root_power(p: IntPolynomial, lam: int) -> int:
    k = 0
    while p.degree() > 0 and p.evaluate(lam) == 0:
        p = divide_out(p, IntPolynomial([-lam, 1]), 1)
        k += 1
    return k


def shortened_annihilator(r: int) -> IntPolynomial:
    """Annihilating polynomial of the quotient transfer matrix, shortened.

    Odd r: the characteristic polynomial with the full power of x divided
    out.  Even r: all (x-1) and (x+1) factors divided out, then one of each
    multiplied back in.  Read as a recurrence this annihilates S_n(f) for
    every degree-r form f from the valid start onward.
    """
    if r < 1:
        raise ValueError("degree must be at least 1")
    _, phi_sym = sym_quotient(r)
    cp = charpoly(phi_sym)
    if r % 2:
        m0 = _root_power(cp, 0)
        return divide_out(cp, IntPolynomial.x(), m0)
    m_plus = _root_power(cp, 1)
    m_minus = _root_power(cp, -1)
    g = divide_out(cp, IntPolynomial([-1, 1]), m_plus)
    g = divide_out(g, IntPolynomial([1, 1]), m_minus)
    return g * IntPolynomial([-1, 1]) * IntPolynomial([1, 1])


def annihilator_recurrence(r: int) -> LinearRecurrence:
    """shortened_annihilator(r) read as a homogeneous recurrence.

    For odd r the x-power divided out shifts the guaranteed start: with m
    the multiplicity of 0, the recurrence holds once every referenced term
    has index above m, so n0 = m + 1.  For even r nothing was removed that
    the quotient matrix does not satisfy outright, and n0 = 1.
    """
    poly = shortened_annihilator(r)
    if not poly.is_monic():
        raise AssertionError("annihilator should be monic")
    length = poly.degree()
    coeffs = tuple(-poly.coeffs[length - j] for j in range(1, length + 1))
    if r % 2:
        _, phi_sym = sym_quotient(r)
        m0 = _root_power(charpoly(phi_sym), 0)
        n0 = m0 + 1
    else:
        n0 = 1
    return LinearRecurrence(length, coeffs, n0)


@dataclass(frozen=True)
class MiningResult:
    """Mined recurrences for one monomial class, with the bound comparison."""

    r: int
    x_power: int
    label: str
    recurrence: LinearRecurrence
    bound: int
    within_bound: bool
    best_n0: int | None
    annihilator_validates: bool
    affine: LinearRecurrence | None = None
    affine_bound: int | None = None
    affine_within_bound: bool | None = None

    def to_json_dict(self) -> dict:
        out = {
            "r": self.r,
            "monomial": self.label,
            "recurrence": self.recurrence.to_json_dict(),
            "bound": self.bound,
            "within_bound": self.within_bound,
            "best_n0": self.best_n0,
            "annihilator_validates": self.annihilator_validates,
        }
        if self.affine is not None:
            out["affine"] = self.affine.to_json_dict()
            out["affine_bound"] = self.affine_bound
            out["affine_within_bound"] = self.affine_within_bound
        return out


def _smallest_valid_offset(seq, rec: LinearRecurrence) -> int | None:
    for n0 in (1, 2, 3):
        if verify_recurrence(seq, replace(rec, n0=n0)):
            return n0
    return None


def mine_all_monomials(
    r: int, n_terms: int | None = None, include_affine: bool | None = None
) -> list:
    """Minimal recurrences for every monomial class of degree r.

    One result per class x^a y^(r-a) with a from ceil(r/2) to r (the swap
    symmetry makes the rest redundant).  Each mined length is compared with
    the guaranteed bound, and the annihilator recurrence is validated
    against every sequence.  The horizon defaults to twice the homogeneous
    bound plus eight.
    """
    bound = corollary_bound(r, HOMOGENEOUS)
    minimum = 2 * bound + 8
    if n_terms is None:
        n_terms = minimum
    elif n_terms < minimum:
        raise InsufficientDataError(
            f"n_terms={n_terms} is below the required horizon {minimum} "
            f"for degree {r}",
            minimum,
        )
    if include_affine is None:
        include_affine = r % 2 == 0
    phi = phi_matrix(r)
    ann = annihilator_recurrence(r)
    affine_bound = corollary_bound(r, AFFINE_ALT) if include_affine else None
    results = []
    for a in range((r + 1) // 2, r + 1):
        f = HomogPoly.monomial(a, r)
        seq = power_sum_sequence(f, n_terms, phi=phi)
        rec = min_recurrence(seq, 2)
        affine = None
        affine_within = None
        if include_affine:
            affine = min_affine_alt_recurrence(seq, 2)
            affine_within = affine.length <= affine_bound
        results.append(
            MiningResult(
                r=r,
                x_power=a,
                label=monomial_name(a, r),
                recurrence=rec,
                bound=bound,
                within_bound=rec.length <= bound,
                best_n0=_smallest_valid_offset(seq, rec),
                annihilator_validates=verify_recurrence(seq, ann),
                affine=affine,
                affine_bound=affine_bound,
                affine_within_bound=affine_within,
            )
        )
    return results
