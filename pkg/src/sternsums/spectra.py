"""Eigenvalue-multiplicity predictions and their exact verification.

The predicted multiplicities of the transfer matrix (and its symmetric
quotient) at the eigenvalues 0 and +-1 are periodic-plus-linear functions of
the degree r, written here as PeriodicFn values.  The bracket convention:
a function [a_1, ..., a_p] restricted to one parity class of r has period
2p, with a_1 at r == 0 (mod 2p) on the even class and a_1 at r == 1 (mod 2p)
on the odd class.

Verification is entirely rational.  Geometric multiplicities are kernel
dimensions, algebraic ones come from repeated exact division of the
characteristic polynomial, and the two diagonalizability witnesses are the
integer symmetry identity a!(r-a)! M[a][b] == b!(r-b)! M[b][a] and
squarefreeness of the minimal polynomials.

A composition subtlety drives the eigenspace computations.  With row-vector
substitution the operators compose covariantly, so the operator that the
transfer matrix factors through is tau^-1 @ sigma (RHO_TWIST), not
sigma @ tau^-1: the transfer matrix equals the tau-substitution applied
after (RHO_TWIST substitution + identity).  RHO_TWIST is conjugate to RHO,
so every dimension formula is unchanged, but the annihilation identities
hold for RHO_TWIST's eigenspaces and are stated that way here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .forms import (
    IOTA,
    RHO_TWIST,
    operator_matrix,
    phi_matrix,
    project_span_dim,
    sym_quotient,
)
from .linalg import (
    RationalMatrix,
    eigen_multiplicity,
    is_squarefree,
    kernel_basis,
    minpoly,
    rank,
)

Rational = Union[int, Fraction]

ODD = "odd"
EVEN = "even"


@dataclass(frozen=True)
class PeriodicFn:
    """linear_slope * r plus a parity-restricted periodic table of values.

    values = (a_1, ..., a_p) repeats with period 2p over the parity class;
    see the module docstring for where a_1 sits.
    """

    values: tuple
    parity: str
    linear_slope: Fraction = Fraction(0)

    def __post_init__(self):
        if not self.values:
            raise ValueError("periodic part needs at least one value")
        if self.parity not in (ODD, EVEN):
            raise ValueError(f"parity must be '{ODD}' or '{EVEN}'")


def periodic_eval(fn: PeriodicFn, r: int) -> Rational:
    """Evaluate at a degree of the matching parity; exact rational result."""
    if r % 2 != (1 if fn.parity == ODD else 0):
        raise ValueError(f"degree {r} does not lie in the {fn.parity} class")
    p = len(fn.values)
    idx = ((r - 1) // 2) % p if fn.parity == ODD else (r // 2) % p
    val = fn.linear_slope * r + fn.values[idx]
    return int(val) if isinstance(val, Fraction) and val.denominator == 1 else val


def _pf(slope, values, parity) -> PeriodicFn:
    return PeriodicFn(
        tuple(Fraction(v) for v in values), parity, Fraction(slope)
    )


F = Fraction

# Multiplicity lower bounds (observed to be equalities on the swept range).
MULT_PHI_ZERO = _pf(F(1, 3), [F(-1, 3), 1, F(1, 3)], ODD)
MULT_PHI_SYM_ZERO = _pf(F(1, 6), [F(-1, 6), F(1, 2), F(1, 6)], ODD)
MULT_PHI_PLUS = _pf(F(1, 6), [-1, F(2, 3), F(1, 3), 0, F(-1, 3), F(4, 3)], EVEN)
MULT_PHI_MINUS = _pf(F(1, 6), [0, F(-1, 3), F(4, 3), -1, F(2, 3), F(1, 3)], EVEN)
MULT_PHI_SYM_PLUS = _pf(
    F(1, 12), [-1, F(-1, 6), F(-1, 3), F(-1, 2), F(-2, 3), F(1, 6)], EVEN
)
MULT_PHI_SYM_MINUS = _pf(
    F(1, 12), [0, F(-1, 6), F(2, 3), F(-1, 2), F(1, 3), F(1, 6)], EVEN
)
MULT_PHI_PM_SUM = _pf(F(1, 3), [-1, F(1, 3), F(5, 3)], EVEN)
MULT_PHI_SYM_PM_SUM = _pf(F(1, 6), [-1, F(-1, 3), F(1, 3)], EVEN)

# Eigenspace dimensions for even degree.
DIM_X = _pf(F(2, 3), [0, F(2, 3), F(4, 3)], EVEN)
DIM_Y_PLUS = _pf(F(1, 2), [1, 0], EVEN)
DIM_Y_MINUS = _pf(F(1, 2), [0, 1], EVEN)
DIM_X_SYM = _pf(F(1, 3), [0, F(1, 3), F(2, 3)], EVEN)
DIM_Y_PLUS_SYM = _pf(F(1, 4), [1, F(1, 2)], EVEN)
DIM_Y_MINUS_SYM = _pf(F(1, 4), [0, F(1, 2)], EVEN)
# Intersection lower bounds by inclusion-exclusion; the transfer matrix acts
# by -1 on X n Y+ and by +1 on X n Y-, so these pair with the bounds above.
DIM_X_CAP_Y_PLUS = MULT_PHI_MINUS
DIM_X_CAP_Y_MINUS = MULT_PHI_PLUS
DIM_X_CAP_Y_PLUS_SYM = MULT_PHI_SYM_MINUS
DIM_X_CAP_Y_MINUS_SYM = MULT_PHI_SYM_PLUS

# Counts for odd degree (the minus-one eigenspace of the twist substitution).
COUNT_W = MULT_PHI_ZERO
COUNT_W_SYM = MULT_PHI_SYM_ZERO

# Recurrence-length bounds.
LENGTH_BOUND_ODD = _pf(F(1, 3), [F(2, 3), 0, F(1, 3)], ODD)
LENGTH_BOUND_EVEN_HOMOGENEOUS = _pf(F(1, 3), [4, F(10, 3), F(8, 3)], EVEN)
LENGTH_BOUND_EVEN_AFFINE_ALT = _pf(F(1, 3), [2, F(4, 3), F(2, 3)], EVEN)


def _dim_value(fn: PeriodicFn, r: int) -> int:
    """Evaluate a formula that represents a dimension; must be an integer >= 0."""
    v = periodic_eval(fn, r)
    if not isinstance(v, int) or v < 0:
        raise AssertionError(f"dimension formula produced {v} at r={r}")
    return v


def predicted_bounds(r: int) -> dict:
    """Predicted multiplicities at the relevant eigenvalues for degree r.

    Odd r: eigenvalue 0 on both operators.  Even r: eigenvalues +-1 on both,
    plus the two summed bounds.  All values are nonnegative integers.
    """
    if r < 1:
        raise ValueError("degree must be at least 1")
    if r % 2:
        return {
            "m_phi_0": _dim_value(MULT_PHI_ZERO, r),
            "m_phi_sym_0": _dim_value(MULT_PHI_SYM_ZERO, r),
        }
    return {
        "m_phi_plus1": _dim_value(MULT_PHI_PLUS, r),
        "m_phi_minus1": _dim_value(MULT_PHI_MINUS, r),
        "m_phi_sym_plus1": _dim_value(MULT_PHI_SYM_PLUS, r),
        "m_phi_sym_minus1": _dim_value(MULT_PHI_SYM_MINUS, r),
        "m_phi_pm_sum": _dim_value(MULT_PHI_PM_SUM, r),
        "m_phi_sym_pm_sum": _dim_value(MULT_PHI_SYM_PM_SUM, r),
    }


def _twist_matrix(r: int) -> RationalMatrix:
    return operator_matrix(RHO_TWIST, r)


def _order3_part_matrix(twist: RationalMatrix) -> RationalMatrix:
    """twist^2 + twist + identity; its kernel is the subspace called X."""
    n = twist.nrows
    return twist @ twist + twist + RationalMatrix.identity(n)


def _span_sum_dim(vecs_a: list, vecs_b: list) -> int:
    """Dimension of the sum of two spans (rows are generators)."""
    if not vecs_a and not vecs_b:
        return 0
    return rank(RationalMatrix(list(vecs_a) + list(vecs_b)))


def eigenspace_dims(r: int) -> dict:
    """Formula and computed dimensions of X, Y+-, their quotient images, and
    the pairwise intersections, for even degree.

    X is the kernel of twist^2 + twist + 1 for the twist substitution, Y+-
    are the +-1 eigenspaces of the quarter-turn substitution, and the _sym
    entries are dimensions of the images under the quotient projection.
    Each entry carries the formula (or inclusion-exclusion bound) next to
    the exactly computed value.
    """
    if r < 2 or r % 2:
        raise ValueError("even degree at least 2 required")
    n = r + 1
    ident = RationalMatrix.identity(n)
    twist = _twist_matrix(r)
    x_mat = _order3_part_matrix(twist)
    iota_m = operator_matrix(IOTA, r)
    projection, _ = sym_quotient(r)

    x_basis = kernel_basis(x_mat)
    y_plus_basis = kernel_basis(iota_m - ident)
    y_minus_basis = kernel_basis(iota_m + ident)

    def joint_dim(mat_a, mat_b):
        return len(kernel_basis(RationalMatrix.vstack([mat_a, mat_b])))

    dim_x = len(x_basis)
    dim_yp = len(y_plus_basis)
    dim_ym = len(y_minus_basis)

    # Quotient-side dimensions: images of the subspaces under the projection.
    dim_x_sym = project_span_dim(projection, x_basis)
    dim_yp_sym = project_span_dim(projection, y_plus_basis)
    dim_ym_sym = project_span_dim(projection, y_minus_basis)

    # Exact intersections; on the quotient side via dim(A) + dim(B) - dim(A+B).
    dim_x_yp = joint_dim(x_mat, iota_m - ident)
    dim_x_ym = joint_dim(x_mat, iota_m + ident)
    proj_x = [projection.mat_vec(v) for v in x_basis]
    proj_yp = [projection.mat_vec(v) for v in y_plus_basis]
    proj_ym = [projection.mat_vec(v) for v in y_minus_basis]
    dim_x_yp_sym = dim_x_sym + dim_yp_sym - _span_sum_dim(proj_x, proj_yp)
    dim_x_ym_sym = dim_x_sym + dim_ym_sym - _span_sum_dim(proj_x, proj_ym)

    return {
        "dim_X": {"formula": _dim_value(DIM_X, r), "computed": dim_x},
        "dim_Y_plus": {"formula": _dim_value(DIM_Y_PLUS, r), "computed": dim_yp},
        "dim_Y_minus": {"formula": _dim_value(DIM_Y_MINUS, r), "computed": dim_ym},
        "dim_X_sym": {"formula": _dim_value(DIM_X_SYM, r), "computed": dim_x_sym},
        "dim_Y_plus_sym": {
            "formula": _dim_value(DIM_Y_PLUS_SYM, r),
            "computed": dim_yp_sym,
        },
        "dim_Y_minus_sym": {
            "formula": _dim_value(DIM_Y_MINUS_SYM, r),
            "computed": dim_ym_sym,
        },
        "dim_X_cap_Y_plus": {
            "bound": periodic_eval(DIM_X_CAP_Y_PLUS, r),
            "computed": dim_x_yp,
        },
        "dim_X_cap_Y_minus": {
            "bound": periodic_eval(DIM_X_CAP_Y_MINUS, r),
            "computed": dim_x_ym,
        },
        "dim_X_cap_Y_plus_sym": {
            "bound": periodic_eval(DIM_X_CAP_Y_PLUS_SYM, r),
            "computed": dim_x_yp_sym,
        },
        "dim_X_cap_Y_minus_sym": {
            "bound": periodic_eval(DIM_X_CAP_Y_MINUS_SYM, r),
            "computed": dim_x_ym_sym,
        },
    }


def odd_case_dims(r: int) -> dict:
    """Residue count versus kernel dimension for odd degree.

    Counts x powers a in 0..r with 2a == r + 3 (mod 6), plain and modulo the
    pairing a ~ r - a; computes the minus-one eigenspace W of the twist
    substitution and its image in the quotient; asserts count == dim W and
    paired count == dim W_sym.
    """
    if r % 2 == 0:
        raise ValueError("odd degree required")
    hits = [a for a in range(r + 1) if (2 * a - (r + 3)) % 6 == 0]
    count = len(hits)
    paired = {frozenset((a, r - a)) for a in hits}
    count_sym = len(paired)

    n = r + 1
    twist = _twist_matrix(r)
    w_basis = kernel_basis(twist + RationalMatrix.identity(n))
    projection, _ = sym_quotient(r)
    dim_w = len(w_basis)
    dim_w_sym = project_span_dim(projection, w_basis)

    if count != dim_w:
        raise AssertionError(f"r={r}: residue count {count} != dim W {dim_w}")
    if count_sym != dim_w_sym:
        raise AssertionError(
            f"r={r}: paired count {count_sym} != dim W_sym {dim_w_sym}"
        )
    return {
        "count": count,
        "count_sym": count_sym,
        "dim_W": dim_w,
        "dim_W_sym": dim_w_sym,
        "formula": _dim_value(COUNT_W, r),
        "formula_sym": _dim_value(COUNT_W_SYM, r),
    }


def check_annihilation_identities(r: int) -> dict:
    """Structural identities behind the multiplicity bounds.

    Odd r: the transfer matrix kills every kernel vector of (twist + 1).
    Even r: (transfer + quarter-turn) kills every kernel vector of
    twist^2 + twist + 1.  Vacuously true when the eigenspace is zero.
    """
    if r < 1:
        raise ValueError("degree must be at least 1")
    n = r + 1
    phi = phi_matrix(r)
    twist = _twist_matrix(r)
    if r % 2:
        basis = kernel_basis(twist + RationalMatrix.identity(n))
        ok = all(not any(phi.mat_vec(v)) for v in basis)
        return {"phi_kills_W": ok, "space_dim": len(basis)}
    basis = kernel_basis(_order3_part_matrix(twist))
    combo = phi + operator_matrix(IOTA, r)
    ok = all(not any(combo.mat_vec(v)) for v in basis)
    return {"phi_plus_iota_kills_X": ok, "space_dim": len(basis)}


def check_diagonalizability(r: int) -> tuple:
    """(symmetry_identity, minpoly_squarefree) witnesses for degree r.

    The first checks a!(r-a)! M[a][b] == b!(r-b)! M[b][a] for every entry of
    the transfer matrix (the integer form of conjugating by the diagonal of
    square roots of k!(r-k)!).  The second checks squarefreeness of the
    minimal polynomials of the transfer matrix and its quotient.
    """
    if r < 0:
        raise ValueError("degree must be nonnegative")
    phi = phi_matrix(r)
    fact = [math.factorial(k) for k in range(r + 1)]
    weights = [fact[a] * fact[r - a] for a in range(r + 1)]
    symmetric = all(
        weights[a] * phi.rows[a][b] == weights[b] * phi.rows[b][a]
        for a in range(r + 1)
        for b in range(a + 1, r + 1)
    )
    _, phi_sym = sym_quotient(r)
    squarefree = is_squarefree(minpoly(phi)) and is_squarefree(minpoly(phi_sym))
    return symmetric, squarefree


@dataclass(frozen=True)
class MultiplicityCheck:
    predicted: int
    geometric: int
    algebraic: int

    @property
    def bound_holds(self) -> bool:
        return self.geometric >= self.predicted and self.algebraic >= self.predicted

    @property
    def equal(self) -> bool:
        return self.geometric == self.predicted and self.algebraic == self.predicted

    def to_json_dict(self) -> dict:
        return {
            "predicted": self.predicted,
            "geometric": self.geometric,
            "algebraic": self.algebraic,
            "bound_holds": self.bound_holds,
            "equal": self.equal,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Everything checked for one degree r."""

    r: int
    parity: str
    multiplicities: dict
    sum_checks: dict
    symmetry_identity: bool
    minpoly_squarefree: bool
    dims: dict
    annihilation: dict

    @property
    def bounds_hold(self) -> bool:
        mults = all(m.bound_holds for m in self.multiplicities.values())
        sums = all(c["computed"] >= c["predicted"] for c in self.sum_checks.values())
        dims_ok = True
        for entry in self.dims.values():
            target = entry.get("formula")
            if target is not None and entry["computed"] != target:
                dims_ok = False
            bound = entry.get("bound")
            if bound is not None and entry["computed"] < bound:
                dims_ok = False
        return mults and sums and dims_ok

    @property
    def all_equal(self) -> bool:
        mults = all(m.equal for m in self.multiplicities.values())
        sums = all(c["computed"] == c["predicted"] for c in self.sum_checks.values())
        return mults and sums

    @property
    def diagonalizable_witnessed(self) -> bool:
        return self.symmetry_identity and self.minpoly_squarefree

    @property
    def passed(self) -> bool:
        return (
            self.bounds_hold
            and self.all_equal
            and self.diagonalizable_witnessed
            and all(v for k, v in self.annihilation.items() if isinstance(v, bool))
        )

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "parity": self.parity,
            "multiplicities": {
                k: v.to_json_dict() for k, v in self.multiplicities.items()
            },
            "sum_checks": self.sum_checks,
            "symmetry_identity": self.symmetry_identity,
            "minpoly_squarefree": self.minpoly_squarefree,
            "dims": self.dims,
            "annihilation": self.annihilation,
            "passed": self.passed,
        }


def verify_single(r: int) -> VerificationReport:
    """Run every check for one degree."""
    if r < 1:
        raise ValueError("degree must be at least 1")
    phi = phi_matrix(r)
    _, phi_sym = sym_quotient(r)
    preds = predicted_bounds(r)

    mults = {}
    sums = {}
    if r % 2:
        geo, alg = eigen_multiplicity(phi, 0)
        mults["m_phi_0"] = MultiplicityCheck(preds["m_phi_0"], geo, alg)
        geo, alg = eigen_multiplicity(phi_sym, 0)
        mults["m_phi_sym_0"] = MultiplicityCheck(preds["m_phi_sym_0"], geo, alg)
        od = odd_case_dims(r)
        dims = {
            "dim_W": {
                "formula": od["formula"],
                "computed": od["dim_W"],
                "residue_count": od["count"],
            },
            "dim_W_sym": {
                "formula": od["formula_sym"],
                "computed": od["dim_W_sym"],
                "residue_count": od["count_sym"],
            },
        }
    else:
        pairs = [
            ("m_phi_plus1", phi, 1),
            ("m_phi_minus1", phi, -1),
            ("m_phi_sym_plus1", phi_sym, 1),
            ("m_phi_sym_minus1", phi_sym, -1),
        ]
        for key, mat, lam in pairs:
            geo, alg = eigen_multiplicity(mat, lam)
            mults[key] = MultiplicityCheck(preds[key], geo, alg)
        sums["m_phi_pm_sum"] = {
            "predicted": preds["m_phi_pm_sum"],
            "computed": mults["m_phi_plus1"].geometric
            + mults["m_phi_minus1"].geometric,
        }
        sums["m_phi_sym_pm_sum"] = {
            "predicted": preds["m_phi_sym_pm_sum"],
            "computed": mults["m_phi_sym_plus1"].geometric
            + mults["m_phi_sym_minus1"].geometric,
        }
        dims = eigenspace_dims(r)

    symmetric, squarefree = check_diagonalizability(r)
    annihilation = check_annihilation_identities(r)

    return VerificationReport(
        r=r,
        parity=ODD if r % 2 else EVEN,
        multiplicities=mults,
        sum_checks=sums,
        symmetry_identity=symmetric,
        minpoly_squarefree=squarefree,
        dims=dims,
        annihilation=annihilation,
    )


def verify_range(r_min: int, r_max: int) -> list:
    """Reports for every degree in [r_min, r_max], in order."""
    if not 1 <= r_min <= r_max:
        raise ValueError(f"need 1 <= r_min <= r_max, got {r_min}..{r_max}")
    return [verify_single(r) for r in range(r_min, r_max + 1)]
