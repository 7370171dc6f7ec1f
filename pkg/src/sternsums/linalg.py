"""Exact linear algebra over the rationals.

Dense matrices with int/Fraction entries and integer-coefficient polynomials.
Rank and kernels come from fraction-free (Bareiss) elimination, characteristic
polynomials from the division-free Samuelson-Berkowitz recursion, and minimal
polynomials from Krylov linear dependence with an explicit annihilation
certificate.  No floating point anywhere.

All functions are pure; matrices and polynomials are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class NonSquareMatrixError(ValueError):
    """Operation is defined only for square matrices."""


class InexactDivisionError(ArithmeticError):
    """A division that was promised to be exact left a remainder.

    When raised from divide_out this signals an upstream multiplicity error,
    not a recoverable condition.
    """


def _normalize_entry(x: Rational) -> Rational:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"exact rational required, got {type(x).__name__}")


class RationalMatrix:
    """Dense matrix of exact rationals, immutable once built.

    Entries are Python ints where possible and Fraction otherwise; all
    arithmetic is exact.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[Rational]]):
        data = tuple(tuple(_normalize_entry(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("rows have unequal lengths")
        self.rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def vstack(cls, mats: Sequence["RationalMatrix"]) -> "RationalMatrix":
        if not mats:
            raise ValueError("nothing to stack")
        if any(m.ncols != mats[0].ncols for m in mats):
            raise ValueError("column counts differ")
        rows = []
        for m in mats:
            rows.extend(m.rows)
        return cls(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        return RationalMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        return RationalMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-a for a in row] for row in self.rows])

    def __mul__(self, scalar: Rational) -> "RationalMatrix":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return RationalMatrix([[a * scalar for a in row] for row in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions differ")
        cols = list(zip(*other.rows))
        return RationalMatrix(
            [[_dot(row, col) for col in cols] for row in self.rows]
        )

    def mat_vec(self, vec: Sequence[Rational]) -> list:
        if len(vec) != self.ncols:
            raise ValueError("vector length differs from column count")
        return [_dot(row, vec) for row in self.rows]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows)))

    def power(self, k: int) -> "RationalMatrix":
        if self.nrows != self.ncols:
            raise NonSquareMatrixError("matrix power needs a square matrix")
        if k < 0:
            raise ValueError("negative powers not supported")
        out = RationalMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def to_lists(self) -> list:
        return [list(row) for row in self.rows]

    def _require_same_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")

    def __repr__(self):
        return f"RationalMatrix({self.to_lists()!r})"


def _dot(a, b):
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------


def _as_int(c) -> int:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return int(c)
        raise ValueError(f"coefficient {c} is not an integer")
    raise TypeError(f"integer coefficient required, got {type(c).__name__}")


class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients.

    Coefficients are stored lowest degree first with trailing zeros stripped;
    the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [_as_int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls([c])

    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x: Rational) -> Rational:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_matrix(self, m: RationalMatrix) -> RationalMatrix:
        """Evaluate at a square matrix (Horner)."""
        if m.nrows != m.ncols:
            raise NonSquareMatrixError("polynomial evaluation needs a square matrix")
        n = m.nrows
        acc = RationalMatrix.zeros(n, n)
        for c in reversed(self.coeffs):
            acc = acc @ m
            if c:
                acc = acc + RationalMatrix.identity(n) * c
        return acc

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                term = xs if abs(c) == 1 else f"{abs(c)}*{xs}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# fraction-free elimination: rank and kernels
# ---------------------------------------------------------------------------


def _integer_rows_rowwise(m: RationalMatrix) -> list:
    """Integer copy of m obtained by scaling each row.

    Row scaling preserves rank and right kernel, which is all the elimination
    routines need.
    """
    out = []
    for row in m.rows:
        dens = [x.denominator for x in row if isinstance(x, Fraction)]
        if dens:
            l = math.lcm(*dens)
            out.append([int(x * l) for x in row])
        else:
            out.append(list(row))
    return out


def _bareiss_echelon(rows: list) -> tuple[list, list]:
    """Fraction-free row echelon form of an integer matrix (in place).

    Returns (pivot_rows, pivot_cols).  Every division in the Bareiss update is
    checked to be remainder-free; a failure would indicate memory corruption
    or a bug, hence the hard assert.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    prev = 1
    piv_cols = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        pivot_row = rows[r]
        pivot = pivot_row[c]
        for i in range(r + 1, nr):
            row_i = rows[i]
            factor = row_i[c]
            if factor:
                for j in range(c + 1, nc):
                    num = pivot * row_i[j] - factor * pivot_row[j]
                    q, rem = divmod(num, prev)
                    assert rem == 0, "Bareiss step produced an inexact division"
                    row_i[j] = q
            else:
                for j in range(c + 1, nc):
                    num = pivot * row_i[j]
                    q, rem = divmod(num, prev)
                    assert rem == 0, "Bareiss step produced an inexact division"
                    row_i[j] = q
            row_i[c] = 0
        prev = pivot
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    return rows[:r], piv_cols


def rank(m: RationalMatrix) -> int:
    """Exact rank via fraction-free elimination."""
    _, piv = _bareiss_echelon(_integer_rows_rowwise(m))
    return len(piv)


def nullity(m: RationalMatrix) -> int:
    return m.ncols - rank(m)


def kernel_basis(m: RationalMatrix) -> list:
    """Canonical basis of the right kernel.

    One vector per free column f, with entry 1 at f, zeros at the other free
    columns, and the pivot entries determined by back substitution.  This is
    the reduced-echelon kernel basis, so the output is deterministic
    regardless of pivoting order.
    """
    ech, piv_cols = _bareiss_echelon(_integer_rows_rowwise(m))
    nc = m.ncols
    piv_set = set(piv_cols)
    basis = []
    for f in range(nc):
        if f in piv_set:
            continue
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for i in range(len(piv_cols) - 1, -1, -1):
            p = piv_cols[i]
            row = ech[i]
            s = Fraction(0)
            for j in range(p + 1, nc):
                if row[j] and v[j]:
                    s += row[j] * v[j]
            v[p] = -s / row[p]
        basis.append(tuple(v))
    return basis


def solve_linear(rows: Sequence[Sequence[Rational]], rhs: Sequence[Rational]):
    """Exact solution of an (over)determined linear system, or None.

    Plain Gauss-Jordan over Fraction; meant for the small systems that show
    up in recurrence fitting.  Free variables are set to zero, so the output
    is deterministic.  Returns None when the system is inconsistent.
    """
    nr = len(rows)
    if nr == 0:
        return []
    nc = len(rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nr):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    for i in range(r, nr):
        if aug[i][nc]:
            return None
    sol = [Fraction(0)] * nc
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][nc]
    return sol


# ---------------------------------------------------------------------------
# characteristic polynomial (Samuelson-Berkowitz, division free)
# ---------------------------------------------------------------------------


def _require_square(m: RationalMatrix):
    if m.nrows != m.ncols:
        raise NonSquareMatrixError(f"square matrix required, got {m.nrows}x{m.ncols}")


def _integer_rows_uniform(m: RationalMatrix) -> tuple[list, int]:
    """(integer rows of d*m, d) for the smallest uniform denominator d."""
    dens = [x.denominator for row in m.rows for x in row if isinstance(x, Fraction)]
    d = math.lcm(*dens) if dens else 1
    if d == 1:
        return [list(row) for row in m.rows], 1
    return [[int(x * d) for x in row] for row in m.rows], d


def _berkowitz(rows: list) -> list:
    """Characteristic polynomial of an integer matrix, highest degree first."""
    n = len(rows)
    poly = [1, -rows[0][0]]
    for k in range(1, n):
        row_k = rows[k]
        sub = [rows[i][:k] for i in range(k)]
        vec = [rows[i][k] for i in range(k)]
        toep = [1, -row_k[k]]
        for step in range(k):
            s = 0
            for j in range(k):
                rj = row_k[j]
                if rj and vec[j]:
                    s += rj * vec[j]
            toep.append(-s)
            if step < k - 1:
                vec = [_dot(srow, vec) for srow in sub]
        new = []
        top = len(poly) - 1
        for i in range(k + 2):
            s = 0
            lo = i - (len(toep) - 1)
            if lo < 0:
                lo = 0
            hi = i if i < top else top
            for j in range(lo, hi + 1):
                t = toep[i - j]
                if t:
                    p = poly[j]
                    if p:
                        s += t * p
            new.append(s)
        poly = new
    return poly


def _rescale_poly_coeffs(coeffs_low_first: list, den: int, label: str) -> list:
    """Map p(x) for d*M to the polynomial for M: coeff k scales by d**(k-deg)."""
    deg = len(coeffs_low_first) - 1
    out = []
    for k, c in enumerate(coeffs_low_first):
        power = deg - k
        q, rem = divmod(c, den**power)
        if rem:
            raise InexactDivisionError(
                f"{label} of this rational matrix has non-integer coefficients"
            )
        out.append(q)
    return out


def charpoly(m: RationalMatrix) -> IntPolynomial:
    """Monic characteristic polynomial det(xI - m), exactly.

    Division-free Berkowitz recursion on an integer scaling of m.  Raises
    InexactDivisionError if the true characteristic polynomial is not
    integral (cannot happen for integer matrices).
    """
    _require_square(m)
    rows, den = _integer_rows_uniform(m)
    coeffs = list(reversed(_berkowitz(rows)))
    if den != 1:
        coeffs = _rescale_poly_coeffs(coeffs, den, "characteristic polynomial")
    return IntPolynomial(coeffs)


# ---------------------------------------------------------------------------
# minimal polynomial (Krylov)
# ---------------------------------------------------------------------------


def _poly_apply_to_unit(coeffs: Sequence[int], rows: list, i: int) -> list:
    """p(A) e_i over the integers, by Horner on vectors."""
    n = len(rows)
    w = [0] * n
    for c in reversed(coeffs):
        if any(w):
            w = [_dot(row, w) for row in rows]
        if c:
            w[i] += c
    return w


def _vector_minpoly(rows: list, v: list) -> list:
    """Monic minimal polynomial of the vector v under the integer matrix.

    Krylov vectors are reduced incrementally against a growing echelon basis;
    each stored vector is content-normalized so the integer arithmetic stays
    small.  Returns integer coefficients, lowest degree first.
    """
    n = len(rows)
    basis = []  # (pivot index, primitive int vector, combo over raw Krylov vecs)
    raw = list(v)
    d = 0
    while d <= n:
        w = [Fraction(x) for x in raw]
        combo = [Fraction(0)] * d + [Fraction(1)]
        for piv, bvec, bcombo in basis:
            cw = w[piv]
            if cw:
                f = cw / bvec[piv]
                for j in range(n):
                    if bvec[j]:
                        w[j] -= f * bvec[j]
                for j in range(len(bcombo)):
                    if bcombo[j]:
                        combo[j] -= f * bcombo[j]
        if not any(w):
            assert combo[-1] == 1
            out = []
            for c in combo:
                if c.denominator != 1:
                    raise InexactDivisionError(
                        "minimal polynomial of this rational matrix is not integral"
                    )
                out.append(int(c))
            return out
        dens = [x.denominator for x in w]
        l = math.lcm(*dens)
        ints = [int(x * l) for x in w]
        g = math.gcd(*ints)
        ints = [x // g for x in ints]
        factor = Fraction(l, g)
        combo = [c * factor for c in combo]
        pivot = next(j for j in range(n) if ints[j])
        basis.append((pivot, ints, combo))
        raw = [_dot(row, raw) for row in rows]
        d += 1
    raise AssertionError("no Krylov dependence by degree n; unreachable")


def _poly_mul_int(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def minpoly(m: RationalMatrix) -> IntPolynomial:
    """Monic minimal polynomial, with the annihilation certificate built in.

    Runs the cyclic-vector construction over every basis vector: the minimal
    polynomial of p(A) e_i extends p to lcm(p, minpoly of e_i) exactly, and
    the loop terminates only once p(A) kills the whole basis, so the result
    annihilates the matrix by construction.
    """
    _require_square(m)
    n = m.nrows
    rows, den = _integer_rows_uniform(m)
    p = [1]
    for i in range(n):
        w = _poly_apply_to_unit(p, rows, i)
        if any(w):
            q = _vector_minpoly(rows, w)
            p = _poly_mul_int(p, q)
            if len(p) == n + 1:
                break
    if den != 1:
        p = _rescale_poly_coeffs(p, den, "minimal polynomial")
    return IntPolynomial(p)


# ---------------------------------------------------------------------------
# multiplicities, squarefreeness, exact division
# ---------------------------------------------------------------------------


def _root_multiplicity(p: IntPolynomial, lam: Rational) -> IntPolynomial | None:
    """One synthetic-division step p / (x - lam) if lam is a root, else None."""
    if p.evaluate(lam) != 0:
        return None
    out = []
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * lam + c
        out.append(acc)
    # out currently holds the Horner prefix values; the quotient drops the last
    quot = list(reversed(out[:-1]))
    return IntPolynomial(quot)


def eigen_multiplicity(m: RationalMatrix, lam: Rational) -> tuple[int, int]:
    """(geometric, algebraic) multiplicity of the rational eigenvalue lam.

    Geometric multiplicity is the nullity of m - lam*I; algebraic is the exact
    power of (x - lam) in the characteristic polynomial, found by repeated
    exact division.
    """
    _require_square(m)
    shifted = m - RationalMatrix.identity(m.nrows) * lam
    geo = nullity(shifted)
    p = charpoly(m)
    alg = 0
    while True:
        q = _root_multiplicity(p, lam)
        if q is None:
            break
        p = q
        alg += 1
        if p.degree() <= 0:
            break
    return geo, alg


def _pseudo_rem(a: Sequence[int], b: Sequence[int]) -> list:
    """Pseudo-remainder of integer coefficient lists (lowest first)."""
    a = [c for c in a]
    while a and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        da = len(a) - 1
        a = [lb * c for c in a]
        off = da - db
        for i, bc in enumerate(b):
            a[off + i] -= la * bc
        while a and a[-1] == 0:
            a.pop()
    return a


def polynomial_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Gcd over Z[x] by the primitive polynomial remainder sequence.

    Normalized primitive with positive leading coefficient (times the gcd of
    the contents).
    """
    if p.is_zero() and q.is_zero():
        return IntPolynomial()
    if p.is_zero():
        return q.primitive() * q.content()
    if q.is_zero():
        return p.primitive() * p.content()
    c = math.gcd(p.content(), q.content())
    a = list(p.primitive().coeffs)
    b = list(q.primitive().coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = IntPolynomial(_pseudo_rem(a, b)).primitive()
        a, b = b, list(r.coeffs)
    return IntPolynomial(a).primitive() * c


def is_squarefree(p: IntPolynomial) -> bool:
    """True iff gcd(p, p') is constant."""
    if p.is_zero():
        raise ValueError("squarefreeness is undefined for the zero polynomial")
    if p.degree() == 0:
        return True
    return polynomial_gcd(p, p.derivative()).degree() == 0


def _divmod_exact(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """p / q when the division is exact over Z[x]; raises otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p.coeffs]
    qc = q.coeffs
    dq = len(qc) - 1
    lq = qc[-1]
    quot = [Fraction(0)] * max(len(rem) - dq, 0)
    while len(rem) - 1 >= dq and any(rem):
        while rem and not rem[-1]:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        k = len(rem) - 1 - dq
        f = rem[-1] / lq
        quot[k] = f
        for i, c in enumerate(qc):
            rem[k + i] -= f * c
    if any(rem):
        raise InexactDivisionError(f"({p}) is not divisible by ({q})")
    try:
        return IntPolynomial(quot)
    except ValueError as exc:
        raise InexactDivisionError(
            f"({p}) / ({q}) has non-integer coefficients"
        ) from exc


def divide_out(p: IntPolynomial, q: IntPolynomial, k: int) -> IntPolynomial:
    """p / q**k with an exactness check at every step.

    An inexact division raises InexactDivisionError: it means the caller's
    multiplicity bookkeeping is wrong, never that rounding is wanted.
    """
    if k < 0:
        raise ValueError("negative powers cannot be divided out")
    out = p
    for _ in range(k):
        out = _divmod_exact(out, q)
    return out
