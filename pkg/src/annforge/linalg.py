"""Polynomial matrices: Jacobians, rank estimation, Sylvester resultants.

Rank over the function field is estimated by evaluating the matrix at
random points of F_p (sound: never exceeds the true rank; complete with
probability governed by Schwartz-Zippel).  Exact symbolic rank and
determinants use fraction-free elimination / memoized cofactor expansion
behind small-size guards; resultants in this artifact only arise at desk
scale.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .errors import MatrixTooLargeError
from .fields import Field, PrimeField
from .poly import Polynomial


@dataclass(frozen=True)
class PolyMatrix:
    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("empty matrix")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValueError("ragged matrix")
        field = self.entries[0][0].field
        for row in self.entries:
            for p in row:
                if p.field != field:
                    raise ValueError("entries must share one field")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def field(self) -> Field:
        return self.entries[0][0].field

    def variables(self) -> set[int]:
        out: set[int] = set()
        for row in self.entries:
            for p in row:
                out |= p.variables()
        return out

    def max_entry_degree(self) -> int:
        return max(p.degree() for row in self.entries for p in row)


def jacobian(polys: list[Polynomial], variables: list[int]) -> PolyMatrix:
    """Matrix of partial derivatives: entry (i, j) = d polys[i] / d vars[j]."""
    return PolyMatrix(
        tuple(tuple(p.partial_derivative(v) for v in variables) for p in polys)
    )


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    """In-place Gaussian elimination over F_p."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if rows[r][col] % p != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col] % p, -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(n_rows):
            if r != rank and rows[r][col] % p:
                factor = rows[r][col]
                rows[r] = [(x - factor * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def _value_mod_p(value, p: int) -> int:
    if isinstance(value, Fraction):
        den = value.denominator % p
        if den == 0:
            raise ZeroDivisionError("coefficient denominator divisible by p")
        return value.numerator * pow(den, -1, p) % p
    return int(value) % p


def rank_random_eval(
    matrix: PolyMatrix, trials: int = config.DEFAULT_TRIALS,
    p: int = config.DEFAULT_PRIME, seed: int = 0,
) -> int:
    """Max over trials of the rank of the matrix evaluated at uniform random
    points of F_p.  Never exceeds the true rank; equal with high probability."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    field = matrix.field
    if isinstance(field, PrimeField):
        p = field.p  # evaluate natively; a foreign modulus would be unsound
    else:
        PrimeField(p)  # validates primality
    rng = random.Random(seed)
    variables = sorted(matrix.variables())
    best = 0
    for _ in range(trials):
        point = {v: rng.randrange(p) for v in variables}
        rows = [
            [_value_mod_p(entry.evaluate(point), p) for entry in row]
            for row in matrix.entries
        ]
        best = max(best, _rank_mod_p(rows, p))
    return best


def rank_exact(matrix: PolyMatrix, size_limit: int = config.DET_SIZE_LIMIT) -> int:
    """Exact symbolic rank by fraction-free (Bareiss-style) elimination on
    the polynomial entries; guarded for certification-scale inputs only."""
    if max(matrix.rows, matrix.cols) > size_limit:
        raise MatrixTooLargeError(
            f"{matrix.rows}x{matrix.cols} exceeds exact-rank guard {size_limit}"
        )
    f = matrix.field
    rows = [list(r) for r in matrix.entries]
    n_rows, n_cols = matrix.rows, matrix.cols
    rank = 0
    prev = Polynomial.constant(f, 1)
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if not rows[r][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv = rows[rank][col]
        for r in range(rank + 1, n_rows):
            for c in range(n_cols):
                if c == col:
                    continue
                num = rows[r][c] * piv - rows[r][col] * rows[rank][c]
                q = num.exact_divide(prev)
                assert q is not None, "Bareiss division must be exact"
                rows[r][c] = q
            rows[r][col] = Polynomial.zero(f)
        prev = piv
        rank += 1
        if rank == n_rows:
            break
    return rank


def trdeg_lower_bound(
    polys: list[Polynomial], variables: list[int] | None = None,
    trials: int = config.DEFAULT_TRIALS, p: int = config.DEFAULT_PRIME, seed: int = 0,
) -> int:
    """Rank of the Jacobian at random points: a transcendence-degree lower
    bound in any characteristic, exact over characteristic zero whp."""
    if variables is None:
        union: set[int] = set()
        for q in polys:
            union |= q.variables()
        variables = sorted(union)
    if not variables:
        return 0
    return rank_random_eval(jacobian(polys, variables), trials=trials, p=p, seed=seed)


# -- Sylvester resultants -----------------------------------------------------


def sylvester(f: Polynomial, g: Polynomial, var: int) -> PolyMatrix:
    """The (n+m) x (n+m) Sylvester matrix of f and g in ``var`` (n = deg_var f,
    m = deg_var g): first m columns from f's coefficients, last n from g's."""
    n = f.degree_in(var)
    m = g.degree_in(var)
    if n == 0 and m == 0:
        raise ValueError("both polynomials are constant in the variable")
    field = f.field
    fc = f.coefficients_in(var)  # index k -> coefficient of var^k
    gc = g.coefficients_in(var)
    size = n + m
    zero = Polynomial.zero(field)
    entries = [[zero] * size for _ in range(size)]
    for j in range(m):  # column j: coefficients of var^{m-1-j} * f
        for k in range(n + 1):
            entries[j + n - k][j] = fc[k]
    for j in range(n):  # column m+j: coefficients of var^{n-1-j} * g
        for k in range(m + 1):
            entries[j + m - k][m + j] = gc[k]
    return PolyMatrix(tuple(tuple(row) for row in entries))


def determinant(matrix: PolyMatrix, size_limit: int = config.DET_SIZE_LIMIT) -> Polynomial:
    """Exact determinant by cofactor expansion along the first rows, memoized
    on column subsets; guarded size."""
    if matrix.rows != matrix.cols:
        raise ValueError("determinant of a non-square matrix")
    if matrix.rows > size_limit:
        raise MatrixTooLargeError(f"size {matrix.rows} exceeds guard {size_limit}")
    f = matrix.field
    entries = matrix.entries
    cache: dict[tuple[int, ...], Polynomial] = {}

    def minor(cols: tuple[int, ...]) -> Polynomial:
        if not cols:
            return Polynomial.constant(f, 1)
        if cols in cache:
            return cache[cols]
        row = matrix.rows - len(cols)
        acc = Polynomial.zero(f)
        for idx, col in enumerate(cols):
            entry = entries[row][col]
            if entry.is_zero():
                continue
            rest = cols[:idx] + cols[idx + 1:]
            sub = entry * minor(rest)
            acc = acc + sub if idx % 2 == 0 else acc - sub
        cache[cols] = acc
        return acc

    return minor(tuple(range(matrix.cols)))


def resultant(f: Polynomial, g: Polynomial, var: int,
              size_limit: int = config.DET_SIZE_LIMIT) -> Polynomial:
    """det of the Sylvester matrix; zero iff f and g share a factor involving
    ``var``.  The result does not involve ``var``."""
    return determinant(sylvester(f, g, var), size_limit)


def resultant_with_cofactors(
    f: Polynomial, g: Polynomial, var: int, size_limit: int = config.DET_SIZE_LIMIT
) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(res, u, v) with u*f + v*g = res, deg_var u < deg_var g and
    deg_var v < deg_var f.

    Obtained from the adjugate column of the Sylvester matrix (Cramer), so
    the identity holds even when res = 0.
    """
    n = f.degree_in(var)
    m = g.degree_in(var)
    mat = sylvester(f, g, var)
    if mat.rows > size_limit:
        raise MatrixTooLargeError(f"size {mat.rows} exceeds guard {size_limit}")
    field = f.field
    res = determinant(mat, size_limit)
    size = n + m
    last = size - 1

    def drop(rows_omit: int, cols_omit: int) -> PolyMatrix:
        sub = tuple(
            tuple(p for j, p in enumerate(row) if j != cols_omit)
            for i, row in enumerate(mat.entries)
            if i != rows_omit
        )
        return PolyMatrix(sub)

    # c_i = adj(S)[i, last] = (-1)^(last+i) * minor(S, row=last, col=i):
    # S c = res * e_last, i.e. u*f + v*g has var-coefficient vector res*e_last.
    coeffs: list[Polynomial] = []
    if size == 1:
        coeffs.append(Polynomial.constant(field, 1))
    else:
        for i in range(size):
            mnr = determinant(drop(last, i), size_limit)
            coeffs.append(mnr if (last + i) % 2 == 0 else -mnr)

    u = Polynomial.zero(field)
    for j in range(m):  # column j held var^{m-1-j} * f
        u = u + coeffs[j] * Polynomial.monomial(field, field.one, {var: m - 1 - j})
    v = Polynomial.zero(field)
    for j in range(n):
        v = v + coeffs[m + j] * Polynomial.monomial(field, field.one, {var: n - 1 - j})
    return res, u, v
