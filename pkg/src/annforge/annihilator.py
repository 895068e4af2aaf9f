"""Annihilators of local encodings: the principal generator and friends.

Gate lifts h_i recover gate values through the encoding (h_i composed with
the map equals y_i); the generator of the annihilator ideal is
h = z_{n+s+1} - h_s + beta, monic of degree 1 in the last variable.  The
brute-force degree-bounded kernel search is exact linear algebra over the
coefficient field and returns certificate vectors, not probabilistic claims.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import config
from .circuit import expand
from .encoding import LocalEncoding, PolynomialMap, compose_polynomial
from .errors import (
    DecompositionMismatchError,
    NotAnAnnihilatorError,
    SearchSpaceTooLargeError,
)
from .poly import MONOMIAL_ONE, Monomial, Polynomial


@dataclass(frozen=True)
class AnnihilatorCertificate:
    """Principal generator h plus the gate lifts it was assembled from.

    lift_gate_count is the size of the straight-line program implied by the
    synthesis (shared subexpressions counted once), kept to witness the
    linear-size claim; the lifts themselves are stored canonically as
    polynomials.
    """

    h: Polynomial
    gate_lifts: tuple[Polynomial, ...]
    lift_gate_count: int
    encoding: LocalEncoding


def synthesize_gate_lifts(enc: LocalEncoding) -> tuple[tuple[Polynomial, ...], int]:
    """Lift polynomials h_1..h_s over z_1..z_{n+s} and the straight-line
    gate count of the synthesis.

    An add gate k with children u, w yields h_k = z_{n+k} + Lhat(u) + Lhat(w);
    a mul gate yields h_k = z_{n+k} + Lhat(u)*Lhat(w), where Lhat maps a
    const gate to its constant, input gate i to z_i + alpha_i, and the j-th
    internal gate to h_j.
    """
    f = enc.map.field
    circuit = enc.circuit
    n = enc.n
    gate_count = 0

    # Lhat per circuit gate, with the straight-line cost of first computing it.
    lhat: dict[int, Polynomial] = {}
    shifted_input_cost: dict[int, int] = {}
    position = {gid: j for j, gid in enumerate(circuit.internal_order, start=1)}

    def child_poly(gid: int) -> Polynomial:
        nonlocal gate_count
        gate = circuit.gates[gid]
        if gid in lhat:
            return lhat[gid]
        if gate.op == "const":
            p = Polynomial.constant(f, gate.value)
        elif gate.op == "input":
            p = Polynomial.variable(f, gate.var) + Polynomial.constant(f, enc.alpha[gate.var])
            if not f.is_zero(enc.alpha[gate.var]) and gate.var not in shifted_input_cost:
                shifted_input_cost[gate.var] = 1
                gate_count += 1
        else:
            raise AssertionError("internal children are lifted before use")
        lhat[gid] = p
        return p

    lifts: list[Polynomial] = []
    for gid in circuit.internal_order:
        gate = circuit.gates[gid]
        k = position[gid]
        zvar = Polynomial.variable(f, n + k - 1)
        left = child_poly(gate.left)
        right = child_poly(gate.right)
        if gate.op == "add":
            h_k = zvar + left + right
            gate_count += 2
        else:
            h_k = zvar + left * right
            gate_count += 2
        lhat[gid] = h_k
        lifts.append(h_k)

    budget = config.LIFT_GATES_PER_STEP * enc.s + config.LIFT_GATES_SLACK
    assert gate_count <= budget, f"synthesis used {gate_count} gates, budget {budget}"
    return tuple(lifts), gate_count


def principal_generator(enc: LocalEncoding) -> AnnihilatorCertificate:
    """h = z_{n+s+1} - h_s + beta, the generator of the annihilator ideal."""
    f = enc.map.field
    lifts, gate_count = synthesize_gate_lifts(enc)
    last = Polynomial.variable(f, enc.n + enc.s)
    h = last - lifts[-1] + Polynomial.constant(f, enc.beta)
    gate_count += 2  # subtract h_s, add beta
    return AnnihilatorCertificate(
        h=h, gate_lifts=lifts, lift_gate_count=gate_count, encoding=enc
    )


def verify_annihilates(p: Polynomial, pmap: PolynomialMap) -> bool:
    """Exact decision of p o map = 0."""
    return compose_polynomial(pmap, p).is_zero()


@dataclass(frozen=True)
class Decomposition:
    f_shifted: Polynomial  # f(z_1 + alpha_1, ..., z_n + alpha_n)
    g: Polynomial  # h - z_{n+s+1} + f_shifted - beta, in <z_{n+1}..z_{n+s}>


def decompose(cert: AnnihilatorCertificate, term_budget: int | None = None) -> Decomposition:
    """Split h into its circuit part and gate-variable error term, verifying
    the structural claims (g in <z_{n+1},...,z_{n+s}>, and the restriction of
    h at z_{n+1}=...=z_{n+s}=0 equals z_{n+s+1} - f_shifted + beta)."""
    enc = cert.encoding
    f = enc.map.field
    n, s = enc.n, enc.s
    circuit_poly = expand(enc.circuit, term_budget)
    shift = {i: Polynomial.variable(f, i) + Polynomial.constant(f, enc.alpha[i])
             for i in range(n)}
    f_shifted = circuit_poly.substitute(shift)
    last = Polynomial.variable(f, n + s)
    g = cert.h - last + f_shifted - Polynomial.constant(f, enc.beta)

    zero = Polynomial.zero(f)
    kill_gate_vars = {n + j: zero for j in range(s)}
    if not g.substitute(kill_gate_vars).is_zero():
        raise DecompositionMismatchError("g does not vanish at z_{n+1}=...=z_{n+s}=0")
    restricted = cert.h.substitute(kill_gate_vars)
    expected = last - f_shifted + Polynomial.constant(f, enc.beta)
    if restricted != expected:
        raise DecompositionMismatchError("restriction of h has the wrong shape")
    return Decomposition(f_shifted=f_shifted, g=g)


def count_monomials(n_vars: int, max_degree: int) -> int:
    return comb(n_vars + max_degree, max_degree)


def monomials_up_to(n_vars: int, max_degree: int) -> list[Monomial]:
    """All monomials of total degree <= max_degree, ascending canonical order."""
    out: list[Monomial] = []

    def rec(var: int, remaining: int, current: dict[int, int]):
        out.append(Monomial.of(current))
        if remaining == 0:
            return
        for v in range(var, n_vars):
            current[v] = current.get(v, 0) + 1
            rec(v, remaining - 1, current)
            current[v] -= 1
            if current[v] == 0:
                del current[v]

    rec(0, max_degree, {})
    uniq = sorted(set(out), key=lambda m: m.sort_key)
    return uniq


def annihilator_basis_search(
    pmap: PolynomialMap, max_total_degree: int, ceiling: int | None = None
) -> list[Polynomial]:
    """Basis of the degree-bounded annihilator space by exact kernel search.

    Candidate polynomials of total degree <= D over the out_len output
    variables are mapped linearly to their composition with the map; the
    kernel of that coefficient map is computed by exact Gaussian elimination
    over the field.  Every returned polynomial composes to zero by
    construction (certificates, not samples).
    """
    if max_total_degree < 0:
        raise ValueError("max_total_degree must be >= 0")
    limit = config.monomial_ceiling(ceiling)
    n_cols = count_monomials(pmap.out_len, max_total_degree)
    if n_cols > limit:
        raise SearchSpaceTooLargeError(
            f"{n_cols} candidate monomials exceed ceiling {limit}"
        )
    f = pmap.field
    candidates = monomials_up_to(pmap.out_len, max_total_degree)

    # Column j = coefficient vector of candidate_j composed with the map.
    columns: list[dict[Monomial, object]] = []
    row_index: dict[Monomial, int] = {}
    for mono in candidates:
        image = compose_polynomial(pmap, Polynomial(f, {mono: f.one}))
        col = {}
        for m, c in image.iter_terms():
            if m not in row_index:
                row_index[m] = len(row_index)
            col[row_index[m]] = c
        columns.append(col)

    n_rows = len(row_index)
    # Dense matrix over the field; desk scale keeps this small.
    matrix = [[f.zero] * n_cols for _ in range(n_rows)]
    for j, col in enumerate(columns):
        for i, c in col.items():
            matrix[i][j] = c

    kernel = _kernel_basis(matrix, n_rows, n_cols, f)
    basis = []
    for vec in kernel:
        terms = {candidates[j]: c for j, c in enumerate(vec) if not f.is_zero(c)}
        basis.append(Polynomial(f, terms))
    return basis


def _kernel_basis(matrix, n_rows: int, n_cols: int, f) -> list[list]:
    """Kernel of a dense matrix by reduced row echelon form over the field."""
    pivots: list[int] = []
    row = 0
    for col in range(n_cols):
        pivot = next(
            (r for r in range(row, n_rows) if not f.is_zero(matrix[r][col])), None
        )
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        inv = f.inv(matrix[row][col])
        matrix[row] = [f.mul(x, inv) for x in matrix[row]]
        for r in range(n_rows):
            if r != row and not f.is_zero(matrix[r][col]):
                factor = matrix[r][col]
                matrix[r] = [
                    f.sub(x, f.mul(factor, y)) for x, y in zip(matrix[r], matrix[row])
                ]
        pivots.append(col)
        row += 1
        if row == n_rows:
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = [f.zero] * n_cols
        vec[free] = f.one
        for r, pc in enumerate(pivots):
            vec[pc] = f.neg(matrix[r][free])
        basis.append(vec)
    return basis


def extract_hard_multiple(p: Polynomial, enc: LocalEncoding) -> Polynomial:
    """Recover a multiple of f(z) - beta from an annihilator.

    Applies z_i -> z_i - alpha_i for the input variables and z_i -> w*z_i for
    the gate/output variables, then returns the coefficient of the minimal
    w-power (the exact replacement for the interpolation argument).
    """
    if p.is_zero():
        raise NotAnAnnihilatorError("zero polynomial")
    if not verify_annihilates(p, enc.map):
        raise NotAnAnnihilatorError("polynomial does not annihilate the encoding")
    f = enc.map.field
    n = enc.n
    w = enc.out_len  # fresh variable id, one past the z block
    subst: dict[int, Polynomial] = {}
    for i in range(n):
        subst[i] = Polynomial.variable(f, i) - Polynomial.constant(f, enc.alpha[i])
    for i in range(n, enc.out_len):
        subst[i] = Polynomial.monomial(f, f.one, {w: 1, i: 1})
    image = p.substitute(subst)
    min_power = min(m.degree_in(w) for m, _ in image.iter_terms())
    return image.coefficient_in(w, min_power)
