"""Local encodings of circuits, padding, and parallel stretch amplification.

A local encoding turns a circuit together with a claimed evaluation
``circuit(alpha) = beta`` into a degree-<=2 polynomial map on n+s seed
variables (x1..xn for the inputs, y1..ys for the internal gates) with
n+s+1 outputs: the input block x_i - alpha_i, one output per internal gate
relating its y-variable to its children, and the output block y_s - beta.
The system {outputs = 0} is satisfiable iff the claim holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .circuit import Circuit
from .errors import CircuitError, SupportOverflowError
from .fields import FieldValue
from .poly import Namespace, Polynomial


@dataclass(frozen=True)
class PolynomialMap:
    """Tuple of polynomials over the first ``seed_len`` variable ids."""

    outputs: tuple[Polynomial, ...]
    seed_len: int
    seed_names: tuple[str, ...]

    def __post_init__(self):
        if not self.outputs:
            raise ValueError("a polynomial map needs at least one output")
        if len(self.seed_names) != self.seed_len:
            raise ValueError("seed_names length must equal seed_len")
        for i, p in enumerate(self.outputs):
            high = [v for v in p.variables() if v >= self.seed_len]
            if high:
                raise ValueError(f"output {i} uses non-seed variable ids {high}")
            if p.field != self.field:
                raise ValueError("outputs must share one field")

    @property
    def field(self):
        return self.outputs[0].field

    @property
    def out_len(self) -> int:
        return len(self.outputs)

    @property
    def stretch(self) -> int:
        return self.out_len - self.seed_len

    @cached_property
    def degree(self) -> int:
        return max(p.degree() for p in self.outputs)

    @property
    def seed_namespace(self) -> Namespace:
        return Namespace(self.seed_names)

    @property
    def output_namespace(self) -> Namespace:
        return Namespace.outputs(self.out_len)


@dataclass(frozen=True)
class BlockSpans:
    """Half-open index ranges of the three output blocks of a local encoding."""

    input: tuple[int, int]
    internal: tuple[int, int]
    output: tuple[int, int]


@dataclass(frozen=True)
class LocalEncoding:
    map: PolynomialMap
    circuit: Circuit
    alpha: tuple[FieldValue, ...]
    beta: FieldValue
    blocks: BlockSpans

    @property
    def n(self) -> int:
        return self.circuit.n_inputs

    @property
    def s(self) -> int:
        return self.circuit.size

    @property
    def out_len(self) -> int:
        return self.map.out_len


@dataclass(frozen=True)
class EncodingReport:
    seed_len: int
    out_len: int
    stretch: int
    degree: int
    max_formula_size: int


def local_encode(circuit: Circuit, alpha, beta) -> LocalEncoding:
    """Build the local encoding of ``circuit(alpha) = beta``.

    Output order: input block, internal block (in internal_order), output
    block.  The L-function sends a const gate to its constant, input gate i
    to x_i, and the j-th internal gate to y_j; constants therefore fold
    directly into the internal outputs.
    """
    f = circuit.field
    n = circuit.n_inputs
    s = circuit.size
    if len(alpha) != n:
        raise CircuitError(f"alpha has length {len(alpha)}, circuit has {n} inputs")
    if s == 0:
        raise CircuitError("cannot encode a circuit with no internal gates")
    alpha = tuple(f.normalize(a) for a in alpha)
    beta = f.normalize(beta)

    # L(gate) as a polynomial over the seed variables x1..xn, y1..ys.
    position = {gid: j for j, gid in enumerate(circuit.internal_order, start=1)}
    lfun: dict[int, Polynomial] = {}
    for gid, gate in enumerate(circuit.gates):
        if gate.op == "input":
            lfun[gid] = Polynomial.variable(f, gate.var)
        elif gate.op == "const":
            lfun[gid] = Polynomial.constant(f, gate.value)
        else:
            lfun[gid] = Polynomial.variable(f, n + position[gid] - 1)

    outputs: list[Polynomial] = []
    for i in range(n):
        outputs.append(Polynomial.variable(f, i) - Polynomial.constant(f, alpha[i]))
    for gid in circuit.internal_order:
        gate = circuit.gates[gid]
        child = lfun[gate.left] + lfun[gate.right] if gate.op == "add" \
            else lfun[gate.left] * lfun[gate.right]
        outputs.append(lfun[gid] - child)
    outputs.append(Polynomial.variable(f, n + s - 1) - Polynomial.constant(f, beta))

    names = tuple(circuit.input_names) + tuple(f"y{j}" for j in range(1, s + 1))
    pmap = PolynomialMap(outputs=tuple(outputs), seed_len=n + s, seed_names=names)
    return LocalEncoding(
        map=pmap,
        circuit=circuit,
        alpha=alpha,
        beta=beta,
        blocks=BlockSpans(input=(0, n), internal=(n, n + s), output=(n + s, n + s + 1)),
    )


def encoding_metrics(enc: LocalEncoding) -> EncodingReport:
    """Recompute the expected output shapes from (circuit, alpha, beta) and
    assert the stored map matches; any mismatch signals a construction bug."""
    rebuilt = local_encode(enc.circuit, enc.alpha, enc.beta)
    if rebuilt.map != enc.map:
        raise AssertionError("stored encoding differs from reconstruction")
    n, s = enc.n, enc.s
    m = enc.map
    assert m.seed_len == n + s, "seed length must be n+s"
    assert m.stretch == 1, "local encodings stretch by exactly 1"
    assert m.degree <= 2, "local encodings have degree <= 2"
    # Construction cost per output: one subtraction for the input/output
    # blocks, one subtraction plus one add/mul for the internal block.
    sizes = [1] * n + [2] * s + [1]
    assert max(sizes) <= 2
    return EncodingReport(
        seed_len=m.seed_len,
        out_len=m.out_len,
        stretch=m.stretch,
        degree=m.degree,
        max_formula_size=max(sizes),
    )


def pad(pmap: PolynomialMap, target_out_len: int) -> PolynomialMap:
    """Pad with fresh seed variables emitted verbatim as new outputs."""
    extra = target_out_len - pmap.out_len
    if extra < 0:
        raise ValueError(f"target {target_out_len} below out_len {pmap.out_len}")
    if extra == 0:
        return pmap
    taken = set(pmap.seed_names)
    fresh: list[str] = []
    i = 1
    while len(fresh) < extra:
        name = f"u{i}"
        if name not in taken:
            fresh.append(name)
        i += 1
    field = pmap.field
    new_vars = [Polynomial.variable(field, pmap.seed_len + j) for j in range(extra)]
    return PolynomialMap(
        outputs=pmap.outputs + tuple(new_vars),
        seed_len=pmap.seed_len + extra,
        seed_names=pmap.seed_names + tuple(fresh),
    )


def parallel_compose(pmap: PolynomialMap, copies: int) -> PolynomialMap:
    """Concatenate ``copies`` disjoint-variable copies (block-major: all of
    copy 1's outputs, then copy 2's, ...).  Copy k's seed variable ``v`` is
    renamed ``v_k``."""
    if copies < 1:
        raise ValueError("copies must be >= 1")
    ell = pmap.seed_len
    outputs: list[Polynomial] = []
    names: list[str] = []
    for k in range(copies):
        offset = k * ell
        shift = {v: v + offset for v in range(ell)}
        outputs.extend(p.rename_variables(shift) for p in pmap.outputs)
        names.extend(f"{name}_{k + 1}" for name in pmap.seed_names)
    return PolynomialMap(
        outputs=tuple(outputs),
        seed_len=copies * ell,
        seed_names=tuple(names),
    )


def compose_polynomial(pmap: PolynomialMap, p: Polynomial) -> Polynomial:
    """p composed with the map: output variable i-1 (id) becomes outputs[i-1];
    the result is a polynomial over the seed variables."""
    overflow = [v for v in p.variables() if v >= pmap.out_len]
    if overflow:
        raise SupportOverflowError(
            f"polynomial uses variable ids {overflow} >= out_len {pmap.out_len}"
        )
    subst = {v: pmap.outputs[v] for v in p.variables()}
    return p.compose(subst)
