"""Fan-in-2 arithmetic circuit DAGs: parsing, evaluation, expansion, metrics.

Gate ids are topological by construction: ids 0..n-1 are the variable
inputs, and every add/mul gate references strictly smaller ids.  Constants
are gates (input gates labeled by a field element), not edge weights.
internal_order is the definition order of the add/mul gates; the designated
output must be the last of them (degenerate circuits with no internal gates
are allowed so that metrics/evaluate work on bare references).

Circuit DSL::

    circuit <name>
    inputs x1 x2 ...
    g1 = add|mul <ref> <ref>    # ref: input, previous gate, or rational
    ...
    output g<k>

There is a JSON mirror with the same fields.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property

from . import config
from .errors import BudgetExceededError, CircuitError, ParseError
from .fields import QQ, Field, FieldValue, field_from_json
from .poly import Polynomial

_LITERAL_RE = re.compile(r"-?\d+(/\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Gate:
    op: str  # "input" | "const" | "add" | "mul"
    var: int | None = None
    value: FieldValue | None = None
    left: int | None = None
    right: int | None = None

    @staticmethod
    def input(var: int) -> "Gate":
        return Gate("input", var=var)

    @staticmethod
    def const(value: FieldValue) -> "Gate":
        return Gate("const", value=value)

    @staticmethod
    def add(left: int, right: int) -> "Gate":
        return Gate("add", left=left, right=right)

    @staticmethod
    def mul(left: int, right: int) -> "Gate":
        return Gate("mul", left=left, right=right)

    @property
    def is_internal(self) -> bool:
        return self.op in ("add", "mul")


@dataclass(frozen=True)
class Circuit:
    field: Field
    gates: tuple[Gate, ...]
    n_inputs: int
    output: int
    name: str = "circuit"
    input_names: tuple[str, ...] = ()

    def __post_init__(self):
        names = self.input_names or tuple(f"x{i}" for i in range(1, self.n_inputs + 1))
        object.__setattr__(self, "input_names", names)
        if len(names) != self.n_inputs:
            raise CircuitError("input_names length must match n_inputs")
        for i, g in enumerate(self.gates):
            if i < self.n_inputs:
                if g.op != "input" or g.var != i:
                    raise CircuitError(f"gate {i} must be input x{i + 1}")
            elif g.op == "input":
                raise CircuitError("input gates must occupy ids 0..n_inputs-1")
            if g.is_internal:
                if g.left >= i or g.right >= i or g.left < 0 or g.right < 0:
                    raise CircuitError(f"gate {i} references a non-earlier gate")
        if not 0 <= self.output < len(self.gates):
            raise CircuitError("output gate id out of range")
        order = self.internal_order
        if order and self.output != order[-1]:
            raise CircuitError("output must be the last internal gate")
        if not order and self.gates[self.output].is_internal:
            raise CircuitError("inconsistent internal ordering")

    @cached_property
    def internal_order(self) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.gates) if g.is_internal)

    @property
    def size(self) -> int:
        return len(self.internal_order)


@dataclass(frozen=True)
class CircuitMetrics:
    size: int
    depth: int
    degree_bound: int


def evaluate_circuit(circuit: Circuit, point) -> FieldValue:
    """Gate-by-gate exact evaluation at a point of length n_inputs."""
    if len(point) != circuit.n_inputs:
        raise CircuitError(f"expected {circuit.n_inputs} inputs, got {len(point)}")
    f = circuit.field
    vals: list[FieldValue] = []
    for g in circuit.gates:
        if g.op == "input":
            vals.append(f.normalize(point[g.var]))
        elif g.op == "const":
            vals.append(g.value)
        elif g.op == "add":
            vals.append(f.add(vals[g.left], vals[g.right]))
        else:
            vals.append(f.mul(vals[g.left], vals[g.right]))
    return vals[circuit.output]


def expand(circuit: Circuit, term_budget: int | None = None) -> Polynomial:
    """The polynomial computed by the circuit, by gate-order accumulation.

    Aborts with BudgetExceededError as soon as any intermediate polynomial
    exceeds the term budget; expansion is an oracle, not a scalable path.
    """
    budget = config.term_budget(term_budget)
    f = circuit.field
    polys: list[Polynomial] = []
    for i, g in enumerate(circuit.gates):
        if g.op == "input":
            p = Polynomial.variable(f, g.var)
        elif g.op == "const":
            p = Polynomial.constant(f, g.value)
        elif g.op == "add":
            p = polys[g.left] + polys[g.right]
        else:
            p = polys[g.left] * polys[g.right]
        if p.term_count() > budget:
            raise BudgetExceededError(
                f"gate {i}: {p.term_count()} terms exceeds budget {budget}"
            )
        polys.append(p)
    return polys[circuit.output]


def metrics(circuit: Circuit) -> CircuitMetrics:
    """size = internal gate count; depth = longest input-to-output path;
    degree bound by gate-wise propagation (add: max, mul: sum)."""
    depth = [0] * len(circuit.gates)
    degree = [0] * len(circuit.gates)
    for i, g in enumerate(circuit.gates):
        if g.op == "input":
            degree[i] = 1
        elif g.op == "const":
            degree[i] = 0
        elif g.op == "add":
            depth[i] = 1 + max(depth[g.left], depth[g.right])
            degree[i] = max(degree[g.left], degree[g.right])
        else:
            depth[i] = 1 + max(depth[g.left], depth[g.right])
            degree[i] = degree[g.left] + degree[g.right]
    return CircuitMetrics(
        size=circuit.size,
        depth=depth[circuit.output],
        degree_bound=degree[circuit.output],
    )


def random_circuit(
    n_inputs: int,
    size: int,
    seed: int,
    const_pool: tuple = (),
    field: Field = QQ,
) -> Circuit:
    """Reproducible pseudorandom fan-in-2 DAG: op uniform over {add, mul},
    operands uniform over all prior gates (inputs, consts, earlier gates)."""
    if size < 1:
        raise CircuitError("size must be >= 1")
    rng = random.Random(seed)
    gates = [Gate.input(i) for i in range(n_inputs)]
    for c in const_pool:
        gates.append(Gate.const(field.normalize(c)))
    for _ in range(size):
        op = rng.choice(("add", "mul"))
        left = rng.randrange(len(gates))
        right = rng.randrange(len(gates))
        gates.append(Gate(op, left=left, right=right))
    return Circuit(
        field=field,
        gates=tuple(gates),
        n_inputs=n_inputs,
        output=len(gates) - 1,
        name=f"random_{seed}",
    )


class CircuitBuilder:
    """Incremental construction helper; returns gate ids as references."""

    def __init__(self, field: Field = QQ, n_inputs: int = 0,
                 input_names: tuple[str, ...] | None = None, name: str = "circuit"):
        self.field = field
        self.name = name
        self.n_inputs = n_inputs
        self.input_names = tuple(input_names) if input_names else tuple(
            f"x{i}" for i in range(1, n_inputs + 1)
        )
        self.gates: list[Gate] = [Gate.input(i) for i in range(n_inputs)]
        self._const_ids: dict[FieldValue, int] = {}

    def input(self, i: int) -> int:
        if not 0 <= i < self.n_inputs:
            raise CircuitError(f"input index {i} out of range")
        return i

    def const(self, value) -> int:
        v = self.field.normalize(value)
        if v not in self._const_ids:
            self.gates.append(Gate.const(v))
            self._const_ids[v] = len(self.gates) - 1
        return self._const_ids[v]

    def add(self, a: int, b: int) -> int:
        self.gates.append(Gate.add(a, b))
        return len(self.gates) - 1

    def mul(self, a: int, b: int) -> int:
        self.gates.append(Gate.mul(a, b))
        return len(self.gates) - 1

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.mul(self.const(-1), b))

    def tree_reduce(self, op: str, operands: list[int]) -> int:
        """Left-deep binary tree of fan-in-2 ``op`` gates over the operands;
        a single operand adds no gate."""
        if op not in ("add", "mul"):
            raise CircuitError(f"unknown reduction op {op!r}")
        if not operands:
            raise CircuitError("tree_reduce over an empty operand list")
        acc = operands[0]
        for ref in operands[1:]:
            acc = self.add(acc, ref) if op == "add" else self.mul(acc, ref)
        return acc

    def build(self, output: int | None = None) -> Circuit:
        out = len(self.gates) - 1 if output is None else output
        return Circuit(
            field=self.field,
            gates=tuple(self.gates),
            n_inputs=self.n_inputs,
            output=out,
            name=self.name,
            input_names=self.input_names,
        )


def circuit_from_polynomial(p: Polynomial, n_vars: int, name: str = "poly") -> Circuit:
    """Term-by-term circuit for a polynomial (oracle/CLI helper, not a
    minimal construction)."""
    b = CircuitBuilder(p.field, n_vars, name=name)
    term_refs: list[int] = []
    for mono, coeff in p.terms():
        factors: list[int] = []
        if coeff != p.field.one or not mono.exps:
            factors.append(b.const(coeff))
        for v, e in mono.exps:
            factors.extend([b.input(v)] * e)
        term_refs.append(b.tree_reduce("mul", factors))
    if not term_refs:
        return b.build(b.const(0))
    return b.build(b.tree_reduce("add", term_refs))


# -- DSL ----------------------------------------------------------------------


def parse_circuit(text: str, field: Field = QQ) -> Circuit:
    """Parse the circuit DSL; definition order fixes internal_order."""
    name = "circuit"
    input_names: list[str] = []
    gate_ids: dict[str, int] = {}
    gates: list[Gate] = []
    const_ids: dict[FieldValue, int] = {}
    output_ref: str | None = None
    saw_inputs = False

    def resolve(ref: str, lineno: int) -> int:
        if _LITERAL_RE.fullmatch(ref):
            v = field.parse_value(ref)
            if v not in const_ids:
                gates.append(Gate.const(v))
                const_ids[v] = len(gates) - 1
            return const_ids[v]
        if ref not in gate_ids:
            raise ParseError(f"line {lineno}: undefined reference {ref!r}")
        return gate_ids[ref]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "circuit":
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'circuit <name>'")
            name = parts[1]
        elif parts[0] == "inputs":
            if saw_inputs:
                raise ParseError(f"line {lineno}: duplicate inputs line")
            saw_inputs = True
            input_names = parts[1:]
            for i, n in enumerate(input_names):
                if not _IDENT_RE.fullmatch(n):
                    raise ParseError(f"line {lineno}: bad input name {n!r}")
                if n in gate_ids:
                    raise ParseError(f"line {lineno}: duplicate input {n!r}")
                gates.append(Gate.input(i))
                gate_ids[n] = i
        elif parts[0] == "output":
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'output <gate>'")
            output_ref = parts[1]
        elif len(parts) == 5 and parts[1] == "=":
            gname, _, op, ref1, ref2 = parts
            if op not in ("add", "mul"):
                raise ParseError(f"line {lineno}: unknown op {op!r} (fan-in-2 add/mul only)")
            if gname in gate_ids:
                raise ParseError(f"line {lineno}: duplicate gate {gname!r}")
            if not saw_inputs:
                raise ParseError(f"line {lineno}: gate before inputs line")
            left = resolve(ref1, lineno)
            right = resolve(ref2, lineno)
            gates.append(Gate(op, left=left, right=right))
            gate_ids[gname] = len(gates) - 1
        else:
            raise ParseError(f"line {lineno}: cannot parse {line!r}")

    if output_ref is None:
        raise ParseError("missing output line")
    if output_ref not in gate_ids:
        raise ParseError(f"undefined output gate {output_ref!r}")
    out = gate_ids[output_ref]
    internal = [i for i, g in enumerate(gates) if g.is_internal]
    if internal and out != internal[-1]:
        raise ParseError("output must be the last defined gate")
    return Circuit(
        field=field,
        gates=tuple(gates),
        n_inputs=len(input_names),
        output=out,
        name=name,
        input_names=tuple(input_names),
    )


def serialize_circuit(circuit: Circuit) -> str:
    """Canonical DSL text: gates renamed g1..gs in internal order."""
    gate_names = {}
    for pos, gid in enumerate(circuit.internal_order, start=1):
        gate_names[gid] = f"g{pos}"

    def ref(gid: int) -> str:
        g = circuit.gates[gid]
        if g.op == "input":
            return circuit.input_names[g.var]
        if g.op == "const":
            return circuit.field.format_value(g.value)
        return gate_names[gid]

    lines = [f"circuit {circuit.name}", "inputs " + " ".join(circuit.input_names)]
    if circuit.n_inputs == 0:
        lines[1] = "inputs"
    for gid in circuit.internal_order:
        g = circuit.gates[gid]
        lines.append(f"{gate_names[gid]} = {g.op} {ref(g.left)} {ref(g.right)}")
    lines.append(f"output {ref(circuit.output)}")
    return "\n".join(lines) + "\n"


def circuit_to_json(circuit: Circuit) -> dict:
    gate_names = {gid: f"g{pos}" for pos, gid in enumerate(circuit.internal_order, start=1)}

    def ref(gid: int) -> str:
        g = circuit.gates[gid]
        if g.op == "input":
            return circuit.input_names[g.var]
        if g.op == "const":
            return circuit.field.format_value(g.value)
        return gate_names[gid]

    return {
        "schema_version": 1,
        "kind": "circuit",
        "field": circuit.field.to_json(),
        "name": circuit.name,
        "inputs": list(circuit.input_names),
        "gates": [
            {
                "name": gate_names[gid],
                "op": circuit.gates[gid].op,
                "args": [ref(circuit.gates[gid].left), ref(circuit.gates[gid].right)],
            }
            for gid in circuit.internal_order
        ],
        "output": ref(circuit.output),
    }


def circuit_from_json(obj: dict) -> Circuit:
    field = field_from_json(obj["field"]) if "field" in obj else QQ
    lines = [f"circuit {obj.get('name', 'circuit')}", "inputs " + " ".join(obj["inputs"])]
    for g in obj["gates"]:
        lines.append(f"{g['name']} = {g['op']} {g['args'][0]} {g['args'][1]}")
    lines.append(f"output {obj['output']}")
    return parse_circuit("\n".join(lines), field)
