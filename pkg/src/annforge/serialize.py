"""JSON readers/writers for the file formats the CLI exchanges.

All writers emit deterministic key order (plain dict literals below), so
identical objects serialize byte-identically; readers accept the minimal
schemas ({seed_len, outputs} for maps, {equations} for systems, {kind, r}
for refutations) and default the field to the rationals.  Variable names
default to natural-sorted identifiers collected from the polynomial texts.
"""

from __future__ import annotations

import json

from .annihilator import AnnihilatorCertificate
from .circuit import parse_circuit, serialize_circuit
from .encoding import BlockSpans, LocalEncoding, PolynomialMap, local_encode
from .errors import ParseError
from .fields import QQ, Field, field_from_json
from .ips import EquationSystem, Refutation
from .poly import Namespace, Polynomial, format_polynomial, parse_polynomial


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- polynomial maps ----------------------------------------------------------


def map_to_json(pmap: PolynomialMap) -> dict:
    ns = pmap.seed_namespace
    return {
        "schema_version": 1,
        "kind": "polynomial_map",
        "field": pmap.field.to_json(),
        "seed_len": pmap.seed_len,
        "seed_names": list(pmap.seed_names),
        "outputs": [format_polynomial(p, ns) for p in pmap.outputs],
    }


def map_from_json(obj: dict) -> PolynomialMap:
    field = field_from_json(obj["field"]) if "field" in obj else QQ
    texts = obj["outputs"]
    seed_len = int(obj["seed_len"])
    if "seed_names" in obj:
        names = list(obj["seed_names"])
    else:
        names = list(Namespace.inferred(texts).names)
        if len(names) < seed_len:
            names += [f"u{i}" for i in range(1, seed_len - len(names) + 1)]
    if len(names) != seed_len:
        raise ParseError(f"seed_names has {len(names)} entries, seed_len is {seed_len}")
    ns = Namespace(names)
    outputs = tuple(parse_polynomial(t, field, ns) for t in texts)
    return PolynomialMap(outputs=outputs, seed_len=seed_len, seed_names=tuple(names))


# -- local encodings ----------------------------------------------------------


def encoding_to_json(enc: LocalEncoding) -> dict:
    obj = map_to_json(enc.map)
    obj["kind"] = "local_encoding"
    obj["blocks"] = {
        "input": list(enc.blocks.input),
        "internal": list(enc.blocks.internal),
        "output": list(enc.blocks.output),
    }
    field = enc.map.field
    obj["provenance"] = {
        "type": "local_encoding",
        "circuit": serialize_circuit(enc.circuit),
        "alpha": [field.format_value(a) for a in enc.alpha],
        "beta": field.format_value(enc.beta),
    }
    return obj


def encoding_from_json(obj: dict) -> LocalEncoding:
    """Rebuild from provenance and check the stored outputs match."""
    prov = obj.get("provenance")
    if not prov or prov.get("type") != "local_encoding":
        raise ParseError("JSON lacks local_encoding provenance")
    field = field_from_json(obj["field"]) if "field" in obj else QQ
    circuit = parse_circuit(prov["circuit"], field)
    alpha = [field.parse_value(a) for a in prov["alpha"]]
    beta = field.parse_value(prov["beta"])
    enc = local_encode(circuit, alpha, beta)
    stored = map_from_json(obj)
    if stored != enc.map:
        raise ParseError("stored outputs disagree with provenance reconstruction")
    return enc


# -- certificates -------------------------------------------------------------


def certificate_to_json(cert: AnnihilatorCertificate) -> dict:
    enc = cert.encoding
    zs = Namespace.outputs(enc.out_len)
    return {
        "schema_version": 1,
        "kind": "annihilator_certificate",
        "field": enc.map.field.to_json(),
        "n": enc.n,
        "s": enc.s,
        "h": format_polynomial(cert.h, zs),
        "gate_lifts": [format_polynomial(p, zs) for p in cert.gate_lifts],
        "lift_gate_count": cert.lift_gate_count,
        "encoding": encoding_to_json(enc),
    }


def certificate_from_json(obj: dict) -> AnnihilatorCertificate:
    enc = encoding_from_json(obj["encoding"])
    field = enc.map.field
    zs = Namespace.outputs(enc.out_len)
    h = parse_polynomial(obj["h"], field, zs)
    lifts = tuple(parse_polynomial(t, field, zs) for t in obj["gate_lifts"])
    return AnnihilatorCertificate(
        h=h, gate_lifts=lifts, lift_gate_count=int(obj["lift_gate_count"]), encoding=enc
    )


# -- equation systems and refutations ------------------------------------------


def system_to_json(system: EquationSystem) -> dict:
    ns = system.namespace
    return {
        "schema_version": 1,
        "kind": "equation_system",
        "field": system.field.to_json(),
        "name": system.name,
        "n_vars": system.n_vars,
        "var_names": list(system.var_names),
        "equations": [format_polynomial(p, ns) for p in system.equations],
    }


def system_from_json(obj: dict) -> EquationSystem:
    field = field_from_json(obj["field"]) if "field" in obj else QQ
    texts = obj["equations"]
    if "var_names" in obj:
        names = list(obj["var_names"])
    else:
        names = list(Namespace.inferred(texts).names)
    n_vars = int(obj.get("n_vars", len(names)))
    ns = Namespace(names)
    return EquationSystem(
        equations=tuple(parse_polynomial(t, field, ns) for t in texts),
        n_vars=n_vars,
        name=obj.get("name", "system"),
        var_names=tuple(names),
    )


def refutation_to_json(ref: Refutation, system: EquationSystem) -> dict:
    m = len(system.equations)
    if ref.kind == "geometric":
        ns = Namespace.outputs(m)
    else:
        ns = system.namespace.extended(f"z{i}" for i in range(1, m + 1))
    return {
        "schema_version": 1,
        "kind": ref.kind,
        "field": system.field.to_json(),
        "r": format_polynomial(ref.r, ns),
    }


def refutation_from_json(obj: dict, system: EquationSystem) -> Refutation:
    field = field_from_json(obj["field"]) if "field" in obj else system.field
    kind = obj["kind"]
    m = len(system.equations)
    if kind == "geometric":
        ns = Namespace.outputs(m)
    elif kind == "full":
        ns = system.namespace.extended(f"z{i}" for i in range(1, m + 1))
    else:
        raise ParseError(f"unknown refutation kind {kind!r}")
    return Refutation(kind=kind, r=parse_polynomial(obj["r"], field, ns))
