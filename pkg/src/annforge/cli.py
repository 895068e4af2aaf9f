"""Command-line front end.

Exit codes: 0 = success / Accept / verdict matches --expect; 1 = verification
Reject or Fooled (or verdict mismatch); 2 = usage error; 3 = budget or
search-space guard exceeded.  With --json a machine-readable report
(schema_version 1) is printed to stdout; every randomized command echoes its
seed in the report.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import config
from .annihilator import annihilator_basis_search, principal_generator, verify_annihilates
from .circuit import expand, metrics, parse_circuit
from .encoding import encoding_metrics, local_encode, pad, parallel_compose
from .errors import AnnforgeError, ResourceLimitError
from .fields import PrimeField, field_from_spec
from .instances import (
    det_circuit,
    encode_3cnf,
    kayal_chain_map,
    kayal_map,
    masser_philippon_system,
    parse_dimacs,
)
from .ips import canonical_geometric_refutation, system_of, verify_full_ips, verify_geometric
from .linalg import jacobian, rank_random_eval, resultant, resultant_with_cofactors
from .pit import HitResult, generator_pit, hit_test, sz_pit
from .poly import Namespace, format_polynomial, parse_polynomial
from .serialize import (
    certificate_to_json,
    dumps,
    encoding_from_json,
    encoding_to_json,
    map_from_json,
    map_to_json,
    refutation_from_json,
    refutation_to_json,
    serialize_circuit,
    system_from_json,
    system_to_json,
)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_json(path: str) -> dict:
    return json.loads(_read(path))


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _parse_alpha(text: str, field) -> list:
    if text.strip() == "":
        return []
    return [field.parse_value(part) for part in text.split(",")]


def _warn_small_characteristic(field, degree_bound: int) -> None:
    """The small-characteristic regime is out of the artifact's warranty."""
    if isinstance(field, PrimeField) and field.p <= degree_bound:
        print(
            f"warning: field characteristic {field.p} <= degree bound "
            f"{degree_bound}; results may not transfer",
            file=sys.stderr,
        )


def _emit(report: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps({"schema_version": 1, **report}, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_encode(args) -> int:
    field = field_from_spec(args.field)
    circuit = parse_circuit(_read(args.circuit), field)
    alpha = _parse_alpha(args.alpha, field)
    beta = field.parse_value(args.beta)
    enc = local_encode(circuit, alpha, beta)
    report = encoding_metrics(enc)
    payload = encoding_to_json(enc)
    if args.out:
        _write(args.out, dumps(payload))
    _emit(
        {
            "command": "encode",
            "seed_len": report.seed_len,
            "out_len": report.out_len,
            "stretch": report.stretch,
            "degree": report.degree,
            "out": args.out,
        },
        args.json,
        [
            f"encoded {circuit.name}: seed {report.seed_len} -> out {report.out_len} "
            f"(stretch {report.stretch}, degree {report.degree})"
        ]
        + ([f"wrote {args.out}"] if args.out else []),
    )
    return 0


def cmd_annihilate(args) -> int:
    enc = encoding_from_json(_read_json(args.encoding))
    cert = principal_generator(enc)
    payload = certificate_to_json(cert)
    if args.out:
        _write(args.out, dumps(payload))
    zs = Namespace.outputs(enc.out_len)
    _emit(
        {
            "command": "annihilate",
            "h": format_polynomial(cert.h, zs),
            "degree": cert.h.degree(),
            "lift_gate_count": cert.lift_gate_count,
            "out": args.out,
        },
        args.json,
        [
            f"h = {format_polynomial(cert.h, zs)}",
            f"degree {cert.h.degree()}, straight-line lift gates {cert.lift_gate_count}",
        ]
        + ([f"wrote {args.out}"] if args.out else []),
    )
    return 0


def cmd_search_ann(args) -> int:
    pmap = map_from_json(_read_json(args.map))
    _warn_small_characteristic(pmap.field, pmap.degree * args.degree)
    basis = annihilator_basis_search(pmap, args.degree)
    zs = Namespace.outputs(pmap.out_len)
    texts = [format_polynomial(p, zs) for p in basis]
    _emit(
        {
            "command": "search-ann",
            "degree": args.degree,
            "dimension": len(basis),
            "basis": texts,
        },
        args.json,
        [f"annihilator space at degree <= {args.degree}: dimension {len(basis)}"]
        + [f"  {t}" for t in texts],
    )
    return 0


def cmd_verify(args) -> int:
    enc = encoding_from_json(_read_json(args.encoding))
    zs = Namespace.outputs(enc.out_len)
    poly = parse_polynomial(_read(args.poly), enc.map.field, zs)
    ok = verify_annihilates(poly, enc.map)
    _emit(
        {"command": "verify", "annihilates": ok},
        args.json,
        ["annihilates: yes" if ok else "annihilates: no"],
    )
    return 0 if ok else 1


def cmd_pit(args) -> int:
    field = field_from_spec(args.field)
    circuit = parse_circuit(_read(args.circuit), field)
    d = metrics(circuit).degree_bound
    _warn_small_characteristic(field, 2 * d)
    if args.map:
        pmap = map_from_json(_read_json(args.map))
        verdict = generator_pit(
            circuit, pmap, mode=args.mode, trials=args.trials, seed=args.seed
        )
    else:
        verdict = sz_pit(circuit, trials=args.trials, grid_size=args.grid, seed=args.seed)
    report = {
        "command": "pit",
        "verdict": verdict.verdict,
        "trials_run": verdict.trials_run,
        "failure_bound": str(verdict.failure_bound),
        "seed": verdict.seed,
        "mode": verdict.mode,
    }
    if verdict.witness is not None:
        report["witness"] = [field.format_value(v) for v in verdict.witness]
    lines = [f"verdict: {verdict.verdict} (trials {verdict.trials_run}, "
             f"failure bound {verdict.failure_bound})"]
    _emit(report, args.json, lines)
    if args.expect:
        return 0 if verdict.verdict == args.expect else 1
    return 0


def cmd_hit(args) -> int:
    pmap = map_from_json(_read_json(args.map))
    zs = Namespace.outputs(pmap.out_len)
    poly = parse_polynomial(_read(args.poly), pmap.field, zs)
    result = hit_test(pmap, poly)
    _emit(
        {"command": "hit", "result": result.value},
        args.json,
        [f"result: {result.value}"],
    )
    return 1 if result is HitResult.FOOLED else 0


def cmd_jacobian(args) -> int:
    obj = _read_json(args.polys)
    field = field_from_spec(args.field)
    texts = obj["polynomials"] if isinstance(obj, dict) else obj
    ns = Namespace(obj["var_names"]) if isinstance(obj, dict) and "var_names" in obj \
        else Namespace.inferred(texts)
    polys = [parse_polynomial(t, field, ns) for t in texts]
    variables = sorted(set().union(set(), *[p.variables() for p in polys]))
    if not variables:
        _emit({"command": "jacobian", "rank_lower_bound": 0}, args.json,
              ["all polynomials constant: rank 0"])
        return 0
    mat = jacobian(polys, variables)
    rank = rank_random_eval(mat, trials=args.trials, p=args.prime, seed=args.seed)
    # Schwartz-Zippel: each trial misses a nonzero minor with prob <= deg/p.
    deg = max(mat.max_entry_degree(), 0) * min(mat.rows, mat.cols)
    bound = min(Fraction(max(deg, 1), args.prime), Fraction(1)) ** args.trials
    _emit(
        {
            "command": "jacobian",
            "rows": mat.rows,
            "cols": mat.cols,
            "rank_lower_bound": rank,
            "trials": args.trials,
            "prime": args.prime,
            "seed": args.seed,
            "failure_bound": str(bound),
        },
        args.json,
        [
            f"jacobian is {mat.rows}x{mat.cols}; rank >= {rank} "
            f"(exact with prob >= 1 - {bound})"
        ],
    )
    return 0


def cmd_resultant(args) -> int:
    field = field_from_spec(args.field)
    ns = Namespace.inferred([args.f, args.g, args.var])
    f_poly = parse_polynomial(args.f, field, ns)
    g_poly = parse_polynomial(args.g, field, ns)
    var = ns.id(args.var)
    if args.cofactors:
        res, u, v = resultant_with_cofactors(f_poly, g_poly, var)
        report = {
            "command": "resultant",
            "resultant": format_polynomial(res, ns),
            "u": format_polynomial(u, ns),
            "v": format_polynomial(v, ns),
        }
        lines = [
            f"res = {format_polynomial(res, ns)}",
            f"u = {format_polynomial(u, ns)}",
            f"v = {format_polynomial(v, ns)}",
        ]
    else:
        res = resultant(f_poly, g_poly, var)
        report = {"command": "resultant", "resultant": format_polynomial(res, ns)}
        lines = [f"res = {format_polynomial(res, ns)}"]
    _emit(report, args.json, lines)
    return 0


def cmd_ips_verify(args) -> int:
    system = system_from_json(_read_json(args.system))
    ref = refutation_from_json(_read_json(args.refutation), system)
    kind = args.kind or ref.kind
    if kind != ref.kind:
        print(f"error: refutation file has kind {ref.kind}, --kind says {kind}",
              file=sys.stderr)
        return 2
    result = verify_geometric(ref, system) if kind == "geometric" \
        else verify_full_ips(ref, system)
    _emit(
        {
            "command": "ips-verify",
            "kind": kind,
            "accepted": result.accepted,
            "reason": result.reason,
            "degree": result.degree,
        },
        args.json,
        [
            f"{'Accept' if result.accepted else 'Reject'}"
            + (f" ({result.reason})" if result.reason else "")
            + f", refutation degree {result.degree}"
        ],
    )
    return 0 if result.accepted else 1


def cmd_ips_refute(args) -> int:
    enc = encoding_from_json(_read_json(args.encoding))
    ref = canonical_geometric_refutation(enc)
    system = system_of(enc.map)
    check = verify_geometric(ref, system)
    assert check.accepted, "canonical refutation must verify"
    payload = refutation_to_json(ref, system)
    if args.out:
        _write(args.out, dumps(payload))
    if args.system_out:
        _write(args.system_out, dumps(system_to_json(system)))
    zs = Namespace.outputs(enc.out_len)
    _emit(
        {
            "command": "ips-refute",
            "kind": "geometric",
            "degree": check.degree,
            "r": format_polynomial(ref.r, zs),
            "out": args.out,
        },
        args.json,
        [f"r = {format_polynomial(ref.r, zs)}", f"degree {check.degree}"]
        + ([f"wrote {args.out}"] if args.out else []),
    )
    return 0


def cmd_instance(args) -> int:
    field = field_from_spec(args.field)
    if args.family == "kayal":
        payload = dumps(map_to_json(kayal_map(args.n, args.d, field)))
        desc = f"kayal n={args.n} d={args.d}"
    elif args.family == "kayal-chain":
        payload = dumps(map_to_json(kayal_chain_map(args.n, args.d, field)))
        desc = f"kayal-chain n={args.n} d={args.d}"
    elif args.family == "masser-philippon":
        payload = dumps(system_to_json(masser_philippon_system(args.n, args.d, field)))
        desc = f"masser-philippon n={args.n} d={args.d}"
    elif args.family == "det":
        payload = serialize_circuit(det_circuit(args.n, field))
        desc = f"det n={args.n}"
    elif args.family == "cnf3":
        if not args.cnf:
            print("error: --cnf <file> required for family cnf3", file=sys.stderr)
            return 2
        clauses, n_vars = parse_dimacs(_read(args.cnf))
        payload = dumps(system_to_json(encode_3cnf(clauses, n_vars, field)))
        desc = f"cnf3 with {len(clauses)} clauses on {n_vars} variables"
    else:  # pragma: no cover - argparse restricts choices
        return 2
    if args.out:
        _write(args.out, payload)
        lines = [f"wrote {desc} to {args.out}"]
    else:
        print(payload, end="")
        lines = []
    _emit({"command": "instance", "family": args.family, "out": args.out},
          args.json, lines)
    return 0


def cmd_stretch(args) -> int:
    pmap = map_from_json(_read_json(args.map))
    out = parallel_compose(pmap, args.copies)
    if args.pad:
        out = pad(out, args.pad)
    if args.out:
        _write(args.out, dumps(map_to_json(out)))
    _emit(
        {
            "command": "stretch",
            "copies": args.copies,
            "seed_len": out.seed_len,
            "out_len": out.out_len,
            "stretch": out.stretch,
            "degree": out.degree,
            "out": args.out,
        },
        args.json,
        [
            f"{args.copies} copies: seed {out.seed_len} -> out {out.out_len} "
            f"(stretch {out.stretch}, degree {out.degree})"
        ]
        + ([f"wrote {args.out}"] if args.out else []),
    )
    return 0


def cmd_metrics(args) -> int:
    if args.circuit:
        field = field_from_spec(args.field)
        circuit = parse_circuit(_read(args.circuit), field)
        m = metrics(circuit)
        report = {
            "command": "metrics",
            "size": m.size,
            "depth": m.depth,
            "degree_bound": m.degree_bound,
        }
        lines = [f"size {m.size}, depth {m.depth}, degree bound {m.degree_bound}"]
    else:
        enc = encoding_from_json(_read_json(args.encoding))
        r = encoding_metrics(enc)
        report = {
            "command": "metrics",
            "seed_len": r.seed_len,
            "out_len": r.out_len,
            "stretch": r.stretch,
            "degree": r.degree,
            "max_formula_size": r.max_formula_size,
        }
        lines = [
            f"seed {r.seed_len}, out {r.out_len}, stretch {r.stretch}, "
            f"degree {r.degree}, per-output formula size <= {r.max_formula_size}"
        ]
    _emit(report, args.json, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annforge",
        description="Local encodings, annihilator ideals, identity testing, "
        "and geometric refutations for arithmetic circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--json", action="store_true", help="JSON report on stdout")
        p.add_argument("--field", default="rational",
                       help="rational (default) or prime:<p>")
        return p

    p = common(sub.add_parser("encode", help="build a local encoding"))
    p.add_argument("--circuit", required=True)
    p.add_argument("--alpha", required=True, help="comma-separated field values")
    p.add_argument("--beta", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = common(sub.add_parser("annihilate", help="synthesize the principal generator"))
    p.add_argument("--encoding", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_annihilate)

    p = common(sub.add_parser("search-ann", help="degree-bounded kernel search"))
    p.add_argument("--map", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_search_ann)

    p = common(sub.add_parser("verify", help="check that a polynomial annihilates"))
    p.add_argument("--encoding", required=True)
    p.add_argument("--poly", required=True, help="file with polynomial text over z1..")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("pit", help="polynomial identity testing"))
    p.add_argument("--circuit", required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--map", help="test the composition with this map instead")
    p.add_argument("--mode", default="symbolic",
                   choices=["symbolic", "randomized", "deterministic_grid"])
    p.add_argument("--expect", choices=["zero", "nonzero"])
    p.set_defaults(func=cmd_pit)

    p = common(sub.add_parser("hit", help="hit/fooled classification"))
    p.add_argument("--map", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_hit)

    p = common(sub.add_parser("jacobian", help="randomized Jacobian rank"))
    p.add_argument("--polys", required=True,
                   help="JSON file: [poly-text, ...] or {polynomials, var_names}")
    p.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    p.add_argument("--prime", type=int, default=config.DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_jacobian)

    p = common(sub.add_parser("resultant", help="Sylvester resultant"))
    p.add_argument("--f", required=True, help="polynomial text")
    p.add_argument("--g", required=True, help="polynomial text")
    p.add_argument("--var", required=True)
    p.add_argument("--cofactors", action="store_true")
    p.set_defaults(func=cmd_resultant)

    p = common(sub.add_parser("ips-verify", help="verify a refutation"))
    p.add_argument("--system", required=True)
    p.add_argument("--refutation", required=True)
    p.add_argument("--kind", choices=["geometric", "full"])
    p.set_defaults(func=cmd_ips_verify)

    p = common(sub.add_parser("ips-refute", help="canonical geometric refutation"))
    p.add_argument("--encoding", required=True)
    p.add_argument("--out")
    p.add_argument("--system-out", dest="system_out",
                   help="also write the encoding's equation system")
    p.set_defaults(func=cmd_ips_refute)

    p = common(sub.add_parser("instance", help="build a named instance"))
    p.add_argument("--family", required=True,
                   choices=["kayal", "kayal-chain", "masser-philippon", "det", "cnf3"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--cnf", help="DIMACS-like 3CNF file (family cnf3)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_instance)

    p = common(sub.add_parser("stretch", help="parallel copies and padding"))
    p.add_argument("--map", required=True)
    p.add_argument("--copies", type=int, required=True)
    p.add_argument("--pad", type=int, default=None,
                   help="pad the result to this output length")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stretch)

    p = common(sub.add_parser("metrics", help="circuit or encoding metrics"))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--circuit")
    group.add_argument("--encoding")
    p.set_defaults(func=cmd_metrics)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 3
    except AnnforgeError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
