"""Command line front end: one verb per pipeline stage.

    gen        geometry generator -> .graph
    encode     .graph + basis -> .enc (layout, operator tables)
    transform  .graph + .fham -> .pauli
    stats      .pauli -> weight statistics
    bench      geometry sweep -> .csv
    verify     algebra checks, optionally the dense spectral oracle

Failures exit non-zero with a machine-readable category on stderr
(parse=2, route=3, parity=4, resource=5, verify-fail=6).
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import analytics, fileio
from .dense import dense_oracle_check
from .encoding import build_encoding, verify_encoding_algebra
from .errors import FermigraphError, ParseError, VerifyError
from .fermion import build_syk2
from .geometries import (
    gen_blocked_square,
    gen_heavy_hex,
    gen_lattice,
    gen_square_with_diagonals,
    gen_syk_geometry,
)
from .graph import qubit_count
from .transform import transform_hamiltonian

EXIT_CODES = {"parse": 2, "route": 3, "parity": 4, "resource": 5, "verify-fail": 6}

_LATTICES = ("linear", "square", "triangular", "square_diag")
_SYK = ("complete", "star", "ternary_tree", "ternary_mera", "hyperbolic46")


def _parse_dims(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.split("x")]
    except ValueError:
        raise ParseError(f"bad dims {text!r}; use e.g. 4 or 4x6") from None


def _cmd_gen(args) -> int:
    kind = args.geometry
    if kind in _LATTICES:
        if not args.dims:
            raise ParseError("--dims is required for lattice geometries")
        dims = _parse_dims(args.dims)
        if kind == "square_diag":
            rows, cols = dims if len(dims) == 2 else (dims[0], dims[0])
            g = gen_square_with_diagonals(rows, cols, args.bc)
        else:
            g = gen_lattice(kind, dims if len(dims) > 1 else dims[0], args.bc)
    elif kind in _SYK:
        if args.n is None:
            raise ParseError("--n is required for all-to-all geometries")
        g = gen_syk_geometry(kind, args.n)
    elif kind == "blocked_square":
        if not args.dims or args.blocks is None:
            raise ParseError("blocked_square needs --dims L and --blocks b")
        g = gen_blocked_square(_parse_dims(args.dims)[0], args.blocks)
    elif kind == "heavy_hex":
        g = gen_heavy_hex()
    else:
        raise ParseError(f"unknown geometry {kind!r}")
    fileio.write_graph(args.out, g)
    print(f"wrote {args.out}: {len(g.vertex_ids())} vertices, "
          f"{len(g.edges)} edges, {qubit_count(g)} qubits")
    return 0


def _cmd_encode(args) -> int:
    g = fileio.read_graph(args.graph)
    enc = build_encoding(g, args.basis, max_qubits=args.max_qubits)
    fileio.write_encoding(args.out, enc)
    print(
        f"wrote {args.out}: {enc.total_qubits} qubits, {len(enc.edge_ops)} edge ops, "
        f"{len(enc.vertex_ops)} vertex ops, {len(enc.stabilizers)} stabilizers"
    )
    return 0


def _cmd_transform(args) -> int:
    g = fileio.read_graph(args.graph)
    enc = build_encoding(g, args.basis, max_qubits=args.max_qubits)
    f = fileio.read_fermion(args.hamiltonian)
    route = _route_policy(args.route, enc)
    compiled = transform_hamiltonian(f, enc, route)
    fileio.write_pauli_sum(args.out, compiled)
    stats = analytics.weight_stats(compiled)
    print(
        f"wrote {args.out}: {stats.term_count} terms, max weight "
        f"{stats.max_term_weight}, total weight {stats.total_weight}"
    )
    return 0


def _route_policy(policy: str, enc):
    if policy == "auto":
        return "auto"
    if policy.startswith("explicit:"):
        # one line per coupling: ``path <mode j> <mode k> <vertex ids...>``
        # with 1-based modes (as in .fham files) and vertex ids as written
        # in the .graph file
        paths = {}
        with open(policy.split(":", 1)[1]) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                toks = line.split()
                if toks[0] != "path" or len(toks) < 5:
                    raise ParseError(f"bad path line {line!r}")
                j, k = int(toks[1]) - 1, int(toks[2]) - 1
                if j < 0 or k < 0:
                    raise ParseError("path modes are 1-based")
                paths[(min(j, k), max(j, k))] = [int(t) for t in toks[3:]]
        return paths
    raise ParseError(f"unknown routing policy {policy!r}")


def _cmd_stats(args) -> int:
    s = fileio.read_pauli_sum(args.infile)
    st = analytics.weight_stats(s)
    lines = [
        f"qubits {st.qubit_total}",
        f"terms {st.term_count}",
        f"max_weight {st.max_term_weight}",
        f"total_weight {st.total_weight}",
        f"mean_weight {st.mean_weight!r}",
    ]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(text, end="")
    return 0


def _cmd_bench(args) -> int:
    geometries = args.geometries.split(",")
    n_list = [int(tok) for tok in args.n.split(",")]
    records = analytics.sweep_syk_geometries(
        geometries, n_list, seed=args.seed, max_qubits=args.max_qubits
    )
    csv = analytics.records_to_csv(records)
    with open(args.out, "w") as fh:
        fh.write(csv)
    print(f"wrote {args.out}: {len(records)} rows")
    return 0


def _cmd_verify(args) -> int:
    g = fileio.read_graph(args.graph)
    enc = build_encoding(g, args.basis)
    rep = verify_encoding_algebra(enc)
    if not rep.ok:
        for v in rep.violations:
            print("algebra:", v, file=sys.stderr)
        raise VerifyError("operator algebra check failed")
    print(f"algebra ok: {len(enc.edge_ops)} edge ops, {len(enc.stabilizers)} stabilizers")
    if args.dense:
        if args.hamiltonian:
            f = fileio.read_fermion(args.hamiltonian)
        else:
            f = build_syk2(len(g.physical_ids()), seed=args.seed)
        report = dense_oracle_check(f, enc, qubit_cap=args.max_qubits)
        print(
            f"dense oracle: sector={report.sector} codespace_dim={report.codespace_dim} "
            f"multiplicity={report.multiplicity} max_diff={report.max_spectrum_diff:.3e}"
        )
        if not report.passed:
            for m in report.messages:
                print("oracle:", m, file=sys.stderr)
            raise VerifyError("dense oracle check failed")
    print("verify pass")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fermigraph", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a system graph")
    p.add_argument("--geometry", required=True,
                   help=f"one of {', '.join(_LATTICES + _SYK + ('blocked_square', 'heavy_hex'))}")
    p.add_argument("--dims", help="lattice dims, e.g. 4 or 4x6")
    p.add_argument("--n", type=int, help="mode count for all-to-all geometries")
    p.add_argument("--blocks", type=int, help="block count for blocked_square")
    p.add_argument("--bc", default="open", choices=("open", "periodic"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("encode", help="build the encoded operator tables")
    p.add_argument("--graph", required=True)
    p.add_argument("--basis", default="jw", help="jw | jw_yx | fenwick | ternary")
    p.add_argument("--max-qubits", type=int, default=26)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("transform", help="compile a Hamiltonian to Paulis")
    p.add_argument("--graph", required=True)
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--basis", default="jw")
    p.add_argument("--route", default="auto", help="auto | explicit:<path-file>")
    p.add_argument("--max-qubits", type=int, default=26)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("stats", help="weight statistics of a .pauli file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("bench", help="geometry sweep to CSV")
    p.add_argument("--geometries", required=True, help="comma list, e.g. linear,star")
    p.add_argument("--n", required=True, help="comma list of mode counts")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1, help="accepted for compatibility")
    p.add_argument("--max-qubits", type=int, default=None,
                   help="per-point qubit guard (default unlimited)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="algebra and oracle checks")
    p.add_argument("--graph", required=True)
    p.add_argument("--basis", default="jw")
    p.add_argument("--dense", action="store_true")
    p.add_argument("--hamiltonian", help="defaults to a seeded quadratic Hamiltonian")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-qubits", type=int, default=12)
    p.set_defaults(func=_cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FermigraphError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.category, 1)
    except OSError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_CODES["parse"]


if __name__ == "__main__":
    sys.exit(main())
