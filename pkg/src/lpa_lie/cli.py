"""Command line interface.

Subcommands: ``analyze``, ``k0``, ``witness``, ``family``, ``kp-check``, and
``selftest``.  Graphs are read from a file path or ``-`` (standard input),
either in the line-oriented text format or as a JSON object with ``vertices``
and ``adjacency``.  ``--json`` switches every command to a stable,
schema-versioned machine-readable report.

Exit codes: 0 verdicts produced, 1 input or usage error, 2 every requested
verdict inapplicable (``analyze``) or non-membership (``witness``), 3
contradiction in ``kp-check`` (which would indicate a bug).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .analysis import is_purely_infinite_simple, is_simple_lpa
from .cohn import CohnElement, commutator, n_generator, verify_witness
from .graph import (
    Graph,
    GraphError,
    adjacency_matrix,
    b_vectors,
    family,
    family_names,
    graph_from_adjacency,
    m_matrix,
    parse_graph,
    serialize_graph,
)
from .linalg import (
    FieldSpec,
    class_order,
    cokernel,
    is_p_divisible,
    is_prime,
    rank_over_field,
    smith_normal_form,
)
from .verdict import (
    INAPPLICABLE,
    SIMPLE,
    kp_consistency,
    leavitt_closed_form,
    lie_simplicity,
    lie_simplicity_via_k0,
    matrix_lie_simplicity,
    vertex_combination_in_commutator,
)

SCHEMA = "lpa-lie.report/1"
DEFAULT_CHARS = (0, 2, 3, 5, 7)
SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)


class _CliError(Exception):
    """Input or usage problem; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_source(spec: str) -> str:
    if spec == "-":
        return sys.stdin.read()
    try:
        with open(spec, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliError(f"cannot read {spec!r}: {exc}") from exc


def _load_graph(spec: str) -> Graph:
    text = _read_source(spec)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise _CliError(f"bad JSON graph: {exc}") from exc
        if not isinstance(data, dict) or "vertices" not in data or "adjacency" not in data:
            raise _CliError("JSON graph needs 'vertices' and 'adjacency' fields")
        try:
            return graph_from_adjacency(list(data["vertices"]), data["adjacency"])
        except (GraphError, TypeError) as exc:
            raise _CliError(f"bad structured graph: {exc}") from exc
    try:
        return parse_graph(text)
    except GraphError as exc:
        raise _CliError(str(exc)) from exc


def _parse_chars(text: str) -> list[int]:
    chars = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            c = int(piece)
        except ValueError:
            raise _CliError(f"bad characteristic {piece!r}") from None
        if c != 0 and not is_prime(c):
            raise _CliError(f"characteristic must be 0 or prime, got {c}")
        chars.append(c)
    if not chars:
        raise _CliError("no characteristics given")
    return chars


def _fmt_vec(values) -> str:
    return "(" + ", ".join(str(x) for x in values) + ")"


def _verdict_dict(v) -> dict:
    cert = v.certificate
    if cert is not None and not isinstance(cert, (int, str)):
        if isinstance(cert, tuple) and all(hasattr(c, "__str__") for c in cert):
            cert = [str(c) for c in cert]
        else:
            cert = getattr(cert, "describe", lambda: str(cert))()
    return {
        "status": v.status,
        "route": v.route,
        "characteristic": v.characteristic,
        "reason": v.reason,
        "certificate": cert,
    }


def _graph_summary(g: Graph) -> dict:
    return {
        "vertices": [v.label for v in g.vertices],
        "edge_count": g.num_edges,
        "edges": [
            {"label": e.label, "source": e.source.label, "target": e.target.label}
            for e in g.edges
        ],
        "sinks": [v.label for v in g.sinks()],
        "regular": [v.label for v in g.regular_vertices()],
        "adjacency": adjacency_matrix(g),
    }


def _simplicity_dict(report) -> dict:
    return {
        "verdict": report.verdict,
        "witnesses": [w.describe() for w in report.witnesses],
    }


def _k0_dict(g: Graph) -> dict:
    dec = smith_normal_form(m_matrix(g))
    pres = cokernel(m_matrix(g))
    order = class_order(pres)
    return {
        "snf_diagonal": list(dec.diagonal),
        "invariant_factors": list(pres.invariant_factors),
        "nontrivial_factors": list(pres.nontrivial_factors),
        "group": pres.group_description(),
        "unit_class": list(pres.unit_class),
        "unit_class_order": "infinite" if order is None else order,
    }


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human, end="")


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def _cmd_analyze(args) -> int:
    g = _load_graph(args.graph)
    chars = _parse_chars(args.char)
    simple = is_simple_lpa(g)
    pis = is_purely_infinite_simple(g)
    bvecs = b_vectors(g)

    rows = []
    for c in chars:
        field = FieldSpec(c)
        span = lie_simplicity(g, field)
        entry = {"characteristic": c, "span": _verdict_dict(span), "k0": None, "agreement": None}
        if pis.verdict:
            k0v = lie_simplicity_via_k0(g, field)
            entry["k0"] = _verdict_dict(k0v)
            entry["agreement"] = "AGREE" if k0v.status == span.status else "DISAGREE"
        rows.append(entry)

    payload = {
        "schema": SCHEMA,
        "command": "analyze",
        "graph": _graph_summary(g),
        "b_vectors": bvecs,
        "algebra_simple": _simplicity_dict(simple),
        "purely_infinite_simple": _simplicity_dict(pis),
        "k0": _k0_dict(g),
        "verdicts": rows,
    }

    lines = []
    gs = payload["graph"]
    lines.append(
        f"graph: {len(gs['vertices'])} vertices, {gs['edge_count']} edges"
    )
    lines.append("vertices: " + " ".join(gs["vertices"]))
    lines.append(
        "sinks: " + (" ".join(gs["sinks"]) or "(none)")
        + "   regular: " + (" ".join(gs["regular"]) or "(none)")
    )
    lines.append("B-vectors:")
    for v, b in zip(gs["vertices"], bvecs):
        lines.append(f"  B[{v}] = {_fmt_vec(b)}")
    if simple.verdict:
        lines.append("path algebra: simple (for every coefficient field)")
    else:
        lines.append("path algebra: NOT simple")
        for w in payload["algebra_simple"]["witnesses"]:
            lines.append(f"  witness: {w}")
    if pis.verdict:
        lines.append("purely infinite simple: yes")
    else:
        lines.append("purely infinite simple: no")
        for w in payload["purely_infinite_simple"]["witnesses"]:
            lines.append(f"  witness: {w}")
    k0 = payload["k0"]
    lines.append(
        f"K0 presentation: {k0['group']}   snf diagonal: {_fmt_vec(k0['snf_diagonal'])}"
        f"   unit class: {_fmt_vec(k0['unit_class'])}"
        f"   order: {k0['unit_class_order']}"
    )
    for entry in rows:
        span = entry["span"]
        line = f"char {entry['characteristic']}: {span['status']}   [span route: {span['reason']}]"
        lines.append(line)
        if span["certificate"] is not None and isinstance(span["certificate"], list):
            lines.append(f"  span coefficients: {_fmt_vec(span['certificate'])}")
        if entry["k0"] is not None:
            lines.append(
                f"  k0 route: {entry['k0']['status']} ({entry['k0']['reason']})"
                f" -- {entry['agreement']}"
            )
    human = "\n".join(lines) + "\n"
    _emit(args, payload, human)
    if all(entry["span"]["status"] == INAPPLICABLE for entry in rows):
        return 2
    return 0


# ---------------------------------------------------------------------------
# k0
# ---------------------------------------------------------------------------


def _cmd_k0(args) -> int:
    g = _load_graph(args.graph)
    extra = []
    if args.primes:
        for piece in args.primes.split(","):
            piece = piece.strip()
            if not piece:
                continue
            try:
                p = int(piece)
            except ValueError:
                raise _CliError(f"bad prime {piece!r}") from None
            if not is_prime(p):
                raise _CliError(f"--primes entries must be prime, got {p}")
            extra.append(p)
    primes = sorted(set(SMALL_PRIMES) | set(extra))
    pres = cokernel(m_matrix(g))
    info = _k0_dict(g)
    divisibility = {str(p): is_p_divisible(pres, p) for p in primes}
    payload = {
        "schema": SCHEMA,
        "command": "k0",
        "graph": _graph_summary(g),
        "k0": info,
        "p_divisibility": divisibility,
    }
    lines = [
        f"K0 presentation (cokernel of I - A^t): {info['group']}",
        f"snf diagonal: {_fmt_vec(info['snf_diagonal'])}",
        f"invariant factors (trivial suppressed): {_fmt_vec(info['nontrivial_factors'])}",
        f"unit class: {_fmt_vec(info['unit_class'])}",
        f"order of unit class: {info['unit_class_order']}",
        "p-divisibility of the unit class:",
    ]
    for p in primes:
        lines.append(f"  p = {p}: {'yes' if divisibility[str(p)] else 'no'}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# witness
# ---------------------------------------------------------------------------


def _cmd_witness(args) -> int:
    g = _load_graph(args.graph)
    chars = _parse_chars(args.char)
    if len(chars) != 1:
        raise _CliError("witness takes exactly one characteristic")
    field = FieldSpec(chars[0])
    raw = [piece.strip() for piece in args.coeffs.split(",") if piece.strip()]
    if len(raw) != g.num_vertices:
        raise _CliError(
            f"expected {g.num_vertices} coefficients, got {len(raw)}"
        )
    try:
        coeffs = [field.parse(piece) for piece in raw]
    except ValueError as exc:
        raise _CliError(str(exc)) from exc

    t = vertex_combination_in_commutator(g, coeffs, field)
    if t is None:
        bvecs = b_vectors(g)
        cols = list(zip(*bvecs)) if bvecs else []
        rank_b = rank_over_field(cols, field)
        augmented = [list(row) + [k] for row, k in zip(cols, coeffs)]
        rank_aug = rank_over_field(augmented, field)
        payload = {
            "schema": SCHEMA,
            "command": "witness",
            "characteristic": field.characteristic,
            "coefficients": [str(c) for c in coeffs],
            "membership": False,
            "certificate": {"rank_b": rank_b, "rank_augmented": rank_aug},
        }
        human = (
            "the vertex combination is NOT a sum of brackets over "
            f"{field.name}\n"
            f"certificate: rank of the B-vector matrix is {rank_b}, rank with the "
            f"target adjoined is {rank_aug}\n"
        )
        _emit(args, payload, human)
        return 2

    brackets = []
    w = CohnElement.zero(g, field)
    for i, v in enumerate(g.vertices):
        if not t[i]:
            continue
        for e in g.out_edges(v):
            brackets.append({"coefficient": str(-t[i]), "edge": e.label})
            w = w + commutator(
                CohnElement.edge(g, field, e), CohnElement.ghost_edge(g, field, e)
            ).scale(-t[i])
    correction = CohnElement.zero(g, field)
    for i, v in enumerate(g.vertices):
        if t[i]:
            correction = correction + n_generator(g, field, v).scale(t[i])
    ok = verify_witness(g, coeffs, t, field)
    payload = {
        "schema": SCHEMA,
        "command": "witness",
        "characteristic": field.characteristic,
        "coefficients": [str(c) for c in coeffs],
        "membership": True,
        "t": [str(x) for x in t],
        "commutators": brackets,
        "commutator_sum": str(w),
        "n_correction": str(correction),
        "verification": "VERIFIED" if ok else "FAILED",
    }
    mod = "" if field.characteristic == 0 else f" (mod {field.characteristic})"
    lines = [
        f"membership holds over {field.name}",
        f"t = {_fmt_vec(t)}{mod}",
        "commutator expression: "
        + " + ".join(f"{b['coefficient']} * [{b['edge']}, {b['edge']}^*]" for b in brackets),
        f"  = {w}",
        f"quotient correction (sum of t_i * y_i): {correction}",
        f"symbolic verification: {payload['verification']}",
    ]
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0 if ok else 3


# ---------------------------------------------------------------------------
# family / kp-check / selftest
# ---------------------------------------------------------------------------


def _cmd_family(args) -> int:
    try:
        g = family(args.name, args.params)
    except GraphError as exc:
        raise _CliError(str(exc)) from exc
    text = serialize_graph(g)
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": "family", "dsl": text}, indent=2))
    else:
        print(text, end="")
    return 0


def _cmd_kp_check(args) -> int:
    ga = _load_graph(args.graph_a)
    gb = _load_graph(args.graph_b)
    chars = _parse_chars(args.char)
    report = kp_consistency(ga, gb, chars, max_group_order=args.max_group_order)
    payload = {
        "schema": SCHEMA,
        "command": "kp-check",
        "applicable": report.applicable,
        "reason": report.reason,
        "k0_a": None,
        "k0_b": None,
        "pointed_iso": report.pointed_iso,
        "verdicts": [
            {
                "characteristic": c,
                "first": _verdict_dict(va),
                "second": _verdict_dict(vb),
                "agree": va.status == vb.status,
            }
            for c, va, vb in report.verdicts
        ],
        "contradiction": report.contradiction,
    }
    if report.applicable:
        payload["k0_a"] = {
            "group": report.presentation_a.group_description(),
            "invariant_factors": list(report.presentation_a.invariant_factors),
            "unit_class": list(report.presentation_a.unit_class),
        }
        payload["k0_b"] = {
            "group": report.presentation_b.group_description(),
            "invariant_factors": list(report.presentation_b.invariant_factors),
            "unit_class": list(report.presentation_b.unit_class),
        }
    if not report.applicable:
        human = f"inapplicable: {report.reason}\n"
    else:
        lines = [
            f"K0 first:  {payload['k0_a']['group']}   unit class {_fmt_vec(payload['k0_a']['unit_class'])}",
            f"K0 second: {payload['k0_b']['group']}   unit class {_fmt_vec(payload['k0_b']['unit_class'])}",
            f"pointed isomorphism: {report.pointed_iso}",
        ]
        for c, va, vb in report.verdicts:
            agree = "agree" if va.status == vb.status else "DIFFER"
            lines.append(f"char {c}: first {va.status}, second {vb.status} ({agree})")
        lines.append(
            "CONTRADICTION detected" if report.contradiction else "no contradiction"
        )
        human = "\n".join(lines) + "\n"
    _emit(args, payload, human)
    return 3 if report.contradiction else 0


def _selftest_checks():
    """The regression suite of worked examples; yields (name, ok) pairs."""
    ex4 = family("example4")
    yield (
        "four-vertex example: B-vectors",
        b_vectors(ex4)
        == [[0, 1, 0, 0], [1, -1, 0, 1], [0, 1, 0, 0], [0, 0, 1, -1]],
    )
    yield (
        "four-vertex example: simple at chars 0,2,3,5,7,11,13",
        all(
            lie_simplicity(ex4, FieldSpec(c)).status == SIMPLE
            for c in (0, 2, 3, 5, 7, 11, 13)
        ),
    )
    pq = family("prime_set", [6])
    yield (
        "prime-set graph with q=6: not simple exactly at 2 and 3",
        [c for c in DEFAULT_CHARS if lie_simplicity(pq, FieldSpec(c)).status != SIMPLE]
        == [2, 3],
    )
    tv = family("two_vertex", [2, 2, 2])
    yield (
        "two-vertex family (2,2,2): snf diagonal (2, 4)",
        smith_normal_form(m_matrix(tv)).diagonal == (2, 4),
    )
    yield (
        "two-vertex family (2,2,2): simple at char 2 on both routes",
        lie_simplicity(tv, FieldSpec(2)).status == SIMPLE
        and lie_simplicity_via_k0(tv, FieldSpec(2)).status == SIMPLE,
    )
    ok = True
    for n in range(2, 6):
        for d in range(1, 5):
            for c in (0, 2, 3, 5):
                field = FieldSpec(c)
                expect = leavitt_closed_form(n, d, field).status
                if matrix_lie_simplicity(family("rose", [n]), d, field).status != expect:
                    ok = False
                if d >= 2 and lie_simplicity(family("matrix_rose", [n, d]), field).status != expect:
                    ok = False
    yield ("rose/matrix closed-form coherence", ok)
    field0 = FieldSpec(0)
    rose3 = family("rose", [3])
    t = vertex_combination_in_commutator(rose3, [1], field0)
    yield (
        "rose(3): identity witness verifies over Q",
        t is not None and verify_witness(rose3, [1], t, field0),
    )
    rep = kp_consistency(family("rose", [2]), family("matrix_rose", [2, 3]), DEFAULT_CHARS)
    yield (
        "kp-check rose(2) vs matrix_rose(2,3): pointed iso, no contradiction",
        rep.pointed_iso == "exists" and not rep.contradiction,
    )


def _cmd_selftest(args) -> int:
    results = list(_selftest_checks())
    if args.json:
        payload = {
            "schema": SCHEMA,
            "command": "selftest",
            "checks": [{"name": name, "ok": ok} for name, ok in results],
            "ok": all(ok for _, ok in results),
        }
        print(json.dumps(payload, indent=2))
    else:
        for name, ok in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 0 if all(ok for _, ok in results) else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lpa-lie",
        description="Simplicity of path algebras and their commutator Lie algebras.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one graph")
    p.add_argument("graph", help="graph file, or - for stdin")
    p.add_argument("--char", default="0,2,3,5,7", help="comma list of characteristics")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("k0", help="cokernel presentation and divisibility data")
    p.add_argument("graph")
    p.add_argument("--primes", default="", help="extra primes for divisibility checks")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_k0)

    p = sub.add_parser("witness", help="symbolic bracket witness for a vertex combination")
    p.add_argument("graph")
    p.add_argument("--coeffs", required=True, help="comma list of coefficients")
    p.add_argument("--char", default="0", help="one characteristic")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("family", help="emit a named family graph as text")
    p.add_argument("name", help="one of: " + ", ".join(family_names()))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_family)

    p = sub.add_parser("kp-check", help="pointed-K0 comparison of two graphs")
    p.add_argument("graph_a")
    p.add_argument("graph_b")
    p.add_argument("--char", default="0,2,3,5,7")
    p.add_argument("--max-group-order", type=int, default=10**6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_kp_check)

    p = sub.add_parser("selftest", help="run the worked-example regression suite")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
