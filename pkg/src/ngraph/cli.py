"""Command line front end: ``ngraph <command> [flags]``.

Exit codes: 0 for success or a positive verdict, 1 for a negative verdict
(not regular, not equal, unknown within bound, failed check), 2 for errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional, Sequence, Tuple

from . import aperiodicity, ideals
from .builders import EXAMPLES, example
from .graph import GraphError, NGraph, path_text
from .graphio import parse_graph_text, read_graph, render_graph
from .kp import ElementSyntaxError, KPAlgebra, degree_support, equals, normal_form, render_element
from .multidegree import MultiIndex, parse as parse_degree, render as render_degree
from .pathrep import check_ck, omega_matrix_units
from .rings import ring_from_name

COMMANDS = (
    "validate", "ideals", "closure", "quotient", "regular", "aperiodic",
    "separate", "kp-eval", "kp-equal", "rep-check", "omega-check", "render",
)


class Output:
    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: List[str] = []

    def say(self, human: str, *fields: Tuple[str, object]) -> None:
        """Add one line; machine mode prints ``key=value`` fields instead."""
        if self.machine:
            if fields:
                self.lines.append(" ".join(f"{k}={v}" for k, v in fields))
        else:
            self.lines.append(human)

    def text(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def parse_graph_file(text: str) -> NGraph:
    return parse_graph_text(text, validate=True)


def load_graph(where: str, truncate: Optional[int] = None, validate: bool = True) -> NGraph:
    if os.path.exists(where):
        g = read_graph(where, validate=validate)
    elif where in EXAMPLES or where.upper() in {e.upper() for e in EXAMPLES}:
        g = example(where)
    else:
        raise FileNotFoundError(f"no graph file or example named {where!r}")
    if truncate is not None:
        g = g.truncate(truncate)
    return g


def parse_set(text: Optional[str], g: NGraph) -> frozenset:
    body = (text or "").strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    members = [t.strip() for t in body.replace(" ", ",").split(",") if t.strip()]
    for v in members:
        if not g.has_vertex(v):
            raise ValueError(f"unknown vertex {v!r}")
    return frozenset(members)


def _index(text: Optional[str], flag: str) -> MultiIndex:
    if text is None:
        raise ValueError(f"{flag} is required")
    return parse_degree(text)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ngraph", description="Row-finite N-graphs and their Kumjian-Pask algebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="elements, vertices or other positional inputs")
    p.add_argument("--graph", help="graph file, or one of " + ", ".join(EXAMPLES))
    p.add_argument("--set", dest="vertex_set", help="vertex set such as u,v")
    p.add_argument("--ring", default="int", help="int, rat or mod:m")
    p.add_argument("--pair-cap", dest="pair_cap")
    p.add_argument("--bound")
    p.add_argument("--cap")
    p.add_argument("--truncate", type=int)
    p.add_argument("--machine", action="store_true", help="stable key=value output")
    return p


def _need_graph(args) -> NGraph:
    if not args.graph:
        raise ValueError("--graph is required")
    return load_graph(args.graph, args.truncate)


def cmd_validate(args, out: Output) -> int:
    if not args.graph:
        raise ValueError("--graph is required")
    g = load_graph(args.graph, args.truncate, validate=False)
    report = g.validate()
    for c in report.checks:
        out.say(f"{c.name}: {'ok' if c.passed else 'FAIL'}", ("check", c.name), ("passed", c.passed))
        for prob in c.problems:
            out.say(f"  {prob}", ("problem", c.name), ("detail", prob.replace(" ", "_")))
    out.say("valid" if report.passed else "invalid", ("valid", report.passed))
    return 0 if report.passed else 1


def cmd_ideals(args, out: Output) -> int:
    g = _need_graph(args)
    lattice = ideals.enumerate_lattice(g)
    out.say(f"{len(lattice)} saturated hereditary sets", ("count", len(lattice)))
    for h in lattice:
        tag = "regular" if ideals.is_regular(h, g) else "not regular"
        out.say(f"{ideals.render_set(h)} {tag}", ("set", ideals.render_set(h)), ("regular", tag == "regular"))
    return 0


def cmd_closure(args, out: Output) -> int:
    g = _need_graph(args)
    h = parse_set(args.vertex_set, g)
    c = ideals.closure(h, g)
    out.say(f"closure = {ideals.render_set(c)}", ("closure", ideals.render_set(c)))
    return 0


def cmd_quotient(args, out: Output) -> int:
    g = _need_graph(args)
    h = parse_set(args.vertex_set, g)
    q = ideals.quotient(g, h)
    text = render_graph(q).rstrip("\n")
    if out.machine:
        out.say("", ("vertices", ",".join(q.vertices)), ("edges", len(q.edges)), ("valid", q.validate().passed))
    else:
        out.lines.extend(text.split("\n"))
    return 0


def cmd_regular(args, out: Output) -> int:
    g = _need_graph(args)
    h = parse_set(args.vertex_set, g)
    dp = ideals.double_perp(h, g)
    pp = ideals.perp(h, g)
    regular = dp == h
    out.say(f"perp = {ideals.render_set(pp)}", ("perp", ideals.render_set(pp)))
    if regular:
        out.say("regular", ("regular", True), ("double_perp", ideals.render_set(dp)))
    else:
        out.say(f"not regular: double-perp = {ideals.render_set(dp)}",
                ("regular", False), ("double_perp", ideals.render_set(dp)))
    return 0 if regular else 1


def cmd_aperiodic(args, out: Output) -> int:
    g = _need_graph(args)
    cap = _index(args.pair_cap, "--pair-cap")
    bound = _index(args.bound, "--bound")
    verdict = aperiodicity.is_aperiodic(g, cap, bound)
    rows = [(k, verdict.witnesses[k]) for k in verdict.witnesses] + [(k, None) for k in verdict.unresolved]
    rows.sort(key=lambda kv: (kv[0][0], kv[0][1].sort_key(), kv[0][2].sort_key()))
    for (v, m, n), lam in rows:
        result = path_text(lam) if lam is not None else "unknown"
        out.say(f"{v} {render_degree(m)} {render_degree(n)} -> {result}",
                ("vertex", v), ("m", render_degree(m).replace(" ", "")),
                ("n", render_degree(n).replace(" ", "")), ("witness", result))
    out.say(verdict.status, ("status", verdict.status))
    return 0 if verdict.witnessed else 1


def cmd_separate(args, out: Output) -> int:
    g = _need_graph(args)
    if len(args.inputs) != 1:
        raise ValueError("separate takes one vertex")
    v = args.inputs[0]
    if not g.has_vertex(v):
        raise ValueError(f"unknown vertex {v!r}")
    lam = aperiodicity.separating_path(v, _index(args.cap, "--cap"), _index(args.bound, "--bound"), g)
    if lam is None:
        out.say(aperiodicity.UNKNOWN, ("status", aperiodicity.UNKNOWN))
        return 1
    out.say(f"separating path {path_text(lam)}", ("status", "found"), ("path", path_text(lam)))
    return 0


def _algebra(args) -> KPAlgebra:
    return KPAlgebra(_need_graph(args), ring_from_name(args.ring))


def cmd_kp_eval(args, out: Output) -> int:
    alg = _algebra(args)
    if len(args.inputs) != 1:
        raise ValueError("kp-eval takes one element")
    x = alg.parse(args.inputs[0])
    nf = normal_form(x)
    support = " ".join(render_degree(c).replace(" ", "") for c in degree_support(nf))
    out.say(f"value = {render_element(x)}", ("value", render_element(x).replace(" ", "")))
    out.say(f"normal form = {render_element(nf)}", ("normal_form", render_element(nf).replace(" ", "")))
    out.say(f"components = [{support}]", ("components", support.replace(" ", ";") or "none"))
    return 0


def cmd_kp_equal(args, out: Output) -> int:
    alg = _algebra(args)
    if len(args.inputs) != 2:
        raise ValueError("kp-equal takes two elements")
    x, y = (alg.parse(t) for t in args.inputs)
    same = equals(x, y)
    if not same:
        diff = render_element(normal_form(x - y))
        out.say(f"not equal: difference = {diff}", ("equal", False), ("difference", diff.replace(" ", "")))
        return 1
    out.say("equal", ("equal", True))
    return 0


def _report(report, out: Output) -> int:
    for r in report.results:
        state = "skipped" if r.skipped else ("ok" if r.passed else "FAIL")
        out.say(r.line(), ("relation", r.name), ("status", state),
                ("instances", r.instances), ("columns", r.dimension))
        for f in r.failures[:10]:
            out.say(f"  {f}", ("failure", f.replace(" ", "_")))
    out.say("pass" if report.passed else "fail", ("passed", report.passed))
    return 0 if report.passed else 1


def cmd_rep_check(args, out: Output) -> int:
    g = _need_graph(args)
    return _report(check_ck(g, _index(args.cap, "--cap"), ring_from_name(args.ring)), out)


def cmd_omega_check(args, out: Output) -> int:
    return _report(omega_matrix_units(_index(args.cap, "--cap")), out)


def cmd_render(args, out: Output) -> int:
    g = _need_graph(args)
    out.lines.extend(render_graph(g).rstrip("\n").split("\n"))
    return 0


HANDLERS = {
    "validate": cmd_validate,
    "ideals": cmd_ideals,
    "closure": cmd_closure,
    "quotient": cmd_quotient,
    "regular": cmd_regular,
    "aperiodic": cmd_aperiodic,
    "separate": cmd_separate,
    "kp-eval": cmd_kp_eval,
    "kp-equal": cmd_kp_equal,
    "rep-check": cmd_rep_check,
    "omega-check": cmd_omega_check,
    "render": cmd_render,
}


def run(argv: Sequence[str]) -> Tuple[int, str]:
    """Run one command; returns ``(exit_code, text)`` with errors folded into the text."""
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(list(argv))
    except _UsageError as exc:
        return 2, f"usage error: {exc}\n"
    out = Output(args.machine)
    try:
        code = HANDLERS[args.command](args, out)
    except (GraphError, ElementSyntaxError, ValueError, KeyError, FileNotFoundError) as exc:
        return 2, out.text() + f"error: {exc}\n"
    return code, out.text()


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code == 2 else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
