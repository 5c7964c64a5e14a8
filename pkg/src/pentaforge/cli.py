"""pentaforge command line.

Exit codes: 0 ok, 1 negative result, 2 input error, 3 internal contradiction.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from .certificates import (
    Certificate,
    CertificateFormatError,
    Thickened,
    Villa,
    certificate_from_json,
    certificate_problems,
)
from .cliquewidth import NotBuildable, evaluate, expr_for, to_text, width
from .coloring import NotInClassError, chromatic_structured
from .families import (
    ParamError,
    hyperhole,
    random_member,
    random_ring,
    thicken,
)
from .graph import (
    Graph,
    GraphFormatError,
    load_graph,
    simplicial_vertices,
    universal_vertices,
)
from .named import base_library, pentagon
from .patterns import forbidden_profile
from .recognizer import InternalContradiction, NotInClass, classify, outcome_to_json

OK, NEGATIVE, BAD_INPUT, CONTRADICTION = 0, 1, 2, 3
RANDOM_TAGS = ("basket", "villa", "mansion", "crown", "ring", "thicken")
TAGS = RANDOM_TAGS + ("pentagon", "hyperhole")


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PENTAFORGE_SEED")
    if env is None:
        raise InputError(f"{args.tag} is randomized: pass --seed or set PENTAFORGE_SEED")
    try:
        return int(env)
    except ValueError:
        raise InputError(f"PENTAFORGE_SEED must be an integer, got {env!r}") from None


def _ints(text: str | None, what: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers") from None


def _generate(args, seed: int | None) -> tuple[Graph, dict]:
    """One instance for ``args.tag``; returns the graph and the side-car JSON."""
    tag = args.tag
    if tag.startswith("base:"):
        name = tag[5:]
        lib = base_library()
        if name not in lib:
            raise InputError(f"unknown base {name!r}; choose from {', '.join(lib)}")
        g = lib[name]
        cert = Certificate(Thickened(name, tuple((v,) for v in range(g.n))))
        return g, cert.to_json()
    if tag == "pentagon":
        t = args.t if args.t is not None else 3
        if t < 3:
            raise InputError("pentagon needs --t >= 3")
        g = pentagon(t)
        cert = Certificate(Villa((0,), tuple((i,) for i in range(1, t + 1)),
                                 tuple((t + i,) for i in range(1, t + 1))))
        return g, cert.to_json()
    if tag == "hyperhole":
        sizes = _ints(args.sizes, "--sizes") or [1] * (args.k or 5)
        k = args.k or len(sizes)
        g = hyperhole(k, sizes)
        return g, {"ring_parts": _blocks(sizes)}
    if tag == "ring":
        k = args.k or 5
        g, parts = random_ring(k, args.budget, seed)
        return g, {"ring_parts": [list(p) for p in parts]}
    if tag == "thicken":
        name = args.base or "T0"
        lib = base_library()
        if name not in lib:
            raise InputError(f"unknown base {name!r}")
        base = lib[name]
        mult = _ints(args.mult, "--mult")
        if mult is None:
            rng = random.Random(f"thicken:{name}:{seed}")
            mult = [rng.randint(1, 3) for _ in range(base.n)]
        g, blocks = thicken(base, mult)
        cert = Certificate(Thickened(name, tuple(tuple(sorted(b)) for b in blocks)))
        return g, cert.to_json()
    g, cert = random_member(tag, args.budget, seed, t=args.t)
    return g, cert.to_json()


def _blocks(sizes: list[int]) -> list[list[int]]:
    out, start = [], 0
    for s in sizes:
        out.append(list(range(start, start + s)))
        start += s
    return out


def _instance_path(base: Path, index: int, count: int) -> Path:
    if count == 1:
        return base
    return base.with_name(f"{base.stem}-{index}{base.suffix}")


def _cert_path(graph_path: Path) -> Path:
    return graph_path.with_name(graph_path.stem + ".cert.json")


def cmd_gen(args) -> int:
    if args.tag not in TAGS and not args.tag.startswith("base:"):
        raise InputError(f"unknown family tag {args.tag!r}")
    randomized = args.tag in RANDOM_TAGS and not (args.tag == "thicken" and args.mult)
    seed = _seed(args) if randomized else None
    if args.count < 1:
        raise InputError("--count must be at least 1")
    for index in range(args.count):
        s = None if seed is None else seed + index
        try:
            g, side = _generate(args, s)
        except ParamError as exc:
            raise InputError(str(exc)) from None
        meta = {"family": args.tag, "seed": s}
        side = {**side, **meta}
        header = f"# family {args.tag}" + ("" if s is None else f" seed {s}") + "\n"
        graph_text = (_dump(g.to_json()) + "\n" if args.format == "json"
                      else header + g.to_text())
        if args.output:
            path = _instance_path(Path(args.output), index, args.count)
            path.write_text(graph_text)
            _cert_path(path).write_text(_dump(side) + "\n")
        elif args.format == "json":
            print(_dump({"graph": g.to_json(), "certificate": side}))
        else:
            sys.stdout.write(graph_text)
            print("# certificate " + _dump(side))
        if args.dot:
            Path(_instance_path(Path(args.dot), index, args.count)).write_text(g.to_dot())
    return OK


def _read_graph(path: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return load_graph(text)
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_check(args) -> int:
    g = _read_graph(args.graph)
    prof = forbidden_profile(g)
    print(_dump({
        "profile": prof.to_json(),
        "simplicial": sorted(simplicial_vertices(g)),
        "universal": sorted(universal_vertices(g)),
    }))
    return OK if prof.in_class else NEGATIVE


def cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    if g.n == 0:
        raise InputError("classify needs at least one vertex")
    outcome = classify(g)
    print(_dump(outcome_to_json(outcome)))
    return NEGATIVE if isinstance(outcome, NotInClass) else OK


def cmd_cwd(args) -> int:
    g = _read_graph(args.graph)
    try:
        e = expr_for(g)
    except NotBuildable as exc:
        print(_dump(outcome_to_json(exc.outcome)))
        return NEGATIVE
    text = to_text(e)
    verified = evaluate(e).matches(g)
    if args.format == "text":
        print(text)
    else:
        print(_dump({"width": width(e), "expr": text, "verified": verified}))
    return OK if verified else CONTRADICTION


def cmd_color(args) -> int:
    g = _read_graph(args.graph)
    try:
        res = chromatic_structured(g)
    except NotInClassError as exc:
        print(_dump({"outcome": "not_in_class", "pattern": exc.pattern,
                     "witness": list(exc.witness)}))
        return NEGATIVE
    if args.k is None:
        print(_dump(res.to_json()))
        return OK
    ok = res.chi <= args.k
    out = {"k": args.k, "colorable": ok}
    if ok:
        out["assignment"] = res.to_json()["assignment"]
    print(_dump(out))
    return OK if ok else NEGATIVE


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    try:
        cert = certificate_from_json(Path(args.cert).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.cert}: {exc.strerror}") from None
    except CertificateFormatError as exc:
        raise InputError(f"{args.cert}: {exc}") from None
    problems = certificate_problems(g, cert)
    print(_dump({"verified": not problems, "problems": problems}))
    return NEGATIVE if problems else OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pentaforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate family members with certificates")
    gen.add_argument("tag", help=f"one of {', '.join(TAGS)} or base:<name>")
    gen.add_argument("--budget", type=int, default=20, help="maximum vertex count")
    gen.add_argument("--seed", type=int, help="PRNG seed (falls back to PENTAFORGE_SEED)")
    gen.add_argument("--t", type=int, help="number of B/C pairs (pentagon, villa, mansion)")
    gen.add_argument("--k", type=int, help="ring length (ring, hyperhole)")
    gen.add_argument("--sizes", help="hyperhole part sizes, comma separated")
    gen.add_argument("--base", help="base name for thicken")
    gen.add_argument("--mult", help="thicken multiplicities, comma separated")
    gen.add_argument("--count", type=int, default=1, help="instances, seeds seed..seed+N-1")
    gen.add_argument("--format", choices=("text", "json"), default="text")
    gen.add_argument("--dot", help="also write Graphviz DOT to this path")
    gen.add_argument("-o", "--output", help="graph path; certificate goes next to it")
    gen.set_defaults(run=cmd_gen)

    for name, fn, text in (
        ("check", cmd_check, "forbidden-pattern profile; exit 0 iff in the class"),
        ("classify", cmd_classify, "structural certificate or a reason there is none"),
        ("cwd", cmd_cwd, "k-expression of bounded width"),
        ("color", cmd_color, "chromatic number with a witness coloring"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("graph", help="graph file ('-' for stdin)")
        if name == "cwd":
            sp.add_argument("--format", choices=("text", "json"), default="json")
        if name == "color":
            sp.add_argument("--k", type=int, help="decide k-colorability instead")
        sp.set_defaults(run=fn)

    ver = sub.add_parser("verify", help="check a certificate against a graph")
    ver.add_argument("graph")
    ver.add_argument("cert")
    ver.set_defaults(run=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except InputError as exc:
        print(f"pentaforge: {exc}", file=sys.stderr)
        return BAD_INPUT
    except InternalContradiction as exc:
        print(f"pentaforge: internal contradiction: {exc}", file=sys.stderr)
        return CONTRADICTION


if __name__ == "__main__":
    sys.exit(main())
