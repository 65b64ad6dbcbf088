"""Command-line front end.

Exit codes: 0 success / decision-yes, 1 decision-no, 2 usage error,
3 contract or precondition error, 4 resource cap or timeout (outcome
unknown).  Every invocation emits a run manifest (JSON on stderr, or to
a file via --manifest) recording the command line, input hashes, seed,
version, timing and outcome; outputs on stdout are byte-deterministic
for fixed inputs and seed.

All data formats are plain text: graphs and groups in the formats of
graph_core/typeset, witnesses as "witness <kind>" blocks with one
"map <u> <v>" line per vertex and "switch <u> <k>" lines giving group
element indices.  Report-producing subcommands accept --report-dir and
write CSV tables plus rendered figures there.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .errors import (
    ContractError,
    ResourceLimitError,
    TimeoutExceeded,
    ValidationError,
)
from .graph_core import NMGraph, format_graph, parse_graph, to_dot
from .hom_engine import (
    HomWitness,
    IsoWitness,
    gamma_core,
    gamma_hom,
    gamma_hom_brute_force,
    gamma_iso,
    gamma_iso_via_rho,
    verify_hom_witness,
    verify_iso_witness,
)
from .switching import SwitchAssignment, apply_assignment, rho
from .typeset import SwitchGroup, is_abelian, is_consistent, is_lmw_style, \
    is_switch_commutative, orbits, parse_group
from .category import coproduct, product_gamma, universal_property_check
from .chromatic import (
    build_forest_target,
    forest_theorem_check,
    gamma_chromatic,
)

DEFAULT_TIMEOUT = 60.0

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_CONTRACT = 3
EXIT_RESOURCE = 4


@dataclass
class RunManifest:
    command: list[str]
    inputs: dict[str, str]
    seed: int | None
    version: str
    elapsed_secs: float
    outcome: str
    exit_code: int


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _read(path: str) -> str:
    with open(path, "r") as handle:
        return handle.read()


def _load_graph(path: str) -> NMGraph:
    return parse_graph(_read(path))


def _load_group(path: str) -> SwitchGroup:
    return parse_group(_read(path))


def _write_or_print(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# ---------------------------------------------------------------------------
# Witness block format
# ---------------------------------------------------------------------------


def format_witness(kind: str, witness: HomWitness | IsoWitness, group: SwitchGroup) -> str:
    lines = [f"witness {kind}"]
    for u in sorted(witness.vertex_map):
        lines.append(f"map {u} {witness.vertex_map[u]}")
    for u in sorted(dict(witness.assignment.items())):
        sigma = dict(witness.assignment.items())[u]
        lines.append(f"switch {u} {group.index_of(sigma)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_witness(text: str, group: SwitchGroup) -> tuple[str, HomWitness]:
    kind = None
    vertex_map: dict[str, str] = {}
    switches = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if kind is None:
            if fields[0] != "witness" or len(fields) != 2:
                raise ValidationError(f"line {lineno}: expected 'witness <kind>'")
            kind = fields[1]
            continue
        if fields[0] == "end":
            break
        if fields[0] == "map" and len(fields) == 3:
            vertex_map[fields[1]] = fields[2]
        elif fields[0] == "switch" and len(fields) == 3:
            switches[fields[1]] = group.element(int(fields[2]))
        else:
            raise ValidationError(f"line {lineno}: bad witness line {raw!r}")
    if kind is None:
        raise ValidationError("witness block missing 'witness <kind>' header")
    return kind, HomWitness(vertex_map, SwitchAssignment(switches))


def _witness_dump(witness: HomWitness | IsoWitness, group: SwitchGroup) -> str:
    e = group.identity
    lines = []
    for u in sorted(witness.vertex_map):
        sigma = witness.assignment.get(u, e)
        lines.append(f"{u} -> {witness.vertex_map[u]}  switch {group.index_of(sigma)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommand handlers: return (exit_code, outcome)
# ---------------------------------------------------------------------------


def _cmd_group_info(args) -> tuple[int, str]:
    group = _load_group(args.group)
    orbit_text = " ".join(
        "{" + ",".join(str(t) for t in orbit) + "}" for orbit in orbits(group))
    print(f"order {len(group)}")
    print(f"abelian {'yes' if is_abelian(group) else 'no'}")
    print(f"switch-commutative {'yes' if is_switch_commutative(group) else 'no'}")
    print(f"lmw {'yes' if is_lmw_style(group) else 'no'}")
    print(f"orbits {orbit_text}")
    print(f"consistent {'yes' if is_consistent(group) else 'no'}")
    return EXIT_YES, "yes"


def _cmd_switch(args) -> tuple[int, str]:
    g = _load_graph(args.graph)
    group = _load_group(args.group)
    switches = {}
    if args.assign:
        for item in args.assign.split(","):
            v, _, k = item.partition("=")
            if not k:
                raise ValidationError(f"bad --assign entry {item!r}, want v=k")
            switches[v.strip()] = group.element(int(k))
    switched = apply_assignment(g, SwitchAssignment(switches), group)
    _write_or_print(format_graph(switched), args.out)
    return EXIT_YES, "yes"


def _cmd_rho(args) -> tuple[int, str]:
    g = _load_graph(args.graph)
    group = _load_group(args.group)
    blowup = rho(g, group)
    _write_or_print(format_graph(blowup.graph), args.out)
    return EXIT_YES, "yes"


def _cmd_hom(args) -> tuple[int, str]:
    g = _load_graph(args.g)
    h = _load_graph(args.h)
    group = _load_group(args.group)
    propagation = "ac3" if args.ac3 else "fc"
    witness = gamma_hom(g, h, group, timeout=args.timeout, propagation=propagation)
    if witness is None:
        print("none")
        return EXIT_NO, "no"
    sys.stdout.write(_witness_dump(witness, group))
    if args.emit_witness:
        sys.stdout.write(format_witness("hom", witness, group))
    return EXIT_YES, "yes"


def _cmd_iso(args) -> tuple[int, str]:
    g = _load_graph(args.g)
    h = _load_graph(args.h)
    group = _load_group(args.group)
    if args.via_rho:
        verdict = gamma_iso_via_rho(g, h, group, timeout=args.timeout)
        print("yes" if verdict else "none")
        return (EXIT_YES, "yes") if verdict else (EXIT_NO, "no")
    witness = gamma_iso(g, h, group, timeout=args.timeout)
    if witness is None:
        print("none")
        return EXIT_NO, "no"
    sys.stdout.write(_witness_dump(witness, group))
    if args.emit_witness:
        sys.stdout.write(format_witness("iso", witness, group))
    return EXIT_YES, "yes"


def _cmd_core(args) -> tuple[int, str]:
    g = _load_graph(args.g)
    group = _load_group(args.group)
    core = gamma_core(g, group, timeout=args.timeout)
    _write_or_print(format_graph(core), args.out)
    return EXIT_YES, "yes"


def _cmd_product(args) -> tuple[int, str]:
    g = _load_graph(args.g)
    h = _load_graph(args.h)
    group = _load_group(args.group)
    prod = product_gamma(g, h, group)
    _write_or_print(format_graph(prod.graph), args.out)
    if args.check_universal:
        trial = _load_graph(args.check_universal)
        report = universal_property_check(prod, g, h, trial, group, timeout=args.timeout)
        print(f"universal exists {'yes' if report.exists else 'no'}")
        print(f"universal commutes {'yes' if report.commutes else 'no'}")
        print(f"universal unique {'yes' if report.unique else 'no'}")
        print(f"universal variants {report.mediating_variants}")
        if not report.ok:
            return EXIT_NO, "no"
    return EXIT_YES, "yes"


def _cmd_coproduct(args) -> tuple[int, str]:
    g = _load_graph(args.g)
    h = _load_graph(args.h)
    cop = coproduct(g, h)
    _write_or_print(format_graph(cop.graph), args.out)
    return EXIT_YES, "yes"


def _cmd_chromatic(args) -> tuple[int, str]:
    g = _load_graph(args.g)
    group = _load_group(args.group)
    result = gamma_chromatic(g, group, timeout=args.timeout)
    print(f"chromatic {result.value}")
    sys.stdout.write(format_graph(result.witness_target))
    sys.stdout.write(_witness_dump(result.witness_hom, group))
    if args.emit_witness:
        sys.stdout.write(format_witness("hom", result.witness_hom, group))
    if args.report_dir:
        from .report import save_graph_figure, write_csv

        outdir = Path(args.report_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        write_csv(
            outdir / "chromatic.csv",
            ["graph", "group_order", "chromatic", "target_vertices", "exhausted_below"],
            [[args.g, len(group), result.value,
              result.witness_target.n_vertices,
              " ".join(map(str, result.exhausted_below))]],
        )
        save_graph_figure(g, outdir / "input.png", title="input graph")
        save_graph_figure(result.witness_target, outdir / "target.png",
                          title=f"chromatic target ({result.value} vertices)")
    return EXIT_YES, "yes"


def _cmd_forest_target(args) -> tuple[int, str]:
    group = _load_group(args.group)
    alphabet = group.alphabet
    if (alphabet.n, alphabet.m) != (args.n, args.m):
        raise ContractError(
            f"group alphabet ({alphabet.n},{alphabet.m}) does not match ({args.n},{args.m})")
    target = build_forest_target(alphabet, group)
    _write_or_print(format_graph(target), args.out)
    return EXIT_YES, "yes"


def _cmd_forest_check(args) -> tuple[int, str]:
    group = _load_group(args.group)
    alphabet = group.alphabet
    if (alphabet.n, alphabet.m) != (args.n, args.m):
        raise ContractError(
            f"group alphabet ({alphabet.n},{alphabet.m}) does not match ({args.n},{args.m})")
    report = forest_theorem_check(
        alphabet, group, trials=args.trials, seed=args.seed,
        timeout=args.timeout, jobs=args.jobs)
    print(f"bound {report.bound}")
    print(f"orbits {report.orbit_count}")
    print(f"consistent {'yes' if report.consistent else 'no'}")
    print(f"upper {report.upper_ok}/{report.trials}")
    print(f"greedy-fallbacks {report.greedy_fallbacks}")
    if report.lower_value is not None:
        print(f"lower {report.lower_value}")
        print(f"lower-ok {'yes' if report.lower_ok else 'no'}")
    ok = report.upper_ok == report.trials and report.lower_ok in (None, True)
    if args.report_dir:
        from .report import save_graph_figure, write_csv

        outdir = Path(args.report_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        write_csv(
            outdir / "forest_check.csv",
            ["seed", "trials", "bound", "orbits", "consistent",
             "upper_ok", "greedy_fallbacks", "lower_value", "lower_ok"],
            [[args.seed, report.trials, report.bound, report.orbit_count,
              report.consistent, report.upper_ok, report.greedy_fallbacks,
              report.lower_value, report.lower_ok]],
        )
        target = build_forest_target(alphabet, group)
        save_graph_figure(target, outdir / "target.png",
                          title=f"forest target, bound {report.bound}")
    print("ok" if ok else "failed")
    return (EXIT_YES, "yes") if ok else (EXIT_NO, "no")


def _cmd_oracle(args) -> tuple[int, str]:
    if args.kind != "hom":
        raise ValidationError(f"oracle supports 'hom', got {args.kind!r}")
    g = _load_graph(args.g)
    h = _load_graph(args.h)
    group = _load_group(args.group)
    engine = gamma_hom(g, h, group, timeout=args.timeout) is not None
    brute = gamma_hom_brute_force(g, h, group) is not None
    agree = engine == brute
    print(f"engine {'yes' if engine else 'no'}")
    print(f"oracle {'yes' if brute else 'no'}")
    print(f"agree {'yes' if agree else 'no'}")
    if args.report_dir:
        from .report import write_csv

        outdir = Path(args.report_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        write_csv(
            outdir / "oracle.csv",
            ["g", "h", "group_order", "engine", "oracle", "agree"],
            [[args.g, args.h, len(group), engine, brute, agree]],
        )
    return (EXIT_YES, "yes") if agree else (EXIT_NO, "no")


def _cmd_dot(args) -> tuple[int, str]:
    g = _load_graph(args.graph)
    _write_or_print(to_dot(g), args.out)
    return EXIT_YES, "yes"


def _cmd_render(args) -> tuple[int, str]:
    from .report import save_graph_figure

    g = _load_graph(args.graph)
    save_graph_figure(g, args.out, title=args.title)
    return EXIT_YES, "yes"


def _cmd_verify(args) -> tuple[int, str]:
    g = _load_graph(args.g)
    h = _load_graph(args.h)
    group = _load_group(args.group)
    kind, witness = parse_witness(_read(args.witness), group)
    if kind == "hom":
        ok = verify_hom_witness(g, h, group, witness)
    elif kind == "iso":
        ok = verify_iso_witness(g, h, group,
                                IsoWitness(witness.vertex_map, witness.assignment))
    else:
        raise ValidationError(f"unknown witness kind {kind!r}")
    print("valid" if ok else "invalid")
    return (EXIT_YES, "yes") if ok else (EXIT_NO, "no")


# ---------------------------------------------------------------------------
# Parser and dispatch
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="switchhom",
        description="Homomorphisms of (n,m)-graphs under generalized switch")
    parser.add_argument("--manifest", help="also write the run manifest JSON here")
    parser.add_argument("--timeout", type=float, default=None,
                        help="per-decision time budget in seconds "
                             "(default 60, or SWITCHHOM_TIMEOUT_SECS)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker count for parallelizable reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-info", help="print group predicates and orbits")
    p.add_argument("group")
    p.set_defaults(func=_cmd_group_info)

    p = sub.add_parser("switch", help="apply per-vertex switches")
    p.add_argument("graph")
    p.add_argument("group")
    p.add_argument("--assign", default="", help="v=k,w=j (group element indices)")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_switch)

    p = sub.add_parser("rho", help="emit the switched blowup graph")
    p.add_argument("graph")
    p.add_argument("group")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_rho)

    p = sub.add_parser("hom", help="decide a switching homomorphism")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("group")
    p.add_argument("--emit-witness", action="store_true")
    p.add_argument("--ac3", action="store_true", help="full arc consistency")
    p.set_defaults(func=_cmd_hom)

    p = sub.add_parser("iso", help="decide a switching isomorphism")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("group")
    p.add_argument("--emit-witness", action="store_true")
    p.add_argument("--via-rho", action="store_true",
                   help="decide through the blowup criterion instead")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("core", help="compute the switching core")
    p.add_argument("g")
    p.add_argument("group")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_core)

    p = sub.add_parser("product", help="categorical product construction")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("group")
    p.add_argument("--check-universal", metavar="TRIAL",
                   help="vet the universal property against a trial graph")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("coproduct", help="disjoint-union coproduct")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_coproduct)

    p = sub.add_parser("chromatic", help="least target order with a hom")
    p.add_argument("g")
    p.add_argument("group")
    p.add_argument("--emit-witness", action="store_true")
    p.add_argument("--report-dir")
    p.set_defaults(func=_cmd_chromatic)

    p = sub.add_parser("forest-target", help="build the forest bound target")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("group")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_forest_target)

    p = sub.add_parser("forest-check", help="empirical forest bound check")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("group")
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-dir")
    p.set_defaults(func=_cmd_forest_check)

    p = sub.add_parser("oracle", help="compare engine against brute force")
    p.add_argument("kind", choices=["hom"])
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("group")
    p.add_argument("--report-dir")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("dot", help="emit DOT text")
    p.add_argument("graph")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_dot)

    p = sub.add_parser("render", help="render a figure of the graph")
    p.add_argument("graph")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--title")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("verify", help="re-verify an emitted witness")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("group")
    p.add_argument("--witness", required=True)
    p.set_defaults(func=_cmd_verify)

    return parser


_INPUT_ARGS = ("graph", "g", "h", "group", "check_universal", "witness")


def dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    start = time.monotonic()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.timeout is None:
        env = os.environ.get("SWITCHHOM_TIMEOUT_SECS")
        args.timeout = float(env) if env else DEFAULT_TIMEOUT

    inputs = {}
    outcome = "error"
    code = EXIT_USAGE
    try:
        for name in _INPUT_ARGS:
            path = getattr(args, name, None)
            if path and os.path.exists(path):
                inputs[path] = _sha256(path)
        code, outcome = args.func(args)
    except TimeoutExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        code, outcome = EXIT_RESOURCE, "unknown"
    except ResourceLimitError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        code, outcome = EXIT_RESOURCE, "error"
    except ContractError as exc:
        print(f"contract error: {exc}", file=sys.stderr)
        code, outcome = EXIT_CONTRACT, "error"
    except (ValidationError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        code, outcome = EXIT_USAGE, "error"
    finally:
        manifest = RunManifest(
            command=["switchhom"] + list(argv),
            inputs=inputs,
            seed=getattr(args, "seed", None),
            version=__version__,
            elapsed_secs=round(time.monotonic() - start, 6),
            outcome=outcome,
            exit_code=code,
        )
        blob = json.dumps(asdict(manifest), sort_keys=True)
        print(blob, file=sys.stderr)
        if args.manifest:
            Path(args.manifest).write_text(blob + "\n")
    return code


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
