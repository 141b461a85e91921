"""Command line interface.

Exit status: 0 for YES, 3 for NO, 1 for errors, 2 for usage problems.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .dihedral import InvariantError, Verdict, admits_pair_dual_to, decide
from .fixtures import fixture_text
from .links import (
    PDError,
    analyze,
    branched_double_cover_h1,
    build_diagram,
    parse_pd,
)
from .presentations import (
    CapExceeded,
    Mod2Character,
    Presentation,
    PresentationError,
    default_cap,
    parse_presentation,
)

EXIT_YES, EXIT_ERROR, EXIT_USAGE, EXIT_NO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    text: str
    json: bool = False
    cap: int = 20
    jobs: int = 1
    class_spec: str | None = None

    def __post_init__(self):
        if self.cap < 1:
            raise UsageError("--cap must be at least 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")


def _read_input(args) -> str:
    sources = [s for s in (args.input, args.file, getattr(args, "fixture", None)) if s is not None]
    if len(sources) > 1:
        raise UsageError("give exactly one input: inline text, --file, or --fixture")
    if getattr(args, "fixture", None):
        return fixture_text(args.fixture)
    if args.file:
        if args.file == "-":
            return sys.stdin.read()
        with open(args.file) as fh:
            return fh.read()
    if args.input is not None and args.input != "-":
        return args.input
    return sys.stdin.read()


def _config(args) -> RunConfig:
    cap = args.cap if args.cap is not None else default_cap()
    return RunConfig(
        text=_read_input(args) if hasattr(args, "input") else "",
        json=getattr(args, "json", False),
        cap=cap,
        jobs=getattr(args, "jobs", 1) or 1,
        class_spec=getattr(args, "class_spec", None),
    )


def _parse_bits(spec: str, n: int) -> Mod2Character:
    parts = [p for p in spec.replace(" ", "").split(",") if p]
    if len(parts) == 1 and len(parts[0]) == n and set(parts[0]) <= {"0", "1"}:
        parts = list(parts[0])
    if len(parts) != n or any(p not in ("0", "1") for p in parts):
        raise UsageError(f"--class needs {n} bits, got {spec!r}")
    return Mod2Character(tuple(int(p) for p in parts))


def _parse_components(spec: str, n: int) -> tuple[int, ...]:
    try:
        comps = sorted({int(p) for p in spec.replace(" ", "").split(",") if p})
    except ValueError:
        raise UsageError(f"--class needs component numbers, got {spec!r}") from None
    if not comps or comps[0] < 1 or comps[-1] > n:
        raise UsageError(f"--class components must lie in 1..{n}")
    return tuple(c - 1 for c in comps)


# ------------------------------------------------------------------ text


def _verdict_text(P: Presentation, v: Verdict, full: bool) -> list[str]:
    names = P.generator_names
    lines = [v.label, f"b1(G) = {v.b1_group}"]
    s = v.surjection
    if s is not None:
        lines += [
            f"character: {s.chi.bits()}",
            f"transversal: {names[s.g_index]}",
            f"psi: {' '.join(map(str, s.psi))}",
            "images:",
        ]
        lines += [f"  {names[i]} -> {e}" for i, e in enumerate(s.images)]
        if full and s.tau is not None:
            K = s.tau.subgroup.K_presentation
            lines.append(f"subgroup: {K.render()}")
            lines.append(f"H1(K) free rank {s.tau.free_rank}, torsion {list(s.tau.torsion)}")
            lines.append(f"involution on free part: {s.tau.A.to_rows()}")
    lines.append("evidence:")
    for e in v.table:
        lines.append(f"  chi={e.chi.bits()}  b1(K)={e.b1_subgroup}  b1(G)={e.b1_group}")
    return lines


def _verdict_json(P: Presentation, v: Verdict, full: bool) -> dict:
    out = v.to_json(P)
    s = v.surjection
    if full and s is not None and s.tau is not None:
        out["subgroup"] = {
            "presentation": s.tau.subgroup.K_presentation.render(),
            "free_rank": s.tau.free_rank,
            "torsion": list(s.tau.torsion),
            "involution": s.tau.A.to_rows(),
        }
    return out


def _emit(cfg: RunConfig, payload: dict, lines: list[str]):
    if cfg.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


# -------------------------------------------------------------- commands


def cmd_decide(args, full=False) -> int:
    cfg = _config(args)
    P = parse_presentation(cfg.text)
    if cfg.class_spec:
        v = admits_pair_dual_to(P, _parse_bits(cfg.class_spec, P.n_generators))
    else:
        v = decide(P, cfg.cap)
    _emit(cfg, _verdict_json(P, v, full), _verdict_text(P, v, full))
    return EXIT_YES if v.answer else EXIT_NO


def _analysis_text(A) -> list[str]:
    lines = [
        f"{'YES' if A.answer else 'NO'} ({A.corollary.reason})",
        f"components: {A.n_components}",
        f"b1(exterior) = {A.b1_exterior}",
        f"linking matrix: {A.linking_matrix.to_rows()}",
        f"group-theoretic verdict: {A.group_verdict.label}",
        "classes:",
    ]
    for c in A.per_class:
        comps = ",".join(str(i + 1) for i in c.components)
        lines.append(
            f"  {{{comps}}}  b1(cover)={c.b1_cover}  "
            f"{'realizable' if c.realizable else 'not realizable'}  boundary tori={c.lifted_tori}"
        )
    bc = A.branched_cover
    order = bc.order if bc.order is not None else "infinite"
    lines.append(
        f"branched double cover: b1={bc.b1} torsion={list(bc.invariant_factors)} order={order}"
    )
    lines.append(f"|Delta(-1,...,-1)| = {bc.alexander_at_minus_one}")
    bad = [k for k, ok in A.consistency_flags.items() if not ok]
    lines.append("consistency: " + ("ok" if not bad else "FAILED " + ", ".join(bad)))
    return lines


def cmd_link_analyze(args) -> int:
    cfg = _config(args)
    D = build_diagram(parse_pd(cfg.text))
    A = analyze(D, cfg.cap)
    payload = A.to_json()
    lines = _analysis_text(A)
    answer = A.answer
    if cfg.class_spec:
        comps = _parse_components(cfg.class_spec, D.n_components)
        rep = A.class_report(comps)
        payload["selected_class"] = rep.to_json()
        lines.append(
            f"selected class {{{cfg.class_spec}}}: "
            f"{'realizable' if rep.realizable else 'not realizable'}"
        )
        answer = rep.realizable
    _emit(cfg, payload, lines)
    return EXIT_YES if answer else EXIT_NO


def cmd_link_branched(args) -> int:
    cfg = _config(args)
    D = build_diagram(parse_pd(cfg.text))
    bc = branched_double_cover_h1(D)
    order = bc.order if bc.order is not None else "infinite"
    _emit(cfg, bc.to_json(), [
        f"b1 = {bc.b1}",
        f"torsion = {list(bc.invariant_factors)}",
        f"order = {order}",
        f"|Delta(-1,...,-1)| = {bc.alexander_at_minus_one}",
    ])
    return EXIT_YES if bc.b1 > 0 else EXIT_NO


def process_record(line: str, cap: int) -> dict:
    """One batch line in, one result object out; never raises."""
    try:
        rec = json.loads(line)
        if not isinstance(rec, dict):
            raise ValueError("line is not a JSON object")
    except ValueError as e:
        return {"id": None, "error": f"malformed line: {e}"}
    rid = rec.get("id")
    kind = rec.get("type")
    try:
        payload = rec["payload"]
        if kind == "presentation":
            P = parse_presentation(payload if isinstance(payload, str) else json.dumps(payload))
            v = decide(P, cap)
            return {"id": rid, "type": kind, "verdict": v.label, "evidence": v.to_json(P)}
        if kind == "pd":
            A = analyze(build_diagram(parse_pd(payload)), cap)
            return {"id": rid, "type": kind, "verdict": "YES" if A.answer else "NO",
                    "evidence": A.to_json()}
        raise ValueError(f"unknown type {kind!r}")
    except (KeyError, ValueError, CapExceeded, InvariantError) as e:
        msg = str(e) if not isinstance(e, KeyError) else f"missing field {e}"
        return {"id": rid, "type": kind, "error": msg}


def cmd_batch(args) -> int:
    cap = args.cap if args.cap is not None else default_cap()
    cfg = RunConfig("", True, cap, args.jobs or 1)
    if args.file and args.file != "-":
        with open(args.file) as fh:
            lines = fh.read().splitlines()
    else:
        lines = sys.stdin.read().splitlines()
    lines = [ln for ln in lines if ln.strip()]
    if cfg.jobs > 1 and len(lines) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(process_record, lines, [cap] * len(lines)))
    else:
        results = [process_record(ln, cap) for ln in lines]
    summary = {"total": len(results), "YES": 0, "NO": 0, "errors": 0}
    for r in results:
        if "error" in r:
            summary["errors"] += 1
        else:
            summary[r["verdict"]] += 1
        print(json.dumps(r, separators=(",", ":")))
    print(json.dumps({"summary": summary}, separators=(",", ":")))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="infdihedral",
        description="Decide and construct surjections onto Z/2 * Z/2; analyse link exteriors.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_class=True, fixture=False):
        sp.add_argument("input", nargs="?", help="inline input; '-' or omitted reads stdin")
        sp.add_argument("--file", help="read input from a file")
        if fixture:
            sp.add_argument("--fixture", help="use a bundled PD fixture by name")
        sp.add_argument("--json", action="store_true", help="JSON output")
        sp.add_argument("--cap", type=int, help="max character-space dimension")
        if with_class:
            sp.add_argument("--class", dest="class_spec",
                            help="restrict to one class (bits, or component numbers for links)")

    common(sub.add_parser("decide", help="decide whether a presentation surjects"))
    common(sub.add_parser("construct", help="decide with the full witness"))

    link = sub.add_parser("link", help="link diagram commands")
    lsub = link.add_subparsers(dest="link_command", required=True)
    common(lsub.add_parser("analyze", help="full link analysis"), fixture=True)
    common(lsub.add_parser("branched-cover", help="homology of the branched double cover"),
           with_class=False, fixture=True)

    b = sub.add_parser("batch", help="process JSON lines")
    b.add_argument("--file", help="JSONL input; stdin when omitted")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--cap", type=int)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "decide":
            return cmd_decide(args)
        if args.command == "construct":
            return cmd_decide(args, full=True)
        if args.command == "batch":
            return cmd_batch(args)
        if args.link_command == "analyze":
            return cmd_link_analyze(args)
        return cmd_link_branched(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (PresentationError, PDError, CapExceeded, KeyError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
