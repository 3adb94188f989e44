"""Command line interface.

Exit status: 0 on success, 1 on invalid input, 2 when a budget runs out.
``--format structured`` prints one JSON document; its keys are listed in the
README.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import actions
from .classify.classes import (
    ALL_DELTA_VARIANTS,
    DeltaVariant,
    MoveGraph,
    MoveSet,
    classify,
    lattice_report,
    orbit,
    table,
)
from .classify.enumerate import Budget, BudgetExceeded, enumerate_classes
from .config import Config, load_config
from .diagram import (
    Diagram,
    DiagramError,
    InvalidDiagram,
    Signature,
    check_suip,
    read_diagrams,
    render_ascii,
    signature_of,
    validate_uip,
)
from .lattice import canonical_lattice, format_lattice, lattice_of
from .pi1.groups import default_targets, target_by_name
from .pi1.homs import HomSearchBudget, fingerprint
from .pi1.presentation import presentation
from .trace import canonical_form

log = logging.getLogger("wiring")


class UsageError(ValueError):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "structured":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _diagrams(args) -> list[Diagram]:
    if args.diagram:
        return read_diagrams(args.diagram)
    if not args.input:
        raise UsageError("give an input file (or '-') or --diagram")
    if args.input == "-":
        return read_diagrams(sys.stdin)
    with open(args.input) as fh:
        return read_diagrams(fh)


def _valid(d: Diagram) -> Diagram:
    res = validate_uip(d)
    if not res.valid:
        raise InvalidDiagram(f"{d}: {res.message}")
    return d


def _signature_args(args) -> tuple[Signature, int]:
    if not args.signature:
        raise UsageError("--signature is required")
    sig = Signature.parse(args.signature)
    ell = args.ell if args.ell is not None else sig.lines()
    if not check_suip(sig, ell):
        raise UsageError(f"signature [{sig}] does not fit {ell} wires")
    return sig, ell


def _budget(cfg: Config) -> Budget:
    return Budget(seconds=cfg.budget_time, memory_bytes=cfg.budget_mem, nodes=cfg.enum_node_cap)


def _targets(cfg: Config):
    if cfg.targets is None:
        return default_targets()
    return tuple(target_by_name(n) for n in cfg.targets)


def _variants(cfg: Config) -> tuple[DeltaVariant, ...]:
    if cfg.delta_policy is None:
        return ALL_DELTA_VARIANTS
    return tuple(v for v in ALL_DELTA_VARIANTS if v.policy == cfg.delta_policy)


# ---------------------------------------------------------------- commands


def cmd_validate(args, cfg: Config) -> int:
    results = []
    for d in _diagrams(args):
        r = validate_uip(d)
        results.append({"diagram": str(d), "valid": r.valid, "message": r.message, "point": r.point,
                        "lines": sorted(r.lines) if r.lines else None})
    lines = [f"{'ok' if r['valid'] else 'invalid'}  {r['diagram']}" + ("" if r["valid"] else f"  ({r['message']})")
             for r in results]
    _emit(args, {"results": results}, "\n".join(lines))
    return 0 if all(r["valid"] for r in results) else 1


def cmd_signature(args, cfg: Config) -> int:
    if args.signature:
        sig = Signature.parse(args.signature)
        ell = args.ell if args.ell is not None else None
        ok = check_suip(sig, ell) if ell is not None else True
        try:
            forced = sig.lines()
        except ValueError:
            forced = None
        payload = {"signature": str(sig), "points": sig.p, "crossings": sig.crossings, "lines": forced,
                   "ell": ell, "fits": ok if ell is not None else forced is not None}
        _emit(args, payload, f"[{sig}] points={sig.p} crossings={sig.crossings} lines={forced}"
              + (f" fits ell={ell}: {'yes' if ok else 'no'}" if ell is not None else ""))
        return 0 if payload["fits"] else 1
    out = [{"diagram": str(d), "signature": str(signature_of(_valid(d)))} for d in _diagrams(args)]
    _emit(args, {"results": out}, "\n".join(f"[{r['signature']}]  {r['diagram']}" for r in out))
    return 0


def cmd_canon(args, cfg: Config) -> int:
    out = [{"diagram": str(d), "canonical": str(canonical_form(_valid(d)))} for d in _diagrams(args)]
    _emit(args, {"results": out}, "\n".join(r["canonical"] for r in out))
    return 0


def cmd_act(args, cfg: Config) -> int:
    ops = {"sigma": actions.sigma_power, "mu": actions.mu_power,
           "tau": lambda d, k: actions.tau(d) if k % 2 else d}
    out = []
    for d in _diagrams(args):
        e = ops[args.op](_valid(d), args.power)
        out.append({"diagram": str(d), "op": args.op, "power": args.power, "result": str(e),
                    "canonical": str(canonical_form(e))})
    _emit(args, {"results": out}, "\n".join(r["result"] for r in out))
    return 0


def cmd_render(args, cfg: Config) -> int:
    ds = [_valid(d) for d in _diagrams(args)]
    _emit(args, {"results": [{"diagram": str(d), "ascii": render_ascii(d)} for d in ds]},
          "\n\n".join(render_ascii(d) for d in ds))
    return 0


def cmd_lattice(args, cfg: Config) -> int:
    out = []
    for d in _diagrams(args):
        lat = lattice_of(_valid(d))
        canon = canonical_lattice(lat, cfg.lattice_node_cap)
        out.append({"diagram": str(d), "points": format_lattice(lat.encoding()), "canonical": format_lattice(canon)})
    _emit(args, {"results": out}, "\n".join(r["canonical"] for r in out))
    return 0


def cmd_pi1(args, cfg: Config) -> int:
    out, texts = [], []
    targets = _targets(cfg)
    for d in _diagrams(args):
        pres = presentation(_valid(d), args.space, cfg.orientation)
        item = {"diagram": str(d), "space": args.space, "presentation": pres.to_dict()}
        text = pres.to_text().rstrip("\n")
        if args.fingerprint:
            fp = fingerprint(pres, targets, cfg.hom_node_cap)
            item["fingerprint"] = fp.to_dict()
            text = str(fp)
        out.append(item)
        texts.append(text)
    _emit(args, {"results": out}, "\n".join(texts))
    return 0


def cmd_orbit(args, cfg: Config) -> int:
    gens = [g.strip() for g in args.group.split(",") if g.strip()]
    out = []
    for d in _diagrams(args):
        members = orbit(_valid(d), gens)
        out.append({"diagram": str(d), "group": gens, "size": len(members),
                    "members": [str(m) for m in members] if args.members else None})
    text = []
    for r in out:
        text.append(f"{r['size']}  {r['diagram']}")
        text += [f"  {m}" for m in r["members"] or []]
    _emit(args, {"results": out}, "\n".join(text))
    return 0


def cmd_enumerate(args, cfg: Config) -> int:
    sig, ell = _signature_args(args)
    store = enumerate_classes(sig, ell, cfg.cache_dir, cfg.threads, _budget(cfg))
    payload = {"signature": str(sig), "ell": ell, "classes": len(store)}
    text = f"[{sig}] on {ell} wires: {len(store)} classes"
    if args.list:
        payload["diagrams"] = [str(d) for d in store.diagrams()]
        text += "\n" + "\n".join(payload["diagrams"])
    _emit(args, payload, text)
    return 0


def cmd_classify(args, cfg: Config) -> int:
    sig, ell = _signature_args(args)
    moves = MoveSet.parse(args.moves)
    store = enumerate_classes(sig, ell, cfg.cache_dir, cfg.threads, _budget(cfg))
    variant = DeltaVariant(cfg.delta_policy or "equiv", not args.interior_only)
    res = classify(store, moves, variant)
    payload = {"signature": str(sig), "ell": ell, "moves": moves.enabled(), "label": moves.label,
               "delta_variant": str(variant) if moves.delta else None, "classes": len(store), "count": res.count}
    text = [f"[{sig}] on {ell} wires, moves {moves} ({moves.label}): {res.count} of {len(store)} classes"]
    if args.lattices:
        buckets = lattice_report(store, res, _targets(cfg))
        payload["lattices"] = [
            {"lattice": b.lattice, "classes": [str(store.diagram(k)) for k in b.classes],
             "fingerprints_agree": b.fingerprints_agree,
             "affine": [fp.to_dict() for fp in b.affine], "projective": [fp.to_dict() for fp in b.projective]}
            for b in buckets
        ]
        text.append(f"{len(buckets)} lattices")
        for b in buckets:
            text.append(f"  {len(b.classes):4d} classes  fingerprints {'agree' if b.fingerprints_agree else 'DIFFER'}  {b.lattice}")
    _emit(args, payload, "\n".join(text))
    return 0


def cmd_table(args, cfg: Config) -> int:
    sig, ell = _signature_args(args)
    store = enumerate_classes(sig, ell, cfg.cache_dir, cfg.threads, _budget(cfg))
    graph = MoveGraph(store)
    rep = table(store, _variants(cfg), graph)
    payload = {"signature": str(sig), "ell": ell, "classes": rep.classes, "counts": rep.counts,
               "matching": rep.matching, "seconds": round(rep.seconds, 3)}
    names = list(rep.counts)
    text = [f"[{sig}] on {ell} wires, {rep.classes} classes", "s t m D  " + "  ".join(f"{n:>16}" for n in names)]
    for m in MoveSet.all_subsets():
        text.append(" ".join(m.label) + "  " + "  ".join(f"{rep.counts[n][m.label]:>16}" for n in names))
    if rep.matching:
        text.append("matches the published counts: " + ", ".join(rep.matching))
    _emit(args, payload, "\n".join(text))
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "signature": cmd_signature,
    "canon": cmd_canon,
    "act": cmd_act,
    "render": cmd_render,
    "lattice": cmd_lattice,
    "pi1": cmd_pi1,
    "orbit": cmd_orbit,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--config", help="JSON config file; flags override it")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--budget-mem", help="e.g. 8G")
    common.add_argument("--budget-time", help="seconds, or with a unit: 90m, 12h")
    common.add_argument("--cache-dir")
    common.add_argument("--delta-policy", choices=("equiv", "literal"))
    common.add_argument("--targets", help="comma separated finite groups, e.g. S3,D4,Q8")
    common.add_argument("-v", "--verbose", action="store_true")

    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("input", nargs="?", help="diagram file, one per line; '-' for stdin")
    files.add_argument("--diagram", action="append", help="diagram text, e.g. 'l=3: (1,2)(2,3)(1,2)'")

    sig = argparse.ArgumentParser(add_help=False)
    sig.add_argument("--signature", help='e.g. "2^13 3^3 4^1"')
    sig.add_argument("--ell", type=int)

    p = argparse.ArgumentParser(prog="wiring", description="Wiring diagrams of line arrangements.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common, files], help="check the unique intersection property")
    s = sub.add_parser("signature", parents=[common, files, sig], help="signature of diagrams, or check one")
    sub.add_parser("canon", parents=[common, files], help="canonical representative")
    a = sub.add_parser("act", parents=[common, files], help="apply sigma, tau or mu")
    a.add_argument("--op", choices=("sigma", "tau", "mu"), required=True)
    a.add_argument("--power", type=int, default=1)
    sub.add_parser("render", parents=[common, files], help="ASCII picture")
    sub.add_parser("lattice", parents=[common, files], help="canonical incidence lattice")
    q = sub.add_parser("pi1", parents=[common, files], help="presentation or fingerprint of the fundamental group")
    q.add_argument("--space", choices=("affine", "projective"), default="affine")
    q.add_argument("--fingerprint", action="store_true")
    q.add_argument("--orientation", choices=("ccw", "cw"))
    o = sub.add_parser("orbit", parents=[common, files], help="orbit under sigma and tau")
    o.add_argument("--group", default="sigma,tau")
    o.add_argument("--members", action="store_true")
    e = sub.add_parser("enumerate", parents=[common, sig], help="enumerate commutation classes")
    e.add_argument("--list", action="store_true")
    c = sub.add_parser("classify", parents=[common, sig], help="count classes under a move set")
    c.add_argument("--moves", default="all")
    c.add_argument("--interior-only", action="store_true", help="leave out delta patterns with an empty side run")
    c.add_argument("--lattices", action="store_true", help="bucket the classes by lattice with fingerprints")
    sub.add_parser("table", parents=[common, sig], help="counts for all sixteen move subsets")
    del s
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(
            args.config,
            threads=args.threads,
            budget_mem=args.budget_mem,
            budget_time=args.budget_time,
            cache_dir=args.cache_dir,
            delta_policy=args.delta_policy,
            seed=args.seed,
            targets=args.targets,
            orientation=getattr(args, "orientation", None),
        )
        return COMMANDS[args.command](args, cfg)
    except (BudgetExceeded, HomSearchBudget) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 2
    except (UsageError, DiagramError, InvalidDiagram, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
