"""
Command-line front end: ``schubert-blowup <command> [options]``.

Every command prints one JSON document (sorted keys) unless ``--format``
asks for OFF or plain text.  Defaults for degree caps, worker count and the
OFF box can be overridden by a flat ``key = value`` file named in the
``SCHUBERT_BLOWUP_CONFIG`` environment variable; command-line flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import coxeter as cx

CONFIG_ENV = "SCHUBERT_BLOWUP_CONFIG"
DEFAULTS = {"workers": 1, "degree_cap": 8, "spread": 8, "off_bound": 3}


class UsageError(ValueError):
    """Bad arguments; reported with exit status 2."""


@dataclass
class RunConfig:
    command: str
    args: dict = field(default_factory=dict)
    fmt: str = "json"
    workers: int = 1
    degree_cap: int = 8
    spread: int = 8
    off_bound: int = 3


def read_config_file(path: str) -> dict[str, int]:
    """Parse ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    out: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = int(value)
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: {key} needs an integer") from exc
    return out


def parse_permutation(text: str) -> cx.Permutation:
    """argparse type for one-line permutations such as ``53241``."""
    try:
        return cx.parse_permutation(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def parse_word(text: str) -> cx.Word:
    """argparse type for words such as ``1,2,1``."""
    try:
        word = cx.parse_word(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad word {text!r}: use comma-separated letters") from exc
    if not word or min(word) < 1:
        raise argparse.ArgumentTypeError(f"bad word {text!r}")
    return word


# -- commands -----------------------------------------------------------------

def _complex(cfg: RunConfig):
    from .subword import SubwordComplex
    Q, pi = cfg.args["q"], cfg.args["pi"]
    n = max(max(Q) + 1, len(pi))
    if len(pi) != n:
        raise UsageError(f"--pi must be a permutation of 1..{n} for this word")
    return SubwordComplex(Q, pi, n)


def cmd_scan(cfg: RunConfig):
    from .gorenstein import schubert_gorenstein_scan, subword_criterion_scan
    scan = subword_criterion_scan if cfg.args.get("method") == "subword" else schubert_gorenstein_scan
    try:
        found = scan(cfg.args["n"], workers=cfg.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return sorted(cx.format_permutation(w) for w in found)


def cmd_gorenstein(cfg: RunConfig):
    from .gorenstein import (
        is_gorenstein_homology, is_gorenstein_principal, is_gorenstein_subword,
        is_gorenstein_variety,
    )
    K = _complex(cfg)
    verdict = is_gorenstein_subword(K)
    if cfg.args.get("witness"):
        return None if verdict.witness is None else verdict.witness.dash(K.Q)
    doc = verdict.to_json(K.Q)
    doc["principal"] = is_gorenstein_principal(K)
    doc["link_homology"] = is_gorenstein_homology(K)
    try:
        doc["hilbert_palindromic"] = is_gorenstein_variety(K)
    except ValueError:
        doc["hilbert_palindromic"] = None
    return doc


def cmd_subword(cfg: RunConfig):
    from .subword import is_ball_or_sphere
    K = _complex(cfg)
    if cfg.fmt == "off":
        return K.to_off()
    doc = K.to_json()
    doc["dimension"] = K.complex.dimension
    doc["type"] = is_ball_or_sphere(K)
    return doc


def cmd_degenerate(cfg: RunConfig):
    from .grobner import (
        buchberger_verify, diagonal_order, initial_ideal, kl_generators,
    )
    data = kl_generators(cfg.args["w"], cfg.args["v"], spread=cfg.spread)
    order = data.order if cfg.args.get("order", "lex") == "lex" else diagonal_order(data.v, data.ring)
    gens = [g.normalize_sign(order) for g in data.generators]
    is_gb = buchberger_verify(gens, order) if gens else True
    init = initial_ideal(gens, order) if is_gb else []
    return {
        "w": cx.format_permutation(data.w),
        "v": cx.format_permutation(data.v),
        "variables": list(data.ring.names),
        "generators": [g.format(order) for g in gens],
        "groebner_basis": is_gb,
        "initial_ideal": sorted({m.format(order) for m in init}),
    }


def _blowups(cfg: RunConfig):
    from .toriccone import blow_up_boundary, boundary_centers, cone_on_complex, exceptional_walls
    K = _complex(cfg)
    cones = [cone_on_complex(K.complex)]
    walls = [boundary_centers(cones[0], K.boundary_facet_masks())]
    for _ in range(cfg.args.get("steps", 1)):
        cones.append(blow_up_boundary(cones[-1], walls[-1]))
        walls.append(exceptional_walls(cones[-1]))
    return K, cones, walls


def cmd_blowup(cfg: RunConfig):
    from .toriccone import cone_to_off, is_blowup_isomorphism
    _, cones, walls = _blowups(cfg)
    if cfg.fmt == "off":
        return cone_to_off(cones[-1], cfg.off_bound)
    return {
        "steps": len(cones) - 1,
        "complex": cones[-1].to_json(),
        "boundary_is_cartier": [is_blowup_isomorphism(c, w) for c, w in zip(cones, walls)],
    }


def cmd_frobenius(cfg: RunConfig):
    from .toriccone import frobenius_counterexample
    _, cones, _ = _blowups(cfg)
    p = cfg.args["p"]
    if p not in (2, 3, 5, 7):
        raise UsageError("--p must be one of 2, 3, 5, 7")
    out = []
    for step, cone in enumerate(cones):
        bad = frobenius_counterexample(cone, p)
        out.append({"step": step, "split": bad is None,
                    "counterexample": None if bad is None else
                    {"cell": bad[0], "point": {str(v + 1): int(c) for v, c in sorted(bad[1].items())}}})
    return out


def cmd_rees_commute(cfg: RunConfig):
    from .grobner import kl_generators, rees_presentation, verify_degeneration_commutes
    data = kl_generators(cfg.args["w"], cfg.args["v"], spread=cfg.spread)
    try:
        extra = [data.ring.var(name) for name in cfg.args["extra"]]
    except ValueError as exc:
        raise UsageError(f"unknown variable in --extra; ring has {', '.join(data.ring.names)}") from exc
    report = verify_degeneration_commutes(data.generators, extra, data.order, cfg.degree_cap)
    P = rees_presentation(data.generators, extra, data.order)
    killed = [P.kill_epsilons(r) for r in P.relations]
    return {
        "presentation": P.to_json(),
        "after_killing_I_epsilons": sorted({r.format(P.lifted) for r in killed if r}),
        "relations_are_groebner": report.relations_are_groebner,
        "initial_forms_match": report.initial_forms_match,
        "leading_terms_match": report.leading_terms_match,
        "taus_evaluate_to_zero": report.taus_evaluate_to_zero,
        "commutes": report.ok,
    }


COMMANDS = {
    "scan": cmd_scan,
    "gorenstein": cmd_gorenstein,
    "subword": cmd_subword,
    "degenerate": cmd_degenerate,
    "blowup": cmd_blowup,
    "rees-commute": cmd_rees_commute,
    "frobenius": cmd_frobenius,
}


# -- parsing and dispatch -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schubert-blowup",
        description="Subword complexes, Kazhdan–Lusztig degenerations and boundary blow-ups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmts=("json",)):
        p.add_argument("--format", dest="fmt", choices=fmts, default="json")
        p.add_argument("--workers", type=int)
        p.add_argument("--degree-cap", type=int)
        p.add_argument("--spread", type=int)
        p.add_argument("--off-bound", type=int)

    def complex_args(p):
        p.add_argument("--q", type=parse_word, required=True, help="word, e.g. 1,2,1,3,2,1")
        p.add_argument("--pi", type=parse_permutation, required=True, help="one-line, e.g. 1432")

    p = sub.add_parser("scan", help="non-Gorenstein Schubert varieties in S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("hilbert", "subword"), default="hilbert")
    common(p)

    p = sub.add_parser("gorenstein", help="Gorenstein verdicts for Δ(Q, π)")
    complex_args(p)
    p.add_argument("--witness", action="store_true", help="print only the witness subword")
    common(p)

    p = sub.add_parser("subword", help="facets and boundary of Δ(Q, π)")
    complex_args(p)
    common(p, ("json", "off"))

    p = sub.add_parser("degenerate", help="Kazhdan–Lusztig generators and initial ideal")
    p.add_argument("--w", type=parse_permutation, required=True)
    p.add_argument("--v", type=parse_permutation, required=True)
    p.add_argument("--order", choices=("lex", "diagonal"), default="lex")
    common(p)

    p = sub.add_parser("blowup", help="planed cone complex after boundary blow-ups")
    complex_args(p)
    p.add_argument("--steps", type=int, default=1)
    common(p, ("json", "off"))

    p = sub.add_parser("rees-commute", help="degeneration of the boundary Rees algebra")
    p.add_argument("--w", type=parse_permutation, default=parse_permutation("53241"))
    p.add_argument("--v", type=parse_permutation, default=parse_permutation("12345"))
    p.add_argument("--extra", default="z21,z11",
                   help="comma-separated variables added to I to form J")
    common(p)

    p = sub.add_parser("frobenius", help="division-by-p check before and after blow-ups")
    complex_args(p)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--steps", type=int, default=1)
    common(p)
    return parser


def build_config(argv: list[str] | None = None, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    ns = build_parser().parse_args(argv)
    settings = dict(DEFAULTS)
    path = environ.get(CONFIG_ENV)
    if path:
        settings.update(read_config_file(path))
    for key in DEFAULTS:
        flag = getattr(ns, key, None)
        if flag is not None:
            settings[key] = flag
    if settings["workers"] < 1 or settings["degree_cap"] < 1:
        raise UsageError("workers and degree_cap must be positive")
    args = {k: v for k, v in vars(ns).items()
            if k not in DEFAULTS and k not in ("command", "fmt")}
    if "extra" in args:
        args["extra"] = [t.strip() for t in args["extra"].split(",") if t.strip()]
    if args.get("steps", 1) < 0:
        raise UsageError("--steps must be non-negative")
    return RunConfig(ns.command, args, ns.fmt, **settings)


def render(doc) -> str:
    if isinstance(doc, str) and doc.startswith("OFF"):
        return doc
    return json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n"


def run(cfg: RunConfig) -> str:
    return render(COMMANDS[cfg.command](cfg))


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = build_config(argv)
        text = run(cfg)
    except UsageError as exc:
        print(f"schubert-blowup: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"schubert-blowup: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0
