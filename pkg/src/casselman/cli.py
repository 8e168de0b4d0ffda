"""
Command line interface.

    casselman table --type A --rank 2 --matrix m [--format json|csv|latex]
    casselman verify SUITE --type A --rank 3 [--backend modular --samples 20]
    casselman scan CONJECTURE --type A --rank 5
    casselman reproduce TARGET [--format latex]

Exit codes: 0 success, 1 an identity failed (verify) or a reproduction
disagrees with its reference listing, 2 usage error.  Scans always exit 0.
Output goes to stdout unless ``--output`` is given; identical arguments
(including ``--seed``) give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import CasselmanError
from .klpoly import kl_table
from .modular import DEFAULT_PRIME, DEFAULT_SAMPLES, ModCtx, is_probable_prime
from .report import SCHEMA, Report
from .reproduce import (
    _TEX_HEAD,
    _TEX_TAIL,
    TARGETS,
    _tex_poly,
    _tex_word,
    adtable_latex,
    figure1_latex,
    run_reproduce,
)
from .scans import SCANS, run_scan
from .suites import SUITES, run_suite
from .symbolics import QPoly, RatFn
from .transition import modular_engines, symbolic_engine
from .weyl import WeylGroup, build_root_system

__all__ = ["RunConfig", "main", "build_parser", "table_entries", "render_table"]

MATRICES = ("r", "r'", "m", "m'", "R", "P", "Q", "c")
_MATRIX_ALIASES = {"rp": "r'", "mp": "m'", "r-prime": "r'", "m-prime": "m'"}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    cartan_type: str = "A"
    rank: int = 2
    target: str | None = None  # suite, conjecture or reproduction target
    matrix: str = "m"
    backend: str = "symbolic"
    prime: int = DEFAULT_PRIME
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    fmt: str = "json"
    output: str | None = None

    @property
    def ctx(self) -> ModCtx:
        return ModCtx(self.prime, self.samples, self.seed)

    def group(self) -> WeylGroup:
        return build_root_system(self.cartan_type, self.rank).weyl_group


# tables ----------------------------------------------------------------------


def _matrix_value(cfg: RunConfig, g: WeylGroup, engines, u: int, v: int):
    kl = kl_table(g)
    name = cfg.matrix
    if name == "R":
        return kl.R_poly(u, v)
    if name == "P":
        return kl.P_poly(u, v)
    if name == "Q":
        return kl.Q_poly(u, v)
    if name == "c":
        return kl.c_poly(u, v)
    vals = []
    for eng in engines:
        if name == "r":
            vals.append(eng.r(u, v))
        elif name == "m":
            vals.append(eng.m(u, v))
        elif name == "m'":
            vals.append(eng.m_prime(u, v))
        else:
            vals.append(eng.r_prime(u, v))
    return vals[0] if cfg.backend == "symbolic" else [int(x) for x in vals]


def table_entries(cfg: RunConfig) -> list[dict]:
    """One entry per comparable pair u <= v, in canonical order."""
    g = cfg.group()
    if cfg.matrix in ("R", "P", "Q", "c"):
        engines = []
    elif cfg.backend == "symbolic":
        engines = [symbolic_engine(g)]
    else:
        engines = modular_engines(g, cfg.ctx)
    out = []
    for u, v in g.comparable_pairs():
        val = _matrix_value(cfg, g, engines, u, v)
        if isinstance(val, (RatFn, QPoly)):
            entry = {"u": g.format(u), "v": g.format(v), "value": val.to_json(), "text": str(val)}
        else:
            entry = {"u": g.format(u), "v": g.format(v), "value": val,
                     "text": " ".join(str(x) for x in val)}
        out.append(entry)
    return out


def render_table(cfg: RunConfig, entries: list[dict]) -> str:
    g = cfg.group()
    if cfg.fmt == "json":
        doc = {
            "schema": SCHEMA,
            "kind": "table",
            "group": g.root_system.name,
            "matrix": cfg.matrix,
            "backend": cfg.backend if cfg.matrix in ("r", "r'", "m", "m'") else "exact",
            "entries": entries,
        }
        if doc["backend"] == "modular":
            doc["modular"] = {"prime": cfg.prime, "samples": cfg.samples, "seed": cfg.seed}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", cfg.matrix])
        for e in entries:
            w.writerow([e["u"], e["v"], e["text"]])
        return buf.getvalue()
    # latex
    lines = [_TEX_HEAD, "$\\begin{array}{|l|l|l|}\n\\hline\n",
             f"u & v & {_tex_matrix(cfg.matrix)}_{{u,v}}\\\\\n\\hline\n"]
    for e in entries:
        lines.append(f"{_tex_word(e['u'])} & {_tex_word(e['v'])} & {_tex_value(e['text'])}\\\\\n")
    lines.append("\\hline\n\\end{array}$\n")
    lines.append(_TEX_TAIL)
    return "".join(lines)


def _tex_matrix(name: str) -> str:
    return name.replace("'", "^{\\prime}")


def _tex_value(text: str) -> str:
    # z1 -> z_{1}
    return re.sub(r"z(\d+)", r"z_{\1}", _tex_poly(text))


# commands --------------------------------------------------------------------


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render_report(cfg: RunConfig, rep: Report) -> str:
    if cfg.fmt == "json":
        return rep.to_json()
    if cfg.fmt == "csv":
        return rep.to_csv()
    if rep.name == "figure1":
        return figure1_latex(rep)
    if rep.name == "a3-adtable":
        return adtable_latex(rep)
    raise UsageError(f"LaTeX output is available for tables and reproductions, not {cfg.command}")


def run_table(cfg: RunConfig) -> int:
    _emit(cfg, render_table(cfg, table_entries(cfg)))
    return 0


def run_verify(cfg: RunConfig) -> int:
    try:
        rep = run_suite(cfg.group(), cfg.target, cfg.backend, cfg.ctx)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(cfg, _render_report(cfg, rep))
    return 0 if rep.passed else 1


def run_scan_cmd(cfg: RunConfig) -> int:
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rep = run_scan(cfg.group(), cfg.target, cfg.backend, cfg.ctx)
    _emit(cfg, _render_report(cfg, rep))
    return 0


def run_reproduce_cmd(cfg: RunConfig) -> int:
    rep = run_reproduce(cfg.target)
    _emit(cfg, _render_report(cfg, rep))
    return 0 if rep.passed else 1


_COMMANDS = {
    "table": run_table,
    "verify": run_verify,
    "scan": run_scan_cmd,
    "reproduce": run_reproduce_cmd,
}


# parsing ---------------------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _matrix(text: str) -> str:
    name = _MATRIX_ALIASES.get(text, text)
    if name not in MATRICES:
        raise argparse.ArgumentTypeError(
            f"unknown matrix {text!r}; expected one of {', '.join(MATRICES)}"
        )
    return name


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casselman",
        description="Deformed R-polynomials, Casselman matrices and their identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, group: bool = True, backend: bool = True,
               formats=("json", "csv", "latex")):
        if group:
            p.add_argument("--type", dest="cartan_type", default="A",
                           help="Cartan type: A, B, C, D, F or G (default A)")
            p.add_argument("--rank", type=_positive_int, default=2)
        if backend:
            p.add_argument("--backend", choices=("symbolic", "modular"), default="symbolic")
            p.add_argument("--prime", type=_positive_int, default=DEFAULT_PRIME)
            p.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES)
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", dest="fmt", choices=formats, default="json")
        p.add_argument("--output", help="write to this file instead of stdout")

    p = sub.add_parser("table", help="emit one matrix over all comparable pairs")
    p.add_argument("--matrix", type=_matrix, default="m",
                   help="r, r', m, m', R, P, Q or c (rp and mp also accepted)")
    common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    common(p, formats=("json", "csv"))

    p = sub.add_parser("scan", help="run a conjecture scan (report only)")
    p.add_argument("conjecture", choices=SCANS)
    common(p, formats=("json", "csv"))

    p = sub.add_parser("reproduce", help="regenerate a reference table")
    p.add_argument("target", choices=TARGETS)
    common(p, group=False, backend=False)
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    target = getattr(ns, "suite", None) or getattr(ns, "conjecture", None) or getattr(ns, "target", None)
    return RunConfig(
        command=ns.command,
        cartan_type=getattr(ns, "cartan_type", "A").upper(),
        rank=getattr(ns, "rank", 2),
        target=target,
        matrix=getattr(ns, "matrix", "m"),
        backend=getattr(ns, "backend", "symbolic"),
        prime=getattr(ns, "prime", DEFAULT_PRIME),
        samples=getattr(ns, "samples", DEFAULT_SAMPLES),
        seed=getattr(ns, "seed", 0),
        fmt=ns.fmt,
        output=ns.output,
    )


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code) if exc.code is not None else 2
    try:
        if cfg.command != "reproduce":
            cfg.group()
        if cfg.backend == "modular" and not is_probable_prime(cfg.prime):
            raise UsageError(f"--prime {cfg.prime} is not prime")
        return _COMMANDS[cfg.command](cfg)
    except (UsageError, CasselmanError) as exc:
        print(f"casselman: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the flush too
        sys.stdout = open(os.devnull, "w")
        return 0


if __name__ == "__main__":
    sys.exit(main())
