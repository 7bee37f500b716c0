"""Command-line front end.

Subcommands::

    decompose-matrix  '[[2,1],[1,1]]'
    build-complex     'llr.psi2'          (or a matrix)
    check-npc         complex.json        (or an automorphism word)
    classify-gbs      '{"vertices": 1, "edges": [{"u":0,"v":0,"lu":2,"lv":3}]}'
    analyze-endo      '{"rank": 2, "images": ["ab", "ba"]}'
    export-dot        complex|link|gbs INPUT
    sweep             autwords|gbs|matrices

Every INPUT may be inline text or a path to a file holding it.  Exit codes:
0 success or pass, 1 check failed (NPC violation, periodic class found),
2 invalid or inapplicable input, 3 internal assertion such as a
degenerate cylinder.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import complexbuilder as cb
from . import endo, gbs, linkcheck, matdecomp
from .freegroup import Endomorphism

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    input: str | None
    fmt: str = "json"
    exact: bool = True
    tol: float = 1e-9
    maxlen: int = 8
    maxpow: int = 4
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.maxlen < 1 or self.maxpow < 1:
            raise ValueError("search bounds must be at least 1")
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")


def _read(text: str) -> str:
    p = Path(text)
    try:
        if len(text) < 4096 and p.is_file():
            return p.read_text()
    except OSError:
        pass
    return text


def _emit(obj, fmt: str, human: str | None = None) -> None:
    if fmt == "human" and human is not None:
        print(human)
    else:
        print(json.dumps(obj, indent=2, ensure_ascii=False))


def _parse_matrix_or_word(text: str) -> tuple[matdecomp.AutWord, dict | None]:
    text = _read(text).strip()
    if text.startswith("["):
        g = matdecomp.Mat2Z.from_list(text)
        d = matdecomp.decompose(g)
        return matdecomp.to_aut_word(d), d.to_json()
    return matdecomp.parse_autword(text), None


def seed() -> int:
    """Seed for randomized generators, from ``TOOLKIT_SEED`` (default 0)."""
    return int(os.environ.get("TOOLKIT_SEED", "0"))


# -- subcommands ------------------------------------------------------------


def cmd_decompose_matrix(cfg: RunConfig) -> int:
    g = matdecomp.Mat2Z.from_list(_read(cfg.input))
    d = matdecomp.decompose(g)
    w = matdecomp.to_aut_word(d)
    out = d.to_json()
    out["tail"] = f"psi{w.tail}"
    out["aut_word"] = str(w)
    out["aut_word_pretty"] = w.pretty()
    human = (
        f"{g} : eps={d.eps} delta={d.delta} C={d.C}\n"
        f"  lr_word={' '.join(d.lr_word)} terminal={d.terminal}\n  automorphism {w.pretty()}"
    )
    _emit(out, cfg.fmt, human)
    return EXIT_OK


def build_report(w: matdecomp.AutWord, exact: bool = True, tol: float = 1e-9, kind: str = "square") -> dict:
    X = cb.build_square_complex(w) if kind == "square" else cb.build_pe_complex(w)
    rep = linkcheck.check_npc(X, exact=exact, tol=tol)
    h1 = cb.homology_h1(X)
    want = cb.expected_h1(w.realized_matrix())
    Y = X.collapse_degenerate()
    return {
        "word": str(w),
        "word_pretty": w.pretty(),
        "kind": kind,
        "case": X.meta.get("case"),
        "cells": cb.cells_by_shape(Y),
        "counts": {"vertices": len(Y.vertices), "edges": len(Y.edges), "cells": len(Y.cells)},
        "euler_characteristic": cb.euler_characteristic(Y),
        "H1": h1.to_json(),
        "H1_expected": want.to_json(),
        "H1_match": h1 == want,
        "npc": rep.to_json(),
        "complex": X.to_json(),
    }


def cmd_build_complex(cfg: RunConfig, kind: str = "square") -> int:
    w, dec = _parse_matrix_or_word(cfg.input)
    if cfg.fmt == "dot":
        X = cb.build_square_complex(w) if kind == "square" else cb.build_pe_complex(w)
        print(X.to_dot(), end="")
        return EXIT_OK
    out = build_report(w, cfg.exact, cfg.tol, kind)
    if dec is not None:
        out["decomposition"] = dec
    passed = out["npc"]["passed"]
    human = (
        f"{w.pretty()} [{out['case']}] {out['counts']} chi={out['euler_characteristic']} "
        f"H1={out['H1']['text']} (expected {out['H1_expected']['text']}) NPC {'pass' if passed else 'FAIL'}"
    )
    if cfg.fmt == "human":
        out.pop("complex")
    _emit(out, cfg.fmt, human)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_check_npc(cfg: RunConfig) -> int:
    text = _read(cfg.input).strip()
    if text.startswith("{"):
        X = cb.PE2Complex.from_json(text)
    else:
        w, _ = _parse_matrix_or_word(text)
        X = cb.build_square_complex(w)
    rep = linkcheck.check_npc(X, exact=cfg.exact, tol=cfg.tol)
    lines = [f"NPC {'pass' if rep.passed else 'FAIL'} ({'exact' if rep.exact else 'float'})"]
    for r in rep.vertices:
        lines.append(f"  {r.name}: girth {r.girth} pi{' borderline' if r.borderline else ''}{'' if r.passed else ' FAIL'}")
    _emit(rep.to_json(), cfg.fmt, "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_classify_gbs(cfg: RunConfig) -> int:
    g = gbs.GbsGraph.from_json(_read(cfg.input))
    c = gbs.classify(g)
    _emit(c.to_json(), cfg.fmt, str(c))
    return EXIT_OK


def cmd_analyze_endo(cfg: RunConfig) -> int:
    theta = Endomorphism.from_json(_read(cfg.input))
    cert = endo.sap_certificate(theta, cfg.maxlen, cfg.maxpow, cfg.jobs)
    human = cert.verdict
    if cert.reasons:
        human += f" ({'; '.join(cert.reasons)})"
    if cert.witness is not None:
        human += f" {cert.witness}"
    _emit(cert.to_json(), cfg.fmt, human)
    return EXIT_FAIL if cert.verdict == "PeriodicFound" else EXIT_OK


def cmd_export_dot(cfg: RunConfig, what: str, vertex: int | None) -> int:
    if what == "gbs":
        print(gbs.GbsGraph.from_json(_read(cfg.input)).to_dot(), end="")
        return EXIT_OK
    text = _read(cfg.input).strip()
    X = cb.PE2Complex.from_json(text) if text.startswith("{") else cb.build_square_complex(_parse_matrix_or_word(text)[0])
    if what == "complex":
        print(X.to_dot(), end="")
        return EXIT_OK
    links = linkcheck.all_links(X)
    Y = X.collapse_degenerate()
    for v in [vertex] if vertex is not None else sorted(links):
        print(linkcheck.link_to_dot(links[v], name=f"link {Y.vertices[v]}"), end="")
    return EXIT_OK


def _sweep_one(w: matdecomp.AutWord) -> tuple[str, str, bool, bool, int]:
    try:
        r = build_report(w)
    except cb.DegenerateCylinder:
        return str(w), cb.classify_case(w), False, False, 0
    return str(w), r["case"], r["npc"]["passed"], r["H1_match"], r["euler_characteristic"]


def sweep_autwords(max_len: int = 6, jobs: int = 1) -> list[tuple[str, str, bool, bool, int]]:
    words = list(cb.iter_autwords(max_len))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_sweep_one, words, chunksize=8))
    return [_sweep_one(w) for w in words]


def _verdict_key(c: gbs.Classification) -> tuple:
    # the group-level verdict; the witness depends on which normal form is reached
    return (c.verdict, c.data["j"] if c.verdict == "SolubleBS" else None)


def _gbs_block(graphs: list[gbs.GbsGraph]) -> Counter:
    tally: Counter = Counter()
    for g in graphs:
        c = gbs.classify(g)
        tally[c.kind] += 1
        for k in gbs.collapsible_edges(g):
            c2 = gbs.classify(gbs.elementary_collapse(g, k))
            tally["collapse_ok" if _verdict_key(c2) == _verdict_key(c) else "collapse_mismatch"] += 1
    return tally


def cmd_sweep(cfg: RunConfig, target: str, max_len: int, count: int) -> int:
    t0 = time.time()
    if target == "autwords":
        rows = sweep_autwords(max_len, cfg.jobs)
        by = Counter((case, "pass" if ok else "fail") for _, case, ok, _, _ in rows)
        fails = [w for w, _, ok, _, _ in rows if not ok]
        out = {
            "words": len(rows),
            "npc_pass": sum(ok for _, _, ok, _, _ in rows),
            "h1_match": sum(m for _, _, _, m, _ in rows),
            "chi_zero": sum(ok and chi == 0 for _, _, ok, _, chi in rows),
            "by_case": {f"{c}/{s}": n for (c, s), n in sorted(by.items())},
            "failures": fails,
        }
        ok = not fails
    elif target == "gbs":
        graphs = list(gbs.enumerate_graphs())
        if cfg.jobs > 1:
            blocks = [graphs[k :: cfg.jobs] for k in range(cfg.jobs)]
            with ProcessPoolExecutor(cfg.jobs) as pool:
                tally = sum(pool.map(_gbs_block, blocks), Counter())
        else:
            tally = _gbs_block(graphs)
        out = {"graphs": len(graphs), **dict(sorted(tally.items()))}
        ok = tally["collapse_mismatch"] == 0
    else:
        rng = random.Random(seed())
        gens = [matdecomp.L, matdecomp.R, matdecomp.F, matdecomp.NEG_I]
        done = bad = 0
        while done < count:
            g = matdecomp.I
            for _ in range(rng.randint(1, 12)):
                g = g @ rng.choice(gens)
            if matdecomp.is_finite_order(g)[0]:
                continue
            done += 1
            bad += not matdecomp.decompose(g).check()
        out = {"matrices": done, "seed": seed(), "identity_failures": bad}
        ok = bad == 0
    out["seconds"] = round(time.time() - t0, 2)
    _emit(out, cfg.fmt, " ".join(f"{k}={v}" for k, v in out.items() if k != "failures"))
    return EXIT_OK if ok else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, formats=("json", "human")):
        sp.add_argument("--format", dest="fmt", choices=formats, default="json")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes (output does not depend on it)")
        return sp

    def npc_opts(sp):
        m = sp.add_mutually_exclusive_group()
        m.add_argument("--exact", dest="exact", action="store_true", default=True, help="rational angles (default)")
        m.add_argument("--float", dest="exact", action="store_false", help="floating point angles")
        sp.add_argument("--tol", type=float, default=1e-9, help="tolerance in radians for --float")

    sp = common(sub.add_parser("decompose-matrix", help="normal form of an SL/GL(2,Z) matrix"))
    sp.add_argument("input", help="matrix JSON, e.g. '[[2,1],[1,1]]'")

    sp = common(sub.add_parser("build-complex", help="build the square complex and check it"), ("json", "human", "dot"))
    sp.add_argument("input", help="automorphism word like 'llr.psi2' or a matrix")
    sp.add_argument("--pe", action="store_true", help="build the piecewise-Euclidean complex instead")
    npc_opts(sp)

    sp = common(sub.add_parser("check-npc", help="link condition at every vertex"))
    sp.add_argument("input", help="complex JSON or automorphism word")
    npc_opts(sp)

    sp = common(sub.add_parser("classify-gbs", help="classify a GBS graph"))
    sp.add_argument("input", help="graph JSON")

    sp = common(sub.add_parser("analyze-endo", help="immersion, surjectivity, periodic search, certificate"))
    sp.add_argument("input", help='endomorphism JSON, e.g. \'{"rank": 2, "images": ["ab", "ba"]}\'')
    sp.add_argument("--maxlen", type=int, default=8)
    sp.add_argument("--maxpow", type=int, default=4)

    sp = common(sub.add_parser("export-dot", help="Graphviz output"))
    sp.add_argument("what", choices=("complex", "link", "gbs"))
    sp.add_argument("input")
    sp.add_argument("--vertex", type=int, default=None, help="only this vertex link")

    sp = common(sub.add_parser("sweep", help="exhaustive drivers used by the acceptance tests"))
    sp.add_argument("target", choices=("autwords", "gbs", "matrices"))
    sp.add_argument("--max-len", type=int, default=6)
    sp.add_argument("--count", type=int, default=1000, help="random matrices (seeded by TOOLKIT_SEED)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            args.cmd,
            getattr(args, "input", None),
            args.fmt,
            getattr(args, "exact", True),
            getattr(args, "tol", 1e-9),
            getattr(args, "maxlen", 8),
            getattr(args, "maxpow", 4),
            args.jobs,
        )
        if args.cmd == "decompose-matrix":
            return cmd_decompose_matrix(cfg)
        if args.cmd == "build-complex":
            return cmd_build_complex(cfg, "pe" if args.pe else "square")
        if args.cmd == "check-npc":
            return cmd_check_npc(cfg)
        if args.cmd == "classify-gbs":
            return cmd_classify_gbs(cfg)
        if args.cmd == "analyze-endo":
            return cmd_analyze_endo(cfg)
        if args.cmd == "export-dot":
            return cmd_export_dot(cfg, args.what, args.vertex)
        return cmd_sweep(cfg, args.target, args.max_len, args.count)
    except cb.DegenerateCylinder as e:
        print(f"internal: degenerate cylinder: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except matdecomp.FiniteOrder as e:
        print(f"FiniteOrder: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as e:
        print(f"invalid input: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except AssertionError as e:
        print(f"internal assertion: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
