"""Command-line front end.

Exit codes: 0 success, 1 computation failure (d∘d ≠ 0, failed relation),
2 input error (bad PD/braid/parameter text, bad flag combination).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import List, Optional, TextIO

from .analysis import (
    RepeatedRootError,
    SurfaceKnot,
    discriminant,
    predict_colorings,
    repeated_root_homology,
    surface_invariant,
    verify_structure,
)
from .coeff import GaussRat, ParseError, parse_gauss_rat
from .complex import (
    ComplexError,
    EdgeMapError,
    HomologyTable,
    build_complex,
    euler_characteristic,
    homology,
    homology_bruteforce,
    resolve_threads,
)
from .diagram import DiagramError, LinkDiagram, parse_input
from .fixtures import random_braid_moves
from .frobenius import closed_value, eval_closed_surface, parse_word
from .skein import p2

COMMANDS = ("homology", "euler", "skein", "surface", "colorings", "foam-eval", "invariance-check")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    pd: Optional[str] = None
    braid: Optional[str] = None
    strands: Optional[int] = None
    pd2: Optional[str] = None
    braid2: Optional[str] = None
    strands2: Optional[int] = None
    a: str = "0"
    h: str = "0"
    genus: Optional[int] = None
    dots: int = 0
    word: Optional[str] = None
    output_format: str = "text"
    threads: Optional[int] = None
    seed: Optional[int] = None
    moves: int = 0
    method: str = "simplify"
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.output_format not in ("text", "json"):
            raise InputError("format must be 'text' or 'json'")


def _param(text: str, name: str) -> GaussRat:
    if text.strip().lower() == "symbolic":
        raise InputError(f"--{name} symbolic is not allowed here; give an exact value such as 0, 1/2 or 1+i")
    try:
        return parse_gauss_rat(text)
    except ParseError as e:
        raise InputError(f"--{name}: {e}") from None


def _diagram(pd, braid, strands, which="") -> LinkDiagram:
    if pd is None and braid is None:
        raise InputError(f"give --pd{which} or --braid{which}")
    if braid is not None and strands is None:
        raise InputError(f"--braid{which} needs --strands{which}")
    return parse_input(pd=pd, braid=braid, strands=strands)


def _homology(d: LinkDiagram, a, h, cfg: RunConfig) -> HomologyTable:
    if not discriminant(a, h) and (a or h):
        return repeated_root_homology(d, a, h, threads=cfg.threads)
    cx = build_complex(d, threads=cfg.threads)
    if cfg.method == "brute":
        return homology_bruteforce(cx, a, h)
    return homology(cx, a, h)


def _emit(out: TextIO, cfg: RunConfig, text: str, data) -> None:
    if cfg.output_format == "json":
        out.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _run(cfg: RunConfig, out: TextIO) -> int:
    cmd = cfg.command
    if cmd == "surface":
        if cfg.genus is None:
            raise InputError("surface needs --genus")
        if cfg.genus < 0:
            raise InputError("--genus must be non-negative")
        v = surface_invariant(SurfaceKnot(cfg.genus))
        _emit(out, cfg, str(v), {"genus": cfg.genus, "invariant": str(v)})
        return 0

    if cmd == "foam-eval":
        if cfg.word is not None:
            try:
                word = parse_word(cfg.word)
                v = closed_value(word)
            except (ValueError, IndexError) as e:
                raise InputError(f"foam word: {e}") from None
        elif cfg.genus is not None:
            if cfg.genus < 0 or cfg.dots < 0:
                raise InputError("--genus and --dots must be non-negative")
            v = eval_closed_surface(cfg.genus, cfg.dots)
        else:
            raise InputError("foam-eval needs --word or --genus")
        _emit(out, cfg, str(v), {"value": str(v)})
        return 0

    d = _diagram(cfg.pd, cfg.braid, cfg.strands)

    if cmd == "skein":
        v = p2(d)
        _emit(out, cfg, v.render_terms(), {"p2": v.render_terms()})
        return 0

    if cmd == "euler":
        v = euler_characteristic(build_complex(d, threads=cfg.threads))
        _emit(out, cfg, v.render_terms(), {"euler": v.render_terms()})
        return 0

    a, h = _param(cfg.a, "a"), _param(cfg.h, "h")

    if cmd == "homology":
        t = _homology(d, a, h, cfg)
        _emit(out, cfg, t.render() + f"\npoincare: {t.poincare}", t.to_json())
        return 0

    if cmd == "colorings":
        try:
            preds = predict_colorings(d, a, h)
        except RepeatedRootError as e:
            raise InputError(str(e)) from None
        rep = verify_structure(d, a, h, threads=cfg.threads)
        lines = [f"{col} -> degree {deg}" for col, deg in preds]
        lines.append(
            f"computed {list(rep.computed)}; dim {rep.total_dim} (2^{rep.n}); "
            f"reading {rep.reading}; pass {rep.passed}"
        )
        data = rep.to_json()
        data["colorings"] = [{"coloring": str(col), "degree": deg} for col, deg in preds]
        _emit(out, cfg, "\n".join(lines), data)
        return 0

    if cmd == "invariance-check":
        if cfg.moves:
            if cfg.braid is None:
                raise InputError("--moves needs --braid")
            w2, s2 = random_braid_moves(cfg.braid, cfg.strands, cfg.moves, cfg.seed)
            d2 = parse_input(braid=w2, strands=s2)
            other = f"{w2!r} on {s2} strands"
        else:
            d2 = _diagram(cfg.pd2, cfg.braid2, cfg.strands2, "2")
            other = str(d2)
        t1, t2 = _homology(d, a, h, cfg), _homology(d2, a, h, cfg)
        ok = t1 == t2
        data = {"pass": ok, "first": t1.to_json(), "second": t2.to_json(), "second_diagram": other}
        text = f"{'pass' if ok else 'fail'}: {t1.poincare} vs {t2.poincare} ({other})"
        _emit(out, cfg, text, data)
        return 0

    raise InputError(f"unknown command {cmd!r}")  # pragma: no cover


def run(cfg: RunConfig, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    cfg.threads = resolve_threads(cfg.threads)
    try:
        return _run(cfg, out)
    except (InputError, ParseError, DiagramError, RepeatedRootError) as e:
        err.write(f"input error: {e}\n")
        return 2
    except (ComplexError, EdgeMapError) as e:
        err.write(f"computation failed: {e}\n")
        return 1
    except ValueError as e:
        err.write(f"input error: {e}\n")
        return 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="foamcalc", description="Universal sl(2) foam link homology calculator.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--pd", help="PD code, e.g. 'X+(1,5,2,4) X+(3,1,4,6) X+(5,3,6,2)' or 'U1'")
    p.add_argument("--braid", help="braid word, e.g. 's1 s2^-1 s1'")
    p.add_argument("--strands", type=int)
    p.add_argument("--pd2", help="second diagram for invariance-check")
    p.add_argument("--braid2")
    p.add_argument("--strands2", type=int)
    p.add_argument("--a", default="0", help="exact value of a (Gaussian rational)")
    p.add_argument("--h", default="0", help="exact value of h (Gaussian rational)")
    p.add_argument("--genus", type=int)
    p.add_argument("--dots", type=int, default=0)
    p.add_argument("--word", help="closed foam word for foam-eval, e.g. 'cup[0] dot[0] cap[0]'")
    p.add_argument("--format", dest="output_format", default="text", choices=("text", "json"))
    p.add_argument("--threads", type=int, help="worker threads (default: $FOAMCALC_THREADS or 1)")
    p.add_argument("--seed", type=int, help="seed for randomized moves")
    p.add_argument("--moves", type=int, default=0, help="random braid moves for invariance-check")
    p.add_argument("--method", default="simplify", choices=("simplify", "brute"))
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        cfg = RunConfig(**vars(ns))
    except InputError as e:
        sys.stderr.write(f"input error: {e}\n")
        return 2
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
