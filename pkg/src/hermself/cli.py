"""Command line front end.

    hermself analyze  CODEFILE
    hermself puncture CODEFILE
    hermself zeros    CODEFILE
    hermself extend   CODEFILE [--out-dir DIR]
    hermself quantum  CODEFILE (--weight R | --all) [--best-of N]
    hermself cyclic   --n N --g POLY --p P [--h H] [--mod1 ..] [--mod2 ..] [--dual] [--truncate A..B] [-o FILE]

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import matfq
from .code import CodeError, LinearCode, cyclic_code
from .config import CapExceeded, Caps
from .fileformat import ParseError, field_from_params, format_code, load_code, parse_poly
from .hermitian import (
    VerificationError,
    build_M,
    classify,
    columns_as_points,
    common_zeros,
    extend,
    hf_basis,
    puncture_code,
    weight_set,
)
from .quantum import quantum_survey

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    caps: Caps = dc_field(default_factory=Caps)
    format: str = "human"
    workers: int = 1
    seed: int = 0


class _Report:
    """Collects key/value lines; emits them as text or as sorted JSON."""

    def __init__(self, cfg: RunConfig, out):
        self.cfg = cfg
        self.out = out
        self.data: dict = {}

    def __setitem__(self, key, value):
        self.data[key] = value

    def emit(self):
        if self.cfg.format == "json":
            json.dump(self.data, self.out, sort_keys=True, indent=2)
            self.out.write("\n")
            return
        for key, value in self.data.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                self.out.write(f"{key}:\n")
                for row in value:
                    self.out.write("  " + "  ".join(f"{k}={v}" for k, v in row.items()) + "\n")
            elif isinstance(value, list) and value and isinstance(value[0], str) and " " in value[0]:
                self.out.write(f"{key}:\n" + "".join(f"  {v}\n" for v in value))
            elif isinstance(value, dict):
                self.out.write(f"{key}: " + ", ".join(f"{k}:{v}" for k, v in value.items()) + "\n")
            elif isinstance(value, list):
                self.out.write(f"{key}: " + (" ".join(str(v) for v in value) if value else "-") + "\n")
            else:
                self.out.write(f"{key}: {value}\n")


def _load(path: str) -> LinearCode:
    return load_code(path).build()


def _fmt_point(C: LinearCode, x) -> str:
    return "(" + ",".join(C.field.format(int(v)) for v in x) + ")"


def _header(rep: _Report, C: LinearCode):
    rep["n"] = C.n
    rep["k"] = C.k
    rep["q"] = C.field.q
    rep["field_order"] = C.field.order


def _dual_distance(C: LinearCode, cfg: RunConfig):
    try:
        return C.dual_distance(cfg.caps)
    except (CapExceeded, CodeError) as exc:
        return f"unavailable ({exc})"


def cmd_analyze(args, cfg: RunConfig, out) -> int:
    C = _load(args.codefile)
    rep = _Report(cfg, out)
    _header(rep, C)
    rep["dual_distance"] = _dual_distance(C, cfg)
    M = build_M(C.field, C.gen)
    P = puncture_code(C)
    rep["rank_M"] = matfq.rank(C.field, M)
    rep["dim_P"] = P.dim
    rep["conditions_imposed"] = C.n - P.dim
    projective = C.is_projective()
    rep["projective"] = projective
    if projective:
        dim_hf = len(hf_basis(columns_as_points(C)))
        rep["dim_HF"] = dim_hf
        ok = P.dim == C.n - C.k**2 + dim_hf
        rep["dim_check"] = ok
        if not ok:
            rep.emit()
            raise VerificationError("dim P(C) != n - k^2 + dim HF(X)")
    # generator independence under a random invertible row operation
    rng = random.Random(cfg.seed)
    if C.k > 1:
        i, j = rng.sample(range(C.k), 2)
        c = rng.randrange(1, C.field.order)
        G2 = C.gen.copy()
        G2[i] = C.field.add(G2[i], C.field.mul(c, G2[j]))
        if not puncture_code(LinearCode(C.field, G2)).same_space(P):
            raise VerificationError("P(C) changed under a row operation on G")
    if projective:
        tag = classify(C, cfg.caps, cfg.workers)
        rep["classification"] = tag.value
        if tag.value == "EXTENDS":
            ext = extend(C, cfg.caps, cfg.workers)
            rep["extension_points"] = [_fmt_point(C, x) for x in ext.points.points]
    rep.emit()
    return EXIT_OK


def cmd_puncture(args, cfg: RunConfig, out) -> int:
    C = _load(args.codefile)
    rep = _Report(cfg, out)
    _header(rep, C)
    P = puncture_code(C)
    rep["rank_M"] = C.n - P.dim
    rep["dim_P"] = P.dim
    rep["basis"] = [" ".join(str(int(v)) for v in row) for row in P.basis]
    ws = weight_set(P, cfg.caps) if P.dim else {0: 1}
    rep["weights"] = {str(w): c for w, c in ws.items() if w}
    rep.emit()
    return EXIT_OK


def cmd_zeros(args, cfg: RunConfig, out) -> int:
    C = _load(args.codefile)
    rep = _Report(cfg, out)
    _header(rep, C)
    X = columns_as_points(C)
    forms = hf_basis(X)
    rep["dim_HF"] = len(forms)
    rep["conditions_imposed"] = C.k**2 - len(forms)
    Z = common_zeros(forms, C.k, C.field, cfg.caps, cfg.workers)
    known = X.as_set()
    rep["common_zeros"] = len(Z)
    rep["points"] = [_fmt_point(C, x) for x in Z.points]
    rep["outside_columns"] = [_fmt_point(C, x) for x in Z.points if tuple(int(v) for v in x) not in known]
    rep.emit()
    return EXIT_OK


def cmd_extend(args, cfg: RunConfig, out) -> int:
    C = _load(args.codefile)
    rep = _Report(cfg, out)
    _header(rep, C)
    ext = extend(C, cfg.caps, cfg.workers)
    if ext.skipped:
        rep["skipped"] = ext.skipped
        rep["extension_points"] = []
        rep.emit()
        return EXIT_OK
    rows = []
    for idx, (x, E) in enumerate(zip(ext.points.points, ext.codes), 1):
        row = {
            "point": _fmt_point(C, x),
            "dim_P": puncture_code(E).dim,
            "hermitian_self_orthogonal": E.is_hermitian_self_orthogonal(),
        }
        if args.out_dir:
            path = Path(args.out_dir) / f"extension_{idx}.code"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(format_code(E, f"extension of {args.codefile} by {row['point']}"))
            row["file"] = str(path)
        rows.append(row)
    rep["extension_points"] = [r["point"] for r in rows]
    rep["extensions"] = rows
    rep.emit()
    return EXIT_OK


def cmd_quantum(args, cfg: RunConfig, out) -> int:
    C = _load(args.codefile)
    rep = _Report(cfg, out)
    _header(rep, C)
    P = puncture_code(C)
    rep["dim_P"] = P.dim
    if args.all:
        rows = quantum_survey(C, P, cfg.caps, best_of=args.best_of)
    else:
        rows = quantum_survey(C, P, cfg.caps, best_of=args.best_of, weights={args.weight})
        if not rows:
            rep["codes"] = []
            rep.emit()
            return EXIT_OK
    rep["codes"] = [
        {"code": str(r.params), **{k: v for k, v in r.as_dict().items() if k != "word"}} for r in rows
    ]
    rep.emit()
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(".."))
    except ValueError:
        raise ParseError(f"range must look like a..b, got {text!r}")
    return a, b


def cmd_cyclic(args, cfg: RunConfig, out) -> int:
    params = {"p": args.p, "h": args.h}
    if args.mod1:
        params["mod1"] = args.mod1
    if args.mod2:
        params["mod2"] = args.mod2
    F = field_from_params(params)
    C = cyclic_code(F, args.n, parse_poly(args.g, F))
    what = f"cyclic n={args.n} g={args.g}"
    if args.dual:
        C = C.dual()
        what = "dual of " + what
    if args.truncate:
        a, b = _parse_range(args.truncate)
        if not 1 <= a <= b <= C.n:
            raise ParseError(f"--truncate range {a}..{b} outside 1..{C.n}")
        C = C.delete_coordinates(range(a - 1, b))
        what += f", coordinates {a}..{b} deleted"
    text = format_code(C, what)
    if args.output:
        Path(args.output).write_text(text)
        out.write(f"wrote [{C.n},{C.k}]_{F.order} code to {args.output}\n")
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-points", type=int, default=Caps.points, help="max projective points scanned")
    common.add_argument("--cap-words", type=int, default=Caps.words, help="max codewords enumerated")
    common.add_argument("--cap-subset", type=int, default=Caps.subset, help="max dependent-column set size")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="hermself", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, func, help_ in [
        ("analyze", cmd_analyze, "puncture dimension, HF(X), classification"),
        ("puncture", cmd_puncture, "basis and weight table of P(C)"),
        ("zeros", cmd_zeros, "common zeros of HF(X)"),
        ("extend", cmd_extend, "extensions that create Hermitian self-orthogonal truncations"),
        ("quantum", cmd_quantum, "quantum code parameters from P(C)"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("codefile")
        p.set_defaults(func=func)
        if name == "extend":
            p.add_argument("--out-dir")
        if name == "quantum":
            g = p.add_mutually_exclusive_group(required=True)
            g.add_argument("--weight", type=int)
            g.add_argument("--all", action="store_true")
            p.add_argument("--best-of", type=int, default=None)

    p = sub.add_parser("cyclic", parents=[common], help="write a code file for a cyclic code or its dual")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", required=True, help='generator polynomial, e.g. "x^7+e*x^5+1"')
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--mod1")
    p.add_argument("--mod2")
    p.add_argument("--dual", action="store_true")
    p.add_argument("--truncate", metavar="A..B", help="delete coordinates A..B (1-based, inclusive)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cyclic)
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            Caps(words=args.cap_words, points=args.cap_points, subset=args.cap_subset),
            args.format,
            args.workers,
            args.seed,
        )
        return args.func(args, cfg, out)
    except (ParseError, CodeError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (VerificationError, AssertionError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
