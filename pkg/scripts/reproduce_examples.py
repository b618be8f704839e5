"""Print puncture-code and quantum-code tables for every fixture.

    python3 scripts/reproduce_examples.py [--json] [FIXTURE ...]
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from hermself.config import Caps
from hermself.fileformat import load_code
from hermself.hermitian import classify, columns_as_points, common_zeros, hf_basis, puncture_code, weight_set
from hermself.quantum import quantum_survey

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@dataclass
class Row:
    fixture: str
    n: int
    k: int
    field_order: int
    dual_distance: int
    dim_P: int
    classification: str
    weights: dict = field(default_factory=dict)
    quantum: list = field(default_factory=list)
    extra_zeros: list = field(default_factory=list)
    seconds: float = 0.0


def analyse(path: Path, caps: Caps) -> Row:
    t0 = time.perf_counter()
    C = load_code(path).build()
    P = puncture_code(C)
    row = Row(path.name, C.n, C.k, C.field.order, C.dual_distance(caps), P.dim, classify(C, caps).value)
    if P.dim:
        row.weights = {w: c for w, c in weight_set(P, caps).items() if w}
        row.quantum = [str(r.params) for r in quantum_survey(C, P, caps)]
    elif C.n <= C.k**2:
        X = columns_as_points(C)
        Z = common_zeros(hf_basis(X), C.k, C.field, caps)
        known = X.as_set()
        row.extra_zeros = [X.format(p) for p in Z.points if tuple(int(v) for v in p) not in known]
    row.seconds = round(time.perf_counter() - t0, 2)
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("fixtures", nargs="*", help="fixture file names (default: all)")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    names = args.fixtures or sorted(p.name for p in FIXTURES.iterdir())
    rows = [analyse(FIXTURES / name, Caps()) for name in names]
    if args.json:
        print(json.dumps([asdict(r) for r in rows], indent=2))
        return
    for r in rows:
        print(f"{r.fixture}: [{r.n},{r.k}]_{r.field_order}, dual distance {r.dual_distance}, "
              f"dim P {r.dim_P}, {r.classification} ({r.seconds}s)")
        if r.weights:
            print("  weights: " + " ".join(f"{w}:{c}" for w, c in r.weights.items()))
            print("  quantum: " + " ".join(r.quantum))
        if r.extra_zeros:
            print("  extra common zeros: " + " ".join(r.extra_zeros))


if __name__ == "__main__":
    main()
