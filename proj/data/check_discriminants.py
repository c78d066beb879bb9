"""Recompute the field discriminant of every record in fields.jsonl with sympy
and compare it with the stored "disc" value."""

import json
import sys
from pathlib import Path

import sympy as sp
from sympy.polys.numberfields.basis import round_two

x = sp.symbols("x")


def field_disc(coeffs):
    f = sp.Poly(list(reversed(coeffs)), x, domain="ZZ")
    if not f.is_irreducible:
        raise ValueError("reducible")
    if f.degree() == 1:
        return 1
    return int(round_two(f)[1])


def main(path):
    bad = 0
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        d = field_disc(rec["poly"])
        ok = d == int(rec["disc"])
        bad += not ok
        print(f"{rec['label']:10} {d:>8} {'ok' if ok else 'MISMATCH ' + str(rec['disc'])}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).with_name("fields.jsonl")))
