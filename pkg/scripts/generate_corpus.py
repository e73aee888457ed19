"""Regenerate src/ringsums/data/corpus.json (the default verification corpus)."""

import itertools
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "ringsums" / "data" / "corpus.json"


def table_ring(name, moduli, elements, mul, one):
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return {"name": name, "ring": {"kind": "table", "label": name, "moduli": moduli,
                                   "table": table, "one": index[one]}}


def main():
    rings = [{"name": f"Z{n}", "ring": {"kind": "zmod", "n": n}} for n in [*range(1, 37), 48, 60]]
    rings.append({"name": "Z2xZ4", "ring": {"kind": "product",
                                            "factors": [{"kind": "zmod", "n": 2}, {"kind": "zmod", "n": 4}]}})
    # coordinate tuples in row-major order match the mixed-radix index
    bits3 = list(itertools.product(range(2), repeat=3))
    rings.append(table_ring("Z2^3 componentwise", [2, 2, 2], bits3,
                            lambda a, b: tuple(x * y for x, y in zip(a, b)), (1, 1, 1)))
    pairs = list(itertools.product(range(2), repeat=2))
    # F4 = F2[w]/(w^2 + w + 1), element (c0, c1) = c0 + c1 w
    rings.append(table_ring("F4", [2, 2], pairs,
                            lambda a, b: ((a[0] * b[0] + a[1] * b[1]) % 2,
                                          (a[0] * b[1] + a[1] * b[0] + a[1] * b[1]) % 2), (1, 0)))
    # Z2[i] = F2[i]/(i^2 + 1), local with maximal ideal (1 + i)
    rings.append(table_ring("Z2[i]", [2, 2], pairs,
                            lambda a, b: ((a[0] * b[0] + a[1] * b[1]) % 2,
                                          (a[0] * b[1] + a[1] * b[0]) % 2), (1, 0)))
    # upper triangular [[a, b], [0, c]] over F2
    rings.append(table_ring("T2(Z2)", [2, 2, 2], bits3,
                            lambda x, y: ((x[0] * y[0]) % 2, (x[0] * y[1] + x[1] * y[2]) % 2,
                                          (x[2] * y[2]) % 2), (1, 0, 1)))
    for q in (2, 3):
        rings.append({"name": f"M2(Z{q})", "ring": {"kind": "matrix", "base": {"kind": "zmod", "n": q}, "d": 2}})
    OUT.write_text(json.dumps({"rings": rings}, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main()
