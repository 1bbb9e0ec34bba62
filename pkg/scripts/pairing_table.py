"""Dump the mod-p Hilbert pairing table for a small cyclotomic field.

Prints the full symbol matrix on the unit-filtration basis of
k = Q_p(zeta_p) together with the zeta normalization that pins the
scalar, then the order grid over admissible filtration pairs.

Usage: python3 scripts/pairing_table.py [--p 3]
"""

import argparse
import json

from ramlock.localfield import make_field
from ramlock.unitsymbols import export_pairing_table, filtration_pairing_order


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=3, choices=(3, 5))
    args = ap.parse_args()

    p = args.p
    k = make_field(p, [p] * (p - 1) + [1])
    table = export_pairing_table(k)
    print(json.dumps(table, sort_keys=True, indent=2))

    pe0 = p * k.e // (p - 1)
    print()
    print(f"pairing order by filtration level (pe0 = {pe0}):")
    for i in range(1, pe0 + 1):
        row = []
        for j in range(1, pe0 + 1):
            if i % p == 0 and j % p == 0:
                row.append(".")
            else:
                row.append(str(filtration_pairing_order(k, i, j)))
        print(" ".join(row))


if __name__ == "__main__":
    main()
