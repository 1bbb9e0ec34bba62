"""Walk one curve through the full report pipeline and print both views.

Builds k = Q_5(zeta_5) and E: y^2 = x^3 - x, routes by reduction kind,
and prints the text summary followed by the exact JSON the CLI emits.

Usage: python3 scripts/sandwich_report.py
"""

import json

from ramlock.bounds import ordinary_bounds, supersingular_bounds
from ramlock.elliptic import WeierstrassCurve
from ramlock.localfield import make_field


def main():
    k = make_field(5, [5, 5, 5, 5, 1])
    E = WeierstrassCurve(k, [0, 0, 0, -1, 0])
    rd = E.reduction_type()
    print(f"field: p={k.p} e={k.e} f={k.f}   reduction: {rd.kind}")
    if rd.kind == "GoodSupersingular":
        rep = supersingular_bounds(E, k)
    else:
        rep = ordinary_bounds(E, k)
    print(f"invariants: M={rep.M} Mur={rep.Mur} N={rep.N} Nhat={rep.Nhat}")
    print(f"lower:  {rep.lower}")
    print(f"upper:  {rep.upper}")
    exact = "open" if rep.exact is None else str(rep.exact)
    print(f"exact:  {exact}   (case: {rep.case})")
    if rep.caveats:
        print(f"caveats: {', '.join(rep.caveats)}")
    print()
    print(json.dumps(rep.to_json_dict(), sort_keys=True, indent=2))


if __name__ == "__main__":
    main()
