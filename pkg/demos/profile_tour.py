"""A walk through one fiber: where its zeros and poles come from.

    python demos/profile_tour.py [mu]

Default mu is 2,3,-1,-2,-4, whose fiber turns out to be a torus.
"""

import sys

from isoresidual.boundary import all_records, profile, residue_total
from isoresidual.core import parse_stratum
from isoresidual.fiber import euler_characteristic


def main(text: str = "2,3,-1,-2,-4") -> None:
    s = parse_stratum(text)
    print(f"stratum {s}: {s.p} labeled poles, zeros of orders {s.a1} and {s.a2}\n")

    print("boundary degenerations and what they contribute:")
    for r in all_records(s):
        print(f"  {r.source.describe():40s} {r.kind:4s} order {r.order}  x{r.multiplicity}"
              f"  residue {r.residue.expression()}")

    prof = profile(s)
    print(f"\nafter merging equivalent residues the fiber lives in H{prof.stratum_signature()}")
    print(f"degree {prof.degree}  ->  chi = {euler_characteristic(prof)}, "
          f"{prof.num_components} component(s) of genus {prof.genus_per_component}")

    raw = residue_total(all_records(s), s.p)
    print(f"sum of pole residues: {raw.coeffs}, a multiple of (1,...,1) since the residues sum to 0")


if __name__ == "__main__":
    main(*sys.argv[1:2])
