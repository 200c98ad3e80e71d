"""Disconnected fibers: H(a, a, -2a, -1, -1) splits into a spheres.

The component count comes from a divisibility rule on the orders; here it is
checked against the decorated-graph picture, where zeros of the fiber are
trees and saddle connections are one-loop graphs joining two trees.
"""

from isoresidual.boundary import profile
from isoresidual.core import parse_stratum
from isoresidual.fiber import euler_characteristic
from isoresidual.realgraphs import adjacency_components, enumerate_saddle_graphs, enumerate_zero_graphs

for a in range(2, 7):
    s = parse_stratum(f"{a},{a},-{2 * a},-1,-1")
    prof = profile(s)
    line = (f"{str(s):22s} chi = {euler_characteristic(prof):3d}  components = {prof.num_components}"
            f"  each in H{prof.component_signature()}")
    if a + a <= 6:
        trees, saddles = enumerate_zero_graphs(s, 0), enumerate_saddle_graphs(s, 0)
        comps = adjacency_components(s, 0, zero_graphs=trees, saddle_graphs=saddles)
        line += f"  | graphs: {len(trees)} trees, {len(saddles)} saddles, {comps} clusters"
    print(line)
