"""Euler characteristics along a line in the pattern space.

Inside the chamber where the smaller zero sits below every pole and no two-
sided cherry survives, chi is a quadratic polynomial along any lattice line
when p = 3: its third differences vanish and its second differences equal
2 * (x1^2 + x2^2 - (x1 + x2)^2) evaluated on the direction.
"""

from isoresidual.chambers import leading_form, verify_homogeneity

base, direction = (4, 17, 7, 7, 7), (1, 2, 1, 1, 1)
rep = verify_homogeneity(base, direction, depth=5)
for pt, chi in zip(rep.points, rep.chi):
    print(f"x = {pt}  chi = {chi}")
for k, row in enumerate(rep.differences[1:4], start=1):
    print(f"difference {k}: {list(row)}")
print(f"expected second difference: 2 * L{direction[:2]} = {2 * leading_form(*direction[:2], 3)}")
print("consistent" if rep.ok else "MISMATCH")
