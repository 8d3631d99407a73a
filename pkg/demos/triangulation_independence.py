"""Two different smooth fans over the same rays, one stringy E-function.

For 1/3(1,2,1,2) the two box-point rays alone leave no choice. Adding three
more lattice rays and changing the order in which the placing triangulation
inserts them gives two genuinely different resolutions.
"""
# %%
from motivic import (count_cones, epoly_of_fan, is_smooth, make_lattice_point, parse_spec,
                     placing_triangulation, stringy_age, stringy_from_fan)

spec = parse_spec("1/3(1,2,1,2)")
rays = [make_lattice_point(c, 3) for c in
        [(1, 2, 1, 2), (2, 1, 2, 1), (5, 4, 5, 1), (10, 5, 7, 2), (5, 4, 8, 1)]]

# %%
for tail in [(6, 7, 8), (6, 8, 7)]:
    order = [0, 1, 2, 3, 4, 5, *tail]
    f = placing_triangulation(spec, rays, order)
    print("order", order)
    print("  smooth:", bool(is_smooth(f)), " d =", count_cones(f))
    print("  E(Y)  =", epoly_of_fan(f))
    print("  E_st  =", stringy_from_fan(f).polynomial)

print("age formula:", stringy_age(spec))
