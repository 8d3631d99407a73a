"""Partial sums of the arc-space integral creep up on the closed form."""
# %%
from motivic import (SncDivisorData, load_fixture, motivic_integral_closed, strata_epolys,
                     truncated_integral, agrees_above)

t = strata_epolys(load_fixture("3.1212").fan)
d = SncDivisorData.from_strata(t)
closed = motivic_integral_closed(t)
print("closed form:", closed)

# %%
for S in range(0, 7):
    tr = truncated_integral(d, S)
    print(f"S={S:2d}  certified down to q^{-tr.tail_floor + 1:<4d}"
          f" agrees={agrees_above(tr.partial, closed, tr.tail_floor)}  window={tr.window()}")

# %% [markdown]
# Each extra level set pushes the certified window down by at least two
# powers of q here (all multiplicities are 1), which is the finite face of
# convergence in the completed ring.
