"""Stringy E-functions of three 4-dimensional cyclic quotients, two ways.

Each singularity is resolved torically by the box points of its group; the
strata of the exceptional divisor give E_st through discrepancy factors, and
the age formula gives the same polynomial with no resolution at all.
"""
# %%
from motivic import (count_cones, epoly_of_fan, load_fixture, stringy_age, stringy_from_fan,
                     betti_readout)

# %%
for name in ["2.1111", "3.1212", "4.1313"]:
    fx = load_fixture(name)
    f = fx.fan
    res = stringy_from_fan(f)
    print(fx.spec.label())
    print("  cone counts d_k :", count_cones(f))
    print("  E(Y)            :", epoly_of_fan(f))
    print("  discrepancies   :", sorted(res.strata.discrepancies.values()))
    print("  E_st resolution :", res.polynomial)
    print("  E_st ages       :", stringy_age(fx.spec))
    print("  Betti (virtual) :", betti_readout(res.polynomial, f.dim))

# %% [markdown]
# The resolutions are not crepant (every discrepancy is positive), so E(Y)
# carries more cohomology than the singularity "deserves". The discrepancy
# factors (q-1)/(q^(a+1)-1) cut it back to what the ages predict.

# %%
res = stringy_from_fan(load_fixture("3.1212").fan)
for J, cls in sorted(res.strata.entries.items()):
    print(f"  open stratum {J or '()'}: {cls}")
print("  integral:", res.integral)
