"""The age formula at q = 1 counts group elements (McKay-style bookkeeping)."""
# %%
from collections import Counter

from motivic import box_points, classify, parse_spec, stringy_age

# %%
labels = ["1/5(1,2,3,4)", "1/6(1,2,3)", "1/7(1,2,4)", "1/2(1,1,1,1)", "1/4(1,1,1,1)"]
for label in labels:
    spec = parse_spec(label)
    ages = Counter(p.age for p in box_points(spec))
    e = stringy_age(spec)
    print(f"{label:14s} |G|={classify(spec).group_order:2d}  ages={dict(sorted(ages.items()))}"
          f"  E_st={e}  E_st(1)={e(1)}")

# %% [markdown]
# Weighting each element by q^(n - age) is all the age formula does for a
# cyclic group; the number of elements of age k is the k-th coefficient read
# from the top.

# %%
spec = parse_spec("1/2(1,1,0,0)", ["2:0,0,1,1"])
print(spec.label(), "->", stringy_age(spec), "at q=1:", stringy_age(spec)(1))
