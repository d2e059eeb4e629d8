# %% [markdown]
# Singular fibers of the six Jacobian fibrations on X3
#
# Each catalog record stores a Weierstrass equation over Q(u).  Tate's
# algorithm runs at every place dividing the discriminant and at infinity.

# %%
from k3fib.catalog import curve_variants, load_catalog, resolve_variant
from k3fib.kodaira import configuration_string, euler_sum, fiber_configuration

records = load_catalog()

# %%
for rid, rec in records.items():
    var, E, note = resolve_variant(rec)
    config = fiber_configuration(E)
    print(f"F{rid}: {E}")
    for fd in config:
        print(f"    {fd.place}: {fd.kodaira}  (ord Delta = {fd.ord_delta}, degree {fd.degree})")
    print(f"    {configuration_string(config)}, euler {euler_sum(config)}")

# %% [markdown]
# Two records carry a second printed equation.  Its fibers disagree with the
# expected configuration, which is how the resolver picks the right one.

# %%
for rid in (2, 6):
    text = curve_variants(records[rid])["text"]
    print(f"F{rid} alternative: {configuration_string(fiber_configuration(text))}")

# %% [markdown]
# Place at infinity: u = 1/s, and the coefficients are rescaled by s^(2k), s^(4k), s^(6k).

# %%
from k3fib.ellcurve import parse_curve
from k3fib.kodaira import INFINITY, tate_at

fd = tate_at(parse_curve("0;4*u^3;0;-4*u^3;0"), INFINITY)
print(fd.kodaira, fd.ord_delta, fd.ord_c4, fd.ord_c6)
print(fd.steps)
