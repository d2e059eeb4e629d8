# %% [markdown]
# Mordell-Weil groups: torsion orders, heights, and the lattice identities

# %%
from fractions import Fraction

from k3fib.catalog import load_catalog, resolve_points, resolve_variant
from k3fib.ellcurve import multiply
from k3fib.kodaira import fiber_configuration
from k3fib.mwlattice import (
    MWClaim, determinant_check, height, local_contributions, section_meets_zero,
    shioda_tate_check, torsion_injection_check,
)

records = load_catalog()

# %%
# Fibration 4: one free section and 3-torsion
rec = records[4]
E = resolve_variant(rec)[1]
config = fiber_configuration(E)
points, notes = resolve_points(rec, E)
for n in notes:
    print(n)

P1 = points["P1"][1]
print("(P1 . O) =", section_meets_zero(E, P1, config))
for fd, idx, c in local_contributions(E, P1, config):
    if c:
        print(f"  {fd.kodaira} at {fd.place}: component {idx}, correction {c}")
print("height(P1) =", height(E, P1, config))
print("height(2 P1) =", height(E, multiply(E, P1, 2), config))

# %%
# The same identities for every fibration
for rid, rec in records.items():
    E = resolve_variant(rec)[1]
    config = fiber_configuration(E)
    claim = MWClaim(rank=rec.rank, torsion=rec.torsion, claimed_heights=[Fraction(3, 2)] * rec.rank)
    print(rid, rec.torsion, rec.rank,
          shioda_tate_check(config, claim), determinant_check(config, claim),
          torsion_injection_check(config, claim))
