# %% [markdown]
# The 24 smooth rational curves and the fibers they span
#
# The Gram matrix has rank 20.  Divisors of functions pair to zero with
# everything, and their zero and polar parts are fibers of one fibration.

# %%
import numpy as np

from k3fib import nslattice

print(nslattice.GRAM.shape, nslattice.gram_rank())
print(np.linalg.eigvalsh(nslattice.GRAM.astype(float)).round(3)[:6])

divs = nslattice.load_divisors()

# %%
for name in nslattice.FUNC_NAMES + ("div1",):
    d = divs[name]
    zero, polar = nslattice.lattice_types(d)
    print(f"({name}): trivial={nslattice.numerically_trivial(d.divisor)}  zero {zero}  polar {polar}")

# %% [markdown]
# The printed parameter divisor of Fibration 3 does not describe a fiber.
# Search for the fewest coefficient or label edits that fix it.

# %%
d3 = divs["div3"]
try:
    nslattice.recognize_fiber(d3.zero)
except nslattice.FiberMismatch as exc:
    print(exc.kind, exc.details)

for fix in nslattice.find_corrections(d3.zero_terms, d3.polar):
    print(fix.edits, "->", fix.kodaira)
    print(fix.divisor)
