"""
Spectra of recurrence circulants
================================

circ(Z0, ..., Z(n-1)) is diagonalised by the DFT. The closed form replaces
the O(n) sum per eigenvalue with a ratio of two short polynomials in a root
of unity.
"""

# %%
import numpy as np

from plastic_circulant.circulant import build_from_sequence, eig_oracle, norm_oracle, one_inf_norms
from plastic_circulant.closedform import eig_closed_all, norm_closed
from plastic_circulant.recurrence import RecurrenceSpec

perrin = RecurrenceSpec.perrin()
m = build_from_sequence(perrin, 4)
print(m.dense())

# %%
closed = np.array(eig_closed_all(perrin, 4))
oracle = eig_oracle(m).as_array()
print("closed:", np.round(closed, 12))
print("oracle:", np.round(oracle, 12))

# %%
# Any integer seeds work, negative ones included.
spec = RecurrenceSpec(4, -7, 2)
for n in (5, 17, 64):
    c = np.array(eig_closed_all(spec, n))
    o = eig_oracle(build_from_sequence(spec, n)).as_array()
    print(n, "max rel err:", np.max(np.abs(c - o) / (1 + np.abs(o))))

# %%
# For nonnegative rows the spectral norm is the row sum, Z(n+4) - Z(4),
# and the 1- and infinity-norms coincide with it.
cord = RecurrenceSpec.cordonnier()
for n in (4, 10, 40):
    mc = build_from_sequence(cord, n)
    print(n, norm_closed(cord, n), norm_oracle(mc), one_inf_norms(mc))
