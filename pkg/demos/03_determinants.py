"""
Determinants
============

The closed form needs the two roots K, L of x t^2 + y t + z and a Perrin
denominator. When x vanishes the quadratic degenerates and the library falls
back to the eigenvalue product, flagging the result.
"""

# %%
from plastic_circulant.circulant import CirculantInt, build_from_sequence, det_exact
from plastic_circulant.closedform import denominator_identity, det_closed, det_factors
from plastic_circulant.recurrence import RecurrenceSpec

perrin = RecurrenceSpec.perrin()
print("exact det circ(3,0,2,3):", det_exact(CirculantInt((3, 0, 2, 3))))
print("closed form:", det_closed(perrin, 4).value)
print(det_factors(perrin, 4))

# %%
# The denominator never vanishes: the roots of t^3 + t^2 - 1 sit off the unit circle.
for n in (1, 2, 3, 10, 30):
    print(n, denominator_identity(n))

# %%
vdl = RecurrenceSpec.van_der_laan()
res = det_closed(vdl, 2)
print("Van der Laan n=2:", res.value, "fallback" if res.fallback else "")

# %%
# Exact determinants are fraction-free eliminations on big integers.
for n in (8, 16, 32):
    m = build_from_sequence(perrin, n)
    d = det_exact(m)
    approx = det_closed(perrin, n).value
    print(n, d, f"rel err {abs(approx - d) / abs(d):.1e}")
