"""
Plastic-number sequences
========================

Cordonnier (Padovan), Perrin and Van der Laan all obey Z(n+3) = Z(n+1) + Z(n)
and differ only in their seeds. Terms are exact Python integers in both
directions.
"""

# %%
from plastic_circulant.recurrence import (
    PRESETS,
    RecurrenceSpec,
    binet,
    binet_vdl_as_printed,
    roots,
    square_sum_constant,
    sum_first,
    sum_squares,
    sum_squares_identity,
    term_at,
    term_at_fast,
    terms,
)

for spec in PRESETS:
    print(f"{spec.label:>11}: {terms(spec, -5, 12)}")

# %%
# The real root of x^3 = x + 1 is the plastic number; the other two roots
# are complex conjugates of modulus below one, so Binet forms converge fast.
r = roots()
print("rho  =", r.rho)
print("beta =", r.beta, " |beta| =", abs(r.beta))

perrin = RecurrenceSpec.perrin()
print("Perrin 10 via Binet:", binet(perrin, 10), " exact:", term_at(perrin, 10))

# %%
# Large indices: the companion-matrix power is logarithmic in n.
n = 10_000
print("digits of Perrin(10000):", len(str(term_at_fast(perrin, n))))

# %%
# The Van der Laan closed form in its printed shape lands one index early.
vdl = RecurrenceSpec.van_der_laan()
for k in range(1, 7):
    print(k, round(binet_vdl_as_printed(k), 9), term_at(vdl, k - 1), term_at(vdl, k))

# %%
# Partial sums. The linear sum telescopes to Z(n+5) - Z(4). For squares the
# additive constant is pinned down by the first few terms; the printed
# constant misses it for every preset.
for spec in PRESETS:
    const = square_sum_constant(spec)
    print(f"{spec.label:>11}: sum_5 = {sum_first(spec, 5)}, T anchor = {const.anchor}, "
          f"T printed = {const.printed}")

print("Perrin squares to n=3:", sum_squares(perrin, 3),
      " with printed T:", sum_squares_identity(perrin, 3, square_sum_constant(perrin).printed))
