"""
Verification report
===================

Every closed form is swept against its oracle and summarised as one record
per (check, spec), keeping the worst point. Known-wrong printed identities
are expected to fail and are reported as such.
"""

# %%
from plastic_circulant.verify import ERRATUM, FALLBACK, VerifyConfig, run_suite

report = run_suite(VerifyConfig(n_max=16, trials=10, random_seed=42))
print(report.summary)

# %%
for rec in report.by_status(ERRATUM):
    print(f"{rec.name:<30} {rec.params['spec']:<11} expected {rec.expected}, got {rec.actual}")

# %%
for rec in report.by_status(FALLBACK)[:5]:
    print(rec.name, rec.params["spec"], "n =", rec.params["n"])

# %%
# The same sweep from the command line, written to a file:
#   plastic-circulant verify --n-max 16 --trials 10 --seed 42 --out report.json
print(report.to_json()[:400])
