"""Closed-form design-level measures across the built-in families.

For a plan of size m, the independent-draw (SRS) value raises the
single-observation integral to the m-th power, while the unequal-minima
(MinRSSU) value multiplies the survival-power integrals of the set
minima.  The minima plan always sits closer to zero: its later factors
int S**(2i) dx shrink much faster than int S**2 dx.
"""

from crexlab import (
    Exponential,
    FiniteRange,
    PowerBeta,
    Uniform,
    crex,
    crex_minrssu_design,
    crex_srs_design,
    dynamic_crex,
    dynamic_crex_designs,
)

families = [
    Uniform(0.0, 1.0),
    Exponential(1.0),
    FiniteRange(1.0, 1.0),
    PowerBeta(2.0),
]

print("single-observation measure (always <= 0):")
for dist in families:
    print(f"  {dist!r:<24} crex = {float(crex(dist)):+.6f}")

print("\nplan-level values, m = 1..5 (minima plan vs independent draws):")
for dist in families:
    print(f"  {dist!r}")
    for m in range(1, 6):
        mn = float(crex_minrssu_design(dist, m))
        srs = float(crex_srs_design(dist, m))
        print(f"    m={m}:  minrssu {mn:+.6f}   srs {srs:+.6f}   gap {mn - srs:+.6f}")

print("\nuniform ratio rule: value(m+1)/value(m) = 1/(2m+3) exactly:")
u = Uniform(0.0, 1.0)
for m in range(1, 6):
    ratio = float(crex_minrssu_design(u, m + 1)) / float(crex_minrssu_design(u, m))
    print(f"  m={m}: ratio = {ratio:.8f}   1/(2m+3) = {1 / (2 * m + 3):.8f}")

print("\nresidual-lifetime variants beyond age t:")
for t in (0.0, 0.25, 0.5):
    v = float(dynamic_crex(u, t))
    mn, srs = dynamic_crex_designs(u, 2, t)
    print(
        f"  t={t:.2f}: dynamic = {v:+.6f}  "
        f"minrssu(m=2) = {float(mn):+.6f}  srs(m=2) = {float(srs):+.6f}"
    )
print("exponential is memoryless, so its residual measure is flat in t:")
e = Exponential(1.0)
print("  ", [round(float(dynamic_crex(e, t)), 10) for t in (0.0, 1.0, 5.0)])
