"""Discrimination between set minima and the parent distribution.

The disparity is zero for i = 1 (the minimum of one draw is the draw)
and grows with the set size; at the plan level it compares the whole
unequal-minima design against independent draws of the same size.
"""

from crexlab import Exponential, PowerBeta, Uniform, d_designs, d_min_vs_parent

families = [Uniform(0.0, 1.0), Exponential(1.0), PowerBeta(2.0)]

print("minimum-of-i draws vs parent (closed route / integral route):")
for dist in families:
    print(f"  {dist!r}")
    for i in (1, 2, 3, 5, 8):
        closed = float(d_min_vs_parent(dist, i))
        numeric = float(d_min_vs_parent(dist, i, method="quadrature"))
        print(f"    i={i}:  {closed:.6f}  /  {numeric:.6f}")

print("\nuniform closed form (i-1)/(2(2i+1)(i+2)):")
u = Uniform(0.0, 1.0)
for i in range(1, 7):
    formula = (i - 1) / (2.0 * (2 * i + 1) * (i + 2))
    print(f"  i={i}: measured {float(d_min_vs_parent(u, i)):.6f}   formula {formula:.6f}")

print("\nplan-level disparity (grows with design size m):")
for dist in families:
    values = [float(d_designs(dist, m)) for m in range(1, 7)]
    print(f"  {dist!r:<24} " + "  ".join(f"{v:.5f}" for v in values))
