"""A reduced-replication run of the benchmark grid.

The full protocol uses 5000 replications per cell; this demo runs 500 so
it finishes in a few seconds while showing the same structure: the tuned
adjusted estimator beats the plain one on |bias| once w is chosen well.
"""

from crexlab import protocol_config, rows_to_csv, run_grid

config = protocol_config("unif", replications=500, base_seed=42, sides=("spacing",))
result = run_grid(config)

print(f"{'m':>2} {'l':>2} {'estimator':<10} {'w':>4} {'bias':>10} {'rmse':>10}")
for row in result.rows:
    w = "" if row.w is None else f"{row.w:+d}"
    print(f"{row.m:>2} {row.l:>2} {row.estimator:<10} {w:>4} {row.bias:>10.4f} {row.rmse:>10.4f}")

print("\nbest |bias| per cell, adjusted vs plain:")
cells = {}
for row in result.rows:
    cells.setdefault((row.m, row.l, row.estimator), []).append(row)
for m in config.m_values:
    for l in config.l_values:
        plain = cells[(m, l, "rn")][0]
        tuned = min(cells[(m, l, "rmn")], key=lambda r: abs(r.bias))
        print(
            f"  m={m} l={l}: plain |bias|={abs(plain.bias):.4f}  "
            f"tuned |bias|={abs(tuned.bias):.4f} at w={tuned.w:+d}"
        )

print("\nfirst CSV lines (the schema the command-line tool emits):")
print("\n".join(rows_to_csv(result.rows).splitlines()[:4]))
