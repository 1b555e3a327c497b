"""
How strong should the ancilla talk?
===================================

The reset-mode peak concurrence depends sharply on the ancilla coupling
strength omega. This sweeps omega for the triangle configuration of the
`fig2_cm` preset and prints the best C_BC peak for each value: the
reference operating point omega = 12 reaches its quoted 0.91 while the
slow-ancilla regime omega = 5 stays far below, and pushing omega higher
still can do better. A second sweep varies the step duration at fixed
omega.
"""

from collisim import preset, sweep

base = preset("fig2_cm")

print(f"base config: triangle, reset mode, dt={base.dt}, {base.steps} steps")
print("\nsweep over the ancilla coupling strength omega:")
for row in sweep(base, "omega", [2.0, 5.0, 8.0, 10.0, 12.0, 14.0, 20.0]):
    found = row.top["BC"]
    if found is None:
        print(f"  omega={row.value:>5.1f}: no C_BC peak")
    else:
        n, value = found
        print(f"  omega={row.value:>5.1f}: best C_BC peak {value:.4f} at n={n}")

print("\nsweep over the step duration dt at omega = 12:")
for row in sweep(base, "dt", [0.05, 0.1, 0.2, 0.3, 0.4]):
    found = row.top["BC"]
    if found is None:
        print(f"  dt={row.value:>5.2f}: no C_BC peak")
    else:
        n, value = found
        print(f"  dt={row.value:>5.2f}: best C_BC peak {value:.4f} at n={n} (t={n * row.value:.2f})")

# Failing parameter values do not abort the sweep; they come back as
# per-row errors.
rows = sweep(base, "dt", [0.2, -1.0])
print(f"\nnegative dt is reported, not raised: {rows[1].error}")
