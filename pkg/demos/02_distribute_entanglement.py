"""
Distributing entanglement across a chain
========================================

An ancilla prepared in |1> and coupled through ZZ to the middle qubit of
an open three-qubit chain pumps the two chain ends into an almost pure
Bell state, without ever talking to them directly. This runs the `fig5`
preset, prints the peak report, and plots all three pair concurrences.
"""

import numpy as np

from collisim import pair_label, preset, run_experiment

result = run_experiment(preset("fig5"))

labels = [pair_label(p) for p in result.pairs]
steps = np.arange(result.table.shape[0])

print("top concurrence peaks (at or above 0.9):")
for peak in result.peaks:
    print(
        f"  C_{pair_label(peak.pair)} reaches {peak.concurrence:.4f} at "
        f"n={peak.n}, closest catalog state {peak.best_target} "
        f"(fidelity {peak.fidelity:.4f})"
    )

# The middle pair concurrences stay low: the entanglement shows up
# between the ends, skipping the qubit the ancilla touches.
for lab in labels:
    col = result.table[:, labels.index(lab)]
    print(f"  max C_{lab} over the run: {col.max():.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 4))
    for lab in labels:
        ax.plot(steps, result.table[:, labels.index(lab)], label=f"C_{lab}")
    ax.set_xlabel("collision number n")
    ax.set_ylabel("concurrence")
    ax.set_title("middle-qubit ancilla, ZZ coupling, ancilla |1>")
    ax.legend()
    fig.tight_layout()
    fig.savefig("distribute_entanglement.png", dpi=150)
    print("wrote distribute_entanglement.png")
