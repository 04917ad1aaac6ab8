"""Deciding and enumerating adjustment sets on a CPDAG.

The running example: we want the total causal effect of X on Y, but we
only know the graph up to Markov equivalence (a CPDAG).  A valid
adjustment set must work in every DAG the CPDAG represents.
"""

from pathlib import Path

import covadjust as ca

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

doc = ca.parse_document((CORPUS / "fig1a.cg").read_text())
g = doc.graph
print("Graph:")
print(ca.serialize_graph(g))

# The forbidden set: nodes that can never be adjusted for, because they
# may lie downstream of the treatment on a causal path.
forb = ca.forbidden_set(g, {"X"}, {"Y"})
print("forbidden nodes:", sorted(forb))

# Check one candidate set.
verdict = ca.satisfies_gac(ca.AdjustmentQuery(g, frozenset({"X"}), frozenset({"Y"}),
                                              frozenset({"Z", "A"})))
print("\n{Z, A} is an adjustment set:", verdict.passed)

# A failing candidate comes back with the violated condition and a witness.
verdict = ca.satisfies_gac(ca.AdjustmentQuery(g, frozenset({"X"}), frozenset({"Y"}),
                                              frozenset({"I"})))
print("{I} fails", verdict.failed_condition, "with witness path", verdict.witness)
print("  (that path is open: conditioning on {I} does not block it)")

# Enumerate everything, then just the inclusion-minimal sets.
all_sets = ca.list_adjustment_sets(g, {"X"}, {"Y"})
print("\nall adjustment sets:", [sorted(s) for s in all_sets])
minimal = ca.list_adjustment_sets(g, {"X"}, {"Y"}, minimal_only=True)
print("minimal ones:      ", [sorted(s) for s in minimal])

# Multi-node treatments work the same way; this PAG has latent confounding
# and a two-node intervention, and still admits exactly four sets.
g5b = ca.parse_document((CORPUS / "fig5b.cg").read_text()).graph
sets = ca.list_adjustment_sets(g5b, {"X1", "X2"}, {"Y"})
print("\ntwo-treatment PAG:", [sorted(s) for s in sets])
