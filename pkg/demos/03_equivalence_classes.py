"""Markov equivalence classes, latent projection and round trips.

A CPDAG stands for every DAG sharing its skeleton and unshielded
colliders; a PAG stands for a class of MAGs.  Enumerating the members
makes class-level claims checkable by brute force: the per-endpoint mark
union of the members reproduces the representative exactly.
"""

from pathlib import Path

import covadjust as ca

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

cpdag = ca.parse_document((CORPUS / "fig1a.cg").read_text()).graph
klass = ca.enumerate_dags(cpdag)
print(f"the intro CPDAG represents {len(klass.members)} DAGs")
print("mark union reproduces the input:", ca.union_representative(klass.members) == cpdag)

# Every member pair is Markov equivalent: identical separation structure.
print("members pairwise equivalent:",
      all(ca.markov_equivalent(klass.members[0], m) for m in klass.members[1:]))

# MAG classes work the same way through circle-mark assignment.
pag = ca.parse_document((CORPUS / "fig3a.cg").read_text()).graph
mags = ca.enumerate_mags(pag)
print(f"\nthe four-circle PAG represents {len(mags.members)} MAGs")
print("round trip:", ca.union_representative(mags.members) == pag)

# Latent projection: a DAG with hidden nodes becomes a MAG over the
# observed ones, preserving ancestry and separation.  The hidden common
# cause L leaves a bidirected edge between its children.
dag = ca.parse_graph("""
graph dag {
  L -> A   L -> B
  A -> C   B -> C
}
""")
mag = ca.latent_project(dag, {"A", "B", "C"})
print("\nprojection of the 4-node DAG onto {A, B, C}:")
print(ca.serialize_graph(mag))

# The canonical DAG reverses the construction: one fresh latent per
# bidirected edge, and projecting it returns the same MAG.
canon = ca.canonical_dag(mag)
print("canonical DAG nodes:", canon.nodes)
print("projects back to the same MAG:", ca.latent_project(canon, mag.nodes) == mag)
