"""Classifying generalized Baumslag-Solitar groups from their labelled graphs."""

# %%
from artifact.gbs import GbsGraph, classify, elementary_collapse, normal_form

G = GbsGraph.make

# %% the three outcomes
print(classify(G(1, [])))  # one vertex, no edges: Z
print(classify(G(1, [(0, 0, 1, 2)])))  # BS(1,2)
print(classify(G(1, [(0, 0, 2, 3)])))  # maps onto BS(2,3)

# %% collapsing: the unit end's vertex is absorbed and its other labels scale
g = G(3, [(0, 1, 2, 1), (1, 2, 5, 3)])
print(elementary_collapse(g, 0).to_json())

# %% a two-edge cycle; cut an edge and map the rest to Z injectively on vertex groups
two = G(2, [(0, 1, 2, 3), (0, 1, 2, 5)])
c = classify(two)
print(c, c.data)
print(classify(two, cut_edge=1))

# %% a unit self-loop with more graph attached goes to Z * Z/p
c = classify(G(2, [(0, 0, 1, 3), (0, 1, 4, 2)]))
print(c, "theta:", c.data["theta"])

# %% trees of unit labels collapse away completely
print(normal_form(G(4, [(0, 1, 1, 2), (1, 2, -1, 3), (2, 3, 1, 1)])).to_json())
