"""Vertex links as weighted graphs and the 2*pi girth test."""

# %%
from fractions import Fraction

from artifact.complexbuilder import build_pe_complex
from artifact.linkcheck import LinkGraph, link_to_dot, suppress_valence_two, vertex_link, weighted_girth
from artifact.matdecomp import parse_autword

half = Fraction(1, 2)

# %% three right angles make a short circuit
g = LinkGraph.from_edges([("x", "y", half), ("y", "z", half), ("z", "x", half)])
print(weighted_girth(g))

# %% the time-0 link of the triangle-and-rectangle complex is a tetrahedron
X = build_pe_complex(parse_autword("llr.psi2"))
link = vertex_link(X, 0)
print(len(link.nodes), "nodes before suppression")
tet = suppress_valence_two(link)
print(len(tet.nodes), "nodes,", len(tet.edges), "edges, girth", weighted_girth(link)[0], "pi")

# %% Graphviz source for the link
print(link_to_dot(tet, "time 0"))
