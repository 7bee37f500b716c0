"""From a GL(2,Z) matrix to a square complex for its free-by-cyclic group."""

# %%
from artifact.complexbuilder import build_square_complex, euler_characteristic, homology_h1
from artifact.linkcheck import check_npc
from artifact.matdecomp import Mat2Z, decompose, to_aut_word

# %% the matrix of a->aab, b->ab (cat map)
g = Mat2Z.from_list([[2, 1], [1, 1]])
d = decompose(g)
print("eps, delta:", d.eps, d.delta)
print("conjugator:", d.C)
print("L/R word:", " ".join(d.lr_word), "then", d.terminal)
assert d.check(g)

# %% translate to a product of lambda/rho and a tail, and check the abelianization
w = to_aut_word(d)
print("automorphism:", w.pretty(), "=", w.realize())
print("realized matrix:", w.realized_matrix())

# %% build the complex and look at it
X = build_square_complex(w)
print(X.meta)
print("chi =", euler_characteristic(X), " H1 =", homology_h1(X))

# %% link condition at every vertex, exact arithmetic
rep = check_npc(X)
for r in rep.vertices:
    print(f"{r.name:>8}: girth {r.girth} pi")
print("non-positively curved:", rep.passed)

# %% a matrix with a zero on the diagonal needs an extra conjugation first
h = Mat2Z.from_list([[0, 1], [-1, 3]])
dh = decompose(h)
print(h, "->", " ".join(dh.moves), "->", to_aut_word(dh).pretty())
