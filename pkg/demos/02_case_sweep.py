"""Sweep every automorphism word up to length 6 and tabulate the outcome.

Most words give a non-positively curved square complex.  The words that do
not are those where the degenerate squares close up into a cylinder; they
are listed at the end.
"""

# %%
from collections import Counter

from artifact.complexbuilder import DegenerateCylinder, build_square_complex, classify_case, iter_autwords
from artifact.linkcheck import check_npc

# %%
tally = Counter()
cylinders = []
for w in iter_autwords(6):
    try:
        ok = check_npc(build_square_complex(w)).passed
    except DegenerateCylinder:
        cylinders.append(w)
        ok = "cylinder"
    tally[classify_case(w), ok] += 1

for key, n in sorted(tally.items(), key=str):
    print(key, n)

# %% the short ones
print([w.pretty() for w in cylinders if len(w) <= 3])
