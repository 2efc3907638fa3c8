# %% [markdown]
# An approximate Pareto frontier over several criteria.
#
# Each criterion is minimized or maximized.  The frontier is built by
# testing every corner of a geometric grid of values.

# %%
from fractions import Fraction

from rcsp import MultiInstance, pareto_frontier_approx
from rcsp.pareto import MArc, covers

arcs = [MArc(1, 2, (1, 4)), MArc(1, 3, (4, 1)), MArc(2, 4, (1, 4)), MArc(3, 4, (4, 1)),
        MArc(2, 3, (2, 2))]
square = MultiInstance(4, arcs, 1, 4, ("min", "min"))

eps = Fraction(1, 4)
front = pareto_frontier_approx(square, eps)
print("corners probed:", front.corners_probed)
for p in front:
    print(p.values, p.nodes)

# %% [markdown]
# Every path has a frontier member within the eps factor on each criterion.

# %%
for p in square.paths():
    rep = next(q for q in front if covers(q.values, p.values, square.directions, eps, strict=False))
    print(p.values, "covered by", rep.values)
