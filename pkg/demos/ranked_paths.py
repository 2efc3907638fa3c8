# %% [markdown]
# Paths in increasing cost order, and the first one that fits the windows.

# %%
from rcsp import Instance, first_feasible_by_rank, is_feasible, k_shortest

arcs = [(1, 2, 1, (10,)), (1, 3, 10, (1,)), (2, 4, 1, (10,)), (3, 4, 10, (1,)), (2, 3, 1, (1,))]
inst = Instance(4, arcs, 1, 1, 4, budget=(15,))

for rank, p in enumerate(k_shortest(inst, 5), start=1):
    print(rank, p.cost, is_feasible(inst, p), p.nodes)

res = first_feasible_by_rank(inst, k_max=10)
print(res.status, "at rank", res.rank, res.path.nodes)
