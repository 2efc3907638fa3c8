# %% [markdown]
# Exact resource-constrained shortest paths by labeling.
#
# Three routes from node 1 to node 4, each trading cost against one resource.
# The sink may consume at most 15 units.

# %%
from rcsp import Instance, acyclic_labeling, label_correcting, label_setting, solve_exact

arcs = [
    (1, 2, 1, (10,)),
    (1, 3, 10, (1,)),
    (2, 4, 1, (10,)),
    (3, 4, 10, (1,)),
    (2, 3, 1, (1,)),
]
inst = Instance(4, arcs, resources=1, source=1, sink=4, budget=(15,))

# %%
sol = solve_exact(inst)
print(sol.status, sol.cost, sol.path.nodes)

# %% [markdown]
# The sink frontier keeps every nondominated (cost, consumption) pair.
# All three algorithms agree on it.

# %%
for run in (label_correcting, label_setting, acyclic_labeling):
    print(run.__name__, sorted(run(inst).values()))

# %% [markdown]
# With k = 2, a label survives until two others dominate it, so the sink
# also keeps near-optimal alternatives.

# %%
loose = inst.replace(budget=(25,))
print(sorted(acyclic_labeling(loose, k=2).values()))
