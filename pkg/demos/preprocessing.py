# %% [markdown]
# Shrinking an instance before solving it.
#
# Per-node windows are tightened by propagating what predecessors can
# deliver and what successors can accept.

# %%
from rcsp import Instance, Mode, Wait, pretraitement, reduce_windows

chain = Instance(
    3, [(1, 2, 1, (5,)), (2, 3, 1, (5,))], 1, 1, 3,
    mode=Mode.WINDOWS, wait=Wait.NO_WAIT,
    lower=((0,), (0,), (0,)), upper=((0,), (100,), (100,)),
)
rep = reduce_windows(chain)
print(rep.instance.windows[1:], "iterations:", rep.iterations)

# %% [markdown]
# With a single sink budget, bounding rounds compute cost and resource
# shortest-path trees, raise the lower bound, lower the upper bound and
# delete what cannot lie on a cheaper feasible path.

# %%
arcs = [(1, 2, 1, (10,)), (1, 3, 10, (0,)), (2, 4, 0, (0,)), (3, 4, 0, (0,)),
        (4, 5, 1, (10,)), (4, 6, 10, (0,)), (5, 7, 0, (0,)), (6, 7, 0, (0,))]
staged = Instance(7, arcs, 1, 1, 7, budget=(10,))
for strict in (False, True):
    res = pretraitement(staged, strict_mode=strict)
    print("strict" if strict else "plain ", res.status, res.lower, res.upper, res.path.nodes)
    for entry in res.log:
        print("   ", entry)
