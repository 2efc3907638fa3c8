# %% [markdown]
# Column generation on a small covering problem.
#
# Tasks sit on graph nodes.  A column is a feasible source-to-sink path and
# covers the tasks it visits.  Pricing is a labeling run on reduced costs.

# %%
from rcsp import colgen_loop, full_enumeration_lp, random_instance

inst = random_instance(0, n=9, arc_density=0.5, R=1)
tasks = [3, 5, 7]

res = colgen_loop(inst, tasks, k_columns=2)
for entry in res.log:
    print(entry["iter"], entry["obj"], entry["new_cols"], entry["min_redcost"])
print(res.status, res.objective, "columns:", len(res.columns))

# %% [markdown]
# The same LP over every feasible path at once gives the same optimum.

# %%
print(full_enumeration_lp(inst, tasks).objective)
