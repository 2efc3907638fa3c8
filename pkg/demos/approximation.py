# %% [markdown]
# A (1 + eps)-approximate solve on random single-resource instances,
# compared with the exact optimum.

# %%
from fractions import Fraction

from rcsp import bounds_lorenz_raz, fptas_solve, random_instance, solve_exact

for seed in range(8):
    inst = random_instance(seed, n=10, arc_density=0.5, cost_range=(1, 50))
    exact = solve_exact(inst)
    if exact.status != "OPTIMAL":
        print(seed, "infeasible")
        continue
    b = bounds_lorenz_raz(inst)
    approx = fptas_solve(inst, Fraction(1, 10))
    print(f"seed {seed}: bracket [{b.lower}, {b.upper}]  opt {exact.cost}  "
          f"approx {approx.cost}  ratio {float(Fraction(approx.cost, exact.cost)):.3f}")
