"""
Wrapper feature selection
=========================

Both searches score a feature mask by training a classifier on half of the
data and measuring F-measure on the other half. Backward elimination drops
one feature per step; simulated annealing flips single bits.
"""
import numpy as np

from defect_smells import (
    AnnealingSchedule,
    ForestConfig,
    LabeledDataset,
    SourceMix,
    WrapperEvaluator,
    backward_elimination,
    simulated_annealing_select,
)

rng = np.random.default_rng(11)
n = 200
y = (rng.random(n) < 0.3).astype(int)
signal = y + 0.3 * rng.normal(size=n)
X = np.column_stack([signal, rng.normal(size=(n, 5))])
names = ("signal", "noise1", "noise2", "noise3", "noise4", "noise5")
ds = LabeledDataset(names, tuple(f"m/f{i:03d}.cs" for i in range(n)), X, y, SourceMix.COMBINED)

evaluator = WrapperEvaluator(forest=ForestConfig(n_trees=15), seed=1)

trace = []
mask = backward_elimination(ds, evaluator, trace=trace)
for step_mask, score in trace:
    print(f"{int(step_mask.sum())} features  F = {score:.3f}  " + ",".join(np.array(names)[step_mask]))
print("elimination keeps:", [f for f, k in zip(names, mask) if k])

trace = []
mask = simulated_annealing_select(ds, evaluator, AnnealingSchedule(iterations=100, seed=3), trace=trace)
print("annealing best F after 10/50/100 iterations:", [round(trace[i][2], 3) for i in (9, 49, 99)])
print("annealing keeps:", [f for f, k in zip(names, mask) if k])
