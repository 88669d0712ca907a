"""
Balancing classes with SMOTE
============================

Defect-prone files are a small minority. SMOTE adds synthetic minority
records on the segments between a minority record and one of its nearest
minority neighbours (neighbours found on standardized features).
"""
import numpy as np

from defect_smells import LabeledDataset, SmoteConfig, SourceMix, smote

rng = np.random.default_rng(0)
X = np.vstack([rng.normal([2, 50], [0.5, 10], size=(10, 2)),   # defect-prone
               rng.normal([0, 20], [1.0, 15], size=(40, 2))])  # clean
y = np.array([1] * 10 + [0] * 40)
paths = tuple(f"demo/file{i:02d}.cs" for i in range(len(y)))
ds = LabeledDataset(("complexity", "loc"), paths, X, y, SourceMix.FILE_METRICS_ONLY)
print("before:", ds.class_counts())

balanced = smote(ds, SmoteConfig(k_neighbors=3, seed=7))
print("after: ", balanced.class_counts())
print("new paths:", balanced.paths[50:53], "...")

# originals come first and are untouched
assert np.array_equal(balanced.X[:50], X)

# every synthetic point stays inside the bounding box of the minority records
synth = balanced.X[50:]
lo, hi = X[:10].min(axis=0), X[:10].max(axis=0)
print("inside minority box:", bool(np.all((synth >= lo) & (synth <= hi))))

# half balancing: minority/majority >= 0.5
print("ratio 0.5:", smote(ds, SmoteConfig(target_ratio=0.5, seed=7)).class_counts())
