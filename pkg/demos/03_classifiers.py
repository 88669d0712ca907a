"""
Three classifiers, one contract
===============================

Gaussian naive Bayes, a probabilistic neural network (Parzen window) and
a random forest all train on a LabeledDataset and predict 1 (defect-prone)
or 0 (clean).
"""
import math

import numpy as np

from defect_smells import ForestConfig, LabeledDataset, PnnConfig, SourceMix, predict, predict_many, train
from defect_smells.classifiers import model_from_json, model_to_json
from defect_smells.classifiers.pnn import log_class_scores


def dataset(X, y, names=None):
    X = np.asarray(X, dtype=float).reshape(len(y), -1)
    names = names or tuple(f"x{j}" for j in range(X.shape[1]))
    return LabeledDataset(names, tuple(f"f{i}.cs" for i in range(len(y))), X, np.array(y), SourceMix.COMBINED)


# naive Bayes: clean = {0, 2}, defect = {4, 6}; x = 2 sits on the clean mean
nb = train("NAIVE_BAYES", dataset([0, 2, 4, 6], [0, 0, 1, 1]))
print("NB(2) =", predict(nb, [2.0]))

# PNN on raw distances: clean at {0}, defect at {2, 4}, query 1.5
pnn = train("PNN", dataset([0, 2, 4], [0, 1, 1]), pnn=PnnConfig(bandwidth=1.0, standardize=False))
scores = np.exp(log_class_scores(pnn, np.array([[1.5]]))[0])
print("PNN kernel sums: clean %.3f, defect %.3f" % tuple(scores))
print("  by hand:       clean %.3f, defect %.3f" % (math.exp(-1.125), (math.exp(-0.125) + math.exp(-3.125)) / 2))

# random forest on a noisy threshold problem
rng = np.random.default_rng(3)
X = rng.normal(size=(400, 4))
y = (X[:, 0] + 0.5 * X[:, 1] + 0.3 * rng.normal(size=400) > 1).astype(int)
train_ds, test_X, test_y = dataset(X[:300], y[:300]), X[300:], y[300:]
for kind in ("NAIVE_BAYES", "PNN", "RANDOM_FOREST"):
    model = train(kind, train_ds, forest=ForestConfig(n_trees=50, seed=1))
    print(f"{kind:14s} holdout accuracy {np.mean(predict_many(model, test_X) == test_y):.3f}")

# models serialize to JSON and come back bit for bit
rf = train("RANDOM_FOREST", train_ds, forest=ForestConfig(n_trees=10))
text = model_to_json(rf)
print("JSON size:", len(text), "chars; round trip exact:", model_to_json(model_from_json(text)) == text)
