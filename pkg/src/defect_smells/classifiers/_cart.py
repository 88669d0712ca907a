"""Compiled CART kernels (Gini, binary splits on numeric features).

Trees are flat arrays: ``feature[i] < 0`` marks a leaf whose class is
``value[i]``; otherwise rows with ``x[feature] <= threshold`` go to
``left[i]``. Split preference: highest sum of squared child class counts over
child size (equivalently lowest weighted Gini), ties to the lower feature
index, then to the lower threshold.
"""
import numpy as np
from numba import njit

# score differences below this are treated as ties
TIE_EPS = 1e-12


@njit(cache=True)
def _best_split_on_feature(X, y, idx, start, end, f, vals, labs):
    n = end - start
    for i in range(n):
        vals[i] = X[idx[start + i], f]
    order = np.argsort(vals[:n], kind="mergesort")
    tot0 = 0
    tot1 = 0
    for i in range(n):
        lab = y[idx[start + order[i]]]
        labs[i] = lab
        if lab == 1:
            tot1 += 1
        else:
            tot0 += 1
    best_score = -1.0
    best_thr = 0.0
    l0 = 0
    l1 = 0
    for i in range(n - 1):
        if labs[i] == 1:
            l1 += 1
        else:
            l0 += 1
        a = vals[order[i]]
        b = vals[order[i + 1]]
        if a < b:
            nl = i + 1
            nr = n - nl
            r0 = tot0 - l0
            r1 = tot1 - l1
            score = (l0 * l0 + l1 * l1) / nl + (r0 * r0 + r1 * r1) / nr
            if score > best_score + TIE_EPS:
                best_score = score
                thr = (a + b) / 2.0
                if thr >= b:
                    thr = a
                best_thr = thr
    return best_score, best_thr


@njit(cache=True)
def build_tree(X, y, samples, max_features, max_depth, min_split, seed):
    np.random.seed(seed)
    n = samples.shape[0]
    m = X.shape[1]
    cap = 2 * n + 1
    feature = np.full(cap, -1, dtype=np.int64)
    threshold = np.zeros(cap, dtype=np.float64)
    left = np.full(cap, -1, dtype=np.int64)
    right = np.full(cap, -1, dtype=np.int64)
    value = np.zeros(cap, dtype=np.int64)

    idx = samples.copy()
    vals = np.empty(n, dtype=np.float64)
    labs = np.empty(n, dtype=np.int64)
    perm = np.arange(m)

    stack_node = np.empty(cap, dtype=np.int64)
    stack_start = np.empty(cap, dtype=np.int64)
    stack_end = np.empty(cap, dtype=np.int64)
    stack_depth = np.empty(cap, dtype=np.int64)
    top = 0
    stack_node[0] = 0
    stack_start[0] = 0
    stack_end[0] = n
    stack_depth[0] = 0
    top = 1
    n_nodes = 1

    while top > 0:
        top -= 1
        node = stack_node[top]
        start = stack_start[top]
        end = stack_end[top]
        depth = stack_depth[top]

        c1 = 0
        for i in range(start, end):
            c1 += y[idx[i]]
        c0 = (end - start) - c1
        value[node] = 1 if c1 > c0 else 0
        if c0 == 0 or c1 == 0 or (end - start) < min_split:
            continue
        if max_depth >= 0 and depth >= max_depth:
            continue

        best_f = -1
        best_score = -1.0
        best_thr = 0.0
        found = 0
        for j in range(m):
            # lazy Fisher-Yates: draw the next candidate feature
            r = j + np.random.randint(0, m - j)
            tmp = perm[j]
            perm[j] = perm[r]
            perm[r] = tmp
            f = perm[j]
            score, thr = _best_split_on_feature(X, y, idx, start, end, f, vals, labs)
            if score < 0.0:
                continue  # constant within this node, does not count
            found += 1
            if best_f < 0 or score > best_score + TIE_EPS or (
                abs(score - best_score) <= TIE_EPS and f < best_f
            ):
                best_f = f
                best_score = score
                best_thr = thr
            if found >= max_features:
                break
        if best_f < 0:
            continue

        # partition idx[start:end] in place
        i = start
        k = end - 1
        while i <= k:
            if X[idx[i], best_f] <= best_thr:
                i += 1
            else:
                tmp = idx[i]
                idx[i] = idx[k]
                idx[k] = tmp
                k -= 1
        mid = i
        feature[node] = best_f
        threshold[node] = best_thr
        lnode = n_nodes
        rnode = n_nodes + 1
        n_nodes += 2
        left[node] = lnode
        right[node] = rnode
        stack_node[top] = rnode
        stack_start[top] = mid
        stack_end[top] = end
        stack_depth[top] = depth + 1
        top += 1
        stack_node[top] = lnode
        stack_start[top] = start
        stack_end[top] = mid
        stack_depth[top] = depth + 1
        top += 1

    return (
        feature[:n_nodes].copy(),
        threshold[:n_nodes].copy(),
        left[:n_nodes].copy(),
        right[:n_nodes].copy(),
        value[:n_nodes].copy(),
    )


@njit(cache=True)
def predict_tree(X, feature, threshold, left, right, value):
    out = np.empty(X.shape[0], dtype=np.int64)
    for r in range(X.shape[0]):
        node = 0
        while feature[node] >= 0:
            if X[r, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[r] = value[node]
    return out
