#!/usr/bin/env python3
# Copyright 2026 The Cortex Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled datasets in data/.

For every dataset it writes <name>.csv (features + target), <name>.oracle.json
(a toy_oracle.py model) and <name>.predictions.csv (that oracle's labels,
row-aligned with the data). Output is deterministic.
"""

import csv
import json
import os
import random
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
import toy_oracle  # noqa: E402

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, os.pardir, "data")


def quantile(values, q):
    s = sorted(values)
    return s[min(len(s) - 1, int(q * len(s)))]


def bucket(score, cuts):
    return sum(1 for c in cuts if score > c)


def encode(columns, rows, categorical):
    """Mirrors the library encoding: one-hot blocks in place, sorted categories."""
    header, cats = [], {}
    for c in columns:
        if c in categorical:
            cats[c] = sorted({r[c] for r in rows})
            header += [c + "=" + v for v in cats[c]]
        else:
            header.append(c)
    encoded = []
    for r in rows:
        values = []
        for c in columns:
            if c in categorical:
                values += [1.0 if r[c] == v else 0.0 for v in cats[c]]
            else:
                values.append(float(r[c]))
        encoded.append(values)
    return header, encoded


def emit(name, columns, rows, target, categorical, model):
    header, encoded = encode(columns, rows, categorical)
    scores = [model.get("bias", 0.0) +
              sum(model["weights"].get(h, 0.0) * v for h, v in zip(header, x))
              for x in encoded]
    cuts = [quantile(scores, q) for q in model.pop("quantiles")]
    model["thresholds"] = cuts
    with open(os.path.join(OUT, name + ".csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(columns + [target])
        for r in rows:
            w.writerow([r[c] for c in columns] + [r[target]])
    with open(os.path.join(OUT, name + ".oracle.json"), "w") as f:
        json.dump(model, f, indent=2)
        f.write("\n")
    with open(os.path.join(OUT, name + ".predictions.csv"), "w", newline="") as f:
        f.write("prediction\n")
        for x in encoded:
            f.write(toy_oracle.classify(model, header, x) + "\n")


def numeric_dataset(name, seed, n, d, classes, quantiles, flip):
    rng = random.Random(seed)
    truth_w = [rng.uniform(-1.0, 1.0) for _ in range(d)]
    columns = ["x%d" % (j + 1) for j in range(d)]
    feats = [[round(rng.gauss(0.0, 1.0), 4) for _ in range(d)] for _ in range(n)]
    latent = [sum(w * v for w, v in zip(truth_w, x)) + rng.gauss(0.0, 0.3) for x in feats]
    cuts = [quantile(latent, q) for q in quantiles]
    rows = []
    for x, s in zip(feats, latent):
        r = dict(zip(columns, x))
        r["class"] = classes[bucket(s, cuts)]
        rows.append(r)
    model = {
        "weights": {c: round(w + rng.uniform(-0.15, 0.15), 4)
                    for c, w in zip(columns, truth_w)},
        "bias": 0.0,
        "classes": classes,
        "quantiles": quantiles,
        "flip_rate": flip,
    }
    emit(name, columns, rows, "class", set(), model)


def credit_toy(seed, n):
    rng = random.Random(seed)
    checking = ["negative", "none", "low", "high"]
    purpose = ["business", "car", "education", "furniture"]
    housing = ["free", "own", "rent"]
    columns = ["checking", "duration", "amount", "purpose", "housing", "age"]
    effect = {"negative": 1.2, "none": 0.0, "low": 0.6, "high": -0.8,
              "business": 0.4, "car": 0.1, "education": 0.5, "furniture": -0.2,
              "free": 0.3, "own": -0.4, "rent": 0.2}
    rows, latent = [], []
    for _ in range(n):
        r = {
            "checking": rng.choice(checking),
            "duration": rng.randint(4, 72),
            "amount": round(rng.lognormvariate(7.8, 0.7), 2),
            "purpose": rng.choice(purpose),
            "housing": rng.choice(housing),
            "age": rng.randint(19, 75),
        }
        s = (effect[r["checking"]] + effect[r["purpose"]] + effect[r["housing"]] +
             0.03 * r["duration"] + 0.0001 * r["amount"] - 0.02 * r["age"] +
             rng.gauss(0.0, 0.4))
        rows.append(r)
        latent.append(s)
    cut = quantile(latent, 0.7)
    for r, s in zip(rows, latent):
        r["risk"] = "bad" if s > cut else "good"
    weights = {"duration": 0.028, "amount": 0.00012, "age": -0.018}
    for c, cats in (("checking", checking), ("purpose", purpose), ("housing", housing)):
        for v in cats:
            weights[c + "=" + v] = round(effect[v] * 0.9, 4)
    model = {"weights": weights, "bias": 0.0, "classes": ["good", "bad"],
             "quantiles": [0.7], "flip_rate": 0.03}
    emit("credit_toy", columns, rows, "risk", {"checking", "purpose", "housing"}, model)


def main():
    os.makedirs(OUT, exist_ok=True)
    numeric_dataset("synth_binary", 11, 400, 4, ["neg", "pos"], [0.85], 0.05)
    numeric_dataset("synth_three", 12, 500, 5, ["a_low", "b_mid", "c_high"], [0.7, 0.9], 0.05)
    numeric_dataset("synth_four", 13, 600, 6, ["k0", "k1", "k2", "k3"],
                    [0.6, 0.85, 0.95], 0.05)
    credit_toy(14, 300)


if __name__ == "__main__":
    main()
