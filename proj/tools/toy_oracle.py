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
"""Toy black box: a thresholded linear scorer.

Reads an encoded feature CSV on stdin and prints one class name per row.
The model file is JSON:

  {"weights": {"feature": w, ...}, "bias": b,
   "thresholds": [t1, ..., t_{K-1}], "classes": [c0, ..., c_{K-1}],
   "flip_rate": 0.0}

score = bias + sum(w * x); the class is classes[i] where i counts the
thresholds below the score. With flip_rate > 0 a deterministic hash of the
row values moves that fraction of rows to the next class, which gives a noisy
but repeatable oracle.
"""

import argparse
import csv
import hashlib
import json
import sys


def classify(model, header, values):
    weights = model["weights"]
    score = model.get("bias", 0.0)
    for name, value in zip(header, values):
        score += weights.get(name, 0.0) * value
    index = sum(1 for t in model["thresholds"] if score > t)
    flip = model.get("flip_rate", 0.0)
    if flip > 0.0:
        key = ",".join(repr(v) for v in values)
        digest = hashlib.sha256(key.encode("utf-8")).digest()
        u = int.from_bytes(digest[:8], "big") / 2.0**64
        if u < flip:
            index = (index + 1) % len(model["classes"])
    return model["classes"][index]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("model", help="model JSON file")
    parser.add_argument("--drop", action="append", default=[],
                        help="ignore this input column (repeatable)")
    args = parser.parse_args()
    with open(args.model, encoding="utf-8") as f:
        model = json.load(f)
    if len(model["thresholds"]) + 1 != len(model["classes"]):
        sys.exit("model needs exactly one more class than thresholds")

    lines = sys.stdin.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        sys.exit("no input")
    full_header = next(csv.reader([lines[0]]))
    keep = [i for i, h in enumerate(full_header) if h not in args.drop]
    header = [full_header[i] for i in keep]
    unknown = set(model["weights"]) - set(header)
    if unknown:
        sys.exit("unknown features in model: " + ", ".join(sorted(unknown)))
    out = []
    for raw in lines[1:]:
        cells = next(csv.reader([raw]))
        values = [float(cells[i]) for i in keep]
        out.append(classify(model, header, values))
    sys.stdout.write("".join(label + "\n" for label in out))


if __name__ == "__main__":
    main()
