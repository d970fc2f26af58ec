#!/usr/bin/env python3
# Copyright 2026 The ngramsent Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes tests/data/golden_model/, a model directory produced without the
C++ library, plus expected.json with reference predictions.

The C++ tests load this directory, compare tensors and predictions, and
check that saving it again reproduces the same bytes.

Usage: make_golden_model.py OUT_DIR
"""

import json
import math
import os
import struct
import sys

VOCAB = [("good", 3), ("movie", 2), ("bad", 1), ("good movie", 1)]
EMBED, HIDDEN = 3, 2
SEEDS = [11, 22]
HISTORY = [
    [(1, 0.6931471805599453, 0.5), (2, 0.5, 0.75)],
    [(1, 0.25, 0.625)],
]
BEST = [2, 1]

# (text, tokens after rule-based tokenization, expected feature ids)
CASES = [
    ("Good movie!", [0, 1, 3]),
    ("bad.", [2]),
    ('"Nothing" here', []),
    ("good good bad", [0, 0, 2]),
]


def f32(x):
    return struct.unpack("<f", struct.pack("<f", x))[0]


def member_tensors(k):
    sizes = [len(VOCAB) * EMBED, EMBED * HIDDEN, HIDDEN, HIDDEN * 2, 2]
    flat = []
    for i in range(sum(sizes)):
        flat.append(f32(((i * 7 + k * 3) % 11 - 5) / 8.0 + 0.1 * k))
    out, pos = [], 0
    for n in sizes:
        out.append(flat[pos:pos + n])
        pos += n
    return out


def forward(tensors, bag):
    emb, w1, b1, w2, b2 = tensors
    x = [0.0] * EMBED
    for i in bag:
        for k in range(EMBED):
            x[k] += emb[i * EMBED + k]
    if bag:
        x = [v / len(bag) for v in x]
    h = []
    for j in range(HIDDEN):
        a = b1[j] + sum(w1[k * HIDDEN + j] * x[k] for k in range(EMBED))
        h.append(math.tanh(a))
    z = [b2[c] + sum(w2[j * 2 + c] * h[j] for j in range(HIDDEN)) for c in range(2)]
    m = max(z)
    e = [math.exp(v - m) for v in z]
    return [v / sum(e) for v in e]


def main():
    out_dir = sys.argv[1]
    os.makedirs(out_dir, exist_ok=True)
    members = [member_tensors(k) for k in range(len(SEEDS))]

    manifest = {
        "capacity": 10,
        "dims": {"embed_dim": EMBED, "hidden_dim": HIDDEN, "vocab_size": len(VOCAB)},
        "format_version": 1,
        "max_n": 2,
        "member_count": len(SEEDS),
        "members": [
            {
                "best_epoch": BEST[k],
                "history": [
                    {"epoch": e, "train_loss": loss, "valid_accuracy": acc}
                    for e, loss, acc in HISTORY[k]
                ],
                "seed": SEEDS[k],
            }
            for k in range(len(SEEDS))
        ],
        "seeds": SEEDS,
        "tokenizer": "rule_based",
    }
    with open(os.path.join(out_dir, "manifest.json"), "w", newline="\n") as f:
        f.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    with open(os.path.join(out_dir, "vocab.tsv"), "w", newline="\n") as f:
        for gram, count in VOCAB:
            f.write("%s\t%d\n" % (gram, count))
    for k, tensors in enumerate(members):
        with open(os.path.join(out_dir, "member_%d.bin" % k), "wb") as f:
            for t in tensors:
                f.write(struct.pack("<%df" % len(t), *t))

    expected = []
    for text, bag in CASES:
        ps = [forward(t, bag) for t in members]
        mean = [sum(p[c] for p in ps) / len(ps) for c in range(2)]
        expected.append({
            "text": text,
            "bag": bag,
            "p": mean,
            "label": 1 if mean[1] >= mean[0] else -1,
        })
    with open(os.path.join(os.path.dirname(out_dir.rstrip("/")), "golden_expected.json"),
              "w", newline="\n") as f:
        f.write(json.dumps(expected, indent=2) + "\n")


if __name__ == "__main__":
    main()
