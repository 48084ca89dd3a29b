#!/usr/bin/env python3
"""Regenerates the checked-in fixture files in this directory.

Output is deterministic: rerunning produces byte-identical files.

  corpus_small.jsonl        3 classes x 8 comments
  corpus_three.jsonl        3 comments, one per class
  corpus_rejects.jsonl      comments that preprocessing must reject or truncate
  embeddings_stub.jsonl     768-d vectors for corpus_small (random projection of bag of words)
  likelihoods_stub.jsonl    bert and gpt2 records for corpus_small
  glove_small.txt           100-d vectors for part of the corpus_small vocabulary
"""

import json
import math
import random
import zlib
from pathlib import Path

HERE = Path(__file__).resolve().parent

CLASSES = {
    "alpha": ["market", "price", "stock", "trade", "growth", "profit", "bank", "rate", "fund", "loan"],
    "beta": ["game", "team", "score", "player", "season", "coach", "goal", "match", "league", "win"],
    "gamma": ["recipe", "flavor", "oven", "butter", "sugar", "bake", "salt", "dough", "spice", "taste"],
}
SHARED = ["the", "a", "is", "and", "of", "to", "it", "this", "was", "really", "very", "good", "think", "people"]


def comment_text(rng, private):
    n = rng.randint(8, 20)
    words = [rng.choice(private) if rng.random() < 0.4 else rng.choice(SHARED) for _ in range(n)]
    words[0] = words[0].capitalize()
    return " ".join(words) + "."


def tokens(text):
    # Matches the primary tokenizer on fixture text: lowercase words plus a
    # trailing period token.
    out = []
    for chunk in text.lower().split():
        if chunk.endswith("."):
            out.extend([chunk[:-1], "."])
        else:
            out.append(chunk)
    return out[:75]


def write_jsonl(name, rows):
    with open(HERE / name, "w", encoding="utf-8", newline="\n") as f:
        for r in rows:
            f.write(json.dumps(r, separators=(",", ":")) + "\n")


def token_rng(token, salt):
    return random.Random(zlib.crc32(f"{salt}:{token}".encode()))


def main():
    rng = random.Random(20240501)
    corpus = []
    for cls, private in CLASSES.items():
        for i in range(8):
            corpus.append({"id": f"{cls}-{i}", "class": cls, "text": comment_text(rng, private)})
    write_jsonl("corpus_small.jsonl", corpus)

    three = [
        {"id": "c1", "class": "alpha", "text": "The market price of the stock was very good today."},
        {"id": "c2", "class": "beta", "text": "Our team won the match!! Check https://example.com/score for 3 more goals."},
        {"id": "c3", "class": "gamma", "text": "Bake the dough with butter, sugar and salt. It tastes GREAT :)"},
    ]
    write_jsonl("corpus_three.jsonl", three)

    rejects = [
        {"id": "short", "class": "alpha", "text": "Too short."},
        {"id": "exact", "class": "alpha", "text": "one two three four five six"},
        {"id": "long", "class": "beta", "text": " ".join(f"w{i}" for i in range(100))},
        {"id": "links", "class": "beta", "text": "see http://a.b and www.c.d ok 42"},
    ]
    write_jsonl("corpus_rejects.jsonl", rejects)

    # Bag-of-words random projection, one fixed Gaussian vector per token.
    emb = []
    for c in corpus:
        toks = tokens(c["text"])
        v = [0.0] * 768
        for t in toks:
            r = token_rng(t, "emb")
            for d in range(768):
                v[d] += r.gauss(0.0, 1.0)
        emb.append({"id": c["id"], "vector": [round(x / len(toks), 6) for x in v]})
    write_jsonl("embeddings_stub.jsonl", emb)

    lik = []
    for c in corpus:
        toks = tokens(c["text"])
        for source in ("bert", "gpt2"):
            probs, ranks = [], []
            for t in toks:
                r = token_rng(t, source)
                rank = 1 + int(r.expovariate(1.0 / 40.0))
                ranks.append(rank)
                probs.append(round(min(1.0, 0.9 / math.sqrt(rank) + 0.01 * r.random()), 6))
            lik.append({"id": c["id"], "source": source, "probs": probs, "ranks": ranks})
    write_jsonl("likelihoods_stub.jsonl", lik)

    vocab = sorted({t for words in CLASSES.values() for t in words[:6]} | set(SHARED[:8]))
    with open(HERE / "glove_small.txt", "w", encoding="utf-8", newline="\n") as f:
        for w in vocab:
            r = token_rng(w, "glove")
            f.write(w + " " + " ".join(f"{r.uniform(-1, 1):.4f}" for _ in range(100)) + "\n")


if __name__ == "__main__":
    main()
