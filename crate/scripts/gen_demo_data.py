#!/usr/bin/env python3
"""Regenerates the bundled demo corpus, lexicon and query list.

Usage: python3 scripts/gen_demo_data.py [output-dir]
Output is deterministic for a given seed.
"""

import collections
import json
import random
import sys
from pathlib import Path

from demo_words import FOREIGN, FUNCTION_WORDS, STREI_ORDERS, TOPICS, VARIANTS

SEED = 7
DOCS = 200

QUERIES = [
    "ចំរៀង", "ចម្រៀង", "សំលៀកបំពាក់", "សម្លៀកបំពាក់", "ជ័យជំនះ",
    "ជ័យជម្នះ", "កំចាត់", "បំលែង", "សំឡាញ់", "កំចី",
    "ស្ត្រី", "ស្រ្តី", "ចាំរៀង", "កំសាន", "សុខភាព",
    "កីឡា", "តន្ត្រី", "សិស្ស", "ផ្លូវ", "សេដ្ឋកិច្ច",
]


def weights(words):
    return [1.0 / (i + 1) ** 0.6 for i in range(len(words))]


def surface(word, rng):
    """Picks how this occurrence of `word` is typed."""
    if word in VARIANTS:
        variant, share = VARIANTS[word]
        return variant if rng.random() < share else word
    if word == "ស្ត្រី":
        r = rng.random()
        for form, share in STREI_ORDERS:
            if r < share:
                return form
            r -= share
    return word


def sentence(rng, topic, other):
    n = rng.randint(4, 8)
    words = []
    for _ in range(n):
        r = rng.random()
        if r < 0.62:
            pool = TOPICS[topic]
        elif r < 0.72:
            pool = TOPICS[other]
        else:
            pool = FUNCTION_WORDS
        words.append(rng.choices(pool, weights(pool))[0])
    return words


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "crates/core/data"
    rng = random.Random(SEED)
    topics = sorted(TOPICS)
    counts = collections.Counter()
    docs = []
    for i in range(DOCS):
        topic = topics[i % len(topics)]
        other = rng.choice([t for t in topics if t != topic])
        parts = []
        for _ in range(rng.randint(3, 6)):
            words = sentence(rng, topic, other)
            typed = [surface(w, rng) for w in words]
            for w, t in zip(words, typed):
                counts[t if w in VARIANTS else w] += 1
            # spaces between short phrases, none inside them
            phrases, j = [], 0
            while j < len(typed):
                k = j + rng.randint(2, 4)
                phrases.append("".join(typed[j:k]))
                j = k
            s = " ".join(phrases)
            if rng.random() < 0.08:
                s = rng.choice(FOREIGN) + " " + s
            parts.append(s + "។")
        docs.append({"id": f"doc-{i + 1:03}", "text": " ".join(parts)})

    vocab = set(FUNCTION_WORDS)
    for ws in TOPICS.values():
        vocab.update(ws)
    vocab.update(v for v, _ in VARIANTS.values())

    with open(out / "demo_corpus.jsonl", "w", encoding="utf-8") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")
    with open(out / "lexicon.tsv", "w", encoding="utf-8") as f:
        f.write("# Sample lexicon: word<TAB>frequency in the demo corpus\n")
        for w in sorted(vocab):
            f.write(f"{w}\t{max(counts[w], 1)}\n")
    with open(out / "queries.txt", "w", encoding="utf-8") as f:
        f.write("\n".join(QUERIES) + "\n")


if __name__ == "__main__":
    main()
