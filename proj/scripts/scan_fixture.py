#!/usr/bin/env python3
"""Count documents and blank-line-delimited paragraphs in a JSONL corpus.

Independent of the C++ loader; used to freeze expected fixture counts.
"""
import json
import re
import sys


def main(path):
    docs = 0
    paragraphs = 0
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            docs += 1
            blocks = re.split(r"\n[ \t\r]*\n", rec["text"])
            paragraphs += sum(1 for b in blocks if b.strip())
    print(f"documents={docs} paragraphs={paragraphs}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/hospitality_corpus.jsonl")
