#!/usr/bin/env python3
"""Export the head of wordfreq's per-language lists as word<TAB>frequency files.

The synthetic testbed generator (langvol-testbed) samples text from these
lists. Only purely alphabetic entries are kept so every listed word is a
single token under the langvol tokenizer.
"""

import argparse
import pathlib
import unicodedata

import wordfreq
from importlib.metadata import version

DEFAULT_LANGUAGES = "en fi fr de it nb pl pt sk sl es ru el hu"


def is_alphabetic(word):
    return all(unicodedata.category(ch).startswith("L") for ch in word)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/wordfreq")
    parser.add_argument("--words", type=int, default=6000)
    parser.add_argument("--languages", default=DEFAULT_LANGUAGES)
    args = parser.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for lang in args.languages.split():
        rows = []
        for word in wordfreq.iter_wordlist(lang, "best"):
            if len(rows) >= args.words:
                break
            if is_alphabetic(word):
                rows.append((word, wordfreq.word_frequency(word, lang)))
        with open(out / f"{lang}.tsv", "w", encoding="utf-8") as fh:
            fh.write(f"# language\t{lang}\n")
            fh.write(f"# source\twordfreq {version('wordfreq')}\n")
            fh.write("# license\tCC-BY-SA 4.0 (wordfreq data)\n")
            for word, freq in rows:
                fh.write(f"{word}\t{freq:.6g}\n")


if __name__ == "__main__":
    main()
