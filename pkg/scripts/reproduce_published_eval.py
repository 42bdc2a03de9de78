#!/usr/bin/env python3
"""Score an external issue corpus with the general-purpose and domain
lexicons and render the priority-pair effect-size tables.

This is the external-data evaluation path: it needs the full issue
corpus (JSON lines), the general-purpose arousal lexicon CSV, and a
built domain lexicon file. The combined-mode AllComments Blocker-Trivial
cell is printed for comparison against the reference value 0.5070.
"""

import argparse

from arousalkit.corpus import Field, parse_corpus
from arousalkit.evalstats import evaluate_priorities, pair_label, render_tables
from arousalkit.lexicon import SeaLexicon, load_general_lexicon
from arousalkit.scoring import ScoringLexicon, resolve_sea_avg, score_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("corpus", help="issue corpus, one JSON record per line")
    parser.add_argument("general_lexicon", help="general-purpose lexicon CSV")
    parser.add_argument("sea_lexicon", help="domain lexicon (word,arousal,r1,r2,source)")
    parser.add_argument("--out-dir", default="eval_out")
    parser.add_argument("--t-test", choices=("welch", "pooled"), default="welch")
    args = parser.parse_args()

    general = ScoringLexicon(load_general_lexicon(args.general_lexicon).arousal_map())
    sea = ScoringLexicon(SeaLexicon.load(args.sea_lexicon).arousal_map())
    sea_avg = resolve_sea_avg(sea, "lexicon")
    rows = score_corpus(parse_corpus(args.corpus), general, sea, sea_avg)
    table = evaluate_priorities(rows, t_test=args.t_test)
    written = render_tables(table, args.out_dir)
    for path in written:
        print(f"wrote {path}")
    cell = table.cell(Field.ALL_COMMENTS, "combined", table.pairs[0])
    if cell:
        print(f"combined all_comments {pair_label(cell.pair)}: d={cell.cohen_d:.4f} "
              f"(reference 0.5070)")
    for warning in table.warnings:
        print(f"warning: {warning}")


if __name__ == "__main__":
    main()
