from __future__ import annotations

import logging
from pathlib import Path
from typing import Sequence

from ..config import LabConfig
from ..corpus.counting import count_contexts
from ..corpus.targets import ContextConfig, extract_targets
from ..corpus.vocab import build_vocabulary, read_vocabulary, render_vocabulary
from ..errors import StatisticsError
from ..genmodel.diagnostics import zipf_diagnostic
from ..pipeline.stage_runner import PipelineStageRunner
from ..pipeline.types import LabArtifact
from ..tools import register_tool
from ..tools.base import LabTool

logger = logging.getLogger(__name__)

TABLE_NAME = "table.tsv"


def _add_corpus_argument(parser) -> None:
    parser.add_argument("--corpus", type=Path, help="Tokenized corpus: one sentence per line (overrides corpus.path).")
    parser.add_argument("--min-count", type=int, help="Drop words seen fewer times (overrides corpus.min_count).")


def _split_tokens(text: str) -> tuple:
    return tuple(token for token in text.split(",") if token)


class VocabTool(LabTool):
    name = "vocab"
    help_text = "Build the vocabulary of a corpus, ranked by count."
    input_args = ("corpus",)
    allow_stage_input = True

    def configure_parser(self, parser) -> None:
        _add_corpus_argument(parser)
        parser.add_argument(
            "--zipf",
            action="store_true",
            help="Also write the rank diagnostic p_i * i * ln(n) and its log-log slope.",
        )

    def overrides(self, args) -> dict:
        return {
            "corpus.path": str(args.corpus) if args.corpus is not None else None,
            "corpus.min_count": args.min_count,
        }

    def output_names(self, args, config: LabConfig) -> Sequence[str]:
        names = ["vocab.tsv"]
        if getattr(args, "zipf", False):
            names.extend(["zipf.tsv", "zipf.json"])
        return names

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        sentences = runner.require_sentences()
        vocab = build_vocabulary(sentences, runner.config.corpus.min_count)
        runner.write_text("vocab.tsv", render_vocabulary(vocab), what="vocabulary", header=True)
        if runner.args.zipf:
            try:
                diagnostic = zipf_diagnostic(vocab)
            except StatisticsError as exc:
                logger.warning("no Zipf diagnostic: %s", exc)
            else:
                runner.write_tsv("zipf.tsv", ("rank", diagnostic.series.label), diagnostic.series.rows(), what="Zipf series")
                runner.write_json(
                    "zipf.json",
                    {"slope": diagnostic.slope, "band": list(diagnostic.band), "zipfian": diagnostic.zipfian},
                    what="Zipf summary",
                )
        return runner.artifact.evolve(sentences=sentences, vocab=vocab)


class CountTool(LabTool):
    name = "count"
    help_text = "Count windowed contexts of words, bigrams and exclusion targets into a table."
    outputs = (TABLE_NAME, TABLE_NAME + ".vocab.tsv")
    input_args = ("corpus",)
    file_args = ("vocab",)
    allow_stage_input = True

    def configure_parser(self, parser) -> None:
        _add_corpus_argument(parser)
        parser.add_argument("--vocab", type=Path, help="Use this vocabulary file instead of building one.")
        parser.add_argument("--target-min-count", type=int, help="Minimum count of a bigram target.")
        parser.add_argument("--word-window", type=int, help="Context words on each side of a word.")
        parser.add_argument("--phrase-window", type=int, help="Context words on each side of a phrase.")
        parser.add_argument(
            "--nearfar",
            action="store_const",
            const=True,
            help="Label contexts as near or far and count Near-far targets.",
        )
        parser.add_argument("--skip-tokens", type=_split_tokens, help="Comma-separated tokens removed before windowing.")
        parser.add_argument("--shards", type=int, help="Number of contiguous corpus shards.")
        parser.add_argument("--workers", type=int, help="Worker processes counting shards in parallel.")

    def overrides(self, args) -> dict:
        return {
            "corpus.path": str(args.corpus) if args.corpus is not None else None,
            "corpus.min_count": args.min_count,
            "corpus.target_min_count": args.target_min_count,
            "corpus.skip_tokens": args.skip_tokens,
            "corpus.shards": args.shards,
            "corpus.workers": args.workers,
            "context.word_window": args.word_window,
            "context.phrase_window": args.phrase_window,
            "context.nearfar": args.nearfar,
        }

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        config = runner.config
        sentences = runner.require_sentences()
        if runner.artifact.vocab is not None:
            vocab = runner.artifact.vocab
        elif runner.args.vocab is not None:
            vocab = read_vocabulary(runner.args.vocab)
        else:
            vocab = build_vocabulary(sentences, config.corpus.min_count)
        skip = frozenset(config.corpus.skip_tokens)
        targets = extract_targets(sentences, vocab, config.corpus.target_min_count, skip_tokens=skip)
        context = ContextConfig(
            word_window=config.context.word_window,
            phrase_window=config.context.phrase_window,
            nearfar=config.context.nearfar,
            skip_tokens=skip,
        )
        table = count_contexts(
            sentences, vocab, targets, context, shards=config.corpus.shards, workers=config.corpus.workers
        )
        runner.write_table(TABLE_NAME, table)
        return runner.artifact.evolve(sentences=sentences, vocab=vocab, table=table, spaces=(), embeddings=None)


vocab_tool = VocabTool()
register_tool(vocab_tool, category="corpus")
count_tool = CountTool()
register_tool(count_tool, category="corpus")
