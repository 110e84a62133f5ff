"""Corpus ingestion, target enumeration and context counting."""

from .counting import count_contexts, count_shards
from .partition import partition_counts
from .table import CoocBuilder, CoocTable, merge_tables, read_table, render_table, render_table_vocab, table_from_arrays, vocab_path_for
from .targets import ContextConfig, TargetKey, TargetKind, TargetSet, extract_targets
from .vocab import Vocabulary, build_vocabulary, read_corpus, read_vocabulary, render_vocabulary

__all__ = [
    "ContextConfig",
    "CoocBuilder",
    "CoocTable",
    "TargetKey",
    "TargetKind",
    "TargetSet",
    "Vocabulary",
    "build_vocabulary",
    "count_contexts",
    "count_shards",
    "extract_targets",
    "merge_tables",
    "partition_counts",
    "read_corpus",
    "read_table",
    "read_vocabulary",
    "render_table",
    "render_table_vocab",
    "render_vocabulary",
    "table_from_arrays",
    "vocab_path_for",
]
