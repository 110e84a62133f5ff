from __future__ import annotations

import sys

MAN_PAGE = """ADDCOMP(1)                    User Commands                    ADDCOMP(1)

NAME
    addcomp - experiments on the additive composition of word vectors

SYNOPSIS
    addcomp <command> [--config FILE] [--seed N] [--out DIR] [options]
    addcomp pipeline [-i TABLE] [=]<stage>[=<stage>...]
    addcomp man

DESCRIPTION
    addcomp counts co-occurrences, builds natural vectors for words and word
    pairs, measures how far the average of two word vectors lies from the
    vector of the phrase they form, and checks the statistical assumptions
    behind the bound on that distance. Every report starts with the config
    hash and seed of the run, so reruns are byte-identical.

    Corpus
        vocab           Count tokens; optionally report the Zipf rank-frequency fit.
        count           Count contexts of words, word pairs and exclusion targets.
        synth-corpus    Emit a token corpus with planted word pairs.

    Generative models
        simulate-py     Chinese restaurant process of a Pitman-Yor prior.
        simulate-mhpy   Modified hierarchical Pitman-Yor process.
        synth-cooc      Synthetic co-occurrence table with planted phrases.

    Vectors and composition
        vectors         Natural vectors for each lambda, as TSV.
        norms           Norm mean and spread per lambda and target kind.
        bias            Composition bias against its collocation bound.
        nearfar-bias    The same for a Near-far table, with reversed-order pairs.
        neighbors       Phrase targets nearest to each additive composition.

    Statistics
        powerlaw        Power-law tail fits of context probability ratios.
        chisq           Chi-square test of the index-1 tail on five categories.
        independence    Spearman's rho between series expected to be unrelated.

    Reduction and evaluation
        svd             Randomized truncated SVD embeddings and spectrum.
        factorize       Gradient descent on an l2, glove or sgns loss.
        eval-phrase     Phrase similarity against human scores.
        eval-analogy    Word analogy accuracy.

OPTIONS
    --config FILE
        JSON config with sections corpus, context, synthetic, vectors, bias,
        reduce and eval. Command flags override the file.

    --seed N
        Top-level seed. Every random stream is derived from it by name.

    --out DIR
        Report directory (default: reports).

    -v, --verbose
        Log progress at INFO level on stderr.

PIPELINES
    Stages are separated by '='. A stage hands its table, vectors and
    embeddings to the next one. The table comes from -i or from a count or
    synth-cooc stage; stages may not name their own --table. Two stages that
    would write the same report file are rejected before anything runs.

EXIT STATUS
    0 success, 1 failure, 2 usage error, 3 config error, 4 missing input file.
    Failures print one line 'error: {"code": ..., "exit": ..., "message": ...,
    "stage": ...}' on stderr.

EXAMPLES
    addcomp synth-cooc --seed 7 --out runs/a
    addcomp bias --table runs/a/table.tsv --lambda 0,0.5,1 --out runs/a
    addcomp chisq --counts counts.tsv
    addcomp pipeline --out runs/b = synth-corpus = count --nearfar = nearfar-bias
"""


def print_man_page(stream=sys.stdout) -> None:
    stream.write(MAN_PAGE)
