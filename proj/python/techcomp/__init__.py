"""Technological complexity measures for patent-like records.

Thin wrapper around the compiled core: reflection measures, the
combinatorial ease score and the structural network-diversity score,
plus the synthetic network and corpus generators used for testing.
"""

from ._techcomp import (
    Corpus,
    TechcompError,
    compute_scores,
    eigen_complexity,
    generate_corpus,
    generate_network,
    gini,
    inds,
    method_of_reflection,
    motif_count,
    parse_corpus,
    rta,
    spearman,
    structural_score,
    valid_measures,
)

__all__ = [
    "Corpus",
    "TechcompError",
    "compute_scores",
    "eigen_complexity",
    "generate_corpus",
    "generate_network",
    "gini",
    "inds",
    "method_of_reflection",
    "motif_count",
    "parse_corpus",
    "rta",
    "spearman",
    "structural_score",
    "valid_measures",
]
