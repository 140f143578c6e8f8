"""Corpus structure analysis: t-SNE embedding, clustering, cluster explanation."""

from heuristic_portfolio.analysis.clustering import cluster_embedding, explain_clusters
from heuristic_portfolio.analysis.tsne import affinities, kl_divergence_and_gradient, tsne

__all__ = [
    "affinities",
    "cluster_embedding",
    "explain_clusters",
    "kl_divergence_and_gradient",
    "tsne",
]
