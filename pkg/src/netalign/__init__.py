"""Graph matching via spectral scoring and projected power iteration.

Core objects: :class:`Graph` / :class:`Permutation` with seeded generators,
the matrix-free pairwise scoring operator, two matching pipelines (spectral
rounding and projected power steps), estimator-style wrappers, and a planted
Erdős–Rényi benchmark harness with CSV/PGM output.
"""

from .align import (AlignConfig, AlignmentResult, build_operator, eigen_align,
                    projected_power_align)
from .estimators import EigenAlign, ProjectedPowerAlignment
from .graphs import (Graph, Permutation, RngSeed, apply_noise, format_edge_list,
                     generate_er, matched_edges, parse_edge_list, permute,
                     random_permutation)
from .harness import (GridSpec, TrialRecord, TrialSpec, read_csv, render_heatmap,
                      run_grid, run_trial, summarize, write_csv)
from .operator import (AlignmentOperator, DegenerateBalanceError, ScoringParams,
                       compute_alpha, dense_alignment_matrix, make_params,
                       quadratic_form)
from .rounding import greedy_round, max_weight_matching
from .spectral import EigenResult, top_eigenvector

__version__ = "0.1.0"

__all__ = [
    "AlignConfig",
    "AlignmentOperator",
    "AlignmentResult",
    "DegenerateBalanceError",
    "EigenAlign",
    "EigenResult",
    "Graph",
    "GridSpec",
    "Permutation",
    "ProjectedPowerAlignment",
    "RngSeed",
    "ScoringParams",
    "TrialRecord",
    "TrialSpec",
    "apply_noise",
    "build_operator",
    "compute_alpha",
    "dense_alignment_matrix",
    "eigen_align",
    "format_edge_list",
    "generate_er",
    "greedy_round",
    "make_params",
    "matched_edges",
    "max_weight_matching",
    "parse_edge_list",
    "permute",
    "projected_power_align",
    "quadratic_form",
    "random_permutation",
    "read_csv",
    "render_heatmap",
    "run_grid",
    "run_trial",
    "summarize",
    "top_eigenvector",
    "write_csv",
]
