"""Fair principal component analysis.

Thin wrapper over the compiled core. Datasets hold points as matrix columns
(d x n); fitted models expose a ``transform`` method mapping new points into
the learned embedding.
"""

from ._fairpca import (
    Dataset,
    FairPcaError,
    KernelModel,
    ProjectionModel,
    TradeoffModel,
    __version__,
    default_lambda_grid,
    evaluate,
    explained_variance,
    fit_fair_kernel_pca,
    fit_fair_pca,
    fit_fair_pca_s,
    fit_standard_pca,
    gen_mixture,
    load_csv,
    load_model,
    mmd2,
    nullspace_basis,
    quadratic_expansion,
    save_model,
    split,
    sym_eig_topk,
    write_csv,
)

__all__ = [
    "Dataset",
    "FairPcaError",
    "KernelModel",
    "ProjectionModel",
    "TradeoffModel",
    "__version__",
    "default_lambda_grid",
    "evaluate",
    "explained_variance",
    "fit_fair_kernel_pca",
    "fit_fair_pca",
    "fit_fair_pca_s",
    "fit_standard_pca",
    "gen_mixture",
    "load_csv",
    "load_model",
    "mmd2",
    "nullspace_basis",
    "quadratic_expansion",
    "save_model",
    "split",
    "sym_eig_topk",
    "write_csv",
]
