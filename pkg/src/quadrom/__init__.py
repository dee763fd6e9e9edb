"""Learning reduced-order quadratic control systems from harmonic frequency data."""

from .acquisition import (HarmonicDataset, NoiseSpec, ProbeConfig, add_noise,
                          log_grid, make_burgers_system, make_toy_system,
                          probe_harmonics, sample_direct, sample_probed)
from .inference import (HarmonicFormFactors, QuadraticFitResult, SolverConfig,
                        fit_h2_one_step, fit_h3_linearized,
                        fit_quadratic_coupled, h2_design_matrix,
                        h3_form_factors, h3_quadratic_form,
                        truncated_svd_solve, unvec_quadratic, vec_quadratic)
from .loewner import (InterpolationData, LoewnerPencil, ReducedLinearModel,
                      build_pencil, partition_samples, project_model,
                      realify_pencil, select_order)
from .pipeline import (LearnOutcome, fit_linear_model, harmonic_errors,
                       learn_quadratic_model, pencil_from_dataset,
                       time_domain_comparison)
from .simulate import TimeSignal, decaying_cosine, integrate, output_error
from .systems import (QuadraticSystem, align_to_reference, apply_quadratic,
                      eval_g1, eval_g2, eval_h1, eval_h2, eval_h3,
                      output_functional, resolvent_apply,
                      symmetrize_quadratic)

__version__ = "0.1.0"

__all__ = [
    "HarmonicDataset", "NoiseSpec", "ProbeConfig", "add_noise", "log_grid",
    "make_burgers_system", "make_toy_system", "probe_harmonics",
    "sample_direct", "sample_probed",
    "HarmonicFormFactors", "QuadraticFitResult", "SolverConfig",
    "fit_h2_one_step", "fit_h3_linearized", "fit_quadratic_coupled",
    "h2_design_matrix", "h3_form_factors", "h3_quadratic_form",
    "truncated_svd_solve", "unvec_quadratic", "vec_quadratic",
    "InterpolationData", "LoewnerPencil", "ReducedLinearModel",
    "build_pencil", "partition_samples", "project_model", "realify_pencil",
    "select_order",
    "LearnOutcome", "fit_linear_model", "harmonic_errors",
    "learn_quadratic_model", "pencil_from_dataset", "time_domain_comparison",
    "TimeSignal", "decaying_cosine", "integrate", "output_error",
    "QuadraticSystem", "align_to_reference", "apply_quadratic", "eval_g1",
    "eval_g2", "eval_h1", "eval_h2", "eval_h3", "output_functional",
    "resolvent_apply", "symmetrize_quadratic",
]
