"""
When does 1-bit-specialized recovery beat the corrected convex method?
======================================================================

Binary iterative hard thresholding consumes only the measurement signs and
enforces exact k-sparsity, which pays off when the signal is very sparse;
the corrected convex method degrades more gracefully as sparsity grows.
This demo evaluates both on 1-bit quantized measurements at two sparsity
ratios on either side of the crossover.
"""

from corrcs.experiments import ExperimentConfig, run_experiment

N, M, TRIALS = 256, 128, 50

print(f"N={N}, M={M} (delta = {M / N}), 1-bit Lloyd-Max measurements, T={TRIALS}")
print("rho    K   method       mean NMSE   99% CI")
for k in (6, 38):
    result = run_experiment(
        ExperimentConfig(
            grid=((N, M, k),),
            trials=TRIALS,
            noise_mode="lloyd-max-quantized",
            methods=("bpdn-scale", "biht"),
            master_seed=7,
            bits=1,
            # 1-bit measurements lose the scale, so compare on unit-norm
            # signals: both methods then estimate direction only.
            normalize_signals=True,
        )
    )
    for method in ("bpdn-scale", "biht"):
        point = result.point(N, M, k, method)
        print(
            f"{k / M:.2f} {k:>4}   {method:<11}  {point.mean_nmse:.4f}     "
            f"+- {point.ci99:.4f}"
        )

print(
    "\nAt rho = 0.05 the sign-consistency method wins; at rho = 0.30 the"
    "\ncorrected convex method is far more robust."
)
