"""
A smooth Page curve from many staircases
========================================

One block produces a staircase. Tensoring many independent blocks whose
horizon instants are jittered a little smooths the sum into a tent.
"""

import numpy as np

from horizonsim import EnsembleConfig, ModelParams, Schedule, ensemble_page_curve

config = EnsembleConfig(
    blocks=20_000,
    schedule=Schedule(10.0, 20.0, 30.0, 40.0),
    jitter=(4.0, 4.0, 4.0, 4.0),
    params=ModelParams.symmetric(),
    seed=7,
    samples=101,
    t_end=50.0,
)

for mode in ("total", "radiation"):
    curve = ensemble_page_curve(EnsembleConfig(**{**config.__dict__, "mode": mode}))
    print(f"\nmode = {mode}  (peak mean {curve.mean.max():.4f} nats per block)")
    for t, m in zip(curve.times[::5], curve.mean[::5]):
        print(f"{t:6.1f} {m:.4f} " + "*" * int(round(30 * m)))

###############################################################################
# Plot if matplotlib happens to be installed.

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    curve = ensemble_page_curve(config)
    plt.plot(curve.times, curve.mean)
    plt.xlabel("time")
    plt.ylabel("mean entropy per block [nats]")
    plt.savefig("page_curve.png", dpi=120)
    print("wrote page_curve.png")
