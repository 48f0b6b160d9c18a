"""Time the numba kernels against the pure-numpy fallback.

The backend is fixed at import time by ``QMONO_BACKEND``, so each backend is
timed in its own interpreter. Usage::

    python benchmarks/bench_backends.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, timeit
import numpy as np
import qmono
from qmono import _kernels
from qmono.correlations import _PHIS, _THETAS, PROB_FLOOR, quantum_discord
from qmono.linalg import JACOBI_MAX_SWEEPS, JACOBI_TOL
from qmono.states import haar_random_pure, random_mixed_three_qubit

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
g = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
herm = np.ascontiguousarray(g + g.conj().T)
rho2 = haar_random_pure(3, 1).reduced([0, 1])
m2 = np.ascontiguousarray(rho2.matrix)
rho_mixed = random_mixed_three_qubit(2)

cases = {
    "jacobi 8x8": lambda: _kernels.jacobi_hermitian(herm, JACOBI_TOL, JACOBI_MAX_SWEEPS),
    "entropy grid 64x64": lambda: _kernels.conditional_entropy_grid(m2, _THETAS, _PHIS, PROB_FLOOR),
    "discord (grid + NM)": lambda: quantum_discord(rho2),
    "reduced 3-qubit state": lambda: qmono.DensityMatrix(rho_mixed.matrix),
}
out = {"backend": qmono.BACKEND}
for name, fn in cases.items():
    fn()  # compile / warm caches
    t = timeit.Timer(fn)
    n, _ = t.autorange()
    out[name] = min(t.repeat(repeat, n)) / n
print(json.dumps(out))
"""


def run_backend(backend: str, repeat: int) -> dict:
    env = dict(os.environ, QMONO_BACKEND=backend)
    res = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(res.stdout)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    fast, slow = run_backend("numba", args.repeat), run_backend("numpy", args.repeat)
    if fast["backend"] != "numba":
        print("numba is not installed; only the numpy backend is available")
    names = [k for k in fast if k != "backend"]
    width = max(map(len, names))
    print(f"{'kernel':<{width}}  {'numba':>12}  {'numpy':>12}  speedup")
    for k in names:
        print(f"{k:<{width}}  {fast[k] * 1e6:>10.1f}us  {slow[k] * 1e6:>10.1f}us  {slow[k] / fast[k]:6.1f}x")


if __name__ == "__main__":
    main()
