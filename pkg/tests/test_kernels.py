"""Numeric kernel backends: correctness, parity, and selection.

The compiled backend must be a bit-for-bit twin of the pure one: same
summation order, same IEEE operations. Parity here is exact equality,
not a tolerance.
"""

import math
import os
import random
import subprocess
import sys

import pytest

from uescore import kernels
from uescore.kernels import get_backend

PURE = get_backend("pure")
try:
    NATIVE = get_backend("native")
except ImportError:
    NATIVE = None

needs_native = pytest.mark.skipif(NATIVE is None, reason="compiled extension not built")


class TestPureKernels:
    def test_sum_and_mean(self):
        assert PURE.sum_values([1.0, 2.0, 3.5]) == 6.5
        assert PURE.mean_value([1.0, 2.0, 3.0]) == 2.0
        with pytest.raises(ValueError):
            PURE.sum_values([])
        with pytest.raises(ValueError):
            PURE.mean_value([])

    def test_weighted_sum(self):
        assert PURE.weighted_sum([2.0, 4.0], [0.25, 0.75]) == 3.5
        with pytest.raises(ValueError):
            PURE.weighted_sum([1.0], [0.5, 0.5])
        with pytest.raises(ValueError):
            PURE.weighted_sum([], [])

    def test_softmax_basics(self):
        out = PURE.softmax([3.0, 3.0, 3.0], 1.0)
        assert out == [1.0 / 3.0] * 3
        assert math.isclose(sum(PURE.softmax([0.3, -2.0, 5.0], 0.7)), 1.0, abs_tol=1e-12)
        with pytest.raises(ValueError):
            PURE.softmax([1.0], 0.0)
        with pytest.raises(ValueError):
            PURE.softmax([1.0], -1.0)
        with pytest.raises(ValueError):
            PURE.softmax([], 1.0)

    def test_softmax_is_stable_for_extreme_inputs(self):
        # Max subtraction keeps exp() in range even for huge logits.
        out = PURE.softmax([1e4, 0.0], 1.0)
        assert out[0] == 1.0 and out[1] == 0.0

    def test_logsumexp(self):
        vals = [-1.5, -2.25, -0.75]
        expected = math.log(sum(math.exp(v) for v in vals))
        assert abs(PURE.logsumexp(vals) - expected) < 1e-12
        # singleton passes through exactly: x + log(exp(x - x)) == x
        assert PURE.logsumexp([-3.71]) == -3.71
        with pytest.raises(ValueError):
            PURE.logsumexp([])

    def test_logsumexp_handles_underflow(self):
        assert math.isfinite(PURE.logsumexp([-800.0, -805.0]))

    def test_auroc_hand_example(self):
        # pairs: (.35,.1)+1 (.35,.4)+0 (.8,.1)+1 (.8,.4)+1 -> 3/4
        assert PURE.auroc_midrank([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1]) == 0.75

    def test_auroc_ties_use_midranks(self):
        # one tied pos/neg pair contributes 1/2
        assert PURE.auroc_midrank([1.0, 1.0], [1, 0]) == 0.5
        # pairs: (2,1)+1 (2,0)+1 (1,1)+0.5 (1,0)+1 -> 3.5/4
        assert PURE.auroc_midrank([2.0, 1.0, 1.0, 0.0], [1, 1, 0, 0]) == 0.875

    def test_auroc_requires_both_classes(self):
        with pytest.raises(ValueError):
            PURE.auroc_midrank([1.0, 2.0], [1, 1])
        with pytest.raises(ValueError):
            PURE.auroc_midrank([1.0, 2.0], [0, 0])
        with pytest.raises(ValueError):
            PURE.auroc_midrank([1.0], [1, 0])


@needs_native
class TestBackendParity:
    """Exact equality between compiled and pure results on randomized inputs."""

    def test_elementwise_kernels_bit_identical(self):
        rng = random.Random(1347)
        for _ in range(500):
            n = rng.randint(1, 64)
            vals = [rng.uniform(-30.0, 5.0) for _ in range(n)]
            raw = [rng.random() + 1e-9 for _ in range(n)]
            total = sum(raw)
            weights = [r / total for r in raw]
            tau = rng.choice([0.01, 0.1, 1.0, 17.3])
            assert NATIVE.sum_values(vals) == PURE.sum_values(vals)
            assert NATIVE.mean_value(vals) == PURE.mean_value(vals)
            assert NATIVE.weighted_sum(vals, weights) == PURE.weighted_sum(vals, weights)
            assert NATIVE.logsumexp(vals) == PURE.logsumexp(vals)
            assert NATIVE.softmax(vals, tau) == PURE.softmax(vals, tau)

    def test_auroc_bit_identical_with_ties(self):
        rng = random.Random(90210)
        for _ in range(300):
            n = rng.randint(2, 120)
            # quantized values force tie groups
            vals = [rng.randint(0, 12) / 4.0 for _ in range(n)]
            pos = [rng.randint(0, 1) for _ in range(n)]
            if sum(pos) in (0, n):
                pos[0] = 1 - pos[0]
            assert NATIVE.auroc_midrank(vals, pos) == PURE.auroc_midrank(vals, pos)

    def test_native_raises_matching_errors(self):
        for fn in ("sum_values", "mean_value", "logsumexp"):
            with pytest.raises(ValueError):
                getattr(NATIVE, fn)([])
        with pytest.raises(ValueError):
            NATIVE.softmax([1.0], 0.0)
        with pytest.raises(ValueError):
            NATIVE.weighted_sum([1.0], [0.5, 0.5])
        with pytest.raises(ValueError):
            NATIVE.auroc_midrank([1.0, 2.0], [1, 1])


class TestSelection:
    def test_module_functions_bound_to_active_backend(self):
        active = get_backend(kernels.backend_name())
        assert kernels.sum_values([1.0, 2.0]) == active.sum_values([1.0, 2.0])

    def test_get_backend_rejects_unknown(self):
        with pytest.raises(ValueError):
            get_backend("fortran")

    def _backend_in_subprocess(self, env_value):
        env = dict(os.environ)
        if env_value is None:
            env.pop("UESCORE_KERNELS", None)
        else:
            env["UESCORE_KERNELS"] = env_value
        return subprocess.run(
            [sys.executable, "-c", "import uescore.kernels as k; print(k.backend_name())"],
            capture_output=True,
            text=True,
            env=env,
        )

    def test_env_var_forces_pure(self):
        proc = self._backend_in_subprocess("pure")
        assert proc.returncode == 0 and proc.stdout.strip() == "pure"

    @needs_native
    def test_env_var_forces_native(self):
        proc = self._backend_in_subprocess("native")
        assert proc.returncode == 0 and proc.stdout.strip() == "native"

    def test_env_var_rejects_unknown_value(self):
        proc = self._backend_in_subprocess("gpu")
        assert proc.returncode != 0
        assert "UESCORE_KERNELS" in proc.stderr
