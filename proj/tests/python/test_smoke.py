# Copyright 2026 The ijunlearn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest

import ijunlearn as iju


def quadratic_data():
    return iju.Dataset(np.ones((2, 1)), np.array([0.0, 2.0]))


def test_blobs_train_and_accuracy():
    data = iju.synth_gaussian_blobs(200, 3, 8.0, 0)
    model = iju.train(data, "logistic", "l2", 1e-3)
    assert model.optimality_residual <= 1e-10
    assert iju.accuracy(data, data.test_ids, model.theta) >= 0.95


def test_scalar_unlearner_example():
    data = quadratic_data()
    model = iju.train(data, "squared", "none", 0.0)
    assert model.theta[0] == pytest.approx(1.0)
    u = iju.Unlearner(data, model, seed=1, noise=0.0)
    removed = u.delete_one(1)
    assert removed.noiseless[0] == pytest.approx(0.5)
    assert removed.published[0] == pytest.approx(0.5)
    with pytest.raises(iju.Error) as err:
        u.delete_one(1)
    assert err.value.args[1] == "AlreadyDeleted"


def test_ta_is_exact_on_the_scalar_quadratic():
    data = quadratic_data()
    model = iju.train(data, "squared", "none", 0.0)
    removed = iju.ta_batch_remove(data, model, [1], noise=0.0)
    assert removed.noiseless[0] == pytest.approx(0.0, abs=1e-12)


def test_noise_scale_unit_substitution():
    unit = iju.SmoothnessConstants(1.0, 1.0, 1.0, 1.0)
    budget = iju.PrivacyBudget(1.0, 1.25 * np.exp(-0.5))
    assert iju.noise_scale("smooth", 0, 1, unit, budget) == pytest.approx(3.0)
    assert iju.noise_scale("smooth", 1, 1, unit, budget) == pytest.approx(9.0)
    assert iju.noise_scale("nonsmooth", 1, 1, unit, budget) == pytest.approx(12.0)


def test_capacity_and_out_of_regime():
    unit = iju.SmoothnessConstants(1.0, 1.0, 1.0, 1.0)
    assert iju.capacity_lower_bound(10**6, 16, 1.0, 0.005, 0.01, unit) == 1922
    with pytest.raises(iju.Error):
        iju.capacity_lower_bound(10**6, 16, 2.0, 0.005, 0.01, unit)


def test_prox_soft_threshold():
    out = iju.prox_solve(np.eye(3), np.array([3.0, -0.5, 0.0]), 1.0, "l1")
    np.testing.assert_allclose(out, [2.0, 0.0, 0.0], atol=1e-12)


def test_counterexample_report():
    report = iju.run_counterexample(10)
    assert report["lambda_before"] == 1e12
    assert report["lambda_after"] == 0.0
    assert report["gap_times_n"] == pytest.approx(1.0, abs=1e-6)
    assert report["reproduced"]


def test_bench_record_count():
    report = iju.run_bench({"synth_n": 200, "synth_d": 3, "stream_length": 4,
                            "seeds": "0,1", "noise": "off"})
    assert len(report["records"]) == 3 * 2 * 4
    rt = [r for r in report["records"] if r["mechanism"] == "RT"]
    assert all(r["dist_to_rt"] == 0.0 for r in rt)
