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

"""Approximate unlearning for regularized convex ERM."""

import json

from ._ijunlearn import (
    Dataset,
    Error,
    ModelState,
    PrivacyBudget,
    RemovedModel,
    SmoothnessConstants,
    Unlearner,
    accuracy,
    capacity_lower_bound,
    estimate_constants,
    generalization_bound,
    load_csv,
    make_stream,
    noise_scale,
    parse_csv,
    prox_solve,
    synth_gaussian_blobs,
    ta_batch_remove,
    ta_noise_scale,
    train,
    train_leave_out,
)
from ._ijunlearn import run_bench_lines as _run_bench_lines
from ._ijunlearn import run_counterexample_json as _run_counterexample_json

__all__ = [
    "Dataset",
    "Error",
    "ModelState",
    "PrivacyBudget",
    "RemovedModel",
    "SmoothnessConstants",
    "Unlearner",
    "accuracy",
    "capacity_lower_bound",
    "estimate_constants",
    "generalization_bound",
    "load_csv",
    "make_stream",
    "noise_scale",
    "parse_csv",
    "prox_solve",
    "run_bench",
    "run_counterexample",
    "synth_gaussian_blobs",
    "ta_batch_remove",
    "ta_noise_scale",
    "train",
    "train_leave_out",
]


def run_counterexample(n, big_lambda=1e12, cross_check=True):
    """Returns the counterexample report as a dict."""
    return json.loads(_run_counterexample_json(n, big_lambda, cross_check))


def run_bench(settings):
    """Runs a benchmark from config keys; returns {"header": ..., "records": [...]}."""
    lines = _run_bench_lines({str(k): str(v) for k, v in settings.items()})
    return {
        "header": json.loads(lines[0])["header"],
        "records": [json.loads(line) for line in lines[1:]],
    }
