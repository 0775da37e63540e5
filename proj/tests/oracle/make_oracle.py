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

"""Independent reference values for the C++ tests.

Uses only numpy, scipy and cvxpy. Run once; the output is checked in as
tests/oracle/frozen.h and must not be regenerated from the library itself.
"""

import math

import cvxpy as cp
import numpy as np
from scipy.optimize import minimize

X = np.array([[1.0, 0.5], [-0.3, 1.2], [0.8, -1.0], [-1.1, -0.4],
              [0.2, 0.9], [1.5, 0.3], [-0.7, 0.6], [0.4, -1.3]])
Y = np.array([1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0, -1.0])
N = len(Y)


def logistic_obj(theta, rows, lam):
    m = X[rows] @ theta
    return np.mean(np.logaddexp(0.0, -Y[rows] * m)) + lam * theta @ theta


def logistic_grad_rows(theta, rows):
    m = X[rows] @ theta
    s = 1.0 / (1.0 + np.exp(Y[rows] * m))
    return (-(Y[rows] * s))[:, None] * X[rows]


def logistic_hess(theta, rows):
    m = X[rows] @ theta
    p = 1.0 / (1.0 + np.exp(-m))
    w = p * (1.0 - p)
    return (X[rows] * w[:, None]).T @ X[rows] / len(rows)


def fit_logistic_l2(rows, lam):
    res = minimize(logistic_obj, np.zeros(2), args=(rows, lam), method="BFGS",
                   jac=lambda t, r, l: logistic_grad_rows(t, r).mean(0) + 2 * l * t,
                   options={"gtol": 1e-13, "maxiter": 10000})
    return res.x


def fit_logistic_l1(rows, lam):
    t = cp.Variable(2)
    m = X[rows] @ t
    obj = cp.sum(cp.logistic(-cp.multiply(Y[rows], m))) / len(rows) + lam * cp.norm1(t)
    cp.Problem(cp.Minimize(obj)).solve(solver=cp.CLARABEL, tol_gap_abs=1e-12,
                                       tol_gap_rel=1e-12, tol_feas=1e-12)
    return t.value


def prox_l1(h, v, lam):
    t = cp.Variable(len(v))
    obj = 0.5 * cp.quad_form(v - t, h) + lam * cp.norm1(t)
    cp.Problem(cp.Minimize(obj)).solve(solver=cp.CLARABEL, tol_gap_abs=1e-13,
                                       tol_gap_rel=1e-13, tol_feas=1e-13)
    return t.value


def vec(name, v):
    body = ", ".join(f"{x:.17g}" for x in np.ravel(v))
    return f"inline constexpr double {name}[] = {{{body}}};"


def scalar(name, x):
    return f"inline constexpr double {name} = {x:.17g};"


out = []
all_rows = np.arange(N)
drop = 2
rest = np.delete(all_rows, drop)

# Logistic + L2.
lam2 = 0.1
theta = fit_logistic_l2(all_rows, lam2)
h_f = logistic_hess(theta, all_rows) + 2 * lam2 * np.eye(2)
g_f = logistic_grad_rows(theta, [drop])[0] + 2 * lam2 * theta
ij = theta + np.linalg.solve(h_f, g_f) / N
retrain = fit_logistic_l2(rest, lam2)
h_rest = logistic_hess(theta, rest) + 2 * lam2 * np.eye(2)
ta = theta + np.linalg.solve(h_rest, g_f) / (N - 1)
out += [scalar("kL2Lambda", lam2), vec("kL2Theta", theta), vec("kL2Hessian", h_f),
        vec("kL2IjDrop2", ij), vec("kL2RetrainDrop2", retrain), vec("kL2TaDrop2", ta),
        scalar("kL2Objective", logistic_obj(theta, all_rows, lam2))]

# Logistic + L1, non-smooth removal of row 2.
lam1 = 0.05
theta1 = fit_logistic_l1(all_rows, lam1)
h_l = logistic_hess(theta1, all_rows)
grad_mean = logistic_grad_rows(theta1, all_rows).mean(0)
acc = theta1 + np.linalg.solve(h_l, logistic_grad_rows(theta1, [drop])[0]) / N
offset = -np.linalg.solve(h_l, grad_mean)
ij1 = prox_l1(h_l, acc + offset, lam1 * (N - 1) / N)
ij1_printed = prox_l1(h_l, acc, lam1)
retrain1 = fit_logistic_l1(rest, lam1)
out += [scalar("kL1Lambda", lam1), vec("kL1Theta", theta1),
        vec("kL1IjDrop2", ij1), vec("kL1IjPrintedDrop2", ij1_printed),
        vec("kL1RetrainDrop2", retrain1)]

# Prox under a dense 2x2 metric.
h = np.array([[2.0, 0.6], [0.6, 1.0]])
v = np.array([1.3, -0.4])
out += [vec("kProxH", h), vec("kProxV", v), scalar("kProxLambda", 0.7),
        vec("kProxOut", prox_l1(h, v, 0.7))]

# Calculators.
unit_curv = 2 * 1 * 1 + 1 * 1
c = min(1.0, 0.01 * (1 / unit_curv + 1 / 4))
cap = math.floor(c * 1e6 * math.sqrt(1.0) / (16 * math.log(1 / 0.005)) ** 0.25)
out += [f"inline constexpr long long kCapacityUnitExample = {cap};"]
fac = math.sqrt(2 * math.log(1.25 / 1e-5)) / 0.5
noise = (2 * 3 + 1) * (2 * 1.5 * 2.0 * 0.3 + 0.8 * 2.0) / (0.3 ** 2 * 50 ** 2) * fac
out += [scalar("kNoiseSmoothM3N50", noise)]
gb = (1 + math.sqrt(4) * fac) * (2 * 1.5 * 0.3 + 0.8 * 2.0) * 9 * 4 / (0.3 ** 3 * 2500) \
    + 4 * 3 * 4 / (0.3 * 50)
out += [scalar("kGenBoundM3N50D4", gb)]

# Counterexample: exact leave-one-out CV (correct signs) at n = 10.
n = 10
z = np.array([-1 / n] * (n - 1) + [n])


def loo_cv(points, lam):
    err = 0.0
    for i in range(len(points)):
        mean = np.delete(points, i).mean()
        err += (points[i] - mean / (1 + lam)) ** 2
    return err / (2 * len(points))


out += [scalar("kCvBeforeZeroN10", loo_cv(z, 0.0)),
        scalar("kCvBeforeBigN10", loo_cv(z, 1e12)),
        scalar("kCvAfterBigN10", loo_cv(z[:-1], 1e12))]

LICENSE = """// Copyright 2026 The ijunlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License."""
print(LICENSE)
print()
print("// Generated by tests/oracle/make_oracle.py; do not edit.")
print("#ifndef IJUNLEARN_TESTS_ORACLE_FROZEN_H_")
print("#define IJUNLEARN_TESTS_ORACLE_FROZEN_H_")
print()
print("namespace ijunlearn::oracle {")
print()
print(f"inline constexpr int kRows = {N};")
print(vec("kX", X))
print(vec("kY", Y))
for line in out:
    print(line)
print()
print("}  // namespace ijunlearn::oracle")
print()
print("#endif  // IJUNLEARN_TESTS_ORACLE_FROZEN_H_")
