# Copyright 2026 The levelcfp Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent oracles for the expected values frozen into the C++ tests.

Every value here is computed by brute force (grids, finite differences,
direct formula evaluation) without touching the library.
Run: python3 tests/oracles/derived_values.py
"""

import itertools
import math

import numpy as np


def f_under(D, tumor, R, x):
    d = D @ x
    s = sum(max(0.0, R - d[i]) ** 2 for i in tumor) / len(tumor)
    return math.sqrt(s)


def f_norm(D, risk, p, x):
    d = D @ x
    return (sum(d[i] ** p for i in risk) / len(risk)) ** (1.0 / p)


def central_diff(f, x, h=1e-6):
    g = np.zeros_like(x)
    for j in range(len(x)):
        e = np.zeros_like(x)
        e[j] = h
        g[j] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def grid_argmin(f, feasible, lo, hi, steps):
    best = (math.inf, None)
    axes = [np.linspace(l, h, steps) for l, h in zip(lo, hi)]
    for pt in itertools.product(*axes):
        p = np.array(pt)
        if feasible(p):
            v = f(p)
            if v < best[0]:
                best = (v, p)
    return best


def main():
    D = np.array([[1.0]])
    print("f_under(x=1) =", f_under(D, [0], 2.0, np.array([1.0])))
    print("f_under(x=0) =", f_under(D, [0], 2.0, np.array([0.0])))
    print("f_under'(0) fd =",
          central_diff(lambda x: f_under(D, [0], 2.0, x), np.array([0.0]))[0])

    D2 = np.array([[1.0], [0.0]])
    print("f_norm p=2 =", repr(f_norm(D2, [0, 1], 2, np.array([2.0]))))
    print("f_norm p=8 =", repr(f_norm(D2, [0, 1], 8, np.array([2.0]))))

    # Halfspace {x1 + x2 <= 0} nearest to (1,1): grid search on the boundary
    # neighbourhood.
    v, p = grid_argmin(lambda y: np.sum((y - 1.0) ** 2),
                       lambda y: y[0] + y[1] <= 1e-12,
                       [-1, -1], [1, 1], 401)
    print("halfspace projection grid =", p)

    x = np.array([2.0, 0.0])
    c = x @ x - 1
    xi = 2 * x
    print("subgradient projection =", x - c / (xi @ xi) * xi)

    # |x| subgradient at 0: 0 satisfies |y| >= 0 + 0*y for all y.
    ys = np.linspace(-5, 5, 1001)
    print("|x| subgradient 0 valid:", bool(np.all(np.abs(ys) >= 0.0)))

    # Level CFP band for x^2 <= 3.6, x >= 1.
    print("level band =", (1.0, math.sqrt(3.6)))

    # ART3 traces for 0 <= x <= 2.
    def art3(r, l, u):
        w = 0.5 * (u - l)
        if r > u + 2 * w:
            return 0.5 * (l + u)
        if r > u:
            return 2 * u - r
        if r < l - 2 * w:
            return 0.5 * (l + u)
        if r < l:
            return 2 * l - r
        return r
    print("art3(5) =", art3(5.0, 0.0, 2.0), " art3(2.5) =", art3(2.5, 0.0, 2.0))

    # 2-D QP fixtures, brute-force optimum on a 0.0025 grid over [0,2]^2 then
    # refined with a finer local grid.
    def refine(f, feas, centre, radius):
        v, p = grid_argmin(f, feas, centre - radius, centre + radius, 401)
        return v, p

    qa = lambda y: 0.5 * (y[0] ** 2 + y[1] ** 2) - y[0]
    feas = lambda y: y[0] + y[1] <= 2 + 1e-12 and y[0] >= 0 and y[1] >= 0
    v, p = grid_argmin(qa, feas, [0, 0], [2, 2], 401)
    v, p = refine(qa, feas, p, 0.01)
    print("QP fixture A f* ~", v, "at", p)

    qb = lambda y: 0.5 * (y[0] ** 2 + y[1] ** 2) - 2 * y[0] - y[1] + 2.5
    v, p = grid_argmin(qb, feas, [0, 0], [2, 2], 401)
    v, p = refine(qb, feas, p, 0.01)
    print("QP fixture B f* ~", v, "at", p)

    print("bisection steps ceil(log2(4/1e-5)) =", math.ceil(math.log2(4 / 1e-5)))

    scores = list(range(1, 11))
    def nearest_rank(vals, q):
        s = sorted(vals)
        r = max(1, math.ceil(q * len(s) - 1e-9))
        return s[r - 1]
    print("nearest-rank q10, q90 =", nearest_rank(scores, 0.1), nearest_rank(scores, 0.9))
    print("avg {0,0,1} =", repr(1 / 3))

    x0 = math.sqrt(500.0)
    x1 = math.sqrt(10 + 0.9 * x0 * x0)
    print("x1 =", repr(x1), " sqrt(460) =", repr(math.sqrt(460.0)))

    # Speedup: a decreases twice as fast as b.
    ra, rb = 2.0, 1.0
    print("speedup(a,b) =", ra / rb - 1, " speedup(b,a) =", rb / ra - 1)

    # Backtracking oracle for f(x)=x^4 at x=1.
    f = lambda x: x ** 4
    g = 4.0
    a = 1.9
    while f(1 - a * g) > f(1.0):
        a *= 0.5
    print("backtracking alpha =", a, " f(new) =", f(1 - a * g))

    # box1d: 1/2 x^2 - 3x on x in [0, 2].
    xs = np.linspace(0.0, 2.0, 200001)
    print("box1d f* ~", float(np.min(0.5 * xs ** 2 - 3 * xs)))

    # Coupled fixture assembled by hand from its entry list: QUADOBJ lower
    # triangle (x1,x1)=2, (x2,x1)=1, (x2,x2)=3 mirrored; lim is a G row with
    # range 3 so 1 <= x1 + 2 x2 <= 4; tie is x1 - x2 = 0.5; constant is the
    # negated objective RHS.
    Q = np.zeros((2, 2))
    for i, j, v in [(0, 0, 2.0), (1, 0, 1.0), (1, 1, 3.0)]:
        Q[i, j] += v
        if i != j:
            Q[j, i] += v
    print("coupled Q =", Q.tolist(), " c = [1, -1]  constant =", -(-1.5))
    print("coupled rows: [1, 2] in [1, 4]; [1, -1] = 0.5; x1 <= 4; x2 free")


if __name__ == "__main__":
    main()
