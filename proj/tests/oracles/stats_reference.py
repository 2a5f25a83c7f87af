#!/usr/bin/env python3
# Copyright 2026 The survx Authors. All Rights Reserved.
#
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

"""Regenerates stats_reference.inc with 50-digit Welch and Mann-Whitney values.

Usage: python3 stats_reference.py > stats_reference.inc
"""

import random
from fractions import Fraction

import mpmath

mpmath.mp.dps = 50


def welch(a, b):
    a = [mpmath.mpf(x) for x in a]
    b = [mpmath.mpf(x) for x in b]
    na, nb = len(a), len(b)
    ma, mb = mpmath.fsum(a) / na, mpmath.fsum(b) / nb
    va = mpmath.fsum((x - ma) ** 2 for x in a) / (na - 1)
    vb = mpmath.fsum((x - mb) ** 2 for x in b) / (nb - 1)
    sa, sb = va / na, vb / nb
    t = (ma - mb) / mpmath.sqrt(sa + sb)
    df = (sa + sb) ** 2 / (sa ** 2 / (na - 1) + sb ** 2 / (nb - 1))
    p = mpmath.betainc(df / 2, mpmath.mpf(1) / 2, 0, df / (df + t * t), regularized=True)
    return t, df, p


def mann_whitney(a, b):
    pooled = [Fraction(x) for x in a] + [Fraction(x) for x in b]
    order = sorted(range(len(pooled)), key=lambda i: pooled[i])
    ranks = [Fraction(0)] * len(pooled)
    i = 0
    ties = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and pooled[order[j + 1]] == pooled[order[i]]:
            j += 1
        rank = Fraction(i + j, 2) + 1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        t = j - i + 1
        ties += t ** 3 - t
        i = j + 1
    na, nb = len(a), len(b)
    n = na + nb
    u = sum(ranks[:na]) - Fraction(na * (na + 1), 2)
    var = Fraction(na * nb, 12) * ((n + 1) - Fraction(ties, n * (n - 1)))
    diff = u - Fraction(na * nb, 2)
    corrected = max(abs(diff) - Fraction(1, 2), Fraction(0))
    z = mpmath.mpf(corrected.numerator) / corrected.denominator / mpmath.sqrt(
        mpmath.mpf(var.numerator) / var.denominator)
    p = mpmath.erfc(z / mpmath.sqrt(2))
    return u, (z if diff >= 0 else -z), p


def likert(rng, n, weights):
    return [float(rng.choices([1, 2, 3, 4, 5], weights=weights)[0]) for _ in range(n)]


def normal(rng, n, mu, sigma):
    return [round(rng.gauss(mu, sigma), 3) for _ in range(n)]


def build_pairs():
    rng = random.Random(20240611)
    pairs = [
        ([1.0, 2.0, 3.0, 4.0, 5.0], [2.0, 3.0, 4.0, 5.0, 6.0]),
        ([1.0, 2.0, 2.0, 3.0], [2.0, 3.0, 3.0, 4.0]),
    ]
    pairs.append((likert(rng, 15, [1, 2, 4, 5, 3]), likert(rng, 15, [3, 5, 4, 2, 1])))
    pairs.append((likert(rng, 75, [1, 2, 4, 5, 3]), likert(rng, 75, [3, 5, 4, 2, 1])))
    pairs.append((likert(rng, 75, [1, 1, 2, 5, 6]), likert(rng, 75, [1, 2, 5, 4, 2])))
    pairs.append((likert(rng, 225, [1, 2, 3, 4, 4]), likert(rng, 225, [1, 2, 3, 4, 3])))
    pairs.append((likert(rng, 225, [0, 1, 2, 6, 6]), likert(rng, 225, [5, 6, 2, 1, 0])))
    pairs.append((likert(rng, 30, [1, 1, 1, 1, 1]), likert(rng, 40, [1, 1, 1, 1, 1])))
    pairs.append((likert(rng, 8, [0, 0, 1, 3, 1]), likert(rng, 12, [1, 3, 1, 0, 0])))
    pairs.append((likert(rng, 50, [2, 3, 3, 2, 1]), likert(rng, 20, [1, 2, 3, 3, 2])))
    pairs.append((normal(rng, 10, 0.0, 1.0), normal(rng, 10, 0.0, 1.0)))
    pairs.append((normal(rng, 10, 0.0, 1.0), normal(rng, 12, 1.5, 1.0)))
    pairs.append((normal(rng, 6, 5.0, 0.1), normal(rng, 40, 4.0, 3.0)))
    pairs.append((normal(rng, 25, 0.3, 0.05), normal(rng, 25, 0.35, 0.05)))
    pairs.append((normal(rng, 100, 10.0, 2.0), normal(rng, 100, 10.5, 2.0)))
    pairs.append((normal(rng, 3, 0.0, 1.0), normal(rng, 3, 4.0, 1.0)))
    pairs.append((normal(rng, 200, -1.0, 0.5), normal(rng, 150, -1.2, 0.9)))
    pairs.append((normal(rng, 20, 0.0, 1.0), normal(rng, 20, 0.0, 10.0)))
    pairs.append(([3.0] * 9 + [4.0], [1.0, 2.0, 2.0, 1.0, 1.0, 2.0, 1.0]))
    pairs.append((normal(rng, 40, 0.0, 1.0), normal(rng, 40, 0.9, 1.0)))
    return pairs


def lit(x):
    return repr(float(x))


def main():
    pairs = build_pairs()
    assert len(pairs) == 20
    print("// Generated by stats_reference.py (mpmath, 50 digits). Do not edit.")
    print("// {a, b, t, df, welch_p, u, z, mw_p}")
    for a, b in pairs:
        t, df, p = welch(a, b)
        u, z, mp = mann_whitney(a, b)
        for value in (p, mp):
            assert abs(value - mpmath.mpf("0.001")) > mpmath.mpf("1e-6"), "p too close to alpha"
        print("{{%s},\n {%s},\n %s, %s, %s, %s, %s, %s}," % (
            ", ".join(lit(x) for x in a), ", ".join(lit(x) for x in b),
            mpmath.nstr(t, 25), mpmath.nstr(df, 25), mpmath.nstr(p, 25),
            lit(u), mpmath.nstr(z, 25), mpmath.nstr(mp, 25)))


if __name__ == "__main__":
    main()
