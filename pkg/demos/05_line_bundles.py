"""Tensoring by a line bundle: polynomial entropy measures positivity.

The invariant always lies between the numerical dimension nu(L) (largest
power of the first Chern class that survives numerically) and dim X; a
nef flag pins it to nu(L).  Without nefness the gap can be strict, which
measured section counts exhibit.
"""

import math

from catentropy import (
    ExactMatrix,
    LineBundleData,
    NefFlag,
    PositiveSequence,
    line_bundle_report,
    numerical_dimension,
    serre_functor_report,
)

M = ExactMatrix.from_rows


def chern_shift(n):
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = 1
    return M(rows)


print("Hyperplane bundle on projective d-space (nef and big):")
for d in (1, 2, 3):
    counts = [math.comb(n + d, d) for n in range(1, 401)]
    lb = LineBundleData(
        dim=d,
        c1_action=chern_shift(d + 1),
        nef_flag=NefFlag.NEF,
        cohomology_sequences={0: PositiveSequence.from_values(counts)},
    )
    rep = line_bundle_report(lb)
    print("  dim %d: nu = %d, exact value = %d, fitted section growth = %.3f"
          % (d, rep.h_pol_lower, rep.h_pol_exact, rep.empirical_s_hat))
print()

print("A square-zero but big divisor (blow up the plane at a point and add")
print("the exceptional curve to the pulled-back hyperplane):")
c1 = M([[0, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 1, -1, 0]])
sections = [(n + 1) * (n + 2) / 2 for n in range(1, 401)]
lb = LineBundleData(
    dim=2,
    c1_action=c1,
    nef_flag=NefFlag.UNKNOWN,
    cohomology_sequences={0: PositiveSequence.from_values(sections)},
)
rep = line_bundle_report(lb)
print("  nu = %d, certified bounds [%d, %d], no positivity flag"
      % (numerical_dimension(lb), rep.h_pol_lower, rep.h_pol_upper))
print("  measured section growth: %.3f  -- strictly above nu!"
      % rep.empirical_s_hat)
print("  (the lattice lower bound is not sharp without nefness)")
print()

print("Serre functors twist by the canonical bundle and shift by dim:")
cy = LineBundleData(dim=3, c1_action=ExactMatrix.zeros(4), nef_flag=NefFlag.NEF)
rep = serre_functor_report(3, cy)
print("  trivial canonical class: slope %d in t, h_pol = %d"
      % (rep.h_t_slope, rep.line_bundle.h_pol_exact))
big = LineBundleData(dim=2, c1_action=chern_shift(3), nef_flag=NefFlag.NEF)
rep = serre_functor_report(2, big)
print("  ample canonical class on a surface: slope %d, h_pol = %d"
      % (rep.h_t_slope, rep.line_bundle.h_pol_exact))
