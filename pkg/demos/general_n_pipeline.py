"""General n: planar correlators to renormalized tangle series
===========================================================

Compute bare planar correlators with the colour count n kept symbolic,
remove non-prime and flype-equivalent diagrams by solving the counterterm
fixed point, and specialise the result to one and minus two colours.
"""

from tangles.planar import PlanarModel, correlator_series, two_and_four_point
from tangles.renorm import bare_correlators, renorm_residuals, solve_fixed_point

ORDER = 4

# Step 1: bare correlators as polynomials in (g1, g2) with coefficients in Q[n].
model = PlanarModel()
fp = two_and_four_point(ORDER, model=model)
print("G      :", fp.G)
print("Gamma1 :", fp.gamma1)

# Step 2: a single colour and one coupling gives the one-matrix two-point function.
G = correlator_series("aa", ORDER, model=model)
print("one colour:", [int(G.along_line(1, 0)[p](1)) for p in range(ORDER + 1)])

# Step 3: solve for the counterterms h1(g), h2(g) order by order.
bare = bare_correlators(ORDER, model=model)
sol = solve_fixed_point(bare)
print("passes needed:", sol.iterations)
print("Gamma1_ren:", [str(c) for c in sol.gamma1.coeffs])
print("Gamma2_ren:", [str(c) for c in sol.gamma2.coeffs])
assert all(r.is_zero() for r in renorm_residuals(sol, bare).values())

# Step 4: specialise the symbolic colour count.
one = sol.specialize(1).combination(1, 2)
minus_two = sol.specialize(-2).combination(1, -1)
print("n = 1  (Gamma1 + 2 Gamma2):", [int(one[p]) for p in range(1, ORDER + 1)])
print("n = -2 (Gamma1 - Gamma2)  :", [int(minus_two[p]) for p in range(1, ORDER + 1)])
