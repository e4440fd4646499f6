"""Mixed-volume bounds on the number of positive steady states."""

from crnkit import aug_mv, load, ssp_mv

mck = load("mckeithan")
ssp = ssp_mv(mck, ["x3", "x4"])
print("McKeithan after eliminating x3, x4:")
for poly, P in zip(ssp.polynomials, ssp.polytopes):
    print(f"  {poly}\n    Newton polytope {[tuple(map(str, v)) for v in P.vertices]}")
print("  sspMV =", ssp.value)

aug = aug_mv(mck)
print("McKeithan augmented system, ODE rows kept:", [i + 1 for i in aug.ode_rows])
print("  augMV =", aug.value)

for name, elim in (("g1", ["x4", "x5", "x6", "x7", "x8", "x9"]), ("g2", ["x4", "x5", "x6", "x8", "x9"])):
    print(f"{name}: sspMV = {ssp_mv(load(name), elim).value}")
