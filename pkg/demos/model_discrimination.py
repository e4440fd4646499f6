"""Distributive versus mixed phosphorylation: which steady-state invariants
tell the two mechanisms apart, and what the injectivity test says."""

from crnkit import eliminate_linear, injectivity, load, verify_invariant
from crnkit.symbolic import Poly

g1, g2 = load("g1"), load("g2")
p1 = eliminate_linear(g1, ["x4", "x5", "x6", "x7", "x8", "x9"])
p2 = eliminate_linear(g2, ["x4", "x5", "x6", "x8", "x9"])

for name, par in (("G1", p1), ("G2", p2)):
    print(f"{name} parametrization in {', '.join(par.free)}:")
    for var, expr in par.as_mapping().items():
        print(f"  {var} = {expr}")

candidates = [
    "k1*k5*x1*x3*x5 - k3*k7*x1*x4^2",
    "k1*x1*x3 - k7*x2*x4",
    "-k4*k7*x2*x4 + k5*(k2+k4)*x2*x5",
]
print("\ninvariant                           G1     G2")
for text in candidates:
    p = Poly.parse(text)
    print(f"{text:35s} {verify_invariant(p1, p)!s:6s} {verify_invariant(p2, p)!s:6s}")

for name, net in (("G1", g1), ("G2", g2)):
    v = injectivity(net)
    print(f"\n{name}: {v.status} ({v.positive_count} positive, {v.negative_count} negative coefficients)")
