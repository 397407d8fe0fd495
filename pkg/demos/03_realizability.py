"""Which correlation triples can live on one probability space?

Three +/-1 variables have a joint law iff their pairwise correlations lie in
the polytope cut out by four Bell-type inequalities. The LP route, the exact
enumeration route and the closed form are compared here.
"""
from bellnogo.realizability import (
    RealizabilityProblem,
    brute_force_oracle,
    certificate_values,
    decide,
    pairwise_triple,
    triple_closed_form,
)

for triple in [(1, 1, 1), (-1, -1, -1), (0.5, -0.5, -0.5), (-0.5, 0.5, 0.5), (0, 0, 0)]:
    p = pairwise_triple(*triple)
    lp, exact = decide(p), brute_force_oracle(p)
    print(f"{str(triple):20s} simplex={lp.verdict:10s} exact={exact.verdict:10s} closed form={triple_closed_form(*triple)}")

p = pairwise_triple(-0.5, 0.5, 0.5)
out = decide(p)
print("\nCertificate for", p.pair_constraints)
print("  terms      :", out.terms)
print("  coefficients:", out.certificate)
on_vertices, on_target = certificate_values(p, out.certificate)
print("  on the 8 deterministic assignments:", on_vertices)
print("  on the target:", on_target)

p = pairwise_triple(0.5, -0.5, -0.5)
print("\nA witness for (0.5, -0.5, -0.5):", [round(w, 6) for w in decide(p).witness])

# n = 4: CHSH-shaped correlations at the quantum optimum have no joint law
r = 2 ** -0.5
chsh = RealizabilityProblem(4, ((0, 2, r), (0, 3, r), (1, 2, r), (1, 3, -r)))
print("\nCHSH-shaped problem:", decide(chsh).verdict)
