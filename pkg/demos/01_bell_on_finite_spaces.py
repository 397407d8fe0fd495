"""Bell's inequality for covariations on a finite probability space.

Three +/-1 variables living on one space always satisfy

    |<a,b> - <c,b>| <= 1 - <a,c>

where <u,v> is the raw mixed moment. This script builds a small model by
hand, replays the proof step by step, and then throws random models at the
inequality.
"""
from bellnogo.probspace import SignVariable, bell_functional, bell_proof_trace, make_space, random_sign_model

space = make_space([0.1, 0.2, 0.3, 0.4])
a = SignVariable([1, -1, 1, -1])
b = SignVariable([1, 1, -1, -1])
c = SignVariable([-1, -1, 1, 1])

report = bell_functional(space, a, b, c)
print("lhs =", report.lhs, " rhs =", report.rhs, " holds:", report.holds)

print("\nProof replay:")
for step in bell_proof_trace(space, a, b, c):
    print(f"  {step.name:26s} {step.value: .6f}  ok={step.ok}")

# the boundary case: lhs == rhs == 2
space = make_space([0.5, 0.5])
r = bell_functional(space, SignVariable([1, -1]), SignVariable([1, -1]), SignVariable([-1, 1]))
print("\nBoundary model: lhs =", r.lhs, " rhs =", r.rhs, " margin =", r.margin)

tightest = min(bell_functional(*random_sign_model(seed, 1 + seed % 16)).margin for seed in range(2000))
print("\nSmallest margin over 2000 random models:", tightest)
