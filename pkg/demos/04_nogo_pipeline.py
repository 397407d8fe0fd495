"""From singlet correlations to 'no single probability space'.

For each angle triple the pipeline computes the three singlet correlations,
flips their signs through perfect anti-correlation, and asks the LP whether
a joint law of three +/-1 variables has those correlations.
"""
import math

from bellnogo import nogo

for angles in [(0, 2 * math.pi / 3, math.pi / 3), (0, 0, 0), (0, math.pi / 2, math.pi)]:
    v = nogo.theorem4_pipeline(*angles)
    t = v.classical_targets
    print(
        f"angles {tuple(round(a, 4) for a in angles)}: targets "
        f"c12={t['c12']:+.3f} c32={t['c32']:+.3f} c13={t['c13']:+.3f} -> {v.conclusion}"
    )

rows = nogo.angle_scan(24)
violated = [r for r in rows if r.margin > 1e-9]
infeasible = [r for r in rows if r.verdict == "Infeasible"]
print(f"\n24x24 scan: {len(violated)} quantum violations, {len(infeasible)} infeasible classical problems")
print("largest violation margin:", max(r.margin for r in rows))

report = nogo.vn_additivity_counterexample()
print("\nspectrum of sigma_x + sigma_z:", report.operator_sum_spectrum)
print("possible sums of two +/-1 values:", report.eigenvalue_sums, " disjoint:", report.disjoint)
