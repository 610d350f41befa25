"""Run the full experiment suite and summarize what each one saw.

Each experiment pins its own parameters, states finite-scale checks,
and reports consistent/violation/inconclusive.  A consistent verdict
never claims the asymptotic statement itself.
"""

from spacelab import run_all

reports = run_all()

width = max(len(r.experiment) for r in reports)
print(f"{'experiment':<{width}}  verdict     checks")
for report in reports:
    checks = report.observations.get("checks", [])
    passed = sum(1 for _, ok in checks if ok)
    print(f"{report.experiment:<{width}}  {report.verdict:<10}  "
          f"{passed}/{len(checks)}")

print()
for report in reports:
    if report.notes:
        print(f"{report.experiment}:")
        for note in report.notes:
            print(f"  - {note}")
