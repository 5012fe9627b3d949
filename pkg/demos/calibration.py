"""Type I error of the test family on the shipped case-2 preset.

A small run (200 replications); raise ``replications`` for tighter rates.
Writes per-replication and summary CSVs to ./calibration_out.
"""
from covadapt.harness import load_preset, run_simulation, write_simulation

cfg = load_preset("case2", replications=200, sigma2=0.235, working_model=(1,))
result = run_simulation(cfg)
for s in result.summaries().values():
    med = s.diagnostics.get("ratio_GtG_psi", (float("nan"),))[0]
    print(f"{s.test:5s} type I error = {s.rate:.3f}  median G'G/psi = {med:.3f}")
print("wrote", *write_simulation(result, "calibration_out"))
