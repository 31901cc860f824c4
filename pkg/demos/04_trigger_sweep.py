"""Sweep the auxiliary-variable decay rate and watch the event counts.

The dynamic variable y relaxes the trigger: the faster it decays, the
sooner the rule starts firing on measurement error alone.  This sweep
reruns the default dynamic scenario for several decay rates.  The trend is
reported, not asserted - it is a property of the tuning, not a theorem.
"""

import dataclasses

from etconsensus import load_scenario, sweep

configs = []
gammas = (0.25, 0.5, 1.0)
for gamma in gammas:
    cfg = load_scenario("paper_default", mode_override="dynamic").config
    # theta must stay above the stability floor (1 - kappa) / gamma
    trig = [dataclasses.replace(t, gamma=gamma, theta=max(t.theta, (1 - t.kappa) / gamma))
            for t in cfg.trigger]
    configs.append(dataclasses.replace(cfg, trigger=trig))

reports = sweep(configs)

print(f"{'gamma':>6s} {'events':>8s} {'messages':>9s} {'min int (s)':>12s} "
      f"{'final |d| max':>14s}")
for gamma, rep in zip(gammas, reports):
    min_int = min(a.min_interval_s for a in rep.agents)
    final_d = max(a.final_delta_norm for a in rep.agents)
    print(f"{gamma:6.2f} {rep.total_events:8d} {rep.total_messages:9d} "
          f"{min_int:12.3f} {final_d:14.2e}")

print("\nper-agent counts:")
for gamma, rep in zip(gammas, reports):
    print(f"  gamma {gamma:4.2f}: {[a.events for a in rep.agents]}")
