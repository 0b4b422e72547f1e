"""
Benchmarking strategies on a random query workload
==================================================

bench_random draws a seeded stream of random queries (uniform target,
parent-set size uniform over [1, n-1]) and times every strategy on the
same stream.  The timing records keep per-repetition microseconds, so
any summary statistic can be computed afterwards.
"""

import numpy as np

import countstream as cs

db = cs.generate_synthetic(n=11, m=8000, arities=3, seed=5)
print(f"database: n={db.n}, m={db.m}, arities all 3")

result = cs.bench_random(db, num_queries=30, seed=5, repetitions=3)

if result.build_failures:
    for name, reason in result.build_failures.items():
        print(f"build failure: {name}: {reason}")

# ---------------------------------------------------------------------
# Per-strategy summary: mean / median / p95 of the per-query best time.
# ---------------------------------------------------------------------
print(f"\n{'strategy':<8} {'build':>9} {'mean':>9} {'median':>9} {'p95':>9}")
for name, build_s in sorted(result.build_seconds.items()):
    times = np.array([min(t.durations_us) for t in result.timings
                      if t.strategy == name])
    print(f"{name:<8} {build_s * 1e3:>7.1f}ms {times.mean():>7.0f}us "
          f"{np.median(times):>7.0f}us {np.percentile(times, 95):>7.0f}us")

# ---------------------------------------------------------------------
# The same records grouped by parent-set size show how each strategy
# scales with query width.
# ---------------------------------------------------------------------
sizes = sorted({t.pa_size for t in result.timings})
names = sorted(result.build_seconds)
print(f"\nmean time (us) by parent-set size:")
print(f"{'|Pa|':<5}" + "".join(f"{n:>9}" for n in names))
for size in sizes:
    row = f"{size:<5}"
    for name in names:
        times = [min(t.durations_us) for t in result.timings
                 if t.strategy == name and t.pa_size == size]
        row += f"{np.mean(times):>9.0f}" if times else f"{'-':>9}"
    print(row)

# Record counts are strategy-independent -- a useful sanity check that
# everyone answered the same queries.
by_query = {}
for t in result.timings:
    by_query.setdefault(t.query_id, set()).add(t.record_count)
assert all(len(counts) == 1 for counts in by_query.values())
print(f"\nall strategies streamed identical record counts on "
      f"{len(by_query)} queries")
