"""
Permutation null models
=======================

Is the structure in a data-sharing graph just an artifact of activity and
popularity distributions? Shuffling trace columns answers that: each variant
breaks the user-item association while preserving per-user request counts,
per-item request counts, and every timestamp.

    ST1  shuffle users and items independently (no timing correlation left)
    ST2  shuffle users only (item popularity keeps its timing)
    ST3  shuffle items only (user activity keeps its timing)

If the real graph's clustering ratio beats all shuffled replicates, the
clustering reflects genuine preference structure.
"""

from sharegraph import ShuffleMode, generate_clustered_trace, null_model_comparison

trace = generate_clustered_trace(groups=12, users_per_group=8, seed=5)

modes = [ShuffleMode("ST1", seed=101), ShuffleMode("ST2", seed=102),
         ShuffleMode("ST3", seed=103)]
comparison = null_model_comparison(trace, window=None, threshold=1,
                                   modes=modes, replicates=5)

print("source  replicate  nodes  edges  w_median  ratio_cc  ratio_l")
for row in comparison.rows:
    r = row.report
    print(f"{row.source:6s}  {row.replicate:9d}  {r.node_count:5d}  {r.edge_count:5d}"
          f"  {row.weight_median:8.1f}  {r.ratio_cc:8.2f}  {r.ratio_l:7.2f}")

print("\nper-source verdict ratios (mean over replicates):")
for source, stats in comparison.summary().items():
    print(f"  {source:5s}  ratio_cc = {stats['ratio_cc_mean']:6.2f}"
          f" +- {stats['ratio_cc_std']:.2f}"
          f"   ratio_l = {stats['ratio_l_mean']:5.2f} +- {stats['ratio_l_std']:.2f}")

print("\nshuffling collapses the clustering ratio toward 1: the small-world")
print("signal in the real trace comes from who asked for what, not from")
print("how often users ask or how popular items are")
