"""
Small-world verdicts
====================

A graph is small-world when its clustering coefficient far exceeds that of a
random graph with the same node and edge counts while its average path
length stays comparable. The verdict coordinates are

    x = cc1 / cc_random        ("how much more clustered than random")
    y = l / l_random           ("how much longer paths than random")

Small worlds sit at x >> 1, y ~ 1. This script measures a trace with
built-in interest groups, then a matched random control.
"""

from sharegraph import (
    build_dsg,
    generate_clustered_trace,
    gnm_random_graph,
    small_world_report,
)


def show(label, report):
    print(f"{label}")
    print(f"  nodes/edges        {report.node_count}/{report.edge_count}"
          f"  (largest component {report.largest_component_nodes}/"
          f"{report.largest_component_edges})")
    print(f"  clustering         cc1={report.cc1:.3f}  cc2={report.cc2:.3f}"
          f"  random={report.cc_random:.4f}")
    print(f"  path length        l={report.avg_path_length:.3f}"
          f"  random={report.l_random:.3f}")
    print(f"  verdict            x={report.ratio_cc:.1f}  y={report.ratio_l:.2f}")


# 16 interest groups of 10 users, each group sharing its own item pool,
# consecutive groups linked by one bridging user
trace = generate_clustered_trace(seed=0)
report = small_world_report(build_dsg(trace, 1))
show("clustered community trace", report)
print()

# A random graph with the same size is the negative control
control = gnm_random_graph(report.largest_component_nodes,
                           report.largest_component_edges, seed=1)
show("matched random control", small_world_report(control))

print("\nthe community trace lands at x >> 10 while the control stays near 1:")
print("interest-driven sharing, not graph size, produces the clustering")
