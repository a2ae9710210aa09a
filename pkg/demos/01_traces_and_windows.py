"""
Traces and time windows
=======================

A request trace is a sequence of (user, item, timestamp) triples in plain
CSV. This script generates one, round-trips it through the parser, and
slices it into tumbling windows.
"""

from sharegraph import (
    generate_synthetic_trace,
    parse_trace,
    render_trace,
    summarize,
    window_slices,
)

# A day of activity: 50 users, 200 items, popularity following a rank-1/r law
trace = generate_synthetic_trace(
    users=50, items=200, requests=5000, popularity="zipf",
    zipf_exponent=1.0, seed=42, span_seconds=86400,
)

s = summarize(trace)
print("users:            ", s.user_count)
print("requests (all):   ", s.request_count_all)
print("requests (distinct items):", s.request_count_distinct)
print("duration (s):     ", s.duration)

# The canonical CSV form round-trips exactly
text = render_trace(trace)
print("\nfirst lines of the canonical CSV:")
print("\n".join(text.splitlines()[:3]))
assert parse_trace(text).trace == trace

# Tumbling 2-hour windows, empty ones included so time series stay aligned
print("\nrequests per 2-hour window:")
for window, window_trace in window_slices(trace, length=7200, origin=0):
    bar = "#" * (len(window_trace) // 25)
    print(f"  [{window.start:6d}, {window.end:6d})  {len(window_trace):5d}  {bar}")
