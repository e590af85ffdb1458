"""Verify the Dyson constant-term identity three ways and time each route.

Usage: python scripts/dyson_demo.py [max_n] [max_a]
"""

import itertools
import sys
import time

from gpseries.identities import DysonInstance, dyson_verify

max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
max_a = int(sys.argv[2]) if len(sys.argv) > 2 else 2

methods = ("direct", "wilson", "egorychev")
print(f"{'a':>16} {'ct':>8}  " + "  ".join(f"{m:>10}" for m in methods))
for n in range(2, max_n + 1):
    for a in itertools.product(range(max_a + 1), repeat=n):
        inst = DysonInstance(a)
        times = []
        lhs = rhs = None
        for m in methods:
            t0 = time.perf_counter()
            lhs, rhs, ok = dyson_verify(inst, m)
            times.append(time.perf_counter() - t0)
            if not ok:
                sys.exit(f"MISMATCH for a={a} via {m}: {lhs} != {rhs}")
        print(f"{str(a):>16} {str(rhs):>8}  "
              + "  ".join(f"{t * 1000:>8.1f}ms" for t in times))
print("all instances agree with (sum a)!/prod a_i!")
