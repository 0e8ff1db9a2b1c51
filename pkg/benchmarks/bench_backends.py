"""Compare the gmpy2 and pure-Python rational backends.

Each backend runs in its own interpreter because the choice is made at import
time from ``HYPERMOMENT_PURE_PYTHON``.

    python3 benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from fractions import Fraction
import hypermoment
from hypermoment.core import mi_enumerate
from hypermoment.hypergroup import CATALOG, Hypergroup
from hypermoment.moments import MomentSeed, moment_table, verify_binomial

def timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start

def linearize_all():
    for name in CATALOG:
        H = Hypergroup(name)
        for n in range(51):
            for m in range(51):
                H.linearize(n, m)

def tables():
    rng = random.Random(0)
    for name in CATALOG:
        H = Hypergroup(name)
        for r, N in [(1, 3), (2, 2)]:
            for _ in range(10):
                seed = MomentSeed(r, N, {a: Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                                          for a in mi_enumerate(r, N)})
                verify_binomial(H, moment_table(H, seed, 40), 20, 20)

print(json.dumps({"backend": hypermoment.BACKEND,
                  "linearize n,m<=50": timed(linearize_all),
                  "tables + verify 20x20": timed(tables)}))
"""


def run(pure):
    env = {k: v for k, v in os.environ.items() if k != "HYPERMOMENT_PURE_PYTHON"}
    if pure:
        env["HYPERMOMENT_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()
    for pure in (False, True):
        runs = [run(pure) for _ in range(args.repeat)]
        backend = runs[0].pop("backend")
        for r in runs[1:]:
            r.pop("backend")
        for task in runs[0]:
            best = min(r[task] for r in runs)
            print(f"{backend:9s} {task:24s} {best:8.3f} s")


if __name__ == "__main__":
    main()
