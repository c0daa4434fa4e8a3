"""Compare the compiled kernels with the pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs under both backends; the table lists the best wall time
of N repeats and the speed-up.  Results are checked for equality first.
"""
import argparse
import random
import time
from itertools import permutations
from pathlib import Path

from crysta import kernels
from crysta.construct import _run_unit, gem_sum, simple_targets, subtasks
from crysta.gem import parse, standard_gem
from crysta.invariants import invariant_report
from crysta.moves import random_dipole_insertion, recognize_s3

CP2 = (Path(__file__).resolve().parent.parent / "tests" / "data" / "order8.gem").read_text()


def workloads():
    rng = random.Random(0)
    big = gem_sum(gem_sum(parse(CP2), parse(CP2)), parse(CP2))
    perms = list(permutations(range(5)))
    pt8, tt8 = simple_targets(4)
    units8, c8 = subtasks(4, pt8, tt8)
    pt14, tt14 = simple_targets(7)
    units14, c14 = subtasks(7, pt14, tt14)
    s3 = standard_gem(4)
    while s3.order < 18:
        s3, _ = random_dipole_insertion(s3, rng)

    def residues():
        return [kernels.residue_labels(big.flat, big.order, cs)
                for cs in [(0, 1), (0, 1, 2), (1, 2, 3, 4), (0, 2, 4)] * 50]

    def canonical():
        return kernels.canonical_code(big.flat, big.order, list(range(big.order)), perms)

    def search8():
        return [_run_unit((4, a, b, c8, pt8, tt8, "vcr")) for a, b in units8]

    def search14():
        a, b = units14[0]
        return _run_unit((7, a, b, c14, pt14, tt14, "vcr"))

    def report():
        return invariant_report(big).to_json()

    def s3_heuristic():
        return recognize_s3(s3, budget=16)

    return [("residue labels x200 (order 20)", residues),
            ("canonical code, 120 perms (order 20)", canonical),
            ("order-8 census search", search8),
            ("one order-14 work unit", search14),
            ("invariant report (order 20, SNF-bound)", report),
            ("3-sphere recognition (order 18)", s3_heuristic)]


def best(fn, repeat):
    out = None
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    rows = []
    for name, fn in workloads():
        res = {}
        for b in backends:
            kernels.use_backend(b)
            res[b] = best(fn, args.repeat)
        if len(res) == 2:
            assert res["compiled"][1] == res["python"][1], f"backends disagree on {name}"
        rows.append((name, res))
    kernels.use_backend(backends[0])
    print(f"{'workload':40s} {'compiled':>10s} {'python':>10s} {'speed-up':>9s}")
    for name, res in rows:
        c = res.get("compiled", (None,))[0]
        p = res["python"][0]
        cs = f"{c * 1000:9.1f}ms" if c is not None else f"{'-':>10s}"
        su = f"{p / c:8.1f}x" if c else f"{'-':>9s}"
        print(f"{name:40s} {cs} {p * 1000:9.1f}ms {su}")


if __name__ == "__main__":
    main()
