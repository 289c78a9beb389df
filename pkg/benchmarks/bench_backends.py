"""Compare the compiled kernels with the pure-Python fallback.

Kernel timings call both modules directly. Page timings run each backend in
a fresh interpreter, since the backend is chosen once at import.

    python benchmarks/bench_backends.py --lines 200
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from e2emeasure import _pykernels
from e2emeasure.kernels import encode

try:
    from e2emeasure import _ckernels
except ImportError:  # not built
    _ckernels = None

PAGE_SCRIPT = """
import json, random, sys, time
from e2emeasure import MeasureConfig, Page, evaluate_page
from e2emeasure.kernels import BACKEND
sys.path.insert(0, {here!r})
from bench_backends import noisy_texts
h, g = noisy_texts(random.Random(1), {lines})
hyp, gt = Page.from_texts(h), Page.from_texts(g)
out = {{"backend": BACKEND}}
for name, cfg in (("R", MeasureConfig()), ("R,S", MeasureConfig(segmentation=True)),
                  ("greedy", MeasureConfig(reading_order=False))):
    t0 = time.perf_counter()
    evaluate_page(hyp, gt, cfg)
    out[name] = time.perf_counter() - t0
print(json.dumps(out))
"""


def noisy_texts(rng: random.Random, lines: int, noise: float = 0.05):
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    gt, hyp = [], []
    for _ in range(lines):
        text = " ".join("".join(rng.choice(alphabet) for _ in range(rng.randint(2, 9)))
                        for _ in range(rng.randint(3, 8)))
        noisy = "".join(rng.choice(alphabet) if rng.random() < noise else c for c in text)
        gt.append(text)
        hyp.append(noisy.strip(" "))
    return hyp, gt


def kernel_cases(rng: random.Random):
    a = encode(rng.randrange(30) for _ in range(60))
    b = encode(rng.randrange(30) for _ in range(60))
    stream = encode(rng.randrange(30) for _ in range(400))
    ends = list(range(1, 401))
    patterns = [encode(rng.randrange(30) for _ in range(rng.randint(5, 60))) for _ in range(20)]
    return {
        "distance 60x60": lambda m: m.distance(a, b),
        "edit_counts 60x60": lambda m: m.edit_counts(a, b),
        "prefix_distances 60x400": lambda m: m.prefix_distances(a, stream, 0, ends, 1 << 30),
        "best_substring 20 in 400": lambda m: m.best_substring_distances(patterns, stream),
    }


def bench_kernels(repeat: int) -> None:
    cases = kernel_cases(random.Random(0))
    print(f"{'kernel':28} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for name, fn in cases.items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:28} {py:10.3f} {'-':>12} {'-':>8}")
            continue
        c = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=repeat)) * 1e3
        print(f"{name:28} {py:10.3f} {c:12.3f} {py / c:8.1f}")


def bench_pages(lines: int) -> None:
    here = os.path.dirname(os.path.abspath(__file__))
    script = PAGE_SCRIPT.format(here=here, lines=lines)
    rows = []
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("E2EMEASURE_PURE_PYTHON", None)
        if pure:
            env["E2EMEASURE_PURE_PYTHON"] = "1"
        proc = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
        rows.append(json.loads(proc.stdout))
    print(f"\n{lines}-line page, 5% noise (seconds)")
    print(f"{'backend':10} {'R':>8} {'R,S':>8} {'greedy':>8}")
    for r in rows:
        print(f"{r['backend']:10} {r['R']:8.3f} {r['R,S']:8.3f} {r['greedy']:8.3f}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lines", type=int, default=200, help="lines of the synthetic page")
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    bench_kernels(args.repeat)
    bench_pages(args.lines)


if __name__ == "__main__":
    main()
