"""Benchmark the compiled counting kernel against the pure-Python twin.

Run as `python -m quivercells.bench`.  Each case enumerates a full moment
fiber and buckets stable points by canonical form; the two implementations
must return identical dicts before any timing is reported.
"""

from __future__ import annotations

import time

from . import catalog, counting
from .varieties import _canonicalization_plans, _stability_table


def _inputs(quiver, theta, lam, p):
    stab = _stability_table(quiver, theta)
    offsets, steps = _canonicalization_plans(quiver, stab)
    tails = [e.tail for e in quiver.edges]
    heads = [e.head for e in quiver.edges]
    return (
        quiver.n_vertices,
        p,
        tails,
        heads,
        [v % p for v in lam],
        bytes(stab),
        offsets,
        steps,
    )


def _time(fn, args, repeat: int = 3) -> tuple[float, dict]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    a2_q, a2_theta, a2_lam = catalog.a2tilde()
    tl = catalog.triangle_with_loop()
    tl_theta = (-2, 1, 1)
    tl_lam = (0, 0, 0)
    cases = [
        ("a2tilde p=7", a2_q, a2_theta, a2_lam, 7),
        ("triangle_with_loop p=5", tl, tl_theta, tl_lam, 5),
        ("triangle_with_loop p=7", tl, tl_theta, tl_lam, 7),
    ]
    have_fast = counting.backend_name() == "compiled"
    print(f"backend available: {counting.backend_name()}")
    for label, quiver, theta, lam, p in cases:
        args = _inputs(quiver, theta, lam, p)
        py_t, py_res = _time(counting._count_py, args)
        line = f"{label:<26} python {py_t * 1000:9.2f} ms"
        if have_fast:
            fast_t, fast_res = _time(counting._fastcount.count_stable_canonicals,
                                     counting_args(args))
            if fast_res != py_res:
                print(f"{label}: MISMATCH between backends")
                return 1
            line += f"   compiled {fast_t * 1000:9.2f} ms   speedup {py_t / fast_t:7.1f}x"
        print(line)
    if have_fast:
        # the pure twin is too slow to enjoy at p=11; kernel only
        args = _inputs(tl, tl_theta, tl_lam, 11)
        fast_t, fast_res = _time(counting._fastcount.count_stable_canonicals,
                                 counting_args(args), repeat=1)
        total = sum(fast_res.values())
        print(f"{'triangle_with_loop p=11':<26} compiled {fast_t * 1000:9.2f} ms"
              f"   ({total} stable points, {len(fast_res)} orbits)")
    return 0


def counting_args(args):
    from array import array

    n, p, tails, heads, lam, stab, offsets, steps = args
    return (
        n,
        p,
        array("i", tails),
        array("i", heads),
        array("i", lam),
        stab,
        array("i", offsets),
        array("i", steps),
    )


if __name__ == "__main__":
    raise SystemExit(main())
