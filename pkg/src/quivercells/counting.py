"""Hot loop: enumerate a moment fiber, keep stable points, bucket by orbit.

The work per prime is p^edges linear solves followed by a gauge fix per
solution, which dwarfs everything else the package does, so a compiled twin
of the pure-Python routine is built at install time and picked here unless
QUIVERCELLS_PURE=1 or the build was skipped.  Both implementations take the
same flat inputs and must return identical dicts; tests and the benchmark
hold them to that.

Inputs: edge tails/heads and lambda as int sequences, `stab` as a bytes table
over all 4^edges support masks, and the canonicalization plans as produced by
the cell decomposition (flat child/parent/edge/code quadruples indexed by an
offsets table).  Output maps each canonical scalar string (2 bytes per edge)
to the number of stable points that gauged to it.  One scalar per byte caps
the field at p < 256 in both implementations; the object-level enumeration in
`varieties` has no such cap.
"""

from __future__ import annotations

import os
from array import array
from itertools import product
from typing import Sequence

from .exactmath import field_solve_linear

if os.environ.get("QUIVERCELLS_PURE") == "1":
    _fastcount = None
else:
    try:
        from . import _fastcount  # type: ignore[attr-defined]
    except ImportError:
        _fastcount = None


def backend_name() -> str:
    return "compiled" if _fastcount is not None else "python"


def _count_py(
    n: int,
    p: int,
    tails: Sequence[int],
    heads: Sequence[int],
    lam: Sequence[int],
    stab: bytes,
    plan_offsets: Sequence[int],
    plan_steps: Sequence[int],
) -> dict[bytes, int]:
    if p >= 256:
        raise ValueError("canonical keys hold one scalar per byte; p must be below 256")
    m = len(tails)
    inv = [0] * p
    for v in range(1, p):
        inv[v] = pow(v, p - 2, p)
    counts: dict[bytes, int] = {}
    rhs = [v % p for v in lam]
    for xs in product(range(p), repeat=m):
        rows = [
            [xs[j] * ((heads[j] == i) - (tails[j] == i)) % p for j in range(m)]
            for i in range(n)
        ]
        sol = field_solve_linear(rows, rhs, p)
        if sol is None:
            continue
        for vec in sol.solutions():
            mask = 0
            for j in range(m):
                if xs[j]:
                    mask |= 1 << (2 * j)
                if vec[j]:
                    mask |= 1 << (2 * j + 1)
            if not stab[mask]:
                continue
            t = [1] * n
            for s in range(plan_offsets[mask], plan_offsets[mask + 1], 4):
                child = plan_steps[s]
                par = plan_steps[s + 1]
                eidx = plan_steps[s + 2]
                code = plan_steps[s + 3]
                if code == 0:
                    t[child] = t[par] * inv[xs[eidx]] % p
                elif code == 1:
                    t[child] = t[par] * xs[eidx] % p
                elif code == 2:
                    t[child] = t[par] * inv[vec[eidx]] % p
                else:
                    t[child] = t[par] * vec[eidx] % p
            buf = bytearray(2 * m)
            for j in range(m):
                buf[2 * j] = t[heads[j]] * xs[j] * inv[t[tails[j]]] % p
                buf[2 * j + 1] = t[tails[j]] * vec[j] * inv[t[heads[j]]] % p
            key = bytes(buf)
            counts[key] = counts.get(key, 0) + 1
    return counts


def count_stable_canonicals(
    n: int,
    p: int,
    tails: Sequence[int],
    heads: Sequence[int],
    lam: Sequence[int],
    stab: bytes,
    plan_offsets: Sequence[int],
    plan_steps: Sequence[int],
) -> dict[bytes, int]:
    """Canonical form -> stable point count over F_p; see the module docstring.

    Routes to the compiled kernel within its fixed-buffer limits (16 vertices,
    8 edges), otherwise to the pure loop.  Both require p < 256.
    """
    m = len(tails)
    if _fastcount is not None and n <= 16 and m <= 8 and p < 256:
        return _fastcount.count_stable_canonicals(
            n,
            p,
            array("i", tails),
            array("i", heads),
            array("i", [v % p for v in lam]),
            bytes(stab),
            array("i", plan_offsets),
            array("i", plan_steps),
        )
    return _count_py(n, p, list(tails), list(heads), list(lam), bytes(stab), list(plan_offsets), list(plan_steps))
