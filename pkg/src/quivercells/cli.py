"""Command-line front end.

Subcommands:

    tutte <file>            activity statistic per spanning tree and T(1, q)
    kac <file>              orbit-count polynomial, verified against the tree sum
    cells <file> --p P      stable orbit counts per tree over F_p, with verdicts
    verify <file>           every cross-check the package knows how to run
    example-a2tilde         the headline 3-cycle under both edge orderings

Exit codes: 0 all checks pass, 1 a verification failed, 2 bad input file,
3 non-generic parameters.  Record output (--records or stdout) is stable
line-oriented key=value text, byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import catalog
from .activity import extact_table, tree_sum, tutte_one_q
from .counting import backend_name
from .errors import GenericityError, VerificationError
from .exactmath import first_primes
from .graphs import QuiverFormatError, betti, load_quiver
from .reps import count_indecomposable_orbits, kac_polynomial
from .varieties import auto_theta, cell_decompose, poincare

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_FORMAT = 2
EXIT_GENERICITY = 3


@dataclass
class RunConfig:
    command: str
    path: str | None = None
    p: int | None = None
    primes: int | None = None
    order: tuple[str, ...] | None = None
    theta: tuple[int, ...] | None = None
    lam: tuple[int, ...] | None = None
    records: str | None = None
    out: list[str] = field(default_factory=list)

    def emit(self, line: str) -> None:
        self.out.append(line)


def _load(config: RunConfig):
    parsed = load_quiver(config.path)
    quiver, theta, lam = parsed
    if config.order is not None:
        quiver = type(quiver)(quiver.n_vertices, quiver.edges, config.order)
    if config.theta is not None:
        theta = config.theta
    if config.lam is not None:
        lam = config.lam
    n = quiver.n_vertices
    if theta is None:
        theta = auto_theta(n)
    if lam is None:
        lam = (0,) * n
    if len(theta) != n or len(lam) != n:
        raise QuiverFormatError("theta/lambda length must match the vertex count")
    return quiver, tuple(theta), tuple(lam)


def _cmd_tutte(config: RunConfig) -> int:
    quiver, _, _ = _load(config)
    for tree, ext in sorted(extact_table(quiver).items(), key=lambda kv: kv[0].sorted_names()):
        config.emit("tree=%s extact=%d" % (",".join(tree.sorted_names()) or "-", ext))
    poly = tree_sum(quiver)
    config.emit("tree_sum=%s" % poly.pretty())
    config.emit("tutte_one_q=%s" % tutte_one_q(quiver).pretty())
    if poly != tutte_one_q(quiver):
        config.emit("verdict=FAIL")
        return EXIT_MISMATCH
    config.emit("verdict=OK")
    return EXIT_OK


def _cmd_kac(config: RunConfig) -> int:
    quiver, _, _ = _load(config)
    k = config.primes if config.primes else betti(quiver) + 1
    primes = first_primes(k)
    for p in primes:
        config.emit("p=%d orbits=%d" % (p, count_indecomposable_orbits(quiver, p)))
    poly = kac_polynomial(quiver, primes)  # raises VerificationError on mismatch
    config.emit("kac=%s" % poly.pretty())
    config.emit("verdict=OK")
    return EXIT_OK


def _cmd_cells(config: RunConfig) -> int:
    quiver, theta, lam = _load(config)
    if config.p is None:
        raise QuiverFormatError("cells needs --p")
    table = cell_decompose(quiver, lam, theta, config.p)
    config.emit("p=%d theta=%s lambda=%s backend=%s" % (
        table.p,
        ",".join(str(v) for v in table.theta),
        ",".join(str(v) for v in table.lam),
        backend_name(),
    ))
    for line in table.records():
        config.emit(line)
    config.emit("total=%d" % table.total)
    return EXIT_OK if table.all_match else EXIT_MISMATCH


def _cmd_verify(config: RunConfig) -> int:
    quiver, theta, lam = _load(config)
    failures = 0

    ts = tree_sum(quiver)
    tq = tutte_one_q(quiver)
    ok = ts == tq
    failures += not ok
    config.emit("check=tree_sum_vs_tutte %s" % ("OK" if ok else "FAIL"))

    try:
        kac = kac_polynomial(quiver)
        ok = kac == ts
    except VerificationError:
        ok = False
    failures += not ok
    config.emit("check=kac_vs_tree_sum %s" % ("OK" if ok else "FAIL"))

    try:
        poly = poincare(quiver, lam, theta)
        config.emit("poincare=%s" % poly.pretty())
        ok = True
    except VerificationError:
        ok = False
    failures += not ok
    config.emit("check=orbit_totals_vs_activity %s" % ("OK" if ok else "FAIL"))

    primes = first_primes(config.primes) if config.primes else [2, 3]
    for p in primes:
        table = cell_decompose(quiver, lam, theta, p)
        ok = table.all_match
        failures += not ok
        config.emit("check=cells_p%d %s" % (p, "OK" if ok else "FAIL"))

    config.emit("verdict=%s" % ("OK" if failures == 0 else "FAIL"))
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def _cmd_example(config: RunConfig) -> int:
    bad = 0
    for second in (False, True):
        quiver, theta, lam = catalog.a2tilde(second_ordering=second)
        config.emit("ordering=%s" % ("s-biggest" if second else "l-biggest"))
        for p in (3, 5, 7):
            table = cell_decompose(quiver, lam, theta, p)
            config.emit("p=%d total=%d" % (p, table.total))
            for line in table.records():
                config.emit(line)
            bad += not table.all_match
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


_COMMANDS = {
    "tutte": _cmd_tutte,
    "kac": _cmd_kac,
    "cells": _cmd_cells,
    "verify": _cmd_verify,
    "example-a2tilde": _cmd_example,
}


def run(config: RunConfig) -> int:
    """Execute one subcommand, collecting output lines on the config."""
    try:
        code = _COMMANDS[config.command](config)
    except QuiverFormatError as exc:
        config.emit("error=%s" % exc)
        return EXIT_FORMAT
    except FileNotFoundError as exc:
        config.emit("error=%s" % exc)
        return EXIT_FORMAT
    except GenericityError as exc:
        config.emit("error=%s" % exc)
        return EXIT_GENERICITY
    except VerificationError as exc:
        config.emit("error=%s" % exc)
        return EXIT_MISMATCH
    except ValueError as exc:
        # bad numeric input (composite p, wrong vector lengths, unknown order names)
        config.emit("error=%s" % exc)
        return EXIT_FORMAT
    return code


def _int_tuple(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="quivercells", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, needs_file=True):
        if needs_file:
            sp.add_argument("path", help="quiver description file")
        sp.add_argument("--order", help="override the edge order (ascending names)")
        sp.add_argument("--theta", help="override theta, e.g. '-2,1,1'")
        sp.add_argument("--lambda", dest="lam", help="override lambda, e.g. '0,0,0'")
        sp.add_argument("--records", help="also write the output lines to this file")

    add_common(sub.add_parser("tutte", help="activity per tree and T(1, q)"))
    sp = sub.add_parser("kac", help="orbit-count polynomial over small primes")
    add_common(sp)
    sp.add_argument("--primes", type=int, help="how many primes to count over")
    sp = sub.add_parser("cells", help="stable orbit counts per tree over F_p")
    add_common(sp)
    sp.add_argument("--p", type=int, required=True, help="field size (prime)")
    sp = sub.add_parser("verify", help="run every cross-check")
    add_common(sp)
    sp.add_argument("--primes", type=int, help="how many primes for the cell checks")
    sp = sub.add_parser("example-a2tilde", help="headline example, both orderings")
    sp.add_argument("--records", help="also write the output lines to this file")

    ns = parser.parse_args(argv)
    config = RunConfig(
        command=ns.command,
        path=getattr(ns, "path", None),
        p=getattr(ns, "p", None),
        primes=getattr(ns, "primes", None),
        order=tuple(ns.order.replace(",", " ").split()) if getattr(ns, "order", None) else None,
        theta=_int_tuple(ns.theta) if getattr(ns, "theta", None) else None,
        lam=_int_tuple(ns.lam) if getattr(ns, "lam", None) else None,
        records=getattr(ns, "records", None),
    )
    code = run(config)
    text = "\n".join(config.out) + "\n" if config.out else ""
    sys.stdout.write(text)
    if config.records:
        with open(config.records, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
