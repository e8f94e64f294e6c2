"""Built-in example quivers used by the CLI, benchmark, and test suite."""

from __future__ import annotations

from .graphs import Quiver


def a2tilde(second_ordering: bool = False):
    """Oriented 3-cycle with edges named by size rank; the headline example.

    Default order makes l the biggest edge (s < m < l); the second ordering
    promotes s to biggest (m < l < s).  Returns (quiver, theta, lambda).
    """
    order = ("m", "l", "s") if second_ordering else ("s", "m", "l")
    q = Quiver(3, [("m", 0, 1), ("l", 1, 2), ("s", 0, 2)], order)
    return q, (-2, 1, 1), (0, 0, 0)


def triangle() -> Quiver:
    return Quiver(3, [("e1", 0, 1), ("e2", 1, 2), ("e3", 0, 2)])


def kronecker() -> Quiver:
    return Quiver(2, [("e1", 0, 1), ("e2", 0, 1)])


def two_cycle_pendant() -> Quiver:
    return Quiver(3, [("a", 0, 1), ("b", 1, 0), ("c", 1, 2)])


def theta_graph() -> Quiver:
    return Quiver(2, [("e1", 0, 1), ("e2", 0, 1), ("e3", 0, 1)])


def four_cycle() -> Quiver:
    return Quiver(4, [("f1", 0, 1), ("f2", 1, 2), ("f3", 2, 3), ("f4", 3, 0)])


def triangle_with_loop() -> Quiver:
    return Quiver(3, [("e1", 0, 1), ("e2", 1, 2), ("e3", 0, 2), ("g", 0, 0)])


def jordan(loops: int) -> Quiver:
    """One vertex with the given number of loops."""
    return Quiver(1, [(f"g{i}", 0, 0) for i in range(loops)])


def suite() -> list[tuple[str, Quiver]]:
    """The cross-check battery: small, structurally varied, all within caps."""
    return [
        ("triangle", triangle()),
        ("kronecker", kronecker()),
        ("two_cycle_pendant", two_cycle_pendant()),
        ("theta_graph", theta_graph()),
        ("four_cycle", four_cycle()),
        ("triangle_with_loop", triangle_with_loop()),
    ]
