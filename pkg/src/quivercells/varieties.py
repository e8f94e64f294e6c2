"""Moment-map fibers of doubled quivers and their tree-indexed cells.

Every edge of the quiver is doubled: e keeps its scalar x_e and gains a
reverse scalar xstar_e.  A point is one choice of all 2m scalars over F_p.
The moment residual at a vertex is (sum over incoming e of x_e * xstar_e)
minus (sum over outgoing e), minus lambda there; Z_lambda is its zero locus.

Stability is the usual closed-subset test: a point is stable when every
proper nonempty vertex subset that no nonzero arrow (forward or reverse)
leaves has positive theta-sum.  The gauge torus acts freely on stable points
modulo its diagonal, so stable orbits all have (p-1)^(n-1) points.

The cell map sends each stable orbit to a spanning tree by a smallest-edge
recursion: if dropping the smallest non-loop edge keeps the point stable the
edge is out of the tree; otherwise the minimal destabilizing subset splits
the quiver in two, theta is shifted to vanish on that subset, and the halves
recurse.  The fiber over a tree T has exactly p^(betti + extact(T)) orbits,
which is what the acceptance suite pins against the activity sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .activity import extact_table, tutte_one_q
from .counting import count_stable_canonicals
from .errors import DecomposableError, DichotomyError, GenericityError, VerificationError
from .exactmath import (
    IntPolynomial,
    PrimeFieldElem,
    field_solve_linear,
    first_primes,
    interpolate,
    is_prime,
)
from .graphs import (
    Quiver,
    SpanningTree,
    betti,
    contract,
    delete,
    induced_subquiver,
    is_spanning_tree,
    spanning_trees,
    tree_path,
)


@dataclass(frozen=True)
class DoublePoint:
    """Scalars (x, xstar) on every edge of the doubled quiver, over F_p."""

    quiver: Quiver
    p: int
    x: Mapping[str, int]
    xstar: Mapping[str, int]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        want = {e.name for e in self.quiver.edges}
        if set(self.x) != want or set(self.xstar) != want:
            raise ValueError("x and xstar must cover exactly the edge names")
        object.__setattr__(self, "x", {k: v % self.p for k, v in self.x.items()})
        object.__setattr__(self, "xstar", {k: v % self.p for k, v in self.xstar.items()})

    def key(self) -> tuple[int, ...]:
        """Scalars interleaved in edge sequence order: x_0, xstar_0, x_1, ..."""
        out = []
        for e in self.quiver.edges:
            out.append(self.x[e.name])
            out.append(self.xstar[e.name])
        return tuple(out)

    def support_mask(self) -> int:
        """Bit 2j set when edge j has x != 0, bit 2j+1 when xstar != 0."""
        mask = 0
        for j, e in enumerate(self.quiver.edges):
            if self.x[e.name]:
                mask |= 1 << (2 * j)
            if self.xstar[e.name]:
                mask |= 1 << (2 * j + 1)
        return mask


@dataclass(frozen=True)
class HKParams:
    """Deformation and stability parameters, one integer per vertex each."""

    lam: tuple[int, ...]
    theta: tuple[int, ...]

    def __post_init__(self):
        if len(self.lam) != len(self.theta):
            raise ValueError("lambda and theta must have the same length")


@dataclass(frozen=True)
class OrientedTree:
    """A spanning tree with each edge directed toward its positive theta side.

    `arrows` lists (edge name, forward, weight): forward means the arrow runs
    tail -> head as drawn in the quiver; weight is the theta-sum of the
    component the arrow points into, always positive.
    """

    tree: SpanningTree
    arrows: tuple[tuple[str, bool, int], ...]

    def direction(self, name: str) -> bool:
        for nm, fwd, _ in self.arrows:
            if nm == name:
                return fwd
        raise KeyError(name)

    def weight(self, name: str) -> int:
        for nm, _, w in self.arrows:
            if nm == name:
                return w
        raise KeyError(name)


@dataclass(frozen=True)
class OrientedInversionGraph:
    """Which arrows of the doubled quiver a point actually turns on."""

    forward: frozenset[str]
    backward: frozenset[str]

    def has_arrow(self, name: str, forward: bool) -> bool:
        return name in (self.forward if forward else self.backward)


@dataclass(frozen=True)
class CellTable:
    """Orbit counts per spanning tree for one (p, lambda, theta)."""

    quiver: Quiver
    p: int
    lam: tuple[int, ...]
    theta: tuple[int, ...]
    counts: Mapping[SpanningTree, int]
    dims: Mapping[SpanningTree, int]
    total: int

    def expected(self, tree: SpanningTree) -> int:
        return self.p ** self.dims[tree]

    @property
    def all_match(self) -> bool:
        return all(self.counts[t] == self.expected(t) for t in self.dims)

    def records(self) -> list[str]:
        """One stable line per tree: tree=..., count=, expected=, verdict=."""
        lines = []
        for tree in sorted(self.dims, key=lambda t: t.sorted_names()):
            got = self.counts[tree]
            want = self.expected(tree)
            verdict = "OK" if got == want else "FAIL"
            lines.append(
                "tree=%s count=%d expected=%d verdict=%s"
                % (",".join(tree.sorted_names()) or "-", got, want, verdict)
            )
        return lines


# -- moment map ---------------------------------------------------------------


def moment_residual(pt: DoublePoint, lam: Sequence[int]) -> tuple[PrimeFieldElem, ...]:
    """Per-vertex defect of the moment equations; all zero on Z_lambda.

    Loops cancel themselves (their x * xstar enters with both signs).
    """
    q = pt.quiver
    if len(lam) != q.n_vertices:
        raise ValueError("lambda length must match the vertex count")
    p = pt.p
    acc = [0] * q.n_vertices
    for e in q.edges:
        prod = pt.x[e.name] * pt.xstar[e.name]
        acc[e.head] += prod
        acc[e.tail] -= prod
    return tuple(
        PrimeFieldElem(p, acc[i] - lam[i]) for i in range(q.n_vertices)
    )


def is_in_Zlambda(pt: DoublePoint, lam: Sequence[int]) -> bool:
    return not any(moment_residual(pt, lam))


def enumerate_Zlambda(quiver: Quiver, lam: Sequence[int], p: int) -> Iterator[DoublePoint]:
    """All points of Z_lambda, deterministically ordered.

    For each x (lexicographic), the moment equations are linear in xstar with
    coefficient matrix rows summing to zero; solve once and walk the affine
    solution set.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if len(lam) != quiver.n_vertices:
        raise ValueError("lambda length must match the vertex count")
    from itertools import product

    names = [e.name for e in quiver.edges]
    tails = [e.tail for e in quiver.edges]
    heads = [e.head for e in quiver.edges]
    n, m = quiver.n_vertices, len(names)
    for xs in product(range(p), repeat=m):
        rows = []
        for i in range(n):
            rows.append(
                [xs[j] * ((heads[j] == i) - (tails[j] == i)) % p for j in range(m)]
            )
        sol = field_solve_linear(rows, [v % p for v in lam], p)
        if sol is None:
            continue
        xdict = dict(zip(names, xs))
        for vec in sol.solutions():
            yield DoublePoint(quiver, p, xdict, dict(zip(names, vec)))


# -- genericity and stability -------------------------------------------------


def _subset_sum(values: Sequence[int], mask: int) -> int:
    total = 0
    i = 0
    while mask:
        if mask & 1:
            total += values[i]
        mask >>= 1
        i += 1
    return total


def is_generic(theta: Sequence[int]) -> bool:
    """No proper nonempty vertex subset sums to zero (and the total must)."""
    n = len(theta)
    if sum(theta) != 0:
        return False
    for mask in range(1, (1 << n) - 1):
        if _subset_sum(theta, mask) == 0:
            return False
    return True


def is_generic_pair(lam: Sequence[int], theta: Sequence[int], p: int) -> bool:
    """No proper nonempty subset kills theta over Z and lambda mod p at once."""
    if len(lam) != len(theta):
        raise ValueError("lambda and theta must have the same length")
    n = len(theta)
    for mask in range(1, (1 << n) - 1):
        if _subset_sum(theta, mask) == 0 and _subset_sum(lam, mask) % p == 0:
            return False
    return True


def oriented_inversion_graph(pt: DoublePoint) -> OrientedInversionGraph:
    fwd = frozenset(name for name, v in pt.x.items() if v)
    bwd = frozenset(name for name, v in pt.xstar.items() if v)
    return OrientedInversionGraph(fwd, bwd)


def _closed_subsets_with_bad_theta(
    quiver: Quiver, theta: Sequence[int], fwd: frozenset[str], bwd: frozenset[str]
) -> list[frozenset[int]]:
    """Proper nonempty vertex subsets no nonzero arrow leaves, with theta-sum <= 0."""
    n = quiver.n_vertices
    out = []
    for mask in range(1, (1 << n) - 1):
        if _subset_sum(theta, mask) > 0:
            continue
        closed = True
        for e in quiver.edges:
            if e.is_loop:
                continue
            t_in = bool(mask >> e.tail & 1)
            h_in = bool(mask >> e.head & 1)
            if t_in == h_in:
                continue
            # forward arrow exits iff tail inside; reverse arrow exits iff head inside
            if t_in and e.name in fwd:
                closed = False
                break
            if h_in and e.name in bwd:
                closed = False
                break
        if closed:
            out.append(frozenset(v for v in range(n) if mask >> v & 1))
    return out


def _stable_raw(pt: DoublePoint, theta: Sequence[int]) -> bool:
    """Closed-subset stability test; does not insist on generic theta.

    The split recursion feeds shifted, deliberately non-generic parameters
    through here, so genericity is enforced only at the public entry points.
    """
    graph = oriented_inversion_graph(pt)
    return not _closed_subsets_with_bad_theta(pt.quiver, theta, graph.forward, graph.backward)


def is_stable(pt: DoublePoint, theta: Sequence[int]) -> bool:
    if len(theta) != pt.quiver.n_vertices:
        raise ValueError("theta length must match the vertex count")
    if not is_generic(theta):
        raise GenericityError(f"theta {tuple(theta)} is not generic")
    return _stable_raw(pt, theta)


def destabilizers(pt: DoublePoint, theta: Sequence[int]) -> list[frozenset[int]]:
    """All closed proper nonempty subsets with nonpositive theta-sum."""
    graph = oriented_inversion_graph(pt)
    return _closed_subsets_with_bad_theta(pt.quiver, theta, graph.forward, graph.backward)


def min_destabilizer(pt: DoublePoint, theta: Sequence[int]) -> frozenset[int]:
    """The destabilizer of strictly smallest theta-sum; ties mean bad parameters."""
    ds = destabilizers(pt, theta)
    if not ds:
        raise ValueError("point is stable; no destabilizer exists")
    sums = sorted((sum(theta[v] for v in s), s) for s in ds)
    if len(sums) > 1 and sums[0][0] == sums[1][0]:
        raise GenericityError(
            f"two destabilizers share the minimal theta-sum {sums[0][0]}"
        )
    return sums[0][1]


# -- oriented trees -----------------------------------------------------------


def orient_tree(quiver: Quiver, tree: SpanningTree, theta: Sequence[int]) -> OrientedTree:
    """Direct every tree edge toward the side whose theta-sum is positive."""
    if sum(theta) != 0:
        raise GenericityError("theta must sum to zero")
    arrows = []
    for name in sorted(tree):
        e = quiver.edge(name)
        side = _tree_side(quiver, tree, name, e.head)
        w = sum(theta[v] for v in side)
        if w == 0:
            raise GenericityError(f"theta vanishes on a component of the tree minus {name}")
        if w > 0:
            arrows.append((name, True, w))
        else:
            arrows.append((name, False, -w))
    return OrientedTree(tree, tuple(arrows))


def _tree_side(quiver: Quiver, tree: SpanningTree, cut: str, start: int) -> set[int]:
    """Vertices reachable from `start` in the tree with edge `cut` removed."""
    adj: dict[int, list[tuple[int, str]]] = {v: [] for v in range(quiver.n_vertices)}
    for name in tree:
        if name == cut:
            continue
        e = quiver.edge(name)
        adj[e.tail].append((e.head, name))
        adj[e.head].append((e.tail, name))
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w, _ in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen


def oriented_incidence_sum(quiver: Quiver, oriented: OrientedTree) -> tuple[int, ...]:
    """Sum of weight * (arrowhead minus arrowtail indicators); equals theta."""
    acc = [0] * quiver.n_vertices
    for name, fwd, w in oriented.arrows:
        e = quiver.edge(name)
        hi, lo = (e.head, e.tail) if fwd else (e.tail, e.head)
        acc[hi] += w
        acc[lo] -= w
    return tuple(acc)


def stability_via_trees(pt: DoublePoint, theta: Sequence[int]) -> bool:
    """Alternative stability test: some spanning tree's oriented arrows all exist."""
    graph = oriented_inversion_graph(pt)
    for tree in spanning_trees(pt.quiver):
        oriented = orient_tree(pt.quiver, tree, theta)
        if all(graph.has_arrow(nm, fwd) for nm, fwd, _ in oriented.arrows):
            return True
    return False


# -- point surgery ------------------------------------------------------------


def restrict_point(pt: DoublePoint, sub: Quiver) -> DoublePoint:
    """The same scalars on a quiver with a subset of the edges."""
    names = {e.name for e in sub.edges}
    return DoublePoint(
        sub,
        pt.p,
        {k: v for k, v in pt.x.items() if k in names},
        {k: v for k, v in pt.xstar.items() if k in names},
    )


def gauge_point(pt: DoublePoint, t: Sequence[int]) -> DoublePoint:
    """Rescale: x_e by t_head/t_tail and xstar_e by t_tail/t_head."""
    p = pt.p
    if len(t) != pt.quiver.n_vertices:
        raise ValueError("gauge vector length must match the vertex count")
    if any(v % p == 0 for v in t):
        raise ValueError("gauge entries must be invertible")
    x, xs = {}, {}
    for e in pt.quiver.edges:
        th, tt = t[e.head] % p, t[e.tail] % p
        x[e.name] = th * pt.x[e.name] * pow(tt, p - 2, p) % p
        xs[e.name] = tt * pt.xstar[e.name] * pow(th, p - 2, p) % p
    return DoublePoint(pt.quiver, p, x, xs)


def canonical_gauge(pt: DoublePoint) -> tuple[int, ...]:
    """The gauge vector canonical_point applies; exposed for transport checks.

    Greedy spanning tree over supported edges in sequence order, preferring
    the forward scalar; the gauge pinned by t_0 = 1 sets each chosen scalar
    to 1.  Requires the support to connect the quiver.
    """
    q = pt.quiver
    p = pt.p
    parent = list(range(q.n_vertices))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chosen: list[tuple[object, bool]] = []  # (edge, use forward scalar)
    for e in q.edges:
        if e.is_loop:
            continue
        use_x = pt.x[e.name] != 0
        if not use_x and pt.xstar[e.name] == 0:
            continue
        ra, rb = find(e.tail), find(e.head)
        if ra != rb:
            parent[ra] = rb
            chosen.append((e, use_x))
    if len(chosen) != q.n_vertices - 1:
        raise DecomposableError("support does not connect the quiver")

    adj: dict[int, list[tuple[object, bool]]] = {v: [] for v in range(q.n_vertices)}
    for e, use_x in chosen:
        adj[e.tail].append((e, use_x))
        adj[e.head].append((e, use_x))
    t = [0] * q.n_vertices
    t[0] = 1
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for e, use_x in adj[v]:
            w = e.head if v == e.tail else e.tail
            if t[w]:
                continue
            if use_x:
                val = pt.x[e.name]
                # want t_head * val / t_tail = 1
                t[w] = t[v] * pow(val, p - 2, p) % p if w == e.head else t[v] * val % p
            else:
                val = pt.xstar[e.name]
                # want t_tail * val / t_head = 1
                t[w] = t[v] * pow(val, p - 2, p) % p if w == e.tail else t[v] * val % p
            frontier.append(w)
    return tuple(t)


def canonical_point(pt: DoublePoint) -> DoublePoint:
    """Orbit representative: equal outputs mean equal orbits.

    The leftover global rescaling after pinning t_0 = 1 acts trivially, so
    this is well-defined on gauge orbits.
    """
    return gauge_point(pt, canonical_gauge(pt))


def contract_point(pt: DoublePoint, name: str) -> DoublePoint:
    """Collapse a supported edge: gauge its scalar to 1, drop the pair, merge.

    The forward scalar is preferred when both are nonzero; with neither
    nonzero there is no canonical way to merge and the call is an error.
    """
    q = pt.quiver
    e = q.edge(name)
    if e.is_loop:
        raise ValueError(f"cannot contract loop {name!r}")
    p = pt.p
    t = [1] * q.n_vertices
    if pt.x[name]:
        t[e.head] = pow(pt.x[name], p - 2, p)
    elif pt.xstar[name]:
        t[e.tail] = pow(pt.xstar[name], p - 2, p)
    else:
        raise ValueError(f"edge {name!r} has no nonzero scalar to contract along")
    gauged = gauge_point(pt, t)
    sub = contract(q, name)
    keep = {f.name for f in sub.edges}
    return DoublePoint(
        sub,
        p,
        {k: v for k, v in gauged.x.items() if k in keep},
        {k: v for k, v in gauged.xstar.items() if k in keep},
    )


def lift_point(quiver: Quiver, lam: Sequence[int], name: str, pt_c: DoublePoint) -> DoublePoint:
    """Inverse of contract_point on moment fibers: set x_e = 1, solve xstar_e.

    `pt_c` lives on contract(quiver, name); the lifted point reuses its
    scalars, pins x on the contracted edge to 1, and reads xstar off the
    moment equation at the edge's tail, which that equation determines
    uniquely.  The result lands in Z_lambda whenever pt_c satisfies the
    contracted equations.
    """
    e = quiver.edge(name)
    if e.is_loop:
        raise ValueError(f"cannot lift along loop {name!r}")
    p = pt_c.p
    x = dict(pt_c.x)
    xs = dict(pt_c.xstar)
    x[name] = 1
    xs[name] = 0  # placeholder, fixed below
    acc = 0
    for f in quiver.edges:
        if f.name == name:
            continue
        prod = x[f.name] * xs[f.name]
        if f.head == e.tail:
            acc += prod
        if f.tail == e.tail:
            acc -= prod
    # row at tail(e): acc - xstar_e * 1 = lam, so xstar_e = acc - lam
    xs[name] = (acc - lam[e.tail]) % p
    return DoublePoint(quiver, p, x, xs)


def delete_point(
    pt: DoublePoint, tree: SpanningTree, name: str, theta: Sequence[int]
) -> tuple[DoublePoint, str, int]:
    """Strip a non-tree edge, returning the leftover free coordinate.

    The cycle the edge closes in the tree is walked in the direction the
    theta-oriented tree gives the cycle's smallest member; if that walk
    crosses the edge against its drawn orientation the forward scalar must
    vanish (xstar is the free leftover), otherwise the reverse scalar must
    vanish.  A nonzero scalar where the walk demands zero is a
    DichotomyError.
    """
    q = pt.quiver
    e = q.edge(name)
    if e.is_loop or name in tree:
        raise ValueError("delete_point needs a non-loop edge outside the tree")
    path = tree_path(q, tree, e.tail, e.head)
    cycle = path + [name]
    a = min(cycle, key=q.order_pos)  # a tree edge: the stripped edge is biggest
    a_wants_forward = orient_tree(q, tree, theta).direction(a)

    # walk the cycle from tail(e) via the path, closing with e backward
    traversal = []
    cur = e.tail
    for nm in path:
        f = q.edge(nm)
        if f.tail == cur:
            traversal.append((nm, True))
            cur = f.head
        else:
            traversal.append((nm, False))
            cur = f.tail
    traversal.append((name, False))  # h(e) back to t(e), against the arrow

    a_forward = next(fwd for nm, fwd in traversal if nm == a)
    if a_forward != a_wants_forward:
        traversal = [(nm, not fwd) for nm, fwd in traversal]
    e_forward = next(fwd for nm, fwd in traversal if nm == name)

    if e_forward:
        # walk agrees with the arrow: the reverse scalar must vanish
        if pt.xstar[name]:
            raise DichotomyError(f"xstar[{name}] expected 0, found {pt.xstar[name]}")
        leftover = ("x", pt.x[name])
    else:
        if pt.x[name]:
            raise DichotomyError(f"x[{name}] expected 0, found {pt.x[name]}")
        leftover = ("xstar", pt.xstar[name])
    rest = restrict_point(pt, delete(q, name))
    return rest, leftover[0], leftover[1]


# -- tree assignment ----------------------------------------------------------


def split_point(
    pt: DoublePoint, theta: Sequence[int], name: str
) -> tuple[DoublePoint, DoublePoint, tuple[int, ...]]:
    """Split along the minimal destabilizer exposed by removing one edge.

    Returns the restriction of the point to the destabilizing subset, the
    restriction to its complement, and the shifted theta, which vanishes on
    the subset.  Both restrictions are induced subquivers carrying vertex
    maps.  The shift moves the minimal theta-sum between the removed edge's
    endpoints, which the destabilizer separates.
    """
    q = pt.quiver
    e = q.edge(name)
    rest = restrict_point(pt, delete(q, name))
    ds = destabilizers(rest, theta)
    if not ds:
        raise ValueError(f"removing {name!r} leaves a stable point; nothing to split")
    q1 = min_destabilizer(rest, theta)

    # every destabilizer isolates the same single endpoint of the removed edge
    for s in ds:
        inside = (e.tail in s) + (e.head in s)
        if inside != 1:
            raise VerificationError(f"destabilizer {sorted(s)} does not separate {name!r}")
        if (e.tail in s) != (e.tail in q1):
            raise VerificationError("destabilizers disagree about the separated endpoint")

    beta = sum(theta[v] for v in q1)
    in_v = e.tail if e.tail in q1 else e.head
    out_v = e.head if in_v == e.tail else e.tail
    shifted = list(theta)
    shifted[in_v] -= beta
    shifted[out_v] += beta
    if sum(shifted[v] for v in q1) != 0:
        raise VerificationError("shifted theta fails to vanish on the destabilizer")

    part1 = induced_subquiver(q, q1)
    part2 = induced_subquiver(q, set(range(q.n_vertices)) - q1)
    return restrict_point(pt, part1), restrict_point(pt, part2), tuple(shifted)


def _restrict_theta(theta: Sequence[int], sub: Quiver) -> tuple[int, ...]:
    out = [0] * sub.n_vertices
    for old, new in sub.vertex_map.items():
        out[new] = theta[old]
    return tuple(out)


def _assign(pt: DoublePoint, theta: Sequence[int]) -> frozenset[str]:
    q = pt.quiver
    if q.n_vertices == 1:
        return frozenset()
    name = q.smallest_non_loop()
    rest = restrict_point(pt, delete(q, name))
    if _stable_raw(rest, theta):
        return _assign(rest, theta)
    p1, p2, shifted = split_point(pt, theta, name)
    t1 = _assign(p1, _restrict_theta(shifted, p1.quiver))
    t2 = _assign(p2, _restrict_theta(shifted, p2.quiver))
    return t1 | t2 | {name}


def assign_tree(pt: DoublePoint, theta: Sequence[int]) -> SpanningTree:
    """The spanning tree whose cell contains this stable point's orbit.

    Only the zero pattern of the scalars matters, so the result is constant
    on gauge orbits.  Intermediate shifted parameters are legitimately
    non-generic; genericity of the caller's theta is checked by is_stable
    and cell_decompose, not here.
    """
    if len(theta) != pt.quiver.n_vertices:
        raise ValueError("theta length must match the vertex count")
    if sum(theta) != 0:
        raise GenericityError("theta must sum to zero")
    if not _stable_raw(pt, theta):
        raise ValueError("unstable points do not belong to any cell")
    tree = SpanningTree(_assign(pt, theta))
    if not is_spanning_tree(pt.quiver, tree):
        raise VerificationError(f"assignment produced a non-tree {sorted(tree)}")
    return tree


def _point_from_mask(quiver: Quiver, mask: int) -> DoublePoint:
    """Synthetic 0/1 point with the given support; tree assignment only reads support."""
    x, xs = {}, {}
    for j, e in enumerate(quiver.edges):
        x[e.name] = (mask >> (2 * j)) & 1
        xs[e.name] = (mask >> (2 * j + 1)) & 1
    return DoublePoint(quiver, 2, x, xs)


# -- cell decomposition -------------------------------------------------------


def _theta_subset_sums(theta: Sequence[int]) -> list[int]:
    n = len(theta)
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + theta[low.bit_length() - 1]
    return sums


def _stability_table(quiver: Quiver, theta: Sequence[int]) -> bytearray:
    """stab[mask] == 1 iff a point with that support is stable.

    Each vertex subset with nonpositive theta-sum rules out the subcube of
    masks whose exit arrows all vanish; everything left is stable.
    """
    n = quiver.n_vertices
    m = len(quiver.edges)
    full = (1 << (2 * m)) - 1
    sums = _theta_subset_sums(theta)
    stab = bytearray(b"\x01") * (1 << (2 * m))
    for vmask in range(1, (1 << n) - 1):
        if sums[vmask] > 0:
            continue
        exit_bits = 0
        for j, e in enumerate(quiver.edges):
            if e.is_loop:
                continue
            t_in = vmask >> e.tail & 1
            h_in = vmask >> e.head & 1
            if t_in and not h_in:
                exit_bits |= 1 << (2 * j)
            elif h_in and not t_in:
                exit_bits |= 1 << (2 * j + 1)
        comp = full ^ exit_bits
        sub = comp
        while True:
            stab[sub] = 0
            if sub == 0:
                break
            sub = (sub - 1) & comp
    return stab


def _canonicalization_plans(quiver: Quiver, stab: bytearray) -> tuple[list[int], list[int]]:
    """Per stable mask, the gauge-fixing walk the counting kernels replay.

    Steps are flat (child, parent, edge index, code) quadruples in BFS order
    from vertex 0; codes pick which scalar pins the child (0/1 forward scalar,
    2/3 reverse) and which endpoint is the child.
    """
    n = quiver.n_vertices
    m = len(quiver.edges)
    offsets = [0] * ((1 << (2 * m)) + 1)
    steps: list[int] = []
    for mask in range(1 << (2 * m)):
        offsets[mask] = len(steps)
        if not stab[mask]:
            continue
        parent = list(range(n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        chosen = []
        for j, e in enumerate(quiver.edges):
            if e.is_loop:
                continue
            use_x = bool(mask >> (2 * j) & 1)
            if not use_x and not (mask >> (2 * j + 1) & 1):
                continue
            ra, rb = find(e.tail), find(e.head)
            if ra != rb:
                parent[ra] = rb
                chosen.append((j, e, use_x))
        if len(chosen) != n - 1:
            raise VerificationError(f"stable mask {mask:#x} has disconnected support")
        adj: dict[int, list] = {v: [] for v in range(n)}
        for j, e, use_x in chosen:
            adj[e.tail].append((j, e, use_x))
            adj[e.head].append((j, e, use_x))
        seen = [False] * n
        seen[0] = True
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for j, e, use_x in adj[v]:
                w = e.head if v == e.tail else e.tail
                if seen[w]:
                    continue
                seen[w] = True
                if use_x:
                    code = 0 if w == e.head else 1
                else:
                    code = 2 if w == e.tail else 3
                steps.extend((w, v, j, code))
                frontier.append(w)
    offsets[1 << (2 * m)] = len(steps)
    return offsets, steps


def cell_decompose(
    quiver: Quiver, lam: Sequence[int], theta: Sequence[int], p: int
) -> CellTable:
    """Count stable orbits per spanning tree over F_p and tabulate verdicts.

    Validates the parameters, enumerates the moment fiber through the counting
    backend, checks the free-action orbit size on every canonical form, and
    assigns each orbit to its tree by support mask (memoized; the assignment
    never reads actual scalar values).
    """
    n = quiver.n_vertices
    m = len(quiver.edges)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if len(lam) != n or len(theta) != n:
        raise ValueError("parameter length must match the vertex count")
    if not quiver.is_connected():
        raise ValueError("cell decomposition needs a connected quiver")
    if 2 * m > 16:
        raise ValueError(f"{m} edges is past the support-mask cap of 8")
    if p >= 256:
        raise ValueError("counting backends cap the field at p < 256; use cell_points")
    if sum(theta) != 0:
        raise GenericityError("theta must sum to zero")
    if not is_generic(theta):
        raise GenericityError(f"theta {tuple(theta)} is not generic")
    if not is_generic_pair(lam, theta, p):
        raise GenericityError("(lambda, theta) is not a generic pair at this prime")
    if sum(lam) % p:
        raise ValueError("lambda must sum to zero modulo p (the equations force it)")

    stab = _stability_table(quiver, theta)
    offsets, steps = _canonicalization_plans(quiver, stab)
    tails = [e.tail for e in quiver.edges]
    heads = [e.head for e in quiver.edges]
    raw = count_stable_canonicals(
        n, p, tails, heads, [v % p for v in lam], bytes(stab), offsets, steps
    )

    orbit_size = (p - 1) ** (n - 1)
    dims = {tree: betti(quiver) + ext for tree, ext in extact_table(quiver).items()}
    counts = {tree: 0 for tree in dims}
    assign_memo: dict[int, SpanningTree] = {}
    total = 0
    for canon, hits in raw.items():
        if hits != orbit_size:
            raise VerificationError(
                f"canonical form hit {hits} times, expected the orbit size {orbit_size}"
            )
        mask = 0
        for idx, byte in enumerate(canon):
            if byte:
                mask |= 1 << idx
        tree = assign_memo.get(mask)
        if tree is None:
            tree = assign_tree(_point_from_mask(quiver, mask), theta)
            assign_memo[mask] = tree
        counts[tree] += 1
        total += 1
    return CellTable(quiver, p, tuple(lam), tuple(theta), counts, dims, total)


def cell_points(
    quiver: Quiver, lam: Sequence[int], theta: Sequence[int], p: int
) -> dict[SpanningTree, list[DoublePoint]]:
    """Canonical stable orbit representatives per tree, by direct enumeration.

    Object-level twin of cell_decompose used for cross-checks and the
    bijection tests; no counting backend involved.
    """
    if sum(theta) != 0:
        raise GenericityError("theta must sum to zero")
    seen: set[tuple[int, ...]] = set()
    out: dict[SpanningTree, list[DoublePoint]] = {t: [] for t in spanning_trees(quiver)}
    for pt in enumerate_Zlambda(quiver, lam, p):
        if not _stable_raw(pt, theta):
            continue
        rep = canonical_point(pt)
        key = rep.key()
        if key in seen:
            continue
        seen.add(key)
        out[assign_tree(rep, theta)].append(rep)
    return out


# -- headline polynomial ------------------------------------------------------


def auto_theta(n: int) -> tuple[int, ...]:
    """Smallest generic integer vector summing to zero, by bounded lex search."""
    if n == 1:
        return (0,)
    from itertools import product as iproduct

    for radius in range(1, n * n + 1):
        for head in iproduct(range(-radius, radius + 1), repeat=n - 1):
            last = -sum(head)
            if abs(last) > radius:
                continue
            cand = head + (last,)
            if is_generic(cand):
                return cand
    raise RuntimeError(f"no generic theta found for {n} vertices")


def poincare(
    quiver: Quiver,
    lam: Sequence[int] | None = None,
    theta: Sequence[int] | None = None,
) -> IntPolynomial:
    """Orbit-count polynomial of the stable moment fiber.

    Computed as q^betti times the activity evaluation, then cross-checked by
    interpolating actual orbit totals over the first 2*betti + 1 primes.
    """
    n = quiver.n_vertices
    if lam is None:
        lam = (0,) * n
    if theta is None:
        theta = auto_theta(n)
    if sum(lam) != 0:
        raise ValueError("lambda must sum to zero to work at every prime")
    b1 = betti(quiver)
    poly = IntPolynomial.monomial(b1) * tutte_one_q(quiver)
    points = []
    for p in first_primes(2 * b1 + 1):
        table = cell_decompose(quiver, lam, theta, p)
        points.append((p, table.total))
    fitted = interpolate(points, 2 * b1)
    if fitted != poly:
        raise VerificationError(
            f"orbit totals interpolate to {fitted.pretty()}, expected {poly.pretty()}"
        )
    return poly
