"""Antipodal drawings on the sphere and exact crossing counting.

The central objects are an antipodal point configuration (k base points plus
their antipodes), a choice of matching half-circles, and drawings of the
complete graph and its matching-removed subgraphs whose crossing totals are
verified against closed-form integer counts.

Counting is brute force over edge pairs with a vectorized predicate core and
an optional process pool; a second, structurally different counter based on
great-circle pairs serves as an independent oracle for matching-free
drawings.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import numpy as np

from .formulas import hill_number, partial_matching_target, per_vertex_target
from .geom import (DEFAULT_TOL, Curve, DegenerateConfigurationError,
                   GeodesicArc, HalfCircle, ToleranceConfig, curve_frame,
                   half_circles_cross, is_general_position, require_unit,
                   unit)


class DrawingKind(str, Enum):
    """Graph kind of a drawing; verification dispatches on it."""

    COCKTAIL_PARTY = "cocktail_party"          # complete minus perfect matching
    PARTIAL_MATCHING = "partial_matching"      # complete minus partial matching
    COMPLETE = "complete"
    COMPLETE_MINUS_VERTEX = "complete_minus_vertex"
    COMPLETE_PLUS_APEX = "complete_plus_apex"


@dataclass(frozen=True)
class AntipodalConfig:
    """k base points in general position plus their exact antipodes.

    ``doubled`` holds the base points at indices 0..k-1 followed by their
    antipodes at indices k..2k-1; vertex i is paired with i +- k.
    """

    base: np.ndarray
    doubled: np.ndarray

    @property
    def k(self) -> int:
        return len(self.base)

    @property
    def n(self) -> int:
        return 2 * len(self.base)

    def partner(self, i: int) -> int:
        k = self.k
        return i + k if i < k else i - k

    def pairing(self) -> dict[int, int]:
        k = self.k
        out = {}
        for i in range(k):
            out[i] = i + k
            out[i + k] = i
        return out


def double(points, tol: ToleranceConfig = DEFAULT_TOL) -> AntipodalConfig:
    """Double a general-position base set with exact antipodes.

    Every triple of doubled points that contains no antipodal pair is then
    automatically non-coplanar, since negating one argument only flips the
    determinant's sign.
    """
    base = np.asarray(points, dtype=float)
    if base.ndim != 2 or base.shape[1] != 3:
        raise ValueError("expected an (k, 3) array of base points")
    if len(base) < 3:
        raise ValueError("an antipodal configuration needs k >= 3 base points")
    for p in base:
        require_unit(p, tol)
    if not is_general_position(base, tol):
        raise DegenerateConfigurationError(
            "base points are not in general position")
    doubled = np.concatenate([base, -base], axis=0)
    return AntipodalConfig(base=base, doubled=doubled)


@dataclass(frozen=True)
class HalfCircleAssignment:
    """One midpoint witness per antipodal pair, fixing the matching edges."""

    midpoints: np.ndarray

    def half_circle(self, config: AntipodalConfig, i: int,
                    tol: ToleranceConfig = DEFAULT_TOL) -> HalfCircle:
        return HalfCircle(config.base[i], self.midpoints[i], tol)


def make_assignment(config: AntipodalConfig, midpoints,
                    tol: ToleranceConfig = DEFAULT_TOL) -> HalfCircleAssignment:
    """Validate and orthonormalize midpoints against their base points."""
    mids = np.asarray(midpoints, dtype=float)
    if mids.shape != config.base.shape:
        raise ValueError("need exactly one midpoint per base point")
    fixed = np.empty_like(mids)
    for i in range(config.k):
        fixed[i] = HalfCircle(config.base[i], mids[i], tol).m
    # midpoints must not coincide with any configuration vertex
    align = np.abs(fixed @ config.doubled.T)
    if np.any(align >= 1.0 - tol.general_position):
        i, j = np.unravel_index(int(np.argmax(align)), align.shape)
        raise DegenerateConfigurationError(
            f"midpoint {i} coincides with vertex {j} within tolerance")
    return HalfCircleAssignment(midpoints=fixed)


def random_assignment(config: AntipodalConfig, rng,
                      tol: ToleranceConfig = DEFAULT_TOL,
                      max_tries: int = 64) -> HalfCircleAssignment:
    """Assignment with uniformly random midpoint witnesses (any strength)."""
    for _ in range(max_tries):
        raw = rng.normal(size=(config.k, 3))
        try:
            return make_assignment(config, raw, tol)
        except DegenerateConfigurationError:
            continue
    raise DegenerateConfigurationError(
        "could not sample a valid midpoint assignment")


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    curve: Curve


@dataclass
class Drawing:
    """A spherical drawing: vertices, one curve per edge, and metadata.

    ``pairing`` maps each vertex to its antipodal partner where one exists;
    it is structural metadata (never inferred geometrically) and drives both
    the graph-kind bookkeeping and the counting skip rules.
    """

    vertices: np.ndarray
    kind: DrawingKind
    edges: tuple[Edge, ...]
    pairing: dict[int, int] = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    tol: ToleranceConfig = DEFAULT_TOL

    @property
    def n(self) -> int:
        return len(self.vertices)

    def half_circle_edges(self) -> list[int]:
        return [i for i, e in enumerate(self.edges)
                if isinstance(e.curve, HalfCircle)]

    def matching_size(self) -> int:
        """Number of matching edges missing from the complete graph."""
        return self.n * (self.n - 1) // 2 - len(self.edges)


def validate_drawing(d: Drawing) -> None:
    """Check structural and geometric invariants; raise on violation.

    Geometric failures (a vertex inside an edge's curve) raise
    DegenerateConfigurationError; structural mismatches raise ValueError.
    """
    tol = d.tol
    n = d.n
    for v in d.vertices:
        require_unit(v, tol)
    for a, b in d.pairing.items():
        if d.pairing.get(b) != a:
            raise ValueError("pairing map is not symmetric")
        if not np.array_equal(d.vertices[b], -d.vertices[a]):
            raise ValueError(f"paired vertices {a},{b} are not exact antipodes")

    seen = set()
    matching_edges = 0
    for e in d.edges:
        if not (0 <= e.u < n and 0 <= e.v < n) or e.u == e.v:
            raise ValueError(f"edge ({e.u},{e.v}) has invalid endpoints")
        key = frozenset((e.u, e.v))
        if key in seen:
            raise ValueError(f"duplicate edge ({e.u},{e.v})")
        seen.add(key)
        if isinstance(e.curve, HalfCircle):
            if d.pairing.get(e.u) != e.v:
                raise ValueError(
                    f"half-circle edge ({e.u},{e.v}) does not join a paired "
                    "antipodal couple")
            matching_edges += 1
            if not np.array_equal(e.curve.p, d.vertices[e.u]):
                raise ValueError(f"half-circle edge ({e.u},{e.v}) endpoint "
                                 "disagrees with the vertex array")
        else:
            if d.pairing.get(e.u) == e.v:
                raise ValueError(
                    f"matching edge ({e.u},{e.v}) must be a half-circle")
            if not (np.array_equal(e.curve.a, d.vertices[e.u])
                    and np.array_equal(e.curve.b, d.vertices[e.v])):
                raise ValueError(f"arc edge ({e.u},{e.v}) endpoints disagree "
                                 "with the vertex array")

    _check_edge_census(d, matching_edges)
    _check_vertices_off_curves(d)


def _check_edge_census(d: Drawing, matching_edges: int) -> None:
    n = d.n
    complete = n * (n - 1) // 2
    npairs = len(d.pairing) // 2
    got = len(d.edges)
    if d.kind is DrawingKind.COCKTAIL_PARTY:
        want = complete - npairs
        if n % 2 != 0 or npairs != n // 2 or got != want or matching_edges:
            raise ValueError(
                f"cocktail-party drawing on {n} vertices must have "
                f"{complete - n // 2} arc edges and a full pairing")
    elif d.kind is DrawingKind.PARTIAL_MATCHING:
        if n % 2 != 0 or npairs != n // 2:
            raise ValueError("partial-matching drawing needs a full pairing")
        t = complete - got
        if not 0 <= t <= n // 2:
            raise ValueError(f"edge count {got} matches no valid matching size")
    else:
        if got != complete:
            raise ValueError(
                f"{d.kind.value} drawing must contain all {complete} edges, "
                f"got {got}")


def _check_vertices_off_curves(d: Drawing) -> None:
    """No vertex may lie in the interior of any edge's curve."""
    tol = d.tol
    verts = d.vertices
    for idx, e in enumerate(d.edges):
        nrm, wu, wv = curve_frame(e.curve)
        on_plane = np.abs(verts @ nrm) <= tol.general_position
        inside = (verts @ wu > 0.0) & (verts @ wv > 0.0)
        bad = on_plane & inside
        bad[e.u] = bad[e.v] = False
        if np.any(bad):
            w = int(np.nonzero(bad)[0][0])
            raise DegenerateConfigurationError(
                f"vertex {w} lies on edge ({e.u},{e.v}) within tolerance")


def _arc_edges(config: AntipodalConfig,
               tol: ToleranceConfig) -> list[Edge]:
    verts = config.doubled
    k = config.k
    out = []
    for i in range(2 * k):
        for j in range(i + 1, 2 * k):
            if j == i + k:
                continue
            out.append(Edge(i, j, GeodesicArc(verts[i], verts[j], tol)))
    return out


def complete_drawing_from_points(points, tol: ToleranceConfig = DEFAULT_TOL,
                                 provenance: dict | None = None) -> Drawing:
    """Geodesic drawing of the complete graph on arbitrary sphere points.

    No antipodal structure is assumed or recorded; all edges are shorter
    arcs.  Used for random drawings.
    """
    verts = np.asarray(points, dtype=float)
    if verts.ndim != 2 or verts.shape[1] != 3 or len(verts) < 4:
        raise ValueError("expected an (n, 3) array with n >= 4")
    n = len(verts)
    edges = [Edge(i, j, GeodesicArc(verts[i], verts[j], tol))
             for i in range(n) for j in range(i + 1, n)]
    d = Drawing(vertices=verts.copy(), kind=DrawingKind.COMPLETE,
                edges=tuple(edges), pairing={},
                provenance=dict(provenance or {}), tol=tol)
    validate_drawing(d)
    return d


def build_cocktail_party(config: AntipodalConfig,
                         tol: ToleranceConfig = DEFAULT_TOL,
                         provenance: dict | None = None) -> Drawing:
    """Join every non-antipodal pair of the doubled set by its shorter arc.

    The result is the complete graph minus the antipodal perfect matching,
    drawn with 2k^2 - 2k geodesic edges.
    """
    d = Drawing(vertices=config.doubled.copy(),
                kind=DrawingKind.COCKTAIL_PARTY,
                edges=tuple(_arc_edges(config, tol)),
                pairing=config.pairing(),
                provenance=dict(provenance or {}),
                tol=tol)
    validate_drawing(d)
    return d


def strength(config: AntipodalConfig, asg: HalfCircleAssignment,
             tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Number of crossing pairs among the k matching half-circles."""
    halves = [asg.half_circle(config, i, tol) for i in range(config.k)]
    total = 0
    for h1, h2 in combinations(halves, 2):
        total += half_circles_cross(h1, h2, tol)
    return total


def extend_partial_matching(config: AntipodalConfig,
                            asg: HalfCircleAssignment,
                            chosen,
                            tol: ToleranceConfig = DEFAULT_TOL,
                            provenance: dict | None = None) -> Drawing:
    """Add matching half-circles for the chosen pair indices only.

    With every pair chosen this is the full complete-graph drawing; with no
    pair chosen it degenerates to the matching-free drawing.
    """
    chosen = sorted(set(int(i) for i in chosen))
    k = config.k
    if chosen and not (0 <= chosen[0] and chosen[-1] < k):
        raise ValueError(f"pair indices must lie in [0, {k})")
    edges = _arc_edges(config, tol)
    for i in chosen:
        edges.append(Edge(i, i + k, asg.half_circle(config, i, tol)))
    t = k - len(chosen)
    if t == 0:
        kind = DrawingKind.COMPLETE
    elif t == k:
        kind = DrawingKind.COCKTAIL_PARTY
    else:
        kind = DrawingKind.PARTIAL_MATCHING
    prov = dict(provenance or {})
    prov.setdefault("matching_pairs", chosen)
    d = Drawing(vertices=config.doubled.copy(), kind=kind,
                edges=tuple(edges), pairing=config.pairing(),
                provenance=prov, tol=tol)
    validate_drawing(d)
    return d


def extend_to_complete(config: AntipodalConfig, asg: HalfCircleAssignment,
                       tol: ToleranceConfig = DEFAULT_TOL,
                       provenance: dict | None = None) -> Drawing:
    """The full drawing: all arcs plus all k matching half-circles."""
    return extend_partial_matching(config, asg, range(config.k), tol,
                                   provenance)


def delete_vertex(d: Drawing, v: int,
                  tol: ToleranceConfig | None = None) -> Drawing:
    """Remove one vertex and its incident edges from a complete drawing.

    Surviving vertices are reindexed in order; the pairing keeps every
    untouched antipodal couple (the deleted vertex's partner stays,
    unpaired).
    """
    tol = tol or d.tol
    if d.kind is not DrawingKind.COMPLETE:
        raise ValueError("vertex deletion expects a complete-graph drawing")
    if not 0 <= v < d.n:
        raise ValueError(f"vertex index {v} out of range")
    keep = [i for i in range(d.n) if i != v]
    remap = {old: new for new, old in enumerate(keep)}
    edges = []
    for e in d.edges:
        if v in (e.u, e.v):
            continue
        edges.append(Edge(remap[e.u], remap[e.v], e.curve))
    pairing = {remap[a]: remap[b] for a, b in d.pairing.items()
               if v not in (a, b)}
    prov = dict(d.provenance)
    prov["deleted_vertex"] = v
    out = Drawing(vertices=d.vertices[keep].copy(),
                  kind=DrawingKind.COMPLETE_MINUS_VERTEX,
                  edges=tuple(edges), pairing=pairing,
                  provenance=prov, tol=tol)
    validate_drawing(out)
    return out


def add_apex(config: AntipodalConfig, asg: HalfCircleAssignment, q,
             tol: ToleranceConfig = DEFAULT_TOL,
             provenance: dict | None = None) -> Drawing:
    """Extend the full drawing by one new vertex joined to all others.

    The apex must be in general position with respect to the doubled set:
    every triple through q and two non-antipodal vertices non-coplanar, and
    q off every existing edge's curve.  Violations raise
    DegenerateConfigurationError; callers should resample q.
    """
    q = require_unit(q, tol)
    base_drawing = extend_to_complete(config, asg, tol, provenance)
    verts = base_drawing.vertices
    n = len(verts)
    for i in range(n - 1):
        cr = np.cross(verts[i], q)
        dets = verts[i + 1:] @ cr
        js = np.nonzero(np.abs(dets) <= tol.general_position)[0]
        for off in js:
            j = i + 1 + int(off)
            if base_drawing.pairing.get(i) == j:
                continue    # triples through an antipodal pair are exempt
            raise DegenerateConfigurationError(
                f"apex is coplanar with vertices {i},{j}; resample the apex")
    for e in base_drawing.edges:
        nrm, wu, wv = curve_frame(e.curve)
        if (abs(float(q @ nrm)) <= tol.general_position
                and float(q @ wu) > 0.0 and float(q @ wv) > 0.0):
            raise DegenerateConfigurationError(
                f"apex lies on edge ({e.u},{e.v}); resample the apex")
    edges = list(base_drawing.edges)
    for i in range(n):
        edges.append(Edge(i, n, GeodesicArc(verts[i], q, tol)))
    prov = dict(provenance or {})
    prov["apex"] = [float(c) for c in q]
    out = Drawing(vertices=np.concatenate([verts, q[None, :]], axis=0),
                  kind=DrawingKind.COMPLETE_PLUS_APEX,
                  edges=tuple(edges), pairing=dict(base_drawing.pairing),
                  provenance=prov, tol=tol)
    validate_drawing(out)
    return out


def config_from_drawing(d: Drawing
                        ) -> tuple[AntipodalConfig, HalfCircleAssignment]:
    """Recover the configuration and matching assignment of a complete
    antipodal drawing, e.g. one loaded from a file.

    Base points are the smaller-index vertex of each antipodal pair, in
    index order, which reproduces the indexing the builders emit.
    """
    if d.kind is not DrawingKind.COMPLETE or not d.pairing:
        raise ValueError("expected a complete drawing with an antipodal "
                         "pairing")
    reps = sorted(a for a, b in d.pairing.items() if a < b)
    if 2 * len(reps) != d.n:
        raise ValueError("pairing does not cover all vertices")
    mid_by_vertex = {}
    for e in d.edges:
        if isinstance(e.curve, HalfCircle):
            mid_by_vertex[min(e.u, e.v)] = e.curve.m
    if sorted(mid_by_vertex) != reps:
        raise ValueError("drawing lacks a matching half-circle per pair")
    config = double(d.vertices[reps], d.tol)
    asg = make_assignment(config,
                          np.stack([mid_by_vertex[r] for r in reps]), d.tol)
    return config, asg


def add_random_apex(config: AntipodalConfig, asg: HalfCircleAssignment,
                    rng, tol: ToleranceConfig = DEFAULT_TOL,
                    max_tries: int = 64,
                    provenance: dict | None = None) -> Drawing:
    """Sample uniform apexes until one is accepted by :func:`add_apex`."""
    for _ in range(max_tries):
        q = unit(rng.normal(size=3))
        try:
            return add_apex(config, asg, q, tol, provenance)
        except DegenerateConfigurationError:
            continue
    raise DegenerateConfigurationError(
        f"no valid apex found in {max_tries} samples")


# ---------------------------------------------------------------------------
# crossing counting
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CrossingReport:
    """Totals and participation counts for one drawing.

    ``pairs`` is a lexicographically sorted integer array of shape
    (total, 2).  Every crossing involves 2 edges and 4 distinct endpoints,
    so per_edge sums to 2 * total and per_vertex to 4 * total.
    """

    total: int
    per_edge: np.ndarray
    per_vertex: np.ndarray
    pairs: np.ndarray

    def pair_set(self) -> frozenset:
        return frozenset(map(tuple, self.pairs.tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossingReport):
            return NotImplemented
        return (self.total == other.total
                and np.array_equal(self.per_edge, other.per_edge)
                and np.array_equal(self.per_vertex, other.per_vertex)
                and np.array_equal(self.pairs, other.pairs))


def _pack_drawing(d: Drawing):
    """Arrays consumed by the vectorized pair predicate.

    Arc frames are rebuilt from the vertex array in bulk; only half-circle
    edges go through their curve objects.
    """
    E = len(d.edges)
    uv = np.fromiter((x for e in d.edges for x in (e.u, e.v)),
                     dtype=np.int64, count=2 * E).reshape(E, 2)
    halves = [i for i, e in enumerate(d.edges)
              if isinstance(e.curve, HalfCircle)]
    A = d.vertices[uv[:, 0]]
    B = d.vertices[uv[:, 1]]
    N = np.cross(A, B)
    nn = np.linalg.norm(N, axis=1, keepdims=True)
    if halves:
        nn[halves] = 1.0      # placeholder; rows overwritten below
    N /= nn
    U = np.cross(B, N)
    V = np.cross(N, A)
    for i in halves:
        N[i], U[i], V[i] = curve_frame(d.edges[i].curve)
    amap = np.full(d.n, -1, dtype=np.int64)
    for a, b in d.pairing.items():
        amap[a] = b
    return N, U, V, uv, amap


def _count_rows(N, U, V, uv, amap, rows, sign_tol):
    """Crossing pairs for the given first-edge rows, as an (m, 2) array.

    Pairs sharing a vertex are adjacent and skipped.  Pairs whose endpoint
    sets split an antipodal couple (one vertex on each edge) are skipped as
    well: their great circles meet exactly on that vertex axis, so the open
    curves can never cross there, and the predicate would sit on a
    structural zero.  Sign decisions use the raw triple products; the dead
    zone compares them against sign_tol scaled by |n_i x n_j|, which equals
    the test on normalized intersection directions without the divisions.
    """
    E = len(N)
    found = []
    for i in rows:
        j0 = i + 1
        if j0 >= E:
            continue
        Nj = N[j0:]
        ni = N[i]
        X = np.empty_like(Nj)
        X[:, 0] = ni[1] * Nj[:, 2] - ni[2] * Nj[:, 1]
        X[:, 1] = ni[2] * Nj[:, 0] - ni[0] * Nj[:, 2]
        X[:, 2] = ni[0] * Nj[:, 1] - ni[1] * Nj[:, 0]
        nx = np.sqrt(np.einsum("ij,ij->i", X, X))
        ui, vi = int(uv[i, 0]), int(uv[i, 1])
        ju = uv[j0:, 0]
        jv = uv[j0:, 1]
        active = ~((ju == ui) | (ju == vi) | (jv == ui) | (jv == vi))
        for w in (amap[ui], amap[vi]):
            if w >= 0:
                active &= ~((ju == w) | (jv == w))
        if not active.any():
            continue
        if np.any(active & (nx <= sign_tol)):
            j = j0 + int(np.nonzero(active & (nx <= sign_tol))[0][0])
            raise DegenerateConfigurationError(
                f"edges {i} and {j} lie on the same great circle "
                "within tolerance")
        d1 = X @ U[i]
        d2 = X @ V[i]
        d3 = np.einsum("ij,ij->i", X, U[j0:])
        d4 = np.einsum("ij,ij->i", X, V[j0:])
        mags = np.minimum(np.minimum(np.abs(d1), np.abs(d2)),
                          np.minimum(np.abs(d3), np.abs(d4)))
        dead = active & (mags <= sign_tol * nx)
        if np.any(dead):
            j = j0 + int(np.nonzero(dead)[0][0])
            raise DegenerateConfigurationError(
                f"edge pair ({i},{j}) falls in the sign dead zone")
        pos = (d1 > 0.0) & (d2 > 0.0) & (d3 > 0.0) & (d4 > 0.0)
        neg = (d1 < 0.0) & (d2 < 0.0) & (d3 < 0.0) & (d4 < 0.0)
        hits = np.nonzero(active & (pos | neg))[0]
        if len(hits):
            block = np.empty((len(hits), 2), dtype=np.int64)
            block[:, 0] = i
            block[:, 1] = j0 + hits
            found.append(block)
    if not found:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(found, axis=0)


_POOL_DATA = None


def _pool_worker(args):
    start, step, sign_tol = args
    N, U, V, uv, amap = _POOL_DATA
    rows = range(start, len(N) - 1, step)
    return _count_rows(N, U, V, uv, amap, rows, sign_tol)


def count_crossings(d: Drawing, tol: ToleranceConfig | None = None,
                    workers: int = 1) -> CrossingReport:
    """Count all edge crossings of a drawing by exhaustive pair testing.

    Adjacent pairs and pairs splitting an antipodal couple are excluded
    structurally (see :func:`_count_rows`); every other pair goes through
    the sign predicate.  With ``workers > 1`` the row space is partitioned
    over a process pool; the merged result is sorted, so counts and pair
    lists are independent of scheduling.
    """
    tol = tol or d.tol
    packed = _pack_drawing(d)
    N, U, V, uv, amap = packed
    E = len(N)
    if workers <= 1 or E < 64:
        pairs = _count_rows(N, U, V, uv, amap, range(E - 1), tol.sign)
    else:
        global _POOL_DATA
        _POOL_DATA = packed
        try:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(processes=workers) as pool:
                chunks = pool.map(_pool_worker,
                                  [(s, workers, tol.sign) for s in range(workers)])
            pairs = np.concatenate(chunks, axis=0)
        finally:
            _POOL_DATA = None
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    pairs = pairs[order]
    per_edge = np.bincount(pairs.ravel(), minlength=E)
    ends = uv[pairs.ravel()].ravel()
    per_vertex = np.bincount(ends, minlength=d.n)
    return CrossingReport(total=len(pairs), per_edge=per_edge,
                          per_vertex=per_vertex, pairs=pairs)


def count_crossings_by_circle_pairs(d: Drawing,
                                    tol: ToleranceConfig | None = None) -> int:
    """Independent crossing total for a matching-free antipodal drawing.

    Every edge lies on the great circle spanned by one couple of antipodal
    pairs, and all crossings happen between two such circles.  For each pair
    of circles this locates the two actual intersection directions and
    attributes each to the unique containing edge on both circles; circles
    sharing a base pair meet exactly on that pair's axis and contribute
    nothing.  Structurally unrelated to the pairwise predicate sweep, which
    makes the two counters mutual oracles.
    """
    tol = tol or d.tol
    if d.kind is not DrawingKind.COCKTAIL_PARTY:
        raise ValueError("the circle-pair counter applies to matching-free "
                         "antipodal drawings only")
    n = d.n
    k = n // 2
    pair_list = sorted({tuple(sorted((a, b))) for a, b in d.pairing.items()})
    rep = [p[0] for p in pair_list]            # one base vertex per pair
    part = [p[1] for p in pair_list]
    verts = d.vertices

    cycles = list(combinations(range(k), 2))
    C = len(cycles)
    normals = np.empty((C, 3))
    arc_w = np.empty((C, 4, 2, 3))             # per cycle: 4 arcs x 2 wedges
    for c, (i, j) in enumerate(cycles):
        a, abar = rep[i], part[i]
        b, bbar = rep[j], part[j]
        normals[c] = unit(np.cross(verts[a], verts[b]))
        ring = [(a, b), (b, abar), (abar, bbar), (bbar, a)]
        for s, (u, v) in enumerate(ring):
            nrm = unit(np.cross(verts[u], verts[v]))
            arc_w[c, s, 0] = np.cross(verts[v], nrm)
            arc_w[c, s, 1] = np.cross(nrm, verts[u])

    def contains_count(c, cand):
        dots = arc_w[c] @ cand                  # (4, 2)
        if np.any(np.abs(dots) <= tol.sign):
            raise DegenerateConfigurationError(
                f"circle-pair attribution hit the dead zone on cycle {c}")
        return int(np.sum((dots > 0.0).all(axis=1)))

    total = 0
    for c1 in range(C):
        i, j = cycles[c1]
        for c2 in range(c1 + 1, C):
            r, s = cycles[c2]
            x = np.cross(normals[c1], normals[c2])
            nx = float(np.linalg.norm(x))
            if nx <= tol.sign:
                raise DegenerateConfigurationError(
                    f"cycles {cycles[c1]} and {cycles[c2]} span the same "
                    "great circle")
            x /= nx
            common = {i, j} & {r, s}
            if common:
                shared = verts[rep[common.pop()]]
                if abs(abs(float(x @ shared)) - 1.0) > tol.general_position:
                    raise DegenerateConfigurationError(
                        "circles through a shared pair fail to meet on its "
                        "axis")
                continue
            for cand in (x, -x):
                in1 = contains_count(c1, cand)
                in2 = contains_count(c2, cand)
                if in1 > 1 or in2 > 1:
                    raise DegenerateConfigurationError(
                        "intersection attributed to more than one arc")
                if in1 and in2:
                    total += 1
    return total


# ---------------------------------------------------------------------------
# verification against the closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FormulaCheck:
    name: str
    predicted: int
    observed: int
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    kind: DrawingKind
    n: int
    crossings: CrossingReport
    checks: tuple[FormulaCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "total": self.crossings.total,
            "passed": self.passed,
            "checks": [{"name": c.name, "predicted": c.predicted,
                        "observed": c.observed, "passed": c.passed}
                       for c in self.checks],
        }


def verify(d: Drawing, tol: ToleranceConfig | None = None,
           workers: int = 1) -> VerificationReport:
    """Compare the geometric crossing count with the closed form for the
    drawing's kind; all comparisons are exact integer equalities."""
    tol = tol or d.tol
    rep = count_crossings(d, tol, workers=workers)
    n = d.n
    checks = []

    def add(name: str, predicted: int, observed: int):
        checks.append(FormulaCheck(name, int(predicted), int(observed),
                                   int(predicted) == int(observed)))

    if d.kind is DrawingKind.COCKTAIL_PARTY:
        k = n // 2
        add("cocktail_party_total", k * (k - 1) * (k - 2) * (k - 3) // 4,
            rep.total)
    elif d.kind is DrawingKind.PARTIAL_MATCHING:
        add("partial_matching_total",
            partial_matching_target(n, d.matching_size()), rep.total)
    elif d.kind is DrawingKind.COMPLETE:
        add("hill_total", hill_number(n), rep.total)
        if n >= 6 and n % 2 == 0:
            target = per_vertex_target(n)
            worst = max(rep.per_vertex, key=lambda x: abs(x - target))
            add("per_vertex_participation", target, worst)
    elif d.kind is DrawingKind.COMPLETE_MINUS_VERTEX:
        add("vertex_deleted_total", hill_number(n), rep.total)
    elif d.kind is DrawingKind.COMPLETE_PLUS_APEX:
        add("apex_added_total", hill_number(n), rep.total)
    add("per_vertex_sum", 4 * rep.total, int(rep.per_vertex.sum()))
    return VerificationReport(kind=d.kind, n=n, crossings=rep,
                              checks=tuple(checks))
