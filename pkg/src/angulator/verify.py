"""Theorem-checking harness with independent oracles.

Each suite runs a batch of cases and returns a VerificationReport; a case
failure records an input fingerprint together with the expected and actual
values.  All suites are deterministic given a configuration and a seed.

The flip/mutation suite is the arbiter for the global orientation
conventions: it asserts quiver_of(flip(D, x)) == mutate(quiver_of(D), k)
bit-exactly, with the flipped arc keeping its vertex index.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field

from . import annulus as ann
from . import disk
from .disk import DEFAULT_GUARD, DiskConfig
from .quiver import PlainQuiver

# disk compat suites enumerate exhaustively below this many angulations
# and fall back to a random walk above it
COMPAT_ENUM_CAP = 300

DISK_MATRIX = [
    DiskConfig(m, (r + 1) * m + 2) for m in (1, 2, 3) for r in range(1, 6)
]
ANNULUS_MATRIX = [
    ann.AnnulusConfig(m, p, q)
    for m in (1, 2)
    for (p, q) in ((1, 1), (2, 1), (2, 2), (4, 3))
]


@dataclass
class CaseFailure:
    fingerprint: str
    expected: str
    actual: str


@dataclass
class VerificationReport:
    suite: str
    cases: int = 0
    failures: list[CaseFailure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, fingerprint, expected, actual):
        self.failures.append(CaseFailure(str(fingerprint), str(expected), str(actual)))

    def check(self, ok, fingerprint, expected="pass", actual="fail"):
        self.cases += 1
        if not ok:
            self.record(fingerprint, expected, actual)

    def to_json_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "failures": [
                {"input": f.fingerprint, "expected": f.expected, "actual": f.actual}
                for f in self.failures
            ],
        }
        if include_elapsed:
            out["elapsed"] = self.elapsed
        return out


class _Timer:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed = time.perf_counter() - self.t0


def _arcs_of(angulation):
    if isinstance(angulation, disk.DiskAngulation):
        return angulation.diagonals
    return angulation.arcs


def _completions_of(angulation, removed):
    rest = [a for a in _arcs_of(angulation) if a != removed]
    if isinstance(angulation, disk.DiskAngulation):
        return disk.completions(angulation.config, rest, removed)
    return ann.completions(angulation.config, rest, removed)


def _new_arc(before, after):
    (arc,) = set(_arcs_of(after)) - set(_arcs_of(before))
    return arc


def fuss_catalan(m: int, k: int) -> int:
    """Number of dissections of a (km+2)-gon into (m+2)-gons."""
    return math.comb((m + 1) * k, k) // (k * m + 1)


def is_linear_path(pq: PlainQuiver) -> bool:
    """True iff the arrows form one directed path visiting every vertex."""
    if pq.n <= 1:
        return not pq.arrows
    if len(pq.arrows) != pq.n - 1 or any(v != 1 for _, v in pq.arrows):
        return False
    succ = dict(e for e, _ in pq.arrows)
    starts = set(range(pq.n)) - set(succ.values())
    if len(succ) != pq.n - 1 or len(starts) != 1:
        return False
    node, seen = starts.pop(), 1
    while node in succ:
        node = succ[node]
        seen += 1
    return seen == pq.n


# -- case sources ----------------------------------------------------------


def random_walk(cfg, steps: int, seed: int):
    """Deterministic random flip walk; yields (angulation, arc-to-flip).

    For annulus configurations with m = 1 the arc is drawn among the
    positions whose flip stays inside the three-kind arc model.
    """
    rng = random.Random(seed)
    if isinstance(cfg, DiskConfig):
        angulation = disk.initial_fan(cfg)
    else:
        angulation = ann.initial_bridges(cfg)
    for _ in range(steps):
        arcs = _arcs_of(angulation)
        if isinstance(cfg, DiskConfig):
            arc = arcs[rng.randrange(len(arcs))]
            yield angulation, arc
            angulation = angulation.flip(arc)
        else:
            flippable = []
            for a in arcs:
                try:
                    angulation.flip(a)
                    flippable.append(a)
                except ann.UnsupportedFlip:
                    pass
            arc = flippable[rng.randrange(len(flippable))]
            yield angulation, arc
            angulation = angulation.flip(arc).rebased()


def all_disk_cases(cfg: DiskConfig, guard: int = DEFAULT_GUARD):
    """Every (angulation, diagonal) pair of a configuration."""
    _, angulations = disk.enumerate_angulations(cfg, guard=guard, collect=True)
    for angulation in angulations:
        for d in angulation.diagonals:
            yield angulation, d


# -- suites ----------------------------------------------------------------


def check_flip_mutation(cases, suite="flip-mutation") -> VerificationReport:
    """quiver_of(flip(D, x)) == mutate(quiver_of(D), index(x)) bit-exactly."""
    report = VerificationReport(suite)
    with _Timer(report):
        for angulation, arc in cases:
            arcs = _arcs_of(angulation)
            k = arcs.index(arc)
            expected = angulation.quiver_of().mutate(k)
            flipped = angulation.flip(arc)
            order = [a if a != arc else _new_arc(angulation, flipped) for a in arcs]
            actual = flipped.quiver_of(order)
            report.check(
                actual == expected, f"{angulation} flip {arc}", repr(expected),
                repr(actual),
            )
    return report


def check_flip_cycle(cases, suite="flip-cycle") -> VerificationReport:
    """Flipping m+1 times at one position is the identity, and the position
    admits exactly m+1 completions."""
    report = VerificationReport(suite)
    with _Timer(report):
        for angulation, arc in cases:
            m = angulation.config.m
            comps = _completions_of(angulation, arc)
            report.check(
                len(comps) == m + 1 and comps[-1] == arc,
                f"{angulation} completions at {arc}", f"{m + 1} ending with {arc}",
                repr(comps),
            )
            cur, cur_arc = angulation, arc
            for _ in range(m + 1):
                nxt = cur.flip(cur_arc)
                cur_arc = _new_arc(cur, nxt)
                cur = nxt
            report.check(
                cur == angulation, f"{angulation} flip^{m + 1} at {arc}",
                repr(angulation), repr(cur),
            )
    return report


def check_axioms(cases, suite="axioms") -> VerificationReport:
    """Angulation quivers and their mutations pass the three axioms, and
    the procedural mutation agrees with the closed formula."""
    report = VerificationReport(suite)
    with _Timer(report):
        for angulation, arc in cases:
            q = angulation.quiver_of()
            k = _arcs_of(angulation).index(arc)
            report.check(q.is_valid(), f"validate quiver_of {angulation}",
                         "[]", repr(q.validate()))
            mutated = q.mutate(k)
            report.check(mutated.is_valid(), f"validate mutate {angulation} @{k}",
                         "[]", repr(mutated.validate()))
            report.check(
                q.mutate_procedural(k) == mutated,
                f"procedural {angulation} @{k}", repr(mutated),
                repr(q.mutate_procedural(k)),
            )
    return report


def check_counts(cfg: DiskConfig, guard: int = DEFAULT_GUARD) -> VerificationReport:
    """Backtracking count == Fuss-Catalan closed form == flip-graph BFS;
    every maximal noncrossing set has exactly rank elements."""
    report = VerificationReport(f"counts m={cfg.m} S={cfg.sides}")
    with _Timer(report):
        count, _ = disk.enumerate_angulations(cfg, guard=guard)
        closed = fuss_catalan(cfg.m, cfg.rank + 1)
        report.check(count == closed, "backtracking vs closed form", closed, count)
        graph = disk.flip_graph(cfg, guard=guard)
        report.check(len(graph.nodes) == count, "BFS vs backtracking",
                     count, len(graph.nodes))
        sizes = disk.maximal_set_sizes(cfg, guard=guard)
        report.check(set(sizes) == {cfg.rank}, "maximal set sizes",
                     {cfg.rank}, set(sizes))
        report.check(sum(sizes.values()) == count, "maximal set count",
                     count, sum(sizes.values()))
    return report


def check_connectivity(cfg: DiskConfig, guard: int = DEFAULT_GUARD) -> VerificationReport:
    """The flip graph is connected and reaches every enumerated angulation."""
    report = VerificationReport(f"connectivity m={cfg.m} S={cfg.sides}")
    with _Timer(report):
        graph = disk.flip_graph(cfg, guard=guard)
        report.check(graph.is_connected(), "connected", True, False)
        _, angulations = disk.enumerate_angulations(cfg, guard=guard, collect=True)
        reached = set(graph.nodes)
        missing = [a for a in angulations if a not in reached]
        report.check(not missing, "all angulations reached from the fan",
                     0, len(missing))
    return report


def check_gabriel(cfg: DiskConfig) -> VerificationReport:
    """The color-0 quiver of the initial fan is a linear path."""
    report = VerificationReport(f"gabriel m={cfg.m} S={cfg.sides}")
    with _Timer(report):
        pq = disk.initial_fan(cfg).quiver_of().gabriel()
        report.check(is_linear_path(pq), "gabriel(fan) linear path",
                     "path", repr(pq))
    return report


def _check_disk_cut(report, cfg, angulation, d):
    cut = disk.cut_along(cfg, d)
    rest = [e for e in angulation.diagonals if e != d]
    placed = {e: cut.transport(e) for e in rest}
    for e, f in itertools.combinations(rest, 2):
        pe, le = placed[e]
        pf, lf = placed[f]
        got = disk.crosses(le, lf) if pe == pf else False
        report.check(got == disk.crosses(e, f), f"crossing {e},{f} under cut {d}",
                     disk.crosses(e, f), got)
    by_piece = {1: [], 2: []}
    for e in rest:
        piece, local = placed[e]
        by_piece[piece].append(local)
        pc = cut.piece1 if piece == 1 else cut.piece2
        report.check(pc.is_m_diagonal(local.a, local.b),
                     f"validity of {e} under cut {d}", True, False)
        report.check(cut.pull_back(piece, local) == e,
                     f"round trip of {e} under cut {d}", e, cut.pull_back(piece, local))
    # flips of diagonals disjoint from the cut commute with transport
    for e in rest:
        piece, local = placed[e]
        pc = cut.piece1 if piece == 1 else cut.piece2
        piece_ang = disk.DiskAngulation(pc, by_piece[piece])
        flipped_local = piece_ang.twist(local)
        flipped_global = angulation.twist(e)
        report.check(
            cut.pull_back(piece, flipped_local) == flipped_global,
            f"flip of {e} commutes with cut {d}", flipped_global,
            cut.pull_back(piece, flipped_local),
        )


def _check_annulus_bridge_cut(report, cfg, angulation, y):
    res = ann.cut_along(cfg, y)
    rest = [a for a in angulation.arcs if a != y]
    placed = {a: res.transport(a) for a in rest}
    for a, b in itertools.combinations(rest, 2):
        got = disk.crosses(placed[a], placed[b])
        report.check(got == ann.crosses(cfg, a, b),
                     f"crossing {a},{b} under cut {y}", ann.crosses(cfg, a, b), got)
    for a in rest:
        report.check(res.disk.is_m_diagonal(placed[a].a, placed[a].b),
                     f"validity of {a} under cut {y}", True, False)
        report.check(res.pull_back(placed[a]) == a,
                     f"round trip of {a} under cut {y}", a, res.pull_back(placed[a]))
    # flips away from the cut commute with transport (also exercises the
    # independence of the flip from the bridge chosen internally)
    disk_ang = disk.DiskAngulation(res.disk, list(placed.values()))
    for a in rest:
        try:
            flipped_global = ann.AnnulusAngulation(cfg, angulation.arcs).flip(a)
        except ann.UnsupportedFlip:
            continue
        new_arc = _new_arc(angulation, flipped_global)
        report.check(
            res.pull_back(disk_ang.twist(placed[a])) == new_arc,
            f"flip of {a} commutes with cut {y}", new_arc,
            res.pull_back(disk_ang.twist(placed[a])),
        )


def _check_annulus_chord_cut(report, cfg, angulation, ear):
    res = ann.cut_along(cfg, ear)
    rest = [a for a in angulation.arcs if a != ear]
    placed = {a: res.transport(a) for a in rest}
    small = {a: v for a, (where, v) in placed.items() if where == "annulus"}
    in_disk = {a: v for a, (where, v) in placed.items() if where == "disk"}
    for a, b in itertools.combinations(rest, 2):
        want = ann.crosses(cfg, a, b)
        if a in small and b in small:
            got = ann.crosses(res.annulus, small[a], small[b])
        elif a in in_disk and b in in_disk:
            got = disk.crosses(in_disk[a], in_disk[b])
        else:
            got = False
        report.check(got == want, f"crossing {a},{b} under cut {ear}", want, got)
    for a, v in small.items():
        report.check(res.annulus.is_m_diagonal(v),
                     f"validity of {a} under cut {ear}", True, False)
    for a, v in in_disk.items():
        report.check(res.disk.is_m_diagonal(v.a, v.b),
                     f"validity of {a} under cut {ear}", True, False)
    # the reduced arcs form an angulation of the smaller annulus
    reduced = ann.AnnulusAngulation(res.annulus, list(small.values()))
    report.check(reduced.is_valid(), f"reduced angulation under cut {ear}",
                 "[]", repr(reduced.violations()))


def check_cut_transport(cfg, cases, suite=None) -> VerificationReport:
    """Transport along cuts preserves validity and the crossing relation
    and commutes with flips of arcs disjoint from the cut arc."""
    report = VerificationReport(suite or f"cut-transport {cfg}")
    with _Timer(report):
        for angulation, _ in cases:
            if isinstance(cfg, DiskConfig):
                ears = [d for d in angulation.diagonals if cfg.is_m_ear(d)]
                _check_disk_cut(report, cfg, angulation, ears[0])
            else:
                _check_annulus_bridge_cut(report, cfg, angulation,
                                          angulation.bridges()[0])
                ears = [a for a in angulation.arcs if ann.is_m_ear(cfg, a)]
                if ears:
                    _check_annulus_chord_cut(report, cfg, angulation, ears[0])
    return report


def _partial_cells_ok(cfg: ann.AnnulusConfig, arcs) -> bool:
    """True iff every cell of a partial arc system has size 2 (mod m), the
    condition for completability to an (m+2)-angulation.  Needs a bridge."""
    from .faces import split_regions

    bridges = [a for a in arcs if isinstance(a, ann.Bridge)]
    cut = ann.BridgeCut(cfg, min(bridges, key=ann.arc_sort_key))
    diags = [cut.to_disk(a) for a in arcs if a != cut.bridge]
    cycle = list(range(1, cut.disk.sides + 1))
    chords = [frozenset((d.a, d.b)) for d in diags]
    return all((len(r) - 2) % cfg.m == 0 for r in split_regions(cycle, chords))


def check_annulus_maximal(
    cfg: ann.AnnulusConfig, trials: int, seed: int
) -> VerificationReport:
    """Random maximal angulation-compatible extensions have exactly p+q arcs.

    For m >= 2 plain noncrossing maximality is too weak on the annulus
    (parallel bridges can dissect into cells smaller than (m+2)-gons), so
    extension steps must keep every cell size 2 (mod m); the maximal sets
    reached this way are exactly the (m+2)-angulations.
    """
    report = VerificationReport(f"maximal-sets {cfg}")
    window = cfg.p + cfg.q + 3
    with _Timer(report):
        rng = random.Random(seed)
        pool = []
        for o in range(1, cfg.outer_len + 1):
            for i in range(1, cfg.inner_len + 1):
                pool.extend(ann.Bridge(o, i, w) for w in range(-window, window + 1))
        for boundary, kind in ((cfg.outer_len, ann.OuterChord),
                               (cfg.inner_len, ann.InnerChord)):
            for s in range(1, boundary + 1):
                for t in range(cfg.m + 1, boundary, cfg.m):
                    pool.append(kind(s, t))
        pool = [a for a in pool if cfg.is_m_diagonal(a)]
        for _ in range(trials):
            chosen = [ann.Bridge(rng.randrange(1, cfg.outer_len + 1),
                                 rng.randrange(1, cfg.inner_len + 1),
                                 rng.randrange(-1, 2))]
            order = rng.sample(range(len(pool)), len(pool))
            progress = True
            while progress:
                progress = False
                for idx in order:
                    cand = pool[idx]
                    if (
                        cand not in chosen
                        and all(not ann.crosses(cfg, cand, c) for c in chosen)
                        and _partial_cells_ok(cfg, chosen + [cand])
                    ):
                        chosen.append(cand)
                        progress = True
            fingerprint = f"maximal extension {sorted(chosen, key=ann.arc_sort_key)}"
            report.check(len(chosen) == cfg.rank, fingerprint,
                         cfg.rank, len(chosen))
            result = ann.AnnulusAngulation(cfg, chosen)
            report.check(result.is_valid(), fingerprint, "[]",
                         repr(result.violations()))
    return report


# -- the built-in configuration matrix --------------------------------------


def _compat_cases(cfg, steps, seed, guard):
    if isinstance(cfg, DiskConfig):
        if fuss_catalan(cfg.m, cfg.rank + 1) <= COMPAT_ENUM_CAP:
            return list(all_disk_cases(cfg, guard))
        return list(random_walk(cfg, steps, seed))
    return list(random_walk(cfg, steps, seed))


def run_suite(
    suite: str,
    seed: int = 0,
    steps: int = 500,
    guard: int = DEFAULT_GUARD,
) -> list[VerificationReport]:
    """Run one named suite (or all) over the built-in matrix."""
    if suite not in ("all", "compat", "counts", "cut"):
        raise ValueError(f"unknown suite {suite!r}")
    reports = []
    configs = DISK_MATRIX + ANNULUS_MATRIX
    if suite in ("compat", "all"):
        for cfg in configs:
            cases = _compat_cases(cfg, steps, seed, guard)
            label = f"m={cfg.m} " + (
                f"S={cfg.sides}" if isinstance(cfg, DiskConfig)
                else f"(p,q)=({cfg.p},{cfg.q})"
            )
            reports.append(check_flip_mutation(cases, f"flip-mutation {label}"))
            reports.append(check_flip_cycle(cases, f"flip-cycle {label}"))
            reports.append(check_axioms(cases, f"axioms {label}"))
    if suite in ("counts", "all"):
        for cfg in DISK_MATRIX:
            reports.append(check_counts(cfg, guard))
            reports.append(check_connectivity(cfg, guard))
            reports.append(check_gabriel(cfg))
        for cfg in ANNULUS_MATRIX:
            reports.append(
                check_annulus_maximal(cfg, trials=max(1, steps // 5), seed=seed)
            )
    if suite in ("cut", "all"):
        for cfg in configs:
            cases = list(random_walk(cfg, min(steps, 200), seed))
            reports.append(
                check_cut_transport(cfg, cases, f"cut-transport {cfg}")
            )
    return reports
