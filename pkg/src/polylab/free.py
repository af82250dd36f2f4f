"""Stagewise free completion of a grid plus one isolated point.

Each step takes the oldest deficient pair ``(u, U)`` (``u`` off ``U`` and no
line through ``u`` meets ``U``), adds a new point ``v`` on ``U`` and a new line
``V`` through ``u`` and ``v``, and extends the map onto the target grid.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .errors import ContractViolation, DomainError, Exhausted
from .incidence import IncidenceGeometry
from .morphisms import GeometryMorphism, is_epimorphism, verify_morphism
from .polygon import classify_polygon, girth
from .report import Report


class JournalEntry(NamedTuple):
    step: int
    u: int
    U: int
    v: int
    V: int
    eps_v: int
    eps_V: int

    def line(self) -> str:
        return (
            f"step {self.step}: pair ({self.u},{self.U}) -> new ({self.v},{self.V}), "
            f"eps(v)={self.eps_v}, eps(V)={self.eps_V}"
        )


@dataclass(frozen=True)
class FreeStage:
    geometry: IncidenceGeometry
    morphism: GeometryMorphism
    queue: tuple
    stage: int
    journal: tuple = ()
    seed_points: int = 0
    seed_lines: int = 0

    @property
    def target(self) -> IncidenceGeometry:
        return self.morphism.target

    def journal_text(self) -> str:
        return "".join(e.line() + "\n" for e in self.journal)


def _collinear(lines, point_lines):
    """Point -> set of points sharing a line with it (itself excluded)."""
    out = [set() for _ in point_lines]
    for p, lns in enumerate(point_lines):
        for L in lns:
            out[p].update(lines[L])
        out[p].discard(p)
    return out


def is_deficient(G: IncidenceGeometry, u: int, U: int) -> bool:
    row = G.line_points[U]
    if u in row:
        return False
    for L in G.point_lines[u]:
        if any(p in row for p in G.line_points[L]):
            return False
    return True


def deficient_pairs(G: IncidenceGeometry) -> list:
    coll = _collinear(G.line_points, G.point_lines)
    out = []
    for u in range(G.num_points):
        reach = coll[u] | {u}
        for U, row in enumerate(G.line_points):
            if not reach.intersection(row):
                out.append((u, U))
    return out


def seed_from_target(target: IncidenceGeometry) -> FreeStage:
    """The grid plus an isolated point ``w`` sent to target point 0."""
    verdict = classify_polygon(target)
    if verdict.gonality != 4 or verdict.order is None or verdict.order[1] != 1:
        raise DomainError(f"seed needs a grid of order (s',1), got {verdict.describe()}")
    if verdict.order[0] < 2:
        raise DomainError("seed needs s' >= 2")
    P = target.num_points
    G = IncidenceGeometry(P + 1, target.line_points)
    eps = GeometryMorphism(G, target, tuple(range(P)) + (0,), tuple(range(target.num_lines)))
    return FreeStage(G, eps, tuple(deficient_pairs(G)), 1, (), G.num_points, G.num_lines)


def _meeting_line(T: IncidenceGeometry, x: int, X: int):
    """The line through ``x`` meeting ``X`` and their common point (``x`` off ``X``)."""
    row = set(T.line_points[X])
    for L in T.point_lines[x]:
        common = row.intersection(T.line_points[L])
        if common:
            (y,) = common
            return L, y
    raise ContractViolation(f"target has no line through {x} meeting {X}")


def free_step(state: FreeStage) -> FreeStage:
    G, eps, T = state.geometry, state.morphism, state.target
    queue = deque(state.queue)
    while queue:
        u, U = queue.popleft()
        if is_deficient(G, u, U):
            break
    else:
        raise Exhausted("no deficient pair left")
    v, V = G.num_points, G.num_lines
    lines = [list(r) for r in G.line_points]
    lines[U].append(v)
    lines.append([u, v])
    H = IncidenceGeometry(v + 1, lines)
    x, X = eps.point_map[u], eps.line_map[U]
    if x in T.line_points[X]:
        img_V, img_v = X, x
    else:
        img_V, img_v = _meeting_line(T, x, X)
    new_eps = GeometryMorphism(H, T, eps.point_map + (img_v,), eps.line_map + (img_V,))
    fresh = [(v, L) for L in range(H.num_lines) if is_deficient(H, v, L)]
    fresh += [(p, V) for p in range(H.num_points) if p != v and is_deficient(H, p, V)]
    queue.extend(sorted(fresh))
    entry = JournalEntry(len(state.journal) + 1, u, U, v, V, img_v, img_V)
    return FreeStage(H, new_eps, tuple(queue), state.stage + 1, state.journal + (entry,),
                     state.seed_points, state.seed_lines)


def run_free(state: FreeStage, n: int) -> FreeStage:
    for _ in range(n):
        state = free_step(state)
    return state


def check_free_invariants(state: FreeStage) -> Report:
    G, eps = state.geometry, state.morphism
    rep = Report(f"free construction stage {state.stage}")
    bad = None
    try:
        bad = verify_morphism(eps)
        rep.add("morphism", bad is None, "all flags preserved" if bad is None else f"violating flag {bad}")
        rep.add("epimorphism", bad is None and is_epimorphism(eps), f"onto {state.target.num_points} points")
    except ContractViolation as exc:
        rep.add("morphism", False, str(exc))
    g = girth(G)
    rep.add("girth", g >= 8, f"girth={g}")
    steps = len(state.journal)
    grow_p = G.num_points - state.seed_points
    grow_l = G.num_lines - state.seed_lines
    rep.add("growth", grow_p == grow_l == steps == state.stage - 1,
            f"points+{grow_p} lines+{grow_l} steps={steps} stage={state.stage}")
    ledger_ok = True
    for k, e in enumerate(state.journal):
        if (e.v, e.V) != (state.seed_points + k, state.seed_lines + k) or e.step != k + 1:
            ledger_ok = False
            break
        rows = G.line_points
        if not (e.u in rows[e.V] and e.v in rows[e.V] and e.v in rows[e.U]):
            ledger_ok = False
            break
        if e.V < len(eps.line_map) and (eps.point_map[e.v], eps.line_map[e.V]) != (e.eps_v, e.eps_V):
            ledger_ok = False
            break
    rep.add("journal", ledger_ok, f"entries={steps}")
    stale = [p for p in state.queue if not is_deficient(G, *p)]
    dupes = len(state.queue) - len(set(state.queue))
    rep.add("queue-deficient", not stale and not dupes, f"queued={len(state.queue)} stale={len(stale)} duplicates={dupes}")
    missing = set(deficient_pairs(G)) - set(state.queue)
    rep.add("queue-complete", not missing, f"unqueued deficient pairs={len(missing)}")
    return rep


# -- snapshots -------------------------------------------------------------------

def write_snapshot(state: FreeStage, directory) -> None:
    from .io import write_geometry, write_morphism

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / "target.ig").write_bytes(write_geometry(state.target))
    (d / "geometry.ig").write_bytes(write_geometry(state.geometry))
    (d / "morphism.igmap").write_bytes(write_morphism(state.morphism, "geometry.ig", "target.ig"))
    (d / "journal.txt").write_text(state.journal_text(), encoding="ascii", newline="\n")
    queue = "".join(f"{u} {U}\n" for u, U in state.queue)
    (d / "queue.txt").write_text(queue, encoding="ascii", newline="\n")


def _parse_journal(text: str) -> tuple:
    import re

    pat = re.compile(r"step (\d+): pair \((\d+),(\d+)\) -> new \((\d+),(\d+)\), eps\(v\)=(\d+), eps\(V\)=(\d+)")
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        m = pat.fullmatch(raw)
        if not m:
            from .errors import ParseError

            raise ParseError(no, 1, "malformed journal line")
        out.append(JournalEntry(*map(int, m.groups())))
    return tuple(out)


def read_snapshot(directory) -> FreeStage:
    from .io import read_morphism, parse_geometry

    d = Path(directory)
    target = parse_geometry((d / "target.ig").read_bytes())
    geometry = parse_geometry((d / "geometry.ig").read_bytes())
    eps = read_morphism((d / "morphism.igmap").read_bytes(), geometry, target)
    journal = _parse_journal((d / "journal.txt").read_text(encoding="ascii"))
    queue = tuple(tuple(map(int, ln.split())) for ln in (d / "queue.txt").read_text().splitlines() if ln.strip())
    return FreeStage(geometry, eps, queue, len(journal) + 1, journal,
                     geometry.num_points - len(journal), geometry.num_lines - len(journal))
