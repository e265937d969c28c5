"""Colored patterns, pattern matching in edge-colored complete graphs, and
the (p, q) property check."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

Edge = Tuple[int, int]


@dataclass(frozen=True)
class ColoredPattern:
    """A complete graph on ``k`` vertices with some edges grouped into
    color classes. Edges in one class must receive equal host colors; class
    pairs listed in ``distinct_pairs`` must receive different host colors.
    Edges outside every class are unconstrained."""

    k: int
    classes: Tuple[Tuple[Edge, ...], ...]
    distinct_pairs: Tuple[Tuple[int, int], ...] = ()
    name: str = ""

    def __post_init__(self):
        norm = tuple(tuple(sorted((min(u, v), max(u, v)) for u, v in cls)) for cls in self.classes)
        object.__setattr__(self, "classes", norm)
        object.__setattr__(
            self, "distinct_pairs", tuple(sorted((min(i, j), max(i, j)) for i, j in self.distinct_pairs))
        )
        seen = set()
        for cls in norm:
            if not cls:
                raise ValueError("pattern classes must be nonempty")
            for u, v in cls:
                if not (0 <= u < v < self.k):
                    raise ValueError(f"edge {(u, v)} is not an edge of K_{self.k}")
                if (u, v) in seen:
                    raise ValueError(f"edge {(u, v)} appears in two classes")
                seen.add((u, v))
        for i, j in self.distinct_pairs:
            if i == j or not (0 <= i < len(norm) and 0 <= j < len(norm)):
                raise ValueError(f"distinct pair {(i, j)} does not reference two classes")

    def to_json_obj(self) -> dict:
        obj = {
            "k": self.k,
            "classes": [[list(e) for e in cls] for cls in self.classes],
            "distinct_pairs": [list(p) for p in self.distinct_pairs],
        }
        if self.name:
            obj["name"] = self.name
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict, name: str = "") -> "ColoredPattern":
        return cls(
            int(obj["k"]),
            tuple(tuple((int(u), int(v)) for u, v in c) for c in obj["classes"]),
            tuple((int(i), int(j)) for i, j in obj.get("distinct_pairs", ())),
            obj.get("name", name),
        )


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Optional[Tuple[int, ...]] = None
    colors: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.passed != (self.witness is None):
            raise ValueError("a witness is present exactly when the check fails")

    def to_json_obj(self) -> dict:
        return {
            "pass": self.passed,
            "witness": list(self.witness) if self.witness is not None else None,
            "colors": list(self.colors) if self.colors is not None else None,
        }


def _letters(spec: str) -> Tuple[Edge, ...]:
    return tuple((ord(e[0]) - 97, ord(e[1]) - 97) for e in spec.split())


def _all_distinct(nclasses: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(combinations(range(nclasses), 2))


def builtin_patterns() -> Dict[str, ColoredPattern]:
    raw = {
        "MONO_C3": (3, ["ab bc ac"], False),
        "MONO_C5": (5, ["ab bc cd de ae"], False),
        "FIG_1A": (4, ["ab cd", "ac ad"], False),
        "FIG_1B": (4, ["ab ac", "bd bc", "ad cd"], False),
        "FIG_1C": (5, ["ab bc cd", "ac ce de"], False),
        "FIG_1D": (5, ["ab ae ce", "ad de bc"], False),
        "STRIPED_K4": (4, ["ab cd", "ac bd", "ad bc"], False),
        "FIG_3A": (5, ["ab ac ad ae", "bc bd be", "cd ce"], True),
        "FIG_3B": (5, ["ac ad ae bc bd be", "cd ce"], True),
        "FIG_3C": (5, ["ab ac ad ae", "bc cd de be"], True),
    }
    out = {}
    for name, (k, classes, distinct) in raw.items():
        cls = tuple(_letters(c) for c in classes)
        out[name] = ColoredPattern(k, cls, _all_distinct(len(cls)) if distinct else (), name)
    return out


PATTERN_SETS = {
    "mono-odd": ("MONO_C3", "MONO_C5"),
    "cfls-avoided": ("MONO_C3", "MONO_C5", "FIG_1A", "FIG_1B", "FIG_1C", "FIG_1D", "STRIPED_K4"),
    "phi1-avoided": ("MONO_C3", "MONO_C5", "FIG_1A", "FIG_1B", "FIG_1C", "FIG_1D"),
    "figure3": ("FIG_3A", "FIG_3B", "FIG_3C"),
}


def resolve_patterns(names: Iterable[str]) -> List[ColoredPattern]:
    """Pattern names, ``builtin:<set>`` names, or paths to pattern JSON files."""
    lib = builtin_patterns()
    out: List[ColoredPattern] = []
    for name in names:
        if name.startswith("builtin:"):
            key = name.split(":", 1)[1]
            if key in lib:
                out.append(lib[key])
            elif key in PATTERN_SETS:
                out.extend(lib[p] for p in PATTERN_SETS[key])
            else:
                raise KeyError(f"unknown builtin pattern or set {key!r}")
        elif name in lib:
            out.append(lib[name])
        else:
            out.extend(load_patterns(name))
    return out


def load_patterns(path) -> List[ColoredPattern]:
    """A pattern file holds one pattern object or a list of them."""
    p = Path(path)
    if not p.exists():
        raise KeyError(f"unknown pattern {path!r}")
    obj = json.loads(p.read_text(encoding="utf-8"))
    objs = obj if isinstance(obj, list) else [obj]
    return [ColoredPattern.from_json_obj(o, name=o.get("name", p.stem)) for o in objs]


def _as_matrix(host) -> np.ndarray:
    return np.asarray(host.ids if hasattr(host, "ids") else host)


# --- matching ----------------------------------------------------------------

def contains(host, pattern: ColoredPattern, must_include: Optional[int] = None) -> Verdict:
    """Search for the lexicographically least injective placement of
    ``pattern`` into ``host``. ``passed`` is True when there is none.

    ``must_include`` restricts the search to placements using that host vertex.
    """
    M = _as_matrix(host)
    n = M.shape[0]
    k = pattern.k
    if k > n:
        return Verdict(True)
    rows = M.tolist()
    edge_class: Dict[Edge, int] = {e: c for c, cls in enumerate(pattern.classes) for e in cls}
    back = [[(j, edge_class[(j, i)]) for j in range(i) if (j, i) in edge_class] for i in range(k)]
    others: Dict[int, List[int]] = {c: [] for c in range(len(pattern.classes))}
    for i, j in pattern.distinct_pairs:
        others[i].append(j)
        others[j].append(i)

    # by_color[u][c] = sorted host vertices v with color(u, v) == c
    by_color: List[Dict[int, List[int]]] = []
    for u in range(n):
        d: Dict[int, List[int]] = {}
        for v in range(n):
            if v != u:
                d.setdefault(rows[u][v], []).append(v)
        by_color.append(d)

    class_color: List[Optional[int]] = [None] * len(pattern.classes)
    assign: List[int] = []
    used = [False] * n

    def candidates(i):
        for j, c in back[i]:
            if class_color[c] is not None:
                return by_color[assign[j]].get(class_color[c], ())
        return range(n)

    def search(i: int) -> bool:
        if i == k:
            return must_include is None or used[must_include]
        if must_include is not None and not used[must_include] and i == k - 1:
            cands: Iterable[int] = (must_include,)
        else:
            cands = candidates(i)
        for v in cands:
            if used[v]:
                continue
            newly = []
            ok = True
            for j, c in back[i]:
                col = rows[assign[j]][v]
                if class_color[c] is None:
                    class_color[c] = col
                    newly.append(c)
                elif class_color[c] != col:
                    ok = False
                    break
            if ok:
                for c in newly:
                    if any(class_color[o] == class_color[c] for o in others[c]):
                        ok = False
                        break
            if ok:
                assign.append(v)
                used[v] = True
                if search(i + 1):
                    return True
                assign.pop()
                used[v] = False
            for c in newly:
                class_color[c] = None
        return False

    if search(0):
        w = tuple(assign)
        colors = tuple(rows[w[a]][w[b]] for a, b in combinations(range(k), 2))
        return Verdict(False, w, colors)
    return Verdict(True)


# --- (p, q) verification -----------------------------------------------------

def _combos(n: int, r: int) -> np.ndarray:
    if r == 0:
        return np.zeros((1, 0), dtype=np.int32)
    arr = np.fromiter(
        (v for c in combinations(range(n), r) for v in c), dtype=np.int32
    )
    return arr.reshape(-1, r)


def _scan(M: np.ndarray, p: int, q_colors: int, firsts: Sequence[int] | None):
    """Scan p-subsets in lexicographic order; return the first violation.

    ``firsts`` restricts the scan to subsets whose least vertex is listed.
    """
    n = M.shape[0]
    r = max(p - 3, 0)
    s = p - r
    suffixes = _combos(n, s)
    starts = np.searchsorted(suffixes[:, 0], np.arange(n + 1)) if len(suffixes) else None
    pairs = list(combinations(range(p), 2))
    if r == 0:
        if firsts is not None:
            keep = np.isin(suffixes[:, 0], np.asarray(list(firsts), dtype=np.int32))
            suffixes = suffixes[keep]
        prefixes: Iterable[Tuple[int, ...]] = [()]
    else:
        firsts = range(n) if firsts is None else sorted(firsts)
        prefixes = (
            (f,) + rest for f in firsts for rest in combinations(range(f + 1, n), r - 1)
        )
    for prefix in prefixes:
        if r:
            rows = suffixes[starts[prefix[-1] + 1]:]
        else:
            rows = suffixes
        if len(rows) == 0:
            continue
        cols = np.empty((len(rows), len(pairs)), dtype=M.dtype)
        for e, (a, b) in enumerate(pairs):
            if b < r:
                cols[:, e] = M[prefix[a], prefix[b]]
            elif a < r:
                cols[:, e] = M[prefix[a], rows[:, b - r]]
            else:
                cols[:, e] = M[rows[:, a - r], rows[:, b - r]]
        cols.sort(axis=1)
        distinct = 1 + np.count_nonzero(np.diff(cols, axis=1), axis=1)
        bad = np.flatnonzero(distinct < q_colors)
        if bad.size:
            subset = tuple(int(v) for v in prefix) + tuple(int(v) for v in rows[bad[0]])
            return subset
    return None


def _scan_worker(args):
    M, p, q_colors, firsts = args
    return _scan(M, p, q_colors, firsts)


def default_jobs() -> int:
    env = os.environ.get("PQCOLOR_JOBS")
    return max(1, int(env)) if env else 1


def verify_pq(host, p: int, q_colors: int, jobs: int | None = None) -> Verdict:
    """Check that every ``p``-subset of vertices spans at least ``q_colors``
    distinct colors. On failure the witness is the lexicographically least
    violating subset and ``colors`` its sorted edge-color multiset."""
    M = np.ascontiguousarray(_as_matrix(host), dtype=np.int32)
    n = M.shape[0]
    if not 2 <= p <= n:
        raise ValueError(f"need 2 <= p <= n, got p={p}, n={n}")
    if not 1 <= q_colors <= p * (p - 1) // 2:
        raise ValueError(f"need 1 <= q_colors <= {p * (p - 1) // 2}")
    jobs = default_jobs() if jobs is None else max(1, jobs)
    if jobs == 1 or p <= 3:
        witness = _scan(M, p, q_colors, None)
    else:
        # round-robin first vertices so shards carry similar work
        shards = [list(range(w, n, jobs)) for w in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            found = [w for w in ex.map(_scan_worker, [(M, p, q_colors, s) for s in shards]) if w]
        witness = min(found) if found else None
    if witness is None:
        return Verdict(True)
    colors = tuple(sorted(int(M[a, b]) for a, b in combinations(witness, 2)))
    return Verdict(False, witness, colors)
