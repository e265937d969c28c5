"""Vertex-by-vertex listing of small edge-colorings up to isomorphism.

Isomorphism means a vertex permutation composed with a renaming of colors.
Edges of K_k are stored in colex order (0,1), (0,2), (1,2), (0,3), ... so
that adding vertex k appends exactly the edges (0,k), ..., (k-1,k).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .patterns import ColoredPattern, builtin_patterns, contains

MAX_K = 7

CanonicalForm = Tuple[int, ...]


class ResourceLimitError(RuntimeError):
    pass


def edge_order(k: int) -> List[Tuple[int, int]]:
    return [(u, v) for v in range(k) for u in range(v)]


def _edge_index(u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


@dataclass(frozen=True)
class SmallColoring:
    k: int
    colors: Tuple[int, ...]  # one label per edge, colex edge order

    def __post_init__(self):
        if len(self.colors) != self.k * (self.k - 1) // 2:
            raise ValueError("wrong number of edge colors")

    def color(self, u: int, v: int) -> int:
        return self.colors[_edge_index(u, v)]

    def matrix(self) -> np.ndarray:
        m = np.full((self.k, self.k), -1, dtype=np.int32)
        for (u, v), c in zip(edge_order(self.k), self.colors):
            m[u, v] = m[v, u] = c
        return m

    @property
    def ids(self) -> np.ndarray:
        return self.matrix()

    @property
    def n(self) -> int:
        return self.k

    def num_colors(self) -> int:
        return len(set(self.colors))

    def relabel(self, perm: Sequence[int], rename: Optional[Dict[int, int]] = None) -> "SmallColoring":
        """Vertex v of the result is vertex perm[v] of self."""
        cols = tuple(self.color(perm[u], perm[v]) for u, v in edge_order(self.k))
        if rename is not None:
            cols = tuple(rename[c] for c in cols)
        return SmallColoring(self.k, cols)

    def as_pattern(self, name: str = "") -> ColoredPattern:
        """Exact equality structure: classes per color, all pairwise distinct."""
        groups: Dict[int, List[Tuple[int, int]]] = {}
        for e, c in zip(edge_order(self.k), self.colors):
            groups.setdefault(c, []).append(e)
        classes = tuple(tuple(g) for g in groups.values())
        return ColoredPattern(self.k, classes, tuple(combinations(range(len(classes)), 2)), name)

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "edges": [[u, v, c] for (u, v), c in zip(edge_order(self.k), self.colors)],
        }


def from_pattern(p: ColoredPattern) -> SmallColoring:
    """Color each class with its own label and every unconstrained edge with
    a fresh label."""
    label = {e: c + 1 for c, cls in enumerate(p.classes) for e in cls}
    nxt = len(p.classes) + 1
    cols = []
    for e in edge_order(p.k):
        if e not in label:
            label[e] = nxt
            nxt += 1
        cols.append(label[e])
    return SmallColoring(p.k, tuple(cols))


def _first_occurrence(word: Iterable[int]) -> Tuple[int, ...]:
    names: Dict[int, int] = {}
    return tuple(names.setdefault(c, len(names) + 1) for c in word)


_PERM_EDGES: Dict[int, List[List[int]]] = {}


def _perm_edge_maps(k: int) -> List[List[int]]:
    if k not in _PERM_EDGES:
        edges = edge_order(k)
        _PERM_EDGES[k] = [[_edge_index(p[u], p[v]) for u, v in edges] for p in permutations(range(k))]
    return _PERM_EDGES[k]


def canonical_form(c: SmallColoring) -> CanonicalForm:
    """Least first-occurrence-renamed edge word over all vertex permutations."""
    if c.k > MAX_K:
        raise ResourceLimitError(f"canonical form limited to k <= {MAX_K}, got {c.k}")
    cols = c.colors
    return min(_first_occurrence(cols[i] for i in emap) for emap in _perm_edge_maps(c.k))


def canonical_coloring(c: SmallColoring) -> SmallColoring:
    return SmallColoring(c.k, canonical_form(c))


def _has_forbidden(c: SmallColoring, forbidden: Sequence[ColoredPattern], new_vertex: Optional[int]) -> bool:
    m = c.matrix()
    for p in forbidden:
        if p.k > c.k:
            continue
        if not contains(m, p, must_include=new_vertex).passed:
            return True
    return False


def enumerate_colorings(
    n: int,
    m: int,
    forbidden: Sequence[ColoredPattern] = (),
    shuffle_seed: Optional[int] = None,
    only_new_vertex: bool = True,
) -> List[SmallColoring]:
    """All colorings of K_n with labels from 1..m, up to isomorphism, that
    contain no pattern from ``forbidden``; sorted by canonical key.

    ``shuffle_seed`` permutes the candidate order (the result must not change).
    ``only_new_vertex`` checks forbidden placements through the newest vertex
    only, since the rest of the graph was checked one level earlier.
    """
    if n > MAX_K:
        raise ResourceLimitError(f"enumeration limited to n <= {MAX_K}, got {n}")
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    level = [SmallColoring(2, (1,))]
    if n == 2:
        return level
    for k in range(3, n + 1):
        seen = set()
        nxt: List[Tuple[CanonicalForm, SmallColoring]] = []
        candidates = [(h, f) for h in level for f in product(range(1, m + 1), repeat=k - 1)]
        if rng is not None:
            rng.shuffle(candidates)
        for h, f in candidates:
            g = SmallColoring(k, h.colors + tuple(f))
            if _has_forbidden(g, forbidden, k - 1 if only_new_vertex else None):
                continue
            key = canonical_form(g)
            if key in seen:
                continue
            seen.add(key)
            # store the canonical representative so output is order independent
            nxt.append((key, SmallColoring(k, key)))
        nxt.sort(key=lambda kg: kg[0])
        level = [g for _, g in nxt]
    return level


FIGURE3_NAMES = ("FIG_3A", "FIG_3B", "FIG_3C")


def classify_against_figure3(result: Sequence[SmallColoring]) -> Dict[int, str]:
    """Map each coloring (by position) to the FIG_3 configuration whose
    exact equality structure it has, or ``UNKNOWN``.

    A coloring is matched to a configuration when each contains the other
    as a pattern, with unconstrained edges of the configuration read as
    fresh colors.
    """
    lib = builtin_patterns()
    out: Dict[int, str] = {}
    for idx, c in enumerate(result):
        label = "UNKNOWN"
        for name in FIGURE3_NAMES:
            fig = lib[name]
            if fig.k != c.k:
                continue
            fig_coloring = from_pattern(fig)
            if not contains(c.matrix(), fig).passed and not contains(
                fig_coloring.matrix(), c.as_pattern()
            ).passed:
                label = name
                break
        out[idx] = label
    return out
