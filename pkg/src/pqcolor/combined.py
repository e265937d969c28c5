"""Product coloring C = phi x chi on n = (q-1)^3 vertices, the dense color
table, and its canonical JSON / binary file formats."""

from __future__ import annotations

import json
import re
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Hashable, List, Sequence, Tuple

import numpy as np

from . import cfls
from .cfls import Phi1Color, Phi2Color, PhiColor
from .gf3 import PrimeField, Vector, is_prime
from .mip import Chi1Color, Chi2Color, MIPColoring, TypeTag

FORMAT_VERSION = 1
CONSTRUCTION_VERSION = "pqcolor-1"
BINARY_MAGIC = b"PQCT"


def bits_per_coordinate(q: int) -> int:
    """ceil(log2 q) for q >= 2."""
    return (q - 1).bit_length()


def beta_for(q: int) -> int:
    need = 3 * bits_per_coordinate(q)
    beta = 1
    while beta * beta < need:
        beta += 1
    return beta


def color_bound(q: int, beta: int) -> int:
    return 48 * q * beta * 2 ** (3 * beta)


@dataclass
class VertexUniverse:
    q: int
    beta: int
    vertices: List[Vector]
    mip: MIPColoring = field(repr=False)
    _index: Dict[Vector, int] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, x: Vector) -> int:
        return self._index[tuple(x)]

    def embed(self, x) -> str:
        return embed(self, x)


def build_universe(q: int) -> VertexUniverse:
    f = PrimeField(q)
    verts = list(f.vertices())
    u = VertexUniverse(q, beta_for(q), verts, MIPColoring(f))
    u._index = {v: i for i, v in enumerate(verts)}
    return u


def embed(u: VertexUniverse, x) -> str:
    """Concatenated binary ranks of the coordinates, zero-padded to beta^2 bits.

    A nonzero residue r has rank r among the nonzero elements in natural order.
    """
    x = tuple(int(a) for a in x)
    if len(x) != 3 or not all(0 < a < u.q for a in x):
        raise ValueError(f"{x} is not a vertex of (F_{u.q}*)^3")
    width = bits_per_coordinate(u.q)
    payload = "".join(format(a, f"0{width}b") for a in x)
    return payload.ljust(u.beta * u.beta, "0")


@dataclass(frozen=True)
class CombinedColor:
    phi: PhiColor
    chi: Tuple[Chi1Color, Chi2Color]

    def descriptor(self) -> str:
        return format_descriptor(self)


def combined_color(u: VertexUniverse, x, y) -> CombinedColor:
    x, y = tuple(x), tuple(y)
    return CombinedColor(cfls.phi(embed(u, x), embed(u, y)), u.mip.chi(x, y))


# --- descriptor strings ----------------------------------------------------

def format_descriptor(c: CombinedColor) -> str:
    p1, p2 = c.phi.phi1, c.phi.phi2
    c1, c2 = c.chi
    s, t = p1.head_pair
    return (
        f"PHI1({p1.head_index};{s}|{t};{','.join(map(str, p1.diffs))})"
        f"|PHI2({','.join('+1' if d > 0 else '-1' for d in p2.signs)})"
        f"|CHI1({c1.tag.value},{c1.value},{c1.dep})"
        f"|CHI2({c2.first},{c2.second})"
    )


_DESCRIPTOR_RE = re.compile(
    r"PHI1\((\d+);([01]+)\|([01]+);([\d,]+)\)"
    r"\|PHI2\(([+\-1,]+)\)"
    r"\|CHI1\((UP1|UP2|DOWN1|DOWN2|ZERO|DOT),(\d+),([01])\)"
    r"\|CHI2\(([AB]),([AB])\)$"
)


def parse_descriptor(text: str) -> CombinedColor:
    m = _DESCRIPTOR_RE.match(text)
    if m is None:
        raise ValueError(f"malformed color descriptor: {text!r}")
    i, s, t, diffs, signs, tag, v, dep, x, y = m.groups()
    p1 = Phi1Color(int(i), (s, t), tuple(int(d) for d in diffs.split(",")))
    p2 = Phi2Color(tuple(int(d) for d in signs.split(",")))
    return CombinedColor(
        PhiColor(p1, p2),
        (Chi1Color(TypeTag(tag), int(v), int(dep)), Chi2Color(x, y)),
    )


# --- tables ----------------------------------------------------------------

@dataclass
class ColoringTable:
    """Edge -> dense color id for a complete graph on ``n`` vertices.

    ``ids`` is the full symmetric matrix with ``-1`` on the diagonal.
    ``descriptors[k]`` is the color record (or its string form) of id ``k``.
    """

    n: int
    ids: np.ndarray
    descriptors: List[Hashable]
    meta: Dict[str, object] = field(default_factory=dict)
    labels: List[object] | None = None

    def color(self, i: int, j: int) -> int:
        return int(self.ids[i, j])

    @property
    def num_colors(self) -> int:
        return len(self.descriptors)

    def distinct_count(self) -> int:
        return len(np.unique(self.upper_ids())) if self.n > 1 else 0

    def upper_ids(self) -> np.ndarray:
        iu = np.triu_indices(self.n, k=1)
        return self.ids[iu]

    def descriptor_strings(self) -> List[str]:
        return [d.descriptor() if hasattr(d, "descriptor") else str(d) for d in self.descriptors]

    def induced(self, vertices: Sequence[int]) -> "ColoringTable":
        """Sub-table on ``vertices`` (in the given order), ids renumbered."""
        vs = list(vertices)
        sub = self.ids[np.ix_(vs, vs)]
        pairs = [(a, b) for a in range(len(vs)) for b in range(a + 1, len(vs))]
        remap: Dict[int, int] = {}
        out = np.full((len(vs), len(vs)), -1, dtype=np.int32)
        for a, b in pairs:
            k = remap.setdefault(int(sub[a, b]), len(remap))
            out[a, b] = out[b, a] = k
        inverse = sorted(remap, key=remap.get)
        labels = [self.labels[v] for v in vs] if self.labels is not None else None
        return ColoringTable(len(vs), out, [self.descriptors[k] for k in inverse], dict(self.meta), labels)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoringTable)
            and self.n == other.n
            and np.array_equal(self.ids, other.ids)
            and self.descriptor_strings() == other.descriptor_strings()
        )


def table_from_function(
    vertices: Sequence[object], color_fn: Callable[[object, object], Hashable], **meta
) -> ColoringTable:
    """Color every pair ``i < j``; ids follow first appearance in row-major order."""
    n = len(vertices)
    ids = np.full((n, n), -1, dtype=np.int32)
    index: Dict[Hashable, int] = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = color_fn(vertices[i], vertices[j])
            k = index.setdefault(c, len(index))
            ids[i, j] = ids[j, i] = k
    return ColoringTable(n, ids, list(index), meta, list(vertices))


def table_from_matrix(matrix, descriptors: Sequence[Hashable] | None = None, **meta) -> ColoringTable:
    """Wrap an arbitrary symmetric color matrix (ids renumbered densely)."""
    m = np.asarray(matrix)
    n = m.shape[0]
    ids = np.full((n, n), -1, dtype=np.int32)
    index: Dict[Hashable, int] = {}
    for i in range(n):
        for j in range(i + 1, n):
            raw = m[i, j].item() if hasattr(m[i, j], "item") else m[i, j]
            k = index.setdefault(raw, len(index))
            ids[i, j] = ids[j, i] = k
    descs = list(index) if descriptors is None else [descriptors[c] for c in index]
    return ColoringTable(n, ids, descs, meta)


def build_table(u: VertexUniverse, n: int | None = None) -> ColoringTable:
    """Combined coloring on the first ``n`` vertices (all of them by default)."""
    verts = u.vertices if n is None else u.vertices[:n]
    if n is not None and not 0 <= n <= u.n:
        raise ValueError(f"n must be between 0 and {u.n}")
    embedded = {v: embed(u, v) for v in verts}

    def color(x, y):
        return CombinedColor(cfls.phi(embedded[x], embedded[y]), u.mip.chi(x, y))

    return table_from_function(verts, color, q=u.q, beta=u.beta, version=CONSTRUCTION_VERSION)


def smallest_universe_for(n: int) -> VertexUniverse:
    q = 3
    while (q - 1) ** 3 < n:
        q += 2
        while not is_prime(q):
            q += 2
    return build_universe(q)


# --- serialization -----------------------------------------------------------

def table_to_json_obj(t: ColoringTable) -> dict:
    return {
        "version": FORMAT_VERSION,
        "q": int(t.meta.get("q", 0)),
        "beta": int(t.meta.get("beta", 0)),
        "n": t.n,
        "colors": t.descriptor_strings(),
        "edges": [int(v) for v in t.upper_ids()],
    }


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def table_to_json(t: ColoringTable) -> str:
    return dumps_canonical(table_to_json_obj(t))


class TableFormatError(ValueError):
    pass


def table_from_json_obj(obj: dict) -> ColoringTable:
    try:
        if obj["version"] != FORMAT_VERSION:
            raise TableFormatError(f"unsupported version {obj['version']!r}")
        n = int(obj["n"])
        colors = [str(c) for c in obj["colors"]]
        edges = np.asarray(obj["edges"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise TableFormatError(f"malformed coloring file: {exc}") from exc
    if edges.shape != (n * (n - 1) // 2,):
        raise TableFormatError(f"expected {n * (n - 1) // 2} edge ids, got {edges.size}")
    if edges.size and (edges.min() < 0 or edges.max() >= len(colors)):
        raise TableFormatError("edge id out of range of the color list")
    ids = np.full((n, n), -1, dtype=np.int32)
    iu = np.triu_indices(n, k=1)
    ids[iu] = edges
    ids[(iu[1], iu[0])] = edges
    meta = {"q": int(obj.get("q", 0)), "beta": int(obj.get("beta", 0))}
    return ColoringTable(n, ids, colors, meta)


def table_to_binary(t: ColoringTable) -> bytes:
    obj = table_to_json_obj(t)
    out = bytearray(BINARY_MAGIC)
    out += struct.pack("<5I", obj["version"], obj["q"], obj["beta"], obj["n"], len(obj["colors"]))
    for s in obj["colors"]:
        raw = s.encode("utf-8")
        out += struct.pack("<I", len(raw)) + raw
    out += struct.pack("<I", len(obj["edges"]))
    out += np.asarray(obj["edges"], dtype="<u4").tobytes()
    return bytes(out)


def table_from_binary(data: bytes) -> ColoringTable:
    try:
        if data[:4] != BINARY_MAGIC:
            raise TableFormatError("missing binary magic")
        pos = 4
        version, q, beta, n, ncolors = struct.unpack_from("<5I", data, pos)
        pos += 20
        colors = []
        for _ in range(ncolors):
            (length,) = struct.unpack_from("<I", data, pos)
            pos += 4
            colors.append(data[pos:pos + length].decode("utf-8"))
            pos += length
        (nedges,) = struct.unpack_from("<I", data, pos)
        pos += 4
        edges = np.frombuffer(data, dtype="<u4", count=nedges, offset=pos)
        if pos + 4 * nedges != len(data):
            raise TableFormatError("trailing bytes in binary table")
    except struct.error as exc:
        raise TableFormatError(f"truncated binary table: {exc}") from exc
    return table_from_json_obj(
        {"version": version, "q": q, "beta": beta, "n": n, "colors": colors, "edges": edges.tolist()}
    )


def save_table(t: ColoringTable, path, fmt: str = "json") -> None:
    path = Path(path)
    if fmt == "json":
        path.write_text(table_to_json(t) + "\n", encoding="utf-8")
    elif fmt == "binary":
        path.write_bytes(table_to_binary(t))
    else:
        raise ValueError(f"unknown format {fmt!r}")


def load_table(path) -> ColoringTable:
    data = Path(path).read_bytes()
    if data[:4] == BINARY_MAGIC:
        return table_from_binary(data)
    try:
        obj = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise TableFormatError(f"not a coloring file: {exc}") from exc
    if not isinstance(obj, dict):
        raise TableFormatError("coloring file must hold a JSON object")
    return table_from_json_obj(obj)
