"""Modified inner-product coloring of (F_q*)^3.

Every edge is colored on its ordered form ``x < y`` (lexicographic order of
residues), so all colors are functions of the unordered pair.
"""

from __future__ import annotations

import enum
import threading
from collections import deque
from dataclasses import dataclass
from typing import Dict, Tuple

from .gf3 import PrimeField, Vector, vector_compare


class TypeTag(str, enum.Enum):
    UP1 = "UP1"
    UP2 = "UP2"
    DOWN1 = "DOWN1"
    DOWN2 = "DOWN2"
    ZERO = "ZERO"
    DOT = "DOT"

    def __str__(self) -> str:
        return self.value


FIRST_COORD_TAGS = frozenset({TypeTag.UP1, TypeTag.DOWN1, TypeTag.ZERO})
SECOND_COORD_TAGS = frozenset({TypeTag.UP2, TypeTag.DOWN2})

E1 = (1, 0, 0)
E2 = (0, 1, 0)


@dataclass(frozen=True)
class Chi1Color:
    tag: TypeTag
    value: int
    dep: int  # 0 if the endpoints are linearly dependent


@dataclass(frozen=True)
class Chi2Color:
    first: str
    second: str


@dataclass(frozen=True)
class SubspaceBipartition:
    key: Vector  # normal vector, first nonzero coordinate scaled to 1
    labels: Dict[Vector, str]

    def label(self, x: Vector) -> str:
        return self.labels[x]

    def __contains__(self, x) -> bool:
        return tuple(x) in self.labels


class NotBipartiteError(RuntimeError):
    pass


class MIPColoring:
    """Coloring chi = chi1 x chi2 over a fixed prime field."""

    def __init__(self, field: PrimeField | int):
        self.field = field if isinstance(field, PrimeField) else PrimeField(field)
        self.q = self.field.q
        self._bipartitions: Dict[Vector, SubspaceBipartition] = {}
        self._lock = threading.Lock()

    # --- validation -------------------------------------------------------

    def _vertex(self, x) -> Vector:
        x = tuple(int(a) for a in x)
        if len(x) != 3 or not all(0 < a < self.q for a in x):
            raise ValueError(f"{x} is not a vertex of (F_{self.q}*)^3")
        return x

    def _ordered(self, x, y) -> Tuple[Vector, Vector]:
        x, y = self._vertex(x), self._vertex(y)
        c = vector_compare(x, y)
        if c == 0:
            raise ValueError("edge colors are undefined on equal vertices")
        return (x, y) if c < 0 else (y, x)

    # --- chi1 -------------------------------------------------------------

    def type_tag(self, x, y) -> TypeTag:
        x, y = self._ordered(x, y)
        dot = self.field.inner_product
        xy, xx, yy = dot(x, y), dot(x, x), dot(y, y)
        # with x < y we always have x1 <= y1, so the UP/DOWN side conditions
        # reduce to choosing between the first- and second-coordinate variant
        if xy == xx:
            return TypeTag.UP1 if x[0] < y[0] else TypeTag.UP2
        if xy == yy:
            return TypeTag.DOWN1 if x[0] < y[0] else TypeTag.DOWN2
        if xy == 0:
            return TypeTag.ZERO
        return TypeTag.DOT

    def f_T(self, tag: TypeTag, x, y) -> int:
        if tag in FIRST_COORD_TAGS:
            return (x[0] + y[0]) % self.q
        if tag in SECOND_COORD_TAGS:
            return (x[1] + y[1]) % self.q
        return self.field.inner_product(x, y)

    def chi1(self, x, y) -> Chi1Color:
        x, y = self._ordered(x, y)
        tag = self.type_tag(x, y)
        dep = 0 if self.field.linearly_dependent(x, y) else 1
        return Chi1Color(tag, self.f_T(tag, x, y), dep)

    # --- chi2 -------------------------------------------------------------

    @staticmethod
    def special_vector(a: Vector, tag: TypeTag) -> Vector:
        if tag is TypeTag.DOT:
            return tuple(a)
        if tag in FIRST_COORD_TAGS:
            return E1
        return E2

    def projection(self, a: Vector, b: Vector, tag: TypeTag) -> Vector:
        """Component of ``b`` along ``a_T`` (zero when ``a_T`` is isotropic)."""
        f = self.field
        aT = self.special_vector(a, tag)
        norm = f.inner_product(aT, aT)
        if norm == 0:
            return (0, 0, 0)
        return f.scale(f.inner_product(aT, b) * f.inv(norm), aT)

    def bipartition(self, normal) -> SubspaceBipartition:
        f = self.field
        normal = tuple(int(a) % self.q for a in normal)
        if not any(normal):
            raise ValueError("a subspace normal must be nonzero")
        key = f.normalize(normal)
        cached = self._bipartitions.get(key)
        if cached is not None:
            return cached
        result = self._build_bipartition(key)
        with self._lock:
            return self._bipartitions.setdefault(key, result)

    def _build_bipartition(self, key: Vector) -> SubspaceBipartition:
        f = self.field
        members = [x for x in f.vectors() if f.inner_product(key, x) == 0]
        labels = {x: "A" for x in members}
        nodes = [x for x in members if not f.is_isotropic(x)]
        side: Dict[Vector, int] = {}
        # members are generated in lexicographic order, so each BFS root is
        # the least vector of its component
        for root in nodes:
            if root in side:
                continue
            side[root] = 0
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for v in nodes:
                    if v != u and f.inner_product(u, v) == 0:
                        if v not in side:
                            side[v] = 1 - side[u]
                            queue.append(v)
                        elif side[v] == side[u]:
                            raise NotBipartiteError(f"odd cycle in G_U for normal {key}")
        for x, s in side.items():
            labels[x] = "A" if s == 0 else "B"
        return SubspaceBipartition(key, labels)

    def side_label(self, x: Vector, owner: Vector, tag: TypeTag) -> str:
        """S(x, U_{owner,T}).

        When ``owner_T`` is isotropic the projection is zero and ``x`` need
        not lie in the degenerate plane ``owner_T^perp``; such vectors get
        label A, the same label every isotropic vector receives.
        """
        f = self.field
        normal = self.special_vector(owner, tag)
        bip = self.bipartition(normal)
        if x in bip:
            return bip.label(x)
        if f.is_isotropic(normal):
            return "A"
        raise AssertionError(f"{x} is not in the subspace orthogonal to {normal}")

    def chi2(self, a, b) -> Chi2Color:
        a, b = self._vertex(a), self._vertex(b)
        if vector_compare(a, b) >= 0:
            raise ValueError("chi2 expects its arguments in increasing order")
        f = self.field
        tag = self.type_tag(a, b)
        b_a = self.projection(b, a, tag)
        a_b = self.projection(a, b, tag)
        return Chi2Color(
            self.side_label(f.sub(a, b_a), b, tag),
            self.side_label(f.sub(b, a_b), a, tag),
        )

    def chi(self, x, y) -> Tuple[Chi1Color, Chi2Color]:
        x, y = self._ordered(x, y)
        return self.chi1(x, y), self.chi2(x, y)
