"""Prime-field arithmetic and the small amount of linear algebra over F_q^3
needed by the inner-product coloring.

Field elements are plain ints in ``range(q)``; vectors are tuples of such
ints. The field object only carries the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence, Tuple, Union

Vector = Tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class AffineLine:
    """The point set ``{base + t*direction : t in F_q}``."""

    base: Vector
    direction: Vector
    q: int

    def points(self) -> list:
        return [
            tuple((b + t * d) % self.q for b, d in zip(self.base, self.direction))
            for t in range(self.q)
        ]

    def __contains__(self, x) -> bool:
        return tuple(x) in set(self.points())


@dataclass(frozen=True)
class Plane:
    """Solution set of a single consistent equation ``normal . x = value``."""

    normal: Vector
    value: int


class PrimeField:
    """The field F_q for an odd prime q."""

    def __init__(self, q: int):
        if not isinstance(q, int) or q < 3 or not is_prime(q):
            raise ValueError(f"q must be an odd prime, got {q!r}")
        self.q = q

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    # scalars

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return pow(a, -1, self.q)

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # vectors

    def vectors(self, dim: int = 3) -> Iterator[Vector]:
        return product(range(self.q), repeat=dim)

    def vertices(self) -> Iterator[Vector]:
        """All of (F_q*)^3 in lexicographic order."""
        return product(range(1, self.q), repeat=3)

    def add(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return tuple((a + b) % self.q for a, b in zip(x, y))

    def sub(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return tuple((a - b) % self.q for a, b in zip(x, y))

    def scale(self, c: int, x: Sequence[int]) -> Vector:
        return tuple((c * a) % self.q for a in x)

    def inner_product(self, x: Sequence[int], y: Sequence[int]) -> int:
        # each product is < q^2, so the sum never needs more than a machine word
        return sum(a * b for a, b in zip(x, y)) % self.q

    def is_isotropic(self, x: Sequence[int]) -> bool:
        return self.inner_product(x, x) == 0

    def normalize(self, x: Sequence[int]) -> Vector:
        """Scale ``x`` so its first nonzero coordinate is 1."""
        for a in x:
            if a % self.q:
                return self.scale(self.inv(a), x)
        raise ValueError("cannot normalize the zero vector")

    def rank(self, vectors: Sequence[Sequence[int]]) -> int:
        rows = [[a % self.q for a in v] for v in vectors]
        if not rows:
            return 0
        ncols = len(rows[0])
        r = 0
        for col in range(ncols):
            pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = self.inv(rows[r][col])
            rows[r] = [(a * inv) % self.q for a in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [(a - f * b) % self.q for a, b in zip(rows[i], rows[r])]
            r += 1
            if r == len(rows):
                break
        return r

    def linearly_dependent(self, x: Sequence[int], y: Sequence[int]) -> bool:
        return self.rank([x, y]) < 2

    def cross(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        q = self.q
        return (
            (x[1] * y[2] - x[2] * y[1]) % q,
            (x[2] * y[0] - x[0] * y[2]) % q,
            (x[0] * y[1] - x[1] * y[0]) % q,
        )

    def solve_two_equations(
        self, a: Sequence[int], alpha: int, b: Sequence[int], beta: int
    ) -> Union[AffineLine, Plane, None]:
        """Solve ``a.x = alpha, b.x = beta`` over F_q^3.

        Returns an :class:`AffineLine` for independent rows, a :class:`Plane`
        for dependent consistent rows and ``None`` when inconsistent.
        """
        q = self.q
        a = tuple(v % q for v in a)
        b = tuple(v % q for v in b)
        alpha, beta = alpha % q, beta % q
        if not any(a) and not any(b):
            raise ValueError("both equations have zero coefficients")
        if self.rank([a, b]) == 2:
            direction = self.cross(a, b)
            # eliminate to find one particular solution
            for i, j in ((0, 1), (0, 2), (1, 2)):
                det = (a[i] * b[j] - a[j] * b[i]) % q
                if det:
                    d_inv = self.inv(det)
                    base = [0, 0, 0]
                    base[i] = ((alpha * b[j] - beta * a[j]) * d_inv) % q
                    base[j] = ((a[i] * beta - b[i] * alpha) * d_inv) % q
                    return AffineLine(tuple(base), direction, q)
            raise AssertionError("rank 2 rows with all 2x2 minors zero")
        # rank 1: one row is a multiple of the other (or zero)
        if not any(a):
            return Plane(b, beta) if alpha == 0 else None
        if not any(b):
            return Plane(a, alpha) if beta == 0 else None
        piv = next(i for i in range(3) if a[i])
        lam = (b[piv] * self.inv(a[piv])) % q
        if (lam * alpha - beta) % q:
            return None
        return Plane(a, alpha)

    def affine_dependent(self, p1, p2, p3) -> bool:
        return self.rank([self.sub(p2, p1), self.sub(p3, p1)]) <= 1

    def affine_lines(self) -> Iterator[AffineLine]:
        """Every affine line of F_q^3 exactly once."""
        q = self.q
        seen = set()
        for direction in self.vectors():
            if not any(direction) or self.normalize(direction) != direction:
                continue
            for base in self.vectors():
                line = AffineLine(base, direction, q)
                key = frozenset(line.points())
                if key in seen:
                    continue
                seen.add(key)
                yield line


def vector_compare(x: Sequence[int], y: Sequence[int]) -> int:
    """Lexicographic comparison under the natural residue order: -1, 0 or 1."""
    for a, b in zip(x, y):
        if a != b:
            return -1 if a < b else 1
    return 0


def ordered(x: Vector, y: Vector) -> Tuple[Vector, Vector]:
    return (x, y) if vector_compare(x, y) <= 0 else (y, x)


def as_vector(x, q: Optional[int] = None) -> Vector:
    v = tuple(int(a) for a in x)
    if q is not None:
        v = tuple(a % q for a in v)
    return v
