"""Block coloring of binary strings and its order-sign refinement.

A vertex is a ``'0'/'1'`` string of length ``beta**2`` read as ``beta``
consecutive blocks of ``beta`` bits. Blocks and bits are indexed from 1,
left to right. The vertex order is the integer order of the string read
most significant bit first, which for equal-length strings is plain string
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple


@dataclass(frozen=True, order=True)
class Phi1Color:
    head_index: int
    head_pair: Tuple[str, str]  # sorted, smaller string first
    diffs: Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Phi2Color:
    signs: Tuple[int, ...]


@dataclass(frozen=True, order=True)
class PhiColor:
    phi1: Phi1Color
    phi2: Phi2Color


def beta_of(x: str) -> int:
    beta = int(round(len(x) ** 0.5))
    if beta < 1 or beta * beta != len(x):
        raise ValueError(f"vertex length {len(x)} is not a positive square")
    return beta


def blocks(x: str, beta: int | None = None) -> List[str]:
    if beta is None:
        beta = beta_of(x)
    return [x[k * beta:(k + 1) * beta] for k in range(beta)]


def universe(beta: int) -> List[str]:
    """All of {0,1}^(beta^2) in increasing integer order."""
    if beta < 1:
        raise ValueError("beta must be >= 1")
    m = beta * beta
    return [format(v, f"0{m}b") for v in range(1 << m)]


def _check_pair(x: str, y: str) -> int:
    if len(x) != len(y):
        raise ValueError("vertices of different length")
    if x == y:
        raise ValueError("edge colors are undefined on equal vertices")
    return beta_of(x)


def _first_diff(s: str, t: str) -> int:
    for k, (a, b) in enumerate(zip(s, t), start=1):
        if a != b:
            return k
    return 0


def phi1(x: str, y: str) -> Phi1Color:
    beta = _check_pair(x, y)
    bx, by = blocks(x, beta), blocks(y, beta)
    diffs = tuple(_first_diff(s, t) for s, t in zip(bx, by))
    i = next(k for k, d in enumerate(diffs, start=1) if d)
    s, t = bx[i - 1], by[i - 1]
    return Phi1Color(i, (min(s, t), max(s, t)), diffs)


def phi2(x: str, y: str) -> Phi2Color:
    beta = _check_pair(x, y)
    a, b = min(x, y), max(x, y)
    # equal-width blocks compare as integers exactly when they compare as strings
    return Phi2Color(tuple(-1 if s > t else 1 for s, t in zip(blocks(a, beta), blocks(b, beta))))


def phi(x: str, y: str) -> PhiColor:
    return PhiColor(phi1(x, y), phi2(x, y))


def color_count_phi(beta: int) -> int:
    """Upper bound on the number of colors used by ``phi`` on {0,1}^(beta^2)."""
    if beta < 1:
        raise ValueError("beta must be >= 1")
    return beta ** (beta + 1) * 2 ** (3 * beta)
