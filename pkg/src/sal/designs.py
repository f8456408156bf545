"""Partial Steiner, Steiner and Hall triple systems.

Points are the integers ``1..n``. A :class:`BlockSet` is the raw incidence
data; :func:`validate_psts` and :func:`as_sts` check it and, for a Steiner
triple system, build the join table ``i o j`` (the third point on the
block through ``i`` and ``j``, with ``i o i = i``).

Constructions
-------------
``construct_ag(m)``
    AG(m, 3). The vector ``(a1, ..., am)`` over Z/3 gets label
    ``1 + a1 + 3*a2 + ... + 3**(m-1)*am``; lines are ``{x, y, -x-y}``.
    For m = 2 this reproduces the 12 blocks 123, 456, 789, 147, 258, 369,
    159, 267, 348, 168, 249, 357 exactly.
``fano``
    The cyclic STS(7) with base block {0, 1, 3} mod 7, shifted to 1..7.
``bose(n)``, n = 6v + 3
    Bose's construction over the idempotent commutative quasigroup
    ``x * y = (v + 1)(x + y) mod 2v+1``. Point ``(x, i)`` with x in
    Z/(2v+1), i in Z/3 gets label ``1 + x + (2v+1)*i``. Blocks are
    ``{(x,0),(x,1),(x,2)}`` and ``{(x,i),(y,i),(x*y,i+1)}`` for x < y.
``skolem(n)``, n = 6v + 1
    Skolem's construction over the half-idempotent commutative quasigroup
    of order 2v obtained from the addition table of Z/2v by relabelling
    ``2t -> t`` and ``2t+1 -> v+t``. Point ``(x, i)`` gets label
    ``1 + x + 2v*i`` and the extra point is ``n``. Blocks are
    ``{(x,0),(x,1),(x,2)}`` for x < v, ``{inf,(x+v,i),(x,i+1)}`` for x < v,
    and ``{(x,i),(y,i),(x*y,i+1)}`` for x < y.

File format: the first non-comment line is ``n``, then one block per line
as three space-separated labels; ``#`` starts a comment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DuplicatePairInTwoBlocks,
    InvalidDimension,
    InvalidOrder,
    MalformedBlock,
    NotAPermutation,
    ParseError,
    UncoveredPair,
)

Block = tuple  # sorted (a, b, c)
Permutation = tuple  # perm[j - 1] is the image of point j


@dataclass(frozen=True)
class BlockSet:
    n: int
    blocks: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise MalformedBlock(f"negative point count {self.n}")
        normalized = []
        for raw in self.blocks:
            b = tuple(raw)
            if len(b) != 3 or len(set(b)) != 3:
                raise MalformedBlock(f"block {raw!r} does not have three distinct points")
            for p in b:
                if not isinstance(p, int) or isinstance(p, bool) or not 1 <= p <= self.n:
                    raise MalformedBlock(f"block {raw!r} has a point outside 1..{self.n}")
            normalized.append(tuple(sorted(b)))
        object.__setattr__(self, "blocks", tuple(sorted(normalized)))

    @property
    def points(self) -> range:
        return range(1, self.n + 1)


@dataclass(frozen=True)
class ReplicationProfile:
    counts: tuple  # counts[i - 1] = number of blocks through point i
    regular: bool
    r: int | None


@dataclass(frozen=True)
class SteinerTripleSystem:
    base: BlockSet
    table: tuple = field(repr=False)  # table[i-1][j-1] = i o j

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def blocks(self) -> tuple:
        return self.base.blocks

    @property
    def points(self) -> range:
        return self.base.points

    @property
    def b(self) -> int:
        return len(self.base.blocks)

    @property
    def r(self) -> int:
        return (self.n - 1) // 2

    def join(self, i: int, j: int) -> int:
        return self.table[i - 1][j - 1]

    def block_of(self, i: int, j: int) -> Block:
        return tuple(sorted((i, j, self.join(i, j))))

    def blocks_through(self, i: int) -> list:
        return [B for B in self.blocks if i in B]


def validate_psts(raw: BlockSet) -> ReplicationProfile:
    """Check the partial-linear-space law on every point pair."""
    owner: dict = {}
    counts = [0] * raw.n
    for B in raw.blocks:
        for i, j in itertools.combinations(B, 2):
            prev = owner.get((i, j))
            if prev is not None:
                raise DuplicatePairInTwoBlocks(i, j, prev, B)
            owner[(i, j)] = B
        for p in B:
            counts[p - 1] += 1
    regular = len(set(counts)) <= 1
    r = (counts[0] if counts else 0) if regular else None
    return ReplicationProfile(tuple(counts), regular, r)


def as_sts(raw: BlockSet) -> SteinerTripleSystem:
    validate_psts(raw)
    n = raw.n
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        table[i][i] = i + 1
    for a, b, c in raw.blocks:
        for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
            table[x - 1][y - 1] = z
            table[y - 1][x - 1] = z
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if table[i - 1][j - 1] == 0:
                raise UncoveredPair(i, j)
    for i in range(n):
        for j in range(n):
            k = table[i][j]
            if table[i][k - 1] != j + 1 or table[j][i] != k:
                raise MalformedBlock(f"join table is not a Steiner quasigroup at ({i + 1},{j + 1})")
    return SteinerTripleSystem(raw, tuple(tuple(row) for row in table))


def sts_from_blocks(n: int, blocks: Iterable[Sequence[int]]) -> SteinerTripleSystem:
    return as_sts(BlockSet(n, tuple(tuple(b) for b in blocks)))


# -- constructions ---------------------------------------------------------

def ag_label(vector: Sequence[int]) -> int:
    return 1 + sum(a * 3 ** k for k, a in enumerate(vector))


def ag_vector(label: int, m: int) -> tuple:
    x = label - 1
    out = []
    for _ in range(m):
        x, a = divmod(x, 3)
        out.append(a)
    return tuple(out)


def construct_ag(m: int) -> SteinerTripleSystem:
    if m < 1:
        raise InvalidDimension(f"AG(m,3) needs m >= 1, got {m}")
    points = list(itertools.product(range(3), repeat=m))
    # product() varies the last coordinate fastest; labels use a1 as the low digit
    blocks = set()
    for x, y in itertools.combinations(points, 2):
        z = tuple((-a - b) % 3 for a, b in zip(x, y))
        blocks.add(tuple(sorted((ag_label(x), ag_label(y), ag_label(z)))))
    return sts_from_blocks(3 ** m, sorted(blocks))


def construct_fano() -> SteinerTripleSystem:
    blocks = [tuple(sorted(((t + d) % 7) + 1 for d in (0, 1, 3))) for t in range(7)]
    return sts_from_blocks(7, blocks)


def construct_bose(n: int) -> SteinerTripleSystem:
    if n < 3 or n % 6 != 3:
        raise InvalidOrder(f"Bose construction needs n = 3 (mod 6), got {n}")
    q = n // 3  # 2v + 1
    v = (q - 1) // 2

    def op(x, y):
        return ((v + 1) * (x + y)) % q

    def label(x, i):
        return 1 + x + q * (i % 3)

    blocks = [(label(x, 0), label(x, 1), label(x, 2)) for x in range(q)]
    for i in range(3):
        for x, y in itertools.combinations(range(q), 2):
            blocks.append((label(x, i), label(y, i), label(op(x, y), i + 1)))
    return sts_from_blocks(n, blocks)


def construct_skolem(n: int) -> SteinerTripleSystem:
    if n < 7 or n % 6 != 1:
        raise InvalidOrder(f"Skolem construction needs n = 1 (mod 6) and n >= 7, got {n}")
    v = (n - 1) // 6
    q = 2 * v

    def op(x, y):
        t = (x + y) % q
        return t // 2 if t % 2 == 0 else v + t // 2

    def label(x, i):
        return 1 + x + q * (i % 3)

    inf = n
    blocks = [(label(x, 0), label(x, 1), label(x, 2)) for x in range(v)]
    for i in range(3):
        for x in range(v):
            blocks.append((inf, label(x + v, i), label(x, i + 1)))
        for x, y in itertools.combinations(range(q), 2):
            blocks.append((label(x, i), label(y, i), label(op(x, y), i + 1)))
    return sts_from_blocks(n, blocks)


def construct_named(name: str, n: int | None = None) -> SteinerTripleSystem:
    name = name.lower()
    if name == "fano":
        return construct_fano()
    if name == "bose":
        if n is None:
            raise InvalidOrder("bose needs an order")
        return construct_bose(n)
    if name == "skolem":
        if n is None:
            raise InvalidOrder("skolem needs an order")
        return construct_skolem(n)
    if name == "ag":
        if n is None:
            raise InvalidDimension("ag needs a dimension")
        return construct_ag(n)
    raise InvalidOrder(f"unknown construction {name!r}")


# -- structure checks ------------------------------------------------------

@dataclass(frozen=True)
class HallCheck:
    ok: bool
    witness: tuple | None = None  # (i, j, k) violating the distributive law
    second_identity_ok: bool = True
    second_witness: tuple | None = None

    def __bool__(self):
        return self.ok


def is_hall(s: SteinerTripleSystem) -> HallCheck:
    """Distributivity ``(i o j) o (i o k) = i o (j o k)`` on distinct triples.

    The equivalent form ``k o ((k o j) o i) = (k o i) o j`` is checked as
    well and reported separately.
    """
    J = s.table
    n = s.n
    witness = None
    second = None
    for i in range(n):
        Ji = J[i]
        for j in range(n):
            if j == i:
                continue
            ij = Ji[j] - 1
            for k in range(n):
                if k == i or k == j:
                    continue
                if witness is None and J[ij][Ji[k] - 1] != Ji[J[j][k] - 1]:
                    witness = (i + 1, j + 1, k + 1)
                # second form, reading (i, j, k) as the paper's (k, j, i) roles
                if second is None and J[i][J[J[i][j] - 1][k] - 1] != J[J[i][k] - 1][j]:
                    second = (k + 1, j + 1, i + 1)
            if witness is not None and second is not None:
                break
        if witness is not None and second is not None:
            break
    return HallCheck(witness is None, witness, second is None, second)


def _check_permutation(n: int, sigma: Sequence[int]) -> tuple:
    perm = tuple(sigma)
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise NotAPermutation(f"{sigma!r} is not a permutation of 1..{n}")
    return perm


def is_automorphism(s: SteinerTripleSystem, sigma: Sequence[int]) -> bool:
    perm = _check_permutation(s.n, sigma)
    blocks = set(s.blocks)
    return all(tuple(sorted(perm[p - 1] for p in B)) in blocks for B in s.blocks)


def sigma_involution(s: SteinerTripleSystem, i: int) -> Permutation:
    return tuple(s.join(i, j) for j in s.points)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` after ``q``."""
    return tuple(p[x - 1] for x in q)


def parallel_classes(s: SteinerTripleSystem) -> list:
    """Partition blocks into classes of pairwise disjoint blocks.

    Works when disjointness is an equivalence relation on blocks (affine
    planes); raises ValueError otherwise.
    """
    remaining = list(s.blocks)
    classes = []
    while remaining:
        first = remaining[0]
        cls = [B for B in remaining if B == first or not set(B) & set(first)]
        for a, b in itertools.combinations(cls, 2):
            if set(a) & set(b):
                raise ValueError("disjointness is not transitive on this system")
        classes.append(cls)
        remaining = [B for B in remaining if B not in cls]
    return classes


# -- file format -----------------------------------------------------------

def format_sts(system: SteinerTripleSystem | BlockSet) -> str:
    base = system.base if isinstance(system, SteinerTripleSystem) else system
    lines = [str(base.n)] + [f"{a} {b} {c}" for a, b, c in base.blocks]
    return "\n".join(lines) + "\n"


def parse_blockset(text: str) -> BlockSet:
    n = None
    blocks = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        fields = body.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {body!r}") from None
        if n is None:
            if len(values) != 1:
                raise ParseError(f"line {lineno}: first line must hold the point count")
            n = values[0]
            continue
        if len(values) != 3:
            raise ParseError(f"line {lineno}: a block needs three points, got {body!r}")
        blocks.append(tuple(values))
    if n is None:
        raise ParseError("missing point count")
    return BlockSet(n, tuple(blocks))


def read_sts(path: str | Path) -> SteinerTripleSystem:
    return as_sts(parse_blockset(Path(path).read_text(encoding="utf-8")))


def write_sts(system: SteinerTripleSystem | BlockSet, path: str | Path) -> None:
    Path(path).write_text(format_sts(system), encoding="utf-8")
