"""Small dense exact linear algebra over Fractions.

Matrices are tuples of row tuples, vectors are flat tuples. Start vectors are
multiplied from the left (``x @ M``), end vectors from the right (``M @ f``).
Everything here is immutable and allocation-happy; dimensions stay below 30.
"""

from fractions import Fraction
from hashlib import sha256
from typing import Sequence

Matrix = tuple  # tuple[tuple[Fraction, ...], ...]
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def matrix(rows) -> Matrix:
    rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    return rows


def vector(xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def dim(m: Matrix) -> int:
    return len(m)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def constant(n: int, value) -> Matrix:
    value = Fraction(value)
    return tuple((value,) * n for _ in range(n))


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt) for row in a)


def vecmat(x: Vector, m: Matrix) -> Vector:
    n = len(m)
    out = [ZERO] * n
    for xi, row in zip(x, m):
        if xi:
            for j, mij in enumerate(row):
                if mij:
                    out[j] += xi * mij
    return tuple(out)


def matvec(m: Matrix, f: Vector) -> Vector:
    return tuple(dot(row, f) for row in m)


def dot(x: Vector, y: Vector) -> Fraction:
    return sum((a * b for a, b in zip(x, y) if a and b), ZERO)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, m: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in m)


def row_sums(m: Matrix) -> Vector:
    return tuple(sum(row, ZERO) for row in m)


def col_sums(m: Matrix) -> Vector:
    return tuple(sum(col, ZERO) for col in zip(*m))


def product(mats: Sequence[Matrix], n: int) -> Matrix:
    out = identity(n)
    for m in mats:
        out = matmul(out, m)
    return out


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ValueError if singular."""
    n = len(m)
    aug = [list(row) + list(urow) for row, urow in zip(m, identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def min_entry(m: Matrix) -> Fraction:
    return min(min(row) for row in m)


def checksum(m) -> str:
    """sha256 over the canonical ``p/q`` text of a matrix or vector."""
    if m and isinstance(m[0], tuple):
        text = ";".join(",".join(f"{x.numerator}/{x.denominator}" for x in row) for row in m)
    else:
        text = ",".join(f"{x.numerator}/{x.denominator}" for x in m)
    return sha256(text.encode()).hexdigest()
