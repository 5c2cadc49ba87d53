"""
Linear algebra over Z/p: small matrix groups, Singer cycles, linear systems
and discrete logarithms

Vectors are rows and matrices act on the right, so ``v * (A * B)`` equals
``(v * A) * B``, matching the left-to-right product of permutations.
"""

from dataclasses import dataclass
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from sympy import isprime
from sympy.ntheory.modular import crt

from cubefree.core.config import get_config
from cubefree.core.errors import PreconditionError, SingularMatrixError, UnsupportedPrimeError
from cubefree.core.grouptheory import factor_integer

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class FpMatrix:
    """Square matrix of dimension 1 or 2 over Z/p, residues stored in [0, p)"""

    p: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(x % self.p for x in row) for row in self.entries))

    @classmethod
    def identity(cls, p: int, dim: int = 2) -> "FpMatrix":
        return cls(p, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def scalar(cls, p: int, value: int, dim: int = 2) -> "FpMatrix":
        return cls(p, tuple(tuple(value if i == j else 0 for j in range(dim)) for i in range(dim)))

    @classmethod
    def diagonal(cls, p: int, a: int, b: int) -> "FpMatrix":
        return cls(p, ((a, 0), (0, b)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __mul__(self, other: "FpMatrix") -> "FpMatrix":
        a, b, p = self.entries, other.entries, self.p
        n = len(a)
        return FpMatrix(p, tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)) for i in range(n)))

    def det(self) -> int:
        e = self.entries
        if self.dim == 1:
            return e[0][0]
        return (e[0][0] * e[1][1] - e[0][1] * e[1][0]) % self.p

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.dim)) % self.p

    def is_invertible(self) -> bool:
        return self.det() != 0

    def inverse(self) -> "FpMatrix":
        d = self.det()
        if d == 0:
            raise SingularMatrixError(f"singular matrix {self.entries} mod {self.p}")
        inv = pow(d, -1, self.p)
        e = self.entries
        if self.dim == 1:
            return FpMatrix(self.p, ((inv,),))
        return FpMatrix(self.p, ((e[1][1] * inv, -e[0][1] * inv), (-e[1][0] * inv, e[0][0] * inv)))

    def __pow__(self, exponent: int) -> "FpMatrix":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FpMatrix.identity(self.p, self.dim)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def is_identity(self) -> bool:
        return self == FpMatrix.identity(self.p, self.dim)

    def act(self, vector: Sequence[int]) -> Vector:
        """Row vector times matrix"""
        n, p = self.dim, self.p
        return tuple(sum(vector[k] * self.entries[k][j] for k in range(n)) % p for j in range(n))

    def conjugate(self, other: "FpMatrix") -> "FpMatrix":
        """other^-1 * self * other"""
        return other.inverse() * self * other

    def order(self) -> int:
        return matrix_order(self)

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def __lt__(self, other: "FpMatrix") -> bool:
        return self.entries < other.entries

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self.to_list()})"


def matrix_order(matrix: FpMatrix) -> int:
    """Least k >= 1 with matrix^k the identity"""
    if not matrix.is_invertible():
        raise SingularMatrixError(f"singular matrix {matrix.entries} mod {matrix.p}")
    identity = FpMatrix.identity(matrix.p, matrix.dim)
    power, k = matrix, 1
    while power != identity:
        power = power * matrix
        k += 1
    return k


@dataclass(frozen=True)
class GLProductElement:
    """Element of a product of GL_1 and GL_2 factors; multiplication is componentwise"""

    components: Tuple[FpMatrix, ...]

    @classmethod
    def identity(cls, signature: Sequence[Tuple[int, int]]) -> "GLProductElement":
        return cls(tuple(FpMatrix.identity(p, d) for p, d in signature))

    @property
    def signature(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((m.p, m.dim) for m in self.components)

    def __mul__(self, other: "GLProductElement") -> "GLProductElement":
        if self.signature != other.signature:
            raise PreconditionError("GL product signatures differ")
        return GLProductElement(tuple(a * b for a, b in zip(self.components, other.components)))

    def inverse(self) -> "GLProductElement":
        return GLProductElement(tuple(m.inverse() for m in self.components))

    def __pow__(self, exponent: int) -> "GLProductElement":
        return GLProductElement(tuple(m ** exponent for m in self.components))

    def conjugate(self, other: "GLProductElement") -> "GLProductElement":
        return other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(m.is_identity() for m in self.components)

    def to_list(self) -> List[List[List[int]]]:
        return [m.to_list() for m in self.components]


@dataclass(frozen=True)
class SingerCycle:
    p: int
    s: FpMatrix

    def subgroup_generator(self, r: int) -> FpMatrix:
        """Generator s^((p^2-1)/r) of the unique subgroup of order r"""
        n = self.p * self.p - 1
        if n % r:
            raise PreconditionError(f"{r} does not divide {n}")
        return self.s ** (n // r)


def companion_matrix(p: int, c0: int, c1: int) -> FpMatrix:
    """Multiplication by x on F_p[x]/(x^2 - c1 x - c0) in the basis (1, x)"""
    return FpMatrix(p, ((0, 1), (c0, c1)))


def singer_cycle(p: int) -> SingerCycle:
    """
    Generator of a cyclic subgroup of GL_2(p) of order p^2 - 1

    Companion matrices are scanned with the constant coefficient first,
    then the linear one, both ascending; the first of full order wins.
    """
    if p == 2 or not isprime(p):
        raise UnsupportedPrimeError(f"Singer cycles are built for odd primes only, got {p}")
    target = p * p - 1
    for c0 in range(1, p):
        for c1 in range(p):
            m = companion_matrix(p, c0, c1)
            if matrix_order(m) == target:
                return SingerCycle(p, m)
    raise UnsupportedPrimeError(f"no primitive companion matrix mod {p}")


def gl_elements(p: int, dim: int = 2) -> Iterator[FpMatrix]:
    """All invertible dim x dim matrices mod p in lexicographic order"""
    for values in product(range(p), repeat=dim * dim):
        m = FpMatrix(p, tuple(tuple(values[i * dim:(i + 1) * dim]) for i in range(dim)))
        if m.det():
            yield m


def _rref(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form mod p and the pivot columns"""
    m = matrix.astype(np.int64) % p
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(m[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def _solve_prime(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    rows, cols = a.shape
    augmented = np.concatenate([a % p, (b % p).reshape(rows, 1)], axis=1)
    reduced, pivots = _rref(augmented, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = reduced[row, cols]
    return x


def nullspace_mod_p(a: np.ndarray, p: int) -> List[np.ndarray]:
    """Basis of {x : a x = 0 mod p}"""
    rows, cols = a.shape
    reduced, pivots = _rref(a, p)
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        v = np.zeros(cols, dtype=np.int64)
        v[free] = 1
        for row, c in enumerate(pivots):
            v[c] = (-reduced[row, free]) % p
        basis.append(v)
    return basis


def _solve_prime_square(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """
    Solve a x = b mod p^2 exactly

    Every solution reduces mod p to x0 + (kernel mod p); the correction
    x0 + sum(l_i k_i) + p x1 is itself a linear system mod p in (x1, l).
    """
    q = p * p
    a = a % q
    b = b % q
    x0 = _solve_prime(a, b, p)
    if x0 is None:
        return None
    kernel = nullspace_mod_p(a, p)
    c = ((b - a @ x0) % q) // p
    columns = [a % p]
    if kernel:
        columns.append(np.stack([((a @ k) % q) // p for k in kernel], axis=1))
    y = _solve_prime(np.concatenate(columns, axis=1), c, p)
    if y is None:
        return None
    cols = a.shape[1]
    x = x0 + p * y[:cols]
    for coeff, k in zip(y[cols:], kernel):
        x = x + int(coeff) * k
    return x % q


def solve_linear_system(a: Sequence[Sequence[int]], b: Sequence[int], modulus: int) -> Optional[np.ndarray]:
    """
    One solution of a x = b over Z/modulus, or None when inconsistent

    The modulus may be any cube-free integer; prime-power components are
    solved separately and recombined by the Chinese remainder theorem.
    """
    a = np.array(a, dtype=np.int64)
    b = np.array(b, dtype=np.int64)
    if a.ndim != 2:
        a = a.reshape(len(b), -1)
    rows, cols = a.shape
    if b.shape != (rows,):
        raise PreconditionError(f"matrix has {rows} rows but the right-hand side has {b.shape[0]} entries")
    if modulus == 1:
        return np.zeros(cols, dtype=np.int64)
    if cols == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(b % modulus) else None
    moduli, parts = [], []
    for p, e in factor_integer(modulus):
        if e == 1:
            x = _solve_prime(a, b, p)
        elif e == 2:
            x = _solve_prime_square(a, b, p)
        else:
            raise PreconditionError(f"modulus {modulus} is not cube-free")
        if x is None:
            logger.trace(f"linear system inconsistent mod {p}^{e}")
            return None
        moduli.append(p ** e)
        parts.append(x)
    if len(moduli) == 1:
        return parts[0] % modulus
    solution = [int(crt(moduli, [int(x[i]) for x in parts])[0]) for i in range(cols)]
    return np.array(solution, dtype=np.int64)


def discrete_log(base: int, target: int, modulus: int, bound: Optional[int] = None) -> Optional[int]:
    """Least e >= 0 with base^e = target mod modulus, by walking the powers of base"""
    if bound is None:
        bound = get_config().discrete_log_bound
    base %= modulus
    target %= modulus
    value, e = 1 % modulus, 0
    while e <= bound:
        if value == target:
            return e
        value = value * base % modulus
        e += 1
        if value == 1 % modulus:
            return None
    return None
