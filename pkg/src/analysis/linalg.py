"""
Exact Linear Algebra
Integer diagonalization (Smith-style), integer kernels, and linear
systems over Z/2 and Z/4.

Integer matrices are lists of row lists of Python ints. Mod-2 work uses
numpy uint8 arrays.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass
class Diagonalization:
    """
    S*A*T == D with D diagonal (no divisibility requirement) and T
    unimodular. `t_inverse` is T^-1.
    """
    diagonal: list[int]        # D[i][i] for i < min(rows, cols)
    t: list[list[int]]
    t_inverse: list[list[int]]
    cols: int

    @property
    def nonzero(self) -> list[int]:
        return [i for i, d in enumerate(self.diagonal) if d]

    @property
    def rank(self) -> int:
        return len(self.nonzero)

    @property
    def divisors(self) -> list[int]:
        return sorted(abs(d) for d in self.diagonal if d)

    @property
    def torsion_free(self) -> bool:
        """Cokernel Z^cols / rowspace(A) has no torsion."""
        return all(abs(d) == 1 for d in self.diagonal if d)

    def kernel(self) -> list[list[int]]:
        """Columns of T spanning {x : A x = 0}."""
        nonzero = set(self.nonzero)
        return [[self.t[r][j] for r in range(self.cols)]
                for j in range(self.cols) if j not in nonzero]


def diagonalize(A: list[list[int]], cols: int) -> Diagonalization:
    """
    Row and column operations until A is diagonal. Only T (columns) is
    tracked; the row transform is not needed by any caller.
    """
    D = [list(row) for row in A]
    for row in D:
        if len(row) != cols:
            raise ValueError(f"row of length {len(row)} in a matrix with {cols} columns")
    m = len(D)
    T = [[int(i == j) for j in range(cols)] for i in range(cols)]
    Ti = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_combine(i1, i2, j):
        a, b = D[i1][j], D[i2][j]
        if b == 0:
            return
        if a == 0:
            D[i1], D[i2] = D[i2], D[i1]
            return
        if b % a == 0:
            q = -(b // a)
            r1, r2 = D[i1], D[i2]
            for jj in range(j, cols):
                r2[jj] += q * r1[jj]
            return
        x, y, g = xgcd(a, b)
        mbg, ag = -b // g, a // g
        r1, r2 = D[i1], D[i2]
        for jj in range(j, cols):
            aa, bb = r1[jj], r2[jj]
            r1[jj] = x * aa + y * bb
            r2[jj] = mbg * aa + ag * bb

    def col_combine(j1, j2, i):
        a, b = D[i][j1], D[i][j2]
        if b == 0:
            return
        if a == 0:
            for M in (D, T):
                for row in M:
                    row[j1], row[j2] = row[j2], row[j1]
            Ti[j1], Ti[j2] = Ti[j2], Ti[j1]
            return
        if b % a == 0:
            q = -(b // a)
            for M in (D, T):
                for row in M:
                    row[j2] += q * row[j1]
            Ti[j1] = [u - q * v for u, v in zip(Ti[j1], Ti[j2])]
            return
        x, y, g = xgcd(a, b)
        mbg, ag = -b // g, a // g
        for M in (D, T):
            for row in M:
                aa, bb = row[j1], row[j2]
                row[j1] = x * aa + y * bb
                row[j2] = mbg * aa + ag * bb
        r1, r2 = Ti[j1], Ti[j2]
        Ti[j1] = [ag * u - mbg * v for u, v in zip(r1, r2)]
        Ti[j2] = [-y * u + x * v for u, v in zip(r1, r2)]

    k = 0
    for k in range(min(m, cols)):
        while True:
            # bring a nonzero entry of the remaining block to (k, k)
            if D[k][k] == 0:
                hit = next(((i, j) for i in range(k, m) for j in range(k, cols) if D[i][j]), None)
                if hit is None:
                    break
                i, j = hit
                D[k], D[i] = D[i], D[k]
                if j != k:
                    for M in (D, T):
                        for row in M:
                            row[k], row[j] = row[j], row[k]
                    Ti[k], Ti[j] = Ti[j], Ti[k]
            for i in range(k + 1, m):
                row_combine(k, i, k)
            for j in range(k + 1, cols):
                col_combine(k, j, k)
            if all(D[i][k] == 0 for i in range(k + 1, m)) and \
                    all(D[k][j] == 0 for j in range(k + 1, cols)):
                break
        if all(D[i][j] == 0 for i in range(k, m) for j in range(k, cols)):
            break
    diagonal = [D[i][i] for i in range(min(m, cols))]
    return Diagonalization(diagonal, T, Ti, cols)


def kernel_basis(A: list[list[int]], cols: int) -> list[list[int]]:
    if not A:
        return [[int(i == j) for i in range(cols)] for j in range(cols)]
    return diagonalize(A, cols).kernel()


def rank(A: list[list[int]], cols: int) -> int:
    if not A:
        return 0
    return diagonalize(A, cols).rank


def is_saturated(vectors: list[list[int]], cols: int) -> bool:
    """The Z-span of `vectors` is a direct summand of Z^cols."""
    if not vectors:
        return True
    return diagonalize(vectors, cols).torsion_free


def same_lattice(first: list[list[int]], second: list[list[int]], cols: int) -> bool:
    """Z-spans agree: each set lies in the other's span."""
    r = rank(first, cols)
    return r == rank(second, cols) == rank(first + second, cols) and \
        _index(first, cols) == _index(first + second, cols)


def _index(vectors: list[list[int]], cols: int) -> int:
    """Product of the nonzero diagonal entries: the index in the saturation."""
    if not vectors:
        return 1
    out = 1
    for d in diagonalize(vectors, cols).divisors:
        out *= d
    return out


def mat_vec(A: list[list[int]], v: list[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


# -----------------------------------------------------------------------------
# Z/2 and Z/4
# -----------------------------------------------------------------------------

@dataclass
class ModSolution:
    solution: np.ndarray          # one solution, free unknowns set to 0
    kernel: np.ndarray            # rows span the solutions of A x = 0
    pivots: list[int]


def rref_mod2(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Z/2, pivots in the leftmost columns."""
    M = (np.asarray(M) % 2).astype(np.uint8)
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(M[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            M[[r, p]] = M[[p, r]]
        others = np.nonzero(M[:, c])[0]
        others = others[others != r]
        if others.size:
            M[others] ^= M[r]
        pivots.append(c)
        r += 1
    return M, pivots


def solve_mod2(A: np.ndarray, b: np.ndarray) -> Optional[ModSolution]:
    A = (np.asarray(A, dtype=np.int64) % 2).astype(np.uint8)
    rows, cols = A.shape if A.size else (len(b), A.shape[1] if A.ndim == 2 else 0)
    b = (np.asarray(b, dtype=np.int64) % 2).astype(np.uint8).reshape(-1, 1)
    if rows == 0:
        return ModSolution(np.zeros(cols, dtype=np.int64), np.eye(cols, dtype=np.int64), [])
    R, pivots = rref_mod2(np.hstack([A, b]))
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, p in enumerate(pivots):
        x[p] = R[i, cols]
    free = [c for c in range(cols) if c not in set(pivots)]
    kernel = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        kernel[k, f] = 1
        for i, p in enumerate(pivots):
            kernel[k, p] = R[i, f]
    return ModSolution(x, kernel, pivots)


def solve_mod4(A: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """
    One solution of A x = b over Z/4, or None.

    Write x = x0 + 2*x1. x0 solves the system mod 2; it is p + K z for the
    mod-2 particular solution p and kernel K. Then A K = 2 W (mod 4) and
    the remaining condition A x1 + W z = (b - A p)/2 is linear mod 2 in
    (x1, z), so the lift is exact.
    """
    A = np.asarray(A, dtype=np.int64) % 4
    b = np.asarray(b, dtype=np.int64) % 4
    rows, cols = A.shape
    base = solve_mod2(A, b)
    if base is None:
        return None
    p = base.solution
    K = base.kernel.T                             # cols x f
    W = ((A @ K) // 2) % 2 if K.size else np.zeros((rows, 0), dtype=np.int64)
    residual = (b - A @ p) % 4
    if np.any(residual % 2):
        raise ArithmeticError("mod-2 solution does not solve the system mod 2")
    c = residual // 2
    lifted = solve_mod2(np.hstack([A % 2, W]), c)
    if lifted is None:
        return None
    x1 = lifted.solution[:cols]
    z = lifted.solution[cols:]
    x = (p + (K @ z if K.size else 0) + 2 * x1) % 4
    if np.any((A @ x - b) % 4):
        raise ArithmeticError("lifted solution fails the mod-4 system")
    return x
