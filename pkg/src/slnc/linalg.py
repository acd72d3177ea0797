"""Vectors, matrices, and subspaces over a prime field.

Matrices are lists of row lists of canonical ints; vectors are tuples.  All
elimination is deterministic: pivots are the first nonzero entry scanning rows
top-down, free variables are assigned in ascending column order.  That makes
every derived object reproducible bit-for-bit.
"""

from slnc.errors import FieldTooSmall
from slnc.gf import Field


def zeros(rows: int, cols: int) -> list:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_from_cols(cols) -> list:
    cols = [list(c) for c in cols]
    if not cols:
        return []
    rows = len(cols[0])
    return [[c[i] for c in cols] for i in range(rows)]


def columns(M: list) -> list:
    if not M:
        return []
    return [tuple(row[j] for row in M) for j in range(len(M[0]))]


def matmul(F: Field, A: list, B: list) -> list:
    q = F.q
    if A and B and len(A[0]) != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{len(A[0])} times {len(B)}x{len(B[0])}")
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        out.append([sum(row[k] * B[k][j] for k in range(len(row))) % q for j in range(n)])
    return out


def matvec(F: Field, A: list, v) -> tuple:
    q = F.q
    if A and len(A[0]) != len(v):
        raise ValueError("shape mismatch in matvec")
    return tuple(sum(row[k] * v[k] for k in range(len(v))) % q for row in A)


def vec_dot(F: Field, u, v) -> int:
    if len(u) != len(v):
        raise ValueError("length mismatch in dot product")
    return sum(a * b for a, b in zip(u, v)) % F.q


def vec_add(F: Field, u, v) -> tuple:
    return tuple((a + b) % F.q for a, b in zip(u, v))


def vec_scale(F: Field, c: int, v) -> tuple:
    return tuple(c * a % F.q for a in v)


def _eliminate(F: Field, M: list):
    """Row-reduce M in place to reduced row echelon form; return pivot columns."""
    q = F.q
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    prow = 0
    for col in range(cols):
        hit = None
        for i in range(prow, rows):
            if M[i][col] % q != 0:
                hit = i
                break
        if hit is None:
            continue
        M[prow], M[hit] = M[hit], M[prow]
        pinv = F.inv(M[prow][col])
        M[prow] = [x * pinv % q for x in M[prow]]
        for i in range(rows):
            if i != prow and M[i][col] % q != 0:
                factor = M[i][col] % q
                M[i] = [(a - factor * b) % q for a, b in zip(M[i], M[prow])]
        pivots.append(col)
        prow += 1
        if prow == rows:
            break
    return pivots


def rref(F: Field, M: list):
    R = [[x % F.q for x in row] for row in M]
    pivots = _eliminate(F, R)
    return R, pivots


def rank(F: Field, M: list) -> int:
    if not M or not M[0]:
        return 0
    _, pivots = rref(F, M)
    return len(pivots)


def invert(F: Field, M: list) -> list:
    """Inverse of a square matrix; raises ValueError when singular."""
    n = len(M)
    if n == 0:
        return []
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    aug = [[x % F.q for x in row] + identity(n)[i] for i, row in enumerate(M)]
    pivots = _eliminate(F, aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in aug]


def solve_nullspace_nonzero(F: Field, M: list):
    """Deterministic nonzero kernel vector of M, or None when the kernel is trivial.

    The first free column (ascending order) is set to 1 and all other free
    columns to 0; pivot variables follow by back substitution.
    """
    if not M:
        raise ValueError("matrix with no rows has unconstrained width")
    cols = len(M[0])
    R, pivots = rref(F, M)
    free = [j for j in range(cols) if j not in pivots]
    if not free:
        return None
    j0 = free[0]
    v = [0] * cols
    v[j0] = 1
    for i, p in enumerate(pivots):
        v[p] = -R[i][j0] % F.q
    return tuple(v)


def solve_linear(F: Field, A: list, b):
    """One solution x of A x = b with free variables set to 0, or None if inconsistent."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    aug = [[x % F.q for x in A[i]] + [b[i] % F.q] for i in range(rows)]
    pivots = _eliminate(F, aug)
    if cols in pivots:
        return None
    x = [0] * cols
    for i, p in enumerate(pivots):
        x[p] = aug[i][cols]
    return tuple(x)


class Subspace:
    """Span of finitely many vectors, stored as a canonical reduced basis."""

    __slots__ = ("field", "n", "basis")

    def __init__(self, field: Field, n: int, basis):
        self.field = field
        self.n = n
        self.basis = tuple(tuple(v) for v in basis)

    @classmethod
    def from_vectors(cls, field: Field, n: int, vectors):
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise ValueError(f"vector length {len(v)} in ambient dimension {n}")
        if not vectors:
            return cls(field, n, [])
        R, pivots = rref(field, vectors)
        return cls(field, n, [tuple(R[i]) for i in range(len(pivots))])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v):
        """Residue of v after elimination against the basis."""
        q = self.field.q
        v = [x % q for x in v]
        for row in self.basis:
            lead = next(j for j, x in enumerate(row) if x != 0)
            if v[lead] != 0:
                c = v[lead]
                v = [(a - c * b) % q for a, b in zip(v, row)]
        return tuple(v)

    def membership(self, v) -> bool:
        if len(v) != self.n:
            raise ValueError(f"vector length {len(v)} in ambient dimension {self.n}")
        return all(x == 0 for x in self.reduce(v))

    def sum(self, other: "Subspace") -> "Subspace":
        if self.n != other.n or self.field != other.field:
            raise ValueError("subspace sum across different ambient spaces")
        return Subspace.from_vectors(self.field, self.n, list(self.basis) + list(other.basis))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.n == other.n
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.n, self.basis))

    def __repr__(self):
        return f"Subspace(q={self.field.q}, n={self.n}, dim={self.dim})"


def intersection_dim(S: Subspace, T: Subspace) -> int:
    if S.n != T.n or S.field != T.field:
        raise ValueError("intersection across different ambient spaces")
    return S.dim + T.dim - S.sum(T).dim


def int_to_vec(i: int, q: int, n: int) -> tuple:
    """Digits of i base q, most significant first, as an n-vector."""
    v = [0] * n
    for k in range(n - 1, -1, -1):
        v[k] = i % q
        i //= q
    return tuple(v)


def pick_vector_avoiding(F: Field, n: int, subspaces, rng=None):
    """First vector (lexicographic, most significant digit first) outside every subspace.

    With an empty avoid list the zero vector is returned.  A seeded rng switches
    to random sampling for field-size stress tests; determinism then rests on
    the seed alone.
    """
    subspaces = list(subspaces)
    if not subspaces:
        return tuple([0] * n)
    total = F.q**n
    if rng is not None:
        for _ in range(4 * total):
            v = tuple(rng.randrange(F.q) for _ in range(n))
            if not any(S.membership(v) for S in subspaces):
                return v
        raise FieldTooSmall(f"random search exhausted in F_{F.q}^{n}")
    for i in range(total):
        v = int_to_vec(i, F.q, n)
        if not any(S.membership(v) for S in subspaces):
            return v
    raise FieldTooSmall(f"no vector in F_{F.q}^{n} avoids all {len(subspaces)} subspaces")
