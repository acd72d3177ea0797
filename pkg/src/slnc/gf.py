"""Exact arithmetic in prime fields F_q.

Elements are plain ints kept in canonical form 0 <= a < q; a Field instance
carries the modulus and provides the operations.  q must be prime and at most
2^31 - 1 so products stay inside 64-bit intermediates.
"""

MAX_ORDER = 2**31 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Prime field F_q."""

    __slots__ = ("q",)

    def __init__(self, q: int):
        if not isinstance(q, int):
            raise ValueError(f"field order must be an int, got {type(q).__name__}")
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds 2^31 - 1")
        if not is_prime(q):
            raise ValueError(f"field order {q} is not prime")
        self.q = q

    def elem(self, a: int) -> int:
        """Canonical representative of a."""
        return a % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.q

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("inverse of 0 requested")
        return pow(a, -1, self.q)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def __eq__(self, other):
        return isinstance(other, Field) and self.q == other.q

    def __hash__(self):
        return hash(("Field", self.q))

    def __repr__(self):
        return f"Field({self.q})"
