"""Linear network codes: local kernels, global kernels, transmission, decoding.

A code of dimension n assigns every non-sink node v a local kernel, an
|In(v)| x |Out(v)| matrix; the source uses n imaginary incoming edges
d_1..d_n which exist only as the boundary condition of the recursion
(f_{d_i} = i-th standard basis vector) and are never serialized.  Global
kernels follow the recursion f_e = sum over d in In(tail(e)) of k_{d,e} f_d
in ancestral order: topological order of tail nodes, ties broken by edge
declaration order.
"""

from slnc import linalg
from slnc.errors import InputError
from slnc.network import Network


class LinearNetworkCode:
    def __init__(self, net: Network, n: int, kernels: dict):
        self.net = net
        self.field = net.field
        if n < 0:
            raise ValueError("dimension must be nonnegative")
        self.n = n
        self.kernels = {}
        order = [net.source] + [v for v in net.topo_nodes if v != net.source]
        for v in order:
            if v in net.sinks:
                continue
            rows = n if v == net.source else len(net.in_edges[v])
            cols = len(net.out_edges[v])
            K = kernels.get(v)
            if K is None:
                if cols == 0:
                    K = [[] for _ in range(rows)]
                else:
                    raise InputError(f"missing kernel for node {v}")
            if len(K) != rows or any(len(row) != cols for row in K):
                raise InputError(
                    f"kernel at {v} must be {rows}x{cols}, got "
                    f"{len(K)}x{len(K[0]) if K else 0}"
                )
            self.kernels[v] = [[x % self.field.q for x in row] for row in K]
        for v in kernels:
            if v not in self.kernels:
                raise InputError(f"kernel given for sink or unknown node {v}")
        self.global_kernels = self._compute_global_kernels()

    def _propagate(self, boundary_rows):
        """Run the kernel recursion with the given source boundary (one row per
        output coordinate); returns edge id -> tuple."""
        width = len(boundary_rows)
        values = {}
        for e in self.net.ancestral_edges:
            v = e.tail
            j = next(k for k, oe in enumerate(self.net.out_edges[v]) if oe.id == e.id)
            K = self.kernels[v]
            if v == self.net.source:
                values[e.id] = tuple(boundary_rows[i][j] for i in range(width))
            else:
                acc = [0] * width
                for i, de in enumerate(self.net.in_edges[v]):
                    coef = K[i][j]
                    if coef:
                        fd = values[de.id]
                        acc = [(a + coef * b) % self.field.q for a, b in zip(acc, fd)]
                values[e.id] = tuple(acc)
        return values

    def _compute_global_kernels(self):
        # boundary f_{d_i} = standard basis: row i of K_s is the d_i contribution
        return self._propagate(self.kernels[self.net.source])

    def transmit(self, x):
        """Symbols on every edge for source input x (a length-n row)."""
        if len(x) != self.n:
            raise ValueError(f"input length {len(x)} for dimension {self.n}")
        q = self.field.q
        ks = self.kernels[self.net.source]
        cols = len(self.net.out_edges[self.net.source])
        syms = [sum(x[i] * ks[i][j] for i in range(self.n)) % q for j in range(cols)]
        out = self._propagate([syms])
        return {eid: v[0] for eid, v in out.items()}

    def sink_matrix(self, t):
        """F_t: columns are the global kernels of In(t), declaration order."""
        cols = [self.global_kernels[e.id] for e in self.net.in_edges[t]]
        return linalg.mat_from_cols(cols) if self.n else []

    def is_decodable(self) -> bool:
        for t in self.net.sinks:
            M = self.sink_matrix(t)
            if linalg.rank(self.field, M) != self.n:
                return False
        return True

    def decode_at_sink(self, t, y: dict):
        """The unique x with x . f_e = y_e for all e in In(t)."""
        in_edges = self.net.in_edges[t]
        A = [list(self.global_kernels[e.id]) for e in in_edges]  # rows are f_e
        b = [y[e.id] for e in in_edges]
        if linalg.rank(self.field, self.sink_matrix(t)) != self.n:
            raise ValueError(f"sink {t} cannot decode a dimension-{self.n} code")
        if self.n == 0:
            if any(v % self.field.q != 0 for v in b):
                raise ValueError("inconsistent symbols at sink")
            return ()
        x = linalg.solve_linear(self.field, A, b)
        if x is None:
            raise ValueError("inconsistent symbols at sink")
        return x

    def transform(self, Q: list) -> "LinearNetworkCode":
        """Code transformed by Q: source kernel Q K_s, others untouched."""
        m = len(Q)
        if m > self.n:
            raise ValueError("transform matrix has more rows than the dimension")
        if any(len(row) != self.n for row in Q):
            raise ValueError(f"transform matrix must have {self.n} columns")
        kernels = {v: K for v, K in self.kernels.items() if v != self.net.source}
        kernels[self.net.source] = linalg.matmul(self.field, Q, self.kernels[self.net.source]) if m else []
        return LinearNetworkCode(self.net, m, kernels)

    def truncate(self, n: int) -> "LinearNetworkCode":
        """The code [I_n | 0] applied to this one: keep the first n source rows."""
        if n > self.n or n < 0:
            raise ValueError(f"cannot truncate dimension {self.n} to {n}")
        if n == self.n:
            return self
        proj = [[1 if j == i else 0 for j in range(self.n)] for i in range(n)]
        return self.transform(proj)

    def kernels_equal_at_intermediate(self, other: "LinearNetworkCode") -> bool:
        for v in self.kernels:
            if v == self.net.source:
                continue
            if self.kernels[v] != other.kernels[v]:
                return False
        return True


def truncation_family(code: LinearNetworkCode):
    """Decodable truncations C_1 .. C_n of a decodable code, sharing all
    intermediate-node kernels."""
    if not code.is_decodable():
        raise InputError("truncation family requires a decodable code")
    return [code.truncate(n) for n in range(1, code.n + 1)]


class SecureCodeSpec:
    """A base code C_n plus an invertible n x n matrix Q and a claimed pair
    (rate, level) with rate + level = n; the deployed code is Q^{-1} C_n."""

    def __init__(self, net: Network, base: LinearNetworkCode, Q: list, rate: int, level: int, stored=None):
        if rate < 0 or level < 0 or rate + level != base.n:
            raise InputError(f"rate {rate} + level {level} must equal dimension {base.n}")
        if len(Q) != base.n or any(len(row) != base.n for row in Q):
            raise InputError(f"matrixQ must be {base.n}x{base.n}")
        self.net = net
        self.base = base
        self.Q = [[x % net.field.q for x in row] for row in Q]
        self.rate = rate
        self.level = level
        self.stored = stored if stored is not None else base
        if base.n:
            try:
                self.q_inv = linalg.invert(net.field, self.Q)
            except ValueError:
                raise InputError("matrixQ is singular") from None
        else:
            self.q_inv = []
        self._deployed = None

    @property
    def n(self) -> int:
        return self.base.n

    def b_columns(self):
        """The first `rate` columns of Q, the message-mixing directions."""
        return linalg.columns(self.Q)[: self.rate]

    def deployed(self) -> LinearNetworkCode:
        if self._deployed is None:
            self._deployed = self.base.transform(self.q_inv)
        return self._deployed


class CodeFamily:
    """An ordered collection of secure code specs on one network, meant to be
    deployed side by side: switching members must not reprogram intermediate
    nodes."""

    def __init__(self, net: Network, members: list):
        self.net = net
        self.members = list(members)

    def pairs(self):
        return [(m.rate, m.level) for m in self.members]

    def is_local_encoding_preserving(self) -> bool:
        if not self.members:
            return True
        first = self.members[0].deployed()
        return all(
            first.kernels_equal_at_intermediate(m.deployed())
            for m in self.members[1:]
        )


def parse_code(text: str, net: Network):
    """Parse the code format against a host network.

    field <q>; dimension <n>; optional rate <w> and level <r>;
    kernel <node> <rows> <cols> followed by that many rows;
    optional matrixQ <k> <k> (absent means identity).

    Returns a LinearNetworkCode when no rate/level is declared, otherwise a
    SecureCodeSpec whose base is the stored code truncated to rate+level
    (storing extra dimensions keeps headroom for security-level increments).
    """
    lines = text.splitlines()
    field = None
    dimension = None
    rate = None
    level = None
    kernels = {}
    matrix_q = None
    i = 0

    def fail(lineno, msg):
        raise InputError(f"line {lineno}: {msg}")

    def read_rows(start, count, width, what):
        rows = []
        k = start
        while len(rows) < count:
            if k >= len(lines):
                fail(len(lines), f"unexpected end of file inside {what}")
            body = lines[k].split("#", 1)[0].strip()
            k += 1
            if not body:
                continue
            entries = body.split()
            if len(entries) != width:
                fail(k, f"{what} row needs {width} entries, got {len(entries)}")
            try:
                rows.append([int(x) for x in entries])
            except ValueError:
                fail(k, f"non-integer entry in {what}")
        return rows, k

    while i < len(lines):
        line = lines[i].split("#", 1)[0].strip()
        lineno = i + 1
        i += 1
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "field":
            try:
                field = int(parts[1])
            except (IndexError, ValueError):
                fail(lineno, "field takes one integer")
        elif kind == "dimension":
            try:
                dimension = int(parts[1])
            except (IndexError, ValueError):
                fail(lineno, "dimension takes one integer")
            if dimension < 0:
                fail(lineno, "dimension must be nonnegative")
        elif kind in ("rate", "level"):
            try:
                value = int(parts[1])
            except (IndexError, ValueError):
                fail(lineno, f"{kind} takes one integer")
            if value < 0:
                fail(lineno, f"{kind} must be nonnegative")
            if kind == "rate":
                rate = value
            else:
                level = value
        elif kind == "kernel":
            if len(parts) != 4:
                fail(lineno, "kernel takes node, rows, cols")
            node = parts[1]
            try:
                r, c = int(parts[2]), int(parts[3])
            except ValueError:
                fail(lineno, "kernel shape must be integers")
            rows, i = read_rows(i, r, c, f"kernel {node}")
            if node in kernels:
                fail(lineno, f"duplicate kernel for {node}")
            kernels[node] = rows
        elif kind == "matrixQ":
            if len(parts) != 3:
                fail(lineno, "matrixQ takes rows and cols")
            try:
                r, c = int(parts[1]), int(parts[2])
            except ValueError:
                fail(lineno, "matrixQ shape must be integers")
            if r != c:
                fail(lineno, "matrixQ must be square")
            matrix_q, i = read_rows(i, r, c, "matrixQ")
            if r == 0:
                matrix_q = []
        else:
            fail(lineno, f"unknown declaration {kind!r}")

    if field is None:
        raise InputError("missing field declaration in code file")
    if field != net.field.q:
        raise InputError(f"code field {field} does not match network field {net.field.q}")
    if dimension is None:
        raise InputError("missing dimension declaration in code file")
    if (rate is None) != (level is None):
        raise InputError("rate and level must be declared together")

    source = net.source
    if source not in kernels and dimension == 0:
        kernels[source] = []
    stored = LinearNetworkCode(net, dimension, kernels)

    if rate is None:
        if matrix_q is not None:
            raise InputError("matrixQ requires rate and level")
        return stored

    n = rate + level
    if n > dimension:
        raise InputError(f"rate {rate} + level {level} exceeds stored dimension {dimension}")
    base = stored.truncate(n)
    if matrix_q is None:
        matrix_q = linalg.identity(n)
    if len(matrix_q) != n:
        raise InputError(f"matrixQ is {len(matrix_q)}x{len(matrix_q)} but rate+level is {n}")
    return SecureCodeSpec(net, base, matrix_q, rate, level, stored=stored)


def serialize_code(obj) -> str:
    """Inverse of parse_code; emits the stored kernels and, for a spec, the
    rate/level pair and Q."""
    if isinstance(obj, SecureCodeSpec):
        stored, rate, level, Q = obj.stored, obj.rate, obj.level, obj.Q
    else:
        stored, rate, level, Q = obj, None, None, None
    net = stored.net
    out = [f"field {net.field.q}", f"dimension {stored.n}"]
    if rate is not None:
        out.append(f"rate {rate}")
        out.append(f"level {level}")
    order = [net.source] + [v for v in net.topo_nodes if v != net.source]
    for v in order:
        if v not in stored.kernels:
            continue
        K = stored.kernels[v]
        cols = len(net.out_edges[v])
        if cols == 0:
            continue
        rows = len(K)
        out.append(f"kernel {v} {rows} {cols}")
        for row in K:
            out.append(" ".join(str(x) for x in row))
    if Q is not None:
        k = len(Q)
        out.append(f"matrixQ {k} {k}")
        for row in Q:
            out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"


def load_code(path, net: Network):
    with open(path, encoding="utf-8") as fh:
        return parse_code(fh.read(), net)
