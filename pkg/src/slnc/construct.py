"""Deterministic constructions of secure code specs.

Everything here is a greedy search with a fixed scan order, so two runs on the
same inputs produce byte-identical artifacts.  Each constructor re-verifies its
own output with the subspace criterion before returning; the asserts encode
facts the constructions guarantee, so a failure is a bug, not bad input.
"""

from dataclasses import dataclass

from slnc import linalg
from slnc.errors import FieldTooSmall, InputError
from slnc.linalg import Subspace
from slnc.lnc import CodeFamily, LinearNetworkCode, SecureCodeSpec
from slnc.network import Network
from slnc.secure import (
    check_secure_subspace,
    classify_wiretap_sets,
    gamma_hyperplane,
    kernel_subspace,
)


# --- seed codes ------------------------------------------------------------


def _disjoint_paths(net: Network, t, n: int):
    """n edge-disjoint source-to-t paths as lists of edge ids, from a flow
    decomposition that always follows the lowest-numbered carrying arc."""
    arcs = net._flow_arcs()
    value, flows = Network._max_flow(arcs, net.source, t)
    if value < n:
        raise InputError(f"sink {t} admits only {value} disjoint paths, need {n}")
    used = [False] * len(arcs)
    paths = []
    for _ in range(n):
        path = []
        u = net.source
        while u != t:
            i = next(
                k
                for k, (a, _b, _c, _e) in enumerate(arcs)
                if a == u and flows[k] == 1 and not used[k]
            )
            used[i] = True
            path.append(arcs[i][3])
            u = arcs[i][1]
        paths.append(path)
    return paths


def generate_base_code(net: Network, n=None) -> LinearNetworkCode:
    """Greedy decodable code of dimension n (default C_min).

    Walk the edges in ancestral order; whenever an edge sits on one of the
    chosen disjoint paths, its global kernel must stay outside the span of the
    other active kernels of every sink waiting on it.  A suitable local
    coefficient vector exists whenever q exceeds the sink count; the scan takes
    the lexicographically first one.  Edges on no path keep zero kernels.
    """
    profile = net.validate()
    if n is None:
        n = profile.c_min
    if n < 0 or n > profile.c_min:
        raise InputError(f"dimension {n} outside 0..C_min={profile.c_min}")
    if net.field.q <= len(net.sinks):
        raise FieldTooSmall(
            f"seed generation needs q > {len(net.sinks)} sinks, got q={net.field.q}"
        )
    q = net.field.q
    kernels = {}
    for v in net.nodes:
        if v in net.sinks:
            continue
        rows = n if v == net.source else len(net.in_edges[v])
        kernels[v] = [[0] * len(net.out_edges[v]) for _ in range(rows)]
    if n == 0:
        return LinearNetworkCode(net, 0, kernels)

    paths = {t: _disjoint_paths(net, t, n) for t in net.sinks}
    basis = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    frontier = {t: list(basis) for t in net.sinks}
    pos = {t: [0] * n for t in net.sinks}
    fvals = {}

    for e in net.ancestral_edges:
        v = e.tail
        waiting = []
        for t in net.sinks:
            for j in range(n):
                p = paths[t][j]
                k = pos[t][j]
                if k < len(p) and p[k] == e.id:
                    waiting.append((t, j))
        if v == net.source:
            inputs = basis
        else:
            inputs = [fvals[d.id] for d in net.in_edges[v]]
        others = [
            Subspace.from_vectors(net.field, n, frontier[t][:j] + frontier[t][j + 1 :])
            for t, j in waiting
        ]
        chosen = None
        for i in range(q ** len(inputs)):
            coefs = linalg.int_to_vec(i, q, len(inputs))
            f = tuple(
                sum(c * w[k] for c, w in zip(coefs, inputs)) % q for k in range(n)
            )
            if all(not S.membership(f) for S in others):
                chosen = (coefs, f)
                break
        if chosen is None:
            raise FieldTooSmall(f"no workable coefficients at edge {e.id} over F_{q}")
        coefs, f = chosen
        col = next(k for k, oe in enumerate(net.out_edges[v]) if oe.id == e.id)
        for row, c in enumerate(coefs):
            kernels[v][row][col] = c
        fvals[e.id] = f
        for t, j in waiting:
            frontier[t][j] = f
            pos[t][j] += 1

    code = LinearNetworkCode(net, n, kernels)
    assert code.is_decodable()
    return code


# --- fixed (rate, level) pair ----------------------------------------------


def build_fixed_pair(net: Network, base: LinearNetworkCode, rate: int, level: int) -> SecureCodeSpec:
    """A spec at (rate, level) on the given base code: greedily pick the
    message-mixing columns outside every wiretap span, then pad with standard
    basis vectors to make Q invertible."""
    n = rate + level
    if rate < 0 or level < 0:
        raise InputError("rate and level must be nonnegative")
    if base.n != n:
        raise InputError(f"base code has dimension {base.n}, pair needs {n}")
    if not base.is_decodable():
        raise InputError("base code is not decodable")
    field = net.field
    if rate == 0 or level == 0:
        Q = linalg.identity(n)
    else:
        spans = [kernel_subspace(base, A) for A in net.enumerate_primary_sets(level)]
        cols = []
        for _ in range(rate):
            B = Subspace.from_vectors(field, n, cols)
            avoid = [B.sum(L) for L in spans] if spans else [B]
            cols.append(linalg.pick_vector_avoiding(field, n, avoid))
        for j in range(n):
            if len(cols) == n:
                break
            ej = tuple(1 if k == j else 0 for k in range(n))
            if not Subspace.from_vectors(field, n, cols).membership(ej):
                cols.append(ej)
        Q = linalg.mat_from_cols(cols)
    spec = SecureCodeSpec(net, base, Q, rate, level)
    assert check_secure_subspace(net, base, Q, rate, level).overall
    return spec


# --- security-level increment ----------------------------------------------


@dataclass
class Alg2Trace:
    """Everything the increment loop decided, for inspection and testing."""

    order: list  # entangled sets in processing order
    saved: dict  # edge ids -> (alpha, lambda)
    steps: list  # per entangled set: dict with tau, h, xi, c_star snapshot
    c_star: tuple
    theta: int
    c: tuple


def alg2_increment_level(net: Network, c_n: LinearNetworkCode, c_np1: LinearNetworkCode,
                         Q: list, rate: int, level: int, verify_input=True):
    """Extend a spec secure at (rate, level) on C_n to one secure at
    (rate, level+1) on C_{n+1}, reusing the old Q as the top-left block.

    Returns (spec, trace).  Requires q to exceed the number of entangled
    wiretap sets at the next level; smaller fields raise FieldTooSmall.
    """
    field = net.field
    q = field.q
    n = rate + level
    if c_n.n != n:
        raise InputError(f"C_n has dimension {c_n.n}, rate+level is {n}")
    if c_np1.n != n + 1:
        raise InputError(f"C_(n+1) has dimension {c_np1.n}, expected {n + 1}")
    if n + 1 > net.c_min:
        raise InputError(f"dimension {n + 1} exceeds C_min={net.c_min}")
    if c_np1.truncate(n).kernels != c_n.kernels:
        raise InputError("the two base codes are not a truncation pair")
    if not c_np1.is_decodable():
        raise InputError("base code is not decodable")
    if len(Q) != n or any(len(row) != n for row in Q):
        raise InputError(f"matrixQ must be {n}x{n}")
    if verify_input and not check_secure_subspace(net, c_n, Q, rate, level).overall:
        raise InputError(f"input spec is not secure at ({rate},{level})")

    b_cols = linalg.columns(Q)[:rate]
    cls = classify_wiretap_sets(net, c_n, b_cols, level + 1)
    if q <= len(cls.entangled):
        raise FieldTooSmall(
            f"level increment needs q > {len(cls.entangled)} entangled sets, got q={q}"
        )

    c_star = tuple([0] * rate)
    processed = []
    saved = {}
    steps = []
    for cert in cls.entangled:
        hp = gamma_hyperplane(cert, c_np1.global_kernels, field)
        saved[cert.edge_ids] = (cert.alpha, hp.lam)
        tau = linalg.vec_dot(field, cert.alpha, c_star)
        h = None
        xi = None
        if tau == 0:
            lead = next(i for i, a in enumerate(cert.alpha) if a != 0)
            h = tuple(1 if i == lead else 0 for i in range(rate))
            if not processed:
                c_star = h
            else:
                pairs = [
                    (
                        linalg.vec_dot(field, b.alpha, c_star),
                        linalg.vec_dot(field, b.alpha, h),
                    )
                    for b in processed
                ]
                xi = next(
                    (x for x in range(q) if all((x * tb + pb) % q != 0 for tb, pb in pairs)),
                    None,
                )
                assert xi is not None, "field-size guard promised a workable scale"
                c_star = tuple((xi * cs + hv) % q for cs, hv in zip(c_star, h))
        processed.append(cert)
        assert all(linalg.vec_dot(field, b.alpha, c_star) != 0 for b in processed)
        steps.append({"A": cert.edge_ids, "tau": tau, "h": h, "xi": xi, "c_star": c_star})

    theta = next(
        (
            x
            for x in range(q)
            if all(
                (x * linalg.vec_dot(field, cert.alpha, c_star)) % q
                != saved[cert.edge_ids][1]
                for cert in processed
            )
        ),
        None,
    )
    assert theta is not None, "field-size guard promised a workable scalar"
    c = tuple(x * theta % q for x in c_star)

    cols = linalg.columns(Q)
    new_cols = [
        tuple(cols[i]) + ((c[i],) if i < rate else (0,)) for i in range(n)
    ]
    new_cols.append(tuple([0] * n) + (1,))
    q_next = linalg.mat_from_cols(new_cols)
    spec = SecureCodeSpec(net, c_np1, q_next, rate, level + 1)
    assert check_secure_subspace(net, c_np1, q_next, rate, level + 1).overall
    trace = Alg2Trace([c.edge_ids for c in processed], saved, steps, c_star, theta, c)
    return spec, trace


# --- one Q for every split of a fixed dimension ------------------------------


def alg3_fixed_dimension(net: Network, base: LinearNetworkCode, n: int):
    """Specs (n-r, r) for r = 0..n sharing a single Q: column i is picked
    outside the span of the earlier columns joined with every wiretap span at
    level n-i, so each prefix of columns is a valid message mix."""
    if base.n != n:
        raise InputError(f"base code has dimension {base.n}, expected {n}")
    if n > net.c_min:
        raise InputError(f"dimension {n} exceeds C_min={net.c_min}")
    if not base.is_decodable():
        raise InputError("base code is not decodable")
    field = net.field
    if n == 0:
        return [SecureCodeSpec(net, base, [], 0, 0)]
    cols = []
    for i in range(1, n + 1):
        r = n - i
        B = Subspace.from_vectors(field, n, cols)
        avoid = [B]
        if r >= 1:
            for A in net.enumerate_primary_sets(r):
                avoid.append(B.sum(kernel_subspace(base, A)))
        cols.append(linalg.pick_vector_avoiding(field, n, avoid))
    Q = linalg.mat_from_cols(cols)
    specs = []
    for r in range(n + 1):
        spec = SecureCodeSpec(net, base, Q, n - r, r)
        assert check_secure_subspace(net, base, Q, n - r, r).overall
        specs.append(spec)
    return specs


# --- families ----------------------------------------------------------------


def family_fixed_rate(net: Network, top: LinearNetworkCode, rate: int) -> CodeFamily:
    """Members (rate, 0) .. (rate, C_min - rate) on the truncations of one
    dimension-C_min code, produced by repeated level increments so that every
    member reuses the previous member's Q as a block."""
    cmin = net.c_min
    if top.n != cmin:
        raise InputError(f"family base must have dimension C_min={cmin}, got {top.n}")
    if rate < 0 or rate > cmin:
        raise InputError(f"rate {rate} outside 0..C_min={cmin}")
    if not top.is_decodable():
        raise InputError("base code is not decodable")
    bases = {m: top.truncate(m) for m in range(rate, cmin + 1)}
    first = SecureCodeSpec(net, bases[rate], linalg.identity(rate), rate, 0)
    assert check_secure_subspace(net, bases[rate], first.Q, rate, 0).overall
    members = [first]
    for level in range(cmin - rate):
        n = rate + level
        spec, _ = alg2_increment_level(
            net, bases[n], bases[n + 1], members[-1].Q, rate, level
        )
        members.append(spec)
    return CodeFamily(net, members)


@dataclass
class RegionFamily:
    net: Network
    tag: str
    members: dict  # (rate, level) -> SecureCodeSpec

    def sorted_pairs(self):
        return sorted(self.members)

    def as_family(self) -> CodeFamily:
        return CodeFamily(self.net, [self.members[k] for k in self.sorted_pairs()])

    def is_local_encoding_preserving(self) -> bool:
        return self.as_family().is_local_encoding_preserving()


REGION_TAGS = ("construction-2", "construction-3")


def region_family(net: Network, top: LinearNetworkCode, tag: str) -> RegionFamily:
    """One spec per admissible pair (rate, level), rate + level <= C_min, all
    sharing the intermediate kernels of one base code.

    construction-2 stacks fixed-rate families; construction-3 shares one Q per
    dimension across every split of that dimension.
    """
    if tag == "construction-1":
        raise InputError(
            "construction-1 is not available: it needs a rate-flexible primitive "
            "at fixed level; use construction-2 or construction-3"
        )
    if tag not in REGION_TAGS:
        raise InputError(f"unknown construction tag {tag!r}")
    cmin = net.c_min
    if top.n != cmin:
        raise InputError(f"region base must have dimension C_min={cmin}, got {top.n}")
    if not top.is_decodable():
        raise InputError("base code is not decodable")
    need = len(net.sinks)
    for r in range(1, cmin):
        need = max(need, len(net.enumerate_primary_sets(r)))
    if net.field.q <= need:
        raise FieldTooSmall(f"region construction needs q > {need}, got q={net.field.q}")

    members = {}
    if tag == "construction-2":
        for rate in range(cmin + 1):
            for m in family_fixed_rate(net, top, rate).members:
                members[(m.rate, m.level)] = m
    else:
        members[(0, 0)] = SecureCodeSpec(net, top.truncate(0), [], 0, 0)
        for n in range(1, cmin + 1):
            for m in alg3_fixed_dimension(net, top.truncate(n), n):
                members[(m.rate, m.level)] = m

    expected = {(w, r) for w in range(cmin + 1) for r in range(cmin + 1 - w)}
    assert set(members) == expected
    fam = RegionFamily(net, tag, members)
    assert fam.is_local_encoding_preserving()
    return fam
