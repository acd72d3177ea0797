"""Random problem instances and brute-force references.

The generators feed property suites (the selftest subcommand and the test
corpus): small layered DAGs, decodable or fully random codes on them, random
invertible mixing matrices.  The brute-force cut routines are deliberately
naive re-derivations used as ground truth against the max-flow machinery.
"""

from itertools import combinations

from slnc import construct, linalg
from slnc.errors import FieldTooSmall
from slnc.gf import Field
from slnc.lnc import LinearNetworkCode
from slnc.network import Edge, Network

EXHAUSTIVE_CAP = 3125  # q^n ceiling for instances meant for full enumeration


def random_network(rng, qs=(2, 3, 5, 7), max_edges=12) -> Network:
    """Layered random multigraph: every non-source node draws 1..3 in-edges
    from strictly earlier non-sink nodes, so all nodes are reachable and the
    graph is acyclic by construction.  q=2 gets a single sink so seed codes
    stay constructible (they need q > |T|)."""
    while True:
        q = rng.choice(list(qs))
        n_sinks = 1 if q == 2 else rng.randint(1, 2)
        mids = [f"v{i+1}" for i in range(rng.randint(0, 4))]
        sinks = [f"t{i+1}" for i in range(n_sinks)]
        edges = []

        def add(tail, head):
            i = len(edges)
            edges.append(Edge(f"e{i+1}", tail, head, i, i + 2))

        for pos, v in enumerate(mids):
            pool = ["s"] + mids[:pos]
            for _ in range(rng.randint(1, 3)):
                add(rng.choice(pool), v)
        for t in sinks:
            pool = ["s"] + mids
            for _ in range(rng.randint(1, 3)):
                add(rng.choice(pool), t)
        if len(edges) <= max_edges:
            return Network(Field(q), "s", sinks, edges)


def random_kernels(rng, net: Network, n: int) -> LinearNetworkCode:
    """Fully random local kernels; decodability is not guaranteed."""
    q = net.field.q
    kernels = {}
    for v in net.topo_nodes:
        if v in net.sinks:
            continue
        rows = n if v == net.source else len(net.in_edges[v])
        cols = len(net.out_edges[v])
        kernels[v] = [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)]
    return LinearNetworkCode(net, n, kernels)


def random_invertible(rng, field: Field, n: int) -> list:
    if n == 0:
        return []
    while True:
        M = [[rng.randrange(field.q) for _ in range(n)] for _ in range(n)]
        if linalg.rank(field, M) == n:
            return M


def random_code_instance(rng, cap=EXHAUSTIVE_CAP):
    """(net, base, Q, rate, level) with q^n small enough to enumerate all
    source inputs; roughly half the base codes are decodable seed codes, the
    rest arbitrary kernels.  Dimension and rate lean toward the interesting
    middle: the largest enumerable n and splits with both message and key
    symbols."""
    while True:
        net = random_network(rng)
        q = net.field.q
        cmin = net.c_min
        if cmin == 0:
            continue
        n_cap = 0
        while q ** (n_cap + 1) <= cap:
            n_cap += 1
        n_max = min(cmin, n_cap)
        n = n_max if rng.random() < 0.5 else rng.randint(1, n_max)
        if rng.random() < 0.5:
            try:
                base = construct.generate_base_code(net, n)
            except FieldTooSmall:
                continue
        else:
            base = random_kernels(rng, net, n)
        Q = random_invertible(rng, net.field, n)
        if n >= 2 and rng.random() < 0.6:
            rate = rng.randint(1, n - 1)
        else:
            rate = rng.randint(0, n)
        return net, base, Q, rate, n - rate


# --- brute-force cut references ----------------------------------------------


class BruteCuts:
    """Ground-truth cut queries by exhaustive removal.

    Precomputes, for every edge subset K with |K| <= max_size, the set of
    nodes reachable from the source once K is deleted; cut and primary-cut
    queries then reduce to table lookups.
    """

    def __init__(self, net: Network, max_size: int = 3):
        self.net = net
        self.ids = [e.id for e in net.edges]
        self.tail = {e.id: e.tail for e in net.edges}
        self.head = {e.id: e.head for e in net.edges}
        self.reach = {}
        for k in range(max_size + 1):
            for K in combinations(self.ids, k):
                self.reach[frozenset(K)] = self._reachable(set(K))

    def _reachable(self, removed):
        seen = {self.net.source}
        changed = True
        while changed:
            changed = False
            for e in self.net.edges:
                if e.id in removed:
                    continue
                if e.tail in seen and e.head not in seen:
                    seen.add(e.head)
                    changed = True
        return frozenset(seen)

    def is_cut(self, A, K) -> bool:
        """K separates the source from every edge of A: each member is either
        removed itself or has an unreachable tail once K is gone."""
        K = frozenset(K)
        reach = self.reach[K]
        return all(a in K or self.tail[a] not in reach for a in A)

    def min_cuts(self, A):
        A = tuple(A)
        for size in range(len(A) + 1):
            found = [K for K in combinations(self.ids, size) if self.is_cut(A, K)]
            if found:
                return found
        raise AssertionError("A always cuts itself")

    def primary_min_cut(self, A):
        """The minimum cut of A that also separates the source from every
        other minimum cut of A; its uniqueness is asserted, not assumed."""
        found = self.min_cuts(A)
        prim = [K for K in found if all(self.is_cut(B, K) for B in found)]
        assert len(prim) == 1, f"primary cut of {A} not unique: {prim}"
        return self.net.edge_set_key(prim[0])
