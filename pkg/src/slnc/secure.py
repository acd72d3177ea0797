"""Security verification for wiretapped linear network codes.

Two independent verdicts are implemented and never merged:

* the subspace criterion: the deployed code hides the message iff the span of
  the first `rate` columns of Q meets every wiretap-set kernel space only in 0;
* the exhaustive oracle: enumerate every (message, key) input, count the joint
  occurrences of (message, observed symbols), and demand that each attainable
  observation leaves the message exactly uniform.  Counts are exact integers,
  never floating-point entropies.
"""

from dataclasses import dataclass
from itertools import product

from slnc import linalg
from slnc.errors import InputError
from slnc.lnc import LinearNetworkCode
from slnc.linalg import Subspace, intersection_dim
from slnc.network import Network

EXHAUSTIVE_BUDGET = 10**6


@dataclass
class SecurityReport:
    rate: int
    level: int
    method: str  # "subspace" or "exhaustive"
    entries: list  # (edge id tuple, passed, witness or None)

    @property
    def overall(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def render_lines(self):
        lines = []
        for ids, ok, witness in self.entries:
            line = f"A={','.join(ids)} verdict={'pass' if ok else 'fail'}"
            if witness is not None:
                line += f" witness={witness}"
            lines.append(line)
        return sorted(lines)


def kernel_subspace(code: LinearNetworkCode, edge_ids) -> Subspace:
    vecs = [code.global_kernels[e] for e in edge_ids]
    return Subspace.from_vectors(code.field, code.n, vecs)


def message_subspace(field, Q: list, rate: int, n: int) -> Subspace:
    cols = linalg.columns(Q)[:rate]
    return Subspace.from_vectors(field, n, cols)


def check_secure_subspace(net: Network, base: LinearNetworkCode, Q: list, rate: int, level: int) -> SecurityReport:
    """Per wiretap set A in the size-`level` primary sets: pass iff the message
    span of Q meets the kernel span of A trivially."""
    n = rate + level
    if base.n != n:
        raise InputError(f"rate {rate} + level {level} does not match code dimension {base.n}")
    if n:
        try:
            linalg.invert(net.field, Q)
        except ValueError:
            raise InputError("matrixQ is singular") from None
    B = message_subspace(net.field, Q, rate, n)
    entries = []
    for A in net.enumerate_primary_sets(level):
        L = kernel_subspace(base, A)
        d = intersection_dim(B, L)
        entries.append((A, d == 0, None if d == 0 else f"intersection_dim={d}"))
    return SecurityReport(rate, level, "subspace", entries)


def enumerate_inputs(q: int, n: int):
    return product(range(q), repeat=n)


def check_secure_exhaustive(net: Network, deployed: LinearNetworkCode, rate: int, level: int, scope: str = "primary") -> SecurityReport:
    """Exact mutual-information oracle over all q^n source inputs.

    scope "primary" checks the size-`level` primary sets (sufficient for the
    security condition); scope "all" checks every nonempty edge subset of size
    at most `level`.
    """
    n = rate + level
    if deployed.n != n:
        raise InputError(f"rate {rate} + level {level} does not match code dimension {deployed.n}")
    q = net.field.q
    if q**n > EXHAUSTIVE_BUDGET:
        raise InputError(f"enumeration budget exceeded: q^n = {q**n}")
    if scope == "primary":
        sets = net.enumerate_primary_sets(level)
    elif scope == "all":
        sets = net.all_edge_subsets_upto(level)
    else:
        raise InputError(f"unknown scope {scope!r}")

    edge_order = [e.id for e in net.edges]
    rows = []  # (message, symbol per edge in declaration order)
    for x in enumerate_inputs(q, n):
        y = deployed.transmit(x)
        rows.append((x[:rate], tuple(y[eid] for eid in edge_order)))
    pos = {eid: k for k, eid in enumerate(edge_order)}
    messages = sorted(set(m for m, _ in rows))

    entries = []
    for A in sets:
        idx = [pos[e] for e in A]
        counts = {}
        for m, syms in rows:
            obs = tuple(syms[k] for k in idx)
            bucket = counts.setdefault(obs, {})
            bucket[m] = bucket.get(m, 0) + 1
        witness = None
        for obs in sorted(counts):
            per_m = [counts[obs].get(m, 0) for m in messages]
            if len(set(per_m)) != 1:
                obs_txt = ",".join(str(v) for v in obs)
                cnt_txt = ",".join(str(c) for c in per_m)
                witness = f"y={obs_txt};m-counts={cnt_txt}"
                break
        entries.append((tuple(A), witness is None, witness))
    return SecurityReport(rate, level, "exhaustive", entries)


def check_lemma3_equivalence(net: Network, base: LinearNetworkCode, Q: list, rate: int, level: int) -> bool:
    """True iff the subspace condition over the primary sets agrees with the
    same condition over every edge subset of size at most `level`."""
    primary_ok = check_secure_subspace(net, base, Q, rate, level).overall
    n = rate + level
    B = message_subspace(net.field, Q, rate, n)
    full_ok = True
    for A in net.all_edge_subsets_upto(level):
        if intersection_dim(B, kernel_subspace(base, A)) != 0:
            full_ok = False
            break
    return primary_ok == full_ok


@dataclass(frozen=True)
class Certificate:
    """Nonzero solution of sum_i alpha_i b_i = sum_e beta_e f_e for a wiretap
    set whose kernels are independent of each other but meet the message span."""

    edge_ids: tuple
    alpha: tuple
    beta: tuple  # aligned with edge_ids


@dataclass
class WiretapClassification:
    dependent: list  # A' sets: message span meets kernel span only in 0
    entangled: list  # A'' certificates: intersection has dimension exactly 1

    def entangled_sets(self):
        return [c.edge_ids for c in self.entangled]


def classify_wiretap_sets(net: Network, base: LinearNetworkCode, b_cols, r_plus_one: int) -> WiretapClassification:
    """Split the size-(r+1) primary sets by whether the stacked system
    [b_1 .. b_w | f_e, e in A] has a kernel vector with nonzero alpha part.

    The certificate is normalized so its first nonzero entry is 1.  The input
    columns must already form a secure pair at level r = r_plus_one - 1; that
    precondition is re-verified here rather than trusted.
    """
    field = net.field
    n = base.n
    rate = len(b_cols)
    if rate + (r_plus_one - 1) != n:
        raise InputError(f"{rate} columns with target level {r_plus_one} mismatch dimension {n}")
    B = Subspace.from_vectors(field, n, b_cols)
    for A in net.enumerate_primary_sets(r_plus_one - 1):
        if intersection_dim(B, kernel_subspace(base, A)) != 0:
            raise InputError(f"input code is not secure at level {r_plus_one - 1} (witness {','.join(A)})")
    if rate == 0:
        # nothing to protect: alpha is empty, every set lands in the first class
        return WiretapClassification(list(net.enumerate_primary_sets(r_plus_one)), [])

    dependent = []
    entangled = []
    for A in net.enumerate_primary_sets(r_plus_one):
        cols = list(b_cols) + [base.global_kernels[e] for e in A]
        M = linalg.mat_from_cols(cols)
        u = linalg.solve_nullspace_nonzero(field, M)
        assert u is not None, "n x (n+1) homogeneous system must have a kernel"
        lead = next(j for j, x in enumerate(u) if x != 0)
        scale = field.inv(u[lead])
        u = tuple(x * scale % field.q for x in u)
        alpha = u[:rate]
        beta = tuple(-x % field.q for x in u[rate:])
        if all(a == 0 for a in alpha):
            dependent.append(A)
            assert intersection_dim(B, kernel_subspace(base, A)) == 0
        else:
            entangled.append(Certificate(A, alpha, beta))
            assert intersection_dim(B, kernel_subspace(base, A)) == 1
    return WiretapClassification(dependent, entangled)


@dataclass(frozen=True)
class ForbiddenHyperplane:
    """Last-row extensions c with sum_i alpha_i c_i = lam would break security
    for the owning wiretap set; there are exactly q^(rate-1) of them."""

    alpha: tuple
    lam: int
    edge_ids: tuple

    def contains(self, field, c) -> bool:
        return linalg.vec_dot(field, self.alpha, c) == self.lam


def gamma_hyperplane(cert: Certificate, kernels_np1: dict, field) -> ForbiddenHyperplane:
    if all(a == 0 for a in cert.alpha):
        raise ValueError("certificate has zero alpha; the set is not entangled")
    lam = 0
    for e, be in zip(cert.edge_ids, cert.beta):
        lam = (lam + be * kernels_np1[e][-1]) % field.q
    return ForbiddenHyperplane(cert.alpha, lam, cert.edge_ids)
