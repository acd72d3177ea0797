"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 malformed or inconsistent
input, 3 field-size guard violation.  All output is plain text with stable
ordering; identical inputs give byte-identical outputs and files.
"""

import argparse
import os
import random
import sys

from slnc import construct, secure
from slnc.errors import FieldTooSmall, InputError
from slnc.figures import render_region_figure
from slnc.lnc import SecureCodeSpec, load_code, serialize_code
from slnc.network import load_network

CONSTRUCT_MODES = (
    "pair",
    "increment",
    "fixed-dim",
    "family-rate",
    "region-c2",
    "region-c3",
    "construction-1",
)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="slnc", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    net_p = sub.add_parser("net", help="inspect network files")
    net_sub = net_p.add_subparsers(dest="subcommand", required=True)
    info = net_sub.add_parser("info", help="validation summary and cut capacities")
    info.add_argument("net")
    info.set_defaults(func=cmd_net_info)
    prim = net_sub.add_parser("primary-sets", help="primary edge subsets of one size")
    prim.add_argument("net")
    prim.add_argument("--r", type=int, required=True, help="subset size, 0..C_min")
    prim.set_defaults(func=cmd_net_primary_sets)

    code_p = sub.add_parser("code", help="construct, verify, and run codes")
    code_sub = code_p.add_subparsers(dest="subcommand", required=True)

    cons = code_sub.add_parser("construct", help="build secure code specs")
    cons.add_argument("net")
    cons.add_argument("--mode", required=True, choices=CONSTRUCT_MODES)
    cons.add_argument("--out", required=True, help="output directory")
    cons.add_argument("--in", dest="in_file", help="base or spec code file")
    cons.add_argument("--rate", type=int)
    cons.add_argument("--level", type=int)
    cons.add_argument("--n", type=int)
    cons.set_defaults(func=cmd_code_construct)

    ver = code_sub.add_parser("verify", help="decodability and security report")
    ver.add_argument("code")
    ver.add_argument("net")
    ver.add_argument("--exhaustive", action="store_true",
                     help="exact enumeration oracle instead of the subspace criterion")
    ver.add_argument("--scope", choices=("primary", "all"), default="primary",
                     help="wiretap sets checked by --exhaustive")
    ver.set_defaults(func=cmd_code_verify)

    trans = code_sub.add_parser("transmit", help="simulate one transmission")
    trans.add_argument("code")
    trans.add_argument("net")
    trans.add_argument("--message", default="", help="comma-separated symbols")
    trans.add_argument("--key", default="", help="comma-separated symbols")
    trans.add_argument("--tap", default="", help="edge ids to mark as wiretapped")
    trans.set_defaults(func=cmd_code_transmit)

    selftest = sub.add_parser("selftest", help="randomized cross-check suites")
    selftest.add_argument("--seed", type=int, default=0)
    selftest.set_defaults(func=cmd_selftest)
    return top


def cmd_net_info(args) -> int:
    net = load_network(args.net)
    profile = net.validate()
    print(f"nodes {len(net.nodes)}")
    print(f"edges {len(net.edges)}")
    for t in net.sinks:
        print(f"C_{t} {profile.capacities[t]}")
    print(f"C_min {profile.c_min}")
    return 0


def cmd_net_primary_sets(args) -> int:
    net = load_network(args.net)
    for A in net.enumerate_primary_sets(args.r):
        print(",".join(A))
    return 0


def _load_base(path, net):
    obj = load_code(path, net)
    return obj.stored if isinstance(obj, SecureCodeSpec) else obj


def _require(value, flag, mode):
    if value is None:
        raise InputError(f"mode {mode} needs {flag}")
    return value


def cmd_code_construct(args) -> int:
    net = load_network(args.net)
    mode = args.mode
    if mode == "construction-1":
        raise InputError(
            "construction-1 is not available: it needs a rate-flexible primitive "
            "at fixed level; use region-c2 or region-c3"
        )

    if mode == "increment":
        if args.in_file is None:
            raise InputError("mode increment needs --in with a rate/level code file")
        spec_in = load_code(args.in_file, net)
        if not isinstance(spec_in, SecureCodeSpec):
            raise InputError("mode increment needs a code file carrying rate and level")
        rate, level = spec_in.rate, spec_in.level
        n = rate + level
        if spec_in.stored.n < n + 1:
            raise InputError(
                f"input code stores dimension {spec_in.stored.n}; an increment needs "
                f"at least {n + 1} (rate+level+1)"
            )
        c_np1 = spec_in.stored.truncate(n + 1)
        built, _trace = construct.alg2_increment_level(
            net, spec_in.base, c_np1, spec_in.Q, rate, level
        )
        members = [SecureCodeSpec(net, built.base, built.Q, rate, level + 1,
                                  stored=spec_in.stored)]
        tag = mode
    else:
        if args.in_file is not None:
            base_full = _load_base(args.in_file, net)
        else:
            base_full = construct.generate_base_code(net)
        if mode == "pair":
            rate = _require(args.rate, "--rate", mode)
            level = _require(args.level, "--level", mode)
            n = rate + level
            if n > base_full.n:
                raise InputError(f"pair ({rate},{level}) needs dimension {n}, base has {base_full.n}")
            members = [construct.build_fixed_pair(net, base_full.truncate(n), rate, level)]
            tag = mode
        elif mode == "fixed-dim":
            n = _require(args.n, "--n", mode)
            if n < 0 or n > base_full.n:
                raise InputError(f"--n {n} outside 0..{base_full.n}")
            members = construct.alg3_fixed_dimension(net, base_full.truncate(n), n)
            tag = mode
        elif mode == "family-rate":
            rate = _require(args.rate, "--rate", mode)
            members = construct.family_fixed_rate(net, base_full, rate).members
            tag = mode
        else:
            tag = "construction-2" if mode == "region-c2" else "construction-3"
            fam = construct.region_family(net, base_full, tag)
            members = [fam.members[k] for k in fam.sorted_pairs()]

    members = sorted(members, key=lambda m: (m.rate, m.level))
    os.makedirs(args.out, exist_ok=True)
    lines = [
        f"field {net.field.q}",
        f"C_min {net.c_min}",
        f"construction {tag}",
    ]
    verdicts = {}
    all_ok = True
    for m in members:
        ok = m.base.is_decodable() and secure.check_secure_subspace(
            net, m.base, m.Q, m.rate, m.level
        ).overall
        all_ok = all_ok and ok
        verdicts[(m.rate, m.level)] = "pass" if ok else "fail"
        name = f"code_w{m.rate}_r{m.level}.slnc"
        with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
            fh.write(serialize_code(m))
        lines.append(
            f"member w={m.rate} r={m.level} file={name} verdict={verdicts[(m.rate, m.level)]}"
        )
    text = "\n".join(lines) + "\n"
    with open(os.path.join(args.out, "manifest"), "w", encoding="utf-8") as fh:
        fh.write(text)
    render_region_figure(verdicts, net.c_min, os.path.join(args.out, "region.png"))
    sys.stdout.write(text)
    return 0 if all_ok else 1


def cmd_code_verify(args) -> int:
    net = load_network(args.net)
    obj = load_code(args.code, net)
    if isinstance(obj, SecureCodeSpec):
        decodable = obj.base.is_decodable()
        if args.exhaustive:
            report = secure.check_secure_exhaustive(
                net, obj.deployed(), obj.rate, obj.level, scope=args.scope
            )
        else:
            report = secure.check_secure_subspace(net, obj.base, obj.Q, obj.rate, obj.level)
        report_lines = report.render_lines()
        ok = decodable and report.overall
    else:
        decodable = obj.is_decodable()
        report_lines = []
        ok = decodable
    print(f"decodable {'pass' if decodable else 'fail'}")
    for line in report_lines:
        print(line)
    print(f"overall {'pass' if ok else 'fail'}")
    return 0 if ok else 1


def _parse_symbols(text, q, what):
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(int(tok) % q)
        except ValueError:
            raise InputError(f"{what} entry {tok!r} is not an integer") from None
    return out


def cmd_code_transmit(args) -> int:
    net = load_network(args.net)
    obj = load_code(args.code, net)
    if isinstance(obj, SecureCodeSpec):
        rate, level, code = obj.rate, obj.level, obj.deployed()
    else:
        rate, level, code = obj.n, 0, obj
    q = net.field.q
    message = _parse_symbols(args.message, q, "--message")
    key = _parse_symbols(args.key, q, "--key")
    if len(message) != rate:
        raise InputError(f"--message has {len(message)} symbols, rate is {rate}")
    if len(key) != level:
        raise InputError(f"--key has {len(key)} symbols, level is {level}")
    taps = []
    if args.tap:
        for tok in args.tap.split(","):
            tok = tok.strip()
            if tok not in net.edge_by_id:
                raise InputError(f"--tap names unknown edge {tok!r}")
            taps.append(tok)
    taps = set(taps)
    y = code.transmit(tuple(message) + tuple(key))
    for e in net.edges:
        mark = " tapped" if e.id in taps else ""
        print(f"y_{e.id} {y[e.id]}{mark}")
    for t in net.sinks:
        decoded = code.decode_at_sink(t, y)
        got = list(decoded[:rate])
        status = "ok" if got == message else "mismatch"
        print(f"decode_{t} message={','.join(str(v) for v in got)} {status}")
    return 0


def cmd_selftest(args) -> int:
    from slnc import randgen

    rng = random.Random(args.seed)
    failures = 0

    n_codes = 25
    agree = 0
    lemma3 = 0
    for _ in range(n_codes):
        net, base, Q, rate, level = randgen.random_code_instance(rng)
        sub = secure.check_secure_subspace(net, base, Q, rate, level)
        spec = SecureCodeSpec(net, base, Q, rate, level)
        exh = secure.check_secure_exhaustive(net, spec.deployed(), rate, level)
        if [e[:2] for e in sorted(sub.entries)] == [e[:2] for e in sorted(exh.entries)]:
            agree += 1
        if secure.check_lemma3_equivalence(net, base, Q, rate, level):
            lemma3 += 1
    print(f"oracle-equivalence {agree}/{n_codes}")
    print(f"lemma3-equivalence {lemma3}/{n_codes}")
    failures += (agree != n_codes) + (lemma3 != n_codes)

    n_nets = 10
    cuts_ok = 0
    for _ in range(n_nets):
        net = randgen.random_network(rng, max_edges=9)
        brute = randgen.BruteCuts(net, max_size=2)
        good = all(
            net.primary_min_cut(A) == brute.primary_min_cut(A)
            for A in net.all_edge_subsets_upto(2)
        )
        cuts_ok += good
    print(f"primary-cut {cuts_ok}/{n_nets}")
    failures += cuts_ok != n_nets

    print(f"selftest {'pass' if failures == 0 else 'fail'}")
    return 0 if failures == 0 else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FieldTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
