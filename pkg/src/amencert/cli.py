"""Command-line surface: certificates in, JSON certificates out.

Exit codes: 0 for a verified pass, 2 for a verified failure (for example
an exhausted Folner search or a failed selftest), 1 for malformed input.
Output is deterministic byte-for-byte for identical inputs: every support
set is serialized in the canonical element order and all rationals are
"p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .amenability import (
    finite_h0,
    folner_search,
    indicator,
    isoperimetric_argmin,
    generator_differences,
    reiter_ratio,
    FolnerCertificate,
)
from .complexes import (
    BoundedCochain,
    EquivariantChain,
    connecting_lift_check,
    fundamental_cycle,
    johnson_cocycle,
    one_l1_cycle,
    one_lift_cochain,
    one_cochain,
)
from .functions import FinSuppFn, frac_str, parse_frac
from .groups import FiniteGroup, FreeGroup, free_group, group_from_dict, load_group
from .pairing import make_pairing_certificate
from .sampling import (
    random_element,
    random_cochain,
    random_l1_chain,
    random_uf_chain,
)
from .witnesses import FlowCycleSpec, flow_cycle, flow_pairing_certificate, verify_flow_cycle


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_cochain(path: str) -> BoundedCochain:
    data = _load_json(path)
    if "builtin" in data:
        group = group_from_dict(data["group"])
        name = data["builtin"]
        if name == "johnson":
            return johnson_cocycle(group)
        if name == "one-lift":
            return one_lift_cochain(group)
        if name == "one":
            return one_cochain(group)
        raise ValueError(f"unknown builtin cochain {name!r}")
    return BoundedCochain.from_json(data)


def _load_cycle(path: str) -> tuple[EquivariantChain, str]:
    data = _load_json(path)
    if "builtin" in data:
        group = group_from_dict(data["group"])
        name = data["builtin"]
        if name == "fundamental":
            return fundamental_cycle(group), "fundamental-cycle"
        if name == "one-l1":
            return one_l1_cycle(group), "one-l1-cycle"
        if name == "flow":
            if not isinstance(group, FreeGroup):
                raise ValueError("the flow cycle requires a free group")
            ray_label = data.get("ray", group.gen_labels[0])
            if ray_label not in group.gen_labels:
                raise ValueError(f"ray {ray_label!r} is not a generator label")
            ray = group.gen_labels.index(ray_label) + 1
            return flow_cycle(FlowCycleSpec(group, ray)), f"tree-flow({ray_label})"
        raise ValueError(f"unknown builtin cycle {name!r}")
    return EquivariantChain.from_json(data), "cycle-file"


def cmd_verify_f2(args) -> int:
    group = free_group(args.rank)
    if args.ray not in group.gen_labels:
        raise ValueError(f"ray {args.ray!r} is not a generator of the rank-{args.rank} group")
    fs = FlowCycleSpec(group, group.gen_labels.index(args.ray) + 1)
    report = verify_flow_cycle(fs, args.radius)
    cert = flow_pairing_certificate(fs)
    payload = report.to_json()
    payload["pairing"] = cert.to_json()
    _emit(payload, args.out)
    adj = cert.adjointness or {}
    ok = report.passed and adj.get("equal", False)
    return 0 if ok else 2


def cmd_pair(args) -> int:
    phi = _load_cochain(args.cochain)
    cycle, cycle_id = _load_cycle(args.cycle)
    cert = make_pairing_certificate(phi, cycle, cycle_id=cycle_id)
    _emit(cert.to_json(), args.out)
    return 0


def cmd_folner(args) -> int:
    group = load_group(args.group)
    result = folner_search(
        group, parse_frac(args.eps), strategy=args.strategy, max_radius=args.max_radius
    )
    _emit(result.to_json(), args.out)
    return 0 if isinstance(result, FolnerCertificate) else 2


def cmd_reiter(args) -> int:
    group = load_group(args.group)
    data = _load_json(args.set)
    if not isinstance(data, list) or not data:
        raise ValueError("the set file must hold a nonempty list of elements or [element, rational] pairs")
    # weighted entries are [element, "p/q"]; everything else is an element list
    if all(isinstance(x, list) and len(x) == 2 and isinstance(x[1], str) for x in data):
        f = FinSuppFn.from_pairs(group, data)
    else:
        f = indicator(group, (group.elem_from_json(x) for x in data))
    ratio = reiter_ratio(group, f)
    payload = {
        "type": "reiter-ratio",
        "group-hash": group.spec_hash(),
        "l1-norm": frac_str(f.l1_norm()),
        "generator-differences": {
            label: frac_str(v) for label, v in generator_differences(group, f).items()
        },
        "ratio": frac_str(ratio),
    }
    _emit(payload, args.out)
    return 0


def cmd_finite_h0(args) -> int:
    group = load_group(args.group)
    if not isinstance(group, FiniteGroup):
        raise ValueError("finite-h0 requires a finite group spec")
    _emit(finite_h0(group).to_json(), args.out)
    return 0


def cmd_iso_min(args) -> int:
    group = load_group(args.group) if args.group else free_group(2)
    ratio, members = isoperimetric_argmin(group, args.radius)
    ball = group.ball(args.radius)
    payload = {
        "type": "isoperimetric-minimum",
        "group-hash": group.spec_hash(),
        "radius": args.radius,
        "ball-size": len(ball),
        "subsets-enumerated": (1 << len(ball)) - 1,
        "min-ratio": frac_str(ratio),
        "minimizer": [group.elem_to_json(g) for g in members],
    }
    _emit(payload, args.out)
    return 0


def cmd_selftest(args) -> int:
    """Seeded randomized property checks across the whole library."""
    from .groups import cyclic_group, free_abelian_group
    from .pairing import adjointness_check
    from .complexes import deflate, inflate

    rng = random.Random(args.seed)
    trials = max(1, args.trials)
    specs = [free_group(2), free_abelian_group(2), cyclic_group(3)]
    checks = []

    def run(name, fn):
        try:
            count = fn()
        except Exception as exc:  # a failing property is a verified failure, not an input error
            checks.append({"name": name, "trials": 0, "passed": False, "error": str(exc)})
            return
        checks.append({"name": name, "trials": count, "passed": True})

    def group_laws():
        n = 0
        for _ in range(trials):
            g = rng.choice(specs)
            a, b, c = (random_element(rng, g) for _ in range(3))
            assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
            assert g.mul(a, g.identity) == a and g.mul(g.identity, a) == a
            assert g.mul(a, g.inv(a)) == g.identity
            n += 3
        return n

    def complex_axioms():
        n = 0
        for _ in range(trials):
            g = rng.choice(specs)
            chain = random_l1_chain(rng, g, rng.randint(2, 3))
            assert chain.boundary().boundary().is_zero
            uf = random_uf_chain(rng, g, rng.randint(2, 3))
            assert uf.boundary().boundary().is_zero
            phi = random_cochain(rng, g, rng.randint(0, 1))
            dd = phi.coboundary().coboundary()
            for _ in range(3):
                key = tuple(random_element(rng, g, 2) for _ in range(dd.degree))
                assert dd.value_at(key).is_zero
            n += 3
        return n

    def adjointness():
        n = 0
        for _ in range(trials):
            g = rng.choice(specs)
            m = rng.randint(0, 2)
            assert adjointness_check(random_cochain(rng, g, m), random_l1_chain(rng, g, m + 1))
            n += 1
        return n

    def inflation():
        n = 0
        for _ in range(trials):
            g = rng.choice(specs)
            uf = random_uf_chain(rng, g, rng.randint(0, 2))
            assert deflate(inflate(uf)) == uf
            if uf.degree >= 1:
                assert inflate(uf.boundary()) == inflate(uf).boundary()
            n += 1
        return n

    def connecting():
        for g in specs:
            assert connecting_lift_check(g)
        return len(specs)

    run("group-laws", group_laws)
    run("complex-axioms", complex_axioms)
    run("adjointness", adjointness)
    run("inflation-isomorphism", inflation)
    run("connecting-map", connecting)
    passed = all(c["passed"] for c in checks)
    _emit({"type": "selftest", "seed": args.seed, "checks": checks, "passed": passed}, args.out)
    return 0 if passed else 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="amencert",
        description="Exact amenability certificates for finitely generated groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-f2", help="verify the free-group flow-cycle witness")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--ray", default="a", help="generator label whose ray fixes the boundary point")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_f2)

    p = sub.add_parser("pair", help="pair a cochain file against a cycle file")
    p.add_argument("--cochain", required=True)
    p.add_argument("--cycle", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("folner", help="search for a Folner set with ratio <= eps")
    p.add_argument("--group", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--strategy", choices=["balls", "boxes"], default="balls")
    p.add_argument("--max-radius", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_folner)

    p = sub.add_parser("reiter", help="Reiter ratio of a finitely supported function")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reiter)

    p = sub.add_parser("finite-h0", help="exact span obstruction for a finite group")
    p.add_argument("--group", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_finite_h0)

    p = sub.add_parser("iso-min", help="brute-force isoperimetric minimum over a ball")
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--group")
    p.add_argument("--out")
    p.set_defaults(func=cmd_iso_min)

    p = sub.add_parser("selftest", help="seeded randomized property checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=60)
    p.add_argument("--out")
    p.set_defaults(func=cmd_selftest)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
