"""Command line front end: ``normcong <command> [SOURCE...] [options]``.

SOURCE is a builder (``tn 3``, ``cyclic 2 3``, ``nmax 4``, ``group S3``,
``boolean``, ``sign``), ``file PATH`` or a path ending in ``.json``.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bounds
from .builders import bicyclic_bounded_check, monoid_from_spec
from .congruences import (
    classify_congruence,
    enumerate_congruences,
    identity_class,
    induced_congruence,
    is_congruentially_simple,
    malcev_chain,
    normal_subgroups_of_symmetric_group,
    malcev_congruence,
    quotient,
    rees_congruence,
    verify_blowup,
)
from .errors import BadParameters, MonoidError
from .lattice import build_lattice, is_chain, is_modular, subset_lattice, to_dot
from .lattice import to_json as lattice_json
from .monoid import FiniteMonoid, load, to_json
from .normality import (
    enumerate_normal_submonoids,
    is_normal_monoid,
    is_normally_simple,
)
from .search import run_search
from .zgroups import hnf, in_normal_closure, modularity_subgroups, ncl_free_commutative, nplus_congruence_check

EXIT_ERROR = 2


class Limits:
    def __init__(self, args):
        large = getattr(args, "allow_large", False)
        self.norsub = args.bound or (bounds.LARGE_NORSUB_BOUND if large else bounds.NORSUB_BOUND)
        self.cong = args.bound or (bounds.LARGE_CONG_BOUND if large else bounds.CONG_BOUND)
        self.units = bounds.LARGE_UNITS_BOUND if large else bounds.UNITS_BOUND
        if self.norsub <= 0 or self.cong <= 0:
            raise BadParameters("bounds must be positive")


def _load_source(tokens: list[str]) -> FiniteMonoid:
    if not tokens:
        raise BadParameters("missing monoid source")
    head = tokens[0]
    if head == "file":
        if len(tokens) != 2:
            raise BadParameters("usage: file PATH")
        return load(tokens[1])
    if head.endswith(".json") and len(tokens) == 1:
        return load(head)
    try:
        return monoid_from_spec(head, *tokens[1:])
    except (TypeError, ValueError) as exc:
        raise BadParameters(f"bad builder parameters {tokens}: {exc}") from None


def _set_label(M: FiniteMonoid, S) -> str:
    if len(S) == M.size and M.size > 1:
        return "M"
    if M.labels is None:
        return "{" + ",".join(map(str, S)) + "}"
    if len(S) > 8:
        return f"|{len(S)}|"
    return "{" + ",".join(M.label(x) for x in S) + "}"


def _monoid_summary(M: FiniteMonoid) -> dict:
    return {"size": M.size, "identity": M.identity}


def cmd_build(args, limits) -> dict:
    return to_json(_load_source(args.source))


def _norsub_report(M, limits):
    family = enumerate_normal_submonoids(M, limits.norsub)
    L = subset_lattice(family)
    L.validate()
    modular, witness = is_modular(L)
    report = {
        "monoid": _monoid_summary(M),
        "count": len(family),
        "normal_submonoids": [list(S) for S in family],
        "labels": [_set_label(M, S) for S in family],
        "cover_edges": lattice_json(L)["cover_edges"],
        "chain": is_chain(L),
        "modular": modular,
        "modular_witness": list(witness) if witness else None,
    }
    return report, L, lambda S: _set_label(M, S)


def _cong_report(M, limits):
    congs = enumerate_congruences(M, limits.cong)
    L = build_lattice(congs, lambda R, Q: R.refines(Q))
    L.validate()
    modular, witness = is_modular(L)
    rows = []
    for R in congs:
        c = classify_congruence(M, R)
        rows.append({
            "classes": R.to_json(),
            "num_classes": R.num_classes,
            "kind": c.kind,
            "unital": c.unital,
            "identity_class": list(c.anchor),
        })
    report = {
        "monoid": _monoid_summary(M),
        "count": len(congs),
        "congruences": rows,
        "cover_edges": lattice_json(L)["cover_edges"],
        "chain": is_chain(L),
        "modular": modular,
        "modular_witness": list(witness) if witness else None,
    }
    return report, L, lambda R: f"{R.num_classes} classes"


def cmd_norsub(args, limits):
    return _norsub_report(_load_source(args.source), limits)


def cmd_cong(args, limits):
    return _cong_report(_load_source(args.source), limits)


def cmd_blowup(args, limits) -> dict:
    M = _load_source(args.source)
    report = verify_blowup(M, limits.cong, limits.norsub).to_json()
    report["monoid"] = _monoid_summary(M)
    return report


def cmd_check(args, limits) -> dict:
    M = _load_source(args.source)
    wanted = [k for k in ("normal", "normally_simple", "congruentially_simple", "modular") if getattr(args, k)]
    wanted = wanted or ["normal", "normally_simple", "congruentially_simple", "modular"]
    out = {"monoid": _monoid_summary(M)}
    for key in wanted:
        if key == "normal":
            out["normal"] = is_normal_monoid(M)
        elif key == "normally_simple":
            out["normally_simple"] = is_normally_simple(M, limits.norsub, limits.units)
        elif key == "congruentially_simple":
            out["congruentially_simple"] = is_congruentially_simple(M, limits.cong, limits.norsub)
        else:
            ok, witness = is_modular(subset_lattice(enumerate_normal_submonoids(M, limits.norsub)))
            out["modular"] = ok
            out["modular_witness"] = list(witness) if witness else None
    return out


def _parse_ints(text: str, sep: str = ",") -> list[int]:
    try:
        return [int(t) for t in text.split(sep) if t.strip() != ""]
    except ValueError:
        raise BadParameters(f"expected integers separated by {sep!r}, got {text!r}") from None


def cmd_quotient(args, limits) -> dict:
    M = _load_source(args.source)
    subset = _parse_ints(args.by)
    if any(not 0 <= x < M.size for x in subset):
        raise BadParameters("subset element out of range", subset=subset)
    R = rees_congruence(M, subset) if args.rees else induced_congruence(M, subset)
    Q, proj = quotient(M, R)
    return {
        "monoid": _monoid_summary(M),
        "by": subset,
        "congruence": "rees" if args.rees else "induced",
        "classes": R.to_json(),
        "identity_class": list(identity_class(R)),
        "quotient": to_json(Q),
    }


def _subgroup_name(k: int, N) -> str:
    size = len(N)
    if size == 1:
        return "1"
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    if size == fact:
        return f"S{k}"
    if 2 * size == fact:
        return f"A{k}"
    if k == 4 and size == 4:
        return "K4"
    return f"N{size}"


def cmd_malcev(args, limits) -> dict:
    n = args.n
    if n < 1:
        raise BadParameters("n must be positive")
    named = []
    for k in range(1, n + 1):
        for N in normal_subgroups_of_symmetric_group(k):
            R = malcev_congruence(n, k, N)
            named.append((R, f"R_{{{k},{_subgroup_name(k, N)}}}"))
    chain = malcev_chain(n)
    names = {}
    for R, name in named:
        names.setdefault(R, []).append(name)
    out = {
        "n": n,
        "malcev": [{"name": names.get(R, ["nabla"])[0], "aliases": names.get(R, ["nabla"]),
                    "num_classes": R.num_classes} for R in chain],
        "count": len(chain),
    }
    if not args.no_enumerate:
        M = chain[0].monoid
        congs = enumerate_congruences(M, limits.cong)
        out["enumerated_count"] = len(congs)
        out["match"] = set(congs) == set(chain)
        L = build_lattice(chain, lambda R, Q: R.refines(Q))
        out["chain"] = is_chain(L)
    return out


def _parse_vectors(text: str) -> list[list[int]]:
    return [_parse_ints(chunk) for chunk in text.split(";") if chunk.strip()]


def cmd_zgroups(args, limits) -> dict:
    out = {}
    if args.gens is not None:
        gens = _parse_vectors(args.gens)
        H = ncl_free_commutative(args.dim, gens)
        out["subgroup"] = H.to_json()
        if args.member is not None:
            v = _parse_ints(args.member)
            out["member"] = {"vector": v, "in_normal_closure": in_normal_closure(H, v)}
    if args.nplus is not None:
        m, n, B = _parse_ints(args.nplus)
        out["nplus"] = nplus_congruence_check(m, n, B).to_json()
    if args.trials:
        dims = [args.dim] if args.gens is not None else [1, 2, 3]
        out["modularity"] = [modularity_subgroups(k, args.trials, args.seed).to_json() for k in dims]
    if not out:
        out["subgroup"] = hnf([], args.dim).to_json()
    return out


def cmd_bicyclic(args, limits) -> dict:
    if args.bound < 0:
        raise BadParameters("bound must be non-negative")
    return bicyclic_bounded_check(args.bound).to_json()


def cmd_search(args, limits) -> dict:
    return run_search(args.seed, args.random, args.max_size, args.catalog_size).to_json()


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value and any(isinstance(v, (dict, list)) for v in
                                                                 (value.values() if isinstance(value, dict) else value)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value, sort_keys=True)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=["json", "text", "dot"], default="json")
    output.add_argument("--plot", metavar="FILE", help="write a Hasse diagram PNG (lattice commands)")
    output.add_argument("--seed", type=int, default=0)
    common = argparse.ArgumentParser(add_help=False, parents=[output])
    common.add_argument("--allow-large", action="store_true",
                        help="raise enumeration caps (T5 NorSub takes about a minute)")
    common.add_argument("--bound", type=int, default=None, help="override the enumeration cap")

    parser = argparse.ArgumentParser(prog="normcong", description="Normal submonoids and congruences of finite monoids")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_source(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("source", nargs="+", help="builder tokens, 'file PATH' or a .json path")
        p.set_defaults(func=func)
        return p

    with_source("build", cmd_build, "emit a monoid as JSON")
    with_source("norsub", cmd_norsub, "lattice of normal submonoids")
    with_source("cong", cmd_cong, "lattice of congruences with classification")
    with_source("blowup", cmd_blowup, "check Cong(M) against the unital congruences of normal quotients")
    p = with_source("check", cmd_check, "verdicts on a monoid")
    p.add_argument("--normal", action="store_true")
    p.add_argument("--normally-simple", dest="normally_simple", action="store_true")
    p.add_argument("--congruentially-simple", dest="congruentially_simple", action="store_true")
    p.add_argument("--modular", action="store_true")
    p = with_source("quotient", cmd_quotient, "quotient by the congruence induced by a subset")
    p.add_argument("--by", required=True, help="comma separated element indices")
    p.add_argument("--rees", action="store_true", help="use the Rees congruence of the subset (an ideal)")

    p = sub.add_parser("malcev", parents=[common], help="Malcev congruences on T_n against enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-enumerate", action="store_true", help="skip the comparison with enumeration")
    p.set_defaults(func=cmd_malcev)

    p = sub.add_parser("zgroups", parents=[common], help="subgroups of Z^k, N_+ congruences, modularity trials")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--gens", help="generators, e.g. '6;10;15' or '1,2;0,3'")
    p.add_argument("--member", help="vector to test against the normal closure")
    p.add_argument("--nplus", help="M,N,B: check R_{M,N} on {0..B}")
    p.add_argument("--trials", type=int, default=0)
    p.set_defaults(func=cmd_zgroups)

    p = sub.add_parser("bicyclic-check", parents=[output], help="bounded checks on the bicyclic monoid")
    p.add_argument("--bound", type=int, required=True, dest="bound")
    p.set_defaults(func=cmd_bicyclic)

    p = sub.add_parser("search", parents=[common], help="record findings on open questions (no assertions)")
    p.add_argument("--random", type=int, default=200)
    p.add_argument("--max-size", type=int, default=6)
    p.add_argument("--catalog-size", type=int, default=4)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bicyclic-check":
            limits = None
        else:
            limits = Limits(args)
        result = args.func(args, limits)
        lattice = labeler = None
        if isinstance(result, tuple):
            result, lattice, labeler = result
        if args.plot:
            if lattice is None:
                raise BadParameters(f"--plot needs a lattice command, not {args.command}")
            from .plotting import plot_hasse

            plot_hasse(lattice, args.plot, labeler, title=args.command)
        if args.format == "dot":
            if lattice is None:
                raise BadParameters(f"--format dot needs a lattice command, not {args.command}")
            sys.stdout.write(to_dot(lattice, labeler))
        elif args.format == "text":
            sys.stdout.write("\n".join(_render_text(result)) + "\n")
        else:
            sys.stdout.write(json.dumps(result, sort_keys=True) + "\n")
    except MonoidError as exc:
        sys.stdout.write(json.dumps(exc.to_json(), sort_keys=True) + "\n")
        return EXIT_ERROR
    except OSError as exc:
        sys.stdout.write(json.dumps({"error": "IOError", "message": str(exc), "details": {}}) + "\n")
        return EXIT_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
