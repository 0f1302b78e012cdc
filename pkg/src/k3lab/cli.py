"""Command-line entry point.

Every subcommand prints one deterministic report (canonical JSON by
default, a flat text rendering with ``--format text``) so identical
invocations are byte-identical.  Exit codes: 0 success, 1 parse errors,
2 precondition violations, 3 verification failures.

Input files are UTF-8 JSON.  Gram matrices are arrays of row arrays whose
entries are integers or exact-rational strings "num/den"; quadric systems
look like ``{"pencil": [G1, G2], "field": "Q"}`` (or ``"net": [G1, G2,
G3]``), lattices like ``{"label": "K3", "gram": [[...], ...]}``.  The
bundled inputs are reachable as ``builtin:pencil-diagonal``,
``builtin:net-diagonal`` and ``builtin:k3-lattice``.

``K3LAB_THREADS`` caps internal parallelism; the current implementation
is single-threaded, which respects any cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources

from .construction import (group_invariance_check, random_sl, sample_point,
                           verify_relation)
from .enumerative import (EXPECTED_DIM_BASIS, fano_degree, fano_genus_allowed,
                          HOMOGENEOUS_SPACES, linear_section_invariants,
                          pairs_moduli_dims, type_ii_expected_dim,
                          type_iii_expected_dim)
from .errors import (K3LabError, PreconditionError, VerificationFailure)
from .lattices import (IntegralLattice, MukaiVector, OverlatticeSpec,
                       k3_lattice, lattice_invariants, moduli_dim,
                       overlattice)
from .poly import poly_to_text
from .quadforms import QuadraticForm
from .scalars import GF, QQ, scalar_to_json
from .systems import (NetOfQuadrics, PencilOfQuadrics, count_points,
                      jacobian_j_invariant, moduli_double_cover,
                      net_discriminant, pencil_discriminant,
                      pic2_double_cover, sextic_smoothness_probe)

_BUILTIN_FILES = {
    "builtin:pencil-diagonal": "pencil-diagonal.json",
    "builtin:net-diagonal": "net-diagonal.json",
    "builtin:k3-lattice": "k3-lattice.json",
}


class CLIParseError(Exception):
    """Bad flags or bad input syntax (exit code 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIParseError(message)


def _read_json(path: str):
    if path in _BUILTIN_FILES:
        text = resources.files("k3lab.data").joinpath(_BUILTIN_FILES[path]).read_text("utf-8")
        name = path
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CLIParseError(f"cannot read {path}: {exc}") from exc
        name = path
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CLIParseError(
            f"{name}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _parse_field(tag):
    if tag in (None, "Q"):
        return QQ
    if isinstance(tag, str) and tag.startswith("F"):
        try:
            return GF(int(tag[1:]))
        except ValueError as exc:
            raise CLIParseError(f"bad field tag {tag!r}") from exc
    raise CLIParseError(f"bad field tag {tag!r}")


def _parse_gram(rows, field):
    def entry(x):
        if isinstance(x, int):
            return field.coerce(x)
        if isinstance(x, str):
            return field.coerce(Fraction(x))
        raise CLIParseError(f"bad Gram entry {x!r}")

    return [[entry(x) for x in row] for row in rows]


def load_system(path: str):
    """A PencilOfQuadrics or NetOfQuadrics from a JSON file or builtin name."""
    doc = _read_json(path)
    field = _parse_field(doc.get("field"))
    if "pencil" in doc:
        grams = doc["pencil"]
        if len(grams) != 2:
            raise CLIParseError("a pencil needs exactly two Gram matrices")
        q1, q2 = (QuadraticForm(_parse_gram(g, field), field) for g in grams)
        return PencilOfQuadrics(q1, q2)
    if "net" in doc:
        grams = doc["net"]
        if len(grams) != 3:
            raise CLIParseError("a net needs exactly three Gram matrices")
        q1, q2, q3 = (QuadraticForm(_parse_gram(g, field), field) for g in grams)
        return NetOfQuadrics(q1, q2, q3)
    raise CLIParseError("system file must contain a 'pencil' or 'net' key")


def load_lattice(path: str | None) -> IntegralLattice:
    if path is None:
        return k3_lattice()
    doc = _read_json(path)
    if "gram" not in doc:
        raise CLIParseError("lattice file must contain a 'gram' key")
    return IntegralLattice(doc["gram"], label=doc.get("label", ""))


def _parse_int_list(text: str, what: str):
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise CLIParseError(f"bad {what} list {text!r}") from exc


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return scalar_to_json(x)


def _emit(report: dict, fmt: str) -> None:
    data = _jsonable(report)
    if fmt == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        for key in sorted(data):
            sys.stdout.write(f"{key} = {json.dumps(data[key], sort_keys=True)}\n")


def _threads_cap() -> int:
    raw = os.environ.get("K3LAB_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        return 1
    return max(1, cap)


def build_parser() -> _Parser:
    top = _Parser(prog="k3lab", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="group", required=True)

    def leaf(group, name, **kw):
        p = group.add_parser(name, **kw)
        p.add_argument("--format", choices=("json", "text"), default="json")
        return p

    mukai = sub.add_parser("mukai").add_subparsers(dest="action", required=True)
    p = leaf(mukai, "dim", help="moduli dimension from (r, (L^2), s)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--l2", type=int, required=True)
    p.add_argument("--s", type=int, required=True)

    lattice = sub.add_parser("lattice").add_subparsers(dest="action", required=True)
    p = leaf(lattice, "overlattice", help="adjoin alpha/r to the alpha-divisibility sublattice")
    p.add_argument("--alpha", required=True, help="comma-separated integer coordinates")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--lattice", default=None, help="ambient lattice JSON (default: K3 lattice)")
    p.add_argument("--gram", action="store_true", help="include the resulting Gram matrix")

    pencil = sub.add_parser("pencil").add_subparsers(dest="action", required=True)
    for name, hlp in (("disc", "branch quartic of the pencil"),
                      ("jinv", "j-invariant of the double cover"),
                      ("cover", "double-cover descriptor"),
                      ("count", "point counts over F_p")):
        p = leaf(pencil, name, help=hlp)
        p.add_argument("--system", required=True)
        if name == "count":
            p.add_argument("--p", type=int, required=True)

    net = sub.add_parser("net").add_subparsers(dest="action", required=True)
    for name, hlp in (("disc", "branch sextic of the net"),
                      ("cover", "double-cover descriptor"),
                      ("probe", "finite-field smoothness probe of the branch")):
        p = leaf(net, name, help=hlp)
        p.add_argument("--system", required=True)
        p.add_argument("--primes", default="7,11,13")

    construct = sub.add_parser("construct").add_subparsers(dest="action", required=True)
    for name in ("verify-pencil", "verify-net"):
        p = leaf(construct, name, help="sample points and verify T^2 = c*disc(B)")
        p.add_argument("--system", required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
    p = leaf(construct, "invariance", help="check (B, T) under random unimodular elements")
    p.add_argument("--system", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    bn = sub.add_parser("bn").add_subparsers(dest="action", required=True)
    p = leaf(bn, "dim", help="expected dimension of a section locus")
    p.add_argument("--type", dest="kind", choices=("II", "III"), required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    fano = sub.add_parser("fano").add_subparsers(dest="action", required=True)
    p = leaf(fano, "section", help="invariants of a linear section")
    p.add_argument("--variety", choices=sorted(HOMOGENEOUS_SPACES), required=True)
    p.add_argument("--cuts", type=int, required=True)
    p = leaf(fano, "genus", help="genus admissibility and degree")
    p.add_argument("--g", type=int, required=True)

    pairs = sub.add_parser("pairs").add_subparsers(dest="action", required=True)
    p = leaf(pairs, "dims", help="dimensions of the pair and curve moduli")
    p.add_argument("--g", type=int, required=True)

    return top


def _run(args) -> dict:
    group, action = args.group, args.action
    if group == "mukai":
        return {"dim": moduli_dim(MukaiVector(args.r, args.l2, args.s))}

    if group == "lattice":
        ambient = load_lattice(args.lattice)
        alpha = _parse_int_list(args.alpha, "alpha")
        out = overlattice(OverlatticeSpec(ambient, alpha, args.r))
        inv = lattice_invariants(out)
        report = {"label": out.label, "rank": inv["rank"], "det": inv["det"],
                  "even": inv["even"],
                  "signature": list(inv["signature"]) if inv["signature"] else None}
        if args.gram:
            report["gram"] = [list(r) for r in out.gram]
        return report

    if group == "pencil":
        system = load_system(args.system)
        if not isinstance(system, PencilOfQuadrics):
            raise PreconditionError("pencil subcommands need a pencil system")
        if action == "disc":
            return {"discriminant": poly_to_text(pencil_discriminant(system).to_poly())}
        if action == "jinv":
            return {"j": jacobian_j_invariant(system)}
        if action == "cover":
            return pic2_double_cover(system).to_json()
        if action == "count":
            branch = pencil_discriminant(system)
            n_pencil = count_points(system, args.p)
            n_hyp = count_points(branch, args.p)
            return {"p": args.p, "pencil_points": n_pencil,
                    "hyperelliptic_points": n_hyp,
                    "twist_consistent": n_pencil in (n_hyp, 2 * args.p + 2 - n_hyp)}

    if group == "net":
        system = load_system(args.system)
        if not isinstance(system, NetOfQuadrics):
            raise PreconditionError("net subcommands need a net system")
        primes = tuple(_parse_int_list(args.primes, "primes"))
        if action == "disc":
            d = net_discriminant(system)
            return {"discriminant": poly_to_text(d), "degree": d.degree()}
        if action == "cover":
            return moduli_double_cover(system, primes).to_json()
        if action == "probe":
            d = net_discriminant(system)
            if d.is_zero():
                raise PreconditionError("net discriminant vanishes identically")
            return sextic_smoothness_probe(d, primes).to_json()

    if group == "construct":
        system = load_system(args.system)
        if action in ("verify-pencil", "verify-net"):
            want_pencil = action == "verify-pencil"
            if want_pencil != isinstance(system, PencilOfQuadrics):
                raise PreconditionError(f"{action} got the wrong kind of system")
            report = verify_relation(system, args.p, args.samples, args.seed)
            out = report.to_json()
            if report.failed:
                raise _VerificationExit(out)
            return out
        if action == "invariance":
            return _invariance_report(system, args.p, args.count, args.seed)

    if group == "bn":
        fn = type_ii_expected_dim if args.kind == "II" else type_iii_expected_dim
        return {"dim": fn(args.g, args.n), "type": args.kind,
                "basis": EXPECTED_DIM_BASIS}

    if group == "fano":
        if action == "section":
            return linear_section_invariants(args.variety, args.cuts)
        if action == "genus":
            return {"allowed": fano_genus_allowed(args.g), "degree": fano_degree(args.g)}

    if group == "pairs":
        dim_p, dim_m = pairs_moduli_dims(args.g)
        return {"dimP": dim_p, "dimM": dim_m}

    raise CLIParseError(f"unknown command {group} {action}")  # unreachable


def _invariance_report(system, p, count, seed):
    import random

    is_pencil = isinstance(system, PencilOfQuadrics)
    point = sample_point(system, p, seed)
    field = GF(p)
    rng = random.Random(seed)
    b_ok = t_ok = True
    for _ in range(count):
        if is_pencil:
            g, h = random_sl(field, 2, rng), random_sl(field, 2, rng)
            rep = group_invariance_check(point.matrix, point.system, g, h)
        else:
            g = random_sl(field, 4, rng)
            rep = group_invariance_check(point.matrix, point.system, g)
        b_ok = b_ok and rep.b_equal
        t_ok = t_ok and rep.t_equal
    out = {"case": "pencil" if is_pencil else "net", "p": p, "seed": seed,
           "checked": count, "b_invariant": b_ok, "t_invariant": t_ok}
    if not (b_ok and t_ok):
        raise _VerificationExit(out)
    return out


class _VerificationExit(Exception):
    """Carries a report that must be printed before exiting with code 3."""

    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


def main(argv=None) -> int:
    _threads_cap()  # validated; execution is single-threaded either way
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CLIParseError as exc:
        sys.stderr.write(f"k3lab: parse error: {exc}\n")
        return 1
    fmt = getattr(args, "format", "json")
    try:
        report = _run(args)
    except CLIParseError as exc:
        sys.stderr.write(f"k3lab: parse error: {exc}\n")
        return 1
    except _VerificationExit as exc:
        _emit(exc.report, fmt)
        sys.stderr.write("k3lab: verification failed\n")
        return 3
    except VerificationFailure as exc:
        sys.stderr.write(f"k3lab: verification failed: {exc}\n")
        return 3
    except (PreconditionError, K3LabError) as exc:
        sys.stderr.write(f"k3lab: {exc}\n")
        return 2
    _emit(report, fmt)
    return 0


def main_entry() -> None:
    sys.exit(main())
