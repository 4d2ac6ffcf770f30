"""Command-line front end.

Exit status: 0 on success (including inconclusive or "inconsistent"
reports), 2 for unreadable or malformed JSON, 3 for schema violations, 4 for
domain errors raised by the library.
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import HandlebodyError
from .freegroup import abelianization, format_word, induced_pi1_map, is_surjective
from .graphs import carrier_incidence, incidence_matrix
from .penner import build_boundary_pair, compare_growth, penner_product, validate_pair
from .serialization import (
    DocumentError,
    SchemaError,
    arc_from_doc,
    dataset_path,
    dumps,
    endo_from_doc,
    graphmap_from_doc,
    load_document,
    matrix_from_doc,
    moves_from_doc,
    penner_from_doc,
    penner_to_doc,
)
from .spectral import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    block_radii,
    is_irreducible,
    pf_eigen,
    scc_decomposition,
    spectral_radius_reducible,
)
from .tightening import evaluate_move, growth_of_power, search_moves, standard_weights

EXIT_OK, EXIT_DOCUMENT, EXIT_SCHEMA, EXIT_DOMAIN = 0, 2, 3, 4


class _Done(Exception):
    def __init__(self, status, message):
        super().__init__(message)
        self.status = status


def resolve_input(name):
    """An existing path, else the shipped dataset with the same file name."""
    p = Path(name)
    if p.is_file():
        return p
    try:
        return dataset_path(p.name)
    except FileNotFoundError:
        raise _Done(EXIT_DOCUMENT, f"cannot read {name}: no such file or shipped dataset") from None


def _load(name, expected):
    return load_document(resolve_input(name), expected)


def _f(x):
    return float(x)


def _label(labels, i):
    return labels[i] if labels else i


def _matrix_input(name, args):
    """Matrix and labels from a matrix/1 or graphmap/1 document."""
    schema, doc = _load(name, ("matrix/1", "graphmap/1"))
    if schema == "matrix/1":
        m, labels = matrix_from_doc(doc)
        return m, labels, doc
    f, extras = graphmap_from_doc(doc)
    if "carrier" in extras:
        m = carrier_incidence(f, extras["carrier"])
    else:
        m = incidence_matrix(f)
    return m, list(f.source.edges), doc


def _fmt3(x):
    return f"{x:.3f}"


def _vec3(v):
    return "(" + ", ".join(_fmt3(x) for x in v) + ")"


def _delta(d):
    return "(" + ",".join(str(x) for x in d) + ")"


# -- subcommands -----------------------------------------------------------


def cmd_growth(args):
    m, labels, _ = _matrix_input(args.file, args)
    pf = pf_eigen(m, tol=args.tol, max_iter=args.max_iter)
    report = {
        "matrix": m.tolist(),
        "labels": labels,
        "lambda": _f(pf.eigenvalue),
        "vector": [_f(x) for x in pf.vector],
        "residual": _f(pf.residual),
        "iterations": pf.iterations,
    }
    text = [f"λ = {_fmt3(pf.eigenvalue)}", f"PF vector = {_vec3(pf.vector)}"]
    return report, text


def cmd_irreducible(args):
    m, labels, _ = _matrix_input(args.file, args)
    scc = scc_decomposition(m)
    irr = is_irreducible(m)
    comps = [[_label(labels, i) for i in c] for c in scc.components]
    blocks = block_radii(m, tol=args.tol, max_iter=args.max_iter)
    report = {
        "irreducible": irr,
        "components": comps,
        "condensation_arcs": [list(a) for a in scc.condensation_arcs],
        "block_radii": [_f(r) for _, r in blocks],
        "spectral_radius": _f(max(r for _, r in blocks)),
    }
    text = [
        f"irreducible: {'yes' if irr else 'no'}",
        f"strong components (topological order): {comps}",
        f"spectral radius = {_fmt3(report['spectral_radius'])}",
    ]
    return report, text


def _outcome_report(o, labels):
    out = {
        "row": _label(labels, o.move.row),
        "delta": list(o.move.delta),
        "realizability": o.move.realizability,
        "gain": _f(o.gain),
        "branch": o.branch,
        "growth_before": _f(o.growth_before),
        "growth_after": _f(o.growth_after),
        "matrix_after": o.matrix_after.tolist(),
    }
    if o.branch == "restricted":
        out["subsystem"] = [_label(labels, i) for i in o.subsystem]
        out["submatrix"] = o.submatrix.tolist()
    return out


def cmd_tighten(args):
    m, labels, doc = _matrix_input(args.file, args)
    if args.moves:
        _, mdoc = _load(args.moves, ("move/1", "matrix/1"))
        declared = moves_from_doc(mdoc, labels)
    else:
        declared = moves_from_doc(doc, labels)
    if args.search:
        catalog = declared if args.catalog == "declared" else args.catalog
        outcomes = search_moves(m, catalog=catalog, max_delta=args.max_delta, tol=args.tol, max_iter=args.max_iter)
        if args.top:
            outcomes = outcomes[: args.top]
    else:
        if not declared:
            raise HandlebodyError("no moves declared; pass --moves FILE or use --search")
        w = standard_weights(m, tol=args.tol, max_iter=args.max_iter)
        outcomes = [evaluate_move(m, mv, weights=w, tol=args.tol, max_iter=args.max_iter) for mv in declared]
    weights = standard_weights(m, tol=args.tol, max_iter=args.max_iter)
    report = {
        "catalog": args.catalog if args.search else "declared",
        "growth_before": _f(weights.eigenvalue),
        "standard_weights": [_f(x) for x in weights.weights],
        "outcomes": [_outcome_report(o, labels) for o in outcomes],
    }
    text = [f"λ = {_fmt3(weights.eigenvalue)}", f"candidates with negative gain: {len(outcomes)}"]
    if outcomes:
        best = outcomes[0]
        line = (
            f"best move row={_label(labels, best.move.row)}, delta={_delta(best.move.delta)}, "
            f"λ′ = {_fmt3(best.growth_after)} ({best.branch})"
        )
        text.append(line)
        for o in outcomes[1:]:
            text.append(
                f"  row={_label(labels, o.move.row)} delta={_delta(o.move.delta)} "
                f"gain={o.gain:.3f} λ′ = {_fmt3(o.growth_after)} ({o.branch})"
            )
    return report, text


def cmd_power(args):
    m, labels, _ = _matrix_input(args.file, args)
    rows, text = [], []
    for n in args.n:
        g = growth_of_power(m, n, tol=args.tol, max_iter=args.max_iter)
        rows.append({
            "n": n,
            "lambda_of_power": _f(g.growth_of_power),
            "lambda_to_power": _f(g.power_of_growth),
            "relative_difference": _f(g.relative_difference),
        })
        text.append(
            f"n={n}: λ(M^n) = {_fmt3(g.growth_of_power)}, λ(M)^n = {_fmt3(g.power_of_growth)}, "
            f"relative difference {g.relative_difference:.1e}"
        )
    return {"powers": rows}, text


def _validation(rep):
    return {"ok": rep.ok, "violations": list(rep.violations), "notes": list(rep.notes)}


def cmd_penner(args):
    _, doc = _load(args.file, ("penner/1",))
    pair, word, _ = penner_from_doc(doc)
    rep = validate_pair(pair)
    report = {"curves": list(pair.curves), "validation": _validation(rep)}
    text = [f"necessary checks: {'passed' if rep.ok else 'FAILED'}"]
    text += [f"  violation: {v}" for v in rep.violations] + [f"  note: {n}" for n in rep.notes]
    if word is None:
        raise HandlebodyError("penner document has no twist word")
    prod = penner_product(pair, word, tol=args.tol, max_iter=args.max_iter)
    report["product"] = prod.matrix.tolist()
    report["lambda_boundary"] = _f(prod.lambda_boundary)
    text.append(f"λ_∂ = {_fmt3(prod.lambda_boundary)}")
    return report, text


def cmd_boundary_pair(args):
    _, doc = _load(args.file, ("penner/1",))
    pair, _, arc = penner_from_doc(doc)
    if args.arc:
        _, adoc = _load(args.arc, ("arc/1",))
        arc = arc_from_doc(adoc)
    if arc is None:
        raise HandlebodyError("no dual arc given (document 'arc' field or --arc FILE)")
    data = build_boundary_pair(pair, arc)
    bp = data.to_pair()
    rep = validate_pair(bp)
    report = {
        "convention": data.convention,
        "Q": list(data.Q),
        "R": list(data.R),
        "provenance": {k: list(v) for k, v in data.provenance.items()},
        "pair": penner_to_doc(bp),
        "validation": _validation(rep),
    }
    text = [
        f"convention: {data.convention}",
        f"Q = {list(data.Q)}",
        f"R = {list(data.R)}",
    ]
    names = data.Q + data.R
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            k = int(data.intersections[a, b])
            if k:
                text.append(f"  i({names[a]}, {names[b]}) = {k}")
    text.append(f"necessary checks on (Q, R): {'passed' if rep.ok else 'FAILED'}")
    return report, text


def cmd_compare(args):
    _, doc = _load(args.file, ("penner/1",))
    pair, word, _ = penner_from_doc(doc)
    if word is None:
        raise HandlebodyError("penner document has no twist word")
    if args.growth is not None:
        lam = args.growth
    elif args.matrix:
        m, _, _ = _matrix_input(args.matrix, args)
        lam = pf_eigen(m, tol=args.tol, max_iter=args.max_iter).eigenvalue
    else:
        raise HandlebodyError("give --growth VALUE or --matrix FILE")
    c = compare_growth(lam, pair, word, tol=args.tol, max_iter=args.max_iter)
    report = {
        "growth": _f(c.growth),
        "lambda_boundary": _f(c.lambda_boundary),
        "consistent": c.consistent,
        "verdict": c.message,
    }
    text = [f"λ = {_fmt3(c.growth)}, λ_∂ = {_fmt3(c.lambda_boundary)}: {c.message}"]
    return report, text


def _endo_report(e):
    ab = abelianization(e)
    det = int(round(np.linalg.det(ab))) if e.rank else 1
    surj = is_surjective(e)
    return {
        "rank": e.rank,
        "images": [format_word(w) for w in e.images],
        "abelianization": ab.tolist(),
        "abelianization_det": det,
        "surjective": surj,
        "automorphism": surj,
        "irreducibility": "not decided (necessary conditions only)",
    }


def cmd_pi1(args):
    _, doc = _load(args.file, ("graphmap/1",))
    f, extras = graphmap_from_doc(doc)
    e = induced_pi1_map(f, extras["tree"], extras["basepoint"])
    report = _endo_report(e)
    gens = [x for x in f.source.edges if x not in set(extras["tree"])]
    report["generators"] = {f"x{i + 1}": g for i, g in enumerate(gens)}
    text = [f"generators: " + ", ".join(f"x{i + 1}={g}" for i, g in enumerate(gens))]
    text += [f"  x{i + 1} -> {w or '1'}" for i, w in enumerate(report["images"])]
    text.append(f"automorphism: {'yes' if report['surjective'] else 'no'}")
    return report, text


def cmd_verify_auto(args):
    schema, doc = _load(args.file, ("endo/1", "graphmap/1"))
    if schema == "endo/1":
        e = endo_from_doc(doc)
    else:
        f, extras = graphmap_from_doc(doc)
        e = induced_pi1_map(f, extras["tree"], extras["basepoint"])
    report = _endo_report(e)
    text = [
        f"abelianization det = {report['abelianization_det']}",
        f"surjective: {'yes' if report['surjective'] else 'no'}",
        f"automorphism: {'yes' if report['automorphism'] else 'no'}",
    ]
    return report, text


COMMANDS = {
    "growth": (cmd_growth, "PF growth rate of a matrix or graph map"),
    "irreducible": (cmd_irreducible, "irreducibility and strong components"),
    "tighten": (cmd_tighten, "evaluate or search tightening moves"),
    "power": (cmd_power, "compare growth of M^n with growth^n"),
    "penner": (cmd_penner, "validate a Penner pair and compute the boundary dilatation"),
    "boundary-pair": (cmd_boundary_pair, "build the boundary Penner pair from a dual arc"),
    "compare": (cmd_compare, "compare a growth rate with the boundary dilatation"),
    "pi1": (cmd_pi1, "induced map on the fundamental group of a graph map"),
    "verify-auto": (cmd_verify_auto, "check that a free group endomorphism is an automorphism"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON report")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    common.add_argument("--catalog", choices=("swap", "free", "declared"), default="swap")

    parser = argparse.ArgumentParser(prog="handlegrowth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file")
        if name == "tighten":
            p.add_argument("--search", action="store_true")
            p.add_argument("--moves", help="move/1 document with moves to evaluate")
            p.add_argument("--max-delta", type=int, default=2, help="bound for the free catalog")
            p.add_argument("--top", type=int, default=0, help="keep only the best N outcomes")
        elif name == "power":
            p.add_argument("--n", type=int, nargs="+", default=[2])
        elif name == "boundary-pair":
            p.add_argument("--arc")
        elif name == "compare":
            p.add_argument("--growth", type=float)
            p.add_argument("--matrix")
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        report, text = func(args)
    except _Done as exc:
        print(f"error: {exc}", file=stderr)
        return exc.status
    except DocumentError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOCUMENT
    except SchemaError as exc:
        print(f"schema error: {exc}", file=stderr)
        return EXIT_SCHEMA
    except HandlebodyError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    if args.json:
        body = {"command": args.command, **report}
        body["meta"] = {"tool": "handlegrowth", "version": __version__, "input": str(args.file)}
        stdout.write(dumps(body))
    else:
        stdout.write("\n".join(text) + "\n")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
