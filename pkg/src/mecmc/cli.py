"""Command-line surface: sampling runs, spectrum diagnostics, count tables.

One binary with subcommands; every output embeds the RunConfig (seed
included) that produced it, and identical configs produce byte-identical
files.  Exact quantities (counts, rationals) are serialized as strings,
floats as plain JSON numbers.  Exit codes: 0 success, 2 invalid input,
3 state cap exceeded (override with MECMC_STATE_CAP).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import amo as amo_mod
from . import flipchain, hjy, posets
from .essential import (
    class_size,
    enumerate_essential_graphs,
    essential_graph_of_dag,
    mec_of_dag,
)
from .graphs import (
    CapExceededError,
    Pdag,
    clique_tree,
    format_dag,
    format_graph,
    format_pdag,
    parse_dag,
    parse_undirected,
    require_chordal,
)

TMIX_DENSE_CAP = 1500
MEC_LIST_CAP = 1000


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    seed: int = 0
    input: str | None = None
    steps: int | None = None
    samples: int | None = None
    nmax: int | None = None
    precision: int | None = None
    format: str = "json"
    out: str | None = None
    rng: str = "numpy-pcg64"

    def to_dict(self):
        # the output path is plumbing, not experiment identity; identical
        # configs must give byte-identical files wherever they land
        return {
            k: v
            for k, v in asdict(self).items()
            if v is not None and k != "out"
        }


def state_cap():
    raw = os.environ.get("MECMC_STATE_CAP")
    if raw is None:
        return amo_mod.DEFAULT_STATE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"MECMC_STATE_CAP must be an integer, got {raw!r}")
    if cap < 1:
        raise ValueError("MECMC_STATE_CAP must be positive")
    return cap


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _dump_json(payload):
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _read_input(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise ValueError(f"cannot read {path}: {e}")


def _arc_string(a):
    return ";".join(f"{u}>{v}" for u, v in a.key())


def cmd_sample_amo(args):
    g = parse_undirected(_read_input(args.input))
    require_chordal(g)
    if not g.is_connected():
        raise ValueError("input graph must be connected")
    config = RunConfig(
        subcommand="sample-amo",
        seed=args.seed,
        input=args.input,
        steps=args.steps,
        samples=args.samples,
        format=args.format,
        out=args.out,
    )
    space = amo_mod.build_orientation_space(g, cap=state_cap())
    rng = np.random.default_rng(args.seed)
    final = flipchain.sample_many(space, args.steps, args.samples, rng)
    counts = np.bincount(final, minlength=space.size)
    hist = {
        _arc_string(space.states[i]): int(c)
        for i, c in enumerate(counts)
        if c > 0
    }
    if args.format == "csv":
        rows = [f"# config {json.dumps(config.to_dict(), sort_keys=True)}"]
        rows.append("orientation,count")
        rows.extend(f"{k},{v}" for k, v in sorted(hist.items()))
        rows.append(f"# n_states {space.size} distinct_sampled {len(hist)}")
        _emit("\n".join(rows) + "\n", args.out)
    else:
        payload = {
            "config": config.to_dict(),
            "summary": {
                "n_states": space.size,
                "distinct_sampled": len(hist),
                "samples": args.samples,
                "steps": args.steps,
            },
            "histogram": hist,
            "orientations": {
                _arc_string(space.states[i]): format_graph(
                    g.n, (), space.states[i].key()
                )
                for i in sorted(set(final.tolist()))
            },
        }
        _emit(_dump_json(payload), args.out)
    return 0


def cmd_diagnose(args):
    g = parse_undirected(_read_input(args.input))
    require_chordal(g)
    if not g.is_connected():
        raise ValueError("input graph must be connected")
    config = RunConfig(
        subcommand="diagnose", seed=args.seed, input=args.input, out=args.out
    )
    space = amo_mod.build_orientation_space(g, cap=state_cap())
    tm = flipchain.transition_matrix(space)
    gap = flipchain.spectral_gap(tm)
    ct = clique_tree(g)
    stats = flipchain.decomposition_stats(ct)
    if len(ct.cliques) >= 2:
        mr = flipchain.madras_randall_bound(g, ct)
        bound_le_gap = bool(mr <= gap + flipchain.EIGEN_TOL)
    else:
        mr = None
        bound_le_gap = None
    cuts = flipchain.clique_cut_bottlenecks(space)
    worst = None
    if cuts:
        idx = min(cuts, key=lambda i: cuts[i].phi)
        rep = cuts[idx]
        worst = {
            "clique": list(ct.cliques[idx]),
            "phi": str(rep.phi),
            "subset_size": rep.subset_size,
            "boundary_edges": rep.boundary_edges,
            "tmix_lower": str(rep.tmix_lower),
        }
    tmix = (
        flipchain.exact_tmix(tm) if space.size <= TMIX_DENSE_CAP else None
    )
    payload = {
        "config": config.to_dict(),
        "graph": {"n": g.n, "edges": g.num_edges},
        "n_states": space.size,
        "gap_exact": gap,
        "gap_mr_bound": mr,
        "bound_le_gap": bound_le_gap,
        "decomposition": {
            "o_g": str(stats.o_g),
            "theta": stats.theta,
            "diameter": stats.diameter,
            "t_max": stats.t_max,
            "z": str(stats.z),
        },
        "phi": worst["phi"] if worst else None,
        "tmix_lower": worst["tmix_lower"] if worst else None,
        "worst_clique_cut": worst,
        "tmix_exact": tmix,
    }
    _emit(_dump_json(payload), args.out)
    return 0


def cmd_ratio(args):
    if args.nmax < 2:
        raise ValueError("--nmax must be at least 2")
    # the counts reach thousands of decimal digits well before n = 200;
    # lift the interpreter's int-to-str guard so they serialize in full
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), 50_000))
    config = RunConfig(
        subcommand="ratio",
        nmax=args.nmax,
        precision=args.precision,
        format=args.format,
        out=args.out,
    )
    rows = posets.ratio_table(args.nmax)
    if args.format == "csv":
        out = [f"# config {json.dumps(config.to_dict(), sort_keys=True)}"]
        out.append("n,essential_dags,dags,ratio,adjusted_ratio")
        for r in rows:
            out.append(
                f"{r.n},{r.essential_dags},{r.dags},"
                f"{posets.decimal_string(r.ratio, args.precision)},"
                f"{posets.decimal_string(r.adjusted, args.precision)}"
            )
        _emit("\n".join(out) + "\n", args.out)
    else:
        payload = {
            "config": config.to_dict(),
            "rows": [
                {
                    "n": r.n,
                    "essential_dags": str(r.essential_dags),
                    "dags": str(r.dags),
                    "ratio": posets.decimal_string(r.ratio, args.precision),
                    "adjusted_ratio": posets.decimal_string(
                        r.adjusted, args.precision
                    ),
                }
                for r in rows
            ],
        }
        _emit(_dump_json(payload), args.out)
    return 0


def cmd_mec(args):
    d = parse_dag(_read_input(args.input))
    config = RunConfig(subcommand="mec", input=args.input, out=args.out)
    eg = essential_graph_of_dag(d)
    size = class_size(eg)
    members = None
    if size <= MEC_LIST_CAP:
        members = sorted(format_dag(m) for m in mec_of_dag(d))
    payload = {
        "config": config.to_dict(),
        "essential_graph": format_pdag(eg),
        "class_size": str(size),
        "members": members,
    }
    _emit(_dump_json(payload), args.out)
    return 0


def cmd_hjy(args):
    n = args.nmax
    if n < 1:
        raise ValueError("--nmax (vertex count) must be at least 1")
    config = RunConfig(
        subcommand="hjy", seed=args.seed, steps=args.steps, nmax=n, out=args.out
    )
    rng = np.random.default_rng(args.seed)
    state = Pdag(n, set(), set())
    lines = [json.dumps({"config": config.to_dict()}, sort_keys=True)]
    lines.append(
        json.dumps({"step": 0, "state": hjy.state_hash(state)}, sort_keys=True)
    )
    for t in range(1, args.steps + 1):
        state, move, accepted = hjy.step(state, rng)
        lines.append(
            json.dumps(
                {
                    "step": t,
                    "kind": move.kind if move else None,
                    "vertices": list(move.vertices) if move else None,
                    "accepted": accepted,
                    "state": hjy.state_hash(state),
                },
                sort_keys=True,
            )
        )
    if n <= 4:
        states = enumerate_essential_graphs(n)
        kernel = hjy.exact_kernel(states)
        m = len(states)
        symmetric = all(
            kernel[i][j] == kernel[j][i] for i in range(m) for j in range(i)
        )
        doubly = symmetric and all(sum(row) == 1 for row in kernel)
        lines.append(
            json.dumps(
                {
                    "uniformity": {
                        "n_states": m,
                        "symmetric": symmetric,
                        "uniform_stationary": doubly,
                    }
                },
                sort_keys=True,
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="mecmc",
        description="Sample and diagnose Markov chains on graph orientations "
        "and essential graphs, and tabulate equivalence-class counts.",
        epilog="Environment: MECMC_STATE_CAP overrides the enumeration cap.",
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser(
        "sample-amo", help="run the edge-flip chain on a chordal graph"
    )
    sp.add_argument("--input", required=True, help="undirected graph file")
    sp.add_argument("--steps", type=int, default=1000)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("csv", "json"), default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sample_amo)

    sp = sub.add_parser(
        "diagnose", help="exact spectrum, decomposition bound, bottlenecks"
    )
    sp.add_argument("--input", required=True, help="undirected graph file")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_diagnose)

    sp = sub.add_parser(
        "ratio", help="DAGs-per-class count table from the poset recursions"
    )
    sp.add_argument("--nmax", type=int, default=200)
    sp.add_argument("--precision", type=int, default=13)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_ratio)

    sp = sub.add_parser(
        "mec", help="essential graph and equivalence class of a DAG"
    )
    sp.add_argument("--input", required=True, help="DAG file (arcs only)")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_mec)

    sp = sub.add_parser(
        "hjy", help="run the move chain on essential graphs from empty"
    )
    sp.add_argument(
        "--nmax", type=int, default=3, help="number of vertices"
    )
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_hjy)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as e:
        print(
            f"error: {e}\nhint: raise MECMC_STATE_CAP or use sample-amo "
            "instead of exhaustive diagnostics",
            file=sys.stderr,
        )
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
