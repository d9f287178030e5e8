"""Command-line entry point: JSON in, CSV or JSON out.

Exit status is 0 on success, 1 for invalid input (bad flags, malformed JSON,
violated preconditions) and 2 for numeric-domain errors met while computing.
"""

from __future__ import annotations

import argparse
import csv
import functools
import io
import json
import os
import sys
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import analysis, axioms, dynamics, entropy, phasespace
from .errors import DomainError, InputError, SignedEntropyError
from .measure import SignedMeasure

SEED_ENV = "SIGNED_ENTROPY_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x) + 0.0:.12g}"  # + 0.0 folds -0.0 into 0.0
    return str(x)


def emit_csv(rows: Iterable[Sequence], header: Sequence[str], stream: TextIO | None = None) -> str:
    """Write ``header`` then ``rows`` as CSV with 12 significant digits.

    Returns the text written; if ``stream`` is given the text also goes there.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text.rstrip("\n")


def load_json(arg: str, what: str):
    """Parse ``arg`` as a path to a JSON file, or else as inline JSON."""
    text = arg
    source = "inline"
    try:
        path = Path(arg)
        if len(arg) < 4096 and path.is_file():
            text, source = path.read_text(), str(path)
    except OSError:
        pass
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} ({source}): invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def parse_measure(arg: str, what: str = "measure") -> SignedMeasure:
    data = load_json(arg, what)
    if isinstance(data, dict):
        if "values" not in data:
            raise InputError(f"{what}: missing field 'values'")
        data = data["values"]
    if not isinstance(data, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in data):
        raise InputError(f"{what}: field 'values' must be a list of numbers")
    return SignedMeasure(data)


def parse_complex_matrix(arg: str, what: str) -> np.ndarray:
    """Square matrix whose entries are reals or ``[re, im]`` pairs."""
    data = load_json(arg, what)
    if isinstance(data, dict) and "entries" in data:
        data = data["entries"]
    try:
        rows = [[complex(e[0], e[1]) if isinstance(e, list) else complex(e) for e in row] for row in data]
        mat = np.array(rows, dtype=complex)
    except (TypeError, ValueError, IndexError):
        raise InputError(f"{what}: expected a square matrix of numbers or [re, im] pairs") from None
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InputError(f"{what}: expected a square matrix, got shape {mat.shape}")
    return mat


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return args.seed


# --- subcommands ------------------------------------------------------------


def cmd_entropy(args, out: TextIO) -> int:
    needs_alpha = args.kind in ("signed-renyi", "classical-renyi")
    if needs_alpha and args.alpha is None:
        raise InputError(f"--kind {args.kind} requires --alpha")
    if needs_alpha:
        entropy.check_alpha(args.alpha)
    p = parse_measure(args.measure)
    out.write(_fmt(entropy.entropy_function(args.kind, args.alpha)(p)) + "\n")
    return 0


def cmd_witness(args, out: TextIO) -> int:
    result = analysis.negativity_witness(parse_measure(args.measure))
    out.write(json.dumps(result.to_json()) + "\n")
    return 0


def cmd_majorize(args, out: TextIO) -> int:
    q, p = parse_measure(args.q, "q"), parse_measure(args.p, "p")
    out.write(_fmt(analysis.majorizes(q, p)) + "\n")
    return 0


def cmd_sweep(args, out: TextIO) -> int:
    p = parse_measure(args.measure)
    grid = analysis.inv_alpha_grid(args.start, args.stop, args.step)
    curve = analysis.alpha_sweep(p, grid)
    emit_csv(curve.points, ["inv_alpha", "entropy_bits"], out)
    return 0


def cmd_evolve(args, out: TextIO) -> int:
    alphas = _float_list(args.alphas)
    for a in alphas:
        entropy.check_alpha(a)
    if args.dt <= 0 or args.t_end < 0 or args.every < 1:
        raise InputError("need --dt > 0, --t-end >= 0 and --every >= 1")
    rates = dynamics.TransitionRateMatrix(load_json(args.rates, "rates")) if args.rates else dynamics.TransitionRateMatrix(dynamics.FIGURE1_RATES)
    p0 = parse_measure(args.initial, "initial") if args.initial else SignedMeasure(dynamics.FIGURE1_INITIAL)
    traj = dynamics.evolve(p0, rates, args.t_end, args.dt)
    n = len(p0)
    header = ["t"] + [f"p_{i + 1}" for i in range(n)]
    header += [f"H_renyi_{a:g}" for a in alphas] + ["H_shannon", "H_renorm"]
    keep = set(range(0, len(traj), args.every)) | {len(traj) - 1}
    rows = []
    for k in sorted(keep):
        state = SignedMeasure(traj.states[k])
        row = [traj.times[k], *state.values]
        row += [entropy.signed_renyi(state, a) for a in alphas]
        row += [entropy.signed_shannon(state), entropy.renormalized_entropy(state)]
        rows.append(row)
    emit_csv(rows, header, out)
    return 0


def _initial_density(choice: str, d: int, rng) -> phasespace.DensityMatrix:
    if choice == "mixed":
        return phasespace.DensityMatrix.maximally_mixed(d)
    if choice == "basis0":
        return phasespace.DensityMatrix.basis(d, 0)
    if choice == "random":
        return phasespace.random_pure_state(d, rng)
    return phasespace.DensityMatrix(parse_complex_matrix(choice, "state"))


def cmd_wigner(args, out: TextIO) -> int:
    if args.dt <= 0 or args.t_end < 0 or args.every < 1:
        raise InputError("need --dt > 0, --t-end >= 0 and --every >= 1")
    rng = np.random.default_rng(_seed(args))
    basis = phasespace.build_phase_point_basis(args.dim)
    if args.hamiltonian:
        h = parse_complex_matrix(args.hamiltonian, "hamiltonian")
    else:
        h = phasespace.random_hermitian(args.dim, rng)
    rho = _initial_density(args.state, args.dim, rng)
    liou = phasespace.build_liouvillian(h, basis)
    w0 = phasespace.wigner_from_density(rho, basis)
    traj = phasespace.evolve_wigner(w0, liou, args.t_end, args.dt)
    header = ["t", "V", "H2_bits", "Hren_bits"] + [f"W_{i + 1}" for i in range(args.dim ** 2)]
    keep = set(range(0, len(traj), args.every)) | {len(traj) - 1}
    rows = []
    for k in sorted(keep):
        t, w = traj[k]
        m = SignedMeasure(w.values)
        rows.append([t, phasespace.quadratic_moment(w), entropy.signed_renyi(m, 2.0), entropy.renormalized_entropy(m), *w.values])
    emit_csv(rows, header, out)
    return 0


def cmd_axioms(args, out: TextIO) -> int:
    alphas = _float_list(args.alpha_set)
    for a in alphas:
        entropy.check_alpha(a)
    if args.batch < 1:
        raise InputError("--batch must be >= 1")
    reports = axioms.run_axiom_suite(args.batch, _seed(args), alphas)
    for r in reports:
        line = f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.cases} cases"
        line += f", {r.failures} failures)" if r.failures else ")"
        if r.notes:
            line += "  " + "; ".join(r.notes)
        out.write(line + "\n")
        if r.counterexample is not None and not r.passed:
            out.write(f"      counterexample: {r.counterexample}\n")
    pq = axioms.direct_product(axioms.LEMMA_P, axioms.LEMMA_Q)
    e = args.e_over_d
    out.write(f"linear kernel, e/d={e:g}: H(P)={axioms.linear_g_entropy(axioms.LEMMA_P, e):.12g} "
              f"H(Q)={axioms.linear_g_entropy(axioms.LEMMA_Q, e):.12g} "
              f"H(P*Q)={axioms.linear_g_entropy(pq, e):.12g}\n")
    for a in alphas:
        rep = axioms.lemma_counterexample_report(e, a)
        vals = [axioms.exponential_g_entropy(m, a, e) for m in (axioms.LEMMA_P, axioms.LEMMA_Q, pq)]
        out.write(f"exponential kernel, alpha={a:g}, e/d={e:g}: H(P)={vals[0]:.12g} H(Q)={vals[1]:.12g} "
                  f"H(P*Q)={vals[2]:.12g} extensivity gap={rep.exponential_gap:.6g}\n")
    return 0 if all(r.passed for r in reports) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="signed-entropy", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help=f"RNG seed (overridden by ${SEED_ENV})")
    parser.add_argument("-o", "--output", help="write to this file instead of stdout")
    # same options after the subcommand; SUPPRESS keeps the top-level value when absent
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("-o", "--output", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    add = functools.partial(sub.add_parser, parents=[common])

    p = add("entropy", help="entropy of one measure, in bits")
    p.add_argument("measure", help='JSON file or inline JSON, e.g. \'{"values": [2, -1]}\'')
    p.add_argument("--alpha", type=float)
    p.add_argument("--kind", choices=entropy.KINDS, default="signed-renyi")
    p.set_defaults(func=cmd_entropy)

    p = add("witness", help="search for alpha > 1 with negative entropy")
    p.add_argument("measure")
    p.set_defaults(func=cmd_witness)

    p = add("majorize", help="print true iff Q majorizes P")
    p.add_argument("q")
    p.add_argument("p")
    p.set_defaults(func=cmd_majorize)

    p = add("sweep", help="signed Renyi entropy over a grid of 1/alpha (CSV)")
    p.add_argument("measure")
    p.add_argument("--from", dest="start", type=float, default=0.05)
    p.add_argument("--to", dest="stop", type=float, default=0.90)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_sweep)

    p = add("evolve", help="master-equation trajectory with entropies (CSV)")
    p.add_argument("--rates", help="n x n JSON rate matrix (default: the 3-state example)")
    p.add_argument("--initial", help="initial measure JSON (default: (-1/7, 3/7, 5/7))")
    p.add_argument("--t-end", type=float, default=10.0)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--alphas", default="2")
    p.add_argument("--every", type=int, default=1, help="emit every k-th step")
    p.set_defaults(func=cmd_evolve)

    p = add("wigner", help="discrete Wigner evolution under a Hamiltonian (CSV)")
    p.add_argument("--dim", type=int, choices=(3, 5, 7), default=3)
    p.add_argument("--hamiltonian", help="d x d JSON of [re, im] pairs (default: random from seed)")
    p.add_argument("--state", default="basis0", help='density-matrix JSON, "mixed", "basis0" or "random"')
    p.add_argument("--t-end", type=float, default=5.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--every", type=int, default=100)
    p.set_defaults(func=cmd_wigner)

    p = add("axioms", help="randomized axiom checks and counterexample values")
    p.add_argument("--batch", type=int, default=1000)
    p.add_argument("--alpha-set", default="0.5,2,3")
    p.add_argument("--e-over-d", type=float, default=0.5)
    p.set_defaults(func=cmd_axioms)
    return parser


def dispatch(args: argparse.Namespace, out: TextIO) -> int:
    if getattr(args, "func", None) is None:
        raise InputError("missing subcommand; choose one of entropy, witness, majorize, sweep, evolve, wigner, axioms")
    return args.func(args, out)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.output:
            with open(args.output, "w", newline="") as fh:
                return dispatch(args, fh)
        return dispatch(args, sys.stdout)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except SignedEntropyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
