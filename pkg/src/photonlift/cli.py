"""Command-line front end, ``photonlift <subcommand> ...``.

Exit status:
    0  success (``s-from-u``: Realizable)
    1  unreadable file or parse error (reported with its line number)
    2  usage error
    3  ``s-from-u`` found the target NotInImage
    4  a precondition failed (non-unitary input, wrong dimension, ...)

Matrices are read and written in the text format of :mod:`photonlift.textio`.
When ``--out`` is omitted the result goes to stdout. ``PHOTONLIFT_TOL``
overrides the unitarity tolerance used to validate input matrices.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import bench, circuits, fock, inverse, lift, linalg, textio
from .errors import ParseError, PhotonLiftError

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_NOT_IN_IMAGE = 3
EXIT_PRECONDITION = 4

_METHOD_CHOICES = ("heisenberg", "perm", "ryser", "ham", "naive", "hamiltonian")


def _emit_matrix(path, A) -> None:
    textio.write_text(path, textio.dumps_matrix(A), sys.stdout)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_s_to_u(args) -> int:
    S = textio.read_matrix(args.input)
    B = fock.basis(S.shape[0], args.photons)
    U = lift.s_to_u(S, args.photons, B, method=args.method, tol=linalg.default_tol())
    _emit_matrix(args.out, U.matrix)
    if args.basis_out:
        Path(args.basis_out).write_text(textio.dumps_basis(B))
    return EXIT_OK


def cmd_s_from_u(args) -> int:
    U = textio.read_matrix(args.input)
    result = inverse.s_from_u(
        U, args.modes, args.photons, tol=args.tol, perm=args.perm, force=args.force,
        unitary_tol=linalg.default_tol(),
    )
    print(result.status)
    print(f"max residual: {result.max_residual:.6e}")
    if not result.realizable:
        return EXIT_NOT_IN_IMAGE
    print(f"distance: {result.distance:.6e}")
    print(f"phase: {result.phase:.17g}")
    if result.permutation is not None:
        print("permutation: " + " ".join(str(i) for i in result.permutation))
    if args.out:
        textio.write_matrix(args.out, result.S)
    else:
        _emit_matrix(None, result.S)
    return EXIT_OK


def cmd_toponogov(args) -> int:
    U = textio.read_matrix(args.input)
    report = inverse.toponogov(
        U, args.modes, args.photons, tries=args.tries, conv_tol=args.tol, max_iter=args.max_iter,
        seed=args.seed, workers=args.workers,
    )
    prefix = args.out_prefix
    lines = ["# rank try distance iterations file"]
    for rank, a in enumerate(report.distinct(), 1):
        u_file = f"{prefix}_{rank}_U.txt"
        textio.write_matrix(u_file, a.U, header=f"distance {a.distance!r}")
        textio.write_matrix(f"{prefix}_{rank}_S.txt", a.S)
        lines.append(f"{rank} {a.try_index} {a.distance!r} {a.iterations} {Path(u_file).name}")
    Path(f"{prefix}_summary.txt").write_text("\n".join(lines) + "\n")
    print(f"best distance: {report.best.distance:.6f}")
    print(f"distinct results: {len(report.distinct())} of {len(report.attempts)} tries")
    return EXIT_OK


def cmd_decompose(args) -> int:
    S = textio.read_matrix(args.input)
    elements = circuits.SCHEMES[args.scheme](S, tol=linalg.default_tol())
    textio.write_text(args.out, textio.dumps_elements(elements), sys.stdout)
    return EXIT_OK


def cmd_quasi(args) -> int:
    M = textio.read_matrix(args.input)
    dec = circuits.quasi_decompose(M, scheme=args.scheme)
    prefix = args.out_prefix
    textio.write_matrix(f"{prefix}_U.txt", dec.U)
    textio.write_matrix(f"{prefix}_D.txt", np.diag(dec.D))
    textio.write_matrix(f"{prefix}_W.txt", dec.W)
    textio.write_elements(f"{prefix}_elements.txt", dec.elements)
    textio.write_matrix(f"{prefix}_quasi.txt", dec.quasi.matrix)
    print(f"losses: {len(dec.losses)}  gains: {len(dec.gains)}  modes: {dec.quasi.modes}")
    return EXIT_OK


def cmd_lift_h(args) -> int:
    H = textio.read_matrix(args.input)
    _emit_matrix(args.out, lift.lift_hamiltonian(H, args.photons))
    return EXIT_OK


def cmd_log(args) -> int:
    U = textio.read_matrix(args.input)
    _emit_matrix(args.out, linalg.principal_log_unitary(U, linalg.default_tol()))
    return EXIT_OK


def cmd_qft(args) -> int:
    _emit_matrix(args.out, linalg.qft_matrix(args.size))
    return EXIT_OK


def cmd_rand_u(args) -> int:
    _emit_matrix(args.out, linalg.haar_random_unitary(args.size, args.seed))
    return EXIT_OK


def cmd_rand_m(args) -> int:
    _emit_matrix(args.out, linalg.random_complex_matrix(args.rows, args.cols, args.seed))
    return EXIT_OK


def cmd_rand_im_u(args) -> int:
    S, U = inverse.rand_image_unitary(args.modes, args.photons, seed=args.seed)
    _emit_matrix(args.out, U.matrix)
    if args.s_out:
        textio.write_matrix(args.s_out, S)
    return EXIT_OK


def _read_state(args) -> fock.StateVector:
    psi = textio.read_state(args.state)
    if args.modes is not None and psi.basis.m != args.modes:
        raise PhotonLiftError(f"state has {psi.basis.m} modes, --modes says {args.modes}")
    if args.photons is not None and psi.basis.n != args.photons:
        raise PhotonLiftError(f"state has {psi.basis.n} photons, --photons says {args.photons}")
    return psi


def cmd_schmidt(args) -> int:
    psi = _read_state(args)
    ranks = fock.schmidt_rank_vector(psi, None, args.grouping, tol=args.tol)
    print(" ".join(map(str, ranks)))
    return EXIT_OK


def cmd_state_truncate(args) -> int:
    psi = _read_state(args)
    if args.fidelity is not None:
        terms, weights = fock.state_leading_fidelity(psi, None, args.fidelity)
        out = fock.state_in_basis(terms, weights, psi.basis)
    else:
        out = fock.state_leading_terms(psi, args.prob)
    textio.write_text(args.out, textio.dumps_state(out), sys.stdout)
    return EXIT_OK


def cmd_bench(args) -> int:
    methods = lift.METHODS if args.methods == "all" else tuple(args.methods.split(","))
    config = bench.BenchConfig(
        modes=tuple(range(args.modes_min, args.modes_max + 1)),
        photons=tuple(range(args.photons_min, args.photons_max + 1)),
        methods=methods,
        reps=args.reps,
        source=args.source,
        seed=args.seed,
    )
    records, pinned = bench.bench_run(config)
    textio.write_text(args.out, bench.records_to_csv(records, pinned), sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="photonlift", description="Linear-optics evolution tools.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("s-to-u", cmd_s_to_u, "n-photon evolution phi(S) of a scattering matrix")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--photons", type=int, required=True)
    sp.add_argument("--method", choices=_METHOD_CHOICES, default="ryser")
    sp.add_argument("--out")
    sp.add_argument("--basis-out")

    sp = add("s-from-u", cmd_s_from_u, "recover S from a target n-photon unitary")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--modes", type=int, required=True)
    sp.add_argument("--photons", type=int, required=True)
    sp.add_argument("--tol", type=float, default=inverse.ADJOINT_TOL, help="adjoint residual tolerance")
    sp.add_argument("--perm", action="store_true", help="also try every reordering of the basis")
    sp.add_argument("--force", action="store_true", help="allow --perm beyond M = 8")
    sp.add_argument("--out")

    sp = add("toponogov", cmd_toponogov, "locally closest realizable evolution")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--modes", type=int, required=True)
    sp.add_argument("--photons", type=int, required=True)
    sp.add_argument("--tries", type=int, default=1)
    sp.add_argument("--tol", type=float, default=inverse.CONV_TOL, help="minimum per-step improvement")
    sp.add_argument("--max-iter", type=int, default=inverse.MAX_ITER)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out-prefix", required=True)

    sp = add("decompose", cmd_decompose, "beam-splitter mesh for a unitary S")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--scheme", choices=sorted(circuits.SCHEMES), default="clements")
    sp.add_argument("--out")

    sp = add("quasi", cmd_quasi, "lossy/amplifying network for an arbitrary matrix")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--scheme", choices=sorted(circuits.SCHEMES), default="clements")
    sp.add_argument("--out-prefix", required=True)

    sp = add("lift-h", cmd_lift_h, "n-photon Hamiltonian from a single-photon one")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--photons", type=int, required=True)
    sp.add_argument("--out")

    sp = add("log", cmd_log, "Hermitian principal logarithm K with exp(iK) = U")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out")

    sp = add("qft", cmd_qft, "unitary DFT matrix")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--out")

    sp = add("rand-u", cmd_rand_u, "Haar-random unitary")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    sp = add("rand-m", cmd_rand_m, "random complex matrix")
    sp.add_argument("--rows", type=int, required=True)
    sp.add_argument("--cols", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    sp = add("rand-im-u", cmd_rand_im_u, "random realizable n-photon evolution")
    sp.add_argument("--modes", type=int, required=True)
    sp.add_argument("--photons", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.add_argument("--s-out", help="also write the scattering matrix")

    for name, func, help_ in (
        ("schmidt", cmd_schmidt, "Schmidt rank vector of a state"),
        ("state-truncate", cmd_state_truncate, "keep the leading terms of a state"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--state", required=True)
        sp.add_argument("--modes", type=int)
        sp.add_argument("--photons", type=int)
        if name == "schmidt":
            sp.add_argument("--grouping", type=_int_list, required=True)
            sp.add_argument("--tol", type=float, default=fock.SCHMIDT_TOL)
        else:
            mode = sp.add_mutually_exclusive_group(required=True)
            mode.add_argument("--fidelity", type=float)
            mode.add_argument("--prob", type=float)
            sp.add_argument("--out")

    sp = add("bench", cmd_bench, "time the four phi(S) methods over an (m, n) grid")
    sp.add_argument("--modes-min", type=int, default=2)
    sp.add_argument("--modes-max", type=int, default=5)
    sp.add_argument("--photons-min", type=int, default=2)
    sp.add_argument("--photons-max", type=int, default=5)
    sp.add_argument("--methods", default="all", help="'all' or a comma-separated list")
    sp.add_argument("--reps", type=int, default=5)
    sp.add_argument("--source", choices=bench.SOURCES, default="haar")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"photonlift: parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"photonlift: {exc}", file=sys.stderr)
        return EXIT_IO
    except PhotonLiftError as exc:
        print(f"photonlift: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
