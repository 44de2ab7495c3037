"""Command line entry point. Each sub-command parses its arguments, delegates to the library packages and
turns the outcome into an exit code: 0 ok, 1 verification failure, 2 precondition failure, 3 malformed input."""

import argparse
import logging
import sys
from pathlib import Path

from algebra import altspace, matrix
from algebra.altspace import Witness
from algebra.field import FieldCtx
from combinatorics import hypergraph, randgen
from groups import baer
from ramsey import SolverTools
from transfer import instancefiles
from util import RamseyLogging
from util.Configurator import Configurator
from util.InstrumentationStatistics import InstrumentationStatistics as statistics
from util.RamseyErrors import (BudgetExceeded, DegreeTooHigh, EvenCharacteristic, InputError,
                               InternalInvariantViolation, PreconditionFailed, TooLarge)
from util.util import GenMode, WitnessKind

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PRECONDITION = 2
EXIT_MALFORMED = 3

_PRECONDITION_ERRORS = (PreconditionFailed, BudgetExceeded, TooLarge, EvenCharacteristic, DegreeTooHigh)


def get_logger():
    return RamseyLogging.getLogger(__name__)


def solve_cmd(args):
    """Solves the instance in args.instance and writes the verified witness to args.out.
    Parameters:
    -----------
    args: attributes instance, s, t, truncate_to_t and out.
    """
    a = instancefiles.read_instance(args.instance)
    witness, trace = SolverTools.solve(a, args.s, args.t, truncate_to_t=args.truncate_to_t or None)
    report = altspace.verify_witness(a, witness, args.s, args.t)
    instancefiles.write_witness(witness, report, args.out)
    get_logger().info("%s witness written to %s", WitnessKind.numToFriendlyString(witness.kind), args.out)
    print(f"{witness.kind.value} witness of dimension {witness.dim}; measured restriction dimension "
          f"{report.measured_dim}; restarts {trace.step2_restarts}, injections {trace.step4_injections}")
    statistics.getStatistics().logReport()
    statistics.destroyStatistics()
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def verify_cmd(args):
    a = instancefiles.read_instance(args.instance)
    witness = instancefiles.read_witness(args.witness, a.ctx, a.n)
    report = altspace.verify_witness(a, witness, args.s, args.t)
    print(f"kind={report.kind.value} dim={report.dim} measured_dim={report.measured_dim} "
          f"required_dim={report.required_dim} ok={report.ok}")
    if not report.ok:
        get_logger().warning("Witness rejected: %s", report.reason)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def gen_uniform_cmd(args):
    spec = randgen.GenSpec(args.p, args.n, args.m, args.seed, GenMode.UNIFORM)
    instancefiles.write_instance(randgen.gen_uniform(spec), args.out)
    return EXIT_OK


def gen_bgh_cmd(args):
    a, (n, m) = randgen.gen_bgh_lower(args.s, args.t, args.p, args.seed)
    instancefiles.write_instance(a, args.out)
    print(f"n={n} m={m} generic isotropic bound {randgen.bgh_bound(n, m)}")
    return EXIT_OK


def gen_hypergraph_cmd(args):
    h = instancefiles.read_hypergraph(args.input)
    a = hypergraph.to_altspace(h, FieldCtx(args.p))
    instancefiles.write_instance(a, args.out)
    return EXIT_OK


def check_prop_alpha_cmd(args):
    """alpha(H) = alpha(phi_H) on every graph up to max_n vertices (ell = 2) or on seeded random
    ell-uniform hypergraphs on max_n vertices."""
    ctx = FieldCtx(args.q)
    if args.ell == 2:
        corpus = [h for n in range(1, args.max_n + 1) for h in hypergraph.all_graphs(n)]
    else:
        corpus = [randgen.gen_hypergraph(args.max_n, args.ell, args.seed, i) for i in range(args.count)]
    failures = 0
    print("n\tedges\talpha_h\talpha_phi\tequal")
    for h in corpus:
        rep = hypergraph.check_prop_alpha(h, ctx)
        failures += not rep.equal
        print(f"{h.n}\t{h.m}\t{rep.alpha_h}\t{rep.alpha_phi}\t{rep.equal}")
    print(f"{len(corpus) - failures}/{len(corpus)} hypergraphs agree over GF({args.q})")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def check_baer_cmd(args):
    """Heisenberg group from <A_{1,2}> on F_p^2 and the abelian group from the zero map."""
    ctx = FieldCtx(args.p)
    heis = altspace.from_bilinear_map(ctx, 2, 1, [altspace.elementary_alternating(2, 0, 1, ctx)])
    g = baer.build_group(heis)
    laws = baer.check_laws(g)
    plane = Witness(WitnessKind.COMPLETE, matrix.whole_space(ctx, 2))
    comp = baer.corollary1_check(g, plane, 2, 2)
    target = baer.free_group_target(args.p, 2)
    realized = len(target.realize())
    zero = baer.build_group(altspace.zero_space(ctx, 2))
    iso = baer.corollary1_check(zero, Witness(WitnessKind.ISOTROPIC, matrix.whole_space(ctx, 2)), 2, 2)
    print(f"order={g.order} associative={laws.associative} class_two={laws.class_two} "
          f"exponent_p={laws.exponent_p} commutator_matches={laws.commutator_matches}")
    print(f"complete lifts generate order {comp.subgroup_order} (|F_{{{args.p},2,2}}| = {target.order}, "
          f"{realized} normal forms distinct)")
    print(f"isotropic lifts commute: {iso.lifts_commute}")
    ok = laws.ok and comp.ok and iso.ok and realized == target.order and g.order == args.p ** 3
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def check_bgh_cmd(args):
    report = randgen.bgh_experiment(args.s, args.t, args.p, args.trials, args.seed, workers=args.workers)
    if args.out:
        with open(Path(args.out), 'w', encoding="utf-8") as f:
            instancefiles.write_trials_csv(report, f)
    else:
        instancefiles.write_trials_csv(report, sys.stdout)
    get_logger().info("n=%d m=%d: %.2f of trials have isotropic number <= %d", report.n, report.m,
                      report.isotropic_below_s, args.s - 1)
    if not report.complete_below_t:
        get_logger().error("A trial has a complete space of dimension %d although m=%d < C(%d,2)", args.t,
                           report.m, args.t)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def bounds_cmd(args):
    rep = SolverTools.bounds(args.s, args.t)
    print(f"s={rep.s} t={rep.t}")
    print(f"lower: instance on n={rep.lower_n} with m={rep.lower_m} (generic isotropic bound "
          f"{rep.generic_isotropic_bound} <= s-1), so R >= {rep.lower} over algebraically closed fields")
    print(f"upper: every instance on n >= s*t^4 = {rep.upper} has a witness")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="ramseyScripts")
    parser.add_argument("--logfile", help="Also write log messages to this file.", default=None)
    parser.add_argument("--loglevel", help="Root log level.", default=None)
    subparsers = parser.add_subparsers(help="Sub-command help", dest="command")
    subparsers.required = True

    solveparser = subparsers.add_parser("solve", help="Construct and verify a Ramsey witness for an instance.")
    solveparser.add_argument("--instance", required=True, help="Instance JSON file.")
    solveparser.add_argument("--s", type=int, required=True, help="Dimension of the isotropic witness.")
    solveparser.add_argument("--t", type=int, required=True, help="Dimension of the complete witness.")
    solveparser.add_argument("--truncate-to-t", dest="truncate_to_t", action="store_true",
                             help="Return a complete witness of dimension exactly t instead of t+1.")
    solveparser.add_argument("--out", required=True, help="Where to write the witness JSON.")
    solveparser.set_defaults(func=solve_cmd)

    verifyparser = subparsers.add_parser("verify", help="Check a witness file against an instance.")
    verifyparser.add_argument("--instance", required=True)
    verifyparser.add_argument("--witness", required=True)
    verifyparser.add_argument("--s", type=int, required=True)
    verifyparser.add_argument("--t", type=int, required=True)
    verifyparser.set_defaults(func=verify_cmd)

    genparser = subparsers.add_parser("gen", help="Generate instance files.")
    gensub = genparser.add_subparsers(dest="gen_command")
    gensub.required = True
    uniform = gensub.add_parser("uniform", help="Uniform random alternating matrices.")
    uniform.add_argument("--p", type=int, required=True)
    uniform.add_argument("--n", type=int, required=True)
    uniform.add_argument("--m", type=int, required=True)
    uniform.add_argument("--seed", type=int, default=0)
    uniform.add_argument("--out", required=True)
    uniform.set_defaults(func=gen_uniform_cmd)
    bgh = gensub.add_parser("bgh", help="Random instance at the lower-bound parameters for s and t.")
    bgh.add_argument("--s", type=int, required=True)
    bgh.add_argument("--t", type=int, required=True)
    bgh.add_argument("--p", type=int, default=2)
    bgh.add_argument("--seed", type=int, default=0)
    bgh.add_argument("--out", required=True)
    bgh.set_defaults(func=gen_bgh_cmd)
    hyper = gensub.add_parser("hypergraph", help="The alternating space of a graph given in edge-list format.")
    hyper.add_argument("--input", required=True, help="Text file: 'n ell' then one edge per line, 1-based.")
    hyper.add_argument("--p", type=int, default=2)
    hyper.add_argument("--out", required=True)
    hyper.set_defaults(func=gen_hypergraph_cmd)

    checkparser = subparsers.add_parser("check", help="Run one of the correspondence suites.")
    checksub = checkparser.add_subparsers(dest="check_command")
    checksub.required = True
    prop = checksub.add_parser("prop-alpha", help="Independence number against isotropic number.")
    prop.add_argument("--max-n", dest="max_n", type=int, default=4)
    prop.add_argument("--ell", type=int, default=2)
    prop.add_argument("--q", type=int, default=2)
    prop.add_argument("--count", type=int, default=50, help="Random hypergraphs to try when ell > 2.")
    prop.add_argument("--seed", type=int, default=0)
    prop.set_defaults(func=check_prop_alpha_cmd)
    baerparser = checksub.add_parser("baer", help="Group laws and subgroup orders of the Heisenberg instance.")
    baerparser.add_argument("--p", type=int, default=3)
    baerparser.set_defaults(func=check_baer_cmd)
    bghexp = checksub.add_parser("bgh-experiment", help="Exact isotropic and complete numbers of random "
                                                        "instances at the lower-bound parameters.")
    bghexp.add_argument("--s", type=int, required=True)
    bghexp.add_argument("--t", type=int, required=True)
    bghexp.add_argument("--p", type=int, default=2)
    bghexp.add_argument("--trials", type=int, default=20)
    bghexp.add_argument("--seed", type=int, default=0)
    bghexp.add_argument("--workers", type=int, default=None)
    bghexp.add_argument("--out", default=None, help="CSV destination; stdout when omitted.")
    bghexp.set_defaults(func=check_bgh_cmd)

    boundsparser = subparsers.add_parser("bounds", help="Print the explicit lower and upper bounds.")
    boundsparser.add_argument("--s", type=int, required=True)
    boundsparser.add_argument("--t", type=int, required=True)
    boundsparser.set_defaults(func=bounds_cmd)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logger = RamseyLogging.getLogger("__main__")
    level = args.loglevel or Configurator.getConfig().getProperty("logging", "level")
    if level:
        RamseyLogging.setLevel(level)
    handler = None
    if args.logfile:
        handler = RamseyLogging.addLogHandler(logging.FileHandler(args.logfile, encoding="utf-8"),
                                              Configurator.getConfig().getProperty("logging", "format"))
    try:
        return args.func(args)
    except _PRECONDITION_ERRORS as e:
        logger.error("Precondition failed: %s", e)
        return EXIT_PRECONDITION
    except InputError as e:
        logger.error("Malformed input: %s", e)
        return EXIT_MALFORMED
    except InternalInvariantViolation as e:
        logger.error("Internal check failed: %s", e)
        return EXIT_VERIFY_FAILED
    finally:
        if handler:
            logging.getLogger().removeHandler(handler)
            handler.close()


if __name__ == "__main__":
    sys.exit(main())
