"""
Extremal symmetric (-1,1)-matrices and graphs
Command-line entry point: constructions, certification, graph builders, bounds,
exhaustive search and the brute-force property lab
"""

import argparse
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

# Import config
from config import settings

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)

logger = logging.getLogger(__name__)

# Import models
from models import BlowupSpec, SearchConfig, SearchStatus, ZeroDiag

# Import services
from services import (
    SpectraService,
    LatinService,
    HadamardService,
    ConstructionService,
    GraphFactoryService,
    SrgBoundsService,
    SearchService,
    PropertyLabService
)
from services.property_lab_service import PROPERTY_NAMES

# Import utils
from utils import MatrixFileCodec, ReportRenderer
from utils.errors import CertificationError, NonConvergenceError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_REJECTED = 3
EXIT_BUDGET = 4
EXIT_UNKNOWN_COMMAND = 64

SUBCOMMANDS = (
    "construct", "certify", "spectrum", "graph", "construct-graph",
    "bounds", "search", "lab", "latin", "hadamard",
)

# Initialize services
spectra_service = SpectraService()
latin_service = LatinService()
hadamard_service = HadamardService()
construction_service = ConstructionService(hadamard_service, latin_service, spectra_service)
graph_factory_service = GraphFactoryService(construction_service, spectra_service)
srg_bounds_service = SrgBoundsService()
search_service = SearchService(construction_service)
property_lab_service = PropertyLabService(spectra_service)


def _emit(obj) -> None:
    print(ReportRenderer.render_json(obj))


def _manifest(args, argv: List[str], outputs: List[Path], inputs: Optional[List[Path]] = None) -> None:
    ReportRenderer.write_manifest(
        outputs[0], args.command, argv,
        inputs=inputs or [], outputs=outputs,
        wall_time=time.perf_counter() - args.started,
    )


#===========================================
# CONSTRUCTIONS AND CERTIFICATION
#===========================================

def cmd_construct(args, argv: List[str]) -> int:
    builders = {
        "thkhn": construction_service.build_thkhn,
        "thj": construction_service.build_thj,
        "thj1": construction_service.build_thj1,
    }
    b, recipe = builders[args.family](args.s, args.n)
    out = Path(args.out)
    MatrixFileCodec.write_pmm(out, b)
    _manifest(args, argv, [out])
    _emit(recipe)
    return EXIT_OK


def cmd_certify(args, argv: List[str]) -> int:
    source = Path(args.file)
    b = MatrixFileCodec.read_pmm(source)
    certificate = construction_service.sk_certify(b, args.k, mode=args.mode)
    if args.report:
        report = Path(args.report)
        report.write_text(ReportRenderer.render_json(certificate) + "\n")
        _manifest(args, argv, [report], inputs=[source])
    _emit(certificate)
    if not certificate.is_member:
        logger.error(f"{source} is not certified as a member of S_{args.k}: {certificate.verdict.value}")
        return EXIT_REJECTED
    return EXIT_OK


def cmd_spectrum(args, argv: List[str]) -> int:
    m = MatrixFileCodec.read_any(args.file)
    _emit(spectra_service.spectrum_report(m, args.ky_fan or []))
    return EXIT_OK


#===========================================
# GRAPHS
#===========================================

def cmd_graph(args, argv: List[str]) -> int:
    out = Path(args.out)
    if args.blowup:
        if not args.input:
            raise ValueError("--blowup needs --in FILE.adj")
        source = Path(args.input)
        g = MatrixFileCodec.read_adj(source)
        blown = graph_factory_service.blowup(g, BlowupSpec(t=args.t, closed=args.blowup == "closed"))
        MatrixFileCodec.write_adj(out, blown)
    else:
        if not args.from_file:
            raise ValueError("--transform needs --from FILE.pmm")
        source = Path(args.from_file)
        b = MatrixFileCodec.read_pmm(source)
        if args.transform == "half-shift":
            g = graph_factory_service.half_shift(b, args.t, args.sign, ZeroDiag(args.zero_diag))
            MatrixFileCodec.write_adj(out, g)
        else:
            MatrixFileCodec.write_pmm(out, graph_factory_service.doubling(b))
    _manifest(args, argv, [out], inputs=[source])
    return EXIT_OK


def _certified_input(args):
    if args.k is None:
        raise ValueError(f"--family {args.family} needs --k")
    if args.from_file:
        return construction_service.certified(MatrixFileCodec.read_pmm(args.from_file), args.k)
    return construction_service.build_sk_member(args.k)


def cmd_construct_graph(args, argv: List[str]) -> int:
    out = Path(args.out)
    inputs = [Path(args.from_file)] if args.from_file else []
    family = args.family

    if family in ("thp", "thck"):
        if args.s is None:
            raise ValueError(f"--family {family} needs --s")
        builder = graph_factory_service.build_thp if family == "thp" else graph_factory_service.build_thck
        built = [builder(args.s, args.t, args.n)]
    elif family == "thck1":
        if not args.from_file:
            raise ValueError("--family thck1 needs --from FILE.pmm with a regular member of S_k")
        built = [graph_factory_service.build_thck1(_certified_input(args), args.t)]
    elif family == "thmx":
        built = [graph_factory_service.build_thmx(_certified_input(args), args.t)]
    elif family == "kyfan-hadamard":
        h = MatrixFileCodec.read_pmm(args.from_file) if args.from_file else hadamard_service.regular_order4()
        built = [graph_factory_service.build_kyfan_hadamard(h, args.n or 1)]
    else:
        if args.k is None:
            raise ValueError("--family thng needs --k")
        built = list(graph_factory_service.build_thng_pair(args.k, args.t))

    outputs = [out]
    MatrixFileCodec.write_adj(out, built[0].graph)
    if len(built) > 1:
        complement_out = out.with_name(f"{out.stem}-complement{out.suffix}")
        MatrixFileCodec.write_adj(complement_out, built[1].graph)
        outputs.append(complement_out)
    _manifest(args, argv, outputs, inputs=inputs)

    certificates = [b.certificate for b in built]
    _emit(certificates[0] if len(certificates) == 1 else certificates)
    failed = [c.name for cert in certificates for c in cert.claims if not c.passed]
    if failed:
        logger.error(f"Graph certificate claims failed: {failed}")
        return EXIT_REJECTED
    return EXIT_OK


#===========================================
# BOUNDS
#===========================================

def _plain(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{settings.FLOAT_SIGNIFICANT_DIGITS}g}"
    return str(value)


def cmd_bounds(args, argv: List[str]) -> int:
    if args.table:
        df = srg_bounds_service.bound_table(args.table, args.k_max)
        if args.json:
            _emit(df)
        elif args.csv:
            print(df.to_csv(index=False), end="")
        else:
            print(df.to_string(index=False))
        return EXIT_OK

    if args.k is None:
        raise ValueError("--name needs --k")
    reports = srg_bounds_service.evaluate(args.name, args.k, args.n)
    if args.json or len(reports) > 1:
        _emit(reports[0] if len(reports) == 1 else reports)
    else:
        print(_plain(reports[0].value))
    return EXIT_OK


#===========================================
# SEARCH
#===========================================

def cmd_search(args, argv: List[str]) -> int:
    fields = {
        "k": args.k,
        "order": args.order,
        "symmetry_reduction": not args.no_symmetry,
        "resume_token": Path(args.resume).read_text() if args.resume else None,
    }
    if args.budget is not None:
        fields["budget"] = args.budget
    if args.workers is not None:
        fields["workers"] = args.workers
    logger.info(f"Search seed {args.seed} (branch order is deterministic)")
    result = search_service.search_sk(SearchConfig(**fields))

    if result.witness is not None and args.out:
        out = Path(args.out)
        MatrixFileCodec.write_pmm(out, result.witness)
        _manifest(args, argv, [out])
    if result.resume_token and args.token_out:
        Path(args.token_out).write_text(result.resume_token)
        logger.info(f"Resume token written to {args.token_out}")

    _emit(result)
    if result.status == SearchStatus.BUDGET_EXCEEDED:
        return EXIT_BUDGET
    return EXIT_OK


#===========================================
# PROPERTY LAB
#===========================================

def cmd_lab(args, argv: List[str]) -> int:
    run = property_lab_service.run_property(
        args.property, k=args.k, n_max=args.n_max, samples=args.samples, seed=args.seed,
    )
    if args.json:
        _emit(run)
    else:
        print(PropertyLabService.summary(run).to_string(index=False))
    for violation in run.violations:
        logger.error(f"{violation.claim} fails at order {violation.order} (k={violation.k}): {violation.detail}\n"
                     f"{violation.witness_adj or ''}")
    return EXIT_REJECTED if run.violations else EXIT_OK


#===========================================
# LATIN SQUARES AND HADAMARD MATRICES
#===========================================

def cmd_latin(args, argv: List[str]) -> int:
    if args.kind == "back-circulant":
        square = latin_service.back_circulant(args.s)
    else:
        square = latin_service.const_diag_symmetric(args.s)
    if args.json:
        _emit({"square": square, "report": latin_service.validate(square)})
    else:
        print(LatinService.render_text(square), end="")
    return EXIT_OK


def cmd_hadamard(args, argv: List[str]) -> int:
    if args.kind == "sylvester":
        if args.m is None:
            raise ValueError("--kind sylvester needs --m")
        h = hadamard_service.sylvester(args.m)
    elif args.kind == "paley2":
        if args.q is None:
            raise ValueError("--kind paley2 needs --q")
        h = hadamard_service.paley2(args.q)
    else:
        h = hadamard_service.regular_order4()

    if args.out:
        out = Path(args.out)
        MatrixFileCodec.write_pmm(out, h)
        _manifest(args, argv, [out])
    else:
        print(MatrixFileCodec.serialize_pmm(h), end="")
    return EXIT_OK


#===========================================
# PARSER AND DISPATCH
#===========================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extremal",
        description="Extremal symmetric (-1,1)-matrices, S_k membership and extremal eigenvalue graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "construct",
        help="Latin-square block construction of an S_k member, written as PMM (thKHN, thj, thj1)",
    )
    p.add_argument("--family", choices=["thkhn", "thj", "thj1"], required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser(
        "certify",
        help="Certify membership of a PMM matrix in S_k (k B^3 = n^2 B, inertia from the trace)",
    )
    p.add_argument("--k", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--float", dest="mode", action="store_const", const="float")
    p.add_argument("--report")
    p.add_argument("file")
    p.set_defaults(handler=cmd_certify, mode="exact")

    p = sub.add_parser(
        "spectrum",
        help="Eigenvalues, singular values and Ky Fan norms of a PMM or ADJ file (cyclic Jacobi)",
    )
    p.add_argument("file")
    p.add_argument("--ky-fan", type=int, nargs="+", dest="ky_fan")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser(
        "graph",
        help="Half-shift or doubling of a PMM matrix, or blowup of an ADJ graph (half-shift, doubling, blowup)",
    )
    action = p.add_mutually_exclusive_group(required=True)
    action.add_argument("--transform", choices=["half-shift", "double"])
    action.add_argument("--blowup", choices=["open", "closed"])
    p.add_argument("--from", dest="from_file")
    p.add_argument("--in", dest="input")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--sign", type=int, choices=[1, -1], default=1)
    p.add_argument("--zero-diag", choices=[z.value for z in ZeroDiag], default=ZeroDiag.AUTO.value)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_graph)

    p = sub.add_parser(
        "construct-graph",
        help="Extremal graph builders with spectral certificates (thp, thng, thck, thck1, kyfan-hadamard, thmx)",
    )
    p.add_argument("--family", choices=["thp", "thng", "thck", "thck1", "kyfan-hadamard", "thmx"], required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--from", dest="from_file")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_construct_graph)

    p = sub.add_parser(
        "bounds",
        help="Closed-form bounds on c_k, c_k*, Nordhaus-Gaddum and Ky Fan constants "
             "(srg and Taylor graph spectra; each report carries its citation)",
    )
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--name", choices=srg_bounds_service.bound_names)
    which.add_argument("--table", choices=["ck", "ckstar", "ng", "kyfan"])
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k-max", type=int, default=16)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser(
        "search",
        help="Exhaustive search for a member of S_k of a given order (feasibility filter, interlacing pruning)",
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--resume")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--workers", type=int)
    p.add_argument("--seed", type=int, default=settings.DEFAULT_SEED,
                   help="branch order is deterministic; the seed is only logged")
    p.add_argument("--out")
    p.add_argument("--token-out")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("lab", help="Brute-force check of a graph eigenvalue inequality (lob, weyl, th1_spro, ng_kyfan)")
    p.add_argument("--property", choices=list(PROPERTY_NAMES), required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_lab)

    p = sub.add_parser(
        "latin",
        help="Back-circulant or constant-diagonal symmetric Latin square (back_circulant, const_diag_symmetric)",
    )
    p.add_argument("--kind", choices=["back-circulant", "const-diag"], required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_latin)

    p = sub.add_parser(
        "hadamard",
        help="Symmetric Hadamard matrix from the catalog (sylvester, paley2, regular_order4)",
    )
    p.add_argument("--kind", choices=["sylvester", "paley2", "regular4"], required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_hadamard)

    return parser


def dispatch(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or (not argv[0].startswith("-") and argv[0] not in SUBCOMMANDS):
        logger.error(f"Unknown subcommand: {argv[0] if argv else '(none)'}; expected one of {', '.join(SUBCOMMANDS)}")
        return EXIT_UNKNOWN_COMMAND

    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID
    args.started = time.perf_counter()

    try:
        return args.handler(args, argv)
    except CertificationError as e:
        logger.error(f"Certification failed: {str(e)}")
        return EXIT_REJECTED
    except (ValueError, ArithmeticError, NonConvergenceError, OSError) as e:
        logger.error(f"{args.command} failed: {str(e)}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(dispatch())
