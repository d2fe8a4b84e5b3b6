"""
QUADFORGE COMMAND LINE

Subcommands: gen, census, ancestor, split, contract, radial, pdw, classes,
coverage, verify, convert. Records go to stdout (or --output); progress
banners go to stderr so stdout stays machine-readable.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from config import settings
from config.census_goldens import CensusGoldens
from src.core.canon import are_isomorphic
from src.core.constructions import (
    build_p2,
    is_skeleton_name,
    named,
    pseudo_double_wheel,
    tetrahedron,
)
from src.core.errors import ConfigError, QuadforgeError
from src.core.map_core import (
    EmbeddedMap,
    QuasiDualP1,
    degrees,
    min_degree,
    radial,
    require_valid,
)
from src.core.surgery import ContractionSite, SplitWalk, contract, contract_coloured, is_irreducible, split
from src.equilibrium.census import census
from src.equilibrium.quasi_dual import (
    SINGLETON_PRIMARY_CLASSES,
    SecondaryClass,
    coloured_ancestor,
    primary_coverage,
    secondary_classes,
    singleton_seeds,
)
from src.generation.genesis import (
    GenerationLevel,
    ancestor,
    closure,
    extend_colouring,
    generate_levels,
)
from src.shell.driver import ParallelLevelExpander
from src.shell.formats import Record, dump_records, load_records, write_mq

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2
BANNER = "=" * 60


def status(message: str) -> None:
    print(message, file=sys.stderr)


@dataclass
class RunConfig:
    """Validated options of one CLI invocation."""

    command: str
    n: Optional[int] = None
    restriction: Tuple[int, int] = settings.DEFAULT_RESTRICTION
    seeds: List[str] = field(default_factory=list)
    fmt: str = "mq"
    workers: int = settings.WORKERS
    output: Optional[Path] = None

    def validate(self) -> "RunConfig":
        if self.workers < 1:
            raise ConfigError(f"worker count must be >= 1, got {self.workers}")
        i, j = self.restriction
        if i < 1 or i > j:
            raise ConfigError(f"restriction {i},{j} needs 1 <= i <= j")
        allowed = settings.REPORT_FORMATS if self.command == "census" else settings.MAP_FORMATS
        if self.fmt not in allowed:
            raise ConfigError(f"format '{self.fmt}' is not available for {self.command} "
                              f"(choose from {', '.join(allowed)})")
        if self.n is not None and self.command in ("gen", "census", "verify", "classes"):
            low = 2 if self.command == "classes" else settings.MIN_GENERATION_N
            if not low <= self.n <= settings.MAX_GENERATION_N:
                raise ConfigError(f"n must lie in [{low}, {settings.MAX_GENERATION_N}], got {self.n}")
        return self

    @property
    def expander(self) -> ParallelLevelExpander:
        return ParallelLevelExpander(self.workers)


# =============================================================================
# Argument parsing helpers
# =============================================================================

def parse_pair(text: str) -> Tuple[int, int]:
    try:
        a, b = (int(tok) for tok in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got '{text}'")
    return a, b


def emit(config: RunConfig, records: Sequence[Record]) -> None:
    payload: Union[str, bytes] = dump_records(records, config.fmt)
    if config.output is not None:
        config.output.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(payload, bytes):
            config.output.write_bytes(payload)
        else:
            config.output.write_text(payload)
        status(f"✅ wrote {len(records)} records to {config.output}")
    elif isinstance(payload, bytes):
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        sys.stdout.write(payload)


def resolve_seeds(specs: Sequence[str]) -> List[Record]:
    """Seed names (p2, pdw:4, tetra, ...) or MQ / planar_code files."""
    records: List[Record] = []
    for spec in specs:
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            path = Path(part)
            if path.exists():
                records.extend(load_records(path))
                continue
            try:
                built = named(part)
            except (KeyError, ValueError) as exc:
                raise ConfigError(f"bad seed '{part}': {exc}")
            records.append(radial(built) if is_skeleton_name(part) else (built, None))
    return records


def first_map(path: Path) -> Tuple[EmbeddedMap, object]:
    records = load_records(path)
    if not records:
        raise ConfigError(f"{path} holds no records")
    qmap, colouring = records[0]
    if isinstance(qmap, QuasiDualP1):
        raise ConfigError("P1 is not a quadrangulation")
    return require_valid(qmap), colouring


# =============================================================================
# Commands
# =============================================================================

def cmd_gen(config: RunConfig, args: argparse.Namespace) -> int:
    i, j = config.restriction
    status(f"🚀 Generating n={config.n} with S({i},{j})")
    if not config.seeds and config.restriction == settings.DEFAULT_RESTRICTION:
        level = generate_levels(config.n, config.expander)[config.n]
    else:
        seeds = resolve_seeds(config.seeds) if config.seeds else [(build_p2(), None)]
        if any(isinstance(qmap, QuasiDualP1) for qmap, _ in seeds):
            raise ConfigError("P1 cannot seed a split closure; use coverage S11")
        coloured = [s for s in seeds if s[1] is not None]
        if coloured and len(coloured) != len(seeds):
            raise ConfigError("seeds must be all coloured or all uncoloured")
        levels = closure([s if s[1] is not None else s[0] for s in seeds], i, j, config.n,
                         config.expander)
        level = levels.get(config.n, GenerationLevel(config.n))
    records = [(level.classes[c], level.colourings.get(c)) for c in level.codes()]
    emit(config, records)
    if args.witness:
        lines = [f"{child}\t{parent}\t{walk}"
                 for child, (parent, walk) in sorted(level.parent_links.items())]
        Path(args.witness).write_text("\n".join(lines) + ("\n" if lines else ""))
    status(f"✅ {len(records)} classes at n={config.n}")
    return EXIT_OK


def cmd_census(config: RunConfig, args: argparse.Namespace) -> int:
    status(BANNER)
    status(f"🚀 CENSUS up to s+u={config.n} ({config.workers} workers)")
    status(BANNER)
    expander = config.expander
    report = census(config.n, expander, expander.tally)
    if config.fmt == "csv":
        directory = config.output or settings.OUTPUT_DIR
        for path in report.write_csv(directory):
            status(f"✅ wrote {path}")
    else:
        text = report.to_text()
        if config.output is not None:
            config.output.write_text(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_ancestor(config: RunConfig, args: argparse.Namespace) -> int:
    out = []
    for qmap, colouring in load_records(Path(args.file)):
        if isinstance(qmap, QuasiDualP1):
            out.append(write_mq(qmap))
            continue
        result = ancestor(require_valid(qmap), colouring)
        out.extend(f"# contract {site}\n" for site in result.witnesses)
        if colouring is not None:
            cls = coloured_ancestor(SecondaryClass.of(qmap, colouring))
            if cls.is_p1:
                out.append("# inverse C0\n")
            out.append(write_mq(cls.representative, cls.colouring))
        else:
            out.append(write_mq(result.ancestor))
    sys.stdout.write("".join(out))
    return EXIT_OK


def _parse_walk(qmap: EmbeddedMap, text: str) -> SplitWalk:
    try:
        parts = [int(tok) for tok in text.split(":")]
    except ValueError:
        raise ConfigError(f"walk must consist of integers, got '{text}'")
    if len(parts) == 2:
        return SplitWalk.at(qmap, parts[0], parts[1])
    if len(parts) == 3:
        walk = SplitWalk.at(qmap, parts[1], parts[2])
        if walk.v != parts[0]:
            raise ConfigError(f"darts {parts[1]}, {parts[2]} are not at vertex {parts[0]}")
        return walk
    raise ConfigError(f"walk must be 'd_first:d_last' or 'v:d_first:d_last', got '{text}'")


def cmd_split(config: RunConfig, args: argparse.Namespace) -> int:
    qmap, colouring = first_map(Path(args.file))
    walk = _parse_walk(qmap, args.walk)
    child = split(qmap, walk)
    child_colouring = extend_colouring(qmap, colouring, child, walk) if colouring is not None else None
    emit(config, [(child, child_colouring)])
    return EXIT_OK


def _parse_site(qmap: EmbeddedMap, text: str) -> ContractionSite:
    dart_text, _, axis_text = text.partition("/")
    try:
        dart, axis = int(dart_text), int(axis_text or 0)
    except ValueError:
        raise ConfigError(f"site must be 'dart/axis', got '{text}'")
    if not 0 <= dart < qmap.dart_count or axis not in (0, 1):
        raise ConfigError(f"site must be 'dart/axis' with axis 0 or 1, got '{text}'")
    face = [dart]
    for _ in range(3):
        face.append(qmap.phi[face[-1]])
    return ContractionSite(tuple(face), axis)


def cmd_contract(config: RunConfig, args: argparse.Namespace) -> int:
    qmap, colouring = first_map(Path(args.file))
    site = _parse_site(qmap, args.site)
    if colouring is not None:
        emit(config, [contract_coloured(qmap, colouring, site)])
    else:
        emit(config, [(contract(qmap, site), None)])
    return EXIT_OK


def cmd_radial(config: RunConfig, args: argparse.Namespace) -> int:
    path = Path(args.skeleton)
    if path.exists():
        skeletons = [qmap for qmap, _ in load_records(path)]
    else:
        try:
            skeletons = [named(args.skeleton)]
        except (KeyError, ValueError) as exc:
            raise ConfigError(str(exc))
    emit(config, [radial(g) for g in skeletons])
    return EXIT_OK


def cmd_pdw(config: RunConfig, args: argparse.Namespace) -> int:
    emit(config, [(pseudo_double_wheel(args.k), None)])
    return EXIT_OK


def cmd_classes(config: RunConfig, args: argparse.Namespace) -> int:
    classes = secondary_classes(config.n)
    if args.primary:
        s, u = args.primary
        classes = [c for c in classes if (c.primary.s, c.primary.u) == (s, u)]
    emit(config, [(c.representative, c.colouring) for c in classes])
    status(f"✅ {len(classes)} secondary classes")
    return EXIT_OK


def cmd_coverage(config: RunConfig, args: argparse.Namespace) -> int:
    key = args.mode.upper()
    seeds = None
    if key == "S22" and args.drop_seed:
        dropped = set(args.drop_seed)
        seeds = singleton_seeds(p for p in SINGLETON_PRIMARY_CLASSES if p not in dropped)
    reached = primary_coverage(key, args.max_total, seeds)
    expected = {(s, n - s) for n in range(2, args.max_total + 1) for s in range(1, n)}
    missing = sorted(expected - reached)
    for s, u in sorted(reached):
        print(f"{s},{u}")
    if missing:
        status(f"❌ {key} misses {len(missing)} primary classes: {missing}")
        return EXIT_FAILURE
    status(f"✅ {key} reaches all {len(expected)} primary classes with s+u <= {args.max_total}")
    return EXIT_OK


def run_checks(N: int, expander: ParallelLevelExpander) -> List[Tuple[str, bool, str]]:
    """Golden, identity and structural checks up to N; (name, passed, detail) rows."""
    checks = []
    levels = generate_levels(N, expander)
    report = census(N, expander, expander.tally, levels=levels)
    mismatches = report.golden_mismatches()
    checks.append(("census tables", not mismatches, "; ".join(mismatches[:5])))
    checks.append(("2q - e_SD = sum e", not report.inconsistencies(), ""))

    irreducible = {n: [levels[n].classes[c] for c in levels[n].codes()
                       if is_irreducible(levels[n].classes[c])]
                   for n in range(4, N + 1)}
    counts = {n: len(maps) for n, maps in irreducible.items()}
    expected = {n: c for n, c in CensusGoldens.IRREDUCIBLE_COUNTS.items() if n <= N}
    checks.append(("irreducible counts", counts == expected, f"{counts}"))
    witnesses = [(8, radial(tetrahedron())[0]), (10, pseudo_double_wheel(4))]
    for n, reference in witnesses:
        if n <= N and len(irreducible.get(n, [])) == 1:
            checks.append((f"irreducible at n={n}", are_isomorphic(irreducible[n][0], reference), ""))

    weak = [n for n in levels for q in levels[n].classes.values()
            if min_degree(q) == 3 and degrees(q)[3] < 8]
    checks.append(("min degree 3 => 8 vertices of degree 3", not weak, f"{weak[:5]}"))
    return checks


def cmd_verify(config: RunConfig, args: argparse.Namespace) -> int:
    status(BANNER)
    status(f"🚀 VERIFY up to n={config.n}")
    status(BANNER)
    checks = run_checks(config.n, config.expander)
    for name, passed, detail in checks:
        mark = "✅" if passed else "❌"
        status(f"{mark} {name}" + (f": {detail}" if detail and not passed else ""))
    failed = [name for name, passed, _ in checks if not passed]
    status(BANNER)
    status("✅ ALL CHECKS PASSED" if not failed else f"❌ {len(failed)} CHECKS FAILED")
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_convert(config: RunConfig, args: argparse.Namespace) -> int:
    emit(config, load_records(Path(args.file)))
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "census": cmd_census,
    "ancestor": cmd_ancestor,
    "split": cmd_split,
    "contract": cmd_contract,
    "radial": cmd_radial,
    "pdw": cmd_pdw,
    "classes": cmd_classes,
    "coverage": cmd_coverage,
    "verify": cmd_verify,
    "convert": cmd_convert,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadforge",
        description="Spherical multiquadrangulations: generation, ancestors and equilibrium census")
    parser.add_argument("--workers", type=int, default=settings.WORKERS,
                        help="Worker processes (default: QUADFORGE_WORKERS or 1)")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_output(p: argparse.ArgumentParser, formats=settings.MAP_FORMATS, default="mq"):
        p.add_argument("--format", dest="fmt", default=default, help=f"One of {', '.join(formats)}")
        p.add_argument("--output", "-o", type=Path, help="Output file (default: stdout)")
        return p

    p = with_output(sub.add_parser("gen", help="Generate all classes with n vertices"))
    p.add_argument("-n", type=int, required=True, help="Vertex count")
    p.add_argument("--restrict", type=parse_pair, default=settings.DEFAULT_RESTRICTION,
                   help="Split degree bounds i,j (default 1,3)")
    p.add_argument("--seeds", action="append", default=[],
                   help="Seed constructions (p2, pdw:4, tetra, ...) or MQ files, comma separated")
    p.add_argument("--witness", help="Write child/parent/walk witness triples here")

    p = with_output(sub.add_parser("census", help="Equilibrium census tables"),
                    settings.REPORT_FORMATS, "text")
    p.add_argument("-N", dest="n", type=int, required=True, help="Largest s + u")

    p = sub.add_parser("ancestor", help="Irreducible ancestor of each record in a file")
    p.add_argument("file")

    p = with_output(sub.add_parser("split", help="Split the first map of a file"))
    p.add_argument("file")
    p.add_argument("--walk", required=True, help="d_first:d_last or v:d_first:d_last")

    p = with_output(sub.add_parser("contract", help="Contract a face of the first map of a file"))
    p.add_argument("file")
    p.add_argument("--site", required=True, help="dart/axis: face through dart, corner pair 0 or 1")

    p = with_output(sub.add_parser("radial", help="Coloured radial graph of a skeleton"))
    p.add_argument("skeleton", help="tetra, cube, octa, pyramid:k, prism:k or a planar_code file")

    p = with_output(sub.add_parser("pdw", help="Pseudo-double wheel"))
    p.add_argument("-k", type=int, required=True)

    p = with_output(sub.add_parser("classes", help="Secondary classes with n = s + u"))
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--primary", type=parse_pair, help="Only the primary class s,u")

    p = sub.add_parser("coverage", help="Primary classes reached by S11 or S22 closures")
    p.add_argument("mode", choices=["S11", "S22", "s11", "s22"])
    p.add_argument("--max-total", type=int, default=9)
    p.add_argument("--drop-seed", type=parse_pair, action="append", default=[],
                   help="Leave out an S22 seed class s,u")

    p = sub.add_parser("verify", help="Check census goldens and identities")
    p.add_argument("-N", dest="n", type=int, default=8)

    p = with_output(sub.add_parser("convert", help="Re-encode a map file"))
    p.add_argument("file")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig(
            command=args.command,
            n=getattr(args, "n", None),
            restriction=getattr(args, "restrict", settings.DEFAULT_RESTRICTION),
            seeds=getattr(args, "seeds", []),
            fmt=getattr(args, "fmt", "mq"),
            workers=args.workers,
            output=getattr(args, "output", None),
        ).validate()
        return COMMANDS[args.command](config, args)
    except ConfigError as exc:
        status(f"❌ {exc}")
        return EXIT_USAGE
    except (QuadforgeError, OSError) as exc:
        status(f"❌ {exc}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
