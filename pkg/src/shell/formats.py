"""
MAP FILE FORMATS

MQ (native, text):
    MQ1 <n> <m> [C]
    one line per vertex, in increasing order of its smallest dart:
        [S|U] clockwise darts starting at the smallest one
    The record ``P1`` stands for the single-edge quasi-dual.

planar_code (binary, simple maps only):
    header ``>>planar_code<<``, then per map one byte n and, per vertex, its
    clockwise neighbours (1-based) closed by a 0 byte.

DOT (export only): undirected graph with colour attributes and the rotation
of each vertex as a comment.
"""

import logging
import struct
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from src.core.errors import (
    FormatError,
    FormatRestrictionError,
    InvalidMapError,
    MQFormatError,
    PlanarCodeError,
)
from src.core.map_core import (
    QUASI_DUAL_P1,
    Colour,
    Colouring,
    EmbeddedMap,
    QuasiDualP1,
    from_rotation,
    is_simple,
    validate,
    validate_colouring,
)

logger = logging.getLogger(__name__)

PLANAR_CODE_HEADER = b">>planar_code<<"
MQ_MAGIC = "MQ1"

Record = Tuple[Union[EmbeddedMap, QuasiDualP1], Optional[Colouring]]


# =============================================================================
# MQ
# =============================================================================

def write_mq(qmap: Union[EmbeddedMap, QuasiDualP1], colouring: Optional[Colouring] = None) -> str:
    """One MQ record, newline-terminated."""
    if isinstance(qmap, QuasiDualP1):
        return "P1\n"
    header = f"{MQ_MAGIC} {qmap.vertex_count} {qmap.edge_count}"
    lines = [header + (" C" if colouring is not None else "")]
    for v, orbit in enumerate(qmap.vertex_orbits):
        darts = " ".join(map(str, orbit))
        lines.append(f"{colouring[v].letter} {darts}" if colouring is not None else darts)
    return "\n".join(lines) + "\n"


def write_mq_stream(records: Iterable[Record]) -> str:
    return "".join(write_mq(qmap, colouring) for qmap, colouring in records)


def _parse_header(line: str, line_no: int) -> Tuple[int, int, bool]:
    tokens = line.split()
    if len(tokens) not in (3, 4) or tokens[0] != MQ_MAGIC or (len(tokens) == 4 and tokens[3] != "C"):
        raise MQFormatError(f"expected '{MQ_MAGIC} <n> <m> [C]', got '{line}'", line_no)
    try:
        n, m = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise MQFormatError(f"vertex and edge counts must be integers: '{line}'", line_no)
    if n < 1 or m < 1:
        raise MQFormatError("vertex and edge counts must be positive", line_no)
    return n, m, len(tokens) == 4


def parse_mq(text: str) -> List[Record]:
    """
    Parse every MQ record in `text`. Blank lines and lines starting with '#'
    are ignored between records.

    Raises:
        MQFormatError: With the offending line number.
    """
    lines = text.splitlines()
    records: List[Record] = []
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        line_no = i + 1
        i += 1
        if not line or line.startswith("#"):
            continue
        if line == "P1":
            records.append((QUASI_DUAL_P1, None))
            continue
        n, m, coloured = _parse_header(line, line_no)
        if i + n > len(lines):
            raise MQFormatError(f"record declares {n} vertices but the input ends", line_no)
        orbits, colours = [], []
        for k in range(n):
            vertex_line_no = i + k + 1
            tokens = lines[i + k].split()
            if coloured:
                if not tokens or tokens[0] not in ("S", "U"):
                    raise MQFormatError("coloured record needs S or U first", vertex_line_no)
                colours.append(Colour.STABLE if tokens[0] == "S" else Colour.UNSTABLE)
                tokens = tokens[1:]
            if not tokens:
                raise MQFormatError("vertex without darts", vertex_line_no)
            try:
                orbit = [int(tok) for tok in tokens]
            except ValueError:
                raise MQFormatError(f"darts must be integers: '{lines[i + k].strip()}'", vertex_line_no)
            if any(not 0 <= d < 2 * m for d in orbit):
                raise MQFormatError(f"dart out of range 0..{2 * m - 1}", vertex_line_no)
            if orbit[0] != min(orbit):
                raise MQFormatError("rotation must start at the vertex's smallest dart", vertex_line_no)
            if orbits and orbit[0] < orbits[-1][0]:
                raise MQFormatError("vertices must be ordered by their smallest dart", vertex_line_no)
            orbits.append(orbit)
        i += n
        records.append(_build_record(orbits, colours, m, coloured, line_no))
    return records


def _build_record(orbits: List[List[int]], colours: List[Colour], m: int,
                  coloured: bool, line_no: int) -> Record:
    sigma = [-1] * (2 * m)
    for orbit in orbits:
        for x, y in zip(orbit, orbit[1:] + orbit[:1]):
            if sigma[x] != -1:
                raise MQFormatError(f"dart {x} appears twice", line_no)
            sigma[x] = y
    missing = [d for d, nxt in enumerate(sigma) if nxt == -1]
    if missing:
        raise MQFormatError(f"darts {missing} are missing", line_no)
    try:
        qmap = EmbeddedMap(tuple(sigma))
    except InvalidMapError as exc:
        raise MQFormatError(str(exc), line_no)
    problems = validate(qmap)
    if problems:
        raise MQFormatError("invalid quadrangulation: " + "; ".join(problems), line_no)
    colouring = None
    if coloured:
        colouring = Colouring(tuple(colours))
        problems = validate_colouring(qmap, colouring)
        if problems:
            raise MQFormatError("invalid colouring: " + "; ".join(problems), line_no)
    return qmap, colouring


# =============================================================================
# planar_code
# =============================================================================

def write_planar_code(maps: Iterable[EmbeddedMap], header: bool = True) -> bytes:
    """
    Raises:
        FormatRestrictionError: For multigraphs or maps with 255+ vertices.
    """
    out = bytearray(PLANAR_CODE_HEADER if header else b"")
    for qmap in maps:
        if not is_simple(qmap):
            raise FormatRestrictionError("planar_code requires simple maps")
        if qmap.vertex_count > 254:
            raise FormatRestrictionError("planar_code byte format holds at most 254 vertices")
        out += struct.pack("B", qmap.vertex_count)
        for v in range(qmap.vertex_count):
            for w in qmap.neighbours(v):
                out += struct.pack("B", w + 1)
            out += struct.pack("B", 0)
    return bytes(out)


def read_planar_code(data: bytes) -> List[EmbeddedMap]:
    """
    Raises:
        PlanarCodeError: For a missing header, truncated data or bad neighbour lists.
    """
    if not data.startswith(PLANAR_CODE_HEADER):
        raise PlanarCodeError("missing >>planar_code<< header")
    pos = len(PLANAR_CODE_HEADER)
    maps = []
    while pos < len(data):
        (n,) = struct.unpack_from("B", data, pos)
        pos += 1
        adjacency: List[List[int]] = []
        for _ in range(n):
            nbrs = []
            while True:
                if pos >= len(data):
                    raise PlanarCodeError(f"map {len(maps)}: truncated neighbour list")
                (w,) = struct.unpack_from("B", data, pos)
                pos += 1
                if w == 0:
                    break
                if w > n:
                    raise PlanarCodeError(f"map {len(maps)}: neighbour {w} exceeds n={n}")
                nbrs.append(w - 1)
            adjacency.append(nbrs)
        try:
            maps.append(from_rotation(adjacency))
        except InvalidMapError as exc:
            raise PlanarCodeError(f"map {len(maps)}: {exc}")
    return maps


# =============================================================================
# DOT
# =============================================================================

def write_dot(qmap: EmbeddedMap, colouring: Optional[Colouring] = None, name: str = "Q") -> str:
    lines = [f"graph {name} {{"]
    for v, orbit in enumerate(qmap.vertex_orbits):
        lines.append(f"  // rotation {v}: {' '.join(map(str, orbit))}")
    for v in range(qmap.vertex_count):
        if colouring is None:
            lines.append(f"  {v};")
        else:
            fill = "lightblue" if colouring[v] is Colour.STABLE else "salmon"
            lines.append(f'  {v} [label="{v}{colouring[v].letter}", style=filled, fillcolor={fill}];')
    for k, (a, b) in enumerate(qmap.edges()):
        lines.append(f"  {a} -- {b} [id=e{k}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# =============================================================================
# Dispatch
# =============================================================================

def dump_records(records: Sequence[Record], fmt: str) -> Union[str, bytes]:
    """Serialize records in one of mq, planar_code or dot."""
    if fmt == "mq":
        return write_mq_stream(records)
    if any(isinstance(qmap, QuasiDualP1) for qmap, _ in records):
        raise FormatRestrictionError(f"P1 can only be written as mq, not {fmt}")
    if fmt == "planar_code":
        return write_planar_code(qmap for qmap, _ in records)
    if fmt == "dot":
        return "".join(write_dot(qmap, colouring, name=f"Q{i}")
                       for i, (qmap, colouring) in enumerate(records))
    raise FormatError(f"unknown format '{fmt}'")


def load_records(path: Path) -> List[Record]:
    """Read an MQ or planar_code file, detected by its first bytes."""
    data = Path(path).read_bytes()
    if data.startswith(PLANAR_CODE_HEADER):
        return [(qmap, None) for qmap in read_planar_code(data)]
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise FormatError(f"{path}: neither MQ text nor planar_code")
    records = parse_mq(text)
    logger.debug("read %d records from %s", len(records), path)
    return records
