"""
Graph text format.

    # comment
    n m
    u v w          (m lines; w is a decimal or `inf`)
    h              (optional section)
    h(0)           (n lines; decimal, `inf` or `-inf`)

Edges get ids in line order, which fixes their TieBreak order.
"""
import logging
import re
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Tuple, Union

from bottleneck.core.exceptions import GraphFormatError, InvalidInstanceError
from bottleneck.core.graph import INF, NEG_INF, CsssbpInstance, Graph

logger = logging.getLogger(__name__)

# Pre-compile token patterns once; the parser runs over every line of large inputs
_DECIMAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
INT_PATTERN = re.compile(r"\d+")
WEIGHT_PATTERN = re.compile(rf"(?:{_DECIMAL}|\+?inf)", re.IGNORECASE)
CAPACITY_PATTERN = re.compile(rf"(?:{_DECIMAL}|[+-]?inf)", re.IGNORECASE)
H_MARKER = "h"


class ParsedGraph(NamedTuple):
    graph: Graph
    h: Optional[List[float]]

    def as_csssbp(self) -> CsssbpInstance:
        if self.h is None:
            raise InvalidInstanceError("graph has no h section")
        return CsssbpInstance(self.graph, self.h)


def format_value(x: float) -> str:
    """Lossless text for a weight or capacity, with `inf`/`-inf` literals."""
    if x == INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def _parse_float(token: str, pattern: re.Pattern, line_no: int, what: str) -> float:
    if not pattern.fullmatch(token):
        raise GraphFormatError(f"invalid {what} {token!r}", line_no)
    return float(token)


def _parse_int(token: str, line_no: int, what: str) -> int:
    if not INT_PATTERN.fullmatch(token):
        raise GraphFormatError(f"invalid {what} {token!r}", line_no)
    return int(token)


def _content_lines(lines: Iterable[str]) -> Iterable[Tuple[int, List[str]]]:
    for line_no, raw in enumerate(lines, 1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield line_no, tokens


def parse_graph(text: str) -> ParsedGraph:
    """Parse the text format; errors carry the offending line number."""
    rows = _content_lines(text.splitlines())

    header = next(rows, None)
    if header is None:
        raise GraphFormatError("missing header line `n m`", 1)
    line_no, tokens = header
    if len(tokens) != 2:
        raise GraphFormatError("header must be `n m`", line_no)
    n = _parse_int(tokens[0], line_no, "node count")
    m = _parse_int(tokens[1], line_no, "edge count")

    src: List[int] = []
    dst: List[int] = []
    weight: List[float] = []
    for _ in range(m):
        row = next(rows, None)
        if row is None:
            raise GraphFormatError(f"expected {m} edge lines, found {len(src)}", line_no + 1)
        line_no, tokens = row
        if len(tokens) != 3:
            raise GraphFormatError("edge line must be `u v w`", line_no)
        u = _parse_int(tokens[0], line_no, "node id")
        v = _parse_int(tokens[1], line_no, "node id")
        if u >= n or v >= n:
            raise GraphFormatError(f"node id outside [0, {n})", line_no)
        src.append(u)
        dst.append(v)
        weight.append(_parse_float(tokens[2], WEIGHT_PATTERN, line_no, "weight"))

    h: Optional[List[float]] = None
    row = next(rows, None)
    if row is not None:
        line_no, tokens = row
        if tokens != [H_MARKER]:
            raise GraphFormatError(f"unexpected content {' '.join(tokens)!r}", line_no)
        h = []
        for _ in range(n):
            row = next(rows, None)
            if row is None:
                raise GraphFormatError(f"expected {n} capacity lines, found {len(h)}", line_no + 1)
            line_no, tokens = row
            if len(tokens) != 1:
                raise GraphFormatError("capacity line must hold one value", line_no)
            h.append(_parse_float(tokens[0], CAPACITY_PATTERN, line_no, "capacity"))
        extra = next(rows, None)
        if extra is not None:
            raise GraphFormatError("trailing content after h section", extra[0])

    try:
        graph = Graph.from_arrays(n, src, dst, weight)
    except InvalidInstanceError as e:
        raise GraphFormatError(str(e)) from e
    return ParsedGraph(graph, h)


def serialize_graph(graph: Graph, h: Optional[Iterable[float]] = None) -> str:
    """Write edges in TieBreak id order so parsing restores the same order."""
    order = sorted(range(graph.m), key=graph.eid.__getitem__)
    lines = [f"{graph.n} {graph.m}"]
    for e in order:
        lines.append(f"{graph.src[e]} {graph.dst[e]} {format_value(graph.weight[e])}")
    if h is not None:
        lines.append(H_MARKER)
        lines.extend(format_value(x) for x in h)
    return "\n".join(lines) + "\n"


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_no = data.count(b"\n", 0, e.start) + 1
        raise GraphFormatError(f"invalid UTF-8 byte {data[e.start:e.start + 1]!r}", line_no) from e


def read_graph(path: Union[str, Path]) -> ParsedGraph:
    text = _decode(Path(path).read_bytes())
    parsed = parse_graph(text)
    logger.info(f"Read {parsed.graph!r} from {path}")
    return parsed


def write_graph(path: Union[str, Path], graph: Graph, h: Optional[Iterable[float]] = None) -> None:
    Path(path).write_text(serialize_graph(graph, h))
    logger.info(f"Wrote {graph!r} to {path}")
