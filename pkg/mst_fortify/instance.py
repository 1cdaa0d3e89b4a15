"""
The instance file grammar and the exact rational codec used by every output.

An instance file lists the vertex count on its first non-comment line, then one
edge (or arc) per line as ``u v weight cost [cap]``. ``#`` starts a comment,
blank lines are ignored and an omitted cap (or ``inf``) means unbounded.
"""

import math
from collections.abc import Iterator
from fractions import Fraction

from .errors import FortifyError, InstanceParseError
from .flows import FlowNetwork
from .graph import WeightedGraph


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, int | Fraction):
        return Fraction(text)
    value = text.strip()
    numerator, _, denominator = value.partition("/")
    try:
        if denominator:
            return Fraction(int(numerator), int(denominator))
        return Fraction(int(numerator))
    except (ValueError, ZeroDivisionError) as error:
        raise FortifyError(f"{value!r} is not an exact rational of the form p or p/q") from error


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, content.split()


def _integer(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceParseError(f"{what} {token!r} is not an integer", line=line) from None


def _records(text: str) -> tuple[int, list[tuple[int, ...]], list[int]]:
    lines = _lines(text)
    header = next(lines, None)
    if header is None:
        raise InstanceParseError("missing vertex count", line=1)
    number, tokens = header
    if len(tokens) != 1:
        raise InstanceParseError("the first line must hold only the vertex count", line=number)
    vertex_count = _integer(tokens[0], number, "vertex count")
    if vertex_count < 1:
        raise InstanceParseError("vertex count must be positive", line=number)
    records = []
    numbers = []
    for number, tokens in lines:
        if len(tokens) not in (4, 5):
            raise InstanceParseError(
                f"expected 'u v weight cost [cap]', got {len(tokens)} fields", line=number
            )
        u, v, weight, cost = (
            _integer(token, number, what)
            for token, what in zip(tokens[:4], ("endpoint", "endpoint", "weight", "cost"), strict=True)
        )
        cap = math.inf
        if len(tokens) == 5 and tokens[4].lower() not in ("inf", "infinity"):
            cap = _integer(tokens[4], number, "cap")
        for endpoint in (u, v):
            if not 0 <= endpoint < vertex_count:
                raise InstanceParseError(
                    f"endpoint {endpoint} is outside [0, {vertex_count})", line=number
                )
        if u == v:
            raise InstanceParseError(f"self-loop at vertex {u}", line=number)
        if weight < 0 or cap < 0:
            raise InstanceParseError("weights and caps must be non-negative", line=number)
        if cost < 1:
            raise InstanceParseError("costs must be at least 1", line=number)
        records.append((u, v, weight, cost, cap))
        numbers.append(number)
    return vertex_count, records, numbers


def parse_instance(text: str) -> WeightedGraph:
    vertex_count, records, _ = _records(text)
    try:
        return WeightedGraph.from_edges(vertex_count, records)
    except FortifyError as error:
        raise InstanceParseError(error.message) from error


def parse_network(text: str, *, source: int | None = None, sink: int | None = None) -> FlowNetwork:
    """Reads the same grammar as directed arcs ``tail head base cost [cap]``."""
    vertex_count, records, _ = _records(text)
    try:
        return FlowNetwork.from_arcs(
            vertex_count,
            records,
            source=0 if source is None else source,
            sink=vertex_count - 1 if sink is None else sink,
        )
    except FortifyError as error:
        raise InstanceParseError(error.message) from error


def format_instance(g: WeightedGraph) -> str:
    lines = [str(g.vertex_count)]
    for edge in g.edges:
        fields = [edge.u, edge.v, edge.weight, edge.cost]
        if edge.capped:
            fields.append(edge.cap)
        lines.append(" ".join(str(field) for field in fields))
    return "\n".join(lines) + "\n"
