"""DIMACS-like text formats for graphs, colorings and witnesses, plus the sweep CSV.

Vertices are 1-indexed on disk and 0-indexed in memory; the conversion
happens only here.

    p edge <n> <m>      graph header, then m lines ``e <u> <v>``
    p kcol <n> <m_red>  coloring header, listing the red edges of K_n
    w <kind> <size> [<case>]   witness header, then ``v <index>`` lines
    c ...               comment
"""
import csv
import io
from pathlib import Path

from models.errors import GraphFormatError, InvalidInput
from models.graph_model import Graph, TwoColoring, graph_from_pairs
from models.witness_model import CaseUsed, HomogeneousWitness, WitnessKind

CSV_HEADER = ["n", "k", "C", "case", "witness_kind", "witness_size", "target", "ratio", "seed", "elapsed_ms"]

_HEADER_KINDS = ("edge", "kcol")


def _content_lines(text):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if tokens and tokens[0] != "c":
            yield line_no, tokens


def _int_token(token, line_no, path):
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {token!r}", line_no, path) from None


def parse_instance(text, path=None):
    """Parse a graph or coloring file; returns a Graph or a TwoColoring."""
    header = None
    us, vs = [], []
    seen = set()
    for line_no, tokens in _content_lines(text):
        if tokens[0] == "p":
            if header is not None:
                raise GraphFormatError("second problem line", line_no, path)
            if len(tokens) != 4 or tokens[1] not in _HEADER_KINDS:
                raise GraphFormatError("problem line must be 'p edge <n> <m>' or 'p kcol <n> <m>'", line_no, path)
            n, m = _int_token(tokens[2], line_no, path), _int_token(tokens[3], line_no, path)
            if n < 0 or m < 0:
                raise GraphFormatError("negative vertex or edge count", line_no, path)
            header = (tokens[1], n, m)
        elif tokens[0] == "e":
            if header is None:
                raise GraphFormatError("edge line before the problem line", line_no, path)
            if len(tokens) != 3:
                raise GraphFormatError("edge line must be 'e <u> <v>'", line_no, path)
            u, v = _int_token(tokens[1], line_no, path), _int_token(tokens[2], line_no, path)
            n = header[1]
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", line_no, path)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"endpoint outside 1..{n}", line_no, path)
            pair = (min(u, v) - 1, max(u, v) - 1)
            if pair in seen:
                raise GraphFormatError(f"duplicate edge {u} {v}", line_no, path)
            seen.add(pair)
            us.append(pair[0])
            vs.append(pair[1])
        else:
            raise GraphFormatError(f"unknown line type {tokens[0]!r}", line_no, path)
    if header is None:
        raise GraphFormatError("missing problem line", path=path)
    kind, n, m = header
    if len(us) != m:
        raise GraphFormatError(f"header announces {m} edges but {len(us)} were listed", path=path)
    graph = graph_from_pairs(n, us, vs)
    return TwoColoring(n=n, red=graph) if kind == "kcol" else graph


def format_graph(g, kind="edge"):
    lines = [f"p {kind} {g.n} {g.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def format_coloring(c):
    return format_graph(c.red, kind="kcol")


def _read_text(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise GraphFormatError(f"not UTF-8 text (byte {exc.start})", path=str(path)) from exc


def _write_text(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot write {path}: {exc.strerror}") from exc


def read_instance(path):
    return parse_instance(_read_text(path), path=str(path))


def read_graph(path):
    instance = read_instance(path)
    if not isinstance(instance, Graph):
        raise GraphFormatError("expected a 'p edge' graph file", path=str(path))
    return instance


def read_coloring(path):
    instance = read_instance(path)
    if not isinstance(instance, TwoColoring):
        raise GraphFormatError("expected a 'p kcol' coloring file", path=str(path))
    return instance


def write_graph(g, path):
    _write_text(path, format_graph(g))


def write_coloring(c, path):
    _write_text(path, format_coloring(c))


def format_witness(w):
    lines = [f"w {w.kind.value} {w.size} {w.case_used.value}"]
    lines.extend(f"v {v + 1}" for v in w.vertices)
    return "\n".join(lines) + "\n"


def format_trace(trace):
    """Trace as ``c trace`` comment lines, so it can follow a witness in the same file."""
    history = " ".join(f"{iteration}:{size}" for iteration, size in trace.clique_history)
    lines = [
        f"case {trace.case_used.value}",
        f"target {trace.target!r}",
        "w_removed " + " ".join(str(v + 1) for v in trace.w_removed),
        f"clique_history {history}".rstrip(),
        "a_prime " + " ".join(str(v + 1) for v in trace.a_prime),
        f"b_prime_size {trace.b_prime_size}",
        f"es_calls {trace.es_calls}",
        f"greedy_size {trace.greedy_size}",
        f"fallback_used {str(trace.fallback_used).lower()}",
    ]
    for check in trace.assertions_checked:
        status = ("ok" if check.holds else "FAIL") if check.hard else ("soft-ok" if check.holds else "soft-miss")
        lines.append(f"check {check.name} {check.lhs!r} {check.relation} {check.rhs!r} {status}")
    return "".join(f"c trace {line.rstrip()}\n" for line in lines)


def parse_witness(text, path=None):
    header = None
    vertices = []
    for line_no, tokens in _content_lines(text):
        if tokens[0] == "w":
            if header is not None:
                raise GraphFormatError("second witness line", line_no, path)
            if len(tokens) not in (3, 4):
                raise GraphFormatError("witness line must be 'w <kind> <size> [<case>]'", line_no, path)
            try:
                kind = WitnessKind(tokens[1])
                case_used = CaseUsed(tokens[3]) if len(tokens) == 4 else CaseUsed.TRIVIAL
            except ValueError:
                raise GraphFormatError(f"unknown witness kind or case in {' '.join(tokens)!r}", line_no, path) from None
            header = (kind, _int_token(tokens[2], line_no, path), case_used)
        elif tokens[0] == "v":
            if header is None or len(tokens) != 2:
                raise GraphFormatError("vertex line must follow the witness line as 'v <index>'", line_no, path)
            index = _int_token(tokens[1], line_no, path)
            if index < 1:
                raise GraphFormatError(f"vertex index {index} below 1", line_no, path)
            vertices.append(index - 1)
        else:
            raise GraphFormatError(f"unknown line type {tokens[0]!r}", line_no, path)
    if header is None:
        raise GraphFormatError("missing witness line", path=path)
    kind, size, case_used = header
    if size != len(vertices) or len(set(vertices)) != len(vertices):
        raise GraphFormatError(f"witness announces {size} vertices but lists {len(vertices)} distinct", path=path)
    return HomogeneousWitness(kind, tuple(vertices), case_used)


def read_witness(path):
    return parse_witness(_read_text(path), path=str(path))


def write_witness(w, path, trace=None):
    _write_text(path, format_witness(w) + (format_trace(trace) if trace is not None else ""))


def format_csv(rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buffer.getvalue()


def write_csv(rows, path):
    _write_text(path, format_csv(rows))
