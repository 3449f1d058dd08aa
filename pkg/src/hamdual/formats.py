"""Input and output formats for embedded cubic planar graphs.

Two input formats are supported:

* ``planar_code`` - the binary format emitted by plantri and friends.
  Header ``>>planar_code<<``, then per graph: a vertex-count byte N,
  followed by N zero-terminated lists of 1-based neighbour ids in
  clockwise order.  Only the 8-bit variant (N <= 255) is accepted.

* rotation text - one line per vertex, ``i: a b c`` with 1-based ids and
  clockwise neighbour order; ``#`` starts a comment.

Both produce identical embeddings for the same rotation system.  DOT output
is deterministic: byte-identical for identical inputs.
"""

from .embedding import RotationEmbedding
from .errors import (
    CycleNotInGraph,
    MalformedHeader,
    ParseError,
    TruncatedRecord,
)

PLANAR_CODE_HEADER = b">>planar_code<<"


def parse_rotation_text(text):
    """Parse the rotation-text format into a RotationEmbedding."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise ParseError("expected 'vertex: nbr nbr nbr'", line=lineno)
        try:
            v = int(head)
        except ValueError:
            raise ParseError(f"bad vertex id {head.strip()!r}", line=lineno) from None
        try:
            nbrs = [int(tok) for tok in tail.split()]
        except ValueError:
            raise ParseError(f"bad neighbour list {tail.strip()!r}", line=lineno) from None
        if v < 1:
            raise ParseError(f"vertex ids are 1-based, got {v}", line=lineno)
        if v in entries:
            raise ParseError(f"duplicate line for vertex {v}", line=lineno)
        entries[v] = (nbrs, lineno)

    if not entries:
        raise ParseError("no vertex lines found")
    n = max(entries)
    rotations = []
    for v in range(1, n + 1):
        if v not in entries:
            raise ParseError(f"vertex {v} has no line (ids must cover 1..{n})")
        nbrs, lineno = entries[v]
        for w in nbrs:
            if not 1 <= w <= n:
                raise ParseError(f"neighbour {w} out of range 1..{n}", line=lineno)
        rotations.append([w - 1 for w in nbrs])
    return RotationEmbedding(rotations)


def serialize_rotation_text(embedding):
    """Inverse of parse_rotation_text (1-based, clockwise order)."""
    lines = [
        f"{v + 1}: " + " ".join(str(w + 1) for w in nbrs)
        for v, nbrs in enumerate(embedding.rotations)
    ]
    return "\n".join(lines) + "\n"


def _decode_planar_code_graph(data, pos):
    """Decode one graph starting at data[pos]; returns (rotations, new_pos)."""
    if pos >= len(data):
        raise TruncatedRecord("no graph data after header")
    n = data[pos]
    pos += 1
    if n == 0:
        raise MalformedHeader("16-bit planar_code (vertex count > 255) not supported")
    rotations = []
    for v in range(n):
        nbrs = []
        while True:
            if pos >= len(data):
                raise TruncatedRecord(
                    f"input ends inside the neighbour list of vertex {v + 1}"
                )
            b = data[pos]
            pos += 1
            if b == 0:
                break
            if b > n:
                raise TruncatedRecord(
                    f"vertex {v + 1} lists neighbour {b}, but graph has {n} vertices"
                )
            nbrs.append(b - 1)
        rotations.append(nbrs)
    return rotations, pos


def parse_planar_code(data):
    """Parse the first graph of a planar_code byte string."""
    if not data.startswith(PLANAR_CODE_HEADER):
        raise MalformedHeader(
            f"expected header {PLANAR_CODE_HEADER.decode()!r} at start of input"
        )
    rotations, _ = _decode_planar_code_graph(data, len(PLANAR_CODE_HEADER))
    return RotationEmbedding(rotations)


def iter_planar_code(data):
    """Yield every graph in a planar_code byte string."""
    if not data.startswith(PLANAR_CODE_HEADER):
        raise MalformedHeader(
            f"expected header {PLANAR_CODE_HEADER.decode()!r} at start of input"
        )
    pos = len(PLANAR_CODE_HEADER)
    if pos >= len(data):
        raise TruncatedRecord("no graph data after header")
    while pos < len(data):
        rotations, pos = _decode_planar_code_graph(data, pos)
        yield RotationEmbedding(rotations)


def serialize_planar_code(embedding):
    """Encode an embedding as a single-graph planar_code byte string."""
    out = bytearray(PLANAR_CODE_HEADER)
    out.append(embedding.n)
    for nbrs in embedding.rotations:
        out.extend(w + 1 for w in nbrs)
        out.append(0)
    return bytes(out)


def sniff_format(data):
    """'planar_code' if the binary header is present, else 'rotation'."""
    head = data[: len(PLANAR_CODE_HEADER)]
    if isinstance(head, str):
        head = head.encode()
    return "planar_code" if head == PLANAR_CODE_HEADER else "rotation"


def _cycle_edge_ids(embedding, cycle):
    ids = []
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        if not (0 <= u < embedding.n and 0 <= v < embedding.n):
            raise CycleNotInGraph(f"cycle vertex {max(u, v) + 1} not in graph")
        if not embedding.has_edge(u, v):
            raise CycleNotInGraph(f"cycle edge ({u + 1},{v + 1}) not in graph")
        ids.append(embedding.edge_id(u, v))
    return set(ids)


def serialize_dot(embedding, cycle=None):
    """Deterministic DOT text; cycle edges, when given, are highlighted."""
    marked = _cycle_edge_ids(embedding, cycle) if cycle else set()
    lines = ["graph G {"]
    for v in range(embedding.n):
        lines.append(f"  {v + 1};")
    for k, (u, v) in enumerate(embedding.edges):
        if k in marked:
            lines.append(f"  {u + 1} -- {v + 1} [color=red, penwidth=2];")
        else:
            lines.append(f"  {u + 1} -- {v + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
