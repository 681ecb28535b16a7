# File: design/fileio.py
# Description: Reading and writing the design text format.
#
# Format: optional '#' comment lines, a header "v=<int> lambda=<int> [k=<csv>]",
# then one block per line as space-separated point indices.
# Functions:
# - parse_design()
# - serialize_design()
# - read_design()
# - write_design()

import re
from pathlib import Path

from design.errors import DesignFormatError, DesignStructureError
from design.model import Design

_HEADER_FIELD = re.compile(r"^(v|lambda|k)=(.+)$")


def _parse_header(line):
    fields = {}
    for token in line.split():
        match = _HEADER_FIELD.match(token)
        if not match:
            raise DesignFormatError(f"malformed header token {token!r} in {line!r}")
        key, value = match.groups()
        if key in fields:
            raise DesignFormatError(f"header field {key!r} given twice")
        fields[key] = value
    if "v" not in fields or "lambda" not in fields:
        raise DesignFormatError(f"header must define v and lambda: {line!r}")
    try:
        v = int(fields["v"])
        lam = int(fields["lambda"])
        sizes = None
        if "k" in fields:
            sizes = frozenset(int(k) for k in fields["k"].split(","))
    except ValueError as e:
        raise DesignFormatError(f"non-integer header value in {line!r}") from e
    return v, lam, sizes


def parse_design(text) -> Design:
    """
    Parses design file content.

    Args:
        text (str): File content

    Returns:
        Design: Blocks in file order, each block sorted
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise DesignFormatError("design text has no header line")

    v, lam, declared = _parse_header(lines[0])
    blocks = []
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            points = [int(token) for token in line.split()]
        except ValueError as e:
            raise DesignFormatError(f"block line {lineno} is not a list of integers: {line!r}") from e
        if len(set(points)) != len(points):
            raise DesignStructureError(f"duplicate point within block {line!r}")
        for p in points:
            if not 0 <= p < v:
                raise DesignStructureError(f"point {p} out of range [0, {v}) in block {line!r}")
        if declared is not None and len(points) not in declared:
            raise DesignStructureError(
                f"block {line!r} has size {len(points)}, not in declared k={sorted(declared)}")
        blocks.append(tuple(sorted(points)))

    sizes = declared if declared is not None else frozenset(len(b) for b in blocks)
    return Design(v=v, lam=lam, block_sizes=sizes, blocks=tuple(blocks))


def serialize_design(d: Design) -> str:
    """Canonical text: header, then blocks in lexicographic order (repeats adjacent)."""
    header = f"v={d.v} lambda={d.lam}"
    if d.block_sizes:
        header += " k=" + ",".join(str(k) for k in sorted(d.block_sizes))
    lines = [header]
    lines.extend(" ".join(str(p) for p in block) for block in sorted(d.blocks))
    return "\n".join(lines) + "\n"


def read_design(path) -> Design:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DesignFormatError(f"cannot read design file {path}: {e}") from e
    return parse_design(text)


def write_design(path, d: Design, comment=None):
    """Writes the canonical serialization, with an optional leading comment line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = serialize_design(d)
    if comment:
        text = f"# {comment}\n" + text
    path.write_text(text, encoding="utf-8")
    return path
