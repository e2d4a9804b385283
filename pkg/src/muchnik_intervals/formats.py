"""Poset files, DOT export and the analysis report.

Text format::

    # comment
    poset 4
    0 bottom
    3 top
    covers
    0 1
    0 2
    1 3
    2 3

Label lines are optional; a cover pair ``a b`` means ``b`` covers ``a``.
Tokens that are integers are indices; anything else is looked up as a label.  The JSON form is
``{"size": n, "labels": [...], "covers": [[a, b], ...]}``.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

from .errors import ParseError
from .poset import Poset

SCHEMA_VERSION = 1


def _int(token, line, what):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer {what}, got {token!r}", line) from None


def parse_text(text):
    lines = [(k, raw.split("#", 1)[0].strip()) for k, raw in enumerate(text.splitlines(), start=1)]
    lines = [(k, s) for k, s in lines if s]
    if not lines:
        raise ParseError("empty input", 1)
    k, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "poset":
        raise ParseError("expected 'poset <n>'", k)
    n = _int(parts[1], k, "size")
    if n < 0:
        raise ParseError("size must be non-negative", k)
    labels = [str(i) for i in range(n)]
    named = set()
    pos = 1
    while pos < len(lines) and lines[pos][1] != "covers":
        k, s = lines[pos]
        parts = s.split(None, 1)
        if len(parts) != 2:
            raise ParseError("expected '<index> <label>' or 'covers'", k)
        i = _int(parts[0], k, "index")
        if not 0 <= i < n:
            raise ParseError(f"index {i} out of range 0..{n - 1}", k)
        if i in named:
            raise ParseError(f"element {i} labelled twice", k)
        named.add(i)
        labels[i] = parts[1]
        pos += 1
    if pos == len(lines):
        raise ParseError("missing 'covers' line", lines[-1][0])
    if len(set(labels)) != n:
        raise ParseError("labels must be distinct", lines[pos][0])
    lookup = {s: i for i, s in enumerate(labels)}
    covers = []
    for k, s in lines[pos + 1:]:
        parts = s.split()
        if len(parts) != 2:
            raise ParseError("expected a cover pair 'a b'", k)
        pair = []
        for t in parts:
            if t.lstrip("-").isdigit():
                i = int(t)
                if not 0 <= i < n:
                    raise ParseError(f"element {i} out of range 0..{n - 1}", k)
                pair.append(i)
            elif t in lookup:
                pair.append(lookup[t])
            else:
                raise ParseError(f"unknown element {t!r}", k)
        covers.append(tuple(pair))
    return Poset.from_covers(n, covers, labels if named else None)


def parse_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno) from None
    if not isinstance(data, dict) or "size" not in data or "covers" not in data:
        raise ParseError("JSON poset needs 'size' and 'covers'")
    n = data["size"]
    if not isinstance(n, int) or n < 0:
        raise ParseError("'size' must be a non-negative integer")
    labels = data.get("labels")
    if labels is not None and (len(labels) != n or len(set(map(str, labels))) != n):
        raise ParseError("'labels' must list n distinct names")
    covers = []
    for c in data["covers"]:
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(x, int) for x in c)):
            raise ParseError(f"bad cover pair {c!r}")
        covers.append(tuple(c))
    return Poset.from_covers(n, covers, labels)


def parse_poset(text):
    """Parse either format; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def read_poset(path):
    """Returns ``(poset, sha256 hex digest of the file)``."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise ParseError("input is not UTF-8") from None
    return parse_poset(text), hashlib.sha256(raw).hexdigest()


def poset_to_json(poset):
    return {
        "size": poset.n,
        "labels": [poset.label(i) for i in range(poset.n)],
        "covers": [list(c) for c in poset.cover_pairs],
    }


def poset_to_text(poset):
    out = [f"poset {poset.n}"]
    out += [f"{i} {poset.label(i)}" for i in range(poset.n)]
    out.append("covers")
    out += [f"{a} {b}" for a, b in poset.cover_pairs]
    return "\n".join(out) + "\n"


def to_dot(poset, name="hasse"):
    """Hasse diagram, bottom drawn lowest; minimal elements share the lowest rank."""
    q = json.dumps
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    lines += [f"  n{i} [label={q(poset.label(i))}];" for i in range(poset.n)]
    lines += [f"  n{a} -> n{b} [arrowhead=none];" for a, b in poset.cover_pairs]
    if poset.n:
        lines.append("  { rank=min; " + " ".join(f"n{i};" for i in poset.minimal) + " }")
        lines.append("  { rank=max; " + " ".join(f"n{i};" for i in poset.maximal) + " }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


@dataclass
class AnalysisReport:
    input_digest: str
    size: int
    distributive: bool
    join_irreducibles: list
    birkhoff_covers: list
    dd_like: bool
    has_dd_like_subinterval: list | None
    realizable: bool
    initial_segment_realizable: bool
    witness: dict
    timing_seconds: float | None = None
    schema_version: int = field(default=SCHEMA_VERSION)

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ParseError(f"unsupported report schema version {version!r}")
        return cls(**data)

    @classmethod
    def from_json(cls, text):
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", e.lineno) from None
