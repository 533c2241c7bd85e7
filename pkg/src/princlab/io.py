"""JSON lattice files and Graphviz export."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidInput
from .order import Lattice, Poset, validate_lattice


def poset_from_dict(obj: dict) -> Poset:
    if not isinstance(obj, dict) or "elements" not in obj or "covers" not in obj:
        raise InvalidInput('expected an object with "elements" and "covers"')
    covers = []
    for c in obj["covers"]:
        if not isinstance(c, (list, tuple)) or len(c) != 2:
            raise InvalidInput(f"bad cover entry {c!r}")
        covers.append((str(c[0]), str(c[1])))
    return Poset([str(e) for e in obj["elements"]], covers, name=obj.get("name"))


def lattice_from_dict(obj: dict) -> Lattice:
    return validate_lattice(poset_from_dict(obj))


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_poset(path) -> Poset:
    p = poset_from_dict(read_json(path))
    if p.name is None:
        p.name = Path(path).stem
    return p


def load_lattice(path) -> Lattice:
    return validate_lattice(load_poset(path))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path, obj):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def to_dot(p: Poset, highlight=(), title=None) -> str:
    """Hasse diagram, bottom to top, ranked by height; ``highlight`` nodes double-circled."""
    h = p.heights()
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=circle, fontsize=10];"]
    if title:
        lines.append(f'  label="{title}";')
    hl = set(highlight)
    for k, x in enumerate(p.elements):
        shape = "doublecircle" if x in hl else "circle"
        lines.append(f'  "{x}" [shape={shape}];')
    for level in sorted(set(h)):
        same = " ".join(f'"{p.elements[k]}";' for k in range(p.n) if h[k] == level)
        lines.append(f"  {{ rank=same; {same} }}")
    for a, b in p.cover_names():
        lines.append(f'  "{a}" -> "{b}" [arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"
