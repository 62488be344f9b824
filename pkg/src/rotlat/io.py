"""JSON documents and Graphviz DOT export."""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .congruence import ConLattice, Congruence, congruence
from .lattice import FiniteLattice, Poset, check_poset, downset_lattice, lattice_from_leq
from .rotational import RotationalLattice, cycles, lift_automorphism, make_rotational
from .varieties import Membership, OrderIdeal, validate_ideal


class FormatError(ValueError):
    pass


def poset_to_json(P: Poset) -> dict[str, Any]:
    return {"kind": "poset", "size": P.size, "covers": [list(c) for c in P.covers]}


def lattice_to_json(L: FiniteLattice) -> dict[str, Any]:
    strict = L.leq.copy()
    np.fill_diagonal(strict, False)
    pairs = np.argwhere(strict).tolist()
    return {"kind": "lattice", "size": L.size, "leq": pairs}


def algebra_to_json(A: RotationalLattice) -> dict[str, Any]:
    doc = lattice_to_json(A.lattice)
    doc["kind"] = "rotational_lattice"
    doc["g"] = list(A.g)
    return doc


def rot_poset_to_json(P: Poset, sigma: tuple[int, ...]) -> dict[str, Any]:
    return {
        "kind": "rot_poset",
        "size": P.size,
        "covers": [list(c) for c in P.covers],
        "sigma": list(sigma),
    }


def congruence_to_json(theta: Congruence) -> dict[str, Any]:
    return {"kind": "congruence", "algebra_size": len(theta.labels), "labels": list(theta.labels)}


def ideal_to_json(X: OrderIdeal) -> dict[str, Any]:
    return {"kind": "order_ideal", "members": sorted(X.members)}


def con_lattice_to_json(con: ConLattice) -> dict[str, Any]:
    covers = [[i, j] for i, ups in enumerate(con.upper_covers) for j in ups]
    return {
        "kind": "con_lattice",
        "algebra_size": con.algebra.size,
        "size": len(con),
        "congruences": [list(c.labels) for c in con],
        "covers": covers,
    }


def membership_to_json(X: OrderIdeal, result: Membership) -> dict[str, Any]:
    return {
        "kind": "membership",
        "ideal": sorted(X.members),
        "member": result.member,
        "factors": [{"labels": list(theta.labels), "cube": k} for theta, k in result.factors],
    }


def _require(doc: dict[str, Any], *keys: str) -> None:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise FormatError(f"{doc.get('kind', 'document')} is missing {', '.join(missing)}")


def poset_from_json(doc: dict[str, Any]) -> Poset:
    _require(doc, "size", "covers")
    return check_poset(int(doc["size"]), doc["covers"])


def lattice_from_json(doc: dict[str, Any]) -> FiniteLattice:
    _require(doc, "size", "leq")
    return lattice_from_leq(int(doc["size"]), doc["leq"])


def algebra_from_json(doc: dict[str, Any]) -> RotationalLattice:
    """Read any algebra-like document as a rotational lattice.

    Plain lattices and posets get the identity automorphism.
    """
    kind = doc.get("kind")
    if kind == "rotational_lattice":
        _require(doc, "g")
        return make_rotational(lattice_from_json(doc), doc["g"])
    if kind == "lattice":
        L = lattice_from_json(doc)
        return make_rotational(L, range(L.size))
    if kind == "rot_poset":
        _require(doc, "sigma")
        P = poset_from_json(doc)
        return lift_automorphism(P, [int(s) for s in doc["sigma"]])
    if kind == "poset":
        P = poset_from_json(doc)
        return lift_automorphism(P, range(P.size), downset_lattice(P))
    raise FormatError(f"cannot read an algebra from kind {kind!r}")


def congruence_from_json(doc: dict[str, Any], A: RotationalLattice) -> Congruence:
    _require(doc, "labels")
    return congruence(A, [int(x) for x in doc["labels"]])


def ideal_from_json(doc: dict[str, Any]) -> OrderIdeal:
    _require(doc, "members")
    return validate_ideal(doc["members"])


def loads(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("expected a JSON object with a 'kind' field")
    return doc


# --- DOT --------------------------------------------------------------------------

PALETTE = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
    "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080",
]


def _hasse(name: str, size: int, covers, heights, labels=None, colors=None) -> str:
    lines = [f"digraph {name} {{", "    rankdir=BT;", "    node [shape=circle fontsize=10];"]
    for x in range(size):
        attrs = [f'label="{labels[x] if labels else x}"']
        if colors:
            attrs.append(f'style=filled fillcolor="{colors[x]}"')
        lines.append(f"    n{x} [{' '.join(attrs)}];")
    for h in sorted(set(heights)):
        same = " ".join(f"n{x};" for x in range(size) if heights[x] == h)
        lines.append(f"    {{ rank=same; {same} }}")
    for x, y in covers:
        lines.append(f"    n{x} -> n{y} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_dot(P: Poset) -> str:
    heights = [0] * P.size
    for _ in range(P.size):
        for x, y in P.covers:
            heights[y] = max(heights[y], heights[x] + 1)
    return _hasse("poset", P.size, P.covers, heights)


def lattice_to_dot(L: FiniteLattice) -> str:
    return _hasse("lattice", L.size, L.cover_pairs, L.heights)


def algebra_to_dot(A: RotationalLattice) -> str:
    """Hasse diagram with one fill colour per g-orbit."""
    colors = [""] * A.size
    for k, cyc in enumerate(cycles(A.g)):
        for x in cyc:
            colors[x] = PALETTE[k % len(PALETTE)]
    return _hasse("algebra", A.size, A.lattice.cover_pairs, A.lattice.heights, colors=colors)


def con_lattice_to_dot(con: ConLattice) -> str:
    covers = [(i, j) for i, ups in enumerate(con.upper_covers) for j in ups]
    blocks = [len(c) for c in con]
    heights = [len(con.algebra.g) - b for b in blocks]
    labels = [f"{b} blocks" for b in blocks]
    return _hasse("con", len(con), covers, heights, labels=labels)
