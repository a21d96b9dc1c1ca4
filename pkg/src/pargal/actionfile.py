"""Action files: versioned JSON serialization of partial actions.

Scalars travel as strings ("3/4", "5") so no precision is lost; structure
constants are sparse [i, j, k, value] quadruples; the acting group is either
{"cyclic": [n1, ...]} or an explicit labelled Cayley table.  Loading
validates the algebra, the group and the partial-action axioms, and fails
with a located diagnostic.  Saving is canonical, so a second round trip is
byte-identical.
"""

from __future__ import annotations

import json

from .scalars import Matrix, parse_ring
from .algebra import Algebra, AlgebraError
from .groups import FiniteGroup, GroupError, make_cyclic, make_product
from .paction import PartialAction, verify_partial_action

FORMAT_VERSION = 1


class ActionFileError(ValueError):
    """Malformed or invalid action file; carries a location string."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


def _need(doc: dict, key: str, where: str):
    if key not in doc:
        raise ActionFileError(where, f"missing key {key!r}")
    return doc[key]


def _load_group(spec, where: str) -> FiniteGroup:
    if not isinstance(spec, dict):
        raise ActionFileError(where, "group must be an object")
    if "cyclic" in spec:
        orders = spec["cyclic"]
        if not isinstance(orders, list) or not orders or not all(isinstance(n, int) for n in orders):
            raise ActionFileError(where, "cyclic spec must be a non-empty list of integers")
        try:
            return make_product([make_cyclic(n) for n in orders])
        except GroupError as exc:
            raise ActionFileError(where, str(exc)) from None
    if "table" in spec:
        labels = _need(spec, "labels", where)
        try:
            return FiniteGroup(labels, spec["table"])
        except GroupError as exc:
            raise ActionFileError(where, str(exc)) from None
    raise ActionFileError(where, "group needs either 'cyclic' or 'table'")


def load_action(path: str, verify: bool = True) -> PartialAction:
    """Read an action file; raises ActionFileError with a locator on any problem."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ActionFileError(path, str(exc)) from None
    except json.JSONDecodeError as exc:
        raise ActionFileError(f"{path}:{exc.lineno}", exc.msg) from None
    return action_from_document(doc, path, verify=verify)


def action_from_document(doc: dict, where: str, verify: bool = True) -> PartialAction:
    if _need(doc, "format", where) != FORMAT_VERSION:
        raise ActionFileError(where, f"unsupported format {doc['format']!r}, expected {FORMAT_VERSION}")
    try:
        ring = parse_ring(_need(doc, "base", where))
    except ValueError as exc:
        raise ActionFileError(f"{where}/base", str(exc)) from None

    alg_spec = _need(doc, "algebra", where)
    labels = _need(alg_spec, "labels", f"{where}/algebra")
    rank = len(labels)
    constants = [[[0] * rank for _ in range(rank)] for _ in range(rank)]
    for entry in _need(alg_spec, "constants", f"{where}/algebra"):
        if len(entry) != 4:
            raise ActionFileError(f"{where}/algebra/constants", f"bad quadruple {entry!r}")
        i, j, k, value = entry
        if not all(0 <= t < rank for t in (i, j, k)):
            raise ActionFileError(f"{where}/algebra/constants", f"index out of range in {entry!r}")
        constants[i][j][k] = ring.scalar_from_str(str(value))
    unit = [ring.scalar_from_str(str(v)) for v in _need(alg_spec, "unit", f"{where}/algebra")]
    if len(unit) != rank:
        raise ActionFileError(f"{where}/algebra/unit", f"unit length {len(unit)} != rank {rank}")
    try:
        algebra = Algebra(ring, labels, constants, unit, validate=True)
    except AlgebraError as exc:
        raise ActionFileError(f"{where}/algebra", str(exc)) from None

    group = _load_group(_need(doc, "group", where), f"{where}/group")

    action_spec = _need(doc, "action", where)
    if set(action_spec) != set(group.labels):
        missing = sorted(set(group.labels) - set(action_spec))
        extra = sorted(set(action_spec) - set(group.labels))
        raise ActionFileError(
            f"{where}/action", f"element keys do not match the group (missing {missing}, extra {extra})"
        )
    idems = []
    maps = []
    for g, label in enumerate(group.labels):
        entry = action_spec[label]
        coords = [ring.scalar_from_str(str(v)) for v in _need(entry, "idempotent", f"{where}/action/{label}")]
        if len(coords) != rank:
            raise ActionFileError(f"{where}/action/{label}", "idempotent length mismatch")
        rows = _need(entry, "matrix", f"{where}/action/{label}")
        if len(rows) != rank or any(len(r) != rank for r in rows):
            raise ActionFileError(f"{where}/action/{label}", "matrix is not rank x rank")
        idems.append(algebra.element(coords))
        maps.append(Matrix(ring, [[ring.scalar_from_str(str(v)) for v in r] for r in rows], rank))
    act = PartialAction(group, algebra, idems, maps)
    if verify:
        report = verify_partial_action(act)
        if not report.passed:
            bad = report.failures()[0]
            raise ActionFileError(f"{where}/action", f"axiom failure: {bad.name} [{bad.witness}]")
    return act


def _ring_tag(ring) -> str:
    return "Q" if ring.kind == "rationals" else f"Z/{ring.n}"


def action_to_document(act: PartialAction) -> dict:
    """Canonical document for an action; groups are written as explicit tables."""
    ring = act.algebra.ring
    s = ring.scalar_to_str
    constants = []
    for i in range(act.algebra.rank):
        for j in range(act.algebra.rank):
            for k, c in act.algebra.table[i][j]:
                constants.append([i, j, k, s(c)])
    return {
        "format": FORMAT_VERSION,
        "base": _ring_tag(ring),
        "algebra": {
            "labels": list(act.algebra.labels),
            "constants": constants,
            "unit": [s(c) for c in act.algebra.unit],
        },
        "group": {
            "labels": list(act.group.labels),
            "table": [list(row) for row in act.group.table],
        },
        "action": {
            act.group.labels[g]: {
                "idempotent": [s(c) for c in act.idems[g].coords],
                "matrix": [[s(v) for v in row] for row in act.maps[g].rows],
            }
            for g in act.group.elements()
        },
    }


def save_action(act: PartialAction, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(action_to_document(act), fh, indent=1)
        fh.write("\n")
