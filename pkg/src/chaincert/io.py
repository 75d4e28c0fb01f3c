"""On-disk JSON formats for resolutions and certificates.

Every file is UTF-8 JSON with top-level fields format_version, kind
("resolution" or "certificate"), ring, an embedded Cayley table for group
rings, and a kind-specific payload. All integers are decimal strings so
the format stays bit-exact across languages; group-ring elements are
arrays of base-ring strings in the table's element order. Serialization is
canonical (sorted keys, fixed separators), so identical data produces
byte-identical files.
"""

from __future__ import annotations

import json

from .chain import (
    ChainComplex,
    ChainHomotopy,
    ChainMap,
    HomotopyEquivalence,
    Report,
    identity_chain_map,
)
from .matrix import Matrix
from .resolution import ModulePresentation, TruncatedResolution
from .rings import ZZ, GroupRing, GroupTable, IntegerRing, PrimeField, Ring, RingError
from .stabilize import EquivalenceCertificate

FORMAT_VERSION = 1
CERTIFICATE_VERSION = 1


class MalformedFileError(ValueError):
    """The file is not a well-formed document of the expected schema."""


def _int_out(n: int) -> str:
    return str(n)


def _int_in(value) -> int:
    if not isinstance(value, str):
        raise MalformedFileError(f"expected a decimal string, got {value!r}")
    try:
        return int(value)
    except ValueError as exc:
        raise MalformedFileError(f"bad integer literal {value!r}") from exc


# ---------------------------------------------------------------------------
# rings


def ring_to_json(ring: Ring) -> dict:
    if isinstance(ring, IntegerRing):
        return {"ring": "Z"}
    if isinstance(ring, PrimeField):
        return {"ring": f"Fp:{ring.p}"}
    if isinstance(ring, GroupRing):
        name = "ZG" if isinstance(ring.base, IntegerRing) else f"FpG:{ring.base.p}"
        return {
            "ring": name,
            "group": {
                "order": _int_out(ring.group.order),
                "identity": _int_out(ring.group.identity),
                "mult": [[_int_out(x) for x in row] for row in ring.group.mult],
            },
        }
    raise RingError(f"unsupported ring {ring}")


def ring_from_json(doc: dict) -> Ring:
    name = doc.get("ring")
    if not isinstance(name, str):
        raise MalformedFileError("missing ring field")
    if name == "Z":
        return ZZ
    if name.startswith("Fp:"):
        try:
            return PrimeField(int(name[3:]))
        except (ValueError, RingError) as exc:
            raise MalformedFileError(f"bad prime field {name!r}") from exc
    if name == "ZG" or name.startswith("FpG:"):
        group_doc = doc.get("group")
        if not isinstance(group_doc, dict):
            raise MalformedFileError("group ring without a Cayley table")
        try:
            table = GroupTable(
                order=_int_in(group_doc["order"]),
                mult=tuple(
                    tuple(_int_in(x) for x in row) for row in group_doc["mult"]
                ),
                identity=_int_in(group_doc["identity"]),
            )
            table.validate()
        except (KeyError, TypeError) as exc:
            raise MalformedFileError("bad group table") from exc
        except RingError as exc:
            raise MalformedFileError(f"bad group table: {exc}") from exc
        base = ZZ if name == "ZG" else PrimeField(int(name[4:]))
        return GroupRing(base, table)
    raise MalformedFileError(f"unknown ring {name!r}")


# ---------------------------------------------------------------------------
# matrices


def _entry_out(ring: Ring, x):
    if isinstance(ring, GroupRing):
        return [ring.base.render(c) for c in x]
    return ring.render(x)


def _entry_in(ring: Ring, value):
    if isinstance(ring, GroupRing):
        if not isinstance(value, list) or len(value) != ring.group.order:
            raise MalformedFileError("group-ring entry must list one coefficient per element")
        return tuple(ring.base.parse(_require_str(c)) for c in value)
    return ring.parse(_require_str(value))


def _require_str(value) -> str:
    if not isinstance(value, str):
        raise MalformedFileError(f"expected a string literal, got {value!r}")
    return value


def matrix_to_json(m: Matrix) -> list:
    return [[_entry_out(m.ring, m.entry(i, j)) for j in range(m.cols)] for i in range(m.rows)]


def matrix_from_json(ring: Ring, rows: int, cols: int, data) -> Matrix:
    if not isinstance(data, list) or len(data) != rows:
        raise MalformedFileError(f"matrix must have {rows} rows")
    entries = []
    for row in data:
        if not isinstance(row, list) or len(row) != cols:
            raise MalformedFileError(f"matrix row must have {cols} entries")
        entries.extend(_entry_in(ring, x) for x in row)
    try:
        return Matrix(ring, rows, cols, entries)
    except (ValueError, RingError) as exc:
        raise MalformedFileError(str(exc)) from exc


# ---------------------------------------------------------------------------
# resolutions


def resolution_to_json(res: TruncatedResolution) -> dict:
    doc = ring_to_json(res.ring)
    ranks = res.complex.ranks
    doc.update(
        {
            "format_version": _int_out(FORMAT_VERSION),
            "kind": "resolution",
            "payload": {
                "presentation": {
                    "ambient_rank": _int_out(res.presentation.ambient_rank),
                    "relation_count": _int_out(res.presentation.relations.cols),
                    "relations": matrix_to_json(res.presentation.relations),
                },
                "ranks": [_int_out(r) for r in ranks],
                "boundaries": [
                    matrix_to_json(res.complex.d(i))
                    for i in range(res.length, 0, -1)
                ],
                "augmentation": matrix_to_json(res.augmentation),
                "cochain": res.cochain,
            },
        }
    )
    return doc


def resolution_from_json(doc: dict) -> TruncatedResolution:
    ring = ring_from_json(doc)
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise MalformedFileError("missing payload")
    try:
        pres_doc = payload["presentation"]
        ambient = _int_in(pres_doc["ambient_rank"])
        rel_count = _int_in(pres_doc["relation_count"])
        relations = matrix_from_json(ring, ambient, rel_count, pres_doc["relations"])
        ranks = [_int_in(r) for r in payload["ranks"]]
        boundaries_doc = payload["boundaries"]
        cochain = payload.get("cochain", False)
        if not isinstance(cochain, bool):
            raise MalformedFileError("cochain flag must be a boolean")
    except (KeyError, TypeError) as exc:
        raise MalformedFileError(f"missing resolution field: {exc}") from exc
    if not ranks:
        raise MalformedFileError("ranks must be nonempty")
    n = len(ranks) - 1
    if not isinstance(boundaries_doc, list) or len(boundaries_doc) != n:
        raise MalformedFileError(f"expected {n} boundary matrices")
    diffs = []
    for i in range(1, n + 1):
        # stored top degree first
        diffs.append(
            matrix_from_json(ring, ranks[i - 1], ranks[i], boundaries_doc[n - i])
        )
    aug_cols = ranks[-1] if cochain else ranks[0]
    augmentation = matrix_from_json(ring, ambient, aug_cols, payload["augmentation"])
    try:
        pres = ModulePresentation(ring, ambient, relations)
        complex_ = ChainComplex(ring, ranks, diffs)
        return TruncatedResolution(pres, complex_, augmentation, cochain=cochain)
    except (ValueError, RingError) as exc:
        raise MalformedFileError(str(exc)) from exc


# ---------------------------------------------------------------------------
# certificates


def _complex_to_json(c: ChainComplex) -> dict:
    return {
        "ranks": [_int_out(r) for r in c.ranks],
        "boundaries": [matrix_to_json(c.d(i)) for i in range(c.length, 0, -1)],
    }


def _complex_from_json(ring: Ring, doc: dict) -> ChainComplex:
    try:
        ranks = [_int_in(r) for r in doc["ranks"]]
        boundaries_doc = doc["boundaries"]
    except (KeyError, TypeError) as exc:
        raise MalformedFileError(f"bad complex: {exc}") from exc
    n = len(ranks) - 1
    if not isinstance(boundaries_doc, list) or len(boundaries_doc) != n:
        raise MalformedFileError(f"expected {n} boundaries")
    diffs = [
        matrix_from_json(ring, ranks[i - 1], ranks[i], boundaries_doc[n - i])
        for i in range(1, n + 1)
    ]
    try:
        return ChainComplex(ring, ranks, diffs)
    except (ValueError, RingError) as exc:
        raise MalformedFileError(str(exc)) from exc


def certificate_to_json(cert: EquivalenceCertificate) -> dict:
    doc = ring_to_json(cert.source.ring)
    eq = cert.equivalence
    n = cert.source.length
    doc.update(
        {
            "format_version": _int_out(FORMAT_VERSION),
            "kind": "certificate",
            "payload": {
                "certificate_version": _int_out(CERTIFICATE_VERSION),
                "presentation": {
                    "ambient_rank": _int_out(cert.presentation.ambient_rank),
                    "relation_count": _int_out(cert.presentation.relations.cols),
                    "relations": matrix_to_json(cert.presentation.relations),
                },
                "source": _complex_to_json(cert.source),
                "target": _complex_to_json(cert.target),
                "forward": [matrix_to_json(eq.fwd[i]) for i in range(n + 1)],
                "backward": [matrix_to_json(eq.bwd[i]) for i in range(n + 1)],
                "source_homotopy": [
                    matrix_to_json(m) for m in eq.src_homotopy.parts
                ],
                "target_homotopy": [
                    matrix_to_json(m) for m in eq.tgt_homotopy.parts
                ],
                "tower_ranks": {
                    "t": [_int_out(r) for r in cert.t_ranks],
                    "s": [_int_out(r) for r in cert.s_ranks],
                },
                "block_isomorphisms": {
                    "forward": [matrix_to_json(m) for m in cert.iso_fwd],
                    "backward": [matrix_to_json(m) for m in cert.iso_bwd],
                },
                "stage_report": [
                    {"name": c.name, "ok": c.ok} for c in cert.stage_report.checks
                ],
            },
        }
    )
    return doc


def certificate_from_json(doc: dict) -> EquivalenceCertificate:
    ring = ring_from_json(doc)
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise MalformedFileError("missing payload")
    try:
        pres_doc = payload["presentation"]
        ambient = _int_in(pres_doc["ambient_rank"])
        rel_count = _int_in(pres_doc["relation_count"])
        relations = matrix_from_json(ring, ambient, rel_count, pres_doc["relations"])
        source = _complex_from_json(ring, payload["source"])
        target = _complex_from_json(ring, payload["target"])
        fwd_doc = payload["forward"]
        bwd_doc = payload["backward"]
        s_doc = payload["source_homotopy"]
        t_doc = payload["target_homotopy"]
        towers = payload["tower_ranks"]
        t_ranks = tuple(_int_in(r) for r in towers["t"])
        s_ranks = tuple(_int_in(r) for r in towers["s"])
        iso_doc = payload["block_isomorphisms"]
        stage_doc = payload.get("stage_report", [])
    except (KeyError, TypeError) as exc:
        raise MalformedFileError(f"missing certificate field: {exc}") from exc

    if source.length != target.length:
        raise MalformedFileError("source and target lengths differ")
    n = source.length
    if len(t_ranks) != n + 1 or len(s_ranks) != n + 1:
        raise MalformedFileError("tower ranks must cover every degree")

    def _maps(data, rows_of, cols_of, count) -> list[Matrix]:
        if not isinstance(data, list) or len(data) != count:
            raise MalformedFileError(f"expected {count} matrices")
        return [
            matrix_from_json(ring, rows_of(i), cols_of(i), data[i])
            for i in range(count)
        ]

    fwd_parts = _maps(fwd_doc, lambda i: target.ranks[i], lambda i: source.ranks[i], n + 1)
    bwd_parts = _maps(bwd_doc, lambda i: source.ranks[i], lambda i: target.ranks[i], n + 1)
    s_parts = _maps(s_doc, lambda i: source.ranks[i + 1], lambda i: source.ranks[i], n)
    t_parts = _maps(t_doc, lambda i: target.ranks[i + 1], lambda i: target.ranks[i], n)
    iso_fwd = _maps(
        iso_doc.get("forward"),
        lambda i: s_ranks[i] + t_ranks[i],
        lambda i: t_ranks[i] + s_ranks[i],
        n + 1,
    )
    iso_bwd = _maps(
        iso_doc.get("backward"),
        lambda i: t_ranks[i] + s_ranks[i],
        lambda i: s_ranks[i] + t_ranks[i],
        n + 1,
    )

    try:
        fwd = ChainMap(source, target, fwd_parts)
        bwd = ChainMap(target, source, bwd_parts)
        src_homotopy = ChainHomotopy(bwd.after(fwd), identity_chain_map(source), s_parts)
        tgt_homotopy = ChainHomotopy(fwd.after(bwd), identity_chain_map(target), t_parts)
        equivalence = HomotopyEquivalence(fwd, bwd, src_homotopy, tgt_homotopy)
        presentation = ModulePresentation(ring, ambient, relations)
    except (ValueError, RingError) as exc:
        raise MalformedFileError(str(exc)) from exc

    stage_report = Report()
    if not isinstance(stage_doc, list):
        raise MalformedFileError("stage_report must be a list")
    for item in stage_doc:
        if not isinstance(item, dict) or "name" not in item or "ok" not in item:
            raise MalformedFileError("bad stage report entry")
        stage_report.add(str(item["name"]), bool(item["ok"]))

    return EquivalenceCertificate(
        presentation=presentation,
        source=source,
        target=target,
        equivalence=equivalence,
        t_ranks=t_ranks,
        s_ranks=s_ranks,
        iso_fwd=tuple(iso_fwd),
        iso_bwd=tuple(iso_bwd),
        stage_report=stage_report,
    )


# ---------------------------------------------------------------------------
# files


def dump_canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def save(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_canonical(doc))


def load(path: str):
    """Parse a file into ("resolution", TruncatedResolution) or
    ("certificate", EquivalenceCertificate)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedFileError("top level must be an object")
    if doc.get("format_version") != _int_out(FORMAT_VERSION):
        raise MalformedFileError("missing or unsupported format_version")
    kind = doc.get("kind")
    if kind == "resolution":
        return kind, resolution_from_json(doc)
    if kind == "certificate":
        return kind, certificate_from_json(doc)
    raise MalformedFileError(f"unknown kind {kind!r}")
