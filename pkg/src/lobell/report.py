"""JSON serialization of classification reports and decimal formatting of balls."""

from __future__ import annotations

import json
from decimal import ROUND_HALF_EVEN, Decimal, localcontext

from flint import arb

from .algfield.poly import fmpq_from_arb_endpoint
from .classifier import (
    ClassificationReport,
    EmbeddingRow,
    GroundEmbeddingRow,
    GroundFieldInfo,
    TableRow,
    V1Result,
    V3Result,
    Verdict,
    Witness,
)
from .exactlin import Signature

SCHEMA_VERSION = "1"


def decimal_string(x: arb, places: int) -> str:
    """Midpoint of a ball rounded to ``places`` digits after the point."""
    q = fmpq_from_arb_endpoint(x.mid())
    with localcontext() as ctx:
        ctx.prec = places + 50
        d = Decimal(int(q.p)) / Decimal(int(q.q))
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def _sig(s: Signature) -> list[int]:
    return [s.p, s.q, s.r]


def report_to_dict(rep: ClassificationReport) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "verdict": rep.verdict.value,
        "lorentzSignature": _sig(rep.lorentz_signature) if rep.lorentz_signature else None,
        "v1": {"totallyReal": rep.v1.totally_real, "witness": rep.v1.witness},
        "groundField": {"degree": rep.ground_field.degree, "generatorCount": rep.ground_field.generator_count},
        "embeddings": [
            {
                "index": e.index,
                "description": e.description,
                "fixesGroundField": e.fixes_ground_field,
                "groundIndex": e.ground_index,
                "signature": _sig(e.signature),
            }
            for e in rep.embeddings
        ],
        "groundFieldEmbeddings": [
            {
                "index": g.index,
                "label": g.label,
                "isIdentity": g.is_identity,
                "extendsToRealEmbedding": g.extends_to_real_embedding,
                "signature": _sig(g.signature),
            }
            for g in rep.ground_embeddings
        ],
        "v3": {
            "allIntegral": rep.v3.all_integral,
            "witnesses": [{"cycle": w.cycle, "decimal": w.decimal, "exact": w.exact} for w in rep.v3.witnesses],
        },
    }


def report_from_dict(d: dict) -> ClassificationReport:
    if d.get("schemaVersion") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d.get('schemaVersion')!r}")
    sig = lambda v: Signature(*v)
    return ClassificationReport(
        v1=V1Result(d["v1"]["totallyReal"], d["v1"].get("witness")),
        ground_field=GroundFieldInfo(d["groundField"]["degree"], d["groundField"]["generatorCount"]),
        embeddings=tuple(
            EmbeddingRow(e["index"], e["fixesGroundField"], sig(e["signature"]), e.get("description", ""), e.get("groundIndex", 0))
            for e in d["embeddings"]
        ),
        v3=V3Result(
            d["v3"]["allIntegral"],
            tuple(Witness(w["cycle"], w["decimal"], w.get("exact", "")) for w in d["v3"]["witnesses"]),
        ),
        verdict=Verdict(d["verdict"]),
        lorentz_signature=sig(d["lorentzSignature"]) if d.get("lorentzSignature") else None,
        ground_embeddings=tuple(
            GroundEmbeddingRow(g["index"], g["label"], g["isIdentity"], g["extendsToRealEmbedding"], sig(g["signature"]))
            for g in d.get("groundFieldEmbeddings", [])
        ),
    )


def to_json(rep: ClassificationReport) -> str:
    return json.dumps(report_to_dict(rep), indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> ClassificationReport:
    return report_from_dict(json.loads(text))


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def format_report(rep: ClassificationReport) -> str:
    lines = [f"verdict: {rep.verdict.value}"]
    if rep.lorentz_signature:
        lines.append(f"Gram signature: {rep.lorentz_signature}")
    v1 = f"V1 totally real: {_yes(rep.v1.totally_real)}"
    if rep.v1.witness:
        v1 += f" ({rep.v1.witness})"
    lines.append(v1)
    lines.append(f"ground field: degree {rep.ground_field.degree}, {rep.ground_field.generator_count} generators")
    lines.append(f"V2 non-fixing embeddings semidefinite: {_yes(rep.v2)}")
    lines.append("real embeddings of the field of entries:")
    for e in rep.embeddings:
        lines.append(f"  #{e.index} {e.description}: fixes k {_yes(e.fixes_ground_field)}, signature {e.signature}")
    lines.append("real embeddings of the ground field (rescaled form):")
    for g in rep.ground_embeddings:
        name = f"l={g.label}" if g.label is not None else f"#{g.index}"
        lines.append(
            f"  {name}: identity {_yes(g.is_identity)}, extends {_yes(g.extends_to_real_embedding)}, signature {g.signature}"
        )
    lines.append(f"V3 cyclic products of 2G integral: {_yes(rep.v3.all_integral)}")
    for w in rep.v3.witnesses:
        lines.append(f"  {w.cycle}: {w.decimal} = {w.exact}")
    return "\n".join(lines) + "\n"


def table_to_dict(rows: list[TableRow]) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "rows": [
            {
                "n": r.n,
                "verdict": r.verdict.value,
                "fieldDegree": r.field_degree,
                "embeddings": [{"label": l, "signature": _sig(s)} for l, s in r.signatures],
            }
            for r in rows
        ],
    }


def format_table(rows: list[TableRow]) -> str:
    lines = [f"{'n':>4}  {'deg k':>5}  {'verdict':<26}  non-identity embeddings of k"]
    for r in rows:
        sigs = ", ".join(f"l={l}:{s}" if l is not None else str(s) for l, s in sorted(r.signatures, key=lambda x: x[0] or 0))
        lines.append(f"{r.n:>4}  {r.field_degree:>5}  {r.verdict.value:<26}  {sigs or 'none'}")
    return "\n".join(lines) + "\n"
