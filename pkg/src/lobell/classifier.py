"""Vinberg's criterion: totally real field, semidefinite conjugates, integral cyclic products."""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algfield import identity_embedding, real_embeddings
from .diagram import CoxeterDiagram, assemble_gram
from .errors import NotLorentzian
from .exactlin import Signature, charpoly, signature_under
from .expr import element_to_text
from .groundfield import (
    cyc2_integrality,
    cyclotomic_label,
    embedding_restricts_to_identity,
    ground_embeddings,
    ground_signature,
    identity_ground_index,
    labelled_generators,
    rescaled_form,
    restriction_index,
    subfield_closure,
)


class Verdict(enum.Enum):
    ARITHMETIC = "arithmetic"
    PROPERLY_QUASI_ARITHMETIC = "properly-quasi-arithmetic"
    NOT_QUASI_ARITHMETIC = "not-quasi-arithmetic"

    @property
    def short(self) -> str:
        return {"arithmetic": "A", "properly-quasi-arithmetic": "PQ", "not-quasi-arithmetic": "N"}[self.value]


@dataclass(frozen=True)
class V1Result:
    totally_real: bool
    witness: str | None = None


@dataclass(frozen=True)
class GroundFieldInfo:
    degree: int
    generator_count: int


@dataclass(frozen=True)
class EmbeddingRow:
    index: int
    fixes_ground_field: bool
    signature: Signature
    description: str = ""
    ground_index: int = 0


@dataclass(frozen=True)
class GroundEmbeddingRow:
    """Signature of the rescaled Gram matrix under one real embedding of k."""

    index: int
    label: int | None
    is_identity: bool
    extends_to_real_embedding: bool
    signature: Signature


@dataclass(frozen=True)
class Witness:
    cycle: str
    decimal: str
    exact: str = ""


@dataclass(frozen=True)
class V3Result:
    all_integral: bool
    witnesses: tuple[Witness, ...] = ()


@dataclass(frozen=True)
class ClassificationReport:
    v1: V1Result
    ground_field: GroundFieldInfo
    embeddings: tuple[EmbeddingRow, ...]
    v3: V3Result
    verdict: Verdict
    lorentz_signature: Signature | None = None
    ground_embeddings: tuple[GroundEmbeddingRow, ...] = field(default=())

    @property
    def v2(self) -> bool:
        return all(e.signature.q == 0 for e in self.embeddings if not e.fixes_ground_field)

    def consistent(self) -> bool:
        """Re-derive the verdict from the report fields."""
        return self.verdict == decide(self.v1.totally_real, self.v2, self.v3.all_integral)


def decide(v1: bool, v2: bool, v3: bool) -> Verdict:
    if v1 and v2:
        return Verdict.ARITHMETIC if v3 else Verdict.PROPERLY_QUASI_ARITHMETIC
    return Verdict.NOT_QUASI_ARITHMETIC


def classify(
    d: CoxeterDiagram, dim: int | None = None, label_n: int | None = None, digits: int = 30
) -> ClassificationReport:
    """Run the criterion on a diagram.

    ``dim`` pins the hyperbolic dimension; ``label_n`` names ground field
    embeddings by l with 2cos(2pi/n) -> 2cos(2pi l/n) when that number
    lies in the ground field.  ``digits`` sets the length of decimal previews.
    """
    tower, G = assemble_gram(d)
    coeffs = charpoly(G)
    lorentz = signature_under(G, identity_embedding(tower), coeffs)
    if lorentz.q != 1 or (dim is not None and lorentz.p != dim):
        want = f"({dim},1,*)" if dim is not None else "(d,1,*)"
        raise NotLorentzian(f"Gram matrix has signature {lorentz}, expected {want}")

    gens = labelled_generators(G)
    k = subfield_closure([g for _, g in gens], tower)
    enum_ = real_embeddings(tower)

    rows = []
    for idx, emb in enumerate(enum_.embeddings):
        fixes = embedding_restricts_to_identity(emb, k)
        rows.append(
            EmbeddingRow(
                index=idx,
                fixes_ground_field=fixes,
                signature=signature_under(G, emb, coeffs),
                description=emb.describe(),
                ground_index=restriction_index(emb, k),
            )
        )

    tilde = rescaled_form(G)
    tilde_coeffs = charpoly(tilde)
    ident = identity_ground_index(k)
    reached = {r.ground_index for r in rows}
    grows = []
    for tau in ground_embeddings(k):
        grows.append(
            GroundEmbeddingRow(
                index=tau.index,
                label=cyclotomic_label(k, tau, label_n) if label_n else None,
                is_identity=tau.index == ident,
                extends_to_real_embedding=tau.index in reached,
                signature=ground_signature(k, tau, tilde_coeffs),
            )
        )

    ok, bad = cyc2_integrality(G, k, digits)
    v3 = V3Result(ok, tuple(Witness(w.cycle, w.decimal, element_to_text(w.value)) for w in bad))
    v1 = V1Result(enum_.totally_real, enum_.witness)
    v2 = all(r.signature.q == 0 for r in rows if not r.fixes_ground_field)
    return ClassificationReport(
        v1=v1,
        ground_field=GroundFieldInfo(k.degree, len(gens)),
        embeddings=tuple(rows),
        v3=v3,
        verdict=decide(v1.totally_real, v2, ok),
        lorentz_signature=lorentz,
        ground_embeddings=tuple(grows),
    )


@dataclass(frozen=True)
class TableRow:
    n: int
    verdict: Verdict
    field_degree: int
    signatures: tuple[tuple[int | None, Signature], ...]  # (l, signature) per non-identity k-embedding
    report: ClassificationReport | None = None


def _family_row(args) -> TableRow:
    family, n = args
    from .family import FAMILIES

    build = FAMILIES[family]
    rep = classify(build(n), dim=3, label_n=n)
    sigs = tuple((g.label, g.signature) for g in rep.ground_embeddings if not g.is_identity)
    return TableRow(n, rep.verdict, rep.ground_field.degree, sigs, rep)


def classify_range(family: str, ns, jobs: int = 1) -> list[TableRow]:
    """One row per n, in the order of ``ns``; rows may be computed in parallel."""
    args = [(family, n) for n in ns]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_family_row, args))
    return [_family_row(a) for a in args]
