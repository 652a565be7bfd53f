from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class BettiTable(BaseModel):
    """beta_{i,j}(S/I) keyed as entries[i][j]; only non-zero values are stored."""

    entries: Dict[int, Dict[int, int]] = Field(default_factory=dict)
    nvars: int
    pd: int = 0
    reg: int = 0
    depth: int = 0
    truncated: bool = False
    degree_bound: Optional[int] = None
    field: str = "gf32003"
    seed: Optional[int] = None
    grading: str = "standard"

    @classmethod
    def build(cls, entries: Dict[int, Dict[int, int]], nvars: int, **meta) -> "BettiTable":
        clean = {i: {j: b for j, b in sorted(row.items()) if b} for i, row in sorted(entries.items())}
        clean = {i: row for i, row in clean.items() if row}
        pd = max(clean, default=0)
        reg = max((j - i for i, row in clean.items() for j in row), default=0)
        return cls(entries=clean, nvars=nvars, pd=pd, reg=reg, depth=nvars - pd, **meta)

    def beta(self, i: int, j: int) -> int:
        return self.entries.get(i, {}).get(j, 0)

    def totals(self) -> List[int]:
        return [sum(self.entries.get(i, {}).values()) for i in range(self.pd + 1)]

    def same_numbers(self, other: "BettiTable") -> bool:
        return self.entries == other.entries

    def numerator(self) -> List[int]:
        """sum_{i,j} (-1)^i beta_{i,j} t^j as a coefficient list."""
        top = max((j for row in self.entries.values() for j in row), default=0)
        out = [0] * (top + 1)
        for i, row in self.entries.items():
            for j, b in row.items():
                out[j] += (-1) ** i * b
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def triangle(self) -> str:
        """Plain-text table in the usual Macaulay layout: column i, row j - i."""
        cols = list(range(self.pd + 1))
        rows = sorted({j - i for i, row in self.entries.items() for j in row}) or [0]
        width = max([len(str(b)) for row in self.entries.values() for b in row.values()] + [len(str(c)) for c in cols] + [5])
        lines = [" " * 7 + " ".join(str(c).rjust(width) for c in cols)]
        lines.append("total: " + " ".join(str(t).rjust(width) for t in self.totals()))
        for r in range(rows[0], rows[-1] + 1):
            cells = [str(self.beta(i, i + r) or ".").rjust(width) for i in cols]
            lines.append(f"{r:>5}: " + " ".join(cells))
        return "\n".join(lines)


class DepthProfile(BaseModel):
    graph: str
    c: int
    r: int
    d: List[int]
    values: Dict[int, int]
    limit: int


class RegularityProfile(BaseModel):
    graph: str
    ell: List[int]
    values: Dict[int, int]


class KRow(BaseModel):
    k: int
    predicted_depth: Optional[int] = None
    predicted_reg: Optional[int] = None
    oracle_depth: Optional[int] = None
    oracle_reg: Optional[int] = None
    initial_depth: Optional[int] = None
    initial_reg: Optional[int] = None
    probe_depth: Optional[int] = None
    symbolic_equals_ordinary: Optional[bool] = None
    cm_prediction: Optional[bool] = None


class CutSetRow(BaseModel):
    W: List[int]
    components: List[List[int]]
    c: int
    height: int


class Classification(BaseModel):
    chordal: bool
    claw_free: bool
    net_free: bool
    tent_free: bool
    closed: bool
    closed_labeling: Optional[List[int]] = None
    block: bool
    unmixed: Optional[bool] = None
    cm: Optional[bool] = None


class InvariantReport(BaseModel):
    graph: str
    n: int
    edges: int
    components: int
    flags: Classification
    cut_sets: List[CutSetRow] = Field(default_factory=list)
    minimal_primes: List[List[str]] = Field(default_factory=list)
    dimension: Optional[int] = None
    maximal_cliques: List[List[int]] = Field(default_factory=list)
    interval_forms: Optional[List[List[int]]] = None
    indecomposable: Optional[int] = None
    depth_limit: Optional[int] = None
    depth_limit_caveat: bool = False
    rows: List[KRow] = Field(default_factory=list)
    betti: Dict[str, BettiTable] = Field(default_factory=dict)
    field: str
    seed: int
    oracle_field: Optional[str] = None
    timing: Optional[Dict[str, float]] = None


class Verdict(BaseModel):
    selector: str
    graph: str
    kind: str  # "theorem" or "evidence"
    ok: Optional[bool]
    details: Dict[str, Any] = Field(default_factory=dict)


class EnumerationRun(BaseModel):
    n_min: int
    n_max: int
    reduce_isomorphism: bool
    selectors: List[str]
    k_max: int
    graphs_checked: int = 0
    verdicts: int = 0
    counterexamples: List[Verdict] = Field(default_factory=list)
    evidence: Dict[str, Dict[str, int]] = Field(default_factory=dict)
    truncated: List[str] = Field(default_factory=list)
    field: str
    seed: int


class WitnessCertificate(BaseModel):
    graph: str
    k: int
    embedding: Dict[int, int]
    polynomial: str
    symbolic: bool
    ordinary: bool
    field: str
