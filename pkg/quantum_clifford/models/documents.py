from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from quantum_clifford.models.config import RunConfig
from quantum_clifford.modules import WeightModule
from quantum_clifford.roots import RootSystem, build_root_system
from quantum_clifford.scalars import ScalarContext
from quantum_clifford.utils import linalg
from quantum_clifford.utils.helpers import render_sparse


class RootSystemDocument(BaseModel):
    """Root datum summary: Cartan data, positive roots and cominuscule nodes (1-based)."""

    root_type: str
    rank: int
    cartan: list[list[int]]
    symmetrizers: list[int]
    positive_roots: list[list[int]]
    highest_root: list[int]
    cominuscule_nodes: list[int]

    @staticmethod
    def from_root_system(rs: RootSystem) -> "RootSystemDocument":
        return RootSystemDocument(
            root_type=rs.root_type,
            rank=rs.rank,
            cartan=[list(row) for row in rs.cartan],
            symmetrizers=list(rs.symmetrizers),
            positive_roots=[list(root) for root in rs.positive_roots],
            highest_root=list(rs.highest_root),
            cominuscule_nodes=[s + 1 for s in rs.cominuscule_nodes],
        )


class ModuleDocument(BaseModel):
    """
    A weight module as JSON: weights plus the sparse E_i and F_i matrices,
    entries written as canonical "p(u)/q(u)" strings.
    """

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "root_type": "A",
                "rank": 1,
                "denominator": 1,
                "label": "(1,)",
                "weights": [[1], [-1]],
                "active": [0],
                "E": {"0": {"0,1": "1"}},
                "F": {"0": {"1,0": "1"}},
            }
        }
    )

    root_type: str
    rank: int
    denominator: int = Field(ge=1)
    label: str | None = None
    weights: list[list[int]]
    active: list[int]
    E: dict[str, dict[str, str]]
    F: dict[str, dict[str, str]]

    @field_validator("E", "F")
    def validate_entries(cls, v: dict[str, dict[str, str]]) -> dict[str, dict[str, str]]:
        for matrix in v.values():
            for key in matrix:
                row, _, col = key.partition(",")
                if not (row.isdigit() and col.isdigit()):
                    raise ValueError(f"Invalid matrix position: {key}")
        return v

    @staticmethod
    def from_module(module: WeightModule) -> "ModuleDocument":
        rs, scalars = module.root_system, module.scalars
        return ModuleDocument(
            root_type=rs.root_type,
            rank=rs.rank,
            denominator=scalars.D,
            label=None if module.label is None else str(module.label),
            weights=[list(w) for w in module.weights],
            active=list(module.active),
            E={str(i): render_sparse(scalars, module.E(i)) for i in module.active},
            F={str(i): render_sparse(scalars, module.F(i)) for i in module.active},
        )

    def to_module(self) -> WeightModule:
        """Rebuild the module; callers audit it with verify_relations."""
        rs = build_root_system(self.root_type, self.rank)
        scalars = ScalarContext(self.denominator)
        n = len(self.weights)

        def matrix(sparse: dict[str, str]):
            entries = {}
            for key, text in sparse.items():
                row, col = key.split(",")
                entries[(int(row), int(col))] = scalars.parse(text)
            return linalg.from_entries(entries, (n, n), scalars.domain)

        label = self.label
        if label is not None and label.startswith("("):
            label = tuple(int(part) for part in label.strip("()").split(",") if part.strip())
        return WeightModule(
            rs,
            scalars,
            [tuple(w) for w in self.weights],
            {int(i): matrix(m) for i, m in self.E.items()},
            {int(i): matrix(m) for i, m in self.F.items()},
            active=self.active,
            label=label,
        )


class Verification(BaseModel):
    """One audited identity and its outcome."""

    name: str
    passed: bool
    detail: str | None = None


class ReportDocument(BaseModel):
    """What every subcommand prints: the config used, results and the audit trail."""

    command: str
    config: RunConfig
    results: dict[str, Any] = Field(default_factory=dict)
    verifications: list[Verification] = Field(default_factory=list)
    status: Literal["ok", "failed"] = "ok"

    def check(self, name: str, passed: bool, detail: str | None = None) -> bool:
        """Record a verification; a failed one marks the whole report failed."""
        self.verifications.append(Verification(name=name, passed=bool(passed), detail=detail))
        if not passed:
            self.status = "failed"
        return bool(passed)

    @property
    def passed(self) -> bool:
        return self.status == "ok"

    def payload(self) -> dict[str, Any]:
        data = self.model_dump(mode="json")
        data["config"].pop("cache_dir", None)
        return data
