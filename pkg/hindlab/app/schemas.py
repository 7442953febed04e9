from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class BudgetFields(BaseModel):
    """Bounds shared by every search request; omitted fields fall back to the environment."""
    coloring: Dict[str, Any] = Field(default_factory=lambda: {"kind": "val2_parity"},
                                     description="Coloring spec, e.g. {'kind': 'val2_parity'}")
    height: Optional[int] = Field(default=None, ge=1, description="Height bound for rational searches")
    budget_candidates: Optional[int] = Field(default=None, ge=1, description="Candidate budget")
    budget_seconds: Optional[int] = Field(default=None, ge=1, description="Wall-time budget in seconds")


class PatternSearchRequest(BudgetFields):
    mode: Literal["witness", "threshold"] = Field(default="witness")
    N: int = Field(default=20, ge=1, description="Interval [1..N] for schur/vdw witnesses")
    k: Optional[int] = Field(default=None, ge=1, description="Pattern length")
    r: int = Field(default=2, ge=1, description="Number of colors for thresholds")
    n: int = Field(default=4, ge=1, description="Ground set [n] for dut witnesses")
    v: Optional[List[str]] = Field(default=None, description="Vector for the dut subset coloring, rationals as 'a/b'")
    distinct: bool = Field(default=False, description="Schur: require x < y")
    polys: List[str] = Field(default_factory=list, description="pvdw polynomial vectors, e.g. 'X, X**2'")
    window: Optional[int] = Field(default=None, ge=1, description="pvdw: largest box side")


class BuildRequest(BudgetFields):
    mode: Literal["lower", "full"] = Field(default="lower")
    n: int = Field(..., ge=1, description="Length of the consistent vector")
    Q: List[str] = Field(default_factory=lambda: ["1"], description="Dilation test set, rationals as 'a/b'")


class HindmanRequest(BudgetFields):
    k: int = Field(default=2, ge=1, description="Number of variables")
    route: Literal["direct", "constructive", "auto"] = Field(default="direct")
    generalized: bool = Field(default=False, description="Sums of disjoint products")
    require_distinct: bool = Field(default=False)


class IdentitiesRequest(BaseModel):
    seed: int = Field(default=0, description="Seed of the random streams")
    cases: int = Field(default=1000, ge=1, le=100000, description="Random cases per suite")
    suites: Optional[List[str]] = Field(default=None, description="Subset of suites (all by default)")
