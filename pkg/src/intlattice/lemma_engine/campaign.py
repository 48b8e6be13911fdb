"""Seeded instance generation, dispatching checks, and soundness campaigns."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BadParameters, HypothesisFailed
from ..sampling import rng_for
from .four_degenerations import FourDegenInstance, check_four_degenerations, generate_four_degenerations
from .marcucci import MarcucciInstance, check_marcucci, generate_marcucci_improved
from .preliminary import PreliminaryThreeInstance, generate_preliminary_three
from .report import Report
from .unimodular_m import UnimodularMInstance, check_unimodular_m, generate_unimodular_m

KINDS = ("four_degenerations", "unimodular_m", "preliminary_three", "marcucci_improved")

_MIN_GENUS = {"four_degenerations": 1, "unimodular_m": 2, "preliminary_three": 1, "marcucci_improved": 2}

_LOADERS = {
    "four_degenerations": FourDegenInstance,
    "unimodular_m": UnimodularMInstance,
    "preliminary_three": PreliminaryThreeInstance,
    "marcucci": MarcucciInstance,
    "marcucci_improved": MarcucciInstance,
}


def generate_instance(kind: str, g: int, k: int, seed: int):
    """Deterministic instance of ``kind`` satisfying that lemma's hypotheses.

    For ``marcucci_improved`` the lattice has rank ``2g`` and ``k`` bounds the
    transvection multipliers.
    """
    return _generate(kind, g, k, seed)[0]


def _generate(kind: str, g: int, k: int, seed: int):
    if kind not in _MIN_GENUS:
        raise BadParameters(f"unknown lemma kind {kind!r}; expected one of {', '.join(KINDS)}")
    if g < _MIN_GENUS[kind] or k < 1:
        raise BadParameters(f"{kind} needs g >= {_MIN_GENUS[kind]} and k >= 1, got g={g}, k={k}")
    rng = rng_for(seed, kind, g, k)
    rep = None
    if kind == "four_degenerations":
        inst, rep = generate_four_degenerations(g, k, rng)
    elif kind == "unimodular_m":
        inst = generate_unimodular_m(g, k, rng)
    elif kind == "preliminary_three":
        inst = generate_preliminary_three(2 * g, k, rng)
    else:
        inst = generate_marcucci_improved(g, k, rng)
    if rep is None:
        rep = check_instance(inst)
    if not rep.hypotheses_hold:
        raise AssertionError(f"{kind} generator produced an instance failing {rep.failing_hypotheses}")
    inst.construction.update({"kind": kind, "g": str(g), "k": str(k), "seed": str(seed)})
    return inst, rep


def check_instance(inst, improved: bool = True) -> Report:
    """Run the checker matching the instance type; hypothesis failures become data."""
    if isinstance(inst, FourDegenInstance):
        return check_four_degenerations(inst)
    if isinstance(inst, UnimodularMInstance):
        return check_unimodular_m(inst)
    if isinstance(inst, MarcucciInstance):
        return check_marcucci(inst, improved=improved)
    if isinstance(inst, PreliminaryThreeInstance):
        try:
            return inst.check()
        except HypothesisFailed as exc:
            rep = Report("preliminary_three", {exc.hypothesis: False})
            rep.details["failed"] = exc.hypothesis
            return rep
    raise TypeError(f"not a lemma instance: {type(inst).__name__}")


def load_instance(obj: dict):
    kind = obj.get("kind")
    if kind not in _LOADERS:
        raise BadParameters(f"unknown instance kind {kind!r}")
    return _LOADERS[kind].from_json(obj)


@dataclass(frozen=True)
class CampaignConfig:
    kind: str
    count: int = 1000
    seed: int = 0
    genera: tuple[int, ...] = (2, 3, 4, 5)
    ks: tuple[int, ...] = (1, 2, 3)


@dataclass
class CampaignResult:
    config: CampaignConfig
    records: list[dict] = field(default_factory=list)

    @property
    def hypotheses_held(self) -> int:
        return sum(r["hypotheses_hold"] for r in self.records)

    @property
    def conclusions_held(self) -> int:
        return sum(r["conclusion_holds"] for r in self.records)

    @property
    def unsound(self) -> list[dict]:
        return [r for r in self.records if r["hypotheses_hold"] and not r["conclusion_holds"]]

    @property
    def sound(self) -> bool:
        return not self.unsound

    def summary(self) -> dict:
        return {
            "kind": self.config.kind,
            "count": str(len(self.records)),
            "seed": str(self.config.seed),
            "hypotheses_held": str(self.hypotheses_held),
            "conclusions_held": str(self.conclusions_held),
            "unsound": [r["index"] for r in self.unsound],
            "sound": self.sound,
        }


def campaign_parameters(config: CampaignConfig, i: int) -> tuple[int, int, int]:
    """``(g, k, seed)`` for the ``i``-th instance of a campaign."""
    rng = rng_for(config.seed, "campaign", config.kind, i)
    return rng.choice(config.genera), rng.choice(config.ks), rng.randrange(2**31)


def run_campaign(config: CampaignConfig) -> CampaignResult:
    if config.kind not in KINDS:
        raise BadParameters(f"unknown lemma kind {config.kind!r}")
    if config.count < 0:
        raise BadParameters("count must be non-negative")
    result = CampaignResult(config)
    for i in range(config.count):
        g, k, seed = campaign_parameters(config, i)
        _, rep = _generate(config.kind, g, k, seed)
        result.records.append(
            {
                "index": str(i),
                "g": str(g),
                "k": str(k),
                "seed": str(seed),
                "hypotheses_hold": rep.hypotheses_hold,
                "conclusion_holds": rep.conclusion_holds,
            }
        )
    return result
