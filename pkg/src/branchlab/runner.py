"""Scenario files: validated JSON descriptions of one experiment each.

A scenario names an experiment ``kind`` and a ``params`` block. Parameters
are checked against a JSON schema for the kind, then handed to the library,
whose own validation catches what the schema cannot express. Reports are
plain dicts, serialised with sorted keys so that identical inputs give
byte-identical files.
"""

from __future__ import annotations

import copy
import csv
import io
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Mapping

import jsonschema

from .confirmation import WeightTheory, census_float, compare_measures, confirmation_census
from .errors import MeasureUnavailable, ScenarioError, TieError, UnknownKind
from .evolution import EvolutionConfig, Policy, exact_many_worlds, mind_ratio, one_world_ensemble
from .incompressibility import (
    DEFAULT_SLACK,
    BoundedComposition,
    FairCoin,
    binary_entropy,
    compression_test,
    enumerate_family,
    read_bits,
)
from .multiverse import MeasureKind, ensemble_measure, evolve, spec_from_dict, spec_to_dict
from .rationals import as_fraction, format_fraction, to_jsonable
from .strategy import (
    Axiom,
    Kind,
    Prospect,
    SearchGrid,
    Strategy,
    elect_stv,
    evaluate_key,
    find_violation,
    interval_electorate,
    successor_caring_weights,
    timescale_decision,
    tree_from_nested,
)
from .strategy.strategies import preference_matrix

__all__ = ["KINDS", "SCHEMAS", "ScenarioResult", "load_scenario", "run_scenario", "list_scenarios", "describe", "dumps"]

_RATIONAL = {"type": ["string", "integer"], "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}
_RATIONAL_LIST = {"type": "array", "items": _RATIONAL, "minItems": 1}
_SPEC = {
    "type": "object",
    "required": ["variant"],
    "properties": {
        "variant": {"enum": ["CBU1", "CBU2", "CBU3", "CBU4"]},
        "outcome_count": {"type": "integer", "minimum": 1},
        "weights": _RATIONAL_LIST,
        "replication_counts": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "qualia_factors": _RATIONAL_LIST,
        "q_split": {"type": "array", "items": _RATIONAL_LIST, "minItems": 1},
    },
    "additionalProperties": False,
}
_PRESSES = {"type": "integer", "minimum": 0, "description": "number of button presses N"}
_PROSPECT = {
    "oneOf": [
        {
            "type": "object",
            "required": ["entries"],
            "properties": {
                "name": {"type": "string"},
                "entries": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["weight", "utility"],
                        "properties": {
                            "outcome": {"type": ["string", "integer"]},
                            "weight": _RATIONAL,
                            "utility": _RATIONAL,
                            "good": {"type": "string"},
                        },
                        "additionalProperties": False,
                    },
                },
            },
            "additionalProperties": False,
        },
        {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": _RATIONAL}},
    ]
}
_STRATEGY = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": [k.value for k in Kind]},
        "weight_mode": {"enum": ["weight_sensitive", "weight_indifferent"]},
        "x": _RATIONAL,
        "grid_resolution": {"type": "integer", "minimum": 1},
        "f1": {"type": "object", "additionalProperties": _RATIONAL},
        "f2": {"type": "object", "additionalProperties": _RATIONAL},
    },
    "additionalProperties": False,
}
_DATA = {
    "type": "object",
    "description": "bits inline, from a file, or synthesised from the seed",
    "oneOf": [
        {"required": ["bits"]},
        {"required": ["file"]},
        {"required": ["length", "zeros"]},
        {"required": ["length", "source"]},
    ],
    "properties": {
        "bits": {"type": "string", "pattern": "^[01]+$"},
        "file": {"type": "string"},
        "format": {"enum": ["ascii", "raw"]},
        "length": {"type": "integer", "minimum": 1},
        "zeros": {"type": "integer", "minimum": 0},
        "zero_rate": _RATIONAL,
        "source": {"enum": ["prng"]},
    },
    "additionalProperties": False,
}
_HYPOTHESIS = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["incompressible_fair", "bounded_composition"]},
        "p": _RATIONAL,
        "k": _RATIONAL,
    },
    "additionalProperties": False,
}


def _params(required, properties):
    return {"type": "object", "required": required, "properties": properties, "additionalProperties": False}


SCHEMAS: dict[str, dict] = {
    "evolve": _params(
        ["spec", "presses"],
        {"spec": _SPEC, "presses": _PRESSES, "max_classes": {"type": "integer", "minimum": 1}},
    ),
    "census": _params(
        ["spec", "presses", "measure", "tolerance"],
        {
            "spec": _SPEC,
            "presses": _PRESSES,
            "measure": {"enum": [m.value for m in MeasureKind]},
            "tolerance": _RATIONAL,
            "references": {"type": "array", "items": _RATIONAL_LIST},
        },
    ),
    "compare_measures": _params(
        ["spec", "presses", "reference", "tolerance"],
        {"spec": _SPEC, "presses": _PRESSES, "reference": _RATIONAL_LIST, "tolerance": _RATIONAL},
    ),
    "strategy_rank": _params(
        ["strategies", "prospects"],
        {
            "strategies": {"type": "array", "items": _STRATEGY, "minItems": 1},
            "prospects": {"type": "array", "items": _PROSPECT, "minItems": 2},
        },
    ),
    "stv": _params(
        ["prospects"],
        {
            "prospects": {"type": "array", "items": _PROSPECT, "minItems": 2},
            "grid_resolution": {"type": "integer", "minimum": 1},
            "weight_mode": {"enum": ["weight_sensitive", "weight_indifferent"]},
        },
    ),
    "axiom_search": _params(
        ["strategies"],
        {
            "strategies": {"type": "array", "items": _STRATEGY, "minItems": 1},
            "axioms": {"type": "array", "items": {"enum": [a.value for a in Axiom]}},
            "grid": {
                "type": "object",
                "properties": {
                    "utilities": _RATIONAL_LIST,
                    "denominator": {"type": "integer", "minimum": 1},
                    "max_outcomes": {"type": "integer", "minimum": 1, "maximum": 4},
                    "continuity_max_outcomes": {"type": "integer", "minimum": 1, "maximum": 4},
                    "epsilons": _RATIONAL_LIST,
                },
                "additionalProperties": False,
            },
        },
    ),
    "timescale": _params(
        ["x", "pay_per_step", "lethality", "horizon", "granularities"],
        {
            "x": _RATIONAL,
            "pay_per_step": _RATIONAL,
            "lethality": _RATIONAL,
            "horizon": {"type": "integer", "minimum": 1},
            "granularities": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
            "death_utility": _RATIONAL,
            "successor_tree": {"type": "array"},
        },
    ),
    "compression_test": _params(
        ["data"],
        {
            "data": _DATA,
            "hypothesis": _HYPOTHESIS,
            "slack": {"type": "integer", "minimum": 0},
            "trials": {"type": "integer", "minimum": 1},
        },
    ),
    "family_search": _params(
        ["data", "family"],
        {
            "data": _DATA,
            "family": {
                "type": "object",
                "required": ["denominator", "numerators", "ks"],
                "properties": {
                    "denominator": {"type": "integer", "minimum": 1},
                    "numerators": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
                    "ks": _RATIONAL_LIST,
                },
                "additionalProperties": False,
            },
        },
    ),
    "evolution": _params(
        ["years"],
        {
            "population": {"type": "integer", "minimum": 1},
            "years": {"type": "integer", "minimum": 0},
            "extinction": _RATIONAL,
            "growth": {"type": "integer", "minimum": 1},
            "trials": {"type": "integer", "minimum": 1},
        },
    ),
}

KINDS = tuple(SCHEMAS)

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["name", "kind", "params"],
    "properties": {
        "name": {"type": "string", "pattern": r"^[A-Za-z0-9_.-]+$"},
        "description": {"type": "string"},
        "kind": {"enum": list(KINDS)},
        "seed": {"type": "integer", "minimum": 0},
        "params": {"type": "object"},
        "outputs": {
            "type": "object",
            "properties": {"json": {"type": "string"}, "csv": {"type": "string"}},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


@dataclass
class ScenarioResult:
    name: str
    kind: str
    report: dict
    csv: str | None = None
    files: list[Path] = field(default_factory=list)


def dumps(report) -> str:
    """Deterministic JSON text for a report."""
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"


def load_scenario(source) -> dict:
    """Parse and validate a scenario from a path, JSON text or dict."""
    base = None
    if isinstance(source, Mapping):
        data = copy.deepcopy(dict(source))
    else:
        path = Path(source)
        base = path.parent
        try:
            data = json.loads(path.read_text())
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{path}: malformed JSON: {exc}") from exc
    try:
        jsonschema.validate(data, SCENARIO_SCHEMA)
        jsonschema.validate(data["params"], SCHEMAS[data["kind"]])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ScenarioError(f"scenario invalid at {where}: {exc.message}") from exc
    data["_base"] = base
    return data


# data helpers


def _bits(block: Mapping, base: Path | None, seed: int) -> str:
    if "bits" in block:
        return block["bits"]
    if "file" in block:
        path = Path(block["file"])
        if base is not None and not path.is_absolute():
            path = base / path
        return read_bits(path, block.get("format", "ascii"))
    n = block["length"]
    rng = random.Random(seed)
    if "zeros" in block:
        z = block["zeros"]
        if z > n:
            raise ScenarioError("more zeroes than bits requested")
        out = ["1"] * n
        for i in rng.sample(range(n), z):
            out[i] = "0"
        return "".join(out)
    rate = as_fraction(block.get("zero_rate", "1/2"))
    num, den = rate.numerator, rate.denominator
    return "".join("0" if rng.randrange(den) < num else "1" for _ in range(n))


def _hypothesis(block: Mapping | None):
    if block is None or block["kind"] == "incompressible_fair":
        return FairCoin()
    if "p" not in block:
        raise ScenarioError("bounded_composition needs p")
    return BoundedComposition(block["p"], block.get("k", 10))


def _prospects(raw) -> list[Prospect]:
    return [Prospect.from_dict(p) for p in raw]


# one function per kind


def _run_evolve(p, ctx):
    spec = spec_from_dict(p["spec"])
    ens = evolve(spec, p["presses"], max_classes=p.get("max_classes", 10**7))
    measures = {}
    for kind in MeasureKind:
        try:
            measures[kind.value] = ensemble_measure(ens, kind)
        except MeasureUnavailable:
            continue
    rows = []
    for c in ens:
        row = c.to_dict()
        row["measures"] = {k: m[c.counts] for k, m in measures.items()}
        rows.append(row)
    report = {
        "spec": spec_to_dict(spec),
        "presses": p["presses"],
        "class_count": len(ens),
        "total_branches": ens.total_multiplicity,
        "classes": rows,
    }
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = sorted(measures)
    w.writerow(["counts", "multiplicity", *names])
    for c in ens:
        w.writerow([";".join(map(str, c.counts)), c.multiplicity, *(format_fraction(measures[k][c.counts]) for k in names)])
    return report, buf.getvalue()


def _run_census(p, ctx):
    spec = spec_from_dict(p["spec"])
    report = confirmation_census(spec, p["presses"], p["measure"], p["tolerance"])
    out = report.to_dict()
    out["min_self_confirmation"] = report.min_self_confirmation()
    out["min_self_confirmation_float"] = float(report.min_self_confirmation())
    refs = []
    for ref in p.get("references", []):
        theory = WeightTheory(tuple(ref))
        refs.append({"reference": list(theory.weights), "mass": report.reference_mass(theory)})
    if refs:
        out["reference_masses"] = refs
    if ctx["float_report"] and spec.outcome_count == 2:
        out["float_census"] = census_float(spec, p["presses"], p["tolerance"])
    return out, report.to_csv()


def _run_compare(p, ctx):
    spec = spec_from_dict(p["spec"])
    return compare_measures(spec, p["presses"], p["reference"], p["tolerance"]).to_dict(), None


def _run_rank(p, ctx):
    prospects = _prospects(p["prospects"])
    names = [q.name or f"#{i}" for i, q in enumerate(prospects)]
    results = []
    for raw in p["strategies"]:
        strategy = Strategy.from_dict(raw)
        signs = preference_matrix(strategy, prospects)
        wins = signs.sum(axis=1)
        order = sorted(range(len(prospects)), key=lambda i: (-int(wins[i]), i))
        entry = {
            "strategy": strategy.to_dict(),
            "name": strategy.name,
            "order": [names[i] for i in order],
            "preference_matrix": signs.tolist(),
        }
        if strategy.kind is Kind.FUTURE_SELF_DEMOCRAT:
            try:
                entry["stv"] = elect_stv(prospects, strategy).to_dict()
            except TieError as exc:  # ties are a result, not a failure
                entry["stv"] = {"tie": list(exc.tied)}
        else:
            entry["keys"] = {names[i]: list(evaluate_key(strategy, q)) for i, q in enumerate(prospects)}
        results.append(entry)
    return {"prospects": [q.to_dict() for q in prospects], "rankings": results}, None


def _run_stv(p, ctx):
    prospects = _prospects(p["prospects"])
    democrat = Strategy(Kind.FUTURE_SELF_DEMOCRAT, p.get("weight_mode", "weight_sensitive"), grid_resolution=p.get("grid_resolution"))
    ballots = interval_electorate([democrat.effective(q) for q in prospects])
    report = {
        "prospects": [q.to_dict() for q in prospects],
        "ballots": [{"mass": b.mass, "tiers": [list(t) for t in b.tiers], "lo": b.lo, "hi": b.hi} for b in ballots],
    }
    try:
        report["result"] = elect_stv(prospects, democrat).to_dict()
    except TieError as exc:
        report["result"] = {"tie": list(exc.tied)}
    return report, None


def _run_axioms(p, ctx):
    grid = SearchGrid.from_dict(p["grid"]) if "grid" in p else SearchGrid()
    axioms = [Axiom(a) for a in p.get("axioms", [a.value for a in Axiom])]
    found = []
    for raw in p["strategies"]:
        strategy = Strategy.from_dict(raw)
        for axiom in axioms:
            w = find_violation(strategy, axiom, grid)
            found.append(
                {
                    "strategy": strategy.name,
                    "axiom": axiom.value,
                    "label": axiom.label,
                    "witness": w.to_dict() if w is not None else None,
                    "status": "verified witness" if w is not None else "none found",
                }
            )
    return {"grid": grid.to_dict(), "results": found}, None


def _run_timescale(p, ctx):
    death = p.get("death_utility")
    runs = []
    for g in p["granularities"]:
        kwargs = {} if death is None else {"death_utility": death}
        decisions = timescale_decision(p["x"], p["pay_per_step"], p["lethality"], p["horizon"], g, **kwargs)
        runs.append(
            {
                "granularity": g,
                "first_decision": decisions[0].decision,
                # (1 - p)^g can run to thousands of digits; keep it as a power
                "first_survival_mass": {"base": 1 - as_fraction(p["lethality"]), "exponent": g},
                "first_survival_mass_float": float(decisions[0].survival_mass),
                "accepted_epochs": sum(d.decision == "accept" for d in decisions),
                "epochs": len(decisions),
            }
        )
    report = {
        "x": as_fraction(p["x"]),
        "pay_per_step": as_fraction(p["pay_per_step"]),
        "lethality": as_fraction(p["lethality"]),
        "horizon": p["horizon"],
        "runs": runs,
    }
    if "successor_tree" in p:
        weights = successor_caring_weights(tree_from_nested(p["successor_tree"]))
        report["successor_caring_weights"] = [{"path": list(k), "weight": v} for k, v in weights.items()]
    return report, None


def _run_compression(p, ctx):
    hypothesis = _hypothesis(p.get("hypothesis"))
    slack = p.get("slack", DEFAULT_SLACK)
    trials = p.get("trials", 1)
    verdicts = []
    for t in range(trials):
        bits = _bits(p["data"], ctx["base"], ctx["seed"] + t)
        verdicts.append(compression_test(bits, hypothesis, slack))
    first = verdicts[0]
    report = {"hypothesis": hypothesis.to_dict(), "verdict": first.to_dict(), "trials": trials}
    if trials > 1:
        report["refutations"] = sum(v.refuted for v in verdicts)
    if isinstance(hypothesis, BoundedComposition):
        n = first.length
        codec = hypothesis.codec_for(n)
        report["codec"] = {"n": n, "b": codec.b, "size_bits": codec.length, "entropy_bits": binary_entropy(hypothesis.p) * n}
    return report, None


def _run_family(p, ctx):
    bits = _bits(p["data"], ctx["base"], ctx["seed"])
    fam = p["family"]
    members = [BoundedComposition(Fraction(j, fam["denominator"]), k) for j in fam["numerators"] for k in fam["ks"]]
    result = enumerate_family(members, bits)
    return {"length": len(bits), "zeros": bits.count("0"), "members": len(members), "best": result.to_dict()}, None


def _run_evolution(p, ctx):
    kwargs = {k: p[k] for k in ("population", "years", "extinction", "growth") if k in p}
    b = EvolutionConfig(**kwargs, policy=Policy.ACCEPT)
    a = EvolutionConfig(**kwargs, policy=Policy.DECLINE)
    report = {
        "config": b.to_dict(),
        "many_worlds": {"A": exact_many_worlds(a).to_dict(), "B": exact_many_worlds(b).to_dict()},
        "mind_ratio": mind_ratio(b, a),
        "mind_ratio_float": float(mind_ratio(b, a)),
    }
    if "trials" in p:
        report["one_world"] = {
            "A": one_world_ensemble(a, p["trials"], ctx["seed"]).to_dict(),
            "B": one_world_ensemble(b, p["trials"], ctx["seed"]).to_dict(),
        }
    return report, None


_RUNNERS: dict[str, Callable] = {
    "evolve": _run_evolve,
    "census": _run_census,
    "compare_measures": _run_compare,
    "strategy_rank": _run_rank,
    "stv": _run_stv,
    "axiom_search": _run_axioms,
    "timescale": _run_timescale,
    "compression_test": _run_compression,
    "family_search": _run_family,
    "evolution": _run_evolution,
}


def _floats(obj):
    if isinstance(obj, Fraction):
        try:
            return float(obj)
        except OverflowError:
            return format_fraction(obj)
    if isinstance(obj, dict):
        return {k: _floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_floats(v) for v in obj]
    return obj


def run_scenario(source, *, seed: int | None = None, out_dir=None, float_report: bool = False) -> ScenarioResult:
    """Validate and execute a scenario; write reports when ``out_dir`` is given.

    Library errors raised by parameter checks (SpecError and friends)
    propagate unchanged; the CLI maps them to exit codes.
    """
    data = load_scenario(source)
    ctx = {
        "seed": seed if seed is not None else data.get("seed", 0),
        "base": data["_base"],
        "float_report": float_report,
    }
    body, table = _RUNNERS[data["kind"]](data["params"], ctx)
    report = {
        "scenario": data["name"],
        "kind": data["kind"],
        "seed": ctx["seed"],
        "mode": "float-report" if float_report else "exact",
        "report": body,
    }
    if float_report:
        report["float_report"] = _floats(body)
    result = ScenarioResult(data["name"], data["kind"], report, table)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        outputs = data.get("outputs", {})
        json_path = out / outputs.get("json", f"{data['name']}.json")
        json_path.write_text(dumps(report))
        result.files.append(json_path)
        if table is not None:
            csv_path = out / outputs.get("csv", f"{data['name']}.csv")
            csv_path.write_text(table)
            result.files.append(csv_path)
    return result


def _bundle():
    return resources.files("branchlab") / "scenarios"


def list_scenarios() -> list[dict[str, Any]]:
    """Bundled scenarios with their kind and one-line description."""
    out = []
    for entry in sorted(_bundle().iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            data = json.loads(entry.read_text())
            out.append({"file": entry.name, "name": data["name"], "kind": data["kind"], "description": data.get("description", "")})
    return out


def bundled_path(name: str) -> Path:
    """Filesystem path of a bundled scenario, by file name or scenario name."""
    fname = name if name.endswith(".json") else name + ".json"
    path = Path(str(_bundle() / fname))
    if not path.exists():
        raise FileNotFoundError(name)
    return path


def describe(kind: str) -> str:
    """Parameter schema of an experiment kind, as indented JSON text."""
    if kind not in SCHEMAS:
        raise UnknownKind(f"unknown experiment kind {kind!r}; known: {', '.join(KINDS)}")
    return json.dumps(SCHEMAS[kind], indent=2, sort_keys=True)
