"""Game files: a small JSON schema for declaring games.

    {
      "schema_version": 1,
      "s0": 0.0,
      "tolerance": 1e-10,        # optional
      "agents": [
        {"id": 1, "revenue": {"a": 10, "b": 6, "p": 0.5}, "damage": {"c": 1, "q": 2}},
        ...
      ]
    }

Unknown keys are rejected so typos surface as parse errors. The bundled
example file describes the four-agent game used by the reference tables.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .model import AgentModel, Game, PowerDamage, PowerRevenue

SCHEMA_VERSION = 1


def example_game_path() -> Path:
    """Path of the bundled four-agent example game."""
    return Path(str(resources.files("permitgame") / "data" / "example4.json"))


def _number(obj: dict, key: str, where: str) -> float:
    if key not in obj:
        raise ValueError(f"{where}: missing key {key!r}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{where}: {key!r} must be a number, got {value!r}")
    return float(value)


def _check_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ValueError(f"{where}: unknown keys {sorted(unknown)}")


def game_from_dict(data: dict) -> Game:
    if not isinstance(data, dict):
        raise ValueError(f"game file must be a JSON object, got {type(data).__name__}")
    _check_keys(data, {"schema_version", "s0", "tolerance", "agents"}, "game")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    raw_agents = data.get("agents")
    if not isinstance(raw_agents, list) or not raw_agents:
        raise ValueError("game: 'agents' must be a nonempty list")
    agents = []
    for k, raw in enumerate(raw_agents):
        where = f"agents[{k}]"
        if not isinstance(raw, dict):
            raise ValueError(f"{where}: must be an object")
        _check_keys(raw, {"id", "revenue", "damage"}, where)
        if not isinstance(raw.get("id"), int) or isinstance(raw.get("id"), bool):
            raise ValueError(f"{where}: 'id' must be an integer")
        rev, dam = raw.get("revenue"), raw.get("damage")
        if not isinstance(rev, dict) or not isinstance(dam, dict):
            raise ValueError(f"{where}: 'revenue' and 'damage' must be objects")
        _check_keys(rev, {"a", "b", "p"}, f"{where}.revenue")
        _check_keys(dam, {"c", "q"}, f"{where}.damage")
        agents.append(
            AgentModel(
                id=raw["id"],
                revenue=PowerRevenue(
                    a=_number(rev, "a", f"{where}.revenue"),
                    b=_number(rev, "b", f"{where}.revenue"),
                    p=_number(rev, "p", f"{where}.revenue"),
                ),
                damage=PowerDamage(
                    c=_number(dam, "c", f"{where}.damage"),
                    q=_number(dam, "q", f"{where}.damage"),
                ),
            )
        )
    kwargs = {}
    if "tolerance" in data:
        kwargs["tolerance"] = _number(data, "tolerance", "game")
    return Game(agents=tuple(agents), s0=_number(data, "s0", "game"), **kwargs)


def game_to_dict(game: Game) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "s0": game.s0,
        "tolerance": game.tolerance,
        "agents": [
            {
                "id": a.id,
                "revenue": {"a": a.revenue.a, "b": a.revenue.b, "p": a.revenue.p},
                "damage": {"c": a.damage.c, "q": a.damage.q},
            }
            for a in game.agents
        ],
    }


def load_game(path) -> Game:
    """Parse a game file; any problem (I/O, JSON, schema) raises ValueError."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read game file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"game file {path} is not valid JSON: {exc}") from exc
    return game_from_dict(data)


def dump_game(game: Game, path) -> None:
    Path(path).write_text(json.dumps(game_to_dict(game), indent=2) + "\n")
