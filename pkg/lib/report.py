import json
from fractions import Fraction
from typing import Iterable

from lib.genetic import GeneticCode
from lib.group import GroupElement, subset_members
from lib.strata import StratumSignature
from lib.threshold import WeightedThreshold

# ---------------------------------------------------------------------------
# Published counts
# ---------------------------------------------------------------------------

TABLE_COLUMNS = ("n", "c", "v", "k", "tk")

EXPECTED = {
    "c": {1: 0, 2: 1, 3: 2, 4: 3, 5: 7, 6: 21, 7: 135, 8: 2470, 9: 175428},
    "v": {3: 2, 4: 3, 5: 7, 6: 21, 7: 135, 8: 2470, 9: 319124, 10: 1214554343},
    "k": {1: 1, 2: 2, 3: 3, 4: 7, 5: 21, 6: 117, 7: 1506, 8: 62254},
    "tk": {1: 1, 2: 3, 3: 5, 4: 10, 5: 28, 6: 138, 7: 1623, 8: 63742},
}


# ---------------------------------------------------------------------------
# Value rendering
# ---------------------------------------------------------------------------

def fraction_text(value) -> str:
    """Exact "p/q" text ("p" for integers); never a decimal."""
    return str(Fraction(value))


def vector_json(values: Iterable) -> list[str]:
    return [fraction_text(v) for v in values]


def group_element_json(g: GroupElement) -> dict:
    return {"nu": list(g.nu), "sigma": g.sigma_one_based()}


def members_text(mask: int) -> str:
    """Members of a subset mask, decreasing, comma-separated."""
    return ",".join(str(i) for i in reversed(subset_members(mask)))


def render_json(doc) -> str:
    return json.dumps(doc, indent=2)


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------

def classify_document(
    lengths: tuple[Fraction, ...],
    canonical: tuple[Fraction, ...],
    g: GroupElement,
    code: GeneticCode | None = None,
    wall: int | None = None,
    signature: StratumSignature | None = None,
) -> dict:
    doc = {
        "lengths": vector_json(lengths),
        "canonical": vector_json(canonical),
        "group_element": group_element_json(g),
        "generic": code is not None,
    }
    if code is not None:
        doc["code"] = code.to_text()
    if wall is not None:
        doc["wall"] = members_text(wall)
    if signature is not None:
        doc["signature"] = signature.to_text()
        doc["dimension"] = signature.dimension
    return doc


def realize_document(code: GeneticCode, witness) -> dict:
    doc = {"code": code.to_text(), "n": code.n}
    if witness is None:
        doc["result"] = "not-realizable"
    else:
        doc["witness"] = vector_json(witness)
    return doc


def synthesize_document(table_hex: str, n: int, found: WeightedThreshold | None) -> dict:
    doc = {"n": n, "table": table_hex}
    if found is None:
        doc["result"] = "not-threshold"
    else:
        doc["w"] = vector_json(found.w)
        doc["t"] = fraction_text(found.t)
    return doc


# ---------------------------------------------------------------------------
# Count tables
# ---------------------------------------------------------------------------

def build_table_rows(columns: dict[str, dict[int, int]], max_n: int) -> list[dict]:
    rows = []
    for n in range(1, max_n + 1):
        row = {"n": n}
        for name in TABLE_COLUMNS[1:]:
            row[name] = columns.get(name, {}).get(n)
        rows.append(row)
    return rows


def render_table_csv(rows: list[dict]) -> str:
    lines = [",".join(TABLE_COLUMNS)]
    for row in rows:
        lines.append(",".join("" if row[c] is None else str(row[c]) for c in TABLE_COLUMNS))
    return "\n".join(lines)


def render_table_json(rows: list[dict]) -> str:
    return render_json(rows)


def table_mismatches(rows: list[dict]) -> list[str]:
    """Computed entries that disagree with the published counts."""
    problems = []
    for row in rows:
        for name, expected in EXPECTED.items():
            value = row.get(name)
            if value is None or row["n"] not in expected:
                continue
            if value != expected[row["n"]]:
                problems.append(f"{name}({row['n']}) = {value}, expected {expected[row['n']]}")
    return problems
