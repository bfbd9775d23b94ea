import time
from typing import Iterable, Optional

import requests

from lib.config import OEIS_BASE_URL, OEIS_TIMEOUT


def oeis_headers() -> dict:
    return {"Accept": "application/json"}


def oeis_get(path: str, params: Optional[dict] = None) -> dict | list | None:
    url = f"{OEIS_BASE_URL}{path}"
    for attempt in range(3):
        resp = requests.get(url, headers=oeis_headers(), params=params, timeout=float(OEIS_TIMEOUT))
        if resp.status_code == 429:
            wait = int(resp.headers.get("Retry-After", 5))
            time.sleep(wait)
            continue
        resp.raise_for_status()
        return resp.json()
    resp.raise_for_status()
    return resp.json()


def format_a_number(number: int) -> str:
    """e.g. 1532 -> A001532"""
    return f"A{number:06d}"


def search_terms(terms: Iterable[int]) -> list[tuple[str, str]]:
    """Return (A-number, name) for every sequence containing the terms consecutively."""
    query = ",".join(str(t) for t in terms)
    data = oeis_get("/search", params={"q": query, "fmt": "json"})
    # the endpoint answers null for no hits, a bare list or a {"results": [...]} wrapper
    if data is None:
        return []
    results = (data.get("results") or []) if isinstance(data, dict) else data
    return [(format_a_number(entry["number"]), entry.get("name", "")) for entry in results]
