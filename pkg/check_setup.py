#!/usr/bin/env python3
"""
Smoke check for the torus orbifold toolkit.
Run this after installing requirements.txt to confirm the library and the
fixture corpus work end to end.
"""

import sys

from src.client import get_client
from src.config import settings
from src.tools import cmd_polygon, cmd_thom, list_fixtures
from src.workspace_utils import is_workspace_configured


def main():
    sys.stdout.reconfigure(encoding='utf-8')
    print("=" * 60)
    print("Torus Orbifold Toolkit - Setup Check")
    print("=" * 60)
    print()

    print(f"Face enumeration cap: valence {settings.valence_cap}")
    if is_workspace_configured():
        print(f"[OK] Workspace: {settings.workspace_path}")
    else:
        print("[INFO] WORKSPACE_PATH not set; the server will only accept fixtures")

    client = get_client()
    failures = 0

    result = list_fixtures(client)
    if result["successful"]:
        print(f"[OK] {len(result['data']['fixtures'])} fixtures load")
    else:
        print(f"[ERROR] Fixtures: {result['error']}")
        failures += 1

    result = cmd_thom(client, fixture="p1236")
    if result["successful"]:
        facets = [f for f in result["data"]["faces"] if f["dim"] == 2]
        multipliers = [f["minimal_multiplier"] for f in facets]
        print(f"[OK] P(1,2,3,6) facet multipliers: {multipliers}")
    else:
        print(f"[ERROR] Thom classes: {result['error']}")
        failures += 1

    result = cmd_polygon(client, fixture="p112")
    if result["successful"]:
        print(f"[OK] P(1,1,2) generator lattice: {result['data']['hnf_basis']}")
    else:
        print(f"[ERROR] Polygon pipeline: {result['error']}")
        failures += 1

    print()
    print("=" * 60)
    print("Setup check PASSED" if not failures else f"Setup check FAILED ({failures} error(s))")
    print("=" * 60)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
