"""Run every spec in specs/ through the matching orbisect command and print a one-line summary."""
from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from orbisect.cli import run

ROOT = Path(__file__).resolve().parents[1]


def command_for(doc: dict) -> str:
    if "bundle" in doc:
        return "bundle-check"
    if "removed" in doc:
        return "obstruct-open"
    if doc["space"].get("boundary"):
        return "obstruct-boundary"
    if doc["space"]["type"] == "linear_affine":
        return "sectors"
    return "obstruct"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--specs", type=Path, default=ROOT / "specs")
    args = ap.parse_args(argv)
    for path in sorted(args.specs.glob("*.json")):
        cmd = command_for(json.loads(path.read_text()))
        out, err = io.StringIO(), io.StringIO()
        code = run([cmd, str(path), "--format", "json"], out=out, err=err)
        if code == 1:
            print(f"{path.stem:22} {cmd:18} error: {err.getvalue().strip()}")
            continue
        data = json.loads(out.getvalue())
        if data["kind"] == "verdict":
            summary = f"{data['status']} (gamma {data['gamma']}, witnesses {data['witnesses']})"
        elif data["kind"] == "bundle_check":
            summary = f"good={data['is_good']}, bad sectors {[r['sector_id'] for r in data['sectors'] if not r['good']]}"
        else:
            summary = f"{len(data['sectors'])} sectors, chi_ES(Q) = {data['euler_satake']}"
        print(f"{path.stem:22} {cmd:18} exit {code}  {summary}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
