"""Write the example spec documents in specs/ from the built-in models."""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from orbisect import models
from orbisect.bundles import EquivariantBundle
from orbisect.sectors import OrbifoldSpec
from orbisect.specio import from_dict, spec_to_dict


def documents() -> dict[str, dict]:
    d6 = models.d6_sphere()
    base, fiber = models.bundle_z6_reps()
    bundle_spec = OrbifoldSpec.affine(base, "Z2 x Z3 on R^2 with a rank-4 bundle")
    docs = {
        "d6_s5": spec_to_dict(d6),
        "d6_s5_z": spec_to_dict(d6, gamma="free:1"),
        "d6_s5_f2": spec_to_dict(d6, gamma="free:2"),
        "z4_s3": spec_to_dict(models.z4_sphere()),
        "trivial_torus": spec_to_dict(models.trivial_torus()),
        "trivial_sphere": spec_to_dict(models.trivial_sphere()),
        "pillowcase": spec_to_dict(models.pillowcase()),
        "pillowcase_open": spec_to_dict(models.pillowcase(), removed=[[0], [2], [8], [10]]),
        "octahedron_z4": spec_to_dict(models.octahedron_z4()),
        "octahedron_z2_edge": spec_to_dict(models.octahedron_z2_edge()),
        "disk_z4": spec_to_dict(models.disk_z4()),
        "interval": spec_to_dict(models.trivial_interval()),
        "annulus": spec_to_dict(models.trivial_annulus()),
        "bundle_z6": spec_to_dict(bundle_spec, bundle=EquivariantBundle(base, fiber), gamma="free:1"),
    }
    return docs


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "specs")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, doc in documents().items():
        from_dict(doc)  # must read back
        (args.out / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {args.out / (name + '.json')}")


if __name__ == "__main__":
    main()
