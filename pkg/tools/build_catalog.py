"""Regenerate src/esgames/data/catalog.json from the fixture builders."""

from pathlib import Path

from esgames.fixtures import CATALOG, catalog_objects
from esgames.serialize import encode, write_bundle

if __name__ == "__main__":
    objects, expect_fail = catalog_objects()
    out = Path(__file__).resolve().parents[1] / "src" / "esgames" / "data" / CATALOG
    write_bundle(encode(objects, expect_fail), out)
    print(f"wrote {out}")
