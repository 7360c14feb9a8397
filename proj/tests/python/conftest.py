import json
import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def validate():
    jsonschema = pytest.importorskip("jsonschema")
    referencing = pytest.importorskip("referencing")
    schema_dir = pathlib.Path(os.environ.get("OPALG_SCHEMAS", ROOT / "schemas"))
    resources = []
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], referencing.Resource.from_contents(doc)))
    registry = referencing.Registry().with_resources(resources)

    def check(instance, ref):
        if isinstance(instance, str):
            instance = json.loads(instance)
        validator = jsonschema.Draft202012Validator({"$ref": ref}, registry=registry)
        validator.validate(instance)
        return instance

    return check
