#!/usr/bin/env python3
# Validates CLI-emitted fixtures and transform output against schema/v1.
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {k: json.loads((schema_dir / f"{k}.schema.json").read_text())
           for k in ("instance", "mechanism", "interim")}
for s in schemas.values():
    jsonschema.Draft202012Validator.check_schema(s)

listing = subprocess.run([cli, "fixtures", "list"], check=True, capture_output=True,
                         text=True).stdout
names = [line.split("\t")[0] for line in listing.splitlines() if line.strip()]
failures = 0
with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp)
    for name in names:
        r = subprocess.run([cli, "fixtures", "emit", name, "--out-dir", tmp], capture_output=True)
        if r.returncode != 0:
            failures += 1
            print(f"FAIL emit {name}")
            continue
        inst = out / f"{name}.instance.json"
        mech = out / f"{name}.mechanism.json"
        interim = out / f"{name}.interim.json"
        subprocess.run([cli, "transform", str(inst), str(mech), "--out", str(interim)],
                       capture_output=True)
        for kind, path in (("instance", inst), ("mechanism", mech), ("interim", interim)):
            if not path.exists():
                continue
            try:
                jsonschema.validate(json.loads(path.read_text()), schemas[kind])
                print(f"ok {path.name}")
            except jsonschema.ValidationError as e:
                failures += 1
                print(f"FAIL {path.name}: {e.message}")
print(f"{len(names)} fixtures, {failures} failures")
sys.exit(1 if failures or not names else 0)
