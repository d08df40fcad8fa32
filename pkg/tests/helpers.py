import json
from pathlib import Path


def write_manifest(root, corpora, pairs=None):
    """``corpora``: label -> dict with 'trees' text and optional 'deps', 'ids', 'bodies', 'kind'."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    entries = []
    for label, spec in corpora.items():
        entry = {"label": label}
        for key, ext in (("trees", "mrg"), ("deps", "sd"), ("ids", "ids"), ("bodies", "jsonl"), ("sentences", "txt")):
            if key in spec:
                path = root / f"{label}.{ext}"
                path.write_text(spec[key], encoding="utf-8")
                entry[key] = path.name
        for key in ("kind", "deps_format"):
            if key in spec:
                entry[key] = spec[key]
        entries.append(entry)
    data = {"corpora": entries}
    if pairs is not None:
        data["pairs"] = pairs
    manifest = root / "manifest.json"
    manifest.write_text(json.dumps(data), encoding="utf-8")
    return manifest
