"""AST fact extraction for the rulebench engine.

    from astfacts import extract_file, extract_package

    text = extract_file("module.py")
    manifest = extract_package("pkg/", "pkg.facts", "pkg.manifest")
"""

from .walker import Extractor, USED_PREDS, extract_file, extract_package, write_manifest

__version__ = "0.1.0"

__all__ = [
    "Extractor",
    "USED_PREDS",
    "extract_file",
    "extract_package",
    "write_manifest",
]
