import sys
from pathlib import Path

import pytest

import covadjust as ca

sys.path.insert(0, str(Path(__file__).resolve().parent))

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
CORPUS_NAMES = [
    "fig1a",
    "fig2-left",
    "fig2-right",
    "fig3a",
    "fig3b",
    "fig3c",
    "fig4a",
    "fig4b",
    "fig5a",
    "fig5b",
]


@pytest.fixture(scope="session")
def corpus():
    """Load a corpus graph by figure name; cached per session."""
    cache = {}

    def load(name):
        if name not in cache:
            text = (CORPUS_DIR / f"{name}.cg").read_text(encoding="utf-8")
            cache[name] = ca.parse_document(text)
        return cache[name]

    return load
