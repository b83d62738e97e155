import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from att.models import load_model
from att.parser import parse_document

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
MODELS = ROOT / "models"

settings.register_profile("repo", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


def accept_files():
    return sorted(CORPUS.glob("*.att"))


def reject_files():
    return sorted((CORPUS / "reject").glob("*.att"))


def soundness_items():
    out = []
    for f in sorted((CORPUS / "soundness").glob("*.att")):
        for it in parse_document(f.read_text()).items:
            out.append((f"{f.name}:{it.line}", it.judgment))
    return out


def corpus_items(paths=None):
    """(label, item) for every judgment in the accept corpus."""
    out = []
    for f in paths or accept_files():
        for it in parse_document(f.read_text()).items:
            out.append((f"{f.name}:{it.line}", it))
    return out


@pytest.fixture(scope="session")
def models():
    return {p.stem: load_model(p) for p in sorted(MODELS.glob("*.json"))}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
