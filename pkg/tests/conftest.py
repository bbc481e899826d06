from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from cstracer import extract, parse, tokenize
from cstracer.ir import IRDocument

from helpers import CORPUS_FILE


@pytest.fixture
def corpus_source() -> str:
    return CORPUS_FILE.read_text(encoding="utf-8")


@pytest.fixture
def corpus_kb(corpus_source):
    tree = parse(tokenize(corpus_source))
    return extract([IRDocument(file_path="corpus/cleanup.cs", tree=tree)])
