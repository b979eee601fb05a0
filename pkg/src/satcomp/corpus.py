"""Bundled golden corpus of worked indices with expected verdicts."""

from __future__ import annotations

from importlib import resources

from .dsl import IndexDocument, parse

CORPUS_NAMES = (
    "ex1a", "ex1b",
    "ex1-dim1-a", "ex1-dim1-b", "ex1-dim1-c",
    "ex2a", "ex2b", "ex2c",
    "ex3-quad-1", "ex3-quad-2",
    "ex3-cubic-1", "ex3-cubic-2",
)


def corpus_text(name: str) -> str:
    ref = resources.files("satcomp").joinpath(f"corpus_data/{name}.sidx")
    return ref.read_text(encoding="utf-8")


def corpus() -> list[IndexDocument]:
    """Parse every bundled entry, in canonical order."""
    return [parse(corpus_text(name)) for name in CORPUS_NAMES]
