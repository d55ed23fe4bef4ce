from pathlib import Path

import pytest

from trustad.profile import extract_profile
from trustad.stad import TrustGraph, parse_document

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def acme_text() -> str:
    return (FIXTURES / "acme.stad").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def acme_graph(acme_text) -> TrustGraph:
    return parse_document(acme_text)


@pytest.fixture()
def acme_profile(acme_graph):
    return extract_profile(acme_graph)


def drop_predicate(graph: TrustGraph, predicate, subject=None) -> TrustGraph:
    """Copy of the graph without triples using ``predicate`` (optionally
    limited to one subject)."""
    kept = frozenset(
        t for t in graph.triples
        if not (t.predicate == predicate
                and (subject is None or t.subject == subject)))
    return TrustGraph(kept, graph.prefixes)


def with_triples(graph: TrustGraph, extra) -> TrustGraph:
    return TrustGraph(graph.triples | frozenset(extra), graph.prefixes)
