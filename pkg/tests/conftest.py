"""Shared fixtures: small canonical grids plus the generated instance corpus."""

from __future__ import annotations

import itertools

import pytest

from quadnet.fixtures import wheel17
from quadnet.mesh import DIAGONAL_RULES, derive_network, generate_grid


@pytest.fixture(scope="session")
def grid3():
    return generate_grid(3, 3, "bl-tr")


@pytest.fixture(scope="session")
def grid3_net(grid3):
    return derive_network(grid3)


@pytest.fixture(scope="session")
def grid5():
    return generate_grid(5, 5, "alternating")


@pytest.fixture(scope="session")
def grid7():
    return generate_grid(7, 7, "alternating")


@pytest.fixture(scope="session")
def wheel():
    return wheel17()


def corpus_instances():
    """(name, triangulation) pairs: grid sizes 5..9, all diagonal rules,
    unit conductance plus six log-uniform resamplings each."""
    out = []
    for rows, cols in itertools.product(range(5, 10), repeat=2):
        for rule in DIAGONAL_RULES:
            base = f"g{rows}x{cols}-{rule}"
            out.append((base + "-unit", generate_grid(rows, cols, rule)))
            for seed in range(6):
                out.append(
                    (f"{base}-s{seed}", generate_grid(rows, cols, rule, seed=seed))
                )
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_instances()


@pytest.fixture(scope="session")
def corpus_reports(corpus):
    """Float-mode verification reports, proof chain included, for the whole
    corpus.  Computed once; several acceptance criteria read from it."""
    import time

    from quadnet.bounds import build_report

    start = time.perf_counter()
    reports = [
        (name, t, build_report(t, mode="float", with_chain=True, instance=name))
        for name, t in corpus
    ]
    elapsed = time.perf_counter() - start
    return reports, elapsed
