"""Shared finite algebra family: chains and their pairwise products."""

from __future__ import annotations

import pytest

from mvspectra.mv import lukasiewicz_chain, product


def build_family(max_carrier):
    fam = {}
    for n in range(1, 9):
        if n + 1 <= max_carrier:
            fam[f"L{n}"] = lukasiewicz_chain(n)
    for a in range(1, 9):
        for b in range(a, 9):
            if (a + 1) * (b + 1) <= max_carrier:
                fam[f"L{a}xL{b}"] = product(
                    lukasiewicz_chain(a), lukasiewicz_chain(b)
                )
    return fam


@pytest.fixture(scope="session")
def family():
    """Full acceptance-scale family: carrier up to 64."""
    return build_family(64)


@pytest.fixture(scope="session")
def small_family():
    """For the pricier per-proposition scans: carrier up to 24."""
    return build_family(24)
