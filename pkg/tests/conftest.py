"""Shared fixtures, hypothesis strategies and seeded random generators."""

from __future__ import annotations

import random
from pathlib import Path

import hypothesis.strategies as st
import pytest

from triage_miner.ingest import Attribute, Codebook
from triage_miner.mine import Item, Itemset, Transaction
from triage_miner.rules import Rule

REPO_ROOT = Path(__file__).resolve().parent.parent

NON_ASSIGNEE_ATTRIBUTES = (
    Attribute.SEVERITY,
    Attribute.PRIORITY,
    Attribute.COMPONENT,
    Attribute.OPERATING_SYSTEM,
)


@pytest.fixture(scope="session")
def sample_csv() -> Path:
    path = REPO_ROOT / "data" / "sample_bugs.csv"
    assert path.exists(), "bundled sample dataset is missing"
    return path


@pytest.fixture(scope="session")
def golden_report_dir() -> Path:
    return REPO_ROOT / "tests" / "golden" / "sample_report"


def make_transaction(tid: int, sev: int, pri: int, comp: int, os_: int, who: int) -> Transaction:
    return Transaction(
        bug_id=f"t{tid}",
        itemset=Itemset(
            (
                Item(Attribute.SEVERITY, sev),
                Item(Attribute.PRIORITY, pri),
                Item(Attribute.COMPONENT, comp),
                Item(Attribute.OPERATING_SYSTEM, os_),
                Item(Attribute.ASSIGNEE, who),
            )
        ),
    )


def random_transactions(
    rnd: random.Random, max_transactions: int = 200, max_codes: int = 12
) -> list[Transaction]:
    n = rnd.randint(1, max_transactions)
    cards = [rnd.randint(1, max_codes) for _ in range(5)]
    return [
        make_transaction(
            i,
            rnd.randint(1, cards[0]),
            rnd.randint(1, cards[1]),
            rnd.randint(1, cards[2]),
            rnd.randint(1, cards[3]),
            rnd.randint(1, cards[4]),
        )
        for i in range(n)
    ]


def random_rules(rnd: random.Random, max_rules: int = 50, max_count: int = 60) -> list[Rule]:
    n = rnd.randint(1, max_rules)
    by_key: dict[tuple, Rule] = {}
    while len(by_key) < n:
        size = rnd.randint(1, 4)
        attrs = rnd.sample(NON_ASSIGNEE_ATTRIBUTES, size)
        antecedent = Itemset(Item(a, rnd.randint(1, 3)) for a in attrs)
        consequent = Item(Attribute.ASSIGNEE, rnd.randint(1, 3))
        key = (antecedent.items, consequent)
        if key in by_key:
            continue
        antecedent_count = rnd.randint(1, max_count)
        support = rnd.randint(1, antecedent_count)
        by_key[key] = Rule(antecedent, consequent, support, antecedent_count)
    return list(by_key.values())


@st.composite
def transaction_lists(draw, max_transactions: int = 40, max_codes: int = 5):
    cards = [draw(st.integers(1, max_codes)) for _ in range(5)]
    n = draw(st.integers(1, max_transactions))
    return [
        make_transaction(
            i,
            draw(st.integers(1, cards[0])),
            draw(st.integers(1, cards[1])),
            draw(st.integers(1, cards[2])),
            draw(st.integers(1, cards[3])),
            draw(st.integers(1, cards[4])),
        )
        for i in range(n)
    ]


@st.composite
def rule_lists(draw, max_rules: int = 30, max_count: int = 40):
    n = draw(st.integers(1, max_rules))
    by_key: dict[tuple, Rule] = {}
    for _ in range(n):
        attrs = draw(
            st.sets(st.sampled_from(NON_ASSIGNEE_ATTRIBUTES), min_size=1, max_size=4)
        )
        antecedent = Itemset(Item(a, draw(st.integers(1, 3))) for a in sorted(attrs))
        consequent = Item(Attribute.ASSIGNEE, draw(st.integers(1, 3)))
        key = (antecedent.items, consequent)
        if key in by_key:
            continue
        antecedent_count = draw(st.integers(1, max_count))
        support = draw(st.integers(1, antecedent_count))
        by_key[key] = Rule(antecedent, consequent, support, antecedent_count)
    return list(by_key.values())


def simple_codebooks(max_code: int = 6) -> dict[Attribute, Codebook]:
    """Codebooks with generic labels covering codes 1..max_code everywhere."""
    from triage_miner.ingest import PRIORITY_CODEBOOK, SEVERITY_CODEBOOK

    books = {Attribute.SEVERITY: SEVERITY_CODEBOOK, Attribute.PRIORITY: PRIORITY_CODEBOOK}
    for attribute, stem in (
        (Attribute.COMPONENT, "Comp"),
        (Attribute.OPERATING_SYSTEM, "OS"),
        (Attribute.ASSIGNEE, "Dev"),
    ):
        labels = [f"{stem} {i}" for i in range(1, max_code + 1)]
        forward = {label: i for i, label in enumerate(labels, start=1)}
        books[attribute] = Codebook(attribute, forward, {c: l for l, c in forward.items()})
    return books


def tree_bytes(root: Path) -> dict[str, bytes]:
    """Relative path -> file bytes, for whole-directory comparisons."""
    return {
        str(path.relative_to(root)): path.read_bytes()
        for path in sorted(root.rglob("*"))
        if path.is_file()
    }
